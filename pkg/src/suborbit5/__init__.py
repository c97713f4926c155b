"""Primitive groups with a suborbit of length five: constructions and checks."""

__version__ = "0.1.0"
