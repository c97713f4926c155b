"""Constructions of the groups appearing in the tables."""
