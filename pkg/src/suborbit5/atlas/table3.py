"""The 5-valent vertex-primitive graphs, realized as orbital graphs of table rows."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..errors import UnsupportedError
from ..ffalg.field import is_prime
from ..orbital import Digraph, is_self_paired, orbital_digraph, suborbits
from .tables import GroupSpec, build_table1_row, build_table2_row

# row -> (source table, source row, fixed prime or None)
TABLE3_SOURCE = {1: (2, 8, 2), 2: (1, 5, None), 3: (1, 6, None), 4: (1, 8, None), 5: (1, 10, None), 8: (2, 9, None), 9: (2, 11, None)}
TABLE3_NAMES = {
    1: "2^4:S5", 2: "PGammaL(2,9)", 3: "PGL(2,11)", 4: "S9", 5: "Sz(8)", 8: "PSL(2,p)", 9: "PSigmaL(2,p^2)",
}
# rows whose group is claimed to be the full automorphism group
AUT_EQUALS_GROUP = {1, 2, 3, 4, 5, 8, 9}


def table3_condition(row: int, p: int | None) -> bool:
    if row == 8:
        return p is not None and is_prime(p) and p % 40 in (1, 9, 31, 39)
    if row == 9:
        return p is not None and is_prime(p) and p % 10 in (3, 7)
    return True


@dataclass
class Table3Graph:
    row: int
    spec: GroupSpec
    graph: Digraph
    pair: tuple[int, int]

    @property
    def edges(self) -> int:
        return self.graph.arc_count // 2


def build_table3_row(row: int, p: int | None = None, seed: int = 0, generator_file: str | Path | None = None) -> Table3Graph:
    """The group of the row and its orbital graph of valency 5."""
    if row in (6, 7):
        raise UnsupportedError({6: "J3:2 needs external generators at degree 17442", 7: "Th is out of scope"}[row])
    if row in (10, 11):
        raise UnsupportedError("symplectic rows are verified at the matrix level only")
    if row not in TABLE3_SOURCE:
        raise ValueError(f"no row {row} in the graph table")
    table, source_row, fixed = TABLE3_SOURCE[row]
    if row in (8, 9):
        if p is None:
            raise ValueError(f"row {row} needs a prime p")
        if not table3_condition(row, p):
            raise ValueError(f"p = {p} violates the condition of graph row {row}")
    if table == 1:
        spec = build_table1_row(source_row, generator_file=generator_file, seed=seed)
    else:
        spec = build_table2_row(source_row, fixed if fixed is not None else p, seed=seed)
    reps = suborbits(spec.group, 0, seed).of_length(5)
    # Sz(8) has three self-paired length-5 suborbits, permuted by the field automorphism; take the first
    paired = [w for w in reps if is_self_paired(spec.group, (0, w), seed)]
    if not paired or (row != 5 and len(reps) != 1):
        raise AssertionError(f"length-5 suborbits {len(reps)}, self-paired {len(paired)}")
    pair = (0, paired[0])
    graph = orbital_digraph(spec.group, pair, seed)
    if not graph.symmetric:
        raise AssertionError("the length-5 orbital is not self-paired")
    return Table3Graph(row, spec, graph, pair)
