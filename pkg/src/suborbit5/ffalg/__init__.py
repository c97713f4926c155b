"""Exact linear algebra and representations over GF(p) and GF(p^2)."""

from .field import Field, is_prime
from .matrix import Matrix, charpoly, poly_eval_matrix, poly_roots
from .modules import (
    Constituent,
    MatRep,
    centralizer_algebra,
    chop,
    companion,
    decompose,
    deleted_permutation_matrix,
    find_submodule,
    fixed_space,
    galois_descent,
    golden_trace,
    intertwiners,
    invariant_forms,
    is_alternating,
    is_irreducible,
    is_nondegenerate_on,
    is_totally_isotropic,
    phi5_companion,
    quotient_rep,
    spin,
    submodule_rep,
    sym5_power,
    sym_power_matrix,
)

__all__ = [
    "Constituent", "Field", "MatRep", "Matrix", "centralizer_algebra", "charpoly", "chop",
    "companion", "decompose", "deleted_permutation_matrix", "find_submodule", "fixed_space",
    "galois_descent", "golden_trace", "intertwiners", "invariant_forms", "is_alternating",
    "is_irreducible", "is_nondegenerate_on", "is_prime", "is_totally_isotropic", "phi5_companion",
    "poly_eval_matrix", "poly_roots", "quotient_rep", "spin", "submodule_rep", "sym5_power",
    "sym_power_matrix",
]
