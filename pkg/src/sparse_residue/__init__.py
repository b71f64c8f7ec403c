"""Exact global residues of sparse Laurent polynomial systems on the torus."""

__version__ = "0.1.0"

from .errors import ResidueError
from .exact import MPoly, RatFunc, mpoly_gcd, ratfunc_equal, eval_at_point
from .grammar import parse_mpoly, parse_ratfunc, format_mpoly
from .geometry import (
    LatticePolytope,
    convex_hull,
    minkowski_sum,
    mixed_volume,
    normalized_volume,
    interior_lattice_points,
    contains,
)
from .laurent import LaurentPolynomial, SparseSystem, toric_jacobian, newton_polytope
from .residue import global_residue, assemble_system, solve_for_c
from .delta0 import choose_delta0, min_support, zonotope_support
from .oracle import (
    RootSet,
    residue_root_sum,
    solve_univariate,
    solve_bivariate,
    euler_jacobi_check,
    sparse_interpolate,
)
from .io import ProblemFile, parse_problem, emit_problem, load_problem

__all__ = [
    "ResidueError",
    "MPoly",
    "RatFunc",
    "mpoly_gcd",
    "ratfunc_equal",
    "eval_at_point",
    "parse_mpoly",
    "parse_ratfunc",
    "format_mpoly",
    "LatticePolytope",
    "convex_hull",
    "minkowski_sum",
    "mixed_volume",
    "normalized_volume",
    "interior_lattice_points",
    "contains",
    "LaurentPolynomial",
    "SparseSystem",
    "toric_jacobian",
    "newton_polytope",
    "global_residue",
    "assemble_system",
    "solve_for_c",
    "choose_delta0",
    "min_support",
    "zonotope_support",
    "RootSet",
    "residue_root_sum",
    "solve_univariate",
    "solve_bivariate",
    "euler_jacobi_check",
    "sparse_interpolate",
    "ProblemFile",
    "parse_problem",
    "emit_problem",
    "load_problem",
]
