"""Exact lattice tools for amenable collections, binomial degenerations and mirror Laurent potentials."""

__version__ = "0.1.0"

from .errors import InputError, InvariantViolation, SamplingError, ToricError  # noqa: E402
from .lattice import Basis, extend_to_basis, is_saturated_span, pair, primitive  # noqa: E402
from .polytope import (Fan, Polytope, convex_hull, face_fan, intersect_fan_with_subspace,  # noqa: E402
                       is_reflexive, pl_eval)
from .nef import NefPartition, nef_partition, solve_supports, verify_partition  # noqa: E402
from .amenable import (AmenableCollection, check_degeneration_theorems, degeneration,  # noqa: E402
                       is_mixed_dominating, search_amenable, verify_amenable)
from .laurent import LaurentPolynomial, RationalFunction  # noqa: E402
from .lg import brute_force_support, build_givental, check_newton_equals_deltaV, eliminate  # noqa: E402
from .mutation import build_mutation, verify_mutation  # noqa: E402
from .flag import build_gamma, flag_lg, flag_nef_partition, flag_polytope, roofs  # noqa: E402
from .ckp import CkpInput, check_ckp_equivalence, ckp_amenable, ckp_substitute  # noqa: E402

__all__ = [
    "AmenableCollection", "Basis", "CkpInput", "Fan", "InputError", "InvariantViolation",
    "LaurentPolynomial", "NefPartition", "Polytope", "RationalFunction", "SamplingError", "ToricError",
    "brute_force_support", "build_gamma", "build_givental", "build_mutation", "check_ckp_equivalence",
    "check_degeneration_theorems", "check_newton_equals_deltaV", "ckp_amenable", "ckp_substitute",
    "convex_hull", "degeneration", "eliminate", "extend_to_basis", "face_fan", "flag_lg",
    "flag_nef_partition", "flag_polytope", "intersect_fan_with_subspace", "is_mixed_dominating",
    "is_reflexive", "is_saturated_span", "nef_partition", "pair", "pl_eval", "primitive", "roofs",
    "search_amenable", "solve_supports", "verify_amenable", "verify_mutation", "verify_partition",
]
