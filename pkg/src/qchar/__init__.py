"""qchar: quadratic characteristic classes of symplectic bundles over products of HP^n.

Exact arithmetic in GW and Witt rings, Borel classes in the Chow, Witt and
GW channels, Newton power operations and the Borel character.
"""
from .borel import (
    BorelPolynomial,
    chow_borel_poly,
    cube_classes,
    derive_sym3_classes,
    derive_threefold_witt,
    gw_borel_classes,
    lift_to_gw,
    witt_borel_poly,
)
from .borel_character import BorelCharacterValue, bo, borel_component, check_square, chern_component
from .bundles import H, U, VirtualBundle, sym3, tensor_expand
from .expr import parse_expression
from .graded_poly import AmbientSpec, TruncatedPoly
from .gw_arith import Fp, GWElement, Q, WittElement, WittFp, gw_equal, gw_from_diagonal, hyperbolic, witt_equal
from .localization import LocalizedGW, localize, normalization_factor
from .operations import alpha_sequence, chern_chi_comparison, chi_eval, chi_from_series, double_factorial, omega_s2, psi
from .verify import run_verify

__version__ = "0.1.0"

__all__ = [
    "BorelPolynomial",
    "chow_borel_poly",
    "cube_classes",
    "derive_sym3_classes",
    "derive_threefold_witt",
    "gw_borel_classes",
    "lift_to_gw",
    "witt_borel_poly",
    "BorelCharacterValue",
    "bo",
    "borel_component",
    "check_square",
    "chern_component",
    "H",
    "U",
    "VirtualBundle",
    "sym3",
    "tensor_expand",
    "parse_expression",
    "AmbientSpec",
    "TruncatedPoly",
    "Fp",
    "GWElement",
    "Q",
    "WittElement",
    "WittFp",
    "gw_equal",
    "gw_from_diagonal",
    "hyperbolic",
    "witt_equal",
    "LocalizedGW",
    "localize",
    "normalization_factor",
    "alpha_sequence",
    "chern_chi_comparison",
    "chi_eval",
    "chi_from_series",
    "double_factorial",
    "omega_s2",
    "psi",
    "run_verify",
]
