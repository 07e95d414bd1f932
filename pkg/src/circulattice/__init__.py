"""Dense lattices from double circulant codes over F_p via Construction A."""
from .counting import C_THEOREM, ball_count, ball_volume, count_type1, count_type2, moment_bound, rho
from .cyclic import CyclicCode, RingElement, cyclic_code_of, nontrivial_cyclic_codes, ring_mul
from .dcode import DoubleCirculantCode, membership_probability, min_norm, min_norm_sq, random_code
from .errors import BudgetExceeded, NoPrimeInWindow, NotTwoCodeRegime, RegimeViolation
from .group import GroupElement, act, orbit_census, orbit_of
from .lattice import construction_a, density, sv_oracle
from .modp import FpVector, Params, centered_lift, norm_sq
from .primes import is_primitive, is_prime, select_p_direct, select_p_linnik

__version__ = "0.1.0"

__all__ = [
    "C_THEOREM", "ball_count", "ball_volume", "count_type1", "count_type2", "moment_bound", "rho",
    "CyclicCode", "RingElement", "cyclic_code_of", "nontrivial_cyclic_codes", "ring_mul",
    "DoubleCirculantCode", "membership_probability", "min_norm", "min_norm_sq", "random_code",
    "BudgetExceeded", "NoPrimeInWindow", "NotTwoCodeRegime", "RegimeViolation",
    "GroupElement", "act", "orbit_census", "orbit_of",
    "construction_a", "density", "sv_oracle",
    "FpVector", "Params", "centered_lift", "norm_sq",
    "is_primitive", "is_prime", "select_p_direct", "select_p_linnik",
]
