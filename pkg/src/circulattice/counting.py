"""Lattice-point counts in balls, type-1/type-2 censuses and the first-moment bound.

Counts are exact integers and probabilities exact ``Fraction``s; floats only
appear in volumes and in the reported ratios against asymptotic bounds.

Vocabulary, for x = (x_L, x_R) in F_p^{2q} when p is primitive mod q:

* type 1: both halves constant, i.e. in the repetition code C_1;
* type 2: both halves sum to zero, i.e. in C_1^perp;
* unit right half: x_R in neither C_1 nor C_1^perp, so C(x_R) is all of F_p^q.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import NotTwoCodeRegime, RegimeViolation
from .modp import Params
from .primes import is_primitive

# Constant of the main existence statement, (2 - 1/e) / (2 + e^2 pi).
C_THEOREM = (2 - 1 / math.e) / (2 + math.e ** 2 * math.pi)
# Optimal t in the type-2 count, 1 / (2 e pi).
T_OPT = 1 / (2 * math.e * math.pi)


def log_ball_volume(n: int, d: float) -> float:
    if d <= 0:
        return -math.inf
    return 0.5 * n * math.log(math.pi) - math.lgamma(0.5 * n + 1) + n * math.log(d)


def ball_volume(n: int, d: float) -> float:
    """Volume of the n-ball of radius d."""
    if n < 1:
        raise ValueError("n must be positive")
    if d < 0:
        raise ValueError("radius must be non-negative")
    if d == 0:
        return 0.0
    return math.exp(log_ball_volume(n, d))


@dataclass(frozen=True)
class Radius:
    exact: float
    approx: float

    @property
    def ratio(self) -> float:
        return self.exact / self.approx


def rho(n: int, p: int) -> Radius:
    """Radius of the ball of volume p^(n/2), plus the sqrt(pn / 2 e pi) approximation."""
    log_r = (0.5 * n * math.log(p) - 0.5 * n * math.log(math.pi) + math.lgamma(0.5 * n + 1)) / n
    return Radius(math.exp(log_r), math.sqrt(p * n / (2 * math.e * math.pi)))


def _count_dtype(bound: int):
    return np.int64 if bound < 2**62 else object


def norm_counts(dim: int, h: int, W: int) -> np.ndarray:
    """entry s = number of v in [-h, h]^dim with sum v_i^2 = s, for s <= W.

    DP over coordinates, one layer indexed by the squared budget.
    """
    dtype = _count_dtype((2 * h + 1) ** dim)
    cnt = np.zeros(W + 1, dtype=dtype)
    cnt[0] = 1
    r = min(h, math.isqrt(W))
    for _ in range(dim):
        new = np.zeros(W + 1, dtype=dtype)
        for c in range(-r, r + 1):
            s = c * c
            new[s:] += cnt[: W + 1 - s]
        cnt = new
    return cnt


def _check_regime(p: int, d_sq: int) -> None:
    if d_sq < 0:
        raise ValueError("squared radius must be non-negative")
    if 4 * d_sq >= p * p:
        raise RegimeViolation(f"d^2 = {d_sq} violates 4 d^2 < p^2 = {p * p}")


def ball_count(n: int, p: int, d_sq: int) -> int:
    """|B_{n,p}(d)| for d = sqrt(d_sq), inside the d < p/2 regime."""
    _check_regime(p, d_sq)
    return int(norm_counts(n, (p - 1) // 2, d_sq).sum())


def integer_ball_count(n: int, d_sq: int) -> int:
    """|Z^n cap S_n(d)| with no coordinate range limit."""
    return int(norm_counts(n, math.isqrt(d_sq), d_sq).sum())


def volume_sandwich(n: int, d_sq: int) -> tuple[float, float]:
    """(vol S_n(d - sqrt(n)/2), vol S_n(d + sqrt(n)/2)); the lower end is 0 when d < sqrt(n)/2."""
    d = math.sqrt(d_sq)
    half = math.sqrt(n) / 2
    lo = ball_volume(n, d - half) if d >= half else 0.0
    return lo, ball_volume(n, d + half)


@dataclass(frozen=True)
class BallCount:
    n: int
    p: int
    d_sq: int
    count: int
    vol_lo: float
    vol_hi: float

    def to_json(self) -> dict:
        return {"n": self.n, "p": str(self.p), "d2": str(self.d_sq), "count": str(self.count),
                "vol_lo": self.vol_lo, "vol_hi": self.vol_hi}


def ball_count_report(n: int, p: int, d_sq: int) -> BallCount:
    count = ball_count(n, p, d_sq)
    lo, hi = volume_sandwich(n, d_sq)
    return BallCount(n, p, d_sq, count, lo, hi)


# -- half-vector tables --------------------------------------------------------

@dataclass(frozen=True)
class HalfTables:
    """Counts of half vectors (length q) by exact squared norm 0..W."""

    all: list
    sum_zero: list
    constant: list

    @property
    def constant_nonzero(self) -> list:
        return [c - (1 if s == 0 else 0) for s, c in enumerate(self.constant)]

    @property
    def unit(self) -> list:
        """Halves in neither C_1 nor C_1^perp (the two codes meet only in 0)."""
        return [a - z - c for a, z, c in zip(self.all, self.sum_zero, self.constant_nonzero)]


def half_tables(params: Params, W: int) -> HalfTables:
    """DP over the q coordinates of one half tracking (squared norm, sum mod p)."""
    q, p, h = params.q, params.p, params.half
    dtype = _count_dtype(p ** q)
    T = np.zeros((W + 1, p), dtype=dtype)
    T[0, 0] = 1
    r = min(h, math.isqrt(W))
    for _ in range(q):
        new = np.zeros_like(T)
        for c in range(-r, r + 1):
            s = c * c
            new[s:, :] += np.roll(T[: W + 1 - s, :], c, axis=1)
        T = new
    const = [0] * (W + 1)
    for a in range(-h, h + 1):
        s = q * a * a
        if s <= W:
            const[s] += 1
    return HalfTables(all=[int(v) for v in T.sum(axis=1)], sum_zero=[int(v) for v in T[:, 0]],
                      constant=const)


def _pair_count(f: list, g: list, W: int) -> int:
    """sum over s + t <= W of f[s] g[t]."""
    prefix = [0] * (W + 1)
    run = 0
    for t in range(W + 1):
        run += g[t]
        prefix[t] = run
    return sum(f[s] * prefix[W - s] for s in range(W + 1) if f[s])


def count_type1(params: Params, w_sq: int) -> int:
    """#{(alpha, beta) centered : q (alpha^2 + beta^2) <= w_sq}, zero included."""
    if w_sq < 0:
        return 0
    q, h = params.q, params.half
    m = w_sq // q  # q (a^2 + b^2) <= w_sq  iff  a^2 + b^2 <= floor(w_sq / q)
    r = min(h, math.isqrt(m))
    return sum(2 * min(h, math.isqrt(m - a * a)) + 1 for a in range(-r, r + 1))


def type1_disc_bound(params: Params, w_sq: int) -> float:
    """pi (w sqrt(2/n) + sqrt 2)^2, the disc bound on the type-1 count."""
    return math.pi * (math.sqrt(2 * w_sq / params.n) + math.sqrt(2)) ** 2


def count_type2(params: Params, w_sq: int) -> int:
    """Vectors of norm^2 <= w_sq with both half sums = 0 mod p, zero included."""
    _check_regime(params.p, w_sq)
    t = half_tables(params, w_sq)
    return _pair_count(t.sum_zero, t.sum_zero, w_sq)


def count_type2_any(params: Params, w_sq: int) -> int:
    """As ``count_type2`` without the regime check (used for whole-space identities)."""
    t = half_tables(params, w_sq)
    return _pair_count(t.sum_zero, t.sum_zero, w_sq)


# -- first-moment bound --------------------------------------------------------

@dataclass(frozen=True)
class MomentBound:
    w_sq: int
    n1: int
    n2: int
    ball: int
    exact_expectation: Fraction
    paper_bound: Fraction
    n1_live: int = 0
    n2_live: int = 0
    units: int = 0
    cross_checked: bool = False

    def ratios(self, params: Params) -> dict:
        """Exact counts over the asymptotic bounds p/e and e^2 pi / (2p) |B| (reported only)."""
        p = params.p
        return {
            "n1_over_p_div_e": self.n1 / (p / math.e),
            "n2_over_e2pi_div_2p_ball": (self.n2 / (math.e ** 2 * math.pi / (2 * p) * self.ball)
                                         if self.ball else math.nan),
        }

    def to_json(self) -> dict:
        return {
            "w2": str(self.w_sq),
            "n1": str(self.n1),
            "n2": str(self.n2),
            "ball": str(self.ball),
            "n1_live": str(self.n1_live),
            "n2_live": str(self.n2_live),
            "units": str(self.units),
            "exact_expectation": str(self.exact_expectation),
            "exact_expectation_float": float(self.exact_expectation),
            "paper_bound": str(self.paper_bound),
            "paper_bound_float": float(self.paper_bound),
            "cross_checked": self.cross_checked,
        }


def _require_two_codes(params: Params) -> None:
    if not is_primitive(params.p % params.q, params.q):
        raise NotTwoCodeRegime(f"{params.p} mod {params.q} is not a primitive root")


def _bound_from_tables(params: Params, t: HalfTables, w_sq: int) -> MomentBound:
    p, q, n = params.p, params.q, params.n
    ball = _pair_count(t.all, t.all, w_sq)
    n1 = _pair_count(t.constant, t.constant, w_sq)
    n2 = _pair_count(t.sum_zero, t.sum_zero, w_sq)
    # zero right half: C(0) = {0}, probability 0 for x != 0
    nz_zero = [z - (1 if s == 0 else 0) for s, z in enumerate(t.sum_zero)]
    n1_live = _pair_count(t.constant, t.constant_nonzero, w_sq)
    n2_live = _pair_count(t.sum_zero, nz_zero, w_sq)
    units = _pair_count(t.all, t.unit, w_sq)
    exact = (Fraction(n1_live, 2 * p) + Fraction(n2_live, n * p ** (q - 1))
             + Fraction(units, n * p ** q))
    grouped = (Fraction(n1 - 1, 2 * p) + Fraction(n2 - 1, n * p ** (q - 1))
             + Fraction(ball - 1, n * p ** q))
    return MomentBound(w_sq, n1, n2, ball, exact, grouped, n1_live, n2_live, units)


def expectation_by_enumeration(params: Params, w_sq: int) -> Fraction:
    """sum over nonzero x in the ball of Prob(x in C_rand) / orbit length, by brute force."""
    from .dcode import membership_probability
    from .enumeration import ball_points
    from .group import orbit_of
    from .modp import FpVector

    total = Fraction(0)
    for row in ball_points(params.n, params.half, w_sq):
        if not row.any():
            continue
        x = FpVector(params, tuple(int(c) for c in row))
        pr = membership_probability(x)
        if pr:
            total += pr / orbit_of(x).length
    return total


def moment_bound(params: Params, w_sq: int, cross_check_budget: int = 5000) -> MomentBound:
    """Exact E[X'(w)] and the grouped upper bound for the random double circulant code.

    When the ball has at most ``cross_check_budget`` points the exact value is
    recomputed by enumerating orbits and membership probabilities.
    """
    _require_two_codes(params)
    _check_regime(params.p, w_sq)
    mb = _bound_from_tables(params, half_tables(params, w_sq), w_sq)
    if mb.ball <= cross_check_budget:
        direct = expectation_by_enumeration(params, w_sq)
        if direct != mb.exact_expectation:
            raise ArithmeticError(f"grouped expectation {mb.exact_expectation} != enumerated {direct}")
        mb = MomentBound(**{**mb.__dict__, "cross_checked": True})
    if mb.exact_expectation > mb.paper_bound:
        raise ArithmeticError("exact expectation exceeds the grouped bound")
    return mb


def moment_bound_curve(params: Params, w_max: Optional[int] = None) -> list[MomentBound]:
    """``moment_bound`` for every w_sq = 0..w_max from one DP (no enumeration cross-check)."""
    _require_two_codes(params)
    if w_max is None:
        w_max = (params.p * params.p - 1) // 4
    _check_regime(params.p, w_max)
    t = half_tables(params, w_max)
    out = []
    for w in range(w_max + 1):
        tw = HalfTables(t.all[: w + 1], t.sum_zero[: w + 1], t.constant[: w + 1])
        out.append(_bound_from_tables(params, tw, w))
    return out
