"""Double circulant codes: kernel of H = [I_q | A] with A circulant.

A word is x = (x_L, x_R). Since x H^T = x_L + x_R A^T, every x_R in F_p^q
extends to exactly one codeword, x_L = -x_R A^T. Codewords are enumerated
with x_R in odometer order over centered digits.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .cyclic import RingElement, code_contains, cyclic_code_of, ring_mul
from .enumeration import (ball_points, box_points, centered_mod, half_orbit_representatives,
                          odometer_index)
from .errors import BudgetExceeded
from .modp import FpVector, Params, centered_tuple

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class DoubleCirculantCode:
    params: Params
    a: tuple

    def __post_init__(self):
        a = centered_tuple(self.a, self.params.p)
        if len(a) != self.params.q:
            raise ValueError(f"first row must have {self.params.q} entries")
        object.__setattr__(self, "a", a)

    @property
    def cardinality(self) -> int:
        return self.params.p ** self.params.q

    def circulant(self) -> np.ndarray:
        """A with A[i, j] = a[(j - i) mod q]: each row is the previous one rotated right."""
        q = self.params.q
        idx = (np.arange(q)[None, :] - np.arange(q)[:, None]) % q
        return np.array(self.a, dtype=np.int64)[idx]

    def parity_check(self) -> np.ndarray:
        return np.hstack([np.eye(self.params.q, dtype=np.int64), self.circulant()])

    def column_poly(self) -> RingElement:
        """(a_1, a_q, a_{q-1}, ..., a_2), the first column of A read downwards."""
        q = self.params.q
        return RingElement(self.params, tuple(self.a[(-k) % q] for k in range(q)))

    def __contains__(self, x: FpVector) -> bool:
        return contains(self, x)


@dataclass(frozen=True)
class Syndrome:
    left: RingElement
    right: RingElement
    total: RingElement


def _check(code: DoubleCirculantCode, x: FpVector) -> None:
    if code.params != x.params:
        raise ValueError("code and vector over different parameters")


def syndrome(code: DoubleCirculantCode, x: FpVector) -> Syndrome:
    _check(code, x)
    params = code.params
    left = RingElement(params, x.left)
    right = ring_mul(RingElement(params, x.right), code.column_poly())
    direct = np.array(x.coords, dtype=np.int64) @ code.parity_check().T
    total = RingElement(params, tuple(int(c) for c in direct))
    if left + right != total:
        raise ArithmeticError("polynomial and matrix syndromes disagree")
    return Syndrome(left, right, total)


def contains(code: DoubleCirculantCode, x: FpVector) -> bool:
    return syndrome(code, x).total.is_zero()


def _left_halves(a_rows: np.ndarray, xr: np.ndarray, p: int) -> np.ndarray:
    """x_L = -x_R A^T for every code row in a_rows (m, q) and every x_R in xr (c, q).

    Returns an (m, c, q) array of centered left halves.
    """
    q = a_rows.shape[1]
    idx = (np.arange(q)[None, :] - np.arange(q)[:, None]) % q
    circ = a_rows[:, idx]  # (m, i, j) = A[i, j]
    xl = -np.einsum("cj,mij->mci", xr, circ)
    return centered_mod(xl, p)


def words_for(code: DoubleCirculantCode, xr: np.ndarray) -> np.ndarray:
    """Codewords (rows) whose right halves are the rows of xr."""
    xr = np.atleast_2d(np.asarray(xr, dtype=np.int64))
    xl = _left_halves(np.array([code.a], dtype=np.int64), xr, code.params.p)[0]
    return np.hstack([xl, centered_mod(xr, code.params.p)])


def codewords(code: DoubleCirculantCode, budget: int = DEFAULT_BUDGET) -> Iterator[FpVector]:
    params = code.params
    if code.cardinality > budget:
        raise BudgetExceeded(code.cardinality, budget)
    words = words_for(code, box_points(params.q, params.half))
    for w in words:
        yield FpVector(params, tuple(int(c) for c in w))


@dataclass(frozen=True)
class MinNorm:
    d2: int
    witness: FpVector
    words_visited: int

    def to_json(self) -> dict:
        return {"d2": str(self.d2), "witness": list(self.witness.coords),
                "words_visited": str(self.words_visited)}


def _shells(q: int, h: int, reps_only: bool):
    """Nonzero x_R in increasing norm, in doubling shells; yields (norms, vectors)."""
    top = q * h * h
    lo, hi = 0, max(4, q)
    while lo < top:
        hi = min(hi, top)
        pts = ball_points(q, h, hi)
        norms = (pts * pts).sum(axis=1)
        mask = norms > lo
        if reps_only:
            mask &= half_orbit_representatives(pts, h)
        pts, norms = pts[mask], norms[mask]
        order = np.argsort(norms, kind="stable")
        yield norms[order], pts[order]
        lo, hi = hi, 2 * hi


def batch_min_norm_sq(params: Params, a_rows: Sequence, budget: Optional[int] = DEFAULT_BUDGET,
                      chunk_elems: int = 1 << 22) -> tuple[np.ndarray, int]:
    """Minimum nonzero codeword norm^2 for many codes at once.

    Right halves are scanned by increasing norm, one representative per
    +-rotation class (the code is invariant under the group, so the skipped
    words repeat norms already seen). A code drops out once the next right
    half is at least as long as its best word. Returns (d2 per code, words visited).
    """
    q, p, h = params.q, params.p, params.half
    a_rows = np.atleast_2d(np.asarray(a_rows, dtype=np.int64))
    m = len(a_rows)
    best = np.full(m, np.iinfo(np.int64).max, dtype=np.int64)
    visited = 0
    for norms, pts in _shells(q, h, reps_only=True):
        start = 0
        while start < len(pts):
            t = int(norms[start])
            active = np.nonzero(best > t)[0]
            if active.size == 0:
                return best, visited
            c = max(1, min(len(pts) - start, chunk_elems // (active.size * q)))
            xr = pts[start:start + c]
            visited += active.size * c
            if budget is not None and visited > budget:
                raise BudgetExceeded(visited, budget, partial=best)
            xl = _left_halves(a_rows[active], xr, p)
            wn = (xl * xl).sum(axis=2) + norms[start:start + c][None, :]
            best[active] = np.minimum(best[active], wn.min(axis=1))
            start += c
    return best, visited


def _witness(code: DoubleCirculantCode, d2: int) -> FpVector:
    params = code.params
    xr = ball_points(params.q, params.half, d2)
    words = words_for(code, xr)
    norms = (words * words).sum(axis=1)
    nonzero = (xr != 0).any(axis=1)
    hits = np.nonzero((norms == d2) & nonzero)[0]
    # ball_points is in odometer order, so the first hit is the enumeration-order first.
    return FpVector(params, tuple(int(c) for c in words[hits[0]]))


def min_norm(code: DoubleCirculantCode, budget: int = DEFAULT_BUDGET, reduce: bool = True) -> MinNorm:
    """Minimum norm^2 over nonzero codewords with the odometer-first witness.

    ``reduce=False`` scans all p^q codewords with no pruning; it exists as an
    independent check of the orbit-reduced path.
    """
    params = code.params
    if reduce:
        best, visited = batch_min_norm_sq(params, [code.a], budget)
        d2 = int(best[0])
        return MinNorm(d2, _witness(code, d2), visited)
    total = code.cardinality
    if total > budget:
        raise BudgetExceeded(total, budget)
    xr = box_points(params.q, params.half)
    words = words_for(code, xr)
    norms = (words * words).sum(axis=1)
    zero = int(odometer_index(np.zeros((1, params.q), dtype=np.int64), params.half)[0])
    norms[zero] = np.iinfo(np.int64).max
    i = int(np.argmin(norms))
    return MinNorm(int(norms[i]), FpVector(params, tuple(int(c) for c in words[i])), total)


def min_norm_sq(code: DoubleCirculantCode, budget: int = DEFAULT_BUDGET, reduce: bool = True) -> int:
    return min_norm(code, budget, reduce).d2


def membership_probability(x: FpVector) -> Fraction:
    """Probability that x lies in the code with uniformly random first row.

    1/|C(x_R)| when x_L lies in the cyclic code C(x_R), else 0.
    """
    params = x.params
    cx = cyclic_code_of(RingElement(params, x.right))
    if code_contains(cx, RingElement(params, x.left)):
        return Fraction(1, cx.cardinality)
    return Fraction(0)


def random_first_rows(params: Params, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    h = params.half
    return rng.integers(-h, h + 1, size=(count, params.q), dtype=np.int64)


def random_code(params: Params, rng_seed: int) -> DoubleCirculantCode:
    return DoubleCirculantCode(params, tuple(int(c) for c in random_first_rows(params, 1, rng_seed)[0]))


def all_first_rows(params: Params) -> np.ndarray:
    """Every a in F_p^q, odometer order."""
    return box_points(params.q, params.half)
