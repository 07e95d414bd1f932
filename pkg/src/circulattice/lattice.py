"""Construction A for double circulant codes, exact determinants, SVP oracle, densities."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .counting import C_THEOREM, integer_ball_count, log_ball_volume
from .dcode import DoubleCirculantCode, min_norm_sq
from .errors import BudgetExceeded
from .modp import Params, centered_lift

# DP cells (n * d^2 * sqrt(d^2)) allowed when counting Z^n cap S_n(d) for density reports.
_LB_COUNT_BUDGET = 5 * 10**7


def integer_det(M) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = [[int(v) for v in row] for row in M]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def hermite_normal_form(M) -> list[list[int]]:
    """Row-style HNF of a full-rank square integer matrix (same row lattice).

    Upper triangular, positive pivots, entries above each pivot reduced into [0, pivot).
    """
    A = [[int(v) for v in row] for row in M]
    n = len(A)
    m = len(A[0]) if A else 0
    r = 0
    for c in range(m):
        # gcd-combine column c of rows r.. into row r
        while True:
            nz = [i for i in range(r, n) if A[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            done = True
            for i in range(r + 1, n):
                if A[i][c]:
                    f = A[i][c] // A[r][c]
                    A[i] = [x - f * y for x, y in zip(A[i], A[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if r < n and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
            for i in range(r):
                f = A[i][c] // A[r][c]
                if f:
                    A[i] = [x - f * y for x, y in zip(A[i], A[r])]
            r += 1
    return A


@dataclass(frozen=True)
class LatticeBasis:
    params: Params
    basis: tuple  # rows
    det_abs: int
    mu: int
    d_sq: int

    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64)

    def gram(self) -> list[list[int]]:
        B = [list(r) for r in self.basis]
        return [[sum(x * y for x, y in zip(u, v)) for v in B] for u in B]

    def hnf(self) -> list[list[int]]:
        return hermite_normal_form(self.basis)


def construction_a_basis(code: DoubleCirculantCode) -> list[list[int]]:
    """Rows [-A^T | I_q] (codewords with unit right halves) over [p I_q | 0]."""
    q, p = code.params.q, code.params.p
    At = code.circulant().T
    rows = []
    for i in range(q):
        rows.append([centered_lift(-int(v), p) for v in At[i]] + [int(i == j) for j in range(q)])
    for i in range(q):
        rows.append([p * int(i == j) for j in range(q)] + [0] * q)
    return rows


def construction_a(code: DoubleCirculantCode, d_sq: Optional[int] = None,
                   exact_det_max_n: int = 16) -> LatticeBasis:
    params = code.params
    if d_sq is None:
        d_sq = min_norm_sq(code)
    rows = construction_a_basis(code)
    det_expected = params.p ** params.q
    if params.n <= exact_det_max_n:
        det = abs(integer_det(rows))
        if det != det_expected:
            raise ArithmeticError(f"|det| = {det}, expected p^q = {det_expected}")
    return LatticeBasis(params, tuple(tuple(r) for r in rows), det_expected,
                        min(d_sq, params.p ** 2), d_sq)


def sv_oracle(basis, bound_sq: int, budget: int = 10**7) -> Optional[int]:
    """Shortest nonzero squared length among lattice vectors of norm^2 <= bound_sq.

    Fincke-Pohst enumeration of coefficient vectors over the Gram-Schmidt
    data of the basis rows, visiting children in zig-zag order and shrinking
    the radius to the best exact norm found. Candidate norms are recomputed
    in integers, so floating point only steers the search. Returns None when
    no nonzero vector is that short.
    """
    B = np.array(basis, dtype=np.float64)
    Bi = [[int(v) for v in row] for row in basis]
    n = len(B)
    R = np.linalg.qr(B.T, mode="r")
    diag = np.abs(np.diag(R))
    if np.any(diag < 1e-12):
        raise ValueError("basis is singular")
    # normalize so the diagonal is positive
    R = R * np.sign(np.diag(R))[:, None]
    slack = 1e-9
    best = [int(bound_sq)]
    found = [False]
    coeffs = [0] * n
    nodes = [0]

    def exact_norm() -> int:
        v = [0] * len(Bi[0])
        for i, c in enumerate(coeffs):
            if c:
                row = Bi[i]
                for j in range(len(v)):
                    v[j] += c * row[j]
        return sum(x * x for x in v)

    def level(i: int, partial: float) -> None:
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(nodes[0], budget)
        s = sum(R[i, j] * coeffs[j] for j in range(i + 1, n))
        center = -s / R[i, i]
        rem = best[0] * (1 + slack) + slack - partial
        if rem < 0:
            return
        width = math.sqrt(rem) / R[i, i]
        lo, hi = math.ceil(center - width), math.floor(center + width)
        if lo > hi:
            return
        order = sorted(range(lo, hi + 1), key=lambda c: abs(c - center))
        for c in order:
            y = R[i, i] * c + s
            t = partial + y * y
            if t > best[0] * (1 + slack) + slack:
                continue
            coeffs[i] = c
            if i == 0:
                if any(coeffs):
                    nv = exact_norm()
                    if nv <= best[0]:
                        best[0] = nv
                        found[0] = True
            else:
                level(i - 1, t)
        coeffs[i] = 0

    level(n - 1, 0.0)
    return best[0] if found[0] else None


def zeta(s: int) -> float:
    """Riemann zeta at an integer s >= 2 by direct summation (tail < 1e-15 for s >= 6)."""
    if s < 2:
        raise ValueError("zeta diverges for s < 2")
    # tail after K terms is below K^(1-s) / (s-1)
    K = math.ceil((1e-16 * (s - 1)) ** (1 / (1 - s))) + 1
    K = min(K, 10**7)
    return math.fsum(k ** -float(s) for k in range(K, 0, -1))


@dataclass(frozen=True)
class DensityReport:
    n: int
    mu: int
    det_abs: int
    delta: float
    log2_delta: float
    delta_lb: Optional[float]
    ratio_minkowski: float
    ratio_cn: float

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mu": str(self.mu),
            "det": str(self.det_abs),
            "delta": self.delta,
            "log2_delta": self.log2_delta,
            "delta_lb": self.delta_lb,
            "ratio_minkowski": self.ratio_minkowski,
            "ratio_cn": self.ratio_cn,
        }


def density_from(n: int, mu: int, det_abs: int, c: float = C_THEOREM) -> DensityReport:
    log_det = math.log(det_abs)
    log_delta = log_ball_volume(n, math.sqrt(mu) / 2) - log_det
    delta = math.exp(log_delta)
    if delta > 1 + 1e-12:
        raise ArithmeticError(f"packing density {delta} exceeds 1")
    delta_lb = None
    if n * mu * math.isqrt(mu) <= _LB_COUNT_BUDGET:
        d = math.sqrt(mu)
        count = integer_ball_count(n, mu)
        log_lb = math.log(count) - log_det - n * math.log(2) - n * math.log1p(math.sqrt(n) / (2 * d))
        delta_lb = math.exp(log_lb)
    log_mink = (1 - n) * math.log(2) + math.log(zeta(n))
    log_cn = math.log(c * n) - n * math.log(2)
    return DensityReport(
        n=n, mu=mu, det_abs=det_abs, delta=delta, log2_delta=log_delta / math.log(2),
        delta_lb=delta_lb, ratio_minkowski=math.exp(log_delta - log_mink),
        ratio_cn=math.exp(log_delta - log_cn),
    )


def density(lat: LatticeBasis, c: float = C_THEOREM) -> DensityReport:
    return density_from(lat.params.n, lat.mu, lat.det_abs, c)
