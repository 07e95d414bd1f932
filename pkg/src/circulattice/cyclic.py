"""The ring R = F_p[Z]/(Z^q - 1) and its cyclic codes.

Polynomials are handled internally as lists of residues in [0, p), lowest
degree first, with no trailing zeros (the zero polynomial is ``[]``). Public
values (``RingElement`` coefficients, code generators) use centered integers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .modp import Params, centered_tuple


# -- polynomial helpers over F_p ---------------------------------------------

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly(coeffs: Sequence[int], p: int) -> list:
    return _trim([int(c) % p for c in coeffs])


def poly_sub(a: list, b: list, p: int) -> list:
    m = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(m)]
    return _trim(out)


def poly_mul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


def poly_divmod(a: list, b: list, p: int) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) <= db:
        return [], a
    quot = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv % p
        quot[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] = (a[k + j] - c * b[j]) % p
    return _trim(quot), _trim(a[:db])


def poly_monic(a: list, p: int) -> list:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def poly_gcd(a: list, b: list, p: int) -> list:
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = list(a), list(b)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    return poly_monic(a, p)


def x_pow_q_minus_1(q: int, p: int) -> list:
    return [p - 1] + [0] * (q - 1) + [1]


def all_ones(q: int) -> list:
    return [1] * q


# -- the ring R ---------------------------------------------------------------

def _ring_mul_arrays(u: np.ndarray, v: np.ndarray, q: int, p: int) -> np.ndarray:
    full = np.convolve(u, v)
    out = full[:q].copy()
    out[: len(full) - q] += full[q:]
    return out % p


@dataclass(frozen=True)
class RingElement:
    params: Params
    coeffs: tuple

    def __post_init__(self):
        cs = centered_tuple(self.coeffs, self.params.p)
        if len(cs) != self.params.q:
            raise ValueError(f"expected {self.params.q} coefficients, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_poly(cls, params: Params, coeffs: Sequence[int]) -> "RingElement":
        """Reduce an arbitrary-degree coefficient list modulo Z^q - 1."""
        out = [0] * params.q
        for i, c in enumerate(coeffs):
            out[i % params.q] += int(c)
        return cls(params, tuple(out))

    @classmethod
    def one(cls, params: Params) -> "RingElement":
        return cls(params, (1,) + (0,) * (params.q - 1))

    def residues(self) -> list:
        return poly(self.coeffs, self.params.p)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return ring_mul(self, other)

    def __add__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.params, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def shift(self, k: int = 1) -> "RingElement":
        """Multiplication by Z^k, i.e. a right rotation of the coefficients."""
        q = self.params.q
        k %= q
        return RingElement(self.params, self.coeffs[q - k:] + self.coeffs[: q - k])


def ring_mul(u: RingElement, v: RingElement) -> RingElement:
    if u.params != v.params:
        raise ValueError("ring elements over different parameters")
    q, p = u.params.q, u.params.p
    prod = _ring_mul_arrays(np.array(u.coeffs, dtype=np.int64) % p,
                            np.array(v.coeffs, dtype=np.int64) % p, q, p)
    return RingElement(u.params, tuple(int(c) for c in prod))


# -- cyclic codes -------------------------------------------------------------

@dataclass(frozen=True)
class CyclicCode:
    """The ideal of R generated by a monic divisor g of Z^q - 1."""

    params: Params
    generator: tuple
    dimension: int = field(init=False)
    cardinality: int = field(init=False, compare=False)

    def __post_init__(self):
        q, p = self.params.q, self.params.p
        g = poly(self.generator, p)
        if not g or g[-1] != 1:
            raise ValueError("generator must be monic and nonzero")
        _, rem = poly_divmod(x_pow_q_minus_1(q, p), g, p)
        if rem:
            raise ValueError(f"{self.generator} does not divide Z^{q} - 1 over F_{p}")
        object.__setattr__(self, "generator", centered_tuple(g, p))
        object.__setattr__(self, "dimension", q - (len(g) - 1))
        object.__setattr__(self, "cardinality", p ** self.dimension)

    @property
    def degree(self) -> int:
        return len(self.generator) - 1

    def __contains__(self, x: RingElement) -> bool:
        return code_contains(self, x)

    def elements(self):
        """All codewords m(Z) g(Z), deg m < dimension (only sensible for small codes)."""
        p = self.params.p
        g = poly(self.generator, p)
        h = (p - 1) // 2
        for m in itertools.product(range(-h, h + 1), repeat=self.dimension):
            yield RingElement.from_poly(self.params, poly_mul(poly(m, p), g, p) or [0])


def cyclic_code_of(u: RingElement) -> CyclicCode:
    """The ideal generated by u: its generator is gcd(u, Z^q - 1)."""
    q, p = u.params.q, u.params.p
    g = poly_gcd(u.residues(), x_pow_q_minus_1(q, p), p)
    return CyclicCode(u.params, tuple(g))


def code_contains(code: CyclicCode, x: RingElement) -> bool:
    if code.params != x.params:
        raise ValueError("code and word over different parameters")
    p = code.params.p
    _, rem = poly_divmod(x.residues(), poly(code.generator, p), p)
    return not rem


def repetition_code(params: Params) -> CyclicCode:
    """C_1, generated by 1 + Z + ... + Z^(q-1)."""
    return CyclicCode(params, tuple(all_ones(params.q)))


def sum_zero_code(params: Params) -> CyclicCode:
    """C_1^perp = {u : sum u_i = 0}, generated by Z - 1."""
    return CyclicCode(params, (-1, 1))


# -- factoring Z^q - 1 --------------------------------------------------------

def cyclotomic_cosets(q: int, p: int) -> list[tuple]:
    """Orbits of multiplication by p on Z/qZ; their sizes are the factor degrees."""
    seen = set()
    out = []
    for s in range(q):
        if s in seen:
            continue
        orbit = []
        x = s
        while x not in orbit:
            orbit.append(x)
            x = x * p % q
        seen.update(orbit)
        out.append(tuple(orbit))
    return out


def _nullspace_mod_p(M: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of {v : v M = 0} over F_p."""
    M = np.array(M, dtype=np.int64) % p
    A = M.T.copy()  # solve A v^T = 0
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-A[i, f]) % p
        basis.append(v)
    return basis


def berlekamp_basis(q: int, p: int) -> list[list]:
    """Berlekamp subalgebra {g : g^p = g mod Z^q - 1}; its dimension counts irreducible factors.

    The Frobenius matrix is built by repeated multiplication in R, without
    using any knowledge of the multiplicative order of p mod q.
    """
    zp = np.zeros(q, dtype=np.int64)
    zp[1 % q] = 1
    base = zp.copy()
    result = np.zeros(q, dtype=np.int64)
    result[0] = 1
    e = p
    while e:
        if e & 1:
            result = _ring_mul_arrays(result, base, q, p)
        base = _ring_mul_arrays(base, base, q, p)
        e >>= 1
    rows = [np.eye(1, q, 0, dtype=np.int64)[0]]
    for _ in range(1, q):
        rows.append(_ring_mul_arrays(rows[-1], result, q, p))
    Qm = np.array(rows) % p
    ker = _nullspace_mod_p((Qm - np.eye(q, dtype=np.int64)) % p, p)
    return [_trim([int(c) for c in v]) for v in ker]


def count_irreducible_factors(q: int, p: int) -> int:
    return len(berlekamp_basis(q, p))


@lru_cache(maxsize=256)
def factor_x_q_minus_1(q: int, p: int) -> tuple:
    """Monic irreducible factors of Z^q - 1 over F_p, sorted by (degree, coefficients)."""
    f = x_pow_q_minus_1(q, p)
    basis = berlekamp_basis(q, p)
    k = len(basis)
    factors = [f]
    if k == 2:
        # Z - 1 always splits off; the cofactor is then irreducible.
        factors = [[p - 1, 1], all_ones(q)]
    else:
        # gcd(h, g - s) over s in F_p splits h into coprime parts
        for g in basis:
            if len(g) <= 1:
                continue
            split = []
            for h in factors:
                rest = h
                if len(h) > 2:
                    for s in range(p):
                        d = poly_gcd(rest, poly_sub(g, [s], p), p)
                        if len(d) > 1:
                            split.append(d)
                            rest = poly_divmod(rest, d, p)[0]
                            if len(rest) <= 1:
                                break
                if len(rest) > 1:
                    split.append(poly_monic(rest, p))
            factors = split
            if len(factors) == k:
                break
    factors = sorted((tuple(poly_monic(h, p)) for h in factors), key=lambda t: (len(t), t))
    degrees = sorted(len(c) for c in cyclotomic_cosets(q, p))
    if sorted(len(h) - 1 for h in factors) != degrees:
        raise ArithmeticError(f"factor degrees disagree with cyclotomic cosets for q={q}, p={p}")
    return tuple(factors)


def all_cyclic_codes(params: Params) -> list[CyclicCode]:
    q, p = params.q, params.p
    factors = [list(f) for f in factor_x_q_minus_1(q, p)]
    codes = []
    for mask in range(1 << len(factors)):
        g = [1]
        for i, f in enumerate(factors):
            if mask >> i & 1:
                g = poly_mul(g, f, p)
        codes.append(CyclicCode(params, tuple(g)))
    return sorted(codes, key=lambda c: (-c.degree, c.generator))


def nontrivial_cyclic_codes(params: Params) -> list[CyclicCode]:
    """Cyclic codes other than {0} and F_p^q, largest generator degree first."""
    return [c for c in all_cyclic_codes(params) if 0 < c.dimension < params.q]


def has_two_code_structure(params: Params) -> bool:
    return count_irreducible_factors(params.q, params.p) == 2
