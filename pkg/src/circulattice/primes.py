"""Primality, primitive roots mod q, and selection of the alphabet prime p.

Two selection routes are provided. ``select_p_direct`` takes the least prime
above n^2 ln n whose residue mod q is a primitive root. ``select_p_linnik``
builds the arithmetic progression r mod Q with Q = q^2 * aux and
r = (1 + e1*q)(alpha + e2*q), then walks it until it hits a prime.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import NoPrimeInWindow

log = logging.getLogger(__name__)

# Deterministic Miller-Rabin for n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981


def _trial_division(n: int) -> bool:
    if n < 2:
        return False
    for d in (2, 3):
        if n % d == 0:
            return n == d
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def is_prime(n: int) -> bool:
    n = int(n)
    if n < 2:
        return False
    for sp in _MR_WITNESSES:
        if n % sp == 0:
            return n == sp
    if n >= _MR_LIMIT:
        return _trial_division(n)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Least prime strictly greater than n."""
    c = max(int(n) + 1, 2)
    while not is_prime(c):
        c += 1
    return c


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(a: int, q: int) -> int:
    a %= q
    if math.gcd(a, q) != 1:
        raise ValueError(f"{a} is not invertible mod {q}")
    k, x = 1, a
    while x != 1:
        x = x * a % q
        k += 1
    return k


def is_primitive(a: int, q: int) -> bool:
    """True iff a generates (Z/qZ)^*, q prime.

    Uses the criterion a^((q-1)/r) != 1 for every prime r dividing q - 1.
    """
    if a % q == 0:
        raise ValueError(f"{a} = 0 mod {q} has no multiplicative order")
    return all(pow(a, (q - 1) // r, q) != 1 for r in prime_factors(q - 1))


def least_primitive_root(q: int) -> int:
    for a in range(2, q):
        if is_primitive(a, q):
            return a
    if q == 2:
        return 1
    raise ValueError(f"no primitive root mod {q}")


def p_window(q: int) -> tuple[int, int]:
    """Integer bounds (ceil(n^2 ln n), floor((n^2 ln^2 n)^5.5)) with n = 2q."""
    n = 2 * q
    ln = math.log(n)
    lo = math.ceil(n * n * ln)
    hi = int(math.floor(math.exp(5.5 * math.log(n * n * ln * ln))))
    return lo, hi


@dataclass(frozen=True)
class PrimeSelection:
    q: int
    p: int
    method: str
    range_lo: int
    range_hi: int
    witnesses: dict = field(default_factory=dict)
    beyond_window: bool = False

    def in_window(self) -> bool:
        return self.range_lo <= self.p <= self.range_hi

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "p": str(self.p),
            "method": self.method,
            "witnesses": {k: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v)
                          for k, v in self.witnesses.items()},
            "window": [str(self.range_lo), str(self.range_hi)],
            "beyond_window": self.beyond_window,
        }


def _check_q(q: int) -> None:
    if q < 3 or not is_prime(q):
        raise ValueError(f"q must be an odd prime, got {q}")


def select_p_direct(q: int, relax: bool = False) -> PrimeSelection:
    """Least prime p > n^2 ln n with p mod q primitive."""
    _check_q(q)
    n = 2 * q
    lo, hi = p_window(q)
    floor_ = n * n * math.log(n)
    p = next_prime(math.floor(floor_))
    while p % q == 0 or not is_primitive(p % q, q):
        p = next_prime(p)
        if p > hi and not relax:
            raise NoPrimeInWindow(f"no primitive prime for q={q} below {hi}")
    beyond = p > hi
    if beyond:
        log.warning("q=%d: selected p=%d lies beyond the upper window limit", q, p)
    return PrimeSelection(q=q, p=p, method="direct-search", range_lo=lo, range_hi=hi,
                          beyond_window=beyond)


def aux_prime(q: int) -> int:
    """Least prime in [4 ln n, 4 ln^2 n] different from q."""
    n = 2 * q
    ln = math.log(n)
    a, b = 4 * ln, 4 * ln * ln
    c = math.ceil(a)
    while c <= b:
        if is_prime(c) and c != q:
            return c
        c += 1
    raise NoPrimeInWindow(f"no prime in [{a:.3f}, {b:.3f}] for q={q}")


def select_p_linnik(q: int, max_steps: Optional[int] = None) -> PrimeSelection:
    """Walk the progression r + kQ (k >= 0) to its least prime.

    Raises NoPrimeInWindow when the auxiliary window holds no usable prime;
    callers then fall back to ``select_p_direct``.
    """
    _check_q(q)
    n = 2 * q
    aux = aux_prime(q)
    alpha = least_primitive_root(q)
    for e1, e2 in ((1, 0), (1, 1), (2, 0), (2, 1)):
        r = (1 + e1 * q) * (alpha + e2 * q)
        if r % aux != 0:
            break
    else:  # pragma: no cover - impossible: q != 0 mod aux
        raise ArithmeticError("no (e1, e2) makes r coprime to the auxiliary prime")
    Q = q * q * aux
    if math.gcd(r, Q) != 1:
        raise ArithmeticError(f"r={r} not coprime to Q={Q}")
    p, k = r, 0
    while not is_prime(p):
        p += Q
        k += 1
        if max_steps is not None and k > max_steps:
            raise NoPrimeInWindow(f"no prime in first {max_steps} terms of {r} mod {Q}")
    if p % q != alpha or not is_primitive(p % q, q):
        raise ArithmeticError(f"p={p} is not congruent to the primitive root {alpha}")
    lo, hi = p_window(q)
    ln = math.log(n)
    witnesses = {
        "aux_prime": aux,
        "alpha": alpha,
        "eps1": e1,
        "eps2": e2,
        "Q": Q,
        "r": r,
        "k": k,
        "r_lt_Q": r < Q,
        "Q_in_range": n * n * ln <= Q <= n * n * ln * ln,
    }
    return PrimeSelection(q=q, p=p, method="linnik-progression", range_lo=lo, range_hi=hi,
                          witnesses=witnesses, beyond_window=p > hi)
