"""Centered arithmetic modulo an odd prime p and the norm on F_p^n."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .primes import is_prime


@dataclass(frozen=True)
class Params:
    """Length parameter q, alphabet p and dimension n = 2q."""

    q: int
    p: int

    def __post_init__(self):
        q, p = self.q, self.p
        if q < 3 or not is_prime(q):
            raise ValueError(f"q must be an odd prime, got {q}")
        if p < 3 or not is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if p == q:
            raise ValueError("p and q must differ")

    @property
    def n(self) -> int:
        return 2 * self.q

    @property
    def half(self) -> int:
        """(p - 1) / 2, the largest centered magnitude."""
        return (self.p - 1) // 2

    @property
    def max_norm_sq(self) -> int:
        return self.n * self.half ** 2


def centered_lift(z: int, p: int) -> int:
    """Representative of z mod p in [-(p-1)/2, (p-1)/2]."""
    h = (p - 1) // 2
    return (z + h) % p - h


@dataclass(frozen=True)
class FpVector:
    params: Params
    coords: tuple
    norm_sq: int = field(init=False, compare=False)

    def __post_init__(self):
        p = self.params.p
        cs = tuple(centered_lift(int(c), p) for c in self.coords)
        if len(cs) != self.params.n:
            raise ValueError(f"expected {self.params.n} coordinates, got {len(cs)}")
        object.__setattr__(self, "coords", cs)
        object.__setattr__(self, "norm_sq", sum(c * c for c in cs))

    @classmethod
    def zero(cls, params: Params) -> "FpVector":
        return cls(params, (0,) * params.n)

    @classmethod
    def from_halves(cls, params: Params, left: Sequence[int], right: Sequence[int]) -> "FpVector":
        return cls(params, tuple(left) + tuple(right))

    @property
    def left(self) -> tuple:
        return self.coords[: self.params.q]

    @property
    def right(self) -> tuple:
        return self.coords[self.params.q:]

    def is_zero(self) -> bool:
        return self.norm_sq == 0

    def _check(self, other: "FpVector") -> None:
        if other.params != self.params:
            raise ValueError("vectors over different parameters")

    def __add__(self, other: "FpVector") -> "FpVector":
        self._check(other)
        return FpVector(self.params, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FpVector") -> "FpVector":
        self._check(other)
        return FpVector(self.params, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FpVector":
        return FpVector(self.params, tuple(-a for a in self.coords))

    def scale(self, s: int) -> "FpVector":
        return FpVector(self.params, tuple(s * a for a in self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)


def norm_sq(x: FpVector) -> int:
    return x.norm_sq


def vec_add(x: FpVector, y: FpVector) -> FpVector:
    return x + y


def vec_neg(x: FpVector) -> FpVector:
    return -x


def scalar_mul(x: FpVector, s: int) -> FpVector:
    return x.scale(s)


def centered_range(p: int) -> range:
    h = (p - 1) // 2
    return range(-h, h + 1)


def centered_tuple(values: Iterable[int], p: int) -> tuple:
    return tuple(centered_lift(int(v), p) for v in values)
