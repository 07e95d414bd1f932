"""Action of G = Z/2Z x Z/qZ on F_p^{2q} by negation and simultaneous half rotation."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional

from .enumeration import ball_points, ball_size
from .errors import BudgetExceeded
from .modp import FpVector, Params

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class GroupElement:
    sign: int = 0
    shift: int = 0

    def __post_init__(self):
        if self.sign not in (0, 1):
            raise ValueError("sign must be 0 or 1")
        if self.shift < 0:
            raise ValueError("shift must be reduced mod q")

    def compose(self, other: "GroupElement", q: int) -> "GroupElement":
        """self * other; G is abelian so order does not matter."""
        return GroupElement(self.sign ^ other.sign, (self.shift + other.shift) % q)


def group_elements(q: int) -> list[GroupElement]:
    return [GroupElement(s, k) for s in (0, 1) for k in range(q)]


def _rotate(t: tuple, k: int) -> tuple:
    q = len(t)
    k %= q
    return t[q - k:] + t[: q - k]


def act(g: GroupElement, x: FpVector) -> FpVector:
    q = x.params.q
    if g.shift >= q:
        raise ValueError(f"shift {g.shift} not reduced mod {q}")
    coords = _rotate(x.left, g.shift) + _rotate(x.right, g.shift)
    if g.sign:
        coords = tuple(-c for c in coords)
    return FpVector(x.params, coords)


@dataclass(frozen=True)
class OrbitClass:
    representative: FpVector
    length: int


def _orbit_coords(coords: tuple, q: int) -> set:
    left, right = coords[:q], coords[q:]
    out = set()
    for k in range(q):
        img = _rotate(left, k) + _rotate(right, k)
        out.add(img)
        out.add(tuple(-c for c in img))
    return out


def orbit_of(x: FpVector) -> OrbitClass:
    imgs = _orbit_coords(x.coords, x.params.q)
    return OrbitClass(FpVector(x.params, min(imgs)), len(imgs))


def _all_vectors(params: Params) -> Iterator[tuple]:
    h = params.half
    return itertools.product(range(-h, h + 1), repeat=params.n)


def orbit_census(params: Params, w_sq: int, budget: int = DEFAULT_BUDGET,
                 strategy: Optional[str] = None) -> dict[int, int]:
    """Number of G-orbits of each length inside B_{n,p}(sqrt(w_sq)).

    ``strategy`` is ``"sweep"`` (all p^n vectors, seen-set dedup) or ``"ball"``
    (radius-limited enumeration, orbits counted as vectors / length). By
    default the cheaper of the two is used.
    """
    q, n, h = params.q, params.n, params.half
    space = params.p ** n
    if strategy is None:
        strategy = "sweep" if space <= budget and w_sq >= params.max_norm_sq else "ball"
    census: Counter = Counter()
    if strategy == "sweep":
        if space > budget:
            raise BudgetExceeded(space, budget)
        seen = set()
        for v in _all_vectors(params):
            if v in seen or sum(c * c for c in v) > w_sq:
                continue
            orb = _orbit_coords(v, q)
            seen.update(orb)
            census[len(orb)] += 1
    elif strategy == "ball":
        size = ball_size(n, h, w_sq)
        if size > budget:
            raise BudgetExceeded(size, budget)
        per_length: Counter = Counter()
        for row in ball_points(n, h, w_sq):
            per_length[len(_orbit_coords(tuple(int(c) for c in row), q))] += 1
        for length, cnt in per_length.items():
            if cnt % length:
                raise ArithmeticError(f"{cnt} vectors of orbit length {length} do not tile")
            census[length] = cnt // length
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return dict(sorted(census.items()))
