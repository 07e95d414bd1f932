"""Vectorized enumeration of centered integer vectors in boxes and balls."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


def isqrt_floor(x: int) -> int:
    return math.isqrt(x) if x >= 0 else -1


@lru_cache(maxsize=1024)
def _ball_points_cached(dim: int, h: int, R: int) -> np.ndarray:
    if R < 0:
        return np.zeros((0, dim), dtype=np.int64)
    r = min(h, isqrt_floor(R))
    if dim == 1:
        out = np.arange(-r, r + 1, dtype=np.int64).reshape(-1, 1)
        out.setflags(write=False)
        return out
    blocks = []
    for c in range(-r, r + 1):
        sub = _ball_points_cached(dim - 1, h, R - c * c)
        if len(sub):
            blk = np.empty((len(sub), dim), dtype=np.int64)
            blk[:, 0] = c
            blk[:, 1:] = sub
            blocks.append(blk)
    if not blocks:
        return np.zeros((0, dim), dtype=np.int64)
    out = np.concatenate(blocks)
    out.setflags(write=False)
    return out


def ball_points(dim: int, h: int, R: int) -> np.ndarray:
    """All v in [-h, h]^dim with sum v_i^2 <= R, in odometer order (last coordinate fastest)."""
    return _ball_points_cached(dim, h, R)


def box_points(dim: int, h: int) -> np.ndarray:
    return ball_points(dim, h, dim * h * h)


def ball_size(dim: int, h: int, R: int) -> int:
    """Number of points of ``ball_points`` without materializing them."""
    if R < 0:
        return 0
    cnt = np.zeros(R + 1, dtype=object)
    cnt[0] = 1
    r = min(h, isqrt_floor(R))
    for _ in range(dim):
        new = np.zeros(R + 1, dtype=object)
        for c in range(-r, r + 1):
            s = c * c
            new[s:] += cnt[: R + 1 - s]
        cnt = new
    return int(cnt.sum())


def odometer_index(v: np.ndarray, h: int) -> np.ndarray:
    """Mixed-radix index of rows of v; integer order equals lexicographic order."""
    v = np.atleast_2d(v)
    base = 2 * h + 1
    idx = np.zeros(len(v), dtype=np.int64)
    for j in range(v.shape[1]):
        idx = idx * base + (v[:, j] + h)
    return idx


def centered_mod(a: np.ndarray, p: int) -> np.ndarray:
    h = (p - 1) // 2
    return (a + h) % p - h


def half_orbit_representatives(vs: np.ndarray, h: int) -> np.ndarray:
    """Boolean mask of rows that are lex-least among their images under +-cyclic shifts."""
    if len(vs) == 0:
        return np.zeros(0, dtype=bool)
    q = vs.shape[1]
    own = odometer_index(vs, h)
    best = own.copy()
    for k in range(q):
        rolled = np.roll(vs, k, axis=1)
        np.minimum(best, odometer_index(rolled, h), out=best)
        np.minimum(best, odometer_index(-rolled, h), out=best)
    return own == best
