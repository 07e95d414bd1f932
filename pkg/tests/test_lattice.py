import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from circulattice.dcode import DoubleCirculantCode, contains, min_norm_sq
from circulattice.lattice import (construction_a, construction_a_basis, density, density_from,
                                  hermite_normal_form, integer_det, sv_oracle, zeta)
from circulattice.modp import FpVector, Params


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_integer_det_matches_float(M):
    assert integer_det(M) == round(np.linalg.det(np.array(M, dtype=float)))


def test_hnf_properties():
    M = [[2, 3, 1], [4, -1, 5], [0, 6, -3]]
    H = hermite_normal_form(M)
    assert abs(integer_det(H)) == abs(integer_det(M))
    for i, row in enumerate(H):
        assert all(v == 0 for v in row[:i]) and row[i] > 0
        for k in range(i):
            assert 0 <= H[k][i] < row[i]


def test_construction_a_q3(p35):
    code = DoubleCirculantCode(p35, (1, 2, 3))
    rows = construction_a_basis(code)
    assert abs(integer_det(rows)) == 5 ** 3
    for r in rows:
        assert contains(code, FpVector(p35, r))
    lat = construction_a(code)
    assert lat.det_abs == 125 and lat.mu == min(lat.d_sq, 25)


def test_hnf_is_code_plus_pz(p35):
    # the lattice is {x : x mod p in C}: its HNF has p^q index, pivots p or 1
    code = DoubleCirculantCode(p35, (1, 2, 3))
    H = construction_a(code).hnf()
    assert math.prod(H[i][i] for i in range(6)) == 125
    assert sorted(H[i][i] for i in range(6)) == [1, 1, 1, 5, 5, 5]


@pytest.mark.parametrize("q,p", [(3, 5), (3, 7), (3, 11), (5, 3), (5, 7)])
def test_sv_oracle_matches_min_norm(q, p):
    params = Params(q, p)
    rng = np.random.default_rng(p)
    for a in rng.integers(-(p // 2), p // 2 + 1, size=(4, q)):
        code = DoubleCirculantCode(params, tuple(int(v) for v in a))
        mu = min(min_norm_sq(code), p * p)
        basis = construction_a_basis(code)
        assert sv_oracle(basis, p * p) == mu
        assert sv_oracle(basis, mu - 1) is None


def test_zeta():
    assert zeta(2) == pytest.approx(math.pi ** 2 / 6, rel=1e-6)
    assert zeta(6) == pytest.approx(math.pi ** 6 / 945, rel=1e-14)
    with pytest.raises(ValueError):
        zeta(1)


def test_density_example():
    rep = density_from(6, 2, 125)
    expected = (math.pi ** 3 / 6) * (math.sqrt(2) / 2) ** 6 / 125
    assert rep.delta == pytest.approx(expected, rel=1e-12)
    assert rep.delta == pytest.approx(0.0051677, rel=1e-4)
    assert rep.delta_lb is not None and rep.delta_lb <= rep.delta


def test_density_of_lattice(p35):
    lat = construction_a(DoubleCirculantCode(p35, (1, 1, 1)))
    rep = density(lat)
    assert rep.mu == 2 and rep.det_abs == 125
    assert rep.to_json()["det"] == "125"
