import pytest
from hypothesis import given, strategies as st

from circulattice.group import act, group_elements
from circulattice.modp import FpVector, Params, centered_lift, norm_sq, scalar_mul, vec_add, vec_neg


def test_centered_lift_examples():
    assert centered_lift(3, 5) == -2
    assert centered_lift(0, 7) == 0
    assert centered_lift(6, 13) == 6


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 31, 53, 97, 101])
def test_centered_lift_is_bijection(p):
    h = (p - 1) // 2
    lifts = [centered_lift(z, p) for z in range(p)]
    assert sorted(lifts) == list(range(-h, h + 1))
    assert all((lift - z) % p == 0 for z, lift in enumerate(lifts))


@pytest.mark.parametrize("q,p", [(3, 3), (4, 5), (3, 9), (3, 2)])
def test_params_rejects_bad_input(q, p):
    with pytest.raises(ValueError):
        Params(q, p)


def test_norm_examples(p35):
    assert norm_sq(FpVector.zero(p35)) == 0
    assert norm_sq(FpVector(p35, (1, 4, 0, 0, 0, 0))) == 2
    assert norm_sq(FpVector(Params(3, 7), (2, 3, 3, 2, 0, 1))) == 27


def test_vector_ops(p35):
    x = FpVector(p35, (1, 2, -2, 0, 1, 3))
    assert vec_add(x, vec_neg(x)).is_zero()
    assert scalar_mul(x, 1) == x
    y = scalar_mul(FpVector(p35, (-2, 0, 0, 0, 0, 0)), 2)
    assert y.coords[0] == 1


def test_mismatched_params():
    with pytest.raises(ValueError):
        FpVector(Params(3, 5), (0,) * 6) + FpVector(Params(3, 7), (0,) * 6)


coords = st.lists(st.integers(-1000, 1000), min_size=10, max_size=10)


@given(coords, st.sampled_from([3, 7, 11, 13]))
def test_norm_properties(cs, p):
    params = Params(5, p)
    x = FpVector(params, cs)
    h = (p - 1) // 2
    assert all(-h <= c <= h for c in x.coords)
    assert x.norm_sq == sum(c * c for c in x.coords)
    assert x.norm_sq <= params.n * h * h
    assert (x.norm_sq == 0) == all(c % p == 0 for c in cs)
    for g in group_elements(params.q):
        assert act(g, x).norm_sq == x.norm_sq
