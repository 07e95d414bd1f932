import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from circulattice.dcode import (DoubleCirculantCode, batch_min_norm_sq, codewords, contains,
                                membership_probability, min_norm, min_norm_sq, random_code,
                                random_first_rows, syndrome, words_for)
from circulattice.errors import BudgetExceeded
from circulattice.group import act, group_elements
from circulattice.modp import FpVector, Params


def test_circulant_layout(p35):
    code = DoubleCirculantCode(p35, (1, 2, 3))
    assert code.a == (1, 2, -2)
    assert code.circulant().tolist() == [[1, 2, -2], [-2, 1, 2], [2, -2, 1]]
    assert code.column_poly().coeffs == (1, -2, 2)


def test_syndrome_example(p35):
    code = DoubleCirculantCode(p35, (1, 2, 3))
    x = FpVector.from_halves(p35, (0, 0, 0), (1, 0, 0))
    s = syndrome(code, x)
    assert s.right.coeffs == (1, -2, 2)
    assert s.total == s.right


def test_syndrome_routes_agree_exhaustively():
    params = Params(3, 5)
    rng = np.random.default_rng(1)
    for a in itertools.product(range(-2, 3), repeat=3):
        code = DoubleCirculantCode(params, a)
        x = FpVector(params, tuple(int(v) for v in rng.integers(-2, 3, size=6)))
        s = syndrome(code, x)
        assert (s.left + s.right) == s.total


def _brute_min(code):
    params = code.params
    h = params.half
    best = None
    for xr in itertools.product(range(-h, h + 1), repeat=params.q):
        if not any(xr):
            continue
        xl = [-sum(xr[j] * code.a[(j - i) % params.q] for j in range(params.q)) for i in range(params.q)]
        x = FpVector.from_halves(params, xl, xr)
        if best is None or x.norm_sq < best:
            best = x.norm_sq
    return best


def test_min_norm_examples(p35):
    m = min_norm(DoubleCirculantCode(p35, (1, 1, 1)))
    assert m.d2 == 2 and m.witness.coords == (0, 0, 0, -1, 0, 1)
    assert min_norm_sq(DoubleCirculantCode(p35, (0, 0, 0))) == 1


# frozen: brute force over all 125 codes, nonzero x_R only
HIST_35 = {1: 1, 2: 10, 3: 36, 4: 18, 5: 12, 6: 48}


def test_batch_min_norm_q3_p5(p35):
    rows = np.array(list(itertools.product(range(-2, 3), repeat=3)))
    d2, visited = batch_min_norm_sq(p35, rows, budget=None)
    values, counts = np.unique(d2, return_counts=True)
    assert dict(zip(values.tolist(), counts.tolist())) == HIST_35
    assert visited < 125 * 125


@pytest.mark.parametrize("q,p", [(3, 7), (3, 11), (5, 3), (5, 7)])
def test_reduced_scan_matches_full_scan(q, p):
    params = Params(q, p)
    rng = np.random.default_rng(q * p)
    for a in rng.integers(-(p // 2), p // 2 + 1, size=(15, q)):
        code = DoubleCirculantCode(params, tuple(int(v) for v in a))
        fast, full = min_norm(code), min_norm(code, reduce=False)
        assert fast.d2 == full.d2 == _brute_min(code)
        assert fast.witness in code and fast.witness.norm_sq == fast.d2


def test_codewords_closed_under_group(p35):
    code = DoubleCirculantCode(p35, (2, 0, 1))
    words = set(w.coords for w in codewords(code))
    assert len(words) == 125
    for w in list(words)[:40]:
        for g in group_elements(3):
            assert act(g, FpVector(p35, w)).coords in words


def test_budget(p35):
    code = DoubleCirculantCode(Params(5, 11), (1, 2, 3, 4, 5))
    with pytest.raises(BudgetExceeded):
        list(codewords(code, budget=100))
    with pytest.raises(BudgetExceeded) as exc:
        batch_min_norm_sq(code.params, [code.a], budget=10)
    assert exc.value.partial is not None


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5),
       st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_codeword_construction(a, xr):
    params = Params(5, 7)
    code = DoubleCirculantCode(params, a)
    w = FpVector(params, tuple(int(v) for v in words_for(code, [xr])[0]))
    assert contains(code, w)
    for g in group_elements(5):
        assert contains(code, act(g, w))


def test_membership_probability_matches_frequency(p35):
    rows = list(itertools.product(range(-2, 3), repeat=3))
    samples = [(1, 1, 1, 2, 2, 2), (1, 0, 0, 1, 0, 0), (1, -1, 0, 0, 1, -1), (1, 2, 0, 1, 1, 1),
               (0, 0, 0, 0, 0, 0), (2, 1, 0, 0, 0, 0)]
    for cs in samples:
        x = FpVector(p35, cs)
        freq = Fraction(sum(contains(DoubleCirculantCode(p35, a), x) for a in rows), 125)
        assert freq == membership_probability(x)


def test_random_rows_uniform():
    params = Params(3, 11)
    rows = random_first_rows(params, 20000, seed=7)
    counts = np.bincount((rows + 5).ravel(), minlength=11)
    assert stats.chisquare(counts).pvalue > 1e-4
    assert np.array_equal(rows, random_first_rows(params, 20000, seed=7))
    assert random_code(params, 3) == random_code(params, 3)
