import math
import random

import pytest

from hyperturan.errors import OutOfScopeError
from hyperturan.formulas import (
    BELOW_SCALE,
    LOOSE_TWO_WARNING,
    binom,
    ex_graph_path_forest,
    ex_linear_cycle,
    ex_linear_forest,
    ex_loose_forest,
    ex_matching_conjecture,
    star_sum,
)


def _pascal(n, k):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row[k]


def test_binom():
    assert binom(5, 2) == 10
    assert binom(4, 0) == 1
    assert binom(30, 15) == 155117520 == _pascal(30, 15)
    assert binom(3, 5) == 0 and binom(3, -1) == 0 and binom(-2, 1) == 0


def test_loose_values():
    res = ex_loose_forest(12, 3, [3, 3])
    assert (res.t, res.value, res.correction) == (3, 136, 0)
    assert ex_loose_forest(10, 3, [1]).value == 0
    res = ex_loose_forest(10, 3, [4])
    assert (res.t, res.correction, res.value) == (1, 1, 37)


def test_linear_values():
    res = ex_linear_forest(20, 3, [4, 4])
    assert (res.t, res.correction, res.value) == (3, 15, 475)
    assert ex_linear_forest(15, 3, [4]).value == 103
    res = ex_linear_forest(10, 4, [3, 3])
    assert (res.t, res.correction, res.value) == (3, 0, 175)


def test_matching_values():
    assert ex_matching_conjecture(5, 3, 1).value == 10
    assert ex_matching_conjecture(6, 3, 1).value == 10
    assert ex_matching_conjecture(7, 3, 1).value == 15 == math.comb(6, 2)
    # clique candidate cut down to [n] when it does not fit
    res = ex_matching_conjecture(4, 3, 1)
    assert res.value == 4 and "truncated" in res.validity


def test_graph_values():
    assert ex_graph_path_forest(8, [3]).value == 4
    assert ex_graph_path_forest(14, [3, 3]).value == 19
    res = ex_graph_path_forest(20, [5, 5])
    assert (res.t, res.value) == (3, 55)
    assert "n >= 14" in ex_graph_path_forest(14, [3, 3]).validity
    with pytest.raises(OutOfScopeError):
        ex_graph_path_forest(10, [4])
    with pytest.raises(OutOfScopeError):
        ex_graph_path_forest(10, [3, 4])


def test_linear_cycle_values():
    assert ex_linear_cycle(15, 4, 5).value == 650 == ex_linear_forest(15, 4, [5]).value
    with pytest.raises(OutOfScopeError, match=r"\(3, 4\)"):
        ex_linear_cycle(20, 3, 4)
    with pytest.raises(OutOfScopeError):
        ex_linear_cycle(20, 3, 3)


def test_scope_errors():
    with pytest.raises(OutOfScopeError):
        ex_loose_forest(10, 2, [3])
    with pytest.raises(OutOfScopeError):
        ex_linear_forest(10, 3, [0])


def test_anomaly_warning_and_below_scale():
    res = ex_loose_forest(9, 3, [2])
    assert res.value == 1 and LOOSE_TWO_WARNING in res.warnings
    assert ex_loose_forest(9, 3, [3]).warnings == ()
    assert ex_loose_forest(4, 3, [3, 3]).validity == BELOW_SCALE


def test_hockey_stick():
    rng = random.Random(1)
    for _ in range(1500):
        n = rng.randint(0, 80)
        r = rng.randint(1, 12)
        t = rng.randint(0, n)
        assert star_sum(n, r, t) == math.comb(n, r) - math.comb(n - t, r)


def test_difference_term():
    rng = random.Random(2)
    for _ in range(1500):
        r = rng.randint(3, 8)
        lengths = [rng.randint(1, 9) for _ in range(rng.randint(1, 4))]
        n = rng.randint(0, 90)
        loose = ex_loose_forest(n, r, lengths)
        linear = ex_linear_forest(n, r, lengths)
        diff = linear.value - loose.value
        if all(ell % 2 == 0 for ell in lengths):
            assert diff == binom(n - loose.t - 2, r - 2) - 1
        else:
            assert diff == 0


def test_permutation_invariance_and_monotone():
    rng = random.Random(3)
    for _ in range(300):
        r = rng.randint(3, 7)
        lengths = [rng.randint(1, 9) for _ in range(rng.randint(1, 5))]
        shuffled = lengths[:]
        rng.shuffle(shuffled)
        n = rng.randint(0, 70)
        for f in (ex_loose_forest, ex_linear_forest):
            assert f(n, r, lengths) == f(n, r, shuffled)
            assert f(n + 1, r, lengths).value >= f(n, r, lengths).value


def test_single_path_case():
    # k = 1: t = floor((l+1)/2) - 1 and the star sum over that many vertices
    for ell in range(1, 10):
        for n in range(10, 30, 7):
            t = (ell + 1) // 2 - 1
            even = ell % 2 == 0
            assert ex_loose_forest(n, 3, [ell]).value == star_sum(n, 3, t) + int(even)
            assert ex_linear_forest(n, 3, [ell]).value == star_sum(n, 3, t) + (binom(n - t - 2, 1) if even else 0)
