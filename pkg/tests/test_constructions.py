import math

import pytest

from hyperturan.constructions import (
    graph_extremal,
    linear_extremal,
    loose_extremal,
    matching_candidates,
    star_cover,
)
from hyperturan.errors import InfeasibleConstructionError
from hyperturan.formulas import (
    ex_graph_path_forest,
    ex_linear_forest,
    ex_loose_forest,
    ex_matching_conjecture,
    star_size,
)
from hyperturan.hypercore import edge_mask
from hyperturan.patterns import ForestSpec, contains_forest


def test_star_cover():
    assert star_cover(7, 3, 1).m == 15
    assert star_cover(12, 3, 3).m == 136 == ex_loose_forest(12, 3, [3, 3]).value
    assert star_cover(6, 3, 6).m == math.comb(6, 3)
    assert star_cover(6, 3, 0).m == 0


def test_loose_examples():
    assert loose_extremal(10, 3, [4]).m == 37
    h = loose_extremal(12, 3, [3, 3])
    assert h.m == 136 and h == star_cover(12, 3, 3)
    h = loose_extremal(12, 3, [2, 2])
    assert h.m == 56 and edge_mask((2, 3, 4)) in h.edge_set
    with pytest.raises(InfeasibleConstructionError):
        loose_extremal(4, 3, [3, 3])


def test_linear_examples():
    assert linear_extremal(15, 3, [4]).m == 103
    assert linear_extremal(20, 3, [4, 4]).m == 475
    assert linear_extremal(10, 3, [3]).m == 36


def test_matching_examples():
    c = matching_candidates(5, 3, 1)
    assert (c.clique.m, c.star.m) == (10, 6)
    c = matching_candidates(7, 3, 1)
    assert (c.clique.m, c.star.m) == (10, 15)
    c = matching_candidates(7, 3, 0)
    assert (c.clique.m, c.star.m) == (0, 0)
    c = matching_candidates(4, 3, 1)
    assert c.clique_truncated and c.clique.m == 4


@pytest.mark.parametrize("r", [3, 4])
@pytest.mark.parametrize("lengths", [[1], [3], [4], [5], [1, 1], [3, 3], [4, 4], [3, 4], [1, 3, 4]])
def test_count_agreement_and_freeness(r, lengths):
    t = star_size(lengths)
    for n in range(t + r, t + r + 6):
        lo = loose_extremal(n, r, lengths)
        li = linear_extremal(n, r, lengths)
        assert lo.m == ex_loose_forest(n, r, lengths).value
        assert li.m == ex_linear_forest(n, r, lengths).value
        assert contains_forest(lo, ForestSpec.of("loose", lengths)) is None
        assert contains_forest(li, ForestSpec.of("linear", lengths)) is None


def test_saturation_probe():
    # diagnostic only: most non-edges of an extremal graph create the pattern
    h = loose_extremal(9, 3, [3])
    spec = ForestSpec.of("loose", [3])
    extra = h.complement_candidates()
    hits = sum(contains_forest(h.add_edge(e), spec) is not None for e in extra)
    assert 0 < hits <= len(extra)


@pytest.mark.parametrize("n, r, s", [(5, 3, 1), (7, 3, 1), (9, 3, 2), (8, 4, 1), (6, 2, 2)])
def test_matching_candidates_are_free(n, r, s):
    c = matching_candidates(n, r, s)
    spec = ForestSpec.matching(s + 1)
    assert contains_forest(c.clique, spec) is None
    assert contains_forest(c.star, spec) is None
    assert c.best.m == ex_matching_conjecture(n, r, s).value


@pytest.mark.parametrize("lengths, n_values", [([3], range(3, 12)), ([3, 3], range(4, 12)), ([4, 4], range(5, 12)), ([5, 5], range(6, 12))])
def test_graph_extremal(lengths, n_values):
    spec = ForestSpec.of("loose", [ell - 1 for ell in lengths])
    for n in n_values:
        h = graph_extremal(n, lengths)
        assert h.m == ex_graph_path_forest(n, lengths).value
        assert contains_forest(h, spec) is None
