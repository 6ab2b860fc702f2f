"""Explicit extremal hypergraphs.

Fixed vertex sets are always the lowest-numbered vertices: the star centre is
``S = {1..t}``, the extra pair is ``{t+1, t+2}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import InfeasibleConstructionError, OutOfScopeError
from .formulas import star_size
from .hypercore import Hypergraph, all_r_subsets, edge_mask


def star_cover(n: int, r: int, t: int) -> Hypergraph:
    """All r-subsets of [n] meeting ``{1..t}``."""
    if not 0 <= t <= n:
        raise InfeasibleConstructionError(f"star size t={t} outside 0..{n}")
    centre = (1 << t) - 1
    return Hypergraph(n, r, tuple(e for e in all_r_subsets(n, r) if e & centre))


def _require(n: int, need: int, what: str):
    if n < need:
        raise InfeasibleConstructionError(f"{what} needs n >= {need}, got n={n}")


def loose_extremal(n: int, r: int, lengths: Sequence[int]) -> Hypergraph:
    t = star_size(lengths)
    _require(n, t + r, "loose construction")
    h = star_cover(n, r, t)
    if all(ell % 2 == 0 for ell in lengths):
        h = h.add_edge(edge_mask(range(t + 1, t + r + 1)))
    return h


def linear_extremal(n: int, r: int, lengths: Sequence[int]) -> Hypergraph:
    t = star_size(lengths)
    _require(n, t + r, "linear construction")
    h = star_cover(n, r, t)
    if all(ell % 2 == 0 for ell in lengths):
        pair = (t + 1, t + 2)
        extra = tuple(
            edge_mask(pair + rest) for rest in itertools.combinations(range(t + 3, n + 1), r - 2)
        )
        h = Hypergraph(n, r, h.edges + extra)
    return h


@dataclass(frozen=True)
class MatchingCandidates:
    clique: Hypergraph
    star: Hypergraph
    clique_truncated: bool

    @property
    def best(self) -> Hypergraph:
        return self.clique if self.clique.m >= self.star.m else self.star


def matching_candidates(n: int, r: int, s: int) -> MatchingCandidates:
    """Both classical hypergraphs without s+1 pairwise disjoint edges.

    The clique lives on ``{1..r(s+1)-1}``; if that exceeds ``n`` it is cut
    down to the complete r-graph on [n] and flagged as truncated.
    """
    if s < 0 or s > n:
        raise InfeasibleConstructionError(f"matching parameter s={s} outside 0..{n}")
    order = r * (s + 1) - 1
    truncated = order > n
    clique = Hypergraph(n, r, tuple(all_r_subsets(min(order, n), r)))
    return MatchingCandidates(clique, star_cover(n, r, s), truncated)


def graph_extremal(n: int, lengths: Sequence[int]) -> Hypergraph:
    """Graphs without k disjoint paths on ``ell`` vertices (r = 2).

    ell = 3: a (k-1)-vertex star cover plus a maximum matching on the rest.
    ell >= 4, k >= 2: a star cover on k*floor(ell/2)-1 vertices, plus one
    edge outside it when ell is odd.
    """
    lengths = list(lengths)
    k = len(lengths)
    if k == 0 or len(set(lengths)) != 1:
        raise OutOfScopeError(f"graph path forests need k >= 1 equal lengths, got {lengths}")
    ell = lengths[0]
    if ell == 3:
        t = k - 1
        _require(n, t, "graph construction")
        h = star_cover(n, 2, t)
        extra = tuple(edge_mask((v, v + 1)) for v in range(t + 1, n, 2))
        return Hypergraph(n, 2, h.edges + extra)
    if ell >= 4 and k >= 2:
        t = k * (ell // 2) - 1
        _require(n, t + 2, "graph construction")
        h = star_cover(n, 2, t)
        if ell % 2:
            h = h.add_edge(edge_mask((t + 1, t + 2)))
        return h
    raise OutOfScopeError(f"no construction for k={k} paths on {ell} vertices")
