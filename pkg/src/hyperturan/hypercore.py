"""Immutable r-uniform hypergraphs on the vertex set ``{1, ..., n}``.

Edges are stored as integer bitmasks: vertex ``v`` occupies bit ``v - 1``.
The edge tuple is kept sorted by mask value, so two hypergraphs with the same
edge set compare (and hash) equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator

from .errors import (
    DuplicateEdgeError,
    HypergraphParseError,
    UniformityError,
    VertexRangeError,
)

MAX_VERTICES = 128

EdgeMask = int


def edge_mask(vertices: Iterable[int]) -> EdgeMask:
    """Bitmask of a collection of 1-based vertices."""
    mask = 0
    for v in vertices:
        if v < 1:
            raise VertexRangeError(f"vertex {v} is not positive")
        mask |= 1 << (v - 1)
    return mask


def mask_vertices(mask: EdgeMask) -> list[int]:
    """Sorted 1-based vertices of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out


def intersection_size(a: EdgeMask, b: EdgeMask) -> int:
    return (a & b).bit_count()


def all_r_subsets(n: int, r: int) -> list[EdgeMask]:
    """Every r-subset of [n] in canonical (ascending mask) order."""
    masks = [edge_mask(c) for c in itertools.combinations(range(1, n + 1), r)]
    masks.sort()
    return masks


@dataclass(frozen=True)
class Hypergraph:
    n: int
    r: int
    edges: tuple[EdgeMask, ...] = ()

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise VertexRangeError(f"n={self.n} outside 0..{MAX_VERTICES}")
        if self.r < 1:
            raise UniformityError(f"uniformity r={self.r} must be positive")
        full = (1 << self.n) - 1
        seen = set()
        for e in self.edges:
            if e.bit_count() != self.r:
                raise UniformityError(
                    f"edge {mask_vertices(e)} has {e.bit_count()} vertices, expected {self.r}"
                )
            if e & ~full:
                raise VertexRangeError(f"edge {mask_vertices(e)} exceeds n={self.n}")
            if e in seen:
                raise DuplicateEdgeError(f"duplicate edge {mask_vertices(e)}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
        return cls(n, r, tuple(edge_mask(e) for e in edges))

    @classmethod
    def complete(cls, n: int, r: int) -> Hypergraph:
        return cls(n, r, tuple(all_r_subsets(n, r)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[EdgeMask]:
        return frozenset(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[EdgeMask, ...], ...]:
        """``incidence[v]`` lists the edges through vertex ``v`` (index 0 unused)."""
        inc: list[list[EdgeMask]] = [[] for _ in range(self.n + 1)]
        for e in self.edges:
            for v in mask_vertices(e):
                inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def __contains__(self, edge) -> bool:
        if not isinstance(edge, int):
            edge = edge_mask(edge)
        return edge in self.edge_set

    def __iter__(self) -> Iterator[EdgeMask]:
        return iter(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def edge_lists(self) -> list[list[int]]:
        return [mask_vertices(e) for e in self.edges]

    def _coerce(self, edge) -> EdgeMask:
        mask = edge if isinstance(edge, int) else edge_mask(edge)
        if mask.bit_count() != self.r:
            raise UniformityError(
                f"edge {mask_vertices(mask)} has {mask.bit_count()} vertices, expected {self.r}"
            )
        if mask & ~self.vertex_mask:
            raise VertexRangeError(f"edge {mask_vertices(mask)} exceeds n={self.n}")
        return mask

    def add_edge(self, edge) -> Hypergraph:
        mask = self._coerce(edge)
        if mask in self.edge_set:
            raise DuplicateEdgeError(f"edge {mask_vertices(mask)} already present")
        return Hypergraph(self.n, self.r, self.edges + (mask,))

    def remove_edge(self, edge) -> Hypergraph:
        mask = self._coerce(edge)
        if mask not in self.edge_set:
            raise KeyError(f"edge {mask_vertices(mask)} not present")
        return Hypergraph(self.n, self.r, tuple(e for e in self.edges if e != mask))

    def degree(self, v: int) -> int:
        if not 1 <= v <= self.n:
            raise VertexRangeError(f"vertex {v} outside 1..{self.n}")
        return len(self.incidence[v])

    def complement_candidates(self) -> list[EdgeMask]:
        """All r-subsets of [n] that are not edges, in canonical order."""
        present = self.edge_set
        return [e for e in all_r_subsets(self.n, self.r) if e not in present]

    def induced_sub(self, keep: Iterable[int]) -> Hypergraph:
        """Restriction to ``keep``, relabelled ``1..|keep|`` preserving order."""
        kept = sorted(set(keep))
        for v in kept:
            if not 1 <= v <= self.n:
                raise VertexRangeError(f"vertex {v} outside 1..{self.n}")
        keep_mask = edge_mask(kept)
        relabel = {v: i for i, v in enumerate(kept, start=1)}
        edges = tuple(
            edge_mask(relabel[v] for v in mask_vertices(e))
            for e in self.edges
            if e & ~keep_mask == 0
        )
        return Hypergraph(len(kept), self.r, edges)

    # -- .hg text format -------------------------------------------------

    def to_hg(self, comments: Iterable[str] = ()) -> str:
        lines = [f"# {c}" for c in comments]
        lines.append(f"{self.r} {self.n} {self.m}")
        lines.extend(" ".join(map(str, vs)) for vs in self.edge_lists())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_hg(cls, text: str) -> Hypergraph:
        return parse_hg(text)


def _ints(line: str, lineno: int) -> list[int]:
    parts = line.split(" ")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise HypergraphParseError(f"expected single-space separated integers, got {line!r}", lineno)


def parse_hg(text: str) -> Hypergraph:
    """Strict parser for the ``.hg`` format.

    First non-comment line is ``r n m``; then exactly ``m`` edge lines with
    ``r`` strictly increasing vertices each. ``#`` lines are comments.
    """
    header = None
    r = n = m = 0
    edges: list[EdgeMask] = []
    seen: set[EdgeMask] = set()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r")
        if line.startswith("#"):
            continue
        if line.strip() == "":
            raise HypergraphParseError("blank line", lineno)
        nums = _ints(line, lineno)
        if header is None:
            if len(nums) != 3:
                raise HypergraphParseError("header must be 'r n m'", lineno)
            r, n, m = nums
            if r < 1 or n < 0 or m < 0:
                raise HypergraphParseError("header values out of range", lineno)
            if n > MAX_VERTICES:
                raise HypergraphParseError(f"n={n} exceeds {MAX_VERTICES}", lineno)
            header = lineno
            continue
        if len(edges) >= m:
            raise HypergraphParseError(f"more than m={m} edge lines", lineno)
        if len(nums) != r:
            raise HypergraphParseError(f"edge has {len(nums)} vertices, expected {r}", lineno)
        if any(b <= a for a, b in zip(nums, nums[1:])):
            raise HypergraphParseError("vertices must be strictly increasing", lineno)
        if nums[0] < 1 or nums[-1] > n:
            raise HypergraphParseError(f"vertex out of range 1..{n}", lineno)
        mask = edge_mask(nums)
        if mask in seen:
            raise HypergraphParseError(f"duplicate edge {nums}", lineno)
        seen.add(mask)
        edges.append(mask)
    if header is None:
        raise HypergraphParseError("missing 'r n m' header", len(lines) or 1)
    if len(edges) != m:
        raise HypergraphParseError(f"expected {m} edges, found {len(edges)}", len(lines))
    return Hypergraph(n, r, tuple(edges))


def read_hg(path: str | Path) -> Hypergraph:
    return parse_hg(Path(path).read_text(encoding="utf-8"))


def write_hg(path: str | Path, h: Hypergraph, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(h.to_hg(comments), encoding="utf-8", newline="\n")
