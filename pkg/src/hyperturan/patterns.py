"""Forbidden configurations: paths, linear cycles, matchings and forests of them.

The public entry points decide containment and return a :class:`Witness`
(an explicit embedding) or ``None``.  Every witness returned by a search is
replayed against the hypergraph before it leaves this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import SpecError
from .hypercore import EdgeMask, Hypergraph, edge_mask, intersection_size, mask_vertices

KINDS = ("loose", "linear", "berge", "linear-cycle")


@dataclass(frozen=True, order=True)
class PathSpec:
    kind: str
    length: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"unknown pattern kind {self.kind!r}; expected one of {KINDS}")
        if self.length < 1:
            raise SpecError(f"length must be >= 1, got {self.length}")
        if self.kind == "linear-cycle" and self.length < 3:
            raise SpecError("a linear cycle needs at least 3 edges")

    def __str__(self) -> str:
        return f"{self.kind}:{self.length}"


@dataclass(frozen=True)
class ForestSpec:
    """Vertex-disjoint union of the listed parts."""

    parts: tuple[PathSpec, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise SpecError("a forest needs at least one part")
        for p in parts:
            if not isinstance(p, PathSpec):
                raise SpecError(f"forest parts must be PathSpec, got {p!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, kind: str, lengths: Iterable[int]) -> ForestSpec:
        return cls(tuple(PathSpec(kind, ell) for ell in lengths))

    @classmethod
    def matching(cls, size: int) -> ForestSpec:
        """``size`` pairwise disjoint edges."""
        if size < 1:
            raise SpecError("a matching needs at least one edge")
        return cls.of("linear", [1] * size)

    @property
    def total_edges(self) -> int:
        return sum(p.length for p in self.parts)

    def __str__(self) -> str:
        return "+".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class WitnessPart:
    spec: PathSpec
    edges: tuple[EdgeMask, ...]
    vertices: tuple[int, ...] | None = None  # Berge vertex sequence

    @property
    def vertex_mask(self) -> int:
        out = 0
        for e in self.edges:
            out |= e
        return out


@dataclass(frozen=True)
class Witness:
    parts: tuple[WitnessPart, ...]

    @property
    def edges(self) -> tuple[EdgeMask, ...]:
        return tuple(e for p in self.parts for e in p.edges)

    def to_dict(self) -> dict:
        out = []
        for i, p in enumerate(self.parts):
            item = {
                "part": i,
                "kind": p.spec.kind,
                "length": p.spec.length,
                "edges": [mask_vertices(e) for e in p.edges],
            }
            if p.vertices is not None:
                item["vertices"] = list(p.vertices)
            out.append(item)
        return {"parts": out}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> Witness:
        parts = []
        for item in data["parts"]:
            verts = item.get("vertices")
            parts.append(
                WitnessPart(
                    PathSpec(item["kind"], item["length"]),
                    tuple(edge_mask(e) for e in item["edges"]),
                    tuple(verts) if verts is not None else None,
                )
            )
        return cls(tuple(parts))


def is_occurrence(spec: PathSpec, edges: Sequence[EdgeMask], vertices: Sequence[int] | None = None) -> bool:
    """Check an ordered edge tuple against the definition of ``spec``.

    This is a direct transcription of the intersection pattern and is shared
    by witness replay and the naive reference enumerator.
    """
    ell = spec.length
    if len(edges) != ell or len(set(edges)) != ell:
        return False
    if spec.kind == "loose":
        return all(
            (intersection_size(edges[i], edges[j]) > 0) == (j - i == 1)
            for i in range(ell)
            for j in range(i + 1, ell)
        )
    if spec.kind == "linear":
        return all(
            intersection_size(edges[i], edges[j]) == (1 if j - i == 1 else 0)
            for i in range(ell)
            for j in range(i + 1, ell)
        )
    if spec.kind == "linear-cycle":
        for i in range(ell):
            for j in range(i + 1, ell):
                cyclic_adjacent = j - i == 1 or (i == 0 and j == ell - 1)
                if intersection_size(edges[i], edges[j]) != (1 if cyclic_adjacent else 0):
                    return False
        # the ell shared vertices must be distinct (only binding for ell = 3)
        common = edges[0]
        for e in edges[1:]:
            common &= e
        return common == 0
    # berge
    if vertices is None or len(vertices) != ell + 1 or len(set(vertices)) != ell + 1:
        return False
    for i, e in enumerate(edges):
        a, b = vertices[i], vertices[i + 1]
        if a < 1 or b < 1 or not (e >> (a - 1)) & 1 or not (e >> (b - 1)) & 1:
            return False
    return True


def replay(h: Hypergraph, spec: ForestSpec, witness: Witness) -> bool:
    """True iff ``witness`` is a valid embedding of ``spec`` in ``h``."""
    if len(witness.parts) != len(spec.parts):
        return False
    if sorted(p.spec for p in witness.parts) != sorted(spec.parts):
        return False
    seen = 0
    for part in witness.parts:
        if any(e not in h.edge_set for e in part.edges):
            return False
        if not is_occurrence(part.spec, part.edges, part.vertices):
            return False
        vm = part.vertex_mask
        if vm & seen:
            return False
        seen |= vm
    return True


def _as_forest(spec) -> ForestSpec:
    if isinstance(spec, ForestSpec):
        return spec
    if isinstance(spec, PathSpec):
        return ForestSpec((spec,))
    raise SpecError(f"expected PathSpec or ForestSpec, got {spec!r}")


def contains_forest(h: Hypergraph, spec: ForestSpec | PathSpec) -> Witness | None:
    """Witness of vertex-disjoint embeddings of every part, or ``None``."""
    from ._search import search_forest

    spec = _as_forest(spec)
    witness = search_forest(h, spec)
    if witness is not None and not replay(h, spec, witness):
        raise AssertionError(f"embedder produced an invalid witness for {spec}")
    return witness


def contains_path(h: Hypergraph, spec: PathSpec) -> Witness | None:
    return contains_forest(h, ForestSpec((spec,)))


def contains_forest_using(h: Hypergraph, spec: ForestSpec | PathSpec, edge: EdgeMask) -> Witness | None:
    """Like :func:`contains_forest` but only embeddings that use ``edge``.

    If ``h`` minus ``edge`` is known to be free, this decides containment of
    ``h`` itself while searching a much smaller space.
    """
    from ._search import search_forest

    spec = _as_forest(spec)
    if edge not in h.edge_set:
        raise KeyError(f"edge {mask_vertices(edge)} not in hypergraph")
    witness = search_forest(h, spec, seed=edge)
    if witness is not None:
        if not replay(h, spec, witness) or edge not in witness.edges:
            raise AssertionError(f"seeded embedder produced an invalid witness for {spec}")
    return witness


def find_one_intersecting_pair_avoiding(h: Hypergraph, avoid: Iterable[int]) -> tuple[EdgeMask, EdgeMask] | None:
    """First pair (canonical edge order) meeting in one vertex and missing ``avoid``."""
    avoid_mask = edge_mask(avoid)
    usable = [e for e in h.edges if e & avoid_mask == 0]
    for i, e in enumerate(usable):
        for f in usable[i + 1 :]:
            if (e & f).bit_count() == 1:
                return e, f
    return None


def has_singleton_intersection(h: Hypergraph) -> bool:
    edges = h.edges
    for i, e in enumerate(edges):
        for f in edges[i + 1 :]:
            if (e & f).bit_count() == 1:
                return True
    return False
