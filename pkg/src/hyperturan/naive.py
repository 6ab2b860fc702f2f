"""Brute-force reference enumerator for pattern occurrences.

Deliberately simple: ordered tuples of distinct edges are enumerated with
``itertools.permutations`` and each is tested with :func:`is_occurrence`.
It shares no search code with the backtracking embedder, so agreement
between the two is meaningful.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from .hypercore import EdgeMask, Hypergraph, all_r_subsets, mask_vertices
from .patterns import ForestSpec, PathSpec, is_occurrence


def path_occurrences(edges: Sequence[EdgeMask], spec: PathSpec) -> Iterator[tuple[tuple[EdgeMask, ...], tuple[int, ...] | None]]:
    for combo in itertools.permutations(edges, spec.length):
        if spec.kind != "berge":
            if is_occurrence(spec, combo):
                yield combo, None
            continue
        ell = spec.length
        slots = []
        for i in range(ell + 1):
            allowed = combo[i - 1] if i > 0 else -1
            if i < ell:
                allowed &= combo[i]
            slots.append(mask_vertices(allowed))
        for verts in itertools.product(*slots):
            if is_occurrence(spec, combo, verts):
                yield combo, verts


def _part_footprints(edges: Sequence[EdgeMask], spec: PathSpec) -> dict[frozenset, int]:
    """Distinct edge sets of occurrences, mapped to their vertex masks."""
    out = {}
    for combo, _ in path_occurrences(edges, spec):
        key = frozenset(combo)
        if key not in out:
            vm = 0
            for e in combo:
                vm |= e
            out[key] = vm
    return out


def naive_contains_path(h: Hypergraph, spec: PathSpec) -> bool:
    return next(path_occurrences(h.edges, spec), None) is not None


def naive_contains_forest(h: Hypergraph, spec: ForestSpec) -> bool:
    masks = [sorted(set(_part_footprints(h.edges, p).values())) for p in spec.parts]

    def pick(i: int, used: int) -> bool:
        if i == len(masks):
            return True
        return any(vm & used == 0 and pick(i + 1, used | vm) for vm in masks[i])

    return pick(0, 0)


def occurrence_edge_sets(edges: Sequence[EdgeMask], spec: ForestSpec) -> set[frozenset[EdgeMask]]:
    """Edge sets of every occurrence of ``spec`` among ``edges``."""
    per_part = [list(_part_footprints(edges, p).items()) for p in spec.parts]
    out: set[frozenset[EdgeMask]] = set()

    def combine(i: int, used: int, acc: frozenset):
        if i == len(per_part):
            out.add(acc)
            return
        for part_edges, vm in per_part[i]:
            if vm & used == 0:
                combine(i + 1, used | vm, acc | part_edges)

    combine(0, 0, frozenset())
    return out


def forbidden_edge_sets(n: int, r: int, spec: ForestSpec) -> set[frozenset[EdgeMask]]:
    """Edge sets of every occurrence of ``spec`` inside the complete r-graph on [n].

    A hypergraph on [n] is ``spec``-free exactly when it contains none of
    these sets.
    """
    return occurrence_edge_sets(all_r_subsets(n, r), spec)
