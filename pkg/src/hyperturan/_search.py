"""Backtracking embedder behind :mod:`hyperturan.patterns`.

Two devices keep the search small on dense, highly symmetric inputs such as
the star-cover constructions:

* Twin symmetry breaking.  Vertices ``u, v`` are twins when swapping them maps
  the edge set onto itself; twin classes are equivalence classes whose full
  symmetric group acts by automorphisms.  When a new edge brings in vertices
  not yet touched by the partial embedding, only the lowest untouched members
  of each class are tried.  Any embedding can be moved onto such a canonical
  one by an automorphism fixing everything chosen so far, so nothing is lost.

* A transversal capacity bound for loose/linear/cycle parts.  In such a forest
  every vertex lies in at most two edges, and two edges sharing a vertex are
  consecutive in one part.  Greedily pick a transversal ``T`` of the edges
  still usable; each remaining pattern edge is charged to its first vertex in
  ``T``.  A vertex can absorb at most two charges, or one when it is an open
  path end or when its charged edges cannot pair up legally.  If the
  remaining segments cannot be covered by those capacities the branch is dead.
"""

from __future__ import annotations

from .hypercore import EdgeMask, Hypergraph, mask_vertices
from .patterns import ForestSpec, PathSpec, Witness, WitnessPart

# in-path bound evaluation costs O(m) per node; only worth it on small inputs
DEEP_BOUND_MAX_EDGES = 600


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low)
        mask ^= low
    return out


def twin_classes(h: Hypergraph) -> list[int]:
    """Vertex masks of all twin classes with at least two members."""
    links = [None] * (h.n + 1)
    for v in range(1, h.n + 1):
        b = 1 << (v - 1)
        links[v] = [e ^ b for e in h.incidence[v]]
    reps: list[int] = []
    members: dict[int, int] = {}
    for v in range(1, h.n + 1):
        bv = 1 << (v - 1)
        placed = False
        for w in reps:
            if len(links[w]) != len(links[v]):
                continue
            bw = 1 << (w - 1)
            if {x for x in links[v] if not x & bw} == {y for y in links[w] if not y & bv}:
                members[w] |= bv
                placed = True
                break
        if not placed:
            reps.append(v)
            members[v] = bv
    return [m for m in members.values() if m.bit_count() > 1]


def covering_feasible(segments: list[int], twos: int, ones: int) -> bool:
    """Can ``twos`` weight-2 and ``ones`` weight-1 items cover every segment?

    Items are indivisible and each goes to one segment; a segment of length
    ``s`` needs total weight at least ``s``.
    """
    need2 = sum((s + 1) // 2 for s in segments)
    odd = sum(s & 1 for s in segments)
    used = min(ones, odd)
    need2 -= used + (ones - used) // 2
    return need2 <= twos


class _Embedder:
    def __init__(self, h: Hypergraph, symmetry: bool = True, bound: bool = True):
        self.h = h
        self.r = h.r
        self.full = h.vertex_mask
        self.edges = h.edges
        self.edge_set = h.edge_set
        self.inc = h.incidence
        self.deg = [len(x) for x in self.inc]
        self.bound = bound
        self.deep_bound = bound and len(self.edges) <= DEEP_BOUND_MAX_EDGES
        self.class_of = [0] * (h.n + 1)
        self.twin_union = 0
        if symmetry:
            for c in twin_classes(h):
                self.twin_union |= c
                for v in mask_vertices(c):
                    self.class_of[v] = c
        self._seed_order = None

    # -- symmetry -------------------------------------------------------

    def canonical(self, fresh: int, used: int) -> bool:
        """``fresh`` (disjoint from ``used``) takes class members lowest-first."""
        y = fresh & self.twin_union
        while y:
            c = self.class_of[(y & -y).bit_length()]
            xc = fresh & c
            if c & ~used & ((1 << xc.bit_length()) - 1) != xc:
                return False
            y &= ~c
        return True

    def fresh_groups(self, used: int) -> list[list[int]]:
        """Per twin class (or singleton) the cumulative masks of its free members."""
        free = self.full & ~used
        groups = []
        tw = free & self.twin_union
        while tw:
            c = self.class_of[(tw & -tw).bit_length()]
            prefixes = [0]
            for b in _bits(c & free):
                prefixes.append(prefixes[-1] | b)
            groups.append(prefixes)
            tw &= ~c
        for b in _bits(free & ~self.twin_union):
            groups.append([0, b])
        return groups

    @staticmethod
    def count_selections(groups: list[list[int]], k: int) -> int:
        ways = [1] + [0] * k
        for g in groups:
            cap = len(g) - 1
            new = [0] * (k + 1)
            for j in range(k + 1):
                if ways[j]:
                    for i in range(min(cap, k - j) + 1):
                        new[j + i] += ways[j]
            ways = new
        return ways[k]

    @staticmethod
    def select(groups: list[list[int]], k: int):
        suffix = [0] * (len(groups) + 1)
        for i in range(len(groups) - 1, -1, -1):
            suffix[i] = suffix[i + 1] + len(groups[i]) - 1

        def rec(i: int, k: int, acc: int):
            if k == 0:
                yield acc
                return
            if suffix[i] < k:
                return
            g = groups[i]
            for cnt in range(min(k, len(g) - 1), -1, -1):
                yield from rec(i + 1, k - cnt, acc | g[cnt])

        return rec(0, k, 0)

    # -- capacity bound ------------------------------------------------

    def capacity_ok(self, avail: int, open_: int, segments: list[int], linear: bool) -> bool:
        need = sum(segments)
        if need == 0:
            return True
        es = [e for e in self.edges if not e & ~avail]
        if len(es) < need:
            return False
        twos = ones = 0
        while es:
            counts: dict[int, int] = {}
            for e in es:
                x = e
                while x:
                    low = x & -x
                    counts[low] = counts.get(low, 0) + 1
                    x ^= low
            v = max(counts, key=lambda b: (counts[b], -b))
            charged = [e for e in es if e & v]
            es = [e for e in es if not e & v]
            if v & open_ or len(charged) == 1:
                ones += 1
            elif not linear or self._has_private_pair(charged, v):
                twos += 1
            else:
                ones += 1
        return covering_feasible(segments, twos, ones)

    @staticmethod
    def _has_private_pair(charged: list[int], v: int) -> bool:
        """Two charged edges meeting exactly in ``v``."""
        rest = [e ^ v for e in charged]
        common = rest[0]
        for x in rest[1:]:
            common &= x
            if not common:
                break
        if common:
            return False
        for i, x in enumerate(rest):
            for y in rest[i + 1 :]:
                if not x & y:
                    return True
        return False

    # -- candidate generation -----------------------------------------

    @property
    def seed_order(self) -> list[EdgeMask]:
        if self._seed_order is None:
            self._seed_order = sorted(
                self.edges,
                key=lambda e: (-sum(self.deg[v] for v in mask_vertices(e)), e),
            )
        return self._seed_order

    def first_edges(self, blocked: int):
        groups = self.fresh_groups(blocked)
        if self.count_selections(groups, self.r) < len(self.edges):
            for x in self.select(groups, self.r):
                if x in self.edge_set:
                    yield x
            return
        for e in self.seed_order:
            if not e & blocked and self.canonical(e, blocked):
                yield e

    def next_edges(self, last: int, forbid: int, linear: bool):
        """Edges continuing a loose/linear path whose end is ``last``.

        ``forbid`` holds blocked vertices and all earlier path edges.
        """
        used = forbid | last
        shareable = last & ~forbid
        if not shareable:
            return
        r = self.r
        groups = self.fresh_groups(used)
        if linear:
            shared_options = _bits(shareable)
        else:
            shared_options = []
            sub = shareable
            while sub:
                if sub.bit_count() < r:
                    shared_options.append(sub)
                sub = (sub - 1) & shareable
        counts: dict[int, int] = {}
        cost_b = 0
        for a in shared_options:
            k = r - a.bit_count()
            if k not in counts:
                counts[k] = self.count_selections(groups, k)
            cost_b += counts[k]
        cost_a = sum(self.deg[v] for v in mask_vertices(shareable))
        if cost_b <= cost_a:
            for a in shared_options:
                for x in self.select(groups, r - a.bit_count()):
                    f = a | x
                    if f in self.edge_set:
                        yield f
            return
        for low in _bits(shareable):
            for f in self.inc[low.bit_length()]:
                if f == last or f & forbid:
                    continue
                inter = f & last
                if inter & -inter != low:
                    continue
                if linear and inter != low:
                    continue
                if self.canonical(f & ~used, used):
                    yield f

    # -- loose / linear paths ------------------------------------------

    def grow(self, seq, body, blocked, steps, linear, tail=None, pad=0, anchor=0):
        """Extend ``seq`` on the right by ``steps`` edges.

        ``tail`` lists the lengths of segments still to embed after this one
        (``None`` disables the bound); ``pad`` counts extra edges of the
        current segment placed by the caller afterwards; ``anchor`` is an
        edge whose vertices must stay reachable for those later edges.
        """
        if steps == 0:
            yield seq
            return
        last = seq[-1]
        forbid = blocked | body
        if self.deep_bound and tail is not None and steps + pad + sum(tail) >= 2:
            open_ = (last & ~forbid) | anchor
            avail = (self.full & ~(forbid | last)) | open_
            if not self.capacity_ok(avail, open_, [steps + pad] + tail, linear):
                return
        for f in self.next_edges(last, forbid, linear):
            yield from self.grow(seq + [f], body | last, blocked, steps - 1, linear, tail, pad, anchor)

    def path_parts(self, spec: PathSpec, blocked: int, tail):
        linear = spec.kind == "linear"
        for f in self.first_edges(blocked):
            for seq in self.grow([f], 0, blocked, spec.length - 1, linear, tail):
                yield tuple(seq), None

    def path_parts_seeded(self, spec: PathSpec, seed: int, tail):
        linear = spec.kind == "linear"
        ell = spec.length
        for right in range(ell):
            left = ell - 1 - right
            rtail = None if tail is None else ([left] if left else []) + tail
            for seq in self.grow([seed], 0, 0, right, linear, rtail, anchor=seed if left else 0):
                rev = seq[::-1]
                body = 0
                for e in rev[:-1]:
                    body |= e
                for full in self.grow(rev, body, 0, left, linear, tail):
                    yield tuple(full), None

    # -- linear cycles -------------------------------------------------

    def closing_edges(self, path, blocked):
        first, last = path[0], path[-1]
        middle = 0
        for e in path[1:-1]:
            middle |= e
        forbid = blocked | middle | (path[0] & path[1]) | (path[-1] & path[-2])
        used = blocked
        for e in path:
            used |= e
        for low in _bits(last & ~forbid):
            for f in self.inc[low.bit_length()]:
                if f & forbid or f in path:
                    continue
                if f & last != low or (f & first).bit_count() != 1:
                    continue
                if self.canonical(f & ~used, used):
                    yield f

    def _close(self, start, blocked, ell, tail):
        for seq in self.grow([start], 0, blocked, ell - 2, True, tail, pad=1, anchor=start):
            for f in self.closing_edges(seq, blocked):
                yield tuple(seq) + (f,), None

    def cycle_parts(self, spec: PathSpec, blocked: int, tail):
        for f in self.first_edges(blocked):
            yield from self._close(f, blocked, spec.length, tail)

    def cycle_parts_seeded(self, spec: PathSpec, seed: int, tail):
        yield from self._close(seed, 0, spec.length, tail)

    # -- Berge paths ---------------------------------------------------

    def grow_berge(self, seq, verts, union, blocked, steps):
        if steps == 0:
            yield seq, verts
            return
        v = verts[-1]
        taken = 0
        for u in verts:
            taken |= 1 << (u - 1)
        used = blocked | union | taken
        for f in self.inc[v]:
            if f & blocked or f in seq:
                continue
            fresh = f & ~used
            if not self.canonical(fresh, used):
                continue
            tried_classes = 0
            for w in _bits(f & ~taken):
                if w & fresh and self.class_of[w.bit_length()]:
                    c = self.class_of[w.bit_length()]
                    if c & tried_classes:
                        continue
                    tried_classes |= c
                yield from self.grow_berge(seq + [f], verts + [w.bit_length()], union | f, blocked, steps - 1)

    def berge_parts(self, spec: PathSpec, blocked: int):
        free = self.full & ~blocked
        starts = []
        tw = free & self.twin_union
        while tw:
            c = self.class_of[(tw & -tw).bit_length()]
            fc = c & free
            starts.append(fc & -fc)
            tw &= ~c
        starts.extend(_bits(free & ~self.twin_union))
        for b in sorted(starts):
            for seq, verts in self.grow_berge([], [b.bit_length()], 0, blocked, spec.length):
                yield tuple(seq), tuple(verts)

    def berge_parts_seeded(self, spec: PathSpec, seed: int):
        ell = spec.length
        seed_vs = mask_vertices(seed)
        for right in range(ell):
            left = ell - 1 - right
            for a in seed_vs:
                for b in seed_vs:
                    if a == b:
                        continue
                    for seq, verts in self.grow_berge([seed], [a, b], seed, 0, right):
                        union = 0
                        for e in seq:
                            union |= e
                        for full, fverts in self.grow_berge(seq[::-1], verts[::-1], union, 0, left):
                            yield tuple(full), tuple(fverts)

    # -- dispatch ------------------------------------------------------

    def parts(self, spec: PathSpec, blocked: int, tail):
        if spec.kind == "berge":
            yield from self.berge_parts(spec, blocked)
        elif spec.kind == "linear-cycle":
            yield from self.cycle_parts(spec, blocked, tail)
        else:
            yield from self.path_parts(spec, blocked, tail)

    def parts_seeded(self, spec: PathSpec, seed: int, tail):
        if spec.kind == "berge":
            yield from self.berge_parts_seeded(spec, seed)
        elif spec.kind == "linear-cycle":
            yield from self.cycle_parts_seeded(spec, seed, tail)
        else:
            yield from self.path_parts_seeded(spec, seed, tail)

    @staticmethod
    def _bounded(parts) -> bool:
        return all(p.kind != "berge" for _, p in parts)

    @staticmethod
    def _linear_only(parts) -> bool:
        return all(p.kind in ("linear", "linear-cycle") for _, p in parts)

    def forest(self, parts, blocked: int):
        if not parts:
            return []
        if self.bound and self._bounded(parts):
            segs = [p.length for _, p in parts]
            if not self.capacity_ok(self.full & ~blocked, 0, segs, self._linear_only(parts)):
                return None
        (idx, head), rest = parts[0], parts[1:]
        tail = [p.length for _, p in rest] if self._bounded(parts) else None
        for edges, verts in self.parts(head, blocked, tail):
            vm = 0
            for e in edges:
                vm |= e
            sub = self.forest(rest, blocked | vm)
            if sub is not None:
                return [(idx, WitnessPart(head, edges, verts))] + sub
        return None

    def forest_seeded(self, parts, seed: int):
        tried = set()
        for i, (idx, head) in enumerate(parts):
            if head in tried:
                continue
            tried.add(head)
            rest = parts[:i] + parts[i + 1 :]
            tail = [p.length for _, p in rest] if self._bounded(parts) else None
            for edges, verts in self.parts_seeded(head, seed, tail):
                vm = 0
                for e in edges:
                    vm |= e
                sub = self.forest(rest, vm)
                if sub is not None:
                    return [(idx, WitnessPart(head, edges, verts))] + sub
        return None


def _embedder(h: Hypergraph, symmetry: bool, bound: bool) -> _Embedder:
    key = ("_embedder", symmetry, bound)
    cache = h.__dict__
    emb = cache.get(key)
    if emb is None:
        emb = _Embedder(h, symmetry, bound)
        cache[key] = emb
    return emb


def search_forest(h: Hypergraph, spec: ForestSpec, seed: EdgeMask | None = None,
                  symmetry: bool = True, bound: bool = True) -> Witness | None:
    """Exact search; parts are tried longest first."""
    if h.r < 1 or spec.total_edges > len(h.edges):
        return None
    emb = _embedder(h, symmetry, bound)
    order = sorted(enumerate(spec.parts), key=lambda ip: (-ip[1].length, ip[0]))
    found = emb.forest(order, 0) if seed is None else emb.forest_seeded(order, seed)
    if found is None:
        return None
    found.sort(key=lambda item: item[0])
    return Witness(tuple(part for _, part in found))
