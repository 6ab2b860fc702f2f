"""Exact Turán numbers at desk scale.

Two independent routes:

``exhaustive``
    Lists every occurrence of the pattern in the complete r-graph with the
    brute-force enumerator, then scans all ``2**C(n, r)`` edge subsets with
    numpy and keeps the largest one containing no occurrence.

``bnb``
    Depth-first branch and bound over candidate edges in canonical order,
    include-first.  Each node carries the set of *live* candidates, those
    that can still be added on their own without creating the pattern
    (monotone, so a dead candidate never revives).  Nodes are pruned when
    ``|current| + bound(live)`` cannot beat the best value so far.

Both return the lexicographically first maximiser in include-first order
when run sequentially, so their witnesses coincide.
"""

from __future__ import annotations

import logging
import math
import multiprocessing as mp
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import naive
from .errors import HyperTuranError, SpecError
from .hypercore import Hypergraph, all_r_subsets
from .patterns import ForestSpec, PathSpec, contains_forest, contains_forest_using
from .problem import Problem, infer_problem

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_CANDIDATES = 24
AUTO_EXHAUSTIVE_MAX = 20
BUDGET_CHECK_EVERY = 4096
_CHUNK_BITS = 20


@dataclass(frozen=True)
class Budget:
    nodes: int | None = None
    seconds: float | None = None


@dataclass
class OracleResult:
    value: int
    witness: Hypergraph
    nodes_explored: int
    mode: str
    elapsed: float
    exact: bool


class _Exhausted(Exception):
    pass


def _as_forest(spec) -> ForestSpec:
    if isinstance(spec, PathSpec):
        return ForestSpec((spec,))
    if isinstance(spec, ForestSpec):
        return spec
    raise SpecError(f"expected PathSpec or ForestSpec, got {spec!r}")


def default_lower_bound(n: int, r: int, spec: ForestSpec) -> Hypergraph | None:
    """The matching extremal construction, if one applies and is spec-free."""
    problem = infer_problem(spec, r)
    if problem is None:
        return None
    try:
        h = problem.construction(n)
    except HyperTuranError:
        return None
    if h.n != n or h.r != r or contains_forest(h, spec) is not None:
        return None
    return h


# -- exhaustive ---------------------------------------------------------------


def _scan_chunk(args):
    lo, hi, forbidden = args
    subsets = np.arange(lo, hi, dtype=np.uint32)
    ok = np.ones(subsets.shape, dtype=bool)
    for f in forbidden:
        ok &= (subsets & np.uint32(f)) != np.uint32(f)
    if not ok.any():
        return -1, 0
    sizes = np.bitwise_count(subsets).astype(np.int16)
    sizes[~ok] = -1
    best = int(sizes.max())
    return best, int(subsets[sizes == best].max())


def _exhaustive(n: int, r: int, spec: ForestSpec, budget: Budget, workers: int) -> OracleResult:
    start = time.perf_counter()
    cands = all_r_subsets(n, r)
    m = len(cands)
    if m > EXHAUSTIVE_MAX_CANDIDATES:
        raise ValueError(f"exhaustive mode needs C(n, r) <= {EXHAUSTIVE_MAX_CANDIDATES}, got {m}")
    # candidate i sits at bit m-1-i so that larger integers come first in
    # include-first lexicographic order
    pos = {e: m - 1 - i for i, e in enumerate(cands)}
    forbidden = sorted({sum(1 << pos[e] for e in fs) for fs in naive.forbidden_edge_sets(n, r, spec)})
    total = 1 << m
    chunk = 1 << min(_CHUNK_BITS, m)
    jobs = [(lo, min(lo + chunk, total), forbidden) for lo in range(0, total, chunk)]
    best = (-1, 0)
    scanned = 0
    exact = True
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers, mp_context=_mp_context()) as pool:
            for job, res in zip(jobs, pool.map(_scan_chunk, jobs)):
                best = max(best, res)
                scanned += job[1] - job[0]
    else:
        for job in jobs:
            if budget.seconds is not None and time.perf_counter() - start > budget.seconds:
                exact = False
                break
            if budget.nodes is not None and scanned >= budget.nodes:
                exact = False
                break
            best = max(best, _scan_chunk(job))
            scanned += job[1] - job[0]
    size, subset = best
    edges = tuple(e for e in cands if subset >> pos[e] & 1) if size >= 0 else ()
    return OracleResult(len(edges), Hypergraph(n, r, edges), scanned, "exhaustive",
                        time.perf_counter() - start, exact)


# -- branch and bound ---------------------------------------------------------


@dataclass
class _Problem:
    n: int
    r: int
    spec: ForestSpec
    cands: list[int]
    conflict: list[int] | None  # pairwise conflicts when the pattern has two edges
    incremental: bool = True


def _build(n: int, r: int, spec: ForestSpec, incremental: bool) -> _Problem:
    cands = all_r_subsets(n, r)
    conflict = None
    if spec.total_edges == 2:
        conflict = [0] * len(cands)
        for i, a in enumerate(cands):
            for j in range(i + 1, len(cands)):
                if contains_forest(Hypergraph(n, r, (a, cands[j])), spec) is not None:
                    conflict[i] |= 1 << j
                    conflict[j] |= 1 << i
    return _Problem(n, r, spec, cands, conflict, incremental)


def _initial_live(p: _Problem) -> int:
    if p.spec.total_edges <= 1:
        return sum(
            1 << i for i, c in enumerate(p.cands)
            if contains_forest(Hypergraph(p.n, p.r, (c,)), p.spec) is None
        )
    return (1 << len(p.cands)) - 1


class _Search:
    def __init__(self, p: _Problem, best: int, budget: Budget, start: float,
                 shared_best=None, shared_nodes=None):
        self.p = p
        self.best = best
        self.best_set: list[int] | None = None
        self.budget = budget
        self.start = start
        self.nodes = 0
        self.shared_best = shared_best
        self.shared_nodes = shared_nodes

    def _tick(self):
        self.nodes += 1
        if self.nodes % BUDGET_CHECK_EVERY:
            return
        if self.shared_best is not None:
            self.best = max(self.best, self.shared_best.value)
        used = self.nodes
        if self.shared_nodes is not None:
            with self.shared_nodes.get_lock():
                self.shared_nodes.value += BUDGET_CHECK_EVERY
                used = self.shared_nodes.value
        if self.budget.nodes is not None and used >= self.budget.nodes:
            raise _Exhausted
        if self.budget.seconds is not None and time.perf_counter() - self.start > self.budget.seconds:
            raise _Exhausted

    def _record(self, cur: list[int]):
        self.best = len(cur)
        self.best_set = list(cur)
        if self.shared_best is not None:
            with self.shared_best.get_lock():
                if self.shared_best.value < self.best:
                    self.shared_best.value = self.best

    def cover_bound(self, live: int) -> int:
        """Greedy clique cover of the conflict graph: one survivor per clique."""
        conflict = self.p.conflict
        count = 0
        while live:
            low = live & -live
            live ^= low
            clique = live & conflict[low.bit_length() - 1]
            while clique:
                low2 = clique & -clique
                live ^= low2
                clique &= conflict[low2.bit_length() - 1]
            count += 1
        return count

    def filter_live(self, cur: list[int], i: int, rest: int) -> int:
        p = self.p
        if p.conflict is not None:
            return rest & ~p.conflict[i]
        base = [p.cands[k] for k in cur] + [p.cands[i]]
        keep = 0
        x = rest
        while x:
            low = x & -x
            x ^= low
            c = p.cands[low.bit_length() - 1]
            h = Hypergraph(p.n, p.r, tuple(base + [c]))
            if p.incremental:
                hit = contains_forest_using(h, p.spec, c)
            else:
                hit = contains_forest(h, p.spec)
            if hit is None:
                keep |= low
        return keep

    def prunable(self, size: int, live: int) -> bool:
        if size + live.bit_count() <= self.best:
            return True
        return self.p.conflict is not None and size + self.cover_bound(live) <= self.best

    def dfs(self, cur: list[int], live: int):
        self._tick()
        if not live:
            if len(cur) > self.best:
                self._record(cur)
            return
        if self.prunable(len(cur), live):
            return
        low = live & -live
        i = low.bit_length() - 1
        rest = live ^ low
        cur.append(i)
        self.dfs(cur, self.filter_live(cur[:-1], i, rest))
        cur.pop()
        self.dfs(cur, rest)

    def frontier(self, cur: list[int], live: int, depth: int, out: list):
        """Split the tree ``depth`` decisions deep, in DFS order."""
        self._tick()
        if not live:
            if len(cur) > self.best:
                self._record(cur)
            return
        if self.prunable(len(cur), live):
            return
        if depth == 0:
            out.append((list(cur), live))
            return
        low = live & -live
        i = low.bit_length() - 1
        rest = live ^ low
        self.frontier(cur + [i], self.filter_live(cur, i, rest), depth - 1, out)
        self.frontier(cur, rest, depth - 1, out)


_WORKER: dict = {}


def _worker_init(p, budget, start, shared_best, shared_nodes):
    _WORKER.update(p=p, budget=budget, start=start, best=shared_best, nodes=shared_nodes)


def _worker_run(task):
    cur, live = task
    w = _WORKER
    s = _Search(w["p"], w["best"].value, w["budget"], w["start"], w["best"], w["nodes"])
    exhausted = False
    try:
        s.dfs(cur, live)
    except _Exhausted:
        exhausted = True
    return s.best_set, s.nodes, exhausted


def _mp_context():
    methods = mp.get_all_start_methods()
    return mp.get_context("fork" if "fork" in methods else "spawn")


def _bnb(n, r, spec, budget, workers, lower: Hypergraph | None, incremental: bool) -> OracleResult:
    start = time.perf_counter()
    p = _build(n, r, spec, incremental)
    floor = lower.m if lower is not None else 0
    s = _Search(p, floor - 1, budget, start)
    live = _initial_live(p)
    exact = True
    nodes = 0
    try:
        if workers <= 1:
            s.dfs([], live)
        else:
            tasks: list = []
            depth = max(1, math.ceil(math.log2(workers * 4)))
            s.frontier([], live, depth, tasks)
            ctx = _mp_context()
            shared_best = ctx.Value("q", s.best)
            shared_nodes = ctx.Value("q", s.nodes)
            with ProcessPoolExecutor(max_workers=workers, mp_context=ctx, initializer=_worker_init,
                                     initargs=(p, budget, start, shared_best, shared_nodes)) as pool:
                for best_set, used, exhausted in pool.map(_worker_run, tasks):
                    nodes += used
                    exact = exact and not exhausted
                    if best_set is not None and len(best_set) > s.best:
                        s.best = len(best_set)
                        s.best_set = best_set
    except _Exhausted:
        exact = False
    nodes += s.nodes
    if s.best_set is not None:
        witness = Hypergraph(n, r, tuple(p.cands[i] for i in s.best_set))
    elif lower is not None:
        witness = lower
    else:
        witness = Hypergraph(n, r, ())
    return OracleResult(witness.m, witness, nodes, "branch-and-bound", time.perf_counter() - start, exact)


# -- public -------------------------------------------------------------------


def turan_exact(n: int, r: int, spec, budget: Budget | None = None, mode: str = "auto",
                workers: int = 1, lower: Hypergraph | None = None,
                incremental: bool = True) -> OracleResult:
    """Maximum number of edges of a spec-free r-graph on [n].

    ``mode`` is ``auto``, ``exhaustive`` or ``bnb``.  ``lower`` seeds the
    best value; by default the matching construction is used when it applies.
    If the budget runs out the result is a certified lower bound with
    ``exact=False``.
    """
    spec = _as_forest(spec)
    budget = budget or Budget()
    if n < 0 or r < 1:
        raise ValueError(f"need n >= 0 and r >= 1, got n={n}, r={r}")
    if r == 3 and n > 16:
        warnings.warn(f"n={n} is beyond the recommended range for r=3 (n <= 16)", stacklevel=2)
    if mode not in ("auto", "exhaustive", "bnb"):
        raise ValueError(f"unknown mode {mode!r}")
    m = math.comb(n, r) if n >= r else 0
    if mode == "auto":
        mode = "exhaustive" if m <= AUTO_EXHAUSTIVE_MAX else "bnb"
    if mode == "exhaustive":
        result = _exhaustive(n, r, spec, budget, workers)
    else:
        if lower is None:
            lower = default_lower_bound(n, r, spec)
        elif contains_forest(lower, spec) is not None:
            raise ValueError("lower-bound hypergraph contains the forbidden pattern")
        result = _bnb(n, r, spec, budget, workers, lower, incremental)
    log.info("oracle n=%d r=%d spec=%s mode=%s value=%d exact=%s nodes=%d",
             n, r, spec, result.mode, result.value, result.exact, result.nodes_explored)
    return result


def kmw_max(n: int, r: int, budget: Budget | None = None, mode: str = "auto", workers: int = 1) -> OracleResult:
    """Largest r-graph on [n] in which no two edges meet in exactly one vertex.

    Two edges meeting in one vertex are precisely a linear path of length 2,
    so this is the Turán number of that path.
    """
    return turan_exact(n, r, ForestSpec.of("linear", [2]), budget, mode, workers)


@dataclass
class VerifyRow:
    n: int
    oracle: int
    exact: bool
    formula: int | None
    construction: int | None
    nodes: int
    mode: str

    @property
    def agree(self) -> bool:
        if not self.exact or self.formula is None or self.oracle != self.formula:
            return False
        return self.construction is None or self.construction == self.formula


@dataclass
class VerifyReport:
    problem: Problem
    rows: list[VerifyRow] = field(default_factory=list)

    @property
    def threshold(self) -> int | None:
        """Least n from which every row agrees through the end of the range."""
        found = None
        for row in reversed(self.rows):
            if not row.agree:
                break
            found = row.n
        return found

    @property
    def all_exact(self) -> bool:
        return all(row.exact for row in self.rows)


def verify_threshold(problem: Problem, n_values, budget: Budget | None = None, mode: str = "auto",
                     workers: int = 1, cache=None) -> VerifyReport:
    """Compare oracle, closed form and construction for each n."""
    from .cache import cached_turan_exact

    spec = problem.forest()
    report = VerifyReport(problem)
    for n in n_values:
        try:
            formula = problem.formula(n).value
        except HyperTuranError:
            formula = None
        try:
            cons = problem.construction(n)
        except HyperTuranError:
            cons = None
        lower = cons if cons is not None and contains_forest(cons, spec) is None else None
        res = cached_turan_exact(cache, n, problem.r, spec, budget=budget, mode=mode,
                                 workers=workers, lower=lower)
        report.rows.append(VerifyRow(n, res.value, res.exact, formula,
                                     cons.m if cons is not None else None,
                                     res.nodes_explored, res.mode))
    return report
