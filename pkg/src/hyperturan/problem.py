"""Named problem families tying a forbidden forest to its formula and construction."""

from __future__ import annotations

from dataclasses import dataclass

from . import constructions, formulas
from .errors import OutOfScopeError, SpecError
from .formulas import FormulaResult
from .hypercore import Hypergraph
from .patterns import ForestSpec

PROBLEM_KINDS = ("loose", "linear", "matching", "graph", "lcycle", "berge")


@dataclass(frozen=True)
class Problem:
    """``kind`` plus its parameters.

    ``matching`` with parameter ``s`` forbids s+1 pairwise disjoint edges.
    ``graph`` is r = 2 and ``lengths`` count path *vertices*.
    """

    kind: str
    r: int
    lengths: tuple[int, ...] = ()
    s: int | None = None

    def __post_init__(self):
        if self.kind not in PROBLEM_KINDS:
            raise SpecError(f"unknown kind {self.kind!r}; expected one of {PROBLEM_KINDS}")
        object.__setattr__(self, "lengths", tuple(self.lengths))
        if self.kind == "matching":
            if self.s is None or self.s < 0:
                raise SpecError("matching needs s >= 0")
        elif not self.lengths:
            raise SpecError(f"kind {self.kind!r} needs at least one length")
        if self.kind == "graph":
            if self.r != 2:
                raise SpecError(f"graph kind is r = 2, got r={self.r}")
            if min(self.lengths) < 2:
                raise SpecError("graph paths need at least 2 vertices")
        if self.kind == "lcycle" and len(self.lengths) != 1:
            raise SpecError("lcycle takes exactly one length")

    def forest(self) -> ForestSpec:
        if self.kind == "matching":
            return ForestSpec.matching(self.s + 1)
        if self.kind == "graph":
            return ForestSpec.of("loose", [ell - 1 for ell in self.lengths])
        if self.kind == "lcycle":
            return ForestSpec.of("linear-cycle", self.lengths)
        return ForestSpec.of(self.kind, self.lengths)

    def formula(self, n: int) -> FormulaResult:
        if self.kind == "loose":
            return formulas.ex_loose_forest(n, self.r, self.lengths)
        if self.kind == "linear":
            return formulas.ex_linear_forest(n, self.r, self.lengths)
        if self.kind == "matching":
            return formulas.ex_matching_conjecture(n, self.r, self.s)
        if self.kind == "graph":
            return formulas.ex_graph_path_forest(n, self.lengths)
        if self.kind == "lcycle":
            return formulas.ex_linear_cycle(n, self.r, self.lengths[0])
        raise OutOfScopeError(f"no closed form for kind {self.kind!r}")

    def construction(self, n: int) -> Hypergraph:
        if self.kind == "loose":
            return constructions.loose_extremal(n, self.r, self.lengths)
        if self.kind in ("linear", "lcycle"):
            return constructions.linear_extremal(n, self.r, self.lengths)
        if self.kind == "matching":
            return constructions.matching_candidates(n, self.r, self.s).best
        if self.kind == "graph":
            return constructions.graph_extremal(n, self.lengths)
        raise OutOfScopeError(f"no construction for kind {self.kind!r}")

    def label(self) -> str:
        if self.kind == "matching":
            return f"matching s={self.s}"
        return f"{self.kind} {','.join(map(str, self.lengths))}"


def infer_problem(spec: ForestSpec, r: int) -> Problem | None:
    """Recognise a forest spec as one of the named families, if possible."""
    kinds = {p.kind for p in spec.parts}
    lengths = tuple(p.length for p in spec.parts)
    if len(kinds) != 1:
        return None
    kind = kinds.pop()
    try:
        if kind == "linear" and set(lengths) == {1}:
            return Problem("matching", r, s=len(lengths) - 1)
        if r == 2 and kind == "loose":
            return Problem("graph", 2, tuple(ell + 1 for ell in lengths))
        if kind in ("loose", "linear"):
            return Problem(kind, r, lengths)
        if kind == "linear-cycle" and len(lengths) == 1:
            return Problem("lcycle", r, lengths)
    except SpecError:
        return None
    return None
