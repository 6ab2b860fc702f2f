"""Closed-form extremal numbers, evaluated in exact integer arithmetic.

Each evaluator returns a :class:`FormulaResult` carrying the value together
with its ingredients (star size ``t``, the star sum and the additive
correction) and a note on when the value is claimed to hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import OutOfScopeError

LARGE_N = "exact for n sufficiently large (threshold not quantified)"
BELOW_SCALE = "below construction scale (n < t + r)"
LOOSE_TWO_WARNING = (
    "loose length 2 gives t = 0 and value 1, but a perfect matching avoids every "
    "loose 2-path with floor(n/r) edges; treat this value as suspect"
)


def binom(n: int, k: int) -> int:
    """Exact C(n, k); zero whenever k < 0, k > n or n < 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class FormulaResult:
    value: int
    t: int
    star_sum: int
    correction: int
    validity: str
    warnings: tuple[str, ...] = ()


def star_sum(n: int, r: int, t: int) -> int:
    """C(n-1, r-1) + ... + C(n-t, r-1): r-sets of [n] meeting a fixed t-set."""
    return sum(binom(n - i, r - 1) for i in range(1, t + 1))


def star_size(lengths: Sequence[int]) -> int:
    return sum((ell + 1) // 2 for ell in lengths) - 1


def _check_forest_args(n: int, r: int, lengths: Sequence[int]) -> list[int]:
    if r < 3:
        raise OutOfScopeError(
            f"hypergraph path-forest formulas need r >= 3 (got r={r}); "
            "use ex_graph_path_forest for graphs"
        )
    if n < 0:
        raise OutOfScopeError(f"n must be nonnegative, got {n}")
    lengths = sorted(lengths)
    if not lengths or lengths[0] < 1:
        raise OutOfScopeError(f"path lengths must be >= 1, got {lengths}")
    return lengths


def _validity(n: int, r: int, t: int) -> str:
    return BELOW_SCALE if n < t + r else LARGE_N


def ex_loose_forest(n: int, r: int, lengths: Sequence[int]) -> FormulaResult:
    """Forbidding vertex-disjoint loose paths with the given edge counts."""
    lengths = _check_forest_args(n, r, lengths)
    t = star_size(lengths)
    c = int(all(ell % 2 == 0 for ell in lengths))
    s = star_sum(n, r, t)
    warnings = (LOOSE_TWO_WARNING,) if 2 in lengths else ()
    return FormulaResult(s + c, t, s, c, _validity(n, r, t), warnings)


def ex_linear_forest(n: int, r: int, lengths: Sequence[int]) -> FormulaResult:
    """Forbidding vertex-disjoint linear paths with the given edge counts."""
    lengths = _check_forest_args(n, r, lengths)
    t = star_size(lengths)
    d = binom(n - t - 2, r - 2) if all(ell % 2 == 0 for ell in lengths) else 0
    s = star_sum(n, r, t)
    return FormulaResult(s + d, t, s, d, _validity(n, r, t))


def ex_matching_conjecture(n: int, r: int, s: int) -> FormulaResult:
    """max(|clique on r(s+1)-1 vertices|, |r-sets meeting [s]|), forbidding s+1 disjoint edges.

    The clique candidate is restricted to [n]: when n < r(s+1)-1 it is the
    complete r-graph on [n].
    """
    if r < 1 or s < 0 or n < 0:
        raise OutOfScopeError(f"need r >= 1, s >= 0, n >= 0 (got n={n}, r={r}, s={s})")
    clique_order = r * (s + 1) - 1
    a = binom(min(n, clique_order), r)
    b = binom(n, r) - binom(n - s, r)
    value = max(a, b)
    validity = "conjectured in general; exact for n large and for r = 3"
    if n < clique_order:
        validity += "; clique candidate truncated to [n]"
    return FormulaResult(value, s, b, value - b, validity)


def graph_forest_threshold(k: int, ell: int) -> int:
    if ell == 3:
        return 7 * k
    return 2 * ell + 2 * k * ell * (math.ceil(ell / 2) + 1) * math.comb(ell, ell // 2)


def ex_graph_path_forest(n: int, lengths: Sequence[int]) -> FormulaResult:
    """Graphs (r = 2) avoiding k disjoint paths on ``ell`` vertices each.

    ``lengths`` holds the vertex count of every path; all must be equal.
    Covered shapes: ell = 3 with any k >= 1, or ell >= 4 with k >= 2.
    """
    lengths = list(lengths)
    k = len(lengths)
    if k == 0 or len(set(lengths)) != 1:
        raise OutOfScopeError(f"graph path forests need k >= 1 equal path lengths, got {lengths}")
    ell = lengths[0]
    if ell == 3:
        t = k - 1
        correction = (n - k + 1) // 2
    elif ell >= 4 and k >= 2:
        t = k * (ell // 2) - 1
        correction = ell % 2
    else:
        raise OutOfScopeError(
            f"no closed form for k={k} paths on {ell} vertices (need ell = 3, or ell >= 4 with k >= 2)"
        )
    s = binom(t, 2) + t * (n - t)
    threshold = graph_forest_threshold(k, ell)
    if n >= threshold:
        validity = f"exact for n >= {threshold}"
    else:
        validity = f"below proven range (exact for n >= {threshold})"
    return FormulaResult(s + correction, t, s, correction, validity)


def ex_linear_cycle(n: int, r: int, ell: int) -> FormulaResult:
    """Linear cycles share the linear-path value for r >= 3, ell >= 4, (r, ell) != (3, 4)."""
    if r < 3:
        raise OutOfScopeError(f"linear cycle value needs r >= 3, got r={r}")
    if ell < 4:
        raise OutOfScopeError(f"linear cycle value needs length >= 4, got {ell}")
    if (r, ell) == (3, 4):
        raise OutOfScopeError("linear cycle value excludes the case (r, length) = (3, 4)")
    res = ex_linear_forest(n, r, [ell])
    return FormulaResult(
        res.value,
        res.t,
        res.star_sum,
        res.correction,
        res.validity + "; equals the linear path value on r >= 3, length >= 4, (r, length) != (3, 4)",
        res.warnings,
    )
