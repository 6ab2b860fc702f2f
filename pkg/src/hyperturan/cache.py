"""Append-only JSON-lines cache of completed oracle queries."""

from __future__ import annotations

import json
import os
from pathlib import Path

from . import __version__
from .hypercore import Hypergraph, edge_mask, mask_vertices
from .oracle import Budget, OracleResult, turan_exact
from .patterns import ForestSpec

ENV_VAR = "TURAN_CACHE"
DEFAULT_PATH = Path.home() / ".cache" / "hyperturan" / "oracle.jsonl"


def resolve_path(flag: str | None = None, disabled: bool = False) -> Path | None:
    """Flag beats environment beats default; ``disabled`` turns caching off."""
    if disabled:
        return None
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return DEFAULT_PATH


def _key(n: int, r: int, spec: ForestSpec) -> dict:
    return {"n": n, "r": r, "spec": [str(p) for p in spec.parts]}


class OracleCache:
    def __init__(self, path: Path):
        self.path = Path(path)

    def _records(self):
        if not self.path.exists():
            return
        with self.path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    yield json.loads(line)
                except json.JSONDecodeError:
                    continue  # a torn final line from an interrupted write

    def lookup(self, n: int, r: int, spec: ForestSpec) -> OracleResult | None:
        """Latest exact record for the query, if any."""
        key = _key(n, r, spec)
        hit = None
        for rec in self._records():
            if rec.get("params") == key and rec.get("exact"):
                hit = rec
        if hit is None:
            return None
        edges = tuple(edge_mask(e) for e in hit["witness"])
        witness = Hypergraph(n, r, edges)
        return OracleResult(hit["value"], witness, 0, "cache", 0.0, True)

    def store(self, n: int, r: int, spec: ForestSpec, result: OracleResult) -> None:
        rec = {
            "params": _key(n, r, spec),
            "value": result.value,
            "exact": result.exact,
            "mode": result.mode,
            "witness": [mask_vertices(e) for e in result.witness.edges],
            "version": __version__,
        }
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def cached_turan_exact(cache: OracleCache | None, n: int, r: int, spec: ForestSpec,
                       budget: Budget | None = None, **kwargs) -> OracleResult:
    if cache is not None:
        hit = cache.lookup(n, r, spec)
        if hit is not None:
            return hit
    result = turan_exact(n, r, spec, budget, **kwargs)
    # parallel witnesses depend on scheduling, so only sequential runs are stored
    if cache is not None and result.exact and kwargs.get("workers", 1) <= 1:
        cache.store(n, r, spec, result)
    return result
