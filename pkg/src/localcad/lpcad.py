"""Cylindrical decomposition driven by local projections.

The solver walks the real line of one variable at a time with a stack of
intervals.  Each interval gets a sample; the system is decided there by
partial evaluation if possible, and otherwise by recursing one level deeper.
The polynomials that justify each decision are projected locally, and the
nearest roots of the projection around the sample give the widest cell on
which that decision stays valid.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .formula import (
    Cells,
    ResourceLimit,
    RootFunction,
    Section,
    Sector,
    atoms,
    count_cells,
    normalize_caf,
    peval,
    to_cnf,
    to_dnf,
)
from .poly import VarOrder
from .projection import local_projection
from .realalg import (
    NEG_INF,
    POS_INF,
    IdenticallyZero,
    SamplePoint,
    as_point,
    compare,
    number_str,
    roots_at,
    simplest_between,
    sort_key,
)

SCHEMA_VERSION = 1


@dataclass
class Options:
    skip_levels: bool = True
    hong_only: bool = False
    max_steps: int = 10 ** 6
    max_nf_atoms: int | None = 100_000
    check_partition: bool = True
    trace: object = None  # callable receiving one dict per processed interval


@dataclass
class Stats:
    method: str = "lpcad"
    cells: int = 0
    true_cells: int = 0
    atomic_cells: int = 0
    decided_cnf: int = 0
    decided_dnf: int = 0
    undecided: int = 0
    iterations: int = 0
    projections: int = 0
    projection_rounds: int = 0
    restarts: int = 0
    depth: int = 0
    well_oriented: bool = True
    time_ms: float = 0.0
    level_polys: dict = field(default_factory=dict)

    def projection(self, W, iterations, restarted):
        self.projections += 1
        self.projection_rounds += iterations
        if restarted:
            self.restarts += 1
            self.well_oriented = False
        for k, level in enumerate(W, start=1):
            bucket = self.level_polys.setdefault(k, {})
            for p in level:
                bucket[p] = None

    def to_dict(self, with_time=True) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "method": self.method,
            "cells": self.cells,
            "true_cells": self.true_cells,
            "atomic_cells": self.atomic_cells,
            "levels": [{"k": k, "proj_size": len(v)} for k, v in sorted(self.level_polys.items())],
            "peval": {
                "decided_cnf": self.decided_cnf,
                "decided_dnf": self.decided_dnf,
                "undecided": self.undecided,
            },
            "iterations": self.iterations,
            "well_oriented": self.well_oriented,
        }
        if with_time:
            out["time_ms"] = round(self.time_ms, 3)
        return out


@dataclass
class LpcadResult:
    """``formula`` decides the system over the cell of the base point on which
    every polynomial of ``deps[j-1]`` (level j) keeps its sign."""

    formula: object
    deps: tuple


@dataclass
class CellRecord:
    sample: object
    constraint: object
    sub: object
    lo: object
    lo_closed: bool
    hi: object
    hi_closed: bool


class PartitionError(AssertionError):
    pass


def check_partition(records) -> None:
    """Consecutive cells must abut exactly and jointly cover the line."""
    if not records:
        raise PartitionError("no cells")
    if records[0].lo is not NEG_INF or records[-1].hi is not POS_INF:
        raise PartitionError("cells do not reach both infinities")
    for a, b in zip(records, records[1:]):
        if compare(a.hi, b.lo) != 0:
            raise PartitionError(f"gap or overlap between {number_str(a.hi)} and {number_str(b.lo)}")
        if a.hi_closed == b.lo_closed:
            raise PartitionError(f"boundary {number_str(a.hi)} covered {'twice' if a.hi_closed else 'by neither cell'}")


class LpcadSolver:
    def __init__(self, system, vars: VarOrder, options: Options | None = None, stats: Stats | None = None):
        self.system = system
        self.vars = vars
        self.n = vars.n
        self.options = options or Options()
        self.stats = stats or Stats(method="lpcad-hong-only" if self.options.hong_only else "lpcad")
        for a in atoms(system):
            if a.poly.vars is not vars:
                raise ValueError("system polynomials use a different variable order")
        self.cnf = to_cnf(system, self.options.max_nf_atoms)
        self.dnf = to_dnf(system, self.options.max_nf_atoms)

    def _project(self, polys, point):
        skip = point.section_prefix() if self.options.skip_levels else 0
        return local_projection(polys, point, skip=skip, hong_only=self.options.hong_only, stats=self.stats)

    def lpcad(self, point=()) -> LpcadResult:
        point = as_point(point)
        k = len(point)
        if k >= self.n:
            raise ValueError("base point must be shorter than the number of variables")
        self.stats.depth = max(self.stats.depth, k + 1)
        level = k + 1
        V = [dict() for _ in range(k)]
        Q: dict = {}
        stack = [(NEG_INF, NEG_INF, False, POS_INF, POS_INF, False)]
        records = []
        steps = 0
        trace = self.options.trace

        def merge(levels):
            for j in range(k):
                for p in levels[j]:
                    V[j][p] = None

        while stack:
            steps += 1
            if steps > self.options.max_steps:
                raise ResourceLimit(f"more than {self.options.max_steps} intervals at level {level}")
            self.stats.iterations += 1
            u1, r1, w1, u2, r2, w2 = stack.pop()
            is_point = compare(u1, u2) == 0
            if is_point:
                a = u1
                R = [r1.poly]
            else:
                a = simplest_between(u1, u2)
                R = []
            b = point.extend(a, is_point, zeros=R)

            e = peval(self.cnf, b)
            if e is not None and e[0] is False:
                H, source, P = False, "CNF", e[1]
                self.stats.decided_cnf += 1
                W = self._project(list(P) + R, point)
            else:
                e = peval(self.dnf, b)
                if e is not None and e[0] is True:
                    H, source, P = True, "DNF", e[1]
                    self.stats.decided_dnf += 1
                    W = self._project(list(P) + R, point)
                else:
                    if level == self.n:
                        raise AssertionError("undecided system at a full-dimensional sample")
                    self.stats.undecided += 1
                    source = "recurse"
                    sub = self.lpcad(b)
                    H, P = sub.formula, sub.deps[k]
                    merge(sub.deps)
                    W = self._project(list(P) + R, point)
            merge(W.levels)

            if is_point:
                G = Section(level, r1)
                rec = CellRecord(a, G, H, a, True, a, True)
            else:
                v1, s1, v2, s2 = NEG_INF, NEG_INF, POS_INF, POS_INF
                for f in W[level]:
                    try:
                        roots = roots_at(f, point)
                    except IdenticallyZero:
                        continue
                    for idx, r in enumerate(roots):
                        c = compare(r, a)
                        if c <= 0 and compare(r, v1) > 0:
                            v1, s1 = r, RootFunction(f, idx + 1)
                        if c >= 0 and compare(r, v2) < 0:
                            v2, s2 = r, RootFunction(f, idx + 1)
                for s in (s1, s2):
                    if isinstance(s, RootFunction):
                        Q[s.poly] = None
                if compare(v1, v2) == 0:
                    G = Section(level, s1)
                    stack.append((v1, s1, False, u2, r2, w2))
                    stack.append((u1, r1, w1, v1, s1, False))
                    rec = CellRecord(a, G, H, v1, True, v1, True)
                else:
                    if compare(u2, v2) < 0:
                        t2, hi_val, sig2 = r2, u2, w2
                    else:
                        t2, hi_val, sig2 = s2, v2, False
                        if compare(u2, v2) > 0 or w2:
                            stack.append((v2, s2, True, u2, r2, w2))
                    if compare(v1, u1) < 0:
                        t1, lo_val, sig1 = r1, u1, w1
                    else:
                        t1, lo_val, sig1 = s1, v1, False
                        if compare(v1, u1) > 0 or w1:
                            stack.append((u1, r1, w1, v1, s1, True))
                    G = Sector(level, t1, t2, sig1, sig2)
                    rec = CellRecord(a, G, H, lo_val, sig1, hi_val, sig2)
            records.append(rec)
            if trace is not None:
                trace(
                    {
                        "k": k,
                        "interval": _interval_str(u1, w1, u2, w2),
                        "sample": number_str(a),
                        "source": source,
                        "witnesses": len(P),
                        "truth": H if isinstance(H, bool) else None,
                    }
                )

        records.sort(key=lambda r: sort_key(r.sample))
        for x, y in zip(records, records[1:]):
            if compare(x.sample, y.sample) == 0:
                raise AssertionError("two cells share a sample")
        if self.options.check_partition:
            check_partition(records)
        F = Cells(level, tuple((r.constraint, r.sub) for r in records))
        W = self._project(list(Q), point)
        merge(W.levels)
        deps = tuple(tuple(sorted(v, key=lambda p: p.sort_key())) for v in V)
        return LpcadResult(F, deps)


def _interval_str(u1, w1, u2, w2) -> str:
    if compare(u1, u2) == 0:
        return f"[{number_str(u1)}]"
    left = "[" if w1 else "("
    right = "]" if w2 else ")"
    return f"{left}{number_str(u1)}, {number_str(u2)}{right}"


def lpcad(system, point=(), vars: VarOrder | None = None, options: Options | None = None) -> LpcadResult:
    """Run the recursive construction at ``point`` (empty for the whole space)."""
    vars = vars or _infer_vars(system)
    return LpcadSolver(system, vars, options).lpcad(point)


def _infer_vars(system) -> VarOrder:
    for a in atoms(system):
        return a.poly.vars
    raise ValueError("cannot infer variables of a constant system; pass vars")


def solve(system, vars: VarOrder | None = None, options: Options | None = None):
    """Cylindrical formula equivalent to ``system`` plus statistics.

    The returned formula has strict and equational constraints only and no
    false branches; ``stats.cells`` counts every cell constructed on the way.
    """
    vars = vars or _infer_vars(system)
    start = time.perf_counter()
    solver = LpcadSolver(system, vars, options)
    raw = solver.lpcad(SamplePoint()).formula
    stats = solver.stats
    stats.cells = count_cells(raw)
    stats.atomic_cells = count_cells(normalize_caf(raw, prune=False))
    F = normalize_caf(raw)
    stats.true_cells = count_cells(F, include_false=False)
    stats.time_ms = (time.perf_counter() - start) * 1000
    return F, stats


def solve_raw(system, vars: VarOrder | None = None, options: Options | None = None):
    """Like :func:`solve` but returns the unnormalized formula."""
    vars = vars or _infer_vars(system)
    solver = LpcadSolver(system, vars, options)
    raw = solver.lpcad(SamplePoint()).formula
    solver.stats.cells = count_cells(raw)
    return raw, solver.stats
