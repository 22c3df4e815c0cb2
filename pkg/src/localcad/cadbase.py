"""Classical two-phase CAD: a global projection followed by full lifting.

Used as the baseline the local method is compared against.
"""

from __future__ import annotations

import time

from .formula import Cells, RootFunction, Section, Sector, count_cells, evaluate, normalize_caf, polys_of
from .lpcad import Stats, _infer_vars
from .poly import (
    VarOrder,
    coeffs_in,
    discriminant,
    factor_basis,
    level_split,
    psc_sequence,
    reductum,
    resultant,
    sort_polys,
)
from .realalg import NEG_INF, POS_INF, IdenticallyZero, SamplePoint, compare, roots_at, simplest_between

MCCALLUM = "mccallum"
HONG = "hong"


class NotWellOriented(RuntimeError):
    pass


def mccallum_step(polys, k: int) -> list:
    """Leading coefficients, discriminants and pairwise resultants in x_k."""
    out = {}
    polys = list(polys)
    for i, p in enumerate(polys):
        out[coeffs_in(p, k)[0]] = None
        if p.degree(k) >= 2:
            out[discriminant(p, k)] = None
        for q in polys[i + 1 :]:
            out[resultant(p, q, k)] = None
    return [q for q in out if not q.is_zero()]


def _reducta(p, k: int) -> list:
    chain = []
    while not p.is_zero():
        chain.append(p)
        if p.degree(k) < 1:
            break
        p = reductum(p, k)
    return chain


def hong_step(polys, k: int) -> list:
    """Hong's operator: coefficients of all reducta, psc of reducta with their
    derivatives and with the other polynomials."""
    out = {}
    polys = list(polys)
    chains = [_reducta(p, k) for p in polys]
    for i, chain in enumerate(chains):
        for r in chain:
            out[coeffs_in(r, k)[0]] = None
            if r.degree(k) >= 1:
                for c in psc_sequence(r, r.derivative(k), k):
                    out[c] = None
                for q in polys[i + 1 :]:
                    for c in psc_sequence(r, q, k):
                        out[c] = None
    return [q for q in out if not q.is_zero()]


def global_projection(polys, vars: VarOrder, kind: str = MCCALLUM) -> tuple:
    """Projection factor sets (W_1, ..., W_n) for the whole space."""
    step = {MCCALLUM: mccallum_step, HONG: hong_step}[kind]
    n = vars.n
    levels = [()] * n
    Q = list(polys)
    for k in range(n, 1, -1):
        top, rest = level_split(factor_basis(Q), k)
        levels[k - 1] = tuple(top)
        Q = rest + step(top, k)
    levels[0] = tuple(level_split(factor_basis(Q), 1)[0])
    return tuple(tuple(sort_polys(w)) for w in levels)


class _Lifter:
    def __init__(self, system, levels, kind, n):
        self.system = system
        self.levels = levels
        self.kind = kind
        self.n = n
        self.cells = 0

    def lift(self, point: SamplePoint):
        k = len(point)
        level = k + 1
        found = []  # (value, RootFunction)
        for f in self.levels[k]:
            try:
                roots = roots_at(f, point)
            except IdenticallyZero:
                if self.kind == MCCALLUM and not all(point.sections):
                    raise NotWellOriented(f"{f} vanishes identically over a cell of positive dimension")
                continue
            for i, r in enumerate(roots):
                found.append((r, RootFunction(f, i + 1)))
        distinct = []
        for r, rf in sorted(found, key=lambda t: _key(t[0])):
            if distinct and compare(distinct[-1][0], r) == 0:
                distinct[-1][2].append(rf.poly)
                continue
            distinct.append((r, rf, [rf.poly]))
        branches = []
        lo_val, lo_fn = NEG_INF, NEG_INF
        for r, rf, zeros in distinct + [(POS_INF, POS_INF, [])]:
            sample = simplest_between(lo_val, r)
            branches.append((Sector(level, lo_fn, rf), self._sub(point.extend(sample, False))))
            if rf is not POS_INF:
                branches.append((Section(level, rf), self._sub(point.extend(r, True, zeros))))
            lo_val, lo_fn = r, rf
        return Cells(level, tuple(branches))

    def _sub(self, point):
        if len(point) == self.n:
            self.cells += 1
            return evaluate(self.system, point)
        return self.lift(point)


def _key(x):
    from .realalg import sort_key

    return sort_key(x)


def cad_solve(system, vars: VarOrder | None = None, kind: str = MCCALLUM):
    """CAD of R^n sign-invariant for the system's polynomials; truth per cell
    comes from evaluating the system at the cell's sample."""
    vars = vars or _infer_vars(system)
    start = time.perf_counter()
    stats = Stats(method="cad-mc" if kind == MCCALLUM else "cad-hong")
    polys = polys_of(system)
    while True:
        levels = global_projection(polys, vars, kind)
        lifter = _Lifter(system, levels, kind, vars.n)
        try:
            raw = lifter.lift(SamplePoint())
            break
        except NotWellOriented:
            if kind == HONG:
                raise
            stats.well_oriented = False
            kind = HONG
            stats.method = "cad-mc+hong"
    for k, W in enumerate(levels, start=1):
        stats.level_polys[k] = dict.fromkeys(W)
    stats.cells = lifter.cells
    stats.atomic_cells = count_cells(raw)
    F = normalize_caf(raw)
    stats.true_cells = count_cells(F, include_false=False)
    stats.time_ms = (time.perf_counter() - start) * 1000
    return F, stats
