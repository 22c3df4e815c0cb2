"""Sampling equivalence check between a system and a cylindrical formula.

Points come from three sources: a uniform grid over a box, uniformly random
rationals, and points steered onto or next to the cell bounds of the formula
(exactly on a bound when it is rational, 2^-20 away on either side otherwise).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from flint import fmpq

from .formula import And, Atom, Cells, Or, RootFunction, Section, constraint_holds, eval_caf
from .poly import VarOrder
from .realalg import SamplePoint, chain, roots_at

EPS = fmpq(1, 2 ** 20)


@dataclass
class OracleReport:
    passed: bool
    checked: int
    point: tuple | None = None
    expected: bool | None = None
    got: bool | None = None

    def __str__(self):
        if self.passed:
            return f"oracle: pass ({self.checked} points)"
        pt = ", ".join(str(c) for c in self.point)
        return f"oracle: FAIL at ({pt}): system {self.expected}, formula {self.got}"


def eval_system_rational(f, values) -> bool:
    if f is True or f is False:
        return f
    if isinstance(f, Atom):
        v = f.poly(*values)
        return f.holds((v > 0) - (v < 0))
    if isinstance(f, And):
        return all(eval_system_rational(a, values) for a in f.args)
    if isinstance(f, Or):
        return any(eval_system_rational(a, values) for a in f.args)
    raise TypeError(f"not a formula: {f!r}")


def _near(value) -> list:
    """Rationals on and around a bound value."""
    if isinstance(value, fmpq):
        return [value, value - EPS, value + EPS]
    value.refine(EPS / 16)
    mid = (value.lo + value.hi) / 2
    mid = _round(mid)
    return [mid - EPS, mid + EPS]


def _round(q: fmpq) -> fmpq:
    den = 2 ** 24
    return fmpq(int((q * den).floor()), den)


def _bound_values(F, base: SamplePoint) -> list:
    """Values of all bounds of a node at ``base``."""
    out = []
    if not isinstance(F, Cells):
        return out
    for c, _ in F.branches:
        bounds = [c.bound] if isinstance(c, Section) else [c.lower, c.upper]
        for b in bounds:
            if isinstance(b, RootFunction):
                try:
                    roots = roots_at(b.poly, base)
                except Exception:
                    continue
                if 1 <= b.index <= len(roots):
                    out.append(roots[b.index - 1])
    return out


def _box_radius(F) -> fmpq:
    R = fmpq(2)
    for v in _bound_values(F, SamplePoint()):
        lo = v if isinstance(v, fmpq) else v.lo
        hi = v if isinstance(v, fmpq) else v.hi
        R = max(R, 2 * abs(lo) + 1, 2 * abs(hi) + 1)
    return fmpq(int(R.ceil()))


def _random_rat(rng: random.Random, R: fmpq) -> fmpq:
    r = rng.random()
    if r < 0.15:
        return fmpq(rng.randint(-int(R), int(R)))
    if r < 0.3:
        return fmpq(rng.randint(-4 * int(R), 4 * int(R)), 4)
    den = 2 ** 12
    span = int(R * den)
    return fmpq(rng.randint(-span, span), den)


def _steered_point(F, n, rng, R) -> tuple:
    """Descend the formula, choosing each coordinate on/near a bound or at random."""
    point = SamplePoint()
    node = F
    for level in range(1, n + 1):
        candidates = []
        if isinstance(node, Cells) and node.level == level:
            for v in _bound_values(node, point):
                candidates.extend(_near(v))
        if candidates and rng.random() < 0.7:
            x = rng.choice(candidates)
        else:
            x = _random_rat(rng, R)
        point = point.extend(x, False)
        node = _descend(node, point, level)
    return point.coords


def _descend(node, point, level):
    if not isinstance(node, Cells) or node.level != level:
        return node
    for c, sub in node.branches:
        if constraint_holds(c, point):
            return sub
    return None


def sample_points(F, n: int, count: int, seed: int = 0) -> list:
    """Deterministic list of ``count`` rational points in R^n."""
    rng = random.Random(seed)
    R = _box_radius(F) if isinstance(F, Cells) else fmpq(4)
    pts = []
    grid_budget = count // 4
    m = max(2, int(round(grid_budget ** (1.0 / n)))) if grid_budget else 0
    if m:
        axis = [-R + 2 * R * fmpq(i, m - 1) for i in range(m)]
        idx = [0] * n
        while len(pts) < grid_budget:
            pts.append(tuple(axis[i] for i in idx))
            j = 0
            while j < n:
                idx[j] += 1
                if idx[j] < m:
                    break
                idx[j] = 0
                j += 1
            if j == n:
                break
    # every level-1 bound, perturbed, with random tails
    if isinstance(F, Cells):
        for v in _bound_values(F, SamplePoint()):
            for x in _near(v):
                pts.append((x,) + tuple(_random_rat(rng, R) for _ in range(n - 1)))
    while len(pts) < count:
        if isinstance(F, Cells) and rng.random() < 0.6:
            pts.append(_steered_point(F, n, rng, R))
        else:
            pts.append(tuple(_random_rat(rng, R) for _ in range(n)))
    return pts[:count] if len(pts) > count else pts


def oracle_check(system, F, vars: VarOrder, count: int = 10_000, seed: int = 0, points=None) -> OracleReport:
    """Compare the system and the formula on sampled rational points."""
    pts = points if points is not None else sample_points(F, vars.n, count, seed)
    for k, p in enumerate(pts):
        expected = eval_system_rational(system, p)
        got = eval_caf(F, chain(p))
        if expected != got:
            return OracleReport(False, k + 1, tuple(p), expected, got)
    return OracleReport(True, len(pts))
