"""Projection operators that only keep what matters near one sample point.

Both operators take irreducible polynomials of level k+1 and a point of
length k, and return polynomials in x_1..x_k whose sign-invariance on a cell
through the point guarantees delineability of the inputs over that cell.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import (
    Poly,
    coeffs_in,
    discriminant,
    factor_basis,
    level_split,
    resultant,
    sort_polys,
    truncated_psc,
)
from .realalg import IdenticallyZero, as_point, roots_at, sign_at


def _has_real_root(p: Poly, point) -> bool:
    try:
        return bool(roots_at(p, point))
    except IdenticallyZero:
        return True


def _nonzero_const(q: Poly) -> bool:
    return q.is_constant() and not q.is_zero()


def _add(out: dict, *polys):
    for q in polys:
        if not q.is_zero():
            out[q] = None


def lproj_mc(polys, point) -> list:
    """Local projection of level-(k+1) irreducibles derived from the McCallum operator."""
    point = as_point(point)
    k = len(point)
    v = k + 1
    polys = list(polys)
    in_r = [_has_real_root(p, point) for p in polys]
    out: dict = {}
    for i, p in enumerate(polys):
        cs = coeffs_in(p, v)
        _add(out, cs[0])
        if k > 1:
            signs = [sign_at(c, point) for c in cs]
            if all(s == 0 for s in signs):
                _add(out, *cs[1:])
                continue
            if signs[0] == 0 and not any(_nonzero_const(c) for c in cs[1:]):
                live = [c for c, s in zip(cs[1:], signs[1:]) if s != 0]
                _add(out, min(live, key=lambda c: (c.total_degree(), c.sort_key())))
        if p.degree(v) >= 2:
            _add(out, discriminant(p, v))
        if in_r[i]:
            for j in range(i + 1, len(polys)):
                if in_r[j]:
                    _add(out, resultant(p, polys[j], v))
    return list(out)


def lproj_h(polys, point) -> list:
    """Local projection of level-(k+1) irreducibles derived from the Hong operator."""
    point = as_point(point)
    k = len(point)
    v = k + 1
    polys = list(polys)
    in_r = [_has_real_root(p, point) for p in polys]
    out: dict = {}
    for i, p in enumerate(polys):
        cs = coeffs_in(p, v)
        _add(out, cs[0])
        signs = [sign_at(c, point) for c in cs]
        if all(s == 0 for s in signs):
            _add(out, *cs[1:])
            continue
        r = p
        if signs[0] == 0:
            top = next(j for j, s in enumerate(signs) if s != 0)
            _add(out, *cs[1 : top + 1])
            r = sum((c * p.vars.var(v) ** (len(cs) - 1 - j) for j, c in enumerate(cs) if j >= top), p.vars.const(0))
        _add(out, *truncated_psc(r, r.derivative(v), v, point))
        if in_r[i]:
            for j in range(i + 1, len(polys)):
                if in_r[j]:
                    _add(out, *truncated_psc(r, polys[j], v, point))
    return list(out)


@dataclass
class LocalProjection:
    """Projection sequence W_1..W_n; ``levels[k-1]`` holds W_k."""

    levels: tuple
    iterations: int
    restarted: bool

    def __getitem__(self, k: int) -> tuple:
        return self.levels[k - 1]

    def __len__(self):
        return len(self.levels)

    def all_polys(self) -> list:
        return [p for W in self.levels for p in W]


class ProjectionError(AssertionError):
    pass


def local_projection(polys, point, skip: int = 0, hong_only: bool = False, stats=None) -> LocalProjection:
    """Local projection sequence for ``polys`` at a point of length n-1.

    With ``skip = m`` the first m coordinates are known to come from
    single-point intervals, so levels 1..m are left empty and nothing is
    projected below level m+1.
    """
    point = as_point(point)
    n = len(point) + 1
    if skip > point.section_prefix():
        raise ValueError(f"cannot skip {skip} levels: only {point.section_prefix()} leading section coordinates")
    P = [p for p in polys if not p.is_constant()]
    for p in P:
        if p.level > n:
            raise ProjectionError(f"polynomial of level {p.level} above {n}")
    W = [()] * n
    wo = True
    Q = P
    k = n - 1
    iterations = 0
    floor = max(skip, 0)
    while k >= 1 and k >= floor:
        iterations += 1
        if iterations > max(2 * n - 2, 1):
            raise ProjectionError("local projection did not terminate in 2n-2 rounds")
        top, Q = level_split(factor_basis(Q), k + 1)
        W[k] = tuple(top)
        if k == floor:
            break
        sub = point.prefix(k)
        if wo and 1 < k < n - 1 and any(_identically_zero(p, sub) for p in top):
            wo = False
            Q = P
            k = n - 1
            continue
        if hong_only or not (wo or k <= 2):
            Q = Q + lproj_h(top, sub)
        else:
            Q = Q + lproj_mc(top, sub)
        k -= 1
    if floor == 0:
        W[0] = tuple(level_split(factor_basis(Q), 1)[0])
    if stats is not None:
        stats.projection(W, iterations, not wo)
    return LocalProjection(tuple(tuple(sort_polys(w)) for w in W), iterations, not wo)


def _identically_zero(p: Poly, point) -> bool:
    v = len(point) + 1
    return all(sign_at(c, point) == 0 for c in coeffs_in(p, v))
