"""Quantifier-free systems, their normal forms, partial evaluation at sample
points and the cylindrical solution formulas produced by the solvers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .poly import Poly, VarOrder, irreducible_factors, render
from .realalg import (
    NEG_INF,
    POS_INF,
    IdenticallyZero,
    SamplePoint,
    as_point,
    compare,
    number_str,
    roots_at,
    sign_at,
)

RELATIONS = ("<", "<=", "=", "!=", ">=", ">")

_HOLDS = {
    "<": lambda s: s < 0,
    "<=": lambda s: s <= 0,
    "=": lambda s: s == 0,
    "!=": lambda s: s != 0,
    ">=": lambda s: s >= 0,
    ">": lambda s: s > 0,
}

NEGATED = {"<": ">=", "<=": ">", "=": "!=", "!=": "=", ">=": "<", ">": "<="}


class FormulaError(ValueError):
    pass


class ResourceLimit(RuntimeError):
    """A configured size or step budget was exceeded."""


@dataclass(frozen=True)
class Atom:
    """``poly rel 0``."""

    poly: Poly
    rel: str

    def __post_init__(self):
        if self.rel not in _HOLDS:
            raise FormulaError(f"unknown relation {self.rel!r}")

    def holds(self, sign: int) -> bool:
        return _HOLDS[self.rel](sign)

    def negate(self) -> "Atom":
        return Atom(self.poly, NEGATED[self.rel])

    def __str__(self):
        return f"{render(self.poly)} {self.rel} 0"


@dataclass(frozen=True)
class And:
    args: tuple

    def __str__(self):
        return " and ".join(_wrap(a) for a in self.args)


@dataclass(frozen=True)
class Or:
    args: tuple

    def __str__(self):
        return " or ".join(_wrap(a) for a in self.args)


def _wrap(f) -> str:
    if isinstance(f, (And, Or)):
        return f"({f})"
    return formula_str(f)


def formula_str(f) -> str:
    if f is True:
        return "true"
    if f is False:
        return "false"
    return str(f)


def conj(*args):
    return _flatten(And, args)


def disj(*args):
    return _flatten(Or, args)


def _flatten(kind, args):
    unit, zero = (True, False) if kind is And else (False, True)
    out = []
    for a in args:
        if a is unit:
            continue
        if a is zero:
            return zero
        if isinstance(a, kind):
            out.extend(a.args)
        else:
            out.append(a)
    out = list(dict.fromkeys(out))
    if not out:
        return unit
    if len(out) == 1:
        return out[0]
    return kind(tuple(out))


def negate(f):
    """Negation pushed down to the atoms."""
    if f is True:
        return False
    if f is False:
        return True
    if isinstance(f, Atom):
        return f.negate()
    if isinstance(f, And):
        return disj(*(negate(a) for a in f.args))
    if isinstance(f, Or):
        return conj(*(negate(a) for a in f.args))
    raise FormulaError(f"not a formula: {f!r}")


def atoms(f) -> list:
    if isinstance(f, Atom):
        return [f]
    if isinstance(f, (And, Or)):
        out = []
        for a in f.args:
            out.extend(atoms(a))
        return list(dict.fromkeys(out))
    return []


def polys_of(f) -> list:
    return list(dict.fromkeys(a.poly for a in atoms(f)))


def max_level(f) -> int:
    return max((a.poly.level for a in atoms(f)), default=0)


# normal forms

def _clauses(f, outer, max_terms):
    """Clause list for a normal form whose top connective is ``outer``.

    Each clause is a tuple of atoms read with the dual connective.  Returns
    ``[]`` for the neutral constant of ``outer`` and ``[()]`` for its absorbing one.
    """
    inner = And if outer is Or else Or
    if f is True or f is False:
        absorbing = f is (outer is Or)
        return [()] if absorbing else []
    if isinstance(f, Atom):
        return [(f,)]
    if isinstance(f, outer):
        out = []
        for a in f.args:
            out.extend(_clauses(a, outer, max_terms))
        return _absorb(out, max_terms)
    if isinstance(f, inner):
        parts = [_clauses(a, outer, max_terms) for a in f.args]
        out = []
        for combo in product(*parts):
            merged = tuple(dict.fromkeys(x for c in combo for x in c))
            out.append(merged)
            if max_terms is not None and len(out) > 4 * max_terms:
                out = _absorb(out, max_terms)
        return _absorb(out, max_terms)
    raise FormulaError(f"not a formula: {f!r}")


def _absorb(clauses, max_terms):
    uniq = list(dict.fromkeys(clauses))
    sets = [frozenset(c) for c in uniq]
    keep = []
    for i, s in enumerate(sets):
        dominated = False
        for j, t in enumerate(sets):
            if j != i and t <= s and (t != s or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(uniq[i])
    if max_terms is not None and sum(len(c) for c in keep) > max_terms:
        raise ResourceLimit(f"normal form exceeds {max_terms} atom occurrences")
    return keep


def _build(clauses, outer):
    inner = And if outer is Or else Or
    mk_in = conj if inner is And else disj
    mk_out = disj if outer is Or else conj
    return mk_out(*(mk_in(*c) for c in clauses)) if clauses else (outer is And)


def to_dnf(f, max_atoms=None):
    """Disjunction of conjunctions of atoms; same set of atoms, redundancy removed by absorption."""
    return _build(_clauses(f, Or, max_atoms), Or)


def to_cnf(f, max_atoms=None):
    """Conjunction of disjunctions of atoms."""
    return _build(_clauses(f, And, max_atoms), And)


# evaluation

def evaluate(f, point) -> bool:
    """Truth value of a formula at a full-dimensional point (rational or algebraic)."""
    point = as_point(point)
    if f is True or f is False:
        return f
    if isinstance(f, Atom):
        return f.holds(sign_at(f.poly, point))
    if isinstance(f, And):
        return all(evaluate(a, point) for a in f.args)
    if isinstance(f, Or):
        return any(evaluate(a, point) for a in f.args)
    raise FormulaError(f"not a formula: {f!r}")


eval_system = evaluate


def peval(f, point):
    """Try to decide ``f`` on the cylinder over a partial sample point.

    Returns ``None`` when undecided, else ``(truth, witnesses)`` where the
    witnesses are polynomials whose signs at the point alone justify the
    answer.  An atom is decided when its polynomial has level within the point,
    or when one of its irreducible factors of low enough level vanishes there.
    A true disjunction reports the smallest witness sets among its true
    members (merged when tied); a false conjunction reports its first false
    member.
    """
    point = as_point(point)
    k = len(point)
    if f is True or f is False:
        return (f, ())
    if isinstance(f, Atom):
        p = f.poly
        if p.level <= k:
            s = sign_at(p, point)
            if s != 0:
                return (f.holds(s), (p,))
        for g in irreducible_factors(p):
            if g.level <= k and sign_at(g, point) == 0:
                return (f.holds(0), (g,))
        if p.level <= k:
            return (f.holds(0), (p,))
        return None
    if isinstance(f, (And, Or)):
        results = []
        for a in f.args:
            r = peval(a, point)
            if r is None:
                results.append(None)
            elif isinstance(f, And) and r[0] is False:
                return r
            else:
                results.append(r)
        decisive = False if isinstance(f, And) else True
        hits = [r for r in results if r is not None and r[0] is decisive]
        if hits:
            best = min(len(r[1]) for r in hits)
            return (decisive, _merge(r[1] for r in hits if len(r[1]) == best))
        if any(r is None for r in results):
            return None
        return (not decisive, _merge(r[1] for r in results))
    raise FormulaError(f"not a formula: {f!r}")


def _merge(groups) -> tuple:
    out = {}
    for g in groups:
        for p in g:
            out[p] = None
    return tuple(out)


# cylindrical solution formulas

@dataclass(frozen=True)
class RootFunction:
    """The ``index``-th real root (1-based, distinct roots) of ``poly`` in its main variable."""

    poly: Poly
    index: int

    @property
    def level(self) -> int:
        return self.poly.level

    def value(self, base: SamplePoint):
        roots = roots_at(self.poly, base)
        if not 1 <= self.index <= len(roots):
            raise UndefinedRoot(f"{self} undefined at {base}")
        return roots[self.index - 1]

    def __str__(self):
        return root_str(self)


class UndefinedRoot(FormulaError):
    pass


def root_str(r) -> str:
    if r is NEG_INF or r is POS_INF:
        return str(r)
    p = r.poly
    if p.degree(p.level) == 1 and p.level == 1:
        c = p.to_univariate().coeffs()
        return number_str(-c[0] / c[1])
    return f"Root[{render(p)}, {r.index}, {p.vars.name(p.level)}]"


@dataclass(frozen=True)
class Section:
    """x_level = bound."""

    level: int
    bound: RootFunction


@dataclass(frozen=True)
class Sector:
    """lower (<|<=) x_level (<|<=) upper; bounds may be the infinities."""

    level: int
    lower: object
    upper: object
    lower_weak: bool = False
    upper_weak: bool = False


@dataclass(frozen=True)
class Cells:
    """Cylindrical split of one level: ordered (constraint, subformula) pairs.

    A subformula is ``True``, ``False`` or a :class:`Cells` of the next level.
    """

    level: int
    branches: tuple


def constraint_str(c, vars: VarOrder) -> str:
    name = vars.name(c.level)
    if isinstance(c, Section):
        return f"{name} = {root_str(c.bound)}"
    parts = []
    if c.lower is not NEG_INF:
        parts.append(f"{root_str(c.lower)} {'<=' if c.lower_weak else '<'} ")
    parts.append(name)
    if c.upper is not POS_INF:
        parts.append(f" {'<=' if c.upper_weak else '<'} {root_str(c.upper)}")
    if len(parts) == 1:
        return "true"
    return "".join(parts)


def caf_str(F, vars: VarOrder | None = None) -> str:
    """Text rendering as a disjunction of conjunctions, one nesting per level."""
    if F is True or F is False:
        return "true" if F else "false"
    vars = vars or _vars_of(F)
    pieces = []
    for c, sub in F.branches:
        if sub is False:
            continue
        head = constraint_str(c, vars)
        if sub is True:
            pieces.append(head)
        else:
            inner = caf_str(sub, vars)
            if inner == "false":
                continue
            if head == "true":
                pieces.append(inner)
            else:
                pieces.append(f"{head} and ({inner})" if " or " in inner else f"{head} and {inner}")
    if not pieces:
        return "false"
    if len(pieces) == 1:
        return pieces[0]
    return " or ".join(f"({p})" if " or " in p or " and " in p else p for p in pieces)


def _vars_of(F):
    for c, sub in F.branches:
        bound = c.bound if isinstance(c, Section) else (c.lower if c.lower is not NEG_INF else c.upper)
        if bound is not NEG_INF and bound is not POS_INF:
            return bound.poly.vars
        if isinstance(sub, Cells):
            return _vars_of(sub)
    raise FormulaError("cannot infer the variables of a bound-free formula; pass them explicitly")


def caf_to_json(F):
    def bound(b):
        if b is NEG_INF:
            return "-oo"
        if b is POS_INF:
            return "+oo"
        return {"poly": render(b.poly), "index": b.index, "level": b.level}

    if F is True or F is False:
        return F
    out = []
    for c, sub in F.branches:
        if isinstance(c, Section):
            cj = {"kind": "section", "level": c.level, "bound": bound(c.bound)}
        else:
            cj = {
                "kind": "sector",
                "level": c.level,
                "lower": bound(c.lower),
                "upper": bound(c.upper),
                "lower_weak": c.lower_weak,
                "upper_weak": c.upper_weak,
            }
        out.append({"constraint": cj, "then": caf_to_json(sub)})
    return {"level": F.level, "cells": out}


def _value(bound, base):
    if bound is NEG_INF or bound is POS_INF:
        return bound
    return bound.value(base)


def constraint_holds(c, point: SamplePoint, strict=False) -> bool:
    """Whether coordinate ``c.level`` of the point satisfies the constraint."""
    base = point.prefix(c.level - 1)
    x = point.coords[c.level - 1]
    try:
        if isinstance(c, Section):
            return compare(x, c.bound.value(base)) == 0
        lo = _value(c.lower, base)
        hi = _value(c.upper, base)
    except (UndefinedRoot, IdenticallyZero):
        if strict:
            raise
        return False
    s1 = compare(lo, x)
    s2 = compare(x, hi)
    return (s1 < 0 or (c.lower_weak and s1 == 0)) and (s2 < 0 or (c.upper_weak and s2 == 0))


def eval_caf(F, point, strict=False) -> bool:
    """Truth of a cylindrical formula at a point."""
    point = as_point(point)
    while True:
        if F is True or F is False:
            return F
        for c, sub in F.branches:
            if constraint_holds(c, point, strict):
                F = sub
                break
        else:
            return False


def split_weak(c) -> list:
    """A sector with closed ends as the equivalent section/open-sector pieces, in order."""
    if isinstance(c, Section) or not (c.lower_weak or c.upper_weak):
        return [c]
    pieces = []
    if c.lower_weak:
        pieces.append(Section(c.level, c.lower))
    pieces.append(Sector(c.level, c.lower, c.upper))
    if c.upper_weak:
        pieces.append(Section(c.level, c.upper))
    return pieces


def normalize_caf(F, prune=True):
    """Split closed-ended sectors into sections and open sectors; optionally
    drop branches whose subformula is false."""
    if F is True or F is False:
        return F
    out = []
    for c, sub in F.branches:
        sub = normalize_caf(sub, prune)
        if prune and sub is False:
            continue
        for piece in split_weak(c):
            out.append((piece, sub))
    if not out:
        return False
    return Cells(F.level, tuple(out))


def count_cells(F, include_false=True) -> int:
    """Number of truth-valued leaves; without ``include_false`` only true leaves count."""
    if F is True:
        return 1
    if F is False:
        return 1 if include_false else 0
    return sum(count_cells(sub, include_false) for _, sub in F.branches)


def caf_polys(F) -> list:
    out = {}

    def walk(G):
        if not isinstance(G, Cells):
            return
        for c, sub in G.branches:
            bounds = [c.bound] if isinstance(c, Section) else [c.lower, c.upper]
            for b in bounds:
                if isinstance(b, RootFunction):
                    out[b.poly] = None
            walk(sub)

    walk(F)
    return list(out)
