"""Multivariate polynomials over Q with a fixed variable order.

Variables are numbered 1..n; the level of a polynomial is the largest index of
a variable it really depends on.  Arithmetic, factorization and resultants are
delegated to FLINT; the principal subresultant coefficients come from a
subresultant remainder sequence written here.
"""

from __future__ import annotations

import math
from functools import lru_cache

from flint import fmpq, fmpq_mpoly_ctx, fmpq_poly

from .exact import rat


class PolyError(ValueError):
    pass


class VarOrder:
    """An ordered tuple of variable names, x_1 < x_2 < ... < x_n."""

    __slots__ = ("names", "ctx", "_index")
    _registry: dict = {}

    def __new__(cls, names):
        names = tuple(names)
        cached = cls._registry.get(names)
        if cached is not None:
            return cached
        if not names:
            raise PolyError("need at least one variable")
        if len(set(names)) != len(names):
            raise PolyError(f"duplicate variable names in {names}")
        for name in names:
            if not name.isidentifier():
                raise PolyError(f"bad variable name {name!r}")
        self = object.__new__(cls)
        self.names = names
        self.ctx = fmpq_mpoly_ctx.get(names, "lex")
        self._index = {name: i + 1 for i, name in enumerate(names)}
        cls._registry[names] = self
        return self

    def __getnewargs__(self):
        return (self.names,)

    def __len__(self):
        return len(self.names)

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PolyError(f"unknown variable {name!r}") from None

    def name(self, i: int) -> str:
        return self.names[i - 1]

    def var(self, i) -> "Poly":
        if isinstance(i, str):
            i = self.index(i)
        return Poly(self.ctx.gens()[i - 1], self)

    def const(self, c) -> "Poly":
        return Poly(self.ctx.from_dict({(0,) * self.n: rat(c)}) if c != 0 else self.ctx.from_dict({}), self)

    def from_dict(self, terms: dict) -> "Poly":
        return Poly(self.ctx.from_dict({tuple(e): rat(c) for e, c in terms.items() if c != 0}), self)

    def __repr__(self):
        return f"VarOrder({list(self.names)})"


class Poly:
    """Immutable, hashable wrapper around a FLINT multivariate polynomial."""

    __slots__ = ("raw", "vars", "_hash", "_level", "_key", "__weakref__")

    def __init__(self, raw, vars: VarOrder):
        self.raw = raw
        self.vars = vars
        self._hash = None
        self._level = None
        self._key = None

    # construction helpers
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars is not self.vars:
                raise PolyError("polynomials over different variable orders")
            return other
        return self.vars.const(rat(other))

    # structure
    @property
    def level(self) -> int:
        if self._level is None:
            degs = self.raw.degrees()
            lev = 0
            for i, d in enumerate(degs):
                if d > 0:
                    lev = i + 1
            self._level = lev
        return self._level

    def degree(self, i) -> int:
        """Degree in variable ``i`` (index or name); -1 for the zero polynomial."""
        if isinstance(i, str):
            i = self.vars.index(i)
        if self.raw.is_zero():
            return -1
        return int(self.raw.degrees()[i - 1])

    def total_degree(self) -> int:
        if self.raw.is_zero():
            return -1
        return max(sum(m) for m in self.raw.monoms())

    def is_zero(self) -> bool:
        return self.raw.is_zero()

    def is_constant(self) -> bool:
        return self.raw.is_constant()

    def constant_value(self) -> fmpq:
        if not self.raw.is_constant():
            raise PolyError("not a constant")
        if self.raw.is_zero():
            return fmpq(0)
        return self.raw.coeffs()[0]

    def terms(self) -> list:
        return list(zip(self.raw.monoms(), self.raw.coeffs()))

    def variables(self) -> tuple:
        """Indices of the variables that occur."""
        return tuple(i + 1 for i, d in enumerate(self.raw.degrees()) if d > 0)

    def sort_key(self):
        if self._key is None:
            terms = sorted(self.terms(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
            self._key = (
                self.level,
                self.total_degree(),
                tuple((sum(m), m) for m, _ in terms),
                tuple(c for _, c in terms),
            )
        return self._key

    # arithmetic
    def __add__(self, other):
        return Poly(self.raw + self._lift(other).raw, self.vars)

    __radd__ = __add__

    def __sub__(self, other):
        return Poly(self.raw - self._lift(other).raw, self.vars)

    def __rsub__(self, other):
        return Poly(self._lift(other).raw - self.raw, self.vars)

    def __mul__(self, other):
        return Poly(self.raw * self._lift(other).raw, self.vars)

    __rmul__ = __mul__

    def __neg__(self):
        return Poly(-self.raw, self.vars)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise PolyError("exponent must be a non-negative int")
        return Poly(self.raw ** e, self.vars)

    def exact_div(self, other) -> "Poly":
        return Poly(self.raw / self._lift(other).raw, self.vars)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars is other.vars and self.raw == other.raw
        if isinstance(other, (int, fmpq)):
            return self.raw == self.vars.const(other).raw
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars.names, tuple(self.raw.monoms()), tuple(self.raw.coeffs())))
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    # evaluation
    def __call__(self, *values):
        """Evaluate at rationals for x_1, x_2, ...; missing trailing values must not be needed."""
        if len(values) < self.level:
            raise PolyError(f"need {self.level} values, got {len(values)}")
        vals = [rat(v) for v in values[: self.vars.n]]
        vals += [fmpq(0)] * (self.vars.n - len(vals))
        return self.raw(*vals)

    def subs(self, values: dict) -> "Poly":
        """Substitute rationals for some variables (keys are indices or names)."""
        mapping = {}
        for k, v in values.items():
            name = k if isinstance(k, str) else self.vars.name(k)
            mapping[name] = rat(v)
        if not mapping:
            return self
        return Poly(self.raw.subs(mapping), self.vars)

    def derivative(self, i) -> "Poly":
        if isinstance(i, str):
            i = self.vars.index(i)
        return Poly(self.raw.derivative(self.vars.name(i)), self.vars)

    def to_univariate(self) -> fmpq_poly:
        """The polynomial as an ``fmpq_poly`` in its only variable (or a constant)."""
        occurring = self.variables()
        if len(occurring) > 1:
            raise PolyError("polynomial is not univariate")
        if not occurring:
            return fmpq_poly([self.constant_value()])
        i = occurring[0] - 1
        coeffs = [fmpq(0)] * (self.raw.degrees()[i] + 1)
        for m, c in self.terms():
            coeffs[m[i]] = c
        return fmpq_poly(coeffs)

    # rendering
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Poly({render(self)!r})"


def render(p: Poly) -> str:
    """Canonical text: graded order of terms, ``*`` for products, ``^`` for powers."""
    if p.is_zero():
        return "0"
    terms = sorted(p.terms(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    out = []
    for m, c in terms:
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(p.vars.names[i])
            elif e > 1:
                factors.append(f"{p.vars.names[i]}^{e}")
        neg = c < 0
        a = -c if neg else c
        if not factors:
            body = str(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = str(a) + "*" + "*".join(factors)
        if not out:
            out.append("-" + body if neg else body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


def sort_polys(polys) -> list:
    return sorted(polys, key=Poly.sort_key)


# coefficients with respect to one variable

@lru_cache(maxsize=None)
def _coeff_table(p: Poly, i: int) -> tuple:
    groups: dict = {}
    for m, c in p.terms():
        d = m[i - 1]
        rest = m[: i - 1] + (0,) + m[i:]
        groups.setdefault(d, {})[rest] = c
    deg = max(groups) if groups else -1
    ctx = p.vars.ctx
    return tuple(Poly(ctx.from_dict(groups.get(d, {})), p.vars) for d in range(deg, -1, -1))


def coeffs_in(p: Poly, i) -> list:
    """Coefficients of ``p`` as a polynomial in variable ``i``, highest degree first.

    The zero polynomial yields an empty list.
    """
    if isinstance(i, str):
        i = p.vars.index(i)
    return list(_coeff_table(p, i))


def leading_coeff(p: Poly, i) -> Poly:
    cs = coeffs_in(p, i)
    if not cs:
        return p
    return cs[0]


def reductum(p: Poly, i) -> Poly:
    """``p`` with its leading term in variable ``i`` removed."""
    if isinstance(i, str):
        i = p.vars.index(i)
    d = p.degree(i)
    if d < 0:
        return p
    lt = leading_coeff(p, i) * p.vars.var(i) ** d
    return p - lt


def derivative(p: Poly, i) -> Poly:
    return p.derivative(i)


# resultants and subresultants

@lru_cache(maxsize=None)
def _resultant(f: Poly, g: Poly, i: int) -> Poly:
    return Poly(f.raw.resultant(g.raw, f.vars.name(i)), f.vars)


def resultant(f: Poly, g: Poly, i) -> Poly:
    """Sylvester resultant of ``f`` and ``g`` in variable ``i``, rows of ``f`` first."""
    if isinstance(i, str):
        i = f.vars.index(i)
    if f.vars is not g.vars:
        raise PolyError("polynomials over different variable orders")
    if f.is_zero() or g.is_zero():
        raise PolyError("resultant with the zero polynomial")
    if f.degree(i) < 1 and g.degree(i) < 1:
        raise PolyError("resultant needs positive degree in the eliminated variable")
    return _resultant(f, g, i)


def discriminant(f: Poly, i) -> Poly:
    """``res(f, df/dx_i)``, with no division by the leading coefficient."""
    if isinstance(i, str):
        i = f.vars.index(i)
    if f.degree(i) < 2:
        raise PolyError("discriminant needs degree at least 2")
    return resultant(f, f.derivative(i), i)


def _to_dense(p: Poly, i: int) -> list:
    """Coefficient list of raw FLINT polys, lowest degree first."""
    return [c.raw for c in reversed(coeffs_in(p, i))]


def _trim(a: list) -> list:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) a mod b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    steps = len(a) - 1 - db + 1
    if steps <= 0:
        return a
    for _ in range(steps):
        if not a or len(a) - 1 < db:
            # degree dropped early; keep the power of lc(b) honest
            a = [c * lb for c in a]
            continue
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for j, c in enumerate(b):
            a[j + shift] = a[j + shift] - la * c
        a.pop()
        _trim(a)
    return _trim(a)


def _scale(a: list, c) -> list:
    return [x * c for x in a]


def _divide(a: list, c) -> list:
    return [x / c for x in a]


def _subresultants(P: list, Q: list) -> dict:
    """Nonzero subresultant polynomials S_j for deg P >= deg Q >= 1.

    Returns a map j -> dense coefficient list.  S_j is the determinant
    polynomial with the shifts of P as the upper block of rows.
    """
    p, q = len(P) - 1, len(Q) - 1
    out = {}
    s = Q[-1] ** (p - q)
    A = Q
    B = _prem(P, [-c for c in Q])
    if p > q:
        out[q] = _scale(Q, Q[-1] ** (p - q - 1))
    while True:
        d = len(A) - 1
        if not B:
            return out
        e = len(B) - 1
        out[d - 1] = B
        delta = d - e
        if delta > 1:
            C = _divide(_scale(B, B[-1] ** (delta - 1)), s ** (delta - 1))
            out[e] = C
        else:
            C = B
        if e == 0:
            return out
        B = _divide(_prem(A, [-c for c in B]), s ** delta * A[-1])
        A = C
        s = A[-1]


@lru_cache(maxsize=None)
def _subres_table(f: Poly, g: Poly, i: int) -> dict:
    P, Q = _to_dense(f, i), _to_dense(g, i)
    if len(P) < len(Q):
        P, Q = Q, P
    return _subresultants(P, Q)


@lru_cache(maxsize=None)
def _psc(f: Poly, g: Poly, i: int) -> tuple:
    P, Q = _to_dense(f, i), _to_dense(g, i)
    p, q = len(P) - 1, len(Q) - 1
    swap = p < q
    if swap:
        p, q = q, p
    subres = _subres_table(f, g, i)
    ctx = f.vars.ctx
    zero = ctx.from_dict({})
    out = []
    for j in range(q):
        S = subres.get(j)
        c = S[j] if S is not None and len(S) > j else zero
        if swap and ((p - j) * (q - j)) % 2 == 1:
            c = -c
        out.append(Poly(c, f.vars))
    return tuple(out)


def psc_sequence(f: Poly, g: Poly, i) -> list:
    """Principal subresultant coefficients psc_0, ..., psc_{d-1}, d = min degree.

    ``psc_0`` is the resultant.  Empty when either degree is below 1.
    """
    if isinstance(i, str):
        i = f.vars.index(i)
    if f.degree(i) < 1 or g.degree(i) < 1:
        return []
    return list(_psc(f, g, i))


def truncated_psc(f: Poly, g: Poly, i, point) -> list:
    """Leading part psc_0..psc_l of the sequence, stopping at the first one
    that does not vanish at ``point``; the whole sequence if none does."""
    from .realalg import sign_at

    out = []
    for c in psc_sequence(f, g, i):
        out.append(c)
        if sign_at(c, point) != 0:
            break
    return out


# factorization

def _canonical(raw, vars: VarOrder):
    """Integer-primitive multiple with positive leading coefficient, main variable first."""
    coeffs = raw.coeffs()
    den = 1
    num = 0
    for c in coeffs:
        den = math.lcm(den, int(c.q))
        num = math.gcd(num, int(c.p))
    scale = fmpq(den, num)
    monoms = raw.monoms()
    top = max(range(len(monoms)), key=lambda k: monoms[k][::-1])
    if coeffs[top] < 0:
        scale = -scale
    return raw * scale, scale


def canonical(p: Poly) -> Poly:
    if p.is_zero():
        return p
    raw, _ = _canonical(p.raw, p.vars)
    return Poly(raw, p.vars)


@lru_cache(maxsize=None)
def factor(p: Poly) -> tuple:
    """Irreducible factorization ``(content, ((factor, multiplicity), ...))``.

    Factors are canonical (integer primitive, positive leading coefficient)
    and sorted; ``content * prod(f**m)`` equals ``p``.
    """
    if p.is_zero():
        raise PolyError("cannot factor zero")
    c, fs = p.raw.factor()
    content = fmpq(c) if not isinstance(c, fmpq) else c
    out = []
    for f, m in fs:
        g, scale = _canonical(f, p.vars)
        content = content / scale ** m
        out.append((Poly(g, p.vars), int(m)))
    out.sort(key=lambda t: t[0].sort_key())
    return content, tuple(out)


def irreducible_factors(p: Poly) -> tuple:
    if p.is_zero() or p.is_constant():
        return ()
    return tuple(f for f, _ in factor(p)[1])


def factor_basis(polys) -> tuple:
    """Distinct canonical irreducible factors of the non-constant members, sorted."""
    seen = {}
    for p in polys:
        for f in irreducible_factors(p):
            seen[f] = None
    return tuple(sort_polys(seen))


def level_split(polys, k: int):
    """Split into (level == k, level < k); anything above k is an error."""
    top, rest = [], []
    for p in polys:
        if p.level > k:
            raise PolyError(f"polynomial of level {p.level} above {k}")
        (top if p.level == k else rest).append(p)
    return top, rest


def unique(polys) -> list:
    """Deduplicate while keeping first-seen order."""
    return list(dict.fromkeys(polys))
