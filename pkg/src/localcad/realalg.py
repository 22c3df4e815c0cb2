"""Real algebraic numbers and exact arithmetic at algebraic sample points.

A coordinate is either an ``fmpq`` or a :class:`RealAlg`: an irrational root
of an irreducible integer polynomial, pinned down by an isolating open
interval with rational endpoints.  Signs of polynomials at points with several
irrational coordinates are decided in a simple algebraic extension Q(theta)
built by the primitive element construction; zero tests there are exact
(polynomial remainder) and nonzero signs come from interval arithmetic.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import flint
from flint import arb, arb_poly, fmpq, fmpq_mpoly_ctx, fmpq_poly, fmpz, fmpz_poly

from .exact import rat, simplest_rational
from .poly import Poly, PolyError


class IdenticallyZero(PolyError):
    """Raised when a polynomial vanishes identically at a base point."""


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


# infinities used as cell bounds

class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __repr__(self):
        return "+oo" if self.sign > 0 else "-oo"

    __str__ = __repr__

    def __reduce__(self):
        return (_infinity, (self.sign,))


def _infinity(sign):
    return POS_INF if sign > 0 else NEG_INF


POS_INF = _Infinity(1)
NEG_INF = _Infinity(-1)


def is_infinite(x) -> bool:
    return isinstance(x, _Infinity)


def is_rational(x) -> bool:
    return isinstance(x, fmpq)


# univariate root isolation

def _variations(coeffs) -> int:
    count = 0
    last = 0
    for c in coeffs:
        if c != 0:
            s = 1 if c > 0 else -1
            if last and s != last:
                count += 1
            last = s
    return count


_X_PLUS_1 = fmpz_poly([1, 1])


def _primitive(f: fmpz_poly) -> fmpz_poly:
    cs = [int(c) for c in f.coeffs()]
    g = 0
    for c in cs:
        g = math.gcd(g, c)
    if cs[-1] < 0:
        g = -g
    if g in (0, 1):
        return f
    return fmpz_poly([c // g for c in cs])


def _to_fmpz(f: fmpq_poly) -> fmpz_poly:
    return _primitive(f.numer())


def _cauchy_exponent(f: fmpz_poly) -> int:
    cs = [abs(int(c)) for c in f.coeffs()]
    lead = cs[-1]
    m = max(cs[:-1]) if len(cs) > 1 else 0
    return (m // lead + 1).bit_length() + 1


def isolate_squarefree(f: fmpz_poly) -> list:
    """Isolate the real roots of a squarefree integer polynomial.

    Returns a sorted list whose items are either an ``fmpq`` (an exact root)
    or a pair ``(lo, hi)`` of rationals bounding exactly one root in the open
    interval.  Descartes' rule of signs with bisection.
    """
    if f.degree() < 1:
        return []
    B = fmpq(2) ** _cauchy_exponent(f)
    q = f(fmpz_poly([int(-B), int(2 * B)]))
    stack = [(q, -B, 2 * B)]
    out = []
    while stack:
        q, a, w = stack.pop()
        if q[0] == 0:
            out.append((a, a))
            q = fmpz_poly(q.coeffs()[1:])
        n = q.degree()
        if n < 1:
            continue
        rev = fmpz_poly(list(reversed(q.coeffs())))
        v = _variations(rev(_X_PLUS_1).coeffs())
        if v == 0:
            continue
        if v == 1:
            out.append((a, a + w))
            continue
        half = w / 2
        left = fmpz_poly([c * 2 ** (n - i) for i, c in enumerate(q.coeffs())])
        right = left(_X_PLUS_1)
        stack.append((right, a + half, half))
        stack.append((left, a, half))
    out.sort(key=lambda t: (t[0], t[1]))
    return [lo if lo == hi else (lo, hi) for lo, hi in out]


class RealAlg:
    """An irrational real algebraic number.

    ``poly`` is its minimal polynomial (irreducible, primitive, positive
    leading coefficient, degree at least 2) and the current isolating interval
    is an open interval with rational endpoints that never are roots.
    Refinement replaces the interval tuple atomically, so concurrent readers
    always see a valid isolating interval.
    """

    __slots__ = ("poly", "_iv", "_slo", "_index", "_hash", "_ball", "_ball_prec")

    def __init__(self, poly: fmpz_poly, lo, hi, index=None):
        if poly.degree() < 2:
            raise ValueError("minimal polynomial of an irrational number has degree >= 2")
        lo, hi = rat(lo), rat(hi)
        slo, shi = _sgn(poly(lo)), _sgn(poly(hi))
        if slo == 0 or shi == 0 or slo == shi:
            raise ValueError("interval does not isolate a root")
        self.poly = poly
        self._iv = (lo, hi)
        self._slo = slo
        self._index = index
        self._hash = None
        self._ball = None
        self._ball_prec = 0

    @property
    def interval(self):
        return self._iv

    @property
    def lo(self):
        return self._iv[0]

    @property
    def hi(self):
        return self._iv[1]

    def degree(self) -> int:
        return self.poly.degree()

    @property
    def index(self) -> int:
        """1-based position among the real roots of the minimal polynomial."""
        if self._index is None:
            for k, r in enumerate(real_roots_of(self.poly)):
                if _same_root(self, r):
                    self._index = k + 1
                    break
        return self._index

    def bisect(self):
        lo, hi = self._iv
        m = (lo + hi) / 2
        s = _sgn(self.poly(m))
        self._iv = (m, hi) if s == self._slo else (lo, m)

    def refine(self, width):
        width = rat(width)
        while self._iv[1] - self._iv[0] > width:
            if not self._newton_step():
                for _ in range(4):
                    self.bisect()

    def _newton_step(self) -> bool:
        """One verified Newton step from the midpoint; False when it fails."""
        lo, hi = self._iv
        w = hi - lo
        bits = int(w.q).bit_length() - int(w.p).bit_length()
        if bits < 16:
            return False
        m = (lo + hi) / 2
        d = self.poly.derivative()(m)
        if d == 0:
            return False
        x = m - self.poly(m) / d
        scale = fmpz(2) ** (2 * bits + 16)
        x = fmpq((x.p * scale) // x.q, scale)
        eps = fmpq(1, fmpz(2) ** (2 * bits - 8))
        a, b = x - eps, x + eps
        if not (lo < a and b < hi):
            return False
        if _sgn(self.poly(a)) != self._slo or _sgn(self.poly(b)) != -self._slo:
            return False
        self._iv = (a, b)
        return True

    def locate(self, q: fmpq) -> int:
        """Sign of self - q, shrinking the interval as a side effect."""
        lo, hi = self._iv
        if q <= lo:
            return 1
        if q >= hi:
            return -1
        if _sgn(self.poly(q)) == self._slo:
            self._iv = (q, hi)
            return 1
        self._iv = (lo, q)
        return -1

    def to_arb(self, prec: int = 64) -> arb:
        if prec > 128:
            return self._newton_ball(prec)
        lo, hi = self._iv
        scale = max(abs(lo), abs(hi), fmpq(1))
        self.refine(scale / fmpq(2) ** prec)
        lo, hi = self._iv
        with flint.ctx.workprec(prec + 16):
            return arb(lo).union(arb(hi))

    def _newton_ball(self, prec: int) -> arb:
        """Enclosure of relative width about 2^-prec by interval Newton."""
        if self._ball_prec >= prec:
            return self._ball
        df = self.poly.derivative()
        while True:
            lo, hi = self._iv
            with flint.ctx.workprec(64):
                if not arb_poly(list(df.coeffs()))(arb(lo).union(arb(hi))).contains(0):
                    break
            for _ in range(4):
                self.bisect()
        work = prec + 32
        while True:
            with flint.ctx.workprec(work):
                f = arb_poly(list(self.poly.coeffs()))
                fp = arb_poly(list(df.coeffs()))
                X = self._ball if self._ball is not None else arb(self._iv[0]).union(arb(self._iv[1]))
                target = arb(2) ** -prec * (abs(X).upper() + 1)
                while X.rad() > target:
                    m = arb(X.mid())
                    N = m - f(m) / fp(X)
                    a = max(X.lower(), N.lower())
                    b = min(X.upper(), N.upper())
                    if a > b:
                        raise AssertionError("Newton step lost the root")
                    Y = a.union(b)
                    if Y.rad() > X.rad() / 2:
                        break
                    X = Y
                if X.rad() <= target:
                    self._ball, self._ball_prec = X, prec
                    return X
                if X.rad() > arb(2) ** (40 - work) * (abs(X).upper() + 1):
                    # too wide for Newton to contract: shrink the rational interval
                    self._ball = None
                    for _ in range(8):
                        self.bisect()
                    continue
                self._ball = X
            work *= 2

    def __float__(self):
        self.refine(fmpq(1, 2 ** 60))
        lo, hi = self._iv
        return float((lo + hi) / 2)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(int(c) for c in self.poly.coeffs()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, (RealAlg, fmpq, int)):
            return compare(self, other) == 0
        return NotImplemented

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __repr__(self):
        return f"RealAlg({self.poly}, ~{float(self):.12g})"

    def __str__(self):
        return f"Root[{self.poly}, {self.index}]"


def _same_root(a: RealAlg, b: RealAlg) -> bool:
    if a.poly != b.poly:
        return False
    lo = max(a.lo, b.lo)
    hi = min(a.hi, b.hi)
    if lo >= hi:
        return False
    return _sgn(a.poly(lo)) != _sgn(a.poly(hi))


def compare(a, b) -> int:
    """Exact three-way comparison of rationals, algebraic numbers and infinities."""
    if isinstance(a, _Infinity) or isinstance(b, _Infinity):
        sa = a.sign if isinstance(a, _Infinity) else 0
        sb = b.sign if isinstance(b, _Infinity) else 0
        return _sgn(sa - sb)
    if not isinstance(a, RealAlg):
        if not isinstance(b, RealAlg):
            return _sgn(rat(a) - rat(b))
        return -b.locate(rat(a))
    if not isinstance(b, RealAlg):
        return a.locate(rat(b))
    if a is b:
        return 0
    if a.poly == b.poly:
        if _same_root(a, b):
            return 0
    while True:
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        if a.hi - a.lo >= b.hi - b.lo:
            a.bisect()
        else:
            b.bisect()


sort_key = functools.cmp_to_key(compare)


def sort_numbers(xs) -> list:
    return sorted(xs, key=sort_key)


def to_arb(x, prec: int = 64) -> arb:
    if isinstance(x, RealAlg):
        return x.to_arb(prec)
    with flint.ctx.workprec(prec + 16):
        return arb(rat(x))


def approx(x) -> float:
    if isinstance(x, _Infinity):
        return math.inf * x.sign
    return float(x)


def number_str(x) -> str:
    return str(x)


DESCARTES_MAX_DEGREE = 8


def _arb_to_fmpq(x: arb) -> fmpq:
    man, exp = x.mid().man_exp()
    man, exp = int(man), int(exp)
    return fmpq(man * 2 ** exp) if exp >= 0 else fmpq(man, 2 ** -exp)


def _isolate_validated(g: fmpz_poly):
    """Isolating intervals from FLINT's validated complex root finder, or
    ``None`` if an interval fails the sign check."""
    out = []
    for c, _ in g.complex_roots():
        if c.imag != 0:
            continue
        lo, hi = _arb_to_fmpq(c.real.lower()), _arb_to_fmpq(c.real.upper())
        if _sgn(g(lo)) * _sgn(g(hi)) >= 0:
            return None
        out.append((lo, hi))
    out.sort()
    for a, b in zip(out, out[1:]):
        if a[1] >= b[0]:
            return None
    return out


def _isolate(g: fmpz_poly) -> list:
    """Isolating intervals for an irreducible polynomial of degree >= 2."""
    if g.degree() > DESCARTES_MAX_DEGREE:
        ivs = _isolate_validated(g)
        if ivs is not None:
            return ivs
    return isolate_squarefree(g)


@functools.lru_cache(maxsize=None)
def _roots_of_key(coeffs: tuple) -> tuple:
    f = _primitive(fmpz_poly(list(coeffs)))
    _, facs = f.factor()
    roots = []
    for g, m in facs:
        g = _primitive(g)
        if g.degree() == 1:
            roots.append((fmpq(-int(g[0]), int(g[1])), int(m)))
            continue
        for k, iv in enumerate(_isolate(g)):
            if isinstance(iv, fmpq):
                raise AssertionError("rational root of an irreducible polynomial")
            roots.append((RealAlg(g, iv[0], iv[1], index=k + 1), int(m)))
    roots.sort(key=lambda t: sort_key(t[0]))
    return tuple(roots)


def real_roots_with_multiplicity(f) -> list:
    """Distinct real roots of a nonzero univariate polynomial with multiplicities."""
    if isinstance(f, fmpq_poly):
        f = f.numer()
    if f.is_zero():
        raise IdenticallyZero("zero polynomial has no isolated roots")
    if f.degree() < 1:
        return []
    return list(_roots_of_key(tuple(int(c) for c in f.coeffs())))


def real_roots_of(f) -> list:
    """Sorted distinct real roots of a nonzero univariate polynomial."""
    return [r for r, _ in real_roots_with_multiplicity(f)]


isolate_roots = real_roots_of


def simplest_between(u1, u2) -> fmpq:
    """Simplest rational strictly between two numbers (infinities allowed)."""
    if compare(u1, u2) >= 0:
        raise ValueError("empty interval")
    while True:
        lo = None if u1 is NEG_INF else (u1.lo if isinstance(u1, RealAlg) else u1)
        hi = None if u2 is POS_INF else (u2.hi if isinstance(u2, RealAlg) else u2)
        c = simplest_rational(lo, hi)
        if compare(c, u1) > 0 and compare(c, u2) < 0:
            return c
        if isinstance(u1, RealAlg):
            u1.bisect()
        if isinstance(u2, RealAlg):
            u2.bisect()


# simple algebraic extensions Q(theta)

def _horner_mod(e: fmpq_poly, a: fmpq_poly, m: fmpq_poly) -> fmpq_poly:
    """e(a) mod m."""
    r = fmpq_poly([0])
    for c in reversed(e.coeffs()):
        r = (r * a + c) % m
    return r


class NumberField:
    """Q(theta) for a real algebraic ``theta``; elements are ``fmpq_poly`` reduced mod its minimal polynomial."""

    __slots__ = ("theta", "mod")

    def __init__(self, theta: RealAlg):
        self.theta = theta
        self.mod = fmpq_poly([int(c) for c in theta.poly.coeffs()])

    @property
    def degree(self) -> int:
        return self.mod.degree()

    def reduce(self, e) -> fmpq_poly:
        return fmpq_poly(e) % self.mod

    def mul(self, a, b) -> fmpq_poly:
        return (a * b) % self.mod

    def inv(self, a) -> fmpq_poly:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s, _ = a.xgcd(self.mod)
        return s / g[0]

    def to_arb(self, e: fmpq_poly, prec: int) -> arb:
        t = self.theta.to_arb(prec)
        with flint.ctx.workprec(prec + 16):
            return arb_poly([arb(c) for c in e.coeffs()])(t) if e != 0 else arb(0)

    def sign(self, e: fmpq_poly) -> int:
        if e == 0:
            return 0
        prec = 64
        while True:
            v = self.to_arb(e, prec)
            if v > 0:
                return 1
            if v < 0:
                return -1
            prec *= 2


# polynomials over a number field: coefficient lists of fmpq_poly, lowest first

def _kp_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _kp_rem(a: list, b: list, K: NumberField) -> list:
    a = list(a)
    inv_lb = K.inv(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        f = K.mul(a[-1], inv_lb)
        shift = len(a) - 1 - db
        for j, c in enumerate(b):
            a[j + shift] = (a[j + shift] - f * c) % K.mod
        a.pop()
        _kp_trim(a)
    return a


def _kp_divmod(a: list, b: list, K: NumberField):
    a = list(a)
    inv_lb = K.inv(b[-1])
    db = len(b) - 1
    q = [fmpq_poly([0])] * max(len(a) - db, 0)
    while a and len(a) - 1 >= db:
        f = K.mul(a[-1], inv_lb)
        shift = len(a) - 1 - db
        q[shift] = f
        for j, c in enumerate(b):
            a[j + shift] = (a[j + shift] - f * c) % K.mod
        a.pop()
        _kp_trim(a)
    return q, a


def _kp_gcd(a: list, b: list, K: NumberField) -> list:
    a, b = _kp_trim(list(a)), _kp_trim(list(b))
    while b:
        a, b = b, _kp_rem(a, b, K)
    if not a:
        return a
    inv = K.inv(a[-1])
    return [K.mul(c, inv) for c in a]


def _kp_eval_arb(a: list, K: NumberField, x, prec: int) -> arb:
    t = K.theta.to_arb(prec)
    xv = to_arb(x, prec)
    with flint.ctx.workprec(prec + 16):
        acc = arb(0)
        for c in reversed(a):
            cv = arb_poly([arb(q) for q in c.coeffs()])(t) if c != 0 else arb(0)
            acc = acc * xv + cv
        return acc


def _fmpq_poly_of(p: Poly, i: int) -> fmpq_poly:
    coeffs: dict = {}
    for m, c in p.terms():
        coeffs[m[i - 1]] = c
    if not coeffs:
        return fmpq_poly([0])
    out = [fmpq(0)] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c
    return fmpq_poly(out)


def _bivariate_ctx():
    return fmpq_mpoly_ctx.get(("t_", "z_"), "lex")


def _lift_kpoly(a: list):
    """K-polynomial in y (coefficients in t) as a FLINT polynomial in (t, y)."""
    ctx = _bivariate_ctx()
    terms = {}
    for dy, c in enumerate(a):
        for dt, q in enumerate(c.coeffs()):
            if q != 0:
                terms[(dt, dy)] = q
    return ctx.from_dict(terms)


def _norm(a: list, K: NumberField) -> fmpq_poly:
    """res_t(m(t), a(t, y)) as a polynomial in y."""
    ctx = _bivariate_ctx()
    m = ctx.from_dict({(d, 0): c for d, c in enumerate(K.mod.coeffs()) if c != 0})
    r = m.resultant(_lift_kpoly(a), "t_")
    deg = r.degrees()[1] if not r.is_zero() else 0
    out = [fmpq(0)] * (deg + 1)
    for (dt, dy), c in zip(r.monoms(), r.coeffs()):
        out[dy] = c
    return fmpq_poly(out)


def _adjoin(K: NumberField, exprs: dict, idx: int, beta: RealAlg):
    """Extend Q(theta) by ``beta``; returns a primitive field and re-expressed coordinates."""
    ctx = _bivariate_ctx()
    t, z = ctx.gens()
    m_t = ctx.from_dict({(d, 0): c for d, c in enumerate(K.mod.coeffs()) if c != 0})
    pcoeffs = [int(c) for c in beta.poly.coeffs()]
    c = 0
    for step in range(1, 200):
        c = (step + 1) // 2 * (1 if step % 2 else -1)
        arg = z - c * t
        shifted = ctx.from_dict({})
        for coeff in reversed(pcoeffs):
            shifted = shifted * arg + coeff
        r = m_t.resultant(shifted, "t_")
        deg = r.degrees()[1]
        dense = [fmpq(0)] * (deg + 1)
        for (dt, dz), q in zip(r.monoms(), r.coeffs()):
            dense[dz] = q
        N = fmpq_poly(dense)
        if N.gcd(N.derivative()).degree() == 0:
            break
    else:
        raise AssertionError("no separating multiplier found")

    # locate gamma = beta + c*theta among the real roots of N
    candidates = real_roots_of(_to_fmpz(N))
    prec = 64
    while True:
        g = to_arb(beta, prec) + c * K.theta.to_arb(prec)
        hits = [r for r in candidates if _overlaps(to_arb(r, prec), g)]
        if len(hits) == 1:
            gamma = hits[0]
            break
        if not hits:
            raise AssertionError("primitive element lost")
        candidates = hits
        prec *= 2
    if not isinstance(gamma, RealAlg):
        raise AssertionError("primitive element of an irrational extension is rational")

    L = NumberField(gamma)
    A = _theta_from_subresultant(m_t, shifted, L)
    if A is not None:
        new_exprs = {j: _horner_mod(e, A, L.mod) for j, e in exprs.items()}
        new_exprs[idx] = (fmpq_poly([0, 1]) - c * A) % L.mod
        return L, new_exprs
    # theta = A(gamma) from gcd_L(m(t), p(gamma - c t))
    by_t: dict = {}
    for (dt, dz), q in zip(shifted.monoms(), shifted.coeffs()):
        by_t.setdefault(dt, {})[dz] = q
    top = max(by_t)
    P = []
    for dt in range(top + 1):
        zs = by_t.get(dt, {})
        dense = [fmpq(0)] * (max(zs) + 1 if zs else 1)
        for dz, q in zs.items():
            dense[dz] = q
        P.append(fmpq_poly(dense) % L.mod)
    Mt = [fmpq_poly([q]) for q in K.mod.coeffs()]
    G = _kp_gcd(Mt, P, L)
    if len(G) != 2:
        raise AssertionError("primitive element gcd is not linear")
    A = (-G[0]) % L.mod
    new_exprs = {j: _horner_mod(e, A, L.mod) for j, e in exprs.items()}
    new_exprs[idx] = (fmpq_poly([0, 1]) - c * A) % L.mod
    return L, new_exprs


def _theta_from_subresultant(m_t, shifted, L: NumberField):
    """theta = -s0(gamma)/s1(gamma) from the first subresultant s1*t + s0 of
    m(t) and p(z - c t); ``None`` if s1 vanishes at gamma."""
    from .poly import _subresultants

    def by_t(f):
        rows: dict = {}
        for (dt, dz), q in zip(f.monoms(), f.coeffs()):
            rows.setdefault(dt, {})[(0, dz)] = q
        ctx = f.context()
        return [ctx.from_dict(rows.get(d, {})) for d in range(max(rows) + 1)]

    P, Q = by_t(m_t), by_t(shifted)
    if len(P) < len(Q):
        P, Q = Q, P
    S1 = _subresultants(P, Q).get(1)
    if S1 is None or len(S1) < 2:
        return None

    def in_L(f):
        dense: dict = {}
        for (_, dz), q in zip(f.monoms(), f.coeffs()):
            dense[dz] = q
        if not dense:
            return fmpq_poly([0])
        return fmpq_poly([dense.get(d, 0) for d in range(max(dense) + 1)]) % L.mod

    s0, s1 = in_L(S1[0]), in_L(S1[1])
    if s1 == 0:
        return None
    return (-s0 * L.inv(s1)) % L.mod


def _overlaps(a: arb, b: arb) -> bool:
    return not (a < b or a > b)


# sample points

_FIELDS: dict = {}


def _alg_key(x: RealAlg) -> tuple:
    return (tuple(int(c) for c in x.poly.coeffs()), x.index)


class SamplePoint:
    """A point (a_1, ..., a_k) with exact coordinates and per-coordinate section flags.

    Points extended from this one share its caches for their common prefix.
    """

    __slots__ = ("coords", "sections", "parent", "tower", "_fields", "_signs", "_roots", "_rootdeg")

    def __init__(self, coords=(), sections=None, parent=None, tower=None):
        self.coords = tuple(c if isinstance(c, RealAlg) else rat(c) for c in coords)
        if sections is None:
            sections = (False,) * len(self.coords)
        self.sections = tuple(sections)
        if len(self.sections) != len(self.coords):
            raise ValueError("one section flag per coordinate")
        self.parent = parent
        # degree of each coordinate over the field of the previous ones, bounded above
        if tower is None:
            tower = tuple(c.degree() if isinstance(c, RealAlg) else 1 for c in self.coords)
        self.tower = tuple(tower)
        self._rootdeg = {}
        self._fields = {}
        self._signs = {}
        self._roots = {}

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def extend(self, value, section: bool, zeros=()) -> "SamplePoint":
        """One more coordinate; ``zeros`` are polynomials known to vanish there."""
        d = 1
        if isinstance(value, RealAlg):
            d = self._rootdeg.get(value, value.degree())
        b = SamplePoint(
            self.coords + (value,), self.sections + (bool(section),), parent=self, tower=self.tower + (d,)
        )
        for z in zeros:
            b._signs[z] = 0
        return b

    def prefix(self, k: int) -> "SamplePoint":
        p = self
        while len(p) > k:
            p = p.parent if p.parent is not None else SamplePoint(p.coords[:k], p.sections[:k], tower=p.tower[:k])
        return p

    def section_prefix(self) -> int:
        """Number of leading coordinates that come from sections."""
        m = 0
        for s in self.sections:
            if not s:
                break
            m += 1
        return m

    def is_rational(self) -> bool:
        return all(isinstance(c, fmpq) for c in self.coords)

    def field(self, indices: tuple):
        """Primitive field containing the (irrational) coordinates at ``indices``."""
        indices = tuple(sorted(indices))
        hit = self._fields.get(indices)
        if hit is not None:
            return hit
        key = tuple((i, _alg_key(self.coords[i - 1])) for i in indices)
        res = _FIELDS.get(key)
        if res is not None:
            pass
        elif self.parent is not None and indices[-1] <= len(self.parent):
            res = self.parent.field(indices)
        elif len(indices) == 1:
            res = (NumberField(self.coords[indices[0] - 1]), {indices[0]: fmpq_poly([0, 1])})
        else:
            K, exprs = self.field(indices[:-1])
            res = _adjoin(K, exprs, indices[-1], self.coords[indices[-1] - 1])
        _FIELDS[key] = res
        self._fields[indices] = res
        return res

    def substitute_rationals(self, p: Poly, upto: int | None = None) -> Poly:
        upto = len(self) if upto is None else upto
        vals = {i + 1: c for i, c in enumerate(self.coords[:upto]) if isinstance(c, fmpq) and p.degree(i + 1) > 0}
        return p.subs(vals)

    def to_field(self, p: Poly, K: NumberField, exprs: dict) -> fmpq_poly:
        """Image of ``p`` (only irrational coordinates left) in Q(theta)."""
        acc = fmpq_poly([0])
        powers: dict = {}
        for m, c in p.terms():
            term = fmpq_poly([c])
            for i, e in enumerate(m):
                if e:
                    key = (i + 1, e)
                    pw = powers.get(key)
                    if pw is None:
                        pw = _pow_mod(exprs[i + 1], e, K.mod)
                        powers[key] = pw
                    term = (term * pw) % K.mod
            acc += term
        return acc % K.mod

    def __repr__(self):
        return "SamplePoint(" + ", ".join(number_str(c) for c in self.coords) + ")"


def _pow_mod(a: fmpq_poly, e: int, m: fmpq_poly) -> fmpq_poly:
    r = fmpq_poly([1])
    base = a % m
    while e:
        if e & 1:
            r = (r * base) % m
        base = (base * base) % m
        e >>= 1
    return r


def as_point(point) -> SamplePoint:
    if isinstance(point, SamplePoint):
        return point
    return chain(point)


def chain(coords, sections=None) -> SamplePoint:
    """Sample point built coordinate by coordinate, so every prefix is cached."""
    coords = tuple(coords)
    sections = tuple(sections) if sections is not None else (False,) * len(coords)
    p = SamplePoint()
    for c, s in zip(coords, sections):
        p = p.extend(c if isinstance(c, RealAlg) else rat(c), s)
    return p


def sign_at(p: Poly, point) -> int:
    """Exact sign of ``p`` at ``point``; the level of ``p`` must not exceed its length."""
    point = as_point(point)
    if p.level > len(point):
        raise PolyError(f"level {p.level} polynomial at a point of length {len(point)}")
    s = point._signs.get(p)
    if s is not None:
        return s
    s = _sign_at(p, point)
    point._signs[p] = s
    return s


def _sign_at(p: Poly, point: SamplePoint) -> int:
    if p.is_constant():
        return _sgn(p.constant_value())
    h = point.substitute_rationals(p)
    if h.is_constant():
        return _sgn(h.constant_value())
    for prec in (64, 192):
        v = _arb_eval(h, point, prec)
        if v > 0:
            return 1
        if v < 0:
            return -1
    from .poly import factor

    content, facs = factor(p)
    if len(facs) > 1 or facs[0][1] > 1:
        s = _sgn(content)
        for f, m in facs:
            s *= sign_at(f, point) ** m
        return s
    if _is_zero(h, point):
        return 0
    prec = 384
    while True:
        v = _arb_eval(h, point, prec)
        if v > 0:
            return 1
        if v < 0:
            return -1
        prec *= 2


def _minpoly(x: RealAlg, vars, i: int) -> Poly:
    """Defining polynomial of ``x`` as a polynomial in x_i."""
    exps = [0] * vars.n
    terms = {}
    for d, c in enumerate(x.poly.coeffs()):
        if c:
            exps[i - 1] = d
            terms[tuple(exps)] = c
    return vars.from_dict(terms)


def _is_zero(h: Poly, point: SamplePoint) -> bool:
    """Exact zero test for ``h`` whose variables are irrational coordinates.

    A nonzero value of an integer polynomial at algebraic numbers is bounded
    below by a Liouville inequality in the degrees and heights, so an
    enclosure below that bound proves the value is zero.
    """
    bits = _zero_bound_bits(h, point)
    prec = 64
    while True:
        v = _arb_eval(h, point, prec)
        if not v.contains(0):
            return False
        if abs(v).upper() < arb(2) ** -bits:
            return True
        prec *= 2


def _zero_bound_bits(h: Poly, point: SamplePoint) -> int:
    """``B`` such that a nonzero ``h`` at the point has absolute value >= 2^-B."""
    den = fmpz(1)
    for _, c in h.terms():
        den = den * c.q // den.gcd(c.q)
    length = sum(abs(c.p * (den // c.q)) for _, c in h.terms())
    D = math.prod(point.tower[: max(h.variables())])
    heights = 0.0
    for i in h.variables():
        x = point.coords[i - 1]
        d = x.degree()
        norm2 = sum(int(c) ** 2 for c in x.poly.coeffs())
        heights += h.degree(i) * (math.log2(norm2) / 2) / d
    low = (D - 1) * math.log2(int(length)) + D * heights + math.log2(int(den))
    return int(math.ceil(low)) + 8


def _arb_eval(p: Poly, point: SamplePoint, prec: int) -> arb:
    """Enclosure of ``p`` at the point; decides the sign only when it excludes 0."""
    with flint.ctx.workprec(prec + 16):
        xs = [to_arb(c, prec) for c in point.coords]
        acc = arb(0)
        for m, c in p.terms():
            term = arb(c)
            for i, e in enumerate(m):
                if e:
                    term *= xs[i] ** e
            acc += term
        return acc


def vanishes_at(p: Poly, point) -> bool:
    return sign_at(p, point) == 0


def is_zero_at(p: Poly, point) -> bool:
    """True when ``p`` restricted over ``point`` is the zero polynomial."""
    point = as_point(point)
    k = len(point)
    from .poly import coeffs_in

    if p.level <= k:
        return sign_at(p, point) == 0
    if p.level > k + 1:
        raise PolyError("polynomial level too high for this point")
    return all(sign_at(c, point) == 0 for c in coeffs_in(p, k + 1))


def roots_at(p: Poly, point) -> list:
    """Sorted distinct real roots in x_{k+1} of ``p`` at a point of length k.

    Raises :class:`IdenticallyZero` when ``p`` vanishes identically there.
    """
    point = as_point(point)
    hit = point._roots.get(p)
    if hit is not None:
        return hit
    res = _roots_at(p, point)
    point._roots[p] = res
    for r in res:
        if isinstance(r, RealAlg):
            e = p.degree(len(point) + 1)
            point._rootdeg[r] = min(point._rootdeg.get(r, r.degree()), e)
    return res


def _roots_at(p: Poly, point: SamplePoint) -> list:
    k = len(point)
    y = k + 1
    if p.level > y:
        raise PolyError("polynomial level too high for this point")
    h = point.substitute_rationals(p)
    if h.is_zero():
        raise IdenticallyZero(f"{p} vanishes identically")
    irr = tuple(i for i in h.variables() if i <= k)
    if not irr:
        if h.degree(y) < 1:
            return []
        return real_roots_of(_to_fmpz(_fmpq_poly_of(h, y)))
    from .poly import coeffs_in, resultant

    cs = coeffs_in(h, y)
    top = next((t for t, c in enumerate(cs) if sign_at(c, point) != 0), None)
    if top is None:
        raise IdenticallyZero(f"{p} vanishes identically")
    x = h.vars.var(y)
    n = len(cs) - 1
    hr = h.vars.const(0)
    for t in range(top, n + 1):
        hr = hr + cs[t] * x ** (n - t)
    if hr.degree(y) < 1:
        return []
    N = hr
    for i in sorted(irr, reverse=True):
        if N.degree(i) > 0:
            N = resultant(_minpoly(point.coords[i - 1], h.vars, i), N, i)
    if not N.is_zero():
        roots = []
        for r in real_roots_of(_to_fmpz(_fmpq_poly_of(N, y))):
            ext = point.extend(r, False)
            if not _arb_eval(hr, ext, 128).contains(0):
                continue
            if sign_at(hr, ext) == 0:
                roots.append(r)
        return sort_numbers(roots)
    return _roots_in_field(h, point, irr)


def _roots_in_field(h: Poly, point: SamplePoint, irr: tuple) -> list:
    from .poly import coeffs_in

    y = len(point) + 1
    K, exprs = point.field(irr)
    cs = coeffs_in(h, y)
    H = [point.to_field(c, K, exprs) for c in reversed(cs)] if cs else []
    _kp_trim(H)
    if not H:
        raise IdenticallyZero(f"{h} vanishes identically")
    if len(H) == 1:
        return []
    N = _norm(H, K)
    _, facs = _to_fmpz(N).factor()
    roots = []
    for g, _m in facs:
        g = _primitive(g)
        # candidates whose enclosure of H excludes zero are not roots
        cand = [r for r in real_roots_of(g) if _kp_eval_arb(H, K, r, 128).contains(0)]
        if not cand:
            continue
        gk = [fmpq_poly([q]) for q in g.coeffs()]
        common = _kp_gcd(H, gk, K)
        if len(common) < 2:
            continue
        if len(common) == len(gk):
            roots.extend(cand)
            continue
        cof, rem = _kp_divmod(gk, common, K)
        if rem:
            raise AssertionError("gcd does not divide")
        for r in cand:
            if _race(common, cof, K, r):
                roots.append(r)
    return sort_numbers(roots)


def _race(g: list, cof: list, K: NumberField, r) -> bool:
    """Whether ``r`` is a root of ``g`` (otherwise it is a root of ``cof``)."""
    prec = 64
    while True:
        if not _kp_eval_arb(g, K, r, prec).contains(0):
            return False
        if not _kp_eval_arb(cof, K, r, prec).contains(0):
            return True
        prec *= 2


@dataclass(frozen=True, eq=False)
class AnchoredRoot:
    """The ``index``-th real root of ``defpoly`` over ``base``, with its value."""

    defpoly: Poly
    base: SamplePoint
    index: int
    value: object

    def __repr__(self):
        return f"AnchoredRoot({self.defpoly}, {self.index}, {number_str(self.value)})"


def anchored_roots(p: Poly, point) -> list:
    point = as_point(point)
    return [AnchoredRoot(p, point, k + 1, v) for k, v in enumerate(roots_at(p, point))]
