"""Independent reference computations on plain Fractions.

Nothing here touches FLINT or the package's own algebra; the tests compare
the package against these.
"""

from __future__ import annotations

from fractions import Fraction


def det(rows) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    if n == 0:
        return Fraction(1)
    sign = 1
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        d *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                t = m[r][c] / m[c][c]
                for j in range(c, n):
                    m[r][j] -= t * m[c][j]
    return sign * d


def sylvester(f, g) -> list:
    """Sylvester matrix of coefficient lists (highest degree first), f rows first."""
    p, q = len(f) - 1, len(g) - 1
    size = p + q
    rows = []
    for i in range(q):
        rows.append([0] * i + list(f) + [0] * (size - p - 1 - i))
    for i in range(p):
        rows.append([0] * i + list(g) + [0] * (size - q - 1 - i))
    return rows


def resultant(f, g) -> Fraction:
    return det(sylvester(f, g))


def psc(f, g, j) -> Fraction:
    """j-th principal subresultant coefficient via its defining determinant."""
    p, q = len(f) - 1, len(g) - 1
    cols = p + q - j
    rows = []
    for i in range(q - j):
        rows.append([0] * i + list(f) + [0] * (cols - p - 1 - i))
    for i in range(p - j):
        rows.append([0] * i + list(g) + [0] * (cols - q - 1 - i))
    size = p + q - 2 * j
    return det([r[:size] for r in rows])


# univariate polynomials as coefficient lists, lowest degree first

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _rem(a, b):
    a = [Fraction(x) for x in _trim(a)]
    b = _trim(b)
    while len(a) >= len(b) and a:
        t = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= t * c
        a = _trim(a)
    return a


def _deriv(a):
    return [i * c for i, c in enumerate(a)][1:]


def _sign_changes(values) -> int:
    s = [v for v in values if v != 0]
    return sum(1 for x, y in zip(s, s[1:]) if (x > 0) != (y > 0))


def sturm_count(coeffs) -> int:
    """Number of distinct real roots of a nonzero polynomial (lowest degree first)."""
    a = _trim(coeffs)
    if len(a) <= 1:
        return 0
    seq = [a, _deriv(a)]
    while True:
        r = _rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    at_pos = [s[-1] for s in seq]
    at_neg = [s[-1] * (-1) ** (len(s) - 1) for s in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def horner(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def sturm_count_open(coeffs, lo, hi) -> int:
    """Distinct roots of a squarefree polynomial in the open interval (lo, hi)."""
    a = _trim(coeffs)
    seq = [a, _deriv(a)]
    while True:
        r = _rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def var(x):
        return _sign_changes([horner(s, x) for s in seq])

    return var(lo) - var(hi) - (1 if horner(a, hi) == 0 else 0)
