"""Exact rational arithmetic helpers.

Rationals are ``flint.fmpq`` values; they are hashable, always reduced and
compare exactly with Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from flint import fmpq, fmpz

BigRat = fmpq


def rat(value, den=None) -> fmpq:
    """Build an exact rational from an int, a Fraction, a string or a fmpq.

    Floats are refused on purpose: every number in this package is exact.
    """
    if den is not None:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return fmpq(int(value), int(den))
    if isinstance(value, fmpq):
        return value
    if isinstance(value, bool):
        return fmpq(int(value))
    if isinstance(value, (int, fmpz)):
        return fmpq(int(value))
    if isinstance(value, Fraction):
        return fmpq(value.numerator, value.denominator)
    if isinstance(value, str):
        f = Fraction(value.strip())
        return fmpq(f.numerator, f.denominator)
    raise TypeError(f"cannot build an exact rational from {type(value).__name__}")


def floor(q: fmpq) -> int:
    return int(q.floor())


def ceil(q: fmpq) -> int:
    return int(q.ceil())


def to_fraction(q: fmpq) -> Fraction:
    return Fraction(int(q.p), int(q.q))


def format_rat(q: fmpq) -> str:
    return str(q)


@dataclass(frozen=True)
class RatInterval:
    """Open interval with rational endpoints; ``None`` means unbounded."""

    lo: fmpq | None
    hi: fmpq | None

    def __post_init__(self):
        if self.lo is not None and self.hi is not None and not self.lo < self.hi:
            raise ValueError("empty interval")

    def __contains__(self, q) -> bool:
        return (self.lo is None or self.lo < q) and (self.hi is None or q < self.hi)

    def width(self):
        if self.lo is None or self.hi is None:
            return None
        return self.hi - self.lo

    def simplest(self) -> fmpq:
        return simplest_rational(self.lo, self.hi)


def simplest_rational(lo=None, hi=None) -> fmpq:
    """Rational with the smallest denominator strictly inside ``(lo, hi)``.

    Among candidates with that denominator the one of smallest absolute value
    is returned. ``None`` stands for an infinite endpoint.
    """
    if lo is not None:
        lo = rat(lo)
    if hi is not None:
        hi = rat(hi)
    if lo is not None and hi is not None and not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if (lo is None or lo < 0) and (hi is None or hi > 0):
        return fmpq(0)
    if lo is not None and lo >= 0:
        return _simplest_nonneg(lo, hi)
    return -_simplest_nonneg(-hi, None if lo is None else -lo)


def _simplest_nonneg(lo: fmpq, hi: fmpq | None) -> fmpq:
    # 0 <= lo < hi; continued fraction descent
    n = floor(lo)
    if hi is None or n + 1 < hi:
        return fmpq(n + 1)
    lo_frac = lo - n
    hi_frac = hi - n
    inner = _simplest_nonneg(1 / hi_frac, None if lo_frac == 0 else 1 / lo_frac)
    return n + 1 / inner
