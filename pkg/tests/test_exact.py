from fractions import Fraction
import random

import pytest
from flint import fmpq

from localcad.exact import RatInterval, ceil, floor, format_rat, rat, simplest_rational, to_fraction


def test_rat_accepts_exact_inputs():
    assert rat(3) == fmpq(3)
    assert rat("7/4") == fmpq(7, 4)
    assert rat("1.25") == fmpq(5, 4)
    assert rat(Fraction(-2, 6)) == fmpq(-1, 3)
    assert rat(1, 3) == fmpq(1, 3)


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)


def test_floor_ceil_format():
    q = fmpq(-7, 2)
    assert floor(q) == -4 and ceil(q) == -3
    assert to_fraction(q) == Fraction(-7, 2)
    assert format_rat(q) == "-7/2"
    assert format_rat(fmpq(5)) == "5"


@pytest.mark.parametrize(
    "lo, hi, expected",
    [
        (None, None, 0),
        (None, -2, -3),
        (2, None, 3),
        (-1, 1, 0),
        (1, 2, fmpq(3, 2)),
        (fmpq(1, 3), fmpq(1, 2), fmpq(2, 5)),
        (fmpq(-1, 2), fmpq(-1, 3), fmpq(-2, 5)),
        (3, 4, fmpq(7, 2)),
    ],
)
def test_simplest_rational_examples(lo, hi, expected):
    assert simplest_rational(lo, hi) == expected


def _brute_simplest(lo: Fraction, hi: Fraction) -> Fraction:
    """Smallest denominator, then smallest absolute numerator, strictly inside."""
    d = 1
    while True:
        cands = []
        n0 = (lo * d).__floor__() + 1
        n = n0
        while Fraction(n, d) < hi:
            cands.append(Fraction(n, d))
            n += 1
        if cands:
            return min(cands, key=abs)
        d += 1


def test_simplest_rational_minimal_denominator():
    rng = random.Random(7)
    for _ in range(200):
        a = Fraction(rng.randint(-500, 500), rng.randint(1, 60))
        b = a + Fraction(rng.randint(1, 200), rng.randint(1, 400))
        got = to_fraction(simplest_rational(rat(a), rat(b)))
        assert a < got < b
        assert got == _brute_simplest(a, b)


def test_interval_simplest_and_membership():
    iv = RatInterval(fmpq(1, 3), fmpq(1, 2))
    assert fmpq(2, 5) in iv
    assert iv.simplest() == fmpq(2, 5)
    with pytest.raises(ValueError):
        RatInterval(fmpq(1), fmpq(0))


def test_simplest_rational_empty_interval():
    with pytest.raises(ValueError):
        simplest_rational(1, 1)
