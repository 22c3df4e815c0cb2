import random

import pytest
from flint import fmpq

from conftest import random_poly
from localcad.formula import Atom, conj, disj
from localcad.parser import (
    ParseError,
    UnsupportedFeature,
    parse_formula,
    parse_problem,
    parse_system,
    render_formula,
    render_system,
)
from localcad.poly import VarOrder
from localcad.problems import example1

EXAMPLE1 = (
    "vars x,y; 4*x^2 + y^2 - 4 < 0 or (x^2+y^2-1 <= 0 and "
    "16*x^6-24*x^4+9*x^2+4*y^4-4*y^2 <= 0)"
)


def test_example1_text():
    V, S = parse_system(EXAMPLE1)
    W, T = example1()
    assert V.names == W.names
    assert S == T


def test_constant_relation():
    _, S = parse_system("vars x; 0 < 1")
    assert S is True
    _, S = parse_system("vars x; 1 <= 0")
    assert S is False


def test_not_flips_relation():
    V, S = parse_system("vars x; not (x^2 = 1)")
    x = V.var(1)
    assert S == Atom(x**2 - 1, "!=")
    V, S = parse_system("vars x, y; not (x > 0 and y <= 1)")
    x, y = V.var(1), V.var(2)
    assert S == disj(Atom(x, "<="), Atom(y - 1, ">"))


def test_rational_literals_and_division():
    V, S = parse_system("vars x; x/2 + 3/4 >= 1.5")
    x = V.var(1)
    assert S == Atom(x * fmpq(1, 2) - fmpq(3, 4), ">=")


def test_options_and_comments():
    prob = parse_problem("# a comment\nvars x;\noption method = cad-mc;\nx > 0; # trailing\n")
    assert prob.options == {"method": "cad-mc"}
    assert prob.system == Atom(prob.vars.var(1), ">")


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("vars x;\nx + > 0", 2, 5),
        ("vars x;\nx > 0 and y < 1", 2, 11),
        ("vars x;\n\n  x $ 1", 3, 5),
        ("x > 0", 1, 1),
    ],
)
def test_errors_report_position(text, line, col):
    with pytest.raises(ParseError) as e:
        parse_system(text)
    assert (e.value.line, e.value.col) == (line, col)


def test_undeclared_variable_message():
    with pytest.raises(ParseError, match="y"):
        parse_system("vars x; y > 0")


@pytest.mark.parametrize("text", ["vars x, y; exists y: x*y > 1", "vars x; forall x (x > 0)", "vars x; ∃ x > 0"])
def test_quantifiers_rejected(text):
    with pytest.raises(UnsupportedFeature, match="quantifier"):
        parse_system(text)


def _random_formula(rng, V, depth):
    if depth == 0 or rng.random() < 0.3:
        p = random_poly(rng, V, (2,) * V.n, rng.randint(1, 4), 12)
        while p.is_constant():
            p = random_poly(rng, V, (2,) * V.n, rng.randint(1, 4), 12)
        if rng.random() < 0.3:
            p = p * fmpq(rng.randint(1, 5), rng.randint(1, 7))
        return Atom(p, rng.choice(["<", "<=", "=", "!=", ">=", ">"]))
    args = [_random_formula(rng, V, depth - 1) for _ in range(rng.randint(2, 3))]
    return conj(*args) if rng.random() < 0.5 else disj(*args)


def test_round_trip_random_systems():
    rng = random.Random(11)
    for _ in range(100):
        V = VarOrder([f"v{i}" for i in range(rng.randint(1, 4))])
        S = _random_formula(rng, V, 3)
        text = render_system(V, S)
        W, T = parse_system(text)
        assert W.names == V.names
        assert T == S, text


def test_render_formula_round_trip_without_header():
    V, S = example1()
    assert parse_formula(render_formula(S), V) == S
