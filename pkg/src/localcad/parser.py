"""Reader and writer for the problem-file format.

    # comment
    vars x, y;
    option method = lpcad;
    4*x^2 + y^2 - 4 < 0 or (x^2 + y^2 - 1 <= 0 and not y > 1)

Polynomials use ``+ - * / ^`` with explicit ``*``; division is only allowed
by nonzero constants.  Relations are ``< <= = != >= >`` (``==`` and ``<>``
are accepted too) and may be chained.  Boolean connectives are
``and``/``or``/``not`` or ``&&``/``||``/``!``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .exact import rat
from .formula import And, Atom, Or, conj, disj, negate
from .poly import Poly, VarOrder, render


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


class UnsupportedFeature(ParseError):
    pass


QUANTIFIERS = {"exists", "forall", "Exists", "ForAll", "ex", "all"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><=|>=|==|!=|<>|&&|\|\||[-+*/^(),;<>=!])
  | (?P<quant>[∀∃])
    """,
    re.VERBOSE,
)

_RELS = {"<": "<", "<=": "<=", "=": "=", "==": "=", "!=": "!=", "<>": "!=", ">=": ">=", ">": ">"}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


@dataclass
class Problem:
    vars: VarOrder
    system: object
    options: dict = field(default_factory=dict)


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        tok = m.group()
        if kind == "quant" or (kind == "name" and tok in QUANTIFIERS):
            raise UnsupportedFeature("quantifiers are not supported; give a quantifier-free system", line, pos - line_start + 1)
        if kind != "ws":
            out.append(Token(kind, tok, line, pos - line_start + 1))
        for k, ch in enumerate(tok):
            if ch == "\n":
                line += 1
                line_start = pos + k + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, tokens, vars: VarOrder | None):
        self.toks = tokens
        self.i = 0
        self.vars = vars
        self.furthest = None

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def at(self, *texts) -> bool:
        t = self.tok
        return t.kind in ("op", "name") and t.text in texts

    def eat(self, *texts) -> Token | None:
        if self.at(*texts):
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text):
        t = self.eat(text)
        if t is None:
            raise self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return t

    # header
    def header(self):
        if not self.at("vars"):
            raise self.error("a problem starts with 'vars name, ...;'")
        self.i += 1
        names = [self.ident()]
        while self.eat(","):
            names.append(self.ident())
        self.expect(";")
        self.vars = VarOrder(names)

    def ident(self) -> str:
        t = self.tok
        if t.kind != "name":
            raise self.error(f"expected a name, found {t.text!r}")
        self.i += 1
        return t.text

    # boolean level
    def formula(self):
        return self.disjunction()

    def disjunction(self):
        parts = [self.conjunction()]
        while self.eat("or", "||"):
            parts.append(self.conjunction())
        return disj(*parts) if len(parts) > 1 else parts[0]

    def conjunction(self):
        parts = [self.negation()]
        while self.eat("and", "&&"):
            parts.append(self.negation())
        return conj(*parts) if len(parts) > 1 else parts[0]

    def negation(self):
        if self.eat("not", "!"):
            return negate(self.negation())
        return self.primary()

    def primary(self):
        t = self.tok
        if t.kind == "name" and t.text in QUANTIFIERS:
            raise UnsupportedFeature("quantifiers are not supported; give a quantifier-free system", t.line, t.col)
        if self.eat("true"):
            return True
        if self.eat("false"):
            return False
        start = self.i
        try:
            return self.relation()
        except ParseError as err:
            self._note(err)
            if not self.toks[start].text == "(":
                raise self._best()
        self.i = start
        self.expect("(")
        try:
            f = self.formula()
            self.expect(")")
        except ParseError as err:
            self._note(err)
            raise self._best()
        return f

    def _note(self, err):
        key = (err.line or 0, err.col or 0)
        if self.furthest is None or key >= (self.furthest.line or 0, self.furthest.col or 0):
            self.furthest = err

    def _best(self):
        return self.furthest

    def relation(self):
        lhs = self.sum()
        if not (self.tok.kind == "op" and self.tok.text in _RELS):
            raise self.error(f"expected a relation after a polynomial, found {self.tok.text or 'end of input'!r}")
        parts = []
        while self.tok.kind == "op" and self.tok.text in _RELS:
            rel = _RELS[self.tok.text]
            self.i += 1
            rhs = self.sum()
            parts.append(_atom(lhs - rhs, rel))
            lhs = rhs
        return conj(*parts) if len(parts) > 1 else parts[0]

    # polynomial level
    def sum(self) -> Poly:
        acc = self.product()
        while True:
            if self.eat("+"):
                acc = acc + self.product()
            elif self.eat("-"):
                acc = acc - self.product()
            else:
                return acc

    def product(self) -> Poly:
        acc = self.unary()
        while True:
            if self.eat("*"):
                acc = acc * self.unary()
            elif self.at("/"):
                t = self.tok
                self.i += 1
                d = self.unary()
                if not d.is_constant() or d.is_zero():
                    raise self.error("division only by nonzero constants", t)
                acc = acc * (1 / d.constant_value())
            else:
                return acc

    def unary(self) -> Poly:
        if self.eat("-"):
            return -self.unary()
        if self.eat("+"):
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.eat("^"):
            t = self.tok
            neg = bool(self.eat("-"))
            t = self.tok
            if t.kind != "num" or "." in t.text or neg:
                raise self.error("exponent must be a non-negative integer", t)
            self.i += 1
            base = base ** int(t.text)
        return base

    def atom(self) -> Poly:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return self.vars.const(rat(t.text))
        if t.kind == "name":
            if t.text in QUANTIFIERS:
                raise UnsupportedFeature("quantifiers are not supported; give a quantifier-free system", t.line, t.col)
            if t.text not in self.vars.names:
                raise self.error(f"undeclared variable {t.text!r}")
            self.i += 1
            return self.vars.var(t.text)
        if self.eat("("):
            p = self.sum()
            self.expect(")")
            return p
        raise self.error(f"unexpected {t.text or 'end of input'!r}")


def _atom(p: Poly, rel: str):
    if p.is_constant():
        return Atom(p, rel).holds((p.constant_value() > 0) - (p.constant_value() < 0))
    return Atom(p, rel)


_OPTION = re.compile(r"^\s*option\s+([A-Za-z_][A-Za-z0-9_-]*)\s*=\s*([^;#]*?)\s*;?\s*(#.*)?$")


def parse_problem(text: str) -> Problem:
    """Parse a problem file: variable declaration, options, one formula."""
    options = {}
    lines = []
    for n, line in enumerate(text.splitlines(), start=1):
        stripped = line.lstrip()
        if stripped.startswith("#"):
            lines.append("")
            continue
        if stripped.startswith("option ") or stripped.startswith("option\t"):
            m = _OPTION.match(line)
            if not m:
                raise ParseError("malformed option line", n, 1)
            options[m.group(1)] = m.group(2)
            lines.append("")
            continue
        lines.append(line.split("#", 1)[0])
    p = _Parser(_tokenize("\n".join(lines)), None)
    p.header()
    f = p.formula()
    p.eat(";")
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after the formula")
    return Problem(p.vars, f, options)


def parse_system(text: str):
    """``(VarOrder, formula)`` from problem text."""
    prob = parse_problem(text)
    return prob.vars, prob.system


def parse_formula(text: str, vars: VarOrder):
    p = _Parser(_tokenize(text), vars)
    f = p.formula()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after the formula")
    return f


def render_formula(f) -> str:
    if f is True:
        return "true"
    if f is False:
        return "false"
    if isinstance(f, Atom):
        return f"{render(f.poly)} {f.rel} 0"
    joiner = " and " if isinstance(f, And) else " or "
    parts = []
    for a in f.args:
        s = render_formula(a)
        parts.append(f"({s})" if isinstance(a, (And, Or)) else s)
    return joiner.join(parts)


def render_system(vars: VarOrder, f, options: dict | None = None) -> str:
    lines = [f"vars {', '.join(vars.names)};"]
    for k, v in (options or {}).items():
        lines.append(f"option {k} = {v};")
    lines.append(render_formula(f) + ";")
    return "\n".join(lines) + "\n"
