"""Benchmark systems and a random system generator."""

from __future__ import annotations

import random

from .formula import Atom, Cells, RootFunction, Section, Sector, conj, disj
from .poly import VarOrder


def example1():
    """Disk-and-lemniscate union in the plane."""
    V = VarOrder(["x", "y"])
    x, y = V.var(1), V.var(2)
    f1 = 4 * x**2 + y**2 - 4
    f2 = x**2 + y**2 - 1
    f3 = 16 * x**6 - 24 * x**4 + 9 * x**2 + 4 * y**4 - 4 * y**2
    return V, disj(Atom(f1, "<"), conj(Atom(f2, "<="), Atom(f3, "<=")))


def example1_polys():
    V, _ = example1()
    x, y = V.var(1), V.var(2)
    return (
        4 * x**2 + y**2 - 4,
        x**2 + y**2 - 1,
        16 * x**6 - 24 * x**4 + 9 * x**2 + 4 * y**4 - 4 * y**2,
    )


def quartic():
    """Nonnegativity of a general quartic: a x^4 + b x^3 + c x^2 + d x + e >= 0."""
    V = VarOrder(["a", "b", "c", "d", "e", "x"])
    a, b, c, d, e, x = (V.var(i) for i in range(1, 7))
    return V, Atom(a * x**4 + b * x**3 + c * x**2 + d * x + e, ">=")


def two_quadratics():
    """a x^2 + b x + c >= 0 and d x^2 + e x + f >= 0."""
    V = VarOrder(["a", "b", "c", "d", "e", "f", "x"])
    a, b, c, d, e, f, x = (V.var(i) for i in range(1, 8))
    return V, conj(Atom(a * x**2 + b * x + c, ">="), Atom(d * x**2 + e * x + f, ">="))


def unit_ball():
    V = VarOrder(["x", "y", "z"])
    x, y, z = V.var(1), V.var(2), V.var(3)
    return V, Atom(x**2 + y**2 + z**2 - 1, "<=")


def ball_caf():
    """Hand-written cylindrical formula for the closed unit ball."""
    V = VarOrder(["x", "y", "z"])
    x, y, z = V.var(1), V.var(2), V.var(3)
    disk = x**2 + y**2 - 1
    sphere = x**2 + y**2 + z**2 - 1
    z0 = Cells(3, ((Section(3, RootFunction(z, 1)), True),))
    y0 = Cells(2, ((Section(2, RootFunction(y, 1)), z0),))
    r1, r2 = RootFunction(disk, 1), RootFunction(disk, 2)
    r3, r4 = RootFunction(sphere, 1), RootFunction(sphere, 2)
    b22 = Cells(3, ((Section(3, r3), True), (Sector(3, r3, r4), True), (Section(3, r4), True)))
    b2 = Cells(2, ((Section(2, r1), z0), (Sector(2, r1, r2), b22), (Section(2, r2), z0)))
    F = Cells(
        1,
        (
            (Section(1, RootFunction(x + 1, 1)), y0),
            (Sector(1, RootFunction(x + 1, 1), RootFunction(x - 1, 1)), b2),
            (Section(1, RootFunction(x - 1, 1)), y0),
        ),
    )
    return V, F


CORPUS = {
    "example1": example1,
    "quartic": quartic,
    "two-quadratics": two_quadratics,
    "ball": unit_ball,
}


def random_quadratic(rng: random.Random, V: VarOrder, terms: int, bits: int):
    """Random polynomial of total degree <= 2 in all variables of ``V``."""
    n = V.n
    monos = [()]
    monos += [(i,) for i in range(n)]
    monos += [(i, j) for i in range(n) for j in range(i, n)]
    chosen = rng.sample(monos, min(terms, len(monos)))
    if not any(len(m) == 2 and n - 1 in m for m in chosen) and not any(m == (n - 1,) for m in chosen):
        chosen[0] = (n - 1, n - 1)
    out = {}
    bound = 2 ** bits - 1
    for m in chosen:
        e = [0] * n
        for i in m:
            e[i] += 1
        c = 0
        while c == 0:
            c = rng.randint(-bound, bound)
        out[tuple(e)] = c
    return V.from_dict(out)


def random_system(seed: int, nvars: int = 3, natoms: int = 2, terms=(3, 6), bits: int = 4):
    """Random conjunction/disjunction of quadratic atoms.

    The default shape is small enough for exhaustive checking; the benchmark
    shape (6-15 terms, 10-bit coefficients, 5-7 variables) is reachable via
    the keyword arguments.
    """
    rng = random.Random(seed)
    V = VarOrder([f"x{i}" for i in range(1, nvars + 1)])
    rels = ["<", "<=", ">", ">=", "=", "!="]
    weights = [3, 3, 3, 3, 1, 1]
    atoms = []
    for _ in range(natoms):
        p = random_quadratic(rng, V, rng.randint(*terms), bits)
        atoms.append(Atom(p, rng.choices(rels, weights)[0]))
    if natoms == 1:
        return V, atoms[0]
    if rng.random() < 0.5:
        return V, conj(*atoms)
    return V, disj(atoms[0], conj(*atoms[1:]))
