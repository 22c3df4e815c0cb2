import random

from flint import fmpq

from conftest import random_poly
from localcad.cadbase import HONG, MCCALLUM, _Lifter, cad_solve, global_projection, mccallum_step
from localcad.formula import Atom, Cells, Section, caf_str, polys_of
from localcad.lpcad import solve
from localcad.oracle import oracle_check
from localcad.poly import VarOrder, factor_basis, level_split
from localcad.problems import example1, random_system
from localcad.projection import local_projection
from localcad.realalg import NEG_INF, POS_INF, SamplePoint, chain, compare, sign_at, simplest_between


def test_example1_counts():
    V, S = example1()
    F, stats = cad_solve(S, V)
    assert stats.cells == 357
    assert stats.well_oriented
    assert oracle_check(S, F, V, 2000).passed


def test_one_variable():
    W = VarOrder(["x"])
    t = W.var(1)
    F, stats = cad_solve(Atom(t**2 - 1, "<"), W)
    assert stats.cells == 5 and stats.true_cells == 1
    assert caf_str(F, W) == "-1 < x < 1"


def test_mccallum_step_contents():
    W = VarOrder(["x", "y"])
    x, y = W.var(1), W.var(2)
    f, g = y**2 - x, x * y - 1
    step = set(mccallum_step([f, g], 2))
    assert 4 * x in step or x in step or -4 * x in step
    assert x**3 - 1 in step or 1 - x**3 in step


def test_restart_when_not_well_oriented():
    W = VarOrder(["a", "b", "c", "d"])
    a, b, c, d = (W.var(i) for i in range(1, 5))
    # every coefficient in d vanishes on the line a = b = 0
    S = Atom(a * d**2 + b * d + a * c + b, ">")
    F, stats = cad_solve(S, W)
    assert not stats.well_oriented
    assert stats.method == "cad-mc+hong"
    assert oracle_check(S, F, W, 2000).passed


def _random_top(rng, W):
    out = []
    while len(out) < rng.randint(1, 3):
        p = random_poly(rng, W, (2,) * W.n, rng.randint(2, 5), 5)
        if p.level == W.n:
            out.append(p)
    return list(level_split(factor_basis(out), W.n)[0])


def test_local_projection_inside_global_hong():
    rng = random.Random(71)
    W = VarOrder(["a", "b", "c"])
    done = 0
    while done < 100:
        top = _random_top(rng, W)
        if not top:
            continue
        pt = chain([fmpq(rng.randint(-3, 3)), fmpq(rng.randint(-3, 3), rng.randint(1, 2))])
        local = local_projection(top, pt)
        glob = global_projection(top, W, HONG)
        for k in range(W.n):
            assert set(local.levels[k]) <= set(glob[k])
        done += 1


def _bounds(c, point):
    if isinstance(c, Section):
        v = c.bound.value(point)
        return v, v
    lo = NEG_INF if c.lower is NEG_INF else c.lower.value(point)
    hi = POS_INF if c.upper is POS_INF else c.upper.value(point)
    return lo, hi


def _inside(rng, c, point):
    """The point extended by a random coordinate inside constraint ``c``."""
    lo, hi = _bounds(c, point)
    if isinstance(c, Section):
        return point.extend(lo, True)
    if lo is NEG_INF or hi is POS_INF:
        a = simplest_between(lo, hi)
        a = a - rng.randint(0, 5) if lo is NEG_INF else a + rng.randint(0, 5)
        return point.extend(a, False)
    lo_f, hi_f = float(lo), float(hi)
    for _ in range(20):
        t = lo_f + (hi_f - lo_f) * rng.random()
        cand = fmpq(round(t * 2**30), 2**30)
        if compare(lo, cand) < 0 and compare(cand, hi) < 0:
            return point.extend(cand, False)
    return point.extend(simplest_between(lo, hi), False)


def _paths(G, path=()):
    for k, (_, sub) in enumerate(G.branches):
        if isinstance(sub, Cells):
            yield from _paths(sub, path + (k,))
        else:
            yield path + (k,)


def _descend(rng, G, path):
    point = SamplePoint()
    for k in path:
        c, G = G.branches[k]
        point = _inside(rng, c, point)
    return point


def test_sign_invariance_on_cells():
    """Input polynomials keep their sample sign at 20 extra points of every cell."""
    rng = random.Random(5)
    for seed in (0, 1, 3, 6):
        W, S = random_system(seed, nvars=2)
        polys = polys_of(S)
        levels = global_projection(polys, W, MCCALLUM)
        tree = _Lifter(S, levels, MCCALLUM, W.n).lift(SamplePoint())
        for path in _paths(tree):
            ref = [sign_at(p, _descend(random.Random(0), tree, path)) for p in polys]
            for _ in range(20):
                assert [sign_at(p, _descend(rng, tree, path)) for p in polys] == ref


def test_lpcad_and_cad_agree_and_lpcad_is_smaller():
    for seed in (0, 1, 2, 3, 4, 6):
        W, S = random_system(seed, nvars=3)
        F1, s1 = solve(S, W)
        F2, s2 = cad_solve(S, W)
        r1 = oracle_check(S, F1, W, 1000, seed)
        r2 = oracle_check(S, F2, W, 1000, seed)
        assert r1.passed and r2.passed
        assert s1.cells <= s2.cells
