"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are echoed live and
repeated in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from localcad.cadbase import cad_solve
from localcad.formula import Cells, RootFunction, Sector, count_cells, normalize_caf, peval, to_cnf, to_dnf
from localcad.lpcad import LpcadSolver, Options, solve
from localcad.oracle import oracle_check, sample_points
from localcad.problems import ball_caf, example1, example1_polys, quartic, random_system, two_quadratics, unit_ball
from localcad.projection import local_projection
from localcad.realalg import chain

RESULTS = []


def _run(num, title, fn, budget=None):
    start = time.perf_counter()
    try:
        detail = fn()
        elapsed = time.perf_counter() - start
        if budget is not None and elapsed > budget:
            raise AssertionError(f"took {elapsed:.1f}s, budget {budget}s")
        line = f"PASS criterion {num}: {title} ({detail}; {elapsed:.1f}s)"
        ok = True
    except AssertionError as e:
        elapsed = time.perf_counter() - start
        line = f"FAIL criterion {num}: {title} ({e}; {elapsed:.1f}s)"
        ok = False
    RESULTS.append(line)
    print(line, flush=True)
    return ok, line


def _within_factor_two(got, target):
    return target / 2 <= got <= target * 2


# criterion bodies


def example1_trace():
    V, S = example1()
    x = V.var(1)
    f1, f2, f3 = example1_polys()
    cnf, dnf = to_cnf(S), to_dnf(S)
    edge = [True, False]
    assert peval(cnf, chain([0, 0])) == (True, (f1, f2, f3))
    assert peval(dnf, chain([0, 0])) == (True, (f1,))
    assert peval(cnf, chain([0, -4])) == (False, (f1, f2))
    assert peval(cnf, chain([0, -2], [False, True])) == (False, (f1, f2))
    assert peval(cnf, chain([-2, 0])) == (False, (f1, f2))
    assert peval(cnf, chain([-1, 0], edge)) == (False, (f1, f3))
    assert peval(cnf, chain([-1, -1], edge)) == (False, (f1, f2))

    w1 = {x - 1, x + 1}
    levels = local_projection([f1], chain([0])).levels
    assert (set(levels[0]), set(levels[1])) == (w1, {f1})
    for a in (0, -2):
        levels = local_projection([f1, f2], chain([a])).levels
        assert (set(levels[0]), set(levels[1])) == (w1, {f1, f2})
    assert set(local_projection([x - 1, x + 1], chain([])).levels[0]) == w1
    on_edge = chain([-1], [True])
    assert local_projection([f1, f3], on_edge, skip=1).levels == ((), (f1, f3))
    levels = local_projection([f1, f2], on_edge, skip=1).levels
    assert levels[0] == () and set(levels[1]) == {f1, f2}
    assert local_projection([f1], on_edge, skip=1).levels == ((), (f1,))
    assert local_projection([], chain([])).levels == ((),)

    band = Cells(2, ((Sector(2, RootFunction(f1, 1), RootFunction(f1, 2)), True),))
    solver = LpcadSolver(S, V)
    r = solver.lpcad(chain([0]))
    assert normalize_caf(r.formula) == band and r.deps == ((x - 1, x + 1),)
    r = solver.lpcad(chain([-2]))
    assert normalize_caf(r.formula) is False and r.deps == ((x - 1, x + 1),)
    r = solver.lpcad(on_edge)
    assert normalize_caf(r.formula) is False and r.deps == ((),)
    return "7 PEval, 8 LocalProjection and 3 LPCAD values match"


def example1_end_to_end():
    V, S = example1()
    start = time.perf_counter()
    F, stats = solve(S, V)
    solve_time = time.perf_counter() - start
    assert stats.cells == 13, f"cells {stats.cells}"
    assert solve_time < 5, f"solve took {solve_time:.1f}s"
    report = oracle_check(S, F, V, 10_000)
    assert report.passed, str(report)
    return f"13 cells in {solve_time * 1000:.0f} ms, oracle pass on 10^4 points"


def example1_baseline():
    V, S = example1()
    F, stats = cad_solve(S, V)
    assert stats.cells == 357, f"cells {stats.cells}"
    return "357 cells"


def unit_ball_formula():
    V, S = unit_ball()
    _, printed = ball_caf()
    F, stats = solve(S, V)
    pts = sample_points(F, 3, 10_000)
    assert oracle_check(S, printed, V, points=pts).passed
    assert oracle_check(S, F, V, points=pts).passed
    true_cells = count_cells(printed, include_false=False)
    assert true_cells == 7, f"printed formula has {true_cells} cells"
    assert stats.true_cells == 7, f"solve produced {stats.true_cells} true cells"
    return "printed and computed formulas agree with the system on 10^4 points, 7 atomic cells"


def two_quadratics_count():
    V, S = two_quadratics()
    F, stats = solve(S, V)
    assert _within_factor_two(stats.cells, 3971), f"cells {stats.cells}"
    return f"{stats.cells} cells (target 3971)"


def quartic_counts():
    V, S = quartic()
    _, stats = solve(S, V)
    assert _within_factor_two(stats.cells, 523), f"cells {stats.cells}"
    _, hong = solve(S, V, Options(hong_only=True))
    assert _within_factor_two(hong.cells, 1375), f"hong-only cells {hong.cells}"
    return f"{stats.cells} cells (target 523), hong-only {hong.cells} (target 1375)"


def property_suites():
    import test_formula
    import test_poly
    import test_projection
    import test_realalg

    test_poly.test_resultant_univariate_matches_sylvester()
    test_poly.test_resultant_bivariate_matches_sylvester()
    test_realalg.test_root_count_matches_sturm()
    test_poly.test_factor_basis_properties()
    test_formula.test_normal_forms_preserve_truth()
    test_projection.test_iteration_bound()
    test_projection.test_restart_on_nullification()

    iterations = 0
    for seed in range(20):
        W, S = random_system(seed, nvars=3)
        F1, s1 = solve(S, W, Options(check_partition=True))
        F2, _ = cad_solve(S, W)
        pts = sample_points(F1, W.n, 10_000, seed)
        r1 = oracle_check(S, F1, W, points=pts)
        assert r1.passed, f"seed {seed} lpcad: {r1}"
        r2 = oracle_check(S, F2, W, points=pts)
        assert r2.passed, f"seed {seed} cad: {r2}"
        iterations += s1.iterations
    return f"all suites pass, 20 systems x 10^4 points for both solvers, {iterations} stack-loop iterations with the partition check on"


def substitutes_passed():
    """No inputs exist for these benchmarks; criteria 5 to 7 stand in for them."""
    for num in (5, 6, 7):
        lines = [l for l in RESULTS if l.split(":")[0].endswith(f"criterion {num}")]
        assert lines, f"criterion {num} was not run"
        assert lines[-1].startswith("PASS"), f"criterion {num} failed"
    return "no published inputs; substitutes 5, 6 and 7 passed"


CRITERIA = [
    (1, "example1 trace values", example1_trace, 5),
    (2, "example1 end to end", example1_end_to_end, None),
    (3, "example1 full CAD baseline", example1_baseline, 60),
    (4, "unit ball formula", unit_ball_formula, 10),
    (5, "two quadratics cell count", two_quadratics_count, 600),
    (6, "quartic cell counts", quartic_counts, 600),
    (7, "property suites", property_suites, None),
    (8, "unprinted benchmarks", substitutes_passed, None),
]


@pytest.mark.parametrize("num, title, fn, budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, budget, capsys):
    with capsys.disabled():
        print()
        ok, line = _run(num, title, fn, budget)
    assert ok, line


if __name__ == "__main__":
    results = [_run(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
