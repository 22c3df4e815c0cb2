import json
import subprocess
import sys

import pytest

from localcad.cli import EXIT_ORACLE, EXIT_PARSE, EXIT_RESOURCE, EXIT_USAGE, main

EXAMPLE1 = (
    "vars x, y;\n"
    "4*x^2 + y^2 - 4 < 0 or (x^2 + y^2 - 1 <= 0 and 16*x^6 - 24*x^4 + 9*x^2 + 4*y^4 - 4*y^2 <= 0);\n"
)


@pytest.fixture
def problem(tmp_path):
    def write(text, name="p.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


def _stats_line(text):
    line = next(l for l in text.splitlines() if l.startswith("method="))
    return dict(kv.split("=", 1) for kv in line.split() if "=" in kv and not kv.startswith("levels"))


def test_example1_lpcad_stats(problem, capsys):
    assert main([problem(EXAMPLE1), "--method", "lpcad", "--emit", "stats", "--check", "2000"]) == 0
    out = capsys.readouterr().out
    assert _stats_line(out)["cells"] == "13"
    assert "oracle: pass (2000 points)" in out


def test_example1_cad_stats(capsys):
    assert main(["--example", "example1", "--method", "cad-mc", "--emit", "stats"]) == 0
    assert _stats_line(capsys.readouterr().out)["cells"] == "357"


def test_caf_output(problem, capsys):
    assert main([problem("vars x; not (x^2 = 1);")]) == 0
    assert capsys.readouterr().out.strip() == "x < -1 or -1 < x < 1 or 1 < x"


def test_constant_system(problem, capsys):
    assert main([problem("vars x; 0 < 1"), "--emit", "caf", "--emit", "stats"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "true"
    assert _stats_line(out)["cells"] == "1"


def test_file_option_selects_method(problem, capsys):
    assert main([problem("vars x;\noption method = cad-mc;\nx^2 < 0;"), "--emit", "stats"]) == 0
    stats = _stats_line(capsys.readouterr().out)
    assert stats["method"] == "cad-mc" and stats["cells"] == "3"


def test_json_schema_and_determinism(problem, capsys):
    path = problem(EXAMPLE1)
    docs = []
    for _ in range(2):
        assert main([path, "--emit", "json", "--no-time", "--seed", "7"]) == 0
        docs.append(capsys.readouterr().out)
    assert docs[0] == docs[1]
    doc = json.loads(docs[0])
    stats = doc["stats"]
    for key in ("schema_version", "method", "cells", "levels", "peval", "iterations", "well_oriented"):
        assert key in stats
    assert "time_ms" not in stats
    assert set(stats["peval"]) == {"decided_cnf", "decided_dnf", "undecided"}
    assert all(set(lv) == {"k", "proj_size"} for lv in stats["levels"])
    assert doc["vars"] == ["x", "y"]
    assert main([path, "--emit", "json"]) == 0
    assert "time_ms" in json.loads(capsys.readouterr().out)["stats"]


def test_trace_lines(problem, capsys):
    assert main([problem(EXAMPLE1), "--emit", "trace"]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.startswith("trace ")]
    assert len(lines) == 18
    assert sum(" level=1 " in l for l in lines) == 5
    assert lines[0] == "trace level=2 interval=(-oo, +oo) sample=0 by=DNF witnesses=1 value=true"


def test_parse_error_exit_code(problem, capsys):
    assert main([problem("vars x;\nx + > 0")]) == EXIT_PARSE
    assert "line 2, column 5" in capsys.readouterr().err


def test_quantifier_exit_code(problem, capsys):
    assert main([problem("vars x, y; exists y: x*y > 1")]) == EXIT_PARSE
    assert "quantifier" in capsys.readouterr().err


def test_resource_exit_code(problem, capsys):
    assert main([problem(EXAMPLE1), "--max-steps", "2"]) == EXIT_RESOURCE
    assert "resource limit" in capsys.readouterr().err


def test_usage_errors(problem, capsys):
    assert main([]) == EXIT_USAGE
    assert main([problem("vars x; x > 0"), "--example", "ball"]) == EXIT_USAGE
    assert main([problem("vars x;\noption method = magic;\nx > 0")]) == EXIT_USAGE
    assert main(["/nonexistent/problem.txt"]) == EXIT_USAGE
    with pytest.raises(SystemExit) as e:
        main(["--method", "nope", "--example", "ball"])
    assert e.value.code == 2


def test_oracle_exit_code(monkeypatch, problem, capsys):
    import localcad.cli as cli
    from localcad.lpcad import solve

    def wrong(system, vars, options):
        return False, solve(system, vars, options)[1]

    monkeypatch.setattr(cli, "solve", wrong)
    assert main([problem("vars x; x > 0"), "--check", "100"]) == EXIT_ORACLE
    assert "FAIL" in capsys.readouterr().out


def test_stdin_and_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "localcad", "-", "--emit", "stats", "--no-time"],
        input="vars x; x^2 - 2 < 0;",
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert res.returncode == 0
    assert "cells=5" in res.stdout
