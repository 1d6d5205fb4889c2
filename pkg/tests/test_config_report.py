import json
from fractions import Fraction

import pytest

from hclass.config import DEFAULT_A_MAX, DEFAULT_C_MAX, DEFAULT_LATTICE_BOUND, TOLERANCES, build_config, read_config_file
from hclass.rational import PiRational
from hclass.report import dump_reports, exact_report, numeric_report


def test_defaults():
    cfg = build_config(env={})
    t = cfg.truncation
    assert (t.a_max, t.c_max, t.lattice_bound) == (DEFAULT_A_MAX, DEFAULT_C_MAX, DEFAULT_LATTICE_BOUND) == (50_000, 20_000, 3000)
    assert cfg.tolerance("thm-1-2") == 1e-4


def test_quick_halves_bounds_and_relaxes_truncated_suites():
    cfg = build_config({"quick": True}, env={})
    assert cfg.truncation.a_max == 25_000 and cfg.truncation.lattice_bound == 1500 and cfg.truncation.c_max == 10_000
    assert cfg.tolerance("cor-1-5") == pytest.approx(1e-2)
    assert cfg.tolerance("thm-1-1") == 1e-9


def test_config_file(tmp_path):
    f = tmp_path / "h.conf"
    f.write_text("# comment\na-max = 1000\nlattice_bound = 77  # trailing\nseed = 4\nquick = yes\n")
    assert read_config_file(str(f)) == {"a_max": 1000, "lattice_bound": 77, "seed": 4, "quick": True}
    cfg = build_config({"seed": 9}, env={"HCLASS_CONFIG": str(f)})
    assert cfg.seed == 9
    assert cfg.truncation.a_max == 500
    f.write_text("bogus = 1\n")
    with pytest.raises(ValueError):
        read_config_file(str(f))


def test_override_tolerance_keeps_exact_suites_exact():
    cfg = build_config({"tol": 1e-3}, env={})
    assert cfg.tolerance("thm-1-1") == 1e-3
    assert cfg.tolerance("exact") is None


def test_every_tolerance_has_rationale():
    assert all(isinstance(r, str) and r for _, r in TOLERANCES.values())


def test_exact_report():
    r = exact_report("x", {"k": 2}, Fraction(1, 3), Fraction(1, 3))
    assert r.passed and r.abs_error == 0 and r.lhs == "1/3"
    r = exact_report("x", {}, PiRational(Fraction(1, 6), 2), PiRational(Fraction(1, 6), 2))
    assert r.passed
    r = exact_report("x", {}, Fraction(1), Fraction(2))
    assert not r.passed and r.recompute_pass() == r.passed


def test_numeric_report_scale():
    r = numeric_report("x", {}, 1e-12, -1e-12, 1e-6, scale=1.0)
    assert r.passed and r.notes["error_scale"] == 1.0
    r = numeric_report("x", {}, 1e-12, -1e-12, 1e-6)
    assert not r.passed
    assert r.recompute_pass() == r.passed


def test_dump_sorted_and_deterministic():
    reps = [
        numeric_report("b", {"n": 10}, 1.0, 1.0, 1e-9),
        numeric_report("b", {"n": 9}, 1.0, 1.0, 1e-9),
        numeric_report("a", {"n": 1}, 1.0, 1.0, 1e-9),
    ]
    text = dump_reports(reps)
    data = json.loads(text)
    assert [(d["identity_id"], d["parameters"]["n"]) for d in data] == [("a", 1), ("b", 9), ("b", 10)]
    assert set(data[0]) == {
        "identity_id", "parameters", "lhs", "rhs", "abs_error", "rel_error", "tolerance", "tail_bounds", "pass", "runtime_ms", "notes"
    }
    assert text == dump_reports(list(reversed(reps)))
