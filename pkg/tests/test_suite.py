import json
import math

import pytest

from numrad.errors import ParseError, Unachievable
from numrad.inequalities.checks import CHECK_IDS
from numrad.inequalities.families import Family
from numrad.inequalities.suite import (
    HIST_EDGES, SuiteConfig, _histogram, parse_config, render_json, render_text, run_suite, trial_plan, trial_seed,
)


def test_parse_config_all_keys():
    cfg = parse_config("""
        # comment
        checks = basic_bounds, prop_l1
        families = Hermitian, SquareZero
        dims = 2-4, 7
        trials = 12
        master_seed = 99
        tol = 1e-7
        strict_margin = 1e-5
        p_list = 1, 3, inf
        radius_tol = 1e-9
        audit_probes = 0
        workers = 2
    """)
    assert cfg.checks == ("basic_bounds", "prop_l1")
    assert cfg.families == (Family.HERMITIAN, Family.SQUARE_ZERO)
    assert cfg.dims == (2, 3, 4, 7) and cfg.trials == 12 and cfg.master_seed == 99
    assert cfg.p_list == (1.0, 3.0, math.inf)
    assert cfg.effective_radius_tol == 1e-9 and cfg.workers == 2


def test_defaults():
    cfg = SuiteConfig()
    assert cfg.checks == CHECK_IDS and cfg.trials == 1000 and cfg.dims == tuple(range(2, 9))
    assert cfg.tol == 1e-8 and cfg.effective_radius_tol == 1e-9 and cfg.strict_margin == 1e-6
    assert parse_config("checks = all\nfamilies = all\n") == cfg


@pytest.mark.parametrize("text", [
    "bogus = 1", "trials", "trials = x", "checks = nope", "dims = 1-3", "dims = 9", "tol = -1",
    "p_list = 0.5", "families = Normal", "trials = -1",
])
def test_parse_config_errors(text):
    with pytest.raises(ParseError):
        parse_config(text)


def test_trial_seeds_are_stable_and_distinct():
    assert trial_seed(1, "basic_bounds", 0) == trial_seed(1, "basic_bounds", 0)
    seeds = {trial_seed(1, cid, t) for cid in CHECK_IDS for t in range(50)}
    assert len(seeds) == 13 * 50
    assert all(0 <= s < 2 ** 64 for s in seeds)
    assert trial_seed(2, "basic_bounds", 0) != trial_seed(1, "basic_bounds", 0)


def test_trial_plan_rotation():
    cfg = SuiteConfig(dims=(2, 3), families=(Family.HERMITIAN, Family.UNITARY, Family.SQUARE_ZERO))
    plans = [trial_plan(cfg, "basic_bounds", t) for t in range(6)]
    assert {(p.dim, p.family) for p in plans} == {(d, f) for d in (2, 3) for f in cfg.families}


def test_zero_trials_pass_vacuously():
    rep = run_suite(SuiteConfig(trials=0))
    assert rep.passed and rep.failures == 0
    assert render_text(rep).rstrip().endswith("SUITE PASS failures=0")
    assert all(c.trials == 0 and c.min_slack == math.inf for c in rep.checks)


def test_single_check_report():
    rep = run_suite(SuiteConfig(checks=("basic_bounds",), families=(Family.HERMITIAN,), trials=10))
    assert len(rep.checks) == 1 and rep.passed
    text = render_text(rep)
    assert text.count("[check ") == 1
    # Hermitian inputs: w = ||T|| up to the certificate width
    outcomes = {}
    run_suite(SuiteConfig(checks=("basic_bounds",), families=(Family.HERMITIAN,), trials=10), collect=outcomes)
    assert all(abs(o.chain_slacks[1]) <= 2e-9 for o in outcomes["basic_bounds"])


def test_deterministic_report():
    cfg = SuiteConfig(trials=6)
    r1, r2 = run_suite(cfg), run_suite(cfg)
    assert render_text(r1, include_wall_time=False) == render_text(r2, include_wall_time=False)
    assert render_json(r1, include_wall_time=False) == render_json(r2, include_wall_time=False)
    assert r1 == r2   # wall time is excluded from equality


def test_workers_do_not_change_results():
    cfg = SuiteConfig(checks=("basic_bounds", "prop_l1"), trials=8)
    serial = run_suite(cfg)
    parallel = run_suite(SuiteConfig(checks=cfg.checks, trials=8, workers=2))
    assert render_text(serial, False).replace("workers", "") == render_text(parallel, False).replace("workers", "")


def test_json_rendering_is_complete():
    rep = run_suite(SuiteConfig(checks=("remarks",), trials=3))
    d = json.loads(render_json(rep))
    assert d["summary"] == "SUITE PASS failures=0" and d["failures"] == 0
    rec = d["checks"][0]
    assert set(rec) >= {"check_id", "trials", "failures", "min_slack", "histogram", "audit"}
    assert sum(rec["histogram"]) == 3
    assert d["config"]["trials"] == 3 and "wall_time_s" in d


def test_histogram_bins():
    counts = _histogram([-1.0, -1e-9, 0.0, 5e-13, 0.5, 2.0])
    assert len(counts) == len(HIST_EDGES) - 1 and sum(counts) == 6
    assert counts[0] == 1 and counts[1] == 1 and counts[-1] == 1
    assert counts[2] == 2   # [0, 1e-12) holds both 0 and 5e-13


def test_unachievable_tolerance_propagates():
    with pytest.raises(Unachievable):
        run_suite(SuiteConfig(checks=("basic_bounds",), trials=1, tol=1e-20))


def test_failure_is_recorded(monkeypatch):
    from numrad.inequalities import checks

    def broken(t, settings=checks.CheckSettings(), instance=None):
        return checks._finish("basic_bounds", [1.0, 0.0], settings, instance)

    d = checks.REGISTRY["basic_bounds"]
    monkeypatch.setitem(checks.REGISTRY, "basic_bounds",
                        checks.CheckDef(d.check_id, checks._single(broken), True, False, d.statement))
    rep = run_suite(SuiteConfig(checks=("basic_bounds",), trials=3))
    assert rep.failures == 3 and not rep.passed
    assert rep.summary_line() == "SUITE FAIL failures=3"
    assert rep.checks[0].failed_trials == (0, 1, 2)


def test_ill_conditioned_is_a_failure_not_a_crash(monkeypatch):
    from numrad import linalg
    monkeypatch.setattr(linalg.config, "max_sweeps", 0)
    rep = run_suite(SuiteConfig(checks=("basic_bounds",), families=(Family.GENERAL_COMPLEX,), trials=2))
    assert rep.failures == 2
