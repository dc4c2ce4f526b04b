"""Seeded suite runner: config parsing, trial scheduling, aggregation and rendering."""

from __future__ import annotations

import hashlib
import json
import math
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from numrad.errors import IllConditioned, InvalidArgument, ParseError
from numrad.inequalities.checks import (
    AUDIT_PROBES, CHECK_IDS, REGISTRY, AuditStats, CheckOutcome, CheckSettings, TrialPlan,
)
from numrad.inequalities.families import MAX_DIM, MIN_DIM, Family, draw

# slack histogram bin edges; the first bin collects violations beyond tolerance
HIST_EDGES = (-math.inf, -1e-8, 0.0, 1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2, 1.0, math.inf)


@dataclass(frozen=True)
class SuiteConfig:
    checks: tuple[str, ...] = CHECK_IDS
    families: tuple[Family, ...] = tuple(Family)
    dims: tuple[int, ...] = tuple(range(2, 9))
    trials: int = 1000
    master_seed: int = 20240601
    tol: float = 1e-8
    strict_margin: float = 1e-6
    p_list: tuple[float, ...] = (1.0, 2.0, 3.0, math.inf)
    radius_tol: float | None = None      # defaults to tol / 10
    audit_probes: int = AUDIT_PROBES
    workers: int = 1

    def __post_init__(self):
        unknown = [c for c in self.checks if c not in REGISTRY]
        if unknown:
            raise InvalidArgument(f"unknown checks {unknown}; available: {list(CHECK_IDS)}")
        if not self.families:
            raise InvalidArgument("families must not be empty")
        if not self.dims or any(not MIN_DIM <= d <= MAX_DIM // 2 for d in self.dims):
            raise InvalidArgument(f"dims must lie in [{MIN_DIM}, {MAX_DIM // 2}] (block checks double them)")
        if self.trials < 0:
            raise InvalidArgument(f"trials must be >= 0, got {self.trials}")
        if not self.tol > 0 or not self.strict_margin > 0:
            raise InvalidArgument("tol and strict_margin must be positive")
        if not self.p_list or any(not p >= 1 for p in self.p_list):
            raise InvalidArgument("p_list entries must be >= 1")
        if self.radius_tol is not None and not self.radius_tol > 0:
            raise InvalidArgument("radius_tol must be positive")
        if self.workers < 1:
            raise InvalidArgument("workers must be >= 1")

    @property
    def effective_radius_tol(self) -> float:
        return self.tol / 10 if self.radius_tol is None else self.radius_tol

    def as_dict(self) -> dict:
        return {
            "checks": list(self.checks), "families": [f.value for f in self.families],
            "dims": list(self.dims), "trials": self.trials, "master_seed": self.master_seed,
            "tol": self.tol, "strict_margin": self.strict_margin,
            "p_list": [_fmt_p(p) for p in self.p_list], "radius_tol": self.effective_radius_tol,
            "audit_probes": self.audit_probes,
        }


def _fmt_p(p: float) -> str:
    return "inf" if math.isinf(p) else repr(p)


def _parse_list(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _parse_dims(value: str) -> tuple[int, ...]:
    dims: list[int] = []
    for part in _parse_list(value):
        if "-" in part:
            lo, hi = part.split("-", 1)
            dims.extend(range(int(lo), int(hi) + 1))
        else:
            dims.append(int(part))
    return tuple(dims)


def _parse_p(value: str) -> tuple[float, ...]:
    return tuple(math.inf if v.lower() in ("inf", "infinity", "oo") else float(v) for v in _parse_list(value))


_PARSERS = {
    "checks": lambda v: tuple(CHECK_IDS if v.strip().lower() == "all" else _parse_list(v)),
    "families": lambda v: tuple(Family) if v.strip().lower() == "all" else tuple(Family.parse(f) for f in _parse_list(v)),
    "dims": _parse_dims,
    "trials": int,
    "master_seed": int,
    "tol": float,
    "strict_margin": float,
    "p_list": _parse_p,
    "radius_tol": float,
    "audit_probes": int,
    "workers": int,
}


def parse_config(text: str, base: SuiteConfig | None = None) -> SuiteConfig:
    """Parse ``key = value`` lines (``#`` starts a comment) on top of ``base``."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"config line {lineno}: expected key = value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _PARSERS:
            raise ParseError(f"config line {lineno}: unknown key {key!r}")
        try:
            values[key] = _PARSERS[key](value)
        except (ValueError, InvalidArgument) as exc:
            raise ParseError(f"config line {lineno}: bad value for {key}: {exc}") from exc
    try:
        return replace(base or SuiteConfig(), **values)
    except InvalidArgument as exc:
        raise ParseError(str(exc)) from exc


def load_config(path) -> SuiteConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def trial_seed(master_seed: int, check_id: str, trial: int) -> int:
    """64-bit seed of one trial, independent of scheduling order."""
    ss = np.random.SeedSequence([master_seed % 2 ** 64, zlib.crc32(check_id.encode()), trial])
    return int(ss.generate_state(1, np.uint64)[0])


def trial_plan(cfg: SuiteConfig, check_id: str, trial: int) -> TrialPlan:
    return TrialPlan(
        dim=cfg.dims[trial % len(cfg.dims)],
        seed=trial_seed(cfg.master_seed, check_id, trial),
        family=cfg.families[trial % len(cfg.families)],
        p=cfg.p_list[trial % len(cfg.p_list)],
        trial=trial,
    )


def _settings(cfg: SuiteConfig, plan: TrialPlan) -> CheckSettings:
    return CheckSettings(cfg.tol, cfg.effective_radius_tol, cfg.audit_probes, plan.seed % 2 ** 62)


def run_trial(cfg: SuiteConfig, check_id: str, trial: int) -> CheckOutcome:
    """One trial; an ill-conditioned eigenproblem is recorded as a failed outcome."""
    plan = trial_plan(cfg, check_id, trial)
    try:
        return REGISTRY[check_id].run(plan, _settings(cfg, plan), draw)
    except IllConditioned as exc:
        return CheckOutcome(check_id, None, (), -math.inf, False, cfg.tol,
                            details={"error": str(exc), "seed": plan.seed, "trial": trial})


def _run_block(args) -> list[CheckOutcome]:
    cfg, check_id, trials = args
    return [run_trial(cfg, check_id, t) for t in trials]


@dataclass(frozen=True)
class CheckSummary:
    check_id: str
    statement: str
    trials: int
    failures: int
    min_slack: float
    histogram: tuple[int, ...]
    audit: AuditStats
    worst_trial: int | None = None
    failed_trials: tuple[int, ...] = ()

    def as_dict(self) -> dict:
        return {"check_id": self.check_id, "statement": self.statement, "trials": self.trials,
                "failures": self.failures, "min_slack": _jsonable(self.min_slack),
                "histogram": list(self.histogram), "worst_trial": self.worst_trial,
                "failed_trials": list(self.failed_trials),
                "audit": {"certificates": self.audit.certificates,
                          "max_rayleigh_excess": _jsonable(self.audit.max_rayleigh_excess),
                          "max_width": self.audit.max_width,
                          "monotone_traces": self.audit.monotone_traces}}


@dataclass(frozen=True)
class TrialReport:
    config: SuiteConfig
    checks: tuple[CheckSummary, ...]
    seed_digest: str
    wall_time: float = field(default=0.0, compare=False)

    @property
    def failures(self) -> int:
        return sum(c.failures for c in self.checks)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    @property
    def audit(self) -> AuditStats:
        total = AuditStats()
        for c in self.checks:
            total = total.merge(c.audit)
        return total

    def summary_line(self) -> str:
        return f"SUITE {'PASS' if self.passed else 'FAIL'} failures={self.failures}"

    def as_dict(self, include_wall_time: bool = True) -> dict:
        d = {"config": self.config.as_dict(), "seed_digest": self.seed_digest,
             "checks": [c.as_dict() for c in self.checks], "failures": self.failures,
             "passed": self.passed, "summary": self.summary_line()}
        if include_wall_time:
            d["wall_time_s"] = self.wall_time
        return d


def _jsonable(x: float):
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf")


def _histogram(slacks: list[float]) -> tuple[int, ...]:
    # bin j holds slacks in [HIST_EDGES[j], HIST_EDGES[j + 1])
    idx = np.searchsorted(np.asarray(HIST_EDGES[1:-1]), np.asarray(slacks, dtype=float), side="right")
    return tuple(int(c) for c in np.bincount(idx, minlength=len(HIST_EDGES) - 1))


def summarize(check_id: str, outcomes: list[CheckOutcome]) -> CheckSummary:
    slacks = [o.min_slack for o in outcomes]
    failed = tuple(i for i, o in enumerate(outcomes) if not o.passed)
    audit = AuditStats()
    for o in outcomes:
        audit = audit.merge(o.audit)
    worst = int(np.argmin(slacks)) if slacks else None
    return CheckSummary(check_id, REGISTRY[check_id].statement, len(outcomes), len(failed),
                        min(slacks) if slacks else math.inf, _histogram(slacks),
                        audit, worst, failed)


def run_suite(cfg: SuiteConfig, collect: dict | None = None) -> TrialReport:
    """Run every configured check for ``cfg.trials`` trials.

    ``collect``, if given, receives the raw outcomes keyed by check id.
    Results do not depend on ``cfg.workers``: every trial derives its own
    seed and outcomes are reassembled by trial index.
    """
    start = time.perf_counter()
    trials = list(range(cfg.trials))
    if cfg.workers > 1 and cfg.trials > 0:
        chunk = max(1, cfg.trials // (4 * cfg.workers))
        tasks = [(cfg, cid, trials[i:i + chunk]) for cid in cfg.checks for i in range(0, cfg.trials, chunk)]
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_run_block, tasks))
        by_check: dict[str, list[CheckOutcome]] = {cid: [] for cid in cfg.checks}
        for (_, cid, _), res in zip(tasks, results):
            by_check[cid].extend(res)
    else:
        by_check = {cid: _run_block((cfg, cid, trials)) for cid in cfg.checks}
    digest = hashlib.sha256()
    for cid in cfg.checks:
        for t in trials:
            digest.update(trial_seed(cfg.master_seed, cid, t).to_bytes(8, "little"))
    summaries = tuple(summarize(cid, by_check[cid]) for cid in cfg.checks)
    if collect is not None:
        collect.update(by_check)
    return TrialReport(cfg, summaries, digest.hexdigest(), time.perf_counter() - start)


def _fmt(x: float) -> str:
    return repr(float(x)) if math.isfinite(x) else ("inf" if x > 0 else "-inf")


def render_text(report: TrialReport, include_wall_time: bool = True) -> str:
    """Structured text: a config block, one record per check, then the summary line."""
    lines = ["[config]"]
    for k, v in report.config.as_dict().items():
        lines.append(f"{k} = {','.join(map(str, v)) if isinstance(v, list) else v}")
    lines.append(f"seed_digest = {report.seed_digest}")
    if include_wall_time:
        lines.append(f"wall_time_s = {report.wall_time:.3f}")
    edges = ",".join(_fmt(e) for e in HIST_EDGES)
    lines.append(f"histogram_edges = {edges}")
    for c in report.checks:
        lines.append("")
        lines.append(f"[check {c.check_id}]")
        lines.append(f"statement = {c.statement}")
        lines.append(f"trials = {c.trials}")
        lines.append(f"failures = {c.failures}")
        lines.append(f"min_slack = {_fmt(c.min_slack)}")
        lines.append(f"worst_trial = {c.worst_trial}")
        lines.append(f"histogram = {','.join(map(str, c.histogram))}")
        a = c.audit
        lines.append(f"certificates = {a.certificates}")
        lines.append(f"max_rayleigh_excess = {_fmt(a.max_rayleigh_excess)}")
        lines.append(f"max_certificate_width = {_fmt(a.max_width)}")
        lines.append(f"monotone_traces = {a.monotone_traces}")
        if c.failed_trials:
            lines.append(f"failed_trials = {','.join(map(str, c.failed_trials))}")
    lines.append("")
    lines.append(report.summary_line())
    return "\n".join(lines) + "\n"


def render_json(report: TrialReport, include_wall_time: bool = True) -> str:
    return json.dumps(report.as_dict(include_wall_time), indent=2, sort_keys=True)
