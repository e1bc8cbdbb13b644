"""Run diameter methods over an epsilon sweep and assemble a JSON report.

Reports keep a fixed field order. Wall-clock numbers live only under the
top-level ``"timings"`` key so two runs of the same configuration can be
compared byte for byte once that key is dropped (see :func:`mask_timings`).
"""
from __future__ import annotations

import json
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import __version__
from .directional import agarwal_diameter, chan_diameter, two_approx_baseline
from .errors import UsageError
from .estimate import METHODS, DiameterEstimate
from .exact import DEFAULT_PAIR_CAP, brute_force_diameter
from .generators import KINDS, generate
from .geometry import PointSet, as_points
from .grid import check_eps
from .pipeline import approximate_diameter
from .pointio import read_points

log = logging.getLogger(__name__)

ORACLE_CEILING = 5000
EPS_FREE = ("exact", "two_approx")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    d: int
    seed: int = 0


@dataclass
class ExperimentConfig:
    methods: list
    eps: list = field(default_factory=lambda: [0.1])
    input: Optional[str] = None
    generator: Optional[GeneratorSpec] = None
    output: Optional[str] = None
    cap: int = DEFAULT_PAIR_CAP
    oracle: bool = False
    oracle_ceiling: int = ORACLE_CEILING
    workers: int = 1

    def validate(self) -> None:
        if (self.input is None) == (self.generator is None):
            raise UsageError("give exactly one of an input file or a generator spec")
        if not self.methods:
            raise UsageError("no methods requested")
        for m in self.methods:
            if m not in METHODS:
                raise UsageError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
        if not self.eps:
            raise UsageError("no eps values given")
        for e in self.eps:
            check_eps(e)
        if self.cap < 1:
            raise UsageError(f"pair cap must be >= 1, got {self.cap}")
        if self.workers < 1:
            raise UsageError(f"workers must be >= 1, got {self.workers}")
        if self.generator is not None:
            g = self.generator
            if g.kind not in KINDS:
                raise UsageError(f"unknown generator kind {g.kind!r}")
            if not 0 <= g.seed < 2**64:
                raise UsageError("seed must be a 64-bit unsigned integer")

    def echo(self) -> dict:
        out = asdict(self)
        out.pop("workers")
        return out


def load_points(config: ExperimentConfig) -> PointSet:
    if config.input is not None:
        return read_points(config.input)
    g = config.generator
    return generate(g.kind, g.n, g.d, g.seed)


def run_method(method: str, pts, eps=None, cap: int = DEFAULT_PAIR_CAP):
    """Run one method; returns ``(DiameterEstimate, PhaseStats or None)``."""
    pts = as_points(pts)
    if method == "exact":
        d2, (i, j) = brute_force_diameter(pts)
        return DiameterEstimate.from_pair(pts, i, j, "exact"), None
    if method == "two_approx":
        return two_approx_baseline(pts), None
    if method == "agarwal":
        return agarwal_diameter(pts, eps), None
    if method == "chan":
        return chan_diameter(pts, eps), None
    if method == "paper":
        return approximate_diameter(pts, eps, cap)
    raise UsageError(f"unknown method {method!r}")


def _jobs(config: ExperimentConfig):
    jobs = []
    for m in sorted(config.methods, key=METHODS.index):
        if m in EPS_FREE:
            jobs.append((m, None))
        else:
            jobs.extend((m, e) for e in sorted(config.eps, reverse=True))
    return jobs


def _timed(method, pts, eps, cap):
    t = time.perf_counter()
    est, stats = run_method(method, pts, eps, cap)
    return est, stats, (time.perf_counter() - t) * 1e3


def run(config: ExperimentConfig) -> dict:
    """Execute every (method, eps) job and return the report as a dict.

    The report is also written to ``config.output`` when that is set.
    """
    config.validate()
    pts = load_points(config).coords
    n, d = pts.shape
    warnings = []

    exact = None
    if config.oracle:
        if n <= config.oracle_ceiling:
            d2, _ = brute_force_diameter(pts)
            exact = math.sqrt(d2)
        else:
            msg = f"oracle skipped: n={n} exceeds ceiling {config.oracle_ceiling}"
            log.warning(msg)
            warnings.append(msg)

    jobs = _jobs(config)
    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            futures = [pool.submit(_timed, m, pts, e, config.cap) for m, e in jobs]
            results = [f.result() for f in futures]
    else:
        results = [_timed(m, pts, e, config.cap) for m, e in jobs]

    runs, timings = [], []
    for k, ((method, eps), (est, stats, ms)) in enumerate(zip(jobs, results)):
        rec = {
            "method": method,
            "n": n,
            "d": d,
            "eps": eps,
            "estimate": est.value,
            "estimate_sq": est.value_sq,
            "witness": list(est.witness),
        }
        if exact is not None:
            rec["exact"] = exact
            rec["ratio"] = exact / est.value if est.value > 0 else (1.0 if exact == 0 else None)
        if stats is not None:
            rec["phase_stats"] = stats.counts()
            rec["truncated"] = stats.truncated_level2 or stats.truncated_level1
            rec["bound_violations"] = stats.bound_violations()
        if est.details:
            rec["details"] = dict(est.details)
        runs.append(rec)
        t = {"run": k, "wall_ms": ms}
        if stats is not None:
            t["phases_ms"] = {key: v * 1e3 for key, v in stats.timings.items()}
        timings.append(t)

    report = {
        "tool": {"name": "griddiam", "version": __version__},
        "config": config.echo(),
        "runs": runs,
        "warnings": warnings,
        "timings": timings,
    }
    if config.output is not None:
        write_report(report, config.output)
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def write_report(report: dict, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(report))


def mask_timings(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timings"}
