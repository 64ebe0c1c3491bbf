"""Accuracy statistics over repeated synthetic datasets, and fit timing."""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .baseline import IterativeConfig, fit_eberly
from .core import SphereParams, fit_exact
from .datagen import CaseConfig, builtin_case, generate
from .errors import InvalidInputError, SphereFitError

log = logging.getLogger(__name__)

METHODS = ("exact", "eberly")


@dataclass(frozen=True)
class FitOutcome:
    params: SphereParams
    converged: bool = True
    iterations: Optional[int] = None


def fit_with(method: str, points, iter_config: IterativeConfig = IterativeConfig()) -> FitOutcome:
    if method == "exact":
        return FitOutcome(fit_exact(points))
    if method == "eberly":
        res = fit_eberly(points, iter_config)
        return FitOutcome(res.params, res.converged, res.iterations_used)
    raise InvalidInputError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


@dataclass(frozen=True)
class EstimateBatch:
    estimates: tuple
    truth: SphereParams

    def __post_init__(self):
        if len(self.estimates) == 0:
            raise InvalidInputError("estimate batch is empty")
        object.__setattr__(self, "estimates", tuple(self.estimates))

    def as_array(self) -> np.ndarray:
        return np.array([tuple(p) for p in self.estimates], dtype=float)


def rms_max(batch: EstimateBatch, root: bool = False) -> float:
    """Worst per-parameter error over a batch of estimates.

    For each of x0, y0, z0 and R the mean over datasets of the squared
    deviation from the truth is taken, and the largest of the four returned.
    This is the mean-square form; ``root=True`` takes the square root of
    each term first (a true RMS).
    """
    err = batch.as_array() - batch.truth.as_array()
    per_param = (err * err).mean(axis=0)
    if root:
        per_param = np.sqrt(per_param)
    return float(per_param.max())


@dataclass
class CaseReport:
    case_id: object
    method: str
    truth: SphereParams
    mean_params: Optional[SphereParams]
    rms_max: float
    datasets: int
    points_per_dataset: int
    # fits that raised plus iterative fits that hit the iteration cap
    failures: int
    # fits that raised; only these are left out of the statistics
    errored: int = 0
    mean_iterations: Optional[float] = None

    @property
    def rms_max_e3(self) -> float:
        return self.rms_max * 1e3

    def to_row(self) -> dict:
        mp = self.mean_params
        return {
            "case": self.case_id,
            "method": self.method,
            "x0": mp.x0 if mp else float("nan"),
            "y0": mp.y0 if mp else float("nan"),
            "z0": mp.z0 if mp else float("nan"),
            "r": mp.r if mp else float("nan"),
            "rms_max_e3": self.rms_max_e3,
            "datasets": self.datasets,
            "points": self.points_per_dataset,
            "failures": self.failures,
            "errored": self.errored,
            "mean_iterations": self.mean_iterations,
        }


def run_case(config: CaseConfig, method: str = "exact", datasets: int = 1500,
             iter_config: IterativeConfig = IterativeConfig(), case_id=None) -> CaseReport:
    """Fit ``datasets`` independent clouds drawn from ``config``.

    Dataset ``i`` uses seed ``config.seed + i``. A fit that raises is counted
    and skipped; it never aborts the batch. Non-converged iterative fits are
    counted as failures but their estimates are kept, since the capped
    iteration count is part of what is being measured.
    """
    if datasets < 1:
        raise InvalidInputError(f"datasets must be >= 1, got {datasets}")
    if method not in METHODS:
        raise InvalidInputError(f"unknown method {method!r}")
    estimates, iterations = [], []
    errored = not_converged = 0
    for i in range(datasets):
        try:
            out = fit_with(method, generate(config.with_(seed=config.seed + i)), iter_config)
        except SphereFitError as exc:
            log.debug("dataset %d failed: %s", i, exc)
            errored += 1
            continue
        estimates.append(out.params)
        if out.iterations is not None:
            iterations.append(out.iterations)
        if not out.converged:
            not_converged += 1

    if estimates:
        batch = EstimateBatch(estimates, config.truth)
        mean = SphereParams(*batch.as_array().mean(axis=0))
        metric = rms_max(batch)
    else:
        mean, metric = None, float("nan")
    return CaseReport(
        case_id=case_id,
        method=method,
        truth=config.truth,
        mean_params=mean,
        rms_max=metric,
        datasets=datasets,
        points_per_dataset=config.n_points,
        failures=errored + not_converged,
        errored=errored,
        mean_iterations=float(np.mean(iterations)) if iterations else None,
    )


@dataclass(frozen=True)
class TimingRecord:
    method: str
    n_points: int
    repetitions: int
    total_seconds: float

    @property
    def seconds_per_fit(self) -> float:
        return self.total_seconds / self.repetitions

    def to_row(self) -> dict:
        return {"method": self.method, "n_points": self.n_points,
                "repetitions": self.repetitions, "seconds_per_fit": self.seconds_per_fit}


def bench_timing(method: str, n_list: Sequence[int], repetitions: int = 1000,
                 iter_config: IterativeConfig = IterativeConfig(),
                 seed: int = 0) -> list:
    """Time ``repetitions`` fits of one pre-generated Case-1 cloud per N.

    Generation is outside the timed region and one untimed warmup fit
    precedes each loop. Runs single-threaded.
    """
    if not len(n_list):
        raise InvalidInputError("n_list is empty")
    if repetitions < 1:
        raise InvalidInputError(f"repetitions must be >= 1, got {repetitions}")
    if method == "exact":
        def fit(p):
            return fit_exact(p)
    elif method == "eberly":
        def fit(p):
            return fit_eberly(p, iter_config)
    else:
        raise InvalidInputError(f"unknown method {method!r}")

    records = []
    for n in n_list:
        pts = generate(builtin_case(1, n_points=int(n), seed=seed))
        fit(pts)
        start = time.perf_counter()
        for _ in range(repetitions):
            fit(pts)
        elapsed = time.perf_counter() - start
        records.append(TimingRecord(method, int(n), repetitions, elapsed))
    return records


def rows_to_csv(rows: Sequence[dict], fh=None) -> str:
    buf = io.StringIO() if fh is None else fh
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue() if fh is None else ""


def rows_to_json(rows: Sequence[dict]) -> str:
    def clean(v):
        return None if isinstance(v, float) and np.isnan(v) else v
    return json.dumps([{k: clean(v) for k, v in r.items()} for r in rows], indent=2)


def format_paper_tables(reports: Sequence[CaseReport]) -> str:
    """Render fitted means per method and the error table as plain text."""
    methods = list(dict.fromkeys(r.method for r in reports))
    cases = list(dict.fromkeys(r.case_id for r in reports))
    by_key = {(r.case_id, r.method): r for r in reports}
    lines = []
    for method in methods:
        lines.append(f"Fitted values ({method})")
        lines.append(f"{'':8}{'x0':>10}{'y0':>10}{'z0':>10}{'R':>10}")
        for case in cases:
            rep = by_key.get((case, method))
            if rep is None or rep.mean_params is None:
                continue
            p = rep.mean_params
            lines.append(f"Case {case!s:<3}{p.x0:10.4f}{p.y0:10.4f}{p.z0:10.4f}{p.r:10.4f}")
        lines.append("")
    lines.append("RMS_MAX x 10^3")
    lines.append(f"{'':10}" + "".join(f"{'Case ' + str(c):>12}" for c in cases))
    for method in methods:
        cells = []
        for case in cases:
            rep = by_key.get((case, method))
            cells.append(f"{rep.rms_max_e3:12.2f}" if rep else f"{'-':>12}")
        lines.append(f"{method:10}" + "".join(cells))
    return "\n".join(lines) + "\n"
