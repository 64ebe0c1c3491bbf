"""Synthetic full and partial sphere point clouds.

Points are placed with the cylindrical parametrisation

    x = x0 + sqrt(R^2 - u^2) cos(theta)
    y = y0 + sqrt(R^2 - u^2) sin(theta)
    z = z0 + u

where ``u = u_norm * R`` and ``u_norm`` is drawn uniformly from the case's
range, so [-1, 1] is a full sphere, [-1, 0] the lower hemisphere and
[-1, -0.5] a polar cap. Uniform ``u`` gives area-uniform samples
(Archimedes' hat-box theorem).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .core import SphereParams, as_points
from .errors import InvalidInputError, PointFileError

NOISE_MODELS = ("uniform", "gaussian")


@dataclass(frozen=True)
class CaseConfig:
    """One synthetic test case.

    ``epsilon`` is the half-width of the uniform per-coordinate noise, or the
    standard deviation when ``noise_model`` is ``"gaussian"``.
    """

    truth: SphereParams
    epsilon: float
    u_min: float = -1.0
    u_max: float = 1.0
    n_points: int = 100
    seed: int = 0
    noise_model: str = "uniform"

    def __post_init__(self):
        if not -1.0 <= self.u_min < self.u_max <= 1.0:
            raise InvalidInputError(
                f"need -1 <= u_min < u_max <= 1, got [{self.u_min}, {self.u_max}]")
        if not (self.epsilon >= 0 and math.isfinite(self.epsilon)):
            raise InvalidInputError(f"epsilon must be >= 0, got {self.epsilon}")
        if int(self.n_points) != self.n_points or self.n_points < 1:
            raise InvalidInputError(f"n_points must be >= 1, got {self.n_points}")
        if self.noise_model not in NOISE_MODELS:
            raise InvalidInputError(f"unknown noise model {self.noise_model!r}")

    def with_(self, **changes) -> "CaseConfig":
        return replace(self, **changes)


_SPHERE_2 = SphereParams(2.3423, 0.8764, 45.8785, 9.02321)

BUILTIN_CASES = {
    1: dict(truth=SphereParams(1.0, 2.0, 3.0, 7.2), epsilon=0.1, u_min=-1.0, u_max=1.0),
    2: dict(truth=_SPHERE_2, epsilon=0.2, u_min=-1.0, u_max=1.0),
    3: dict(truth=_SPHERE_2, epsilon=0.12, u_min=-1.0, u_max=0.0),
    4: dict(truth=_SPHERE_2, epsilon=0.12, u_min=-1.0, u_max=-0.5),
}


def builtin_case(index: int, **overrides) -> CaseConfig:
    """Return one of the four standard cases (1, 2: full spheres; 3: lower
    hemisphere; 4: polar cap), optionally with fields overridden."""
    try:
        row = BUILTIN_CASES[index]
    except (KeyError, TypeError):
        raise InvalidInputError(f"case index must be 1..4, got {index!r}") from None
    return CaseConfig(**{**row, **overrides})


def sphere_points(truth: SphereParams, theta, u_norm) -> np.ndarray:
    """Noiseless points at parameter values ``theta`` and ``u_norm``."""
    theta = np.asarray(theta, dtype=float)
    u = np.asarray(u_norm, dtype=float) * truth.r
    ring = np.sqrt(np.maximum(truth.r * truth.r - u * u, 0.0))
    return np.column_stack([truth.x0 + ring * np.cos(theta),
                            truth.y0 + ring * np.sin(theta),
                            truth.z0 + u])


def generate(config: CaseConfig) -> np.ndarray:
    """Draw ``config.n_points`` noisy samples; deterministic in ``config.seed``."""
    rng = np.random.default_rng(config.seed)
    n = config.n_points
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    u_norm = rng.uniform(config.u_min, config.u_max, n)
    pts = sphere_points(config.truth, theta, u_norm)
    if config.epsilon > 0:
        if config.noise_model == "uniform":
            pts += rng.uniform(-config.epsilon, config.epsilon, pts.shape)
        else:
            pts += config.epsilon * rng.standard_normal(pts.shape)
    return pts


def write_points_csv(dest, points, header: bool = True) -> None:
    """Write one ``x,y,z`` row per point using shortest round-trip floats.

    ``dest`` is a path or an open text stream.
    """
    pts = as_points(points)
    if hasattr(dest, "write"):
        _write_rows(dest, pts, header)
        return
    with open(dest, "w", newline="") as fh:
        _write_rows(fh, pts, header)


def _write_rows(fh, pts, header):
    writer = csv.writer(fh, lineterminator="\n")
    if header:
        writer.writerow(["x", "y", "z"])
    writer.writerows([repr(x), repr(y), repr(z)] for x, y, z in pts.tolist())


def read_points_csv(path) -> np.ndarray:
    """Read an ``x,y,z`` CSV (header optional; blank and ``#`` lines skipped).

    Raises:
        PointFileError: unreadable file, or a row that is not three finite
            numbers. Row numbers are 1-based file lines.
    """
    try:
        text = Path(path).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise PointFileError(f"cannot read {path}: {exc}") from exc
    rows = []
    for lineno, row in enumerate(csv.reader(text.splitlines()), start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        if len(row) != 3:
            raise PointFileError(f"expected 3 columns, got {len(row)}", row=lineno)
        try:
            vals = [float(v) for v in row]
        except ValueError:
            if not rows and [v.strip().lower() for v in row] == ["x", "y", "z"]:
                continue
            raise PointFileError(f"non-numeric value in {row!r}", row=lineno) from None
        if not all(math.isfinite(v) for v in vals):
            raise PointFileError(f"non-finite value in {row!r}", row=lineno)
        rows.append(vals)
    return np.array(rows, dtype=float).reshape(-1, 3)
