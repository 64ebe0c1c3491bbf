"""Iterative fixed-point sphere fit (Eberly's least-squares distance fit).

Minimises sum_i (L_i - r)^2 with L_i = |p_i - c|. For a fixed center the
optimal radius is mean(L_i); substituting it, the center satisfies

    c = mean(p) + mean(L) * mean_i (c - p_i) / L_i

which is iterated from the centroid until the center step falls below the
tolerance or the iteration budget runs out.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import MIN_POINTS, PointsLike, SphereParams, as_points
from .errors import InsufficientPointsError, InvalidInputError

ZERO_DISTANCE_RTOL = 1e-12


@dataclass(frozen=True)
class IterativeConfig:
    tolerance: float = 1e-4
    max_iterations: int = 25

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InvalidInputError(f"tolerance must be positive, got {self.tolerance}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise InvalidInputError(
                f"max_iterations must be a positive integer, got {self.max_iterations}")


@dataclass
class IterativeFitResult:
    params: SphereParams
    iterations_used: int
    converged: bool
    last_step: float
    # sum (L_i - mean L)^2 before the first update and after each update
    objective_history: list = field(default_factory=list, repr=False)


def distance_objective(points: np.ndarray, center) -> float:
    dist = np.linalg.norm(points - np.asarray(center, dtype=float), axis=1)
    return float(((dist - dist.mean()) ** 2).sum())


def fit_eberly(points: PointsLike, config: IterativeConfig = IterativeConfig(),
               initial_center=None, track_objective: bool = False) -> IterativeFitResult:
    """Fit a sphere by fixed-point iteration on the geometric distance.

    Args:
        points: (N, 3) coordinates, N >= 4.
        config: convergence tolerance on the Euclidean center step, and the
            iteration budget.
        initial_center: starting center; defaults to the centroid.
        track_objective: record the distance objective after every update.

    Points closer to the current iterate than 1e-12 times the data scale
    have no defined direction and are left out of that update.
    """
    pts = as_points(points)
    n = len(pts)
    if n < MIN_POINTS:
        raise InsufficientPointsError(f"a sphere needs at least {MIN_POINTS} points, got {n}")

    mean = pts.mean(axis=0)
    center = mean.copy() if initial_center is None else np.asarray(initial_center, dtype=float)
    scale = float(np.abs(pts - mean).max()) or 1.0
    history = [distance_objective(pts, center)] if track_objective else []

    step = np.inf
    iterations = 0
    for iterations in range(1, config.max_iterations + 1):
        diff = center - pts
        dist = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        ok = dist > ZERO_DISTANCE_RTOL * scale
        r_mean = dist.mean()
        if ok.all():
            direction = (diff / dist[:, None]).mean(axis=0)
        else:
            direction = (diff[ok] / dist[ok, None]).sum(axis=0) / n
        new_center = mean + r_mean * direction
        step = float(np.linalg.norm(new_center - center))
        center = new_center
        if track_objective:
            history.append(distance_objective(pts, center))
        if step <= config.tolerance:
            break

    r = float(np.linalg.norm(pts - center, axis=1).mean())
    return IterativeFitResult(
        params=SphereParams(*(float(v) for v in center), r),
        iterations_used=iterations,
        converged=step <= config.tolerance,
        last_step=step,
        objective_history=history,
    )
