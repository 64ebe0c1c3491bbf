"""Closed-form geometric sphere fitting from coordinate moments."""

from .baseline import IterativeConfig, IterativeFitResult, fit_eberly
from .core import (
    LinearSystem3,
    MomentSums,
    Point3,
    SphereParams,
    accumulate,
    build_system,
    fit_exact,
    fit_moments,
    merge,
    objective_j,
    radius,
    solve_center,
)
from .datagen import CaseConfig, builtin_case, generate, read_points_csv, write_points_csv
from .errors import (
    DegenerateGeometryError,
    InsufficientPointsError,
    InvalidInputError,
    NumericalDegeneracyError,
    PointFileError,
    SphereFitError,
)
from .evaluation import (
    CaseReport,
    EstimateBatch,
    TimingRecord,
    bench_timing,
    rms_max,
    run_case,
)

__version__ = "0.1.0"

__all__ = [
    "CaseConfig", "CaseReport", "DegenerateGeometryError", "EstimateBatch",
    "InsufficientPointsError", "InvalidInputError", "IterativeConfig",
    "IterativeFitResult", "LinearSystem3", "MomentSums", "NumericalDegeneracyError",
    "Point3", "PointFileError", "SphereFitError", "SphereParams", "TimingRecord",
    "accumulate", "bench_timing", "build_system", "builtin_case", "fit_eberly",
    "fit_exact", "fit_moments", "generate", "merge", "objective_j", "radius",
    "read_points_csv", "rms_max", "run_case", "solve_center", "write_points_csv",
]
