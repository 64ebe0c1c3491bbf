import numpy as np
import pytest

from spherefit import (
    InsufficientPointsError,
    InvalidInputError,
    IterativeConfig,
    builtin_case,
    fit_eberly,
    fit_exact,
    generate,
    run_case,
)
from spherefit.baseline import distance_objective

from conftest import CASE1_TRUTH


def test_config_validation():
    with pytest.raises(InvalidInputError):
        IterativeConfig(tolerance=0)
    with pytest.raises(InvalidInputError):
        IterativeConfig(max_iterations=0)


def test_needs_four_points():
    with pytest.raises(InsufficientPointsError):
        fit_eberly(np.eye(3))


def test_noiseless_case1_converges(case1_clean):
    res = fit_eberly(case1_clean, IterativeConfig(1e-4, 25))
    assert res.converged
    assert res.iterations_used < 25
    assert res.params.as_array() == pytest.approx(CASE1_TRUTH.as_array(), abs=1e-3)


def test_fixed_point_at_true_center(case1_clean):
    res = fit_eberly(case1_clean, initial_center=(1.0, 2.0, 3.0))
    assert res.converged and res.iterations_used == 1
    assert res.last_step < 1e-12


def test_iteration_budget_respected():
    pts = generate(builtin_case(4, seed=1))
    res = fit_eberly(pts, IterativeConfig(1e-4, 25))
    assert not res.converged
    assert res.iterations_used == 25
    assert res.last_step > 1e-4


def test_cap_needs_many_iterations():
    pts = generate(builtin_case(4, seed=2))
    res = fit_eberly(pts, IterativeConfig(1e-4, 10000))
    assert res.converged and res.iterations_used > 25


@pytest.mark.parametrize("case", [1, 2, 3, 4])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_objective_non_increasing(case, seed):
    pts = generate(builtin_case(case, seed=seed))
    hist = fit_eberly(pts, IterativeConfig(1e-10, 300), track_objective=True).objective_history
    assert len(hist) >= 2
    assert all(b <= a + 1e-12 * max(a, 1.0) for a, b in zip(hist, hist[1:]))


def test_coincident_point_is_skipped():
    rng = np.random.default_rng(0)
    dirs = rng.normal(size=(50, 3))
    pts = 3.0 * dirs / np.linalg.norm(dirs, axis=1)[:, None]
    pts = np.vstack([pts, [[0.0, 0.0, 0.0]]])
    res = fit_eberly(pts, initial_center=(0.0, 0.0, 0.0))
    assert np.isfinite(res.params.as_array()).all()
    assert distance_objective(pts, res.params.center) >= 0


@pytest.mark.parametrize("case", [1, 2])
def test_unlimited_iterations_agree_with_exact(case):
    cfg = builtin_case(case)
    ebe = run_case(cfg, "eberly", 200, IterativeConfig(1e-10, 10000))
    exa = run_case(cfg, "exact", 200)
    assert ebe.failures == 0
    assert ebe.mean_params.as_array() == pytest.approx(exa.mean_params.as_array(), abs=1e-2)


def test_case4_stalls_near_reported_values():
    rep = run_case(builtin_case(4), "eberly", 300, IterativeConfig(1e-4, 25))
    assert rep.failures == 300
    mp = rep.mean_params
    assert mp.x0 == pytest.approx(2.34, abs=0.05)
    assert mp.y0 == pytest.approx(0.87, abs=0.05)
    assert mp.z0 == pytest.approx(43.94, abs=0.3)
    assert mp.r == pytest.approx(7.63, abs=0.3)


def test_exact_and_eberly_agree_on_clean_sphere():
    pts = generate(builtin_case(2, epsilon=0.0, seed=4))
    ebe = fit_eberly(pts, IterativeConfig(1e-12, 1000)).params.as_array()
    assert ebe == pytest.approx(fit_exact(pts).as_array(), abs=1e-9)
