import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spherefit import (
    CaseConfig,
    InvalidInputError,
    PointFileError,
    SphereParams,
    builtin_case,
    generate,
    read_points_csv,
    write_points_csv,
)
from spherefit.datagen import sphere_points

from conftest import SPHERE2_TRUTH


def test_builtin_case_1():
    c = builtin_case(1)
    assert tuple(c.truth) == (1, 2, 3, 7.2)
    assert (c.epsilon, c.u_min, c.u_max) == (0.1, -1, 1)


def test_builtin_case_table():
    assert builtin_case(2).epsilon == 0.2
    assert (builtin_case(3).epsilon, builtin_case(3).u_min, builtin_case(3).u_max) == (0.12, -1, 0)
    c = builtin_case(4)
    assert tuple(c.truth) == (2.3423, 0.8764, 45.8785, 9.02321)
    assert (c.epsilon, c.u_min, c.u_max) == (0.12, -1, -0.5)
    assert all(builtin_case(i).truth == SPHERE2_TRUTH for i in (2, 3, 4))


@pytest.mark.parametrize("bad", [0, 5, -1, "2"])
def test_builtin_case_out_of_range(bad):
    with pytest.raises(InvalidInputError):
        builtin_case(bad)


@pytest.mark.parametrize("kwargs", [
    dict(u_min=0.5, u_max=0.5), dict(u_min=-1.5), dict(u_max=1.1),
    dict(epsilon=-0.1), dict(n_points=0), dict(noise_model="laplace"),
])
def test_config_validation(kwargs):
    with pytest.raises(InvalidInputError):
        builtin_case(1, **kwargs)


@pytest.mark.parametrize("case", [1, 2, 3, 4])
def test_noiseless_points_on_sphere(case):
    cfg = builtin_case(case, epsilon=0.0, n_points=500, seed=case)
    pts = generate(cfg)
    t = cfg.truth
    d2 = ((pts - t.center) ** 2).sum(axis=1)
    assert np.allclose(d2, t.r ** 2, rtol=1e-12, atol=0)


def test_south_pole():
    p = sphere_points(SPHERE2_TRUTH, [0.3], [-1.0])[0]
    assert p.tolist() == [2.3423, 0.8764, 45.8785 - 9.02321]


def test_same_seed_is_bit_identical():
    cfg = builtin_case(3, seed=42)
    a, b = generate(cfg), generate(cfg)
    assert a.tobytes() == b.tobytes()
    assert generate(cfg.with_(seed=43)).tobytes() != a.tobytes()


def test_partial_sphere_regions():
    hemi = generate(builtin_case(3, epsilon=0.0, n_points=2000))
    assert (hemi[:, 2] <= SPHERE2_TRUTH.z0).all()
    cap = generate(builtin_case(4, epsilon=0.0, n_points=2000))
    assert (cap[:, 2] <= SPHERE2_TRUTH.z0 - 0.5 * SPHERE2_TRUTH.r + 1e-12).all()
    full = generate(builtin_case(2, epsilon=0.0, n_points=2000))
    assert full[:, 2].max() > SPHERE2_TRUTH.z0 + 0.9 * SPHERE2_TRUTH.r


@pytest.mark.parametrize("eps", [0.1, 0.5])
def test_uniform_noise_bounds(eps):
    cfg = builtin_case(1, epsilon=eps, n_points=20000, seed=9)
    noise = generate(cfg) - generate(cfg.with_(epsilon=0.0))
    assert np.abs(noise).max() <= eps
    n = noise.shape[0]
    assert np.all(np.abs(noise.mean(axis=0)) < 3 * eps / math.sqrt(3 * n))


def test_gaussian_noise_model():
    cfg = builtin_case(1, epsilon=0.2, n_points=20000, seed=9, noise_model="gaussian")
    noise = generate(cfg) - generate(cfg.with_(epsilon=0.0))
    assert noise.std() == pytest.approx(0.2, rel=0.02)


def test_explicit_config():
    cfg = CaseConfig(truth=SphereParams(0, 0, 0, 1), epsilon=0.0, u_min=0.0, u_max=1.0, n_points=10)
    pts = generate(cfg)
    assert pts.shape == (10, 3) and (pts[:, 2] >= 0).all()


# --- CSV ------------------------------------------------------------------------

def test_csv_round_trip(tmp_path):
    pts = generate(builtin_case(2, seed=1))
    for header in (True, False):
        path = tmp_path / f"p{header}.csv"
        write_points_csv(path, pts, header=header)
        back = read_points_csv(path)
        assert back.tobytes() == pts.tobytes()
    assert (tmp_path / "pTrue.csv").read_text().splitlines()[0] == "x,y,z"


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(*[st.floats(allow_nan=False, allow_infinity=False)] * 3), max_size=20))
def test_csv_round_trip_property(tmp_path_factory, rows):
    path = tmp_path_factory.mktemp("csv") / "p.csv"
    write_points_csv(path, rows)
    assert read_points_csv(path).tolist() == [list(r) for r in rows]


def test_csv_comments_and_blanks(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text("# points\nx,y,z\n\n1,2,3\n 4 , 5 , 6 \n")
    assert read_points_csv(path).tolist() == [[1, 2, 3], [4, 5, 6]]


@pytest.mark.parametrize("text,row", [
    ("x,y,z\n1,2,3\n1,2\n", 3),
    ("1,2,3\n1,a,3\n", 2),
    ("1,2,3\n1,2,nan\n", 2),
    ("1,2,3\nx,y,z\n", 2),
])
def test_csv_malformed_rows(tmp_path, text, row):
    path = tmp_path / "p.csv"
    path.write_text(text)
    with pytest.raises(PointFileError) as info:
        read_points_csv(path)
    assert info.value.row == row
    assert f"row {row}" in str(info.value)


def test_csv_missing_file(tmp_path):
    with pytest.raises(PointFileError):
        read_points_csv(tmp_path / "nope.csv")
