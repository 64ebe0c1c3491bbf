import math

import numpy as np
import pytest

from spherefit import SphereParams, builtin_case, generate

_ACCEPTANCE_LINES = []


def record_criterion(name, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    _ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def naive_raw_sums(points):
    """Power sums about the origin by explicit loops and math.fsum."""
    names = {
        "s_x": (1, 0, 0), "s_y": (0, 1, 0), "s_z": (0, 0, 1),
        "s_xx": (2, 0, 0), "s_yy": (0, 2, 0), "s_zz": (0, 0, 2),
        "s_xy": (1, 1, 0), "s_xz": (1, 0, 1), "s_yz": (0, 1, 1),
        "s_xxx": (3, 0, 0), "s_yyy": (0, 3, 0), "s_zzz": (0, 0, 3),
        "s_xyy": (1, 2, 0), "s_xzz": (1, 0, 2), "s_xxy": (2, 1, 0),
        "s_xxz": (2, 0, 1), "s_yzz": (0, 1, 2), "s_yyz": (0, 2, 1),
    }
    out = {}
    for name, (i, j, k) in names.items():
        terms = []
        for x, y, z in points:
            terms.append(float(x) ** i * float(y) ** j * float(z) ** k)
        out[name] = math.fsum(terms)
    return out


def random_rotation(rng):
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


@pytest.fixture
def unit_axis_points():
    return np.array([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)], float)


@pytest.fixture
def case1_clean():
    return generate(builtin_case(1, epsilon=0.0, seed=11))


@pytest.fixture
def case1_noisy():
    return generate(builtin_case(1, seed=5))


CASE1_TRUTH = SphereParams(1.0, 2.0, 3.0, 7.2)
SPHERE2_TRUTH = SphereParams(2.3423, 0.8764, 45.8785, 9.02321)
