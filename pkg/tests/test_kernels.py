import os
import subprocess
import sys

import numpy as np
import pytest

from wctet import kernels

from conftest import random_tets


@pytest.fixture
def both_backends():
    saved = kernels.backend_name()
    try:
        kernels.use_backend("numba")
    except ImportError:
        pytest.skip("numba backend unavailable")
    kernels.use_backend(saved)
    yield
    kernels.use_backend(saved)


def test_backend_parity(both_backends, rng):
    T = random_tets(rng, 150)
    neg = np.linalg.det(T[:, 1:] - T[:, :1]) < 0
    T[neg] = T[neg][:, [0, 1, 3, 2]]
    sgn = np.ones(len(T))
    sgn_bad = sgn.copy()
    sgn_bad[7] = -1.0
    results = {}
    for name in ("numpy", "numba"):
        kernels.use_backend(name)
        results[name] = dict(
            q=kernels.quality_arrays(T),
            p0=kernels.per_tet_objective(T, 0),
            p1=kernels.per_tet_objective(T, 1),
            m0=kernels.min_objective(T, 0),
            m1=kernels.min_objective(T, 1),
            w=kernels.wc_margins(T),
            ok=kernels.volume_signs_ok(T, sgn),
            bad=kernels.volume_signs_ok(T, sgn_bad),
        )
    a, b = results["numpy"], results["numba"]
    labels = ("center", "radius", "h_over_r", "face", "dihedral", "r_over_l", "vol")
    for lab, x, y in zip(labels, a["q"], b["q"]):
        assert np.allclose(x, y, rtol=1e-11, atol=1e-9), lab
    assert np.allclose(a["p0"], b["p0"], atol=1e-11)
    assert np.allclose(a["p1"], b["p1"], atol=1e-11)
    assert abs(a["m0"] - b["m0"]) < 1e-11
    assert abs(a["m1"] - b["m1"]) < 1e-11
    assert np.allclose(a["w"], b["w"], atol=1e-11)
    assert a["ok"] and b["ok"]
    assert not a["bad"] and not b["bad"]


def test_objective_modes(rng):
    T = random_tets(rng, 64)
    _, _, hR, face, _, _, _ = kernels.quality_arrays(T)
    p1 = kernels.per_tet_objective(T, 1)
    assert np.allclose(p1, hR.min(axis=1), atol=1e-12)
    p0 = kernels.per_tet_objective(T, 0)
    want = np.minimum(hR.min(axis=1), ((90.0 - face) / 90.0).min(axis=1))
    assert np.allclose(p0, want, atol=1e-12)
    assert kernels.min_objective(T, 0) == pytest.approx(p0.min(), abs=1e-15)
    assert kernels.min_objective(T, 1) == pytest.approx(p1.min(), abs=1e-15)


def test_wc_margins_layout(rng):
    T = random_tets(rng, 10)
    w = kernels.wc_margins(T)
    assert w.shape == (160,)
    p0 = kernels.per_tet_objective(T, 0)
    assert w.reshape(10, 16).min(axis=1) == pytest.approx(p0, abs=1e-12)


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_env_flag_selects_backend():
    code = "import wctet.kernels as k; print(k.backend_name())"
    for flag, want in (("0", "numpy"), ("1", "numba")):
        env = dict(os.environ, WCTET_USE_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True)
        assert out.returncode == 0, out.stderr
        assert out.stdout.strip() == want
