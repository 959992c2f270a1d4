import os
import subprocess
import sys

import numpy as np
import pytest

from chiralret import kernels
from chiralret.core import MCP3

BACKENDS = kernels.available_backends()
needs_cython = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")

DIP = (MCP3.d_e, MCP3.d_m, MCP3.d_e, MCP3.d_m)
CASES = [
    (1.0 + 0j, 1.0 + 0j, 1.0 + 0j),
    (1.4 + 1e-8j, 1.19512 + 0j, 1.0 + 0j),
    (0.52 + 2.39j, 1.6211 + 0.0609j, 1.0 + 0j),
    (1.2 + 0.3j, 1.1 + 0.05j, 0.8 - 0.02j),
]
U = np.logspace(-4, 3, 97)


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return np.max(np.abs(a - b)) / np.max(np.abs(b))


def test_python_backend_always_available():
    assert "python" in BACKENDS
    assert kernels.BACKEND in BACKENDS


@needs_cython
@pytest.mark.parametrize("n,ce,cm", CASES)
@pytest.mark.parametrize("coeffs", [(1.0, 4.0), (2.0, 1.0)])
def test_closed_terms_agree(n, ce, cm, coeffs):
    py = BACKENDS["python"].closed_terms(U, n, ce, cm, *DIP, *coeffs)
    cy = BACKENDS["cython"].closed_terms(U, n, ce, cm, *DIP, *coeffs)
    for a, b in zip(py, cy):
        assert _rel(b, a) <= 1e-12


@needs_cython
@pytest.mark.parametrize("lfc", [False, True])
@pytest.mark.parametrize("printed", [False, True])
def test_limit_grid_agree(lfc, printed):
    re_n = np.linspace(0.05, 5.0, 41)
    im_n = np.linspace(0.0, 4.0, 33)
    py = BACKENDS["python"].limit_grid(re_n, im_n, lfc, *DIP, printed)
    cy = BACKENDS["cython"].limit_grid(re_n, im_n, lfc, *DIP, printed)
    for a, b in zip(py, cy):
        a, b = np.asarray(a), np.asarray(b)
        assert np.array_equal(np.isnan(a), np.isnan(b))
        ok = ~np.isnan(a)
        assert np.all(np.abs(a[ok] - b[ok]) <= 1e-12 * np.max(np.abs(a[ok])))


@needs_cython
@pytest.mark.parametrize("n,ce,cm", CASES)
def test_trace_terms_agree(n, ce, cm):
    mu = 1.0 + 0j if cm == 1 else 1.3 + 0.01j
    e = (1 / 3, 2 / 3, 2 / 3)
    py = BACKENDS["python"].trace_terms(U, n, mu, ce, cm, *e)
    cy = BACKENDS["cython"].trace_terms(U, n, mu, ce, cm, *e)
    for a, b in zip(py, cy):
        assert _rel(b, a) <= 1e-12


def test_limit_grid_marks_lfc_pole():
    # eps = n^2 = -1/2 at n = i / sqrt(2)
    im = np.array([1 / np.sqrt(2)])
    for impl in BACKENDS.values():
        near, far = impl.limit_grid(np.array([0.0]), im, True, *DIP, False)
        assert np.isnan(near[0, 0]) and np.isnan(far[0, 0])


@pytest.mark.parametrize("name", ["python", "cython"])
def test_env_selects_backend(name):
    if name not in BACKENDS:
        pytest.skip("backend not built")
    env = dict(os.environ, CHIRALRET_BACKEND=name)
    out = subprocess.run([sys.executable, "-c", "from chiralret import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == name
