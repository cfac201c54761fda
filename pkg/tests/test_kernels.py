"""Agreement of the numba and numpy kernel paths, and the switch between them."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import dirichlet, seeds
from sdpi import _kernels
from sdpi._accel import HAVE_NUMBA
from sdpi._simplex import faces, lattice, project_rows, project_rows_to_face

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
CASES = [(_kernels.RENYI, 2.0), (_kernels.RENYI, 1.5), (_kernels.RENYI, 30.0),
         (_kernels.KL, 2.0), (_kernels.CHI2, 2.0), (_kernels.TV, 2.0)]


def _batch(rng, rows, n, spread):
    q = dirichlet(rng, n, 1e-3)
    P = rng.dirichlet(np.ones(n), size=rows)
    # mix near-reference rows, off-simplex probes and rows with zeros
    P[: rows // 3] = q + spread * (P[: rows // 3] - q)
    P[rows // 3: rows // 2] += rng.normal(scale=1e-7, size=(rows // 2 - rows // 3, n))
    P[-2, 0] = 0.0
    return np.abs(P), q


@needs_numba
@pytest.mark.parametrize("kind, alpha", CASES)
@given(seed=seeds, n=st.integers(2, 6), spread=st.sampled_from([1e-8, 1e-3, 0.4]))
def test_divergence_paths_agree(kind, alpha, seed, n, spread):
    P, q = _batch(np.random.default_rng(seed), 12, n, spread)
    fast = _kernels.divergence_rows_numba(P, q, kind, alpha)
    slow = _kernels.divergence_rows_numpy(P, q, kind, alpha)
    np.testing.assert_allclose(fast, slow, rtol=1e-10, atol=1e-14)


@needs_numba
@pytest.mark.parametrize("kind, alpha", CASES)
@given(seed=seeds, n=st.integers(2, 5), m=st.integers(2, 5))
def test_ratio_paths_agree(kind, alpha, seed, n, m):
    rng = np.random.default_rng(seed)
    P, mu = _batch(rng, 10, n, 0.3)
    P[0] = mu
    K = rng.dirichlet(np.ones(m), size=n)
    muK = mu @ K
    fast = _kernels.ratio_rows_numba(P, mu, K, muK, kind, alpha)
    slow = _kernels.ratio_rows_numpy(P, mu, K, muK, kind, alpha)
    assert np.isnan(fast[0]) and np.isnan(slow[0])
    np.testing.assert_allclose(fast[1:], slow[1:], rtol=1e-9, atol=1e-12)


def test_renyi_kernel_extends_off_simplex():
    q = np.array([0.25, 0.75])
    p = 2.0 * q
    # log(sum q (p/q)^a)/(a-1) = log(2^a)/(a-1)
    got = _kernels.divergence_rows(p[None, :], q, _kernels.RENYI, 3.0)[0]
    assert got == pytest.approx(3 * np.log(2) / 2, rel=1e-14)


def test_env_flag_selects_numpy_path():
    code = "from sdpi._accel import USE_NUMBA, DISABLED_BY_ENV; print(USE_NUMBA, DISABLED_BY_ENV)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True,
                         env=dict(os.environ, SDPI_DISABLE_NUMBA="1"))
    assert out.stdout.split() == ["False", "True"]


@needs_numba
def test_estimates_identical_on_both_paths():
    code = ("import numpy as np;"
            "from sdpi import *;"
            "p=AdmissiblePair(Distribution([0.2,0.3,0.5]),Channel([[.7,.2,.1],[.1,.8,.1],[.3,.3,.4]]));"
            "print(repr(eta2_boundary(p).value), repr(eta_estimate_ascent(p, DivergenceSpec.kl()).value))")
    vals = []
    for flag in ("0", "1"):
        out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True,
                             env=dict(os.environ, SDPI_DISABLE_NUMBA=flag))
        vals.append([float(v) for v in out.stdout.split()])
    np.testing.assert_allclose(vals[0], vals[1], rtol=1e-9)


# -- simplex helpers ----------------------------------------------------------

@given(seeds, st.integers(2, 7))
def test_projection_lands_on_simplex_and_is_idempotent(seed, n):
    V = np.random.default_rng(seed).normal(size=(5, n)) * 3
    X = project_rows(V)
    assert np.all(X >= 0)
    np.testing.assert_allclose(X.sum(axis=1), 1.0, atol=1e-12)
    np.testing.assert_allclose(project_rows(X), X, atol=1e-12)


@given(seeds, st.integers(3, 6))
def test_projection_is_nearest_point(seed, n):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=n)
    x = project_rows(v[None, :])[0]
    others = rng.dirichlet(np.ones(n), size=200)
    assert np.linalg.norm(v - x) <= np.linalg.norm(v - others, axis=1).min() + 1e-12


def test_face_projection_zeroes_outside():
    X = project_rows_to_face(np.array([[0.5, 0.2, 0.9]]), (0, 2))
    assert X[0, 1] == 0.0 and X[0].sum() == pytest.approx(1.0)


def test_lattice_counts_and_nesting():
    L = lattice(3, 60)
    assert L.shape == (1891, 3)
    assert len({tuple(r) for r in L}) == 1891
    coarse = {tuple(r) for r in lattice(3, 10)}
    fine = {tuple(r) for r in lattice(3, 20)}
    assert coarse <= fine


def test_faces_are_proper():
    fs = list(faces(3))
    assert len(fs) == 6
    assert all(0 < len(free) < 3 for _, free in fs)
