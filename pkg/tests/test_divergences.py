import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import dirichlet, positive_vectors, seeds
from sdpi import (Channel, Distribution, DivergenceSpec, chi2_divergence, divergence, h2, kl_divergence,
                  phi_divergence, pushforward, renyi_divergence, tv_divergence)

D0 = Distribution([1.0, 0.0])
UNIF = Distribution([0.5, 0.5])


def xlogx(x):
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0, x, 1.0)
    return np.where(x > 0, x * np.log(safe), 0.0)


# -- spec ---------------------------------------------------------------------

@pytest.mark.parametrize("alpha", [1.0, 0.5, math.inf, -2.0])
def test_renyi_order_must_exceed_one(alpha):
    with pytest.raises(ValueError):
        DivergenceSpec.renyi(alpha)
    with pytest.raises(ValueError):
        renyi_divergence(D0, UNIF, alpha)


def test_phi_must_vanish_at_one():
    with pytest.raises(ValueError, match="phi"):
        DivergenceSpec.from_phi(lambda x: x ** 2)


@pytest.mark.parametrize("text, kind, alpha", [
    ("renyi:2", "renyi", 2.0), ("RENYI:1.5", "renyi", 1.5), ("kl", "kl", None),
    ("chi2", "chi2", None), ("chisquare", "chi2", None), ("tv", "tv", None),
])
def test_spec_parse(text, kind, alpha):
    spec = DivergenceSpec.parse(text)
    assert (spec.kind, spec.alpha) == (kind, alpha)


@pytest.mark.parametrize("text", ["renyi", "renyi:1", "hellinger", "kl:2"])
def test_spec_parse_rejects(text):
    with pytest.raises(ValueError):
        DivergenceSpec.parse(text)


# -- examples -----------------------------------------------------------------

@given(seeds, st.sampled_from([1.01, 1.5, 2.0, 7.0, 40.0]))
def test_renyi_of_mu_with_itself_is_zero(seed, alpha):
    mu = Distribution(dirichlet(np.random.default_rng(seed), 4))
    assert renyi_divergence(mu, mu, alpha).value == pytest.approx(0.0, abs=1e-15)


def test_renyi_examples():
    assert renyi_divergence(D0, UNIF, 2).value == pytest.approx(math.log(2), abs=1e-15)
    assert renyi_divergence(Distribution([0.2, 0.8]), UNIF, 2).value == pytest.approx(math.log(1.36), abs=1e-15)
    assert math.log(1.36) == pytest.approx(0.307485, abs=1e-6)


def test_renyi_not_absolutely_continuous_is_infinite():
    v = renyi_divergence(Distribution([0.5, 0.5]), Distribution([1.0, 0.0]), 2)
    assert v.value == math.inf and not v.finite


def test_kl_examples():
    mu = Distribution([0.2, 0.3, 0.5])
    assert kl_divergence(mu, mu).value == 0.0
    assert kl_divergence(D0, UNIF).value == pytest.approx(math.log(2), abs=1e-15)


def test_chi2_examples():
    mu = Distribution([0.2, 0.3, 0.5])
    assert chi2_divergence(mu, mu).value == 0.0
    assert chi2_divergence(D0, UNIF).value == pytest.approx(1.0, abs=1e-15)


def test_tv_examples():
    mu = Distribution([0.2, 0.3, 0.5])
    assert tv_divergence(mu, mu).value == 0.0
    assert tv_divergence(D0, Distribution([0.0, 1.0])).value == 1.0
    assert tv_divergence(Distribution([0.9, 0.1]), Distribution([0.1, 0.9])).value == pytest.approx(0.8, abs=1e-15)


def test_h2_examples():
    mu = Distribution([0.2, 0.3, 0.5])
    assert h2(mu, mu) == pytest.approx(1.0, abs=1e-15)
    assert h2(D0, UNIF) == pytest.approx(2.0, abs=1e-15)


def test_phi_reproduces_named_divergences():
    rng = np.random.default_rng(3)
    for _ in range(200):
        nu = Distribution(rng.dirichlet(np.ones(5)))
        mu = Distribution(dirichlet(rng, 5, 1e-3))
        assert phi_divergence(nu, mu, lambda x: x ** 2 - 1).value == pytest.approx(
            chi2_divergence(nu, mu).value, abs=1e-12)
        assert phi_divergence(nu, mu, lambda x: 0.5 * np.abs(x - 1)).value == pytest.approx(
            tv_divergence(nu, mu).value, abs=1e-12)
        assert phi_divergence(nu, mu, xlogx).value == pytest.approx(kl_divergence(nu, mu).value, abs=1e-12)
    assert phi_divergence(D0, UNIF, xlogx).value == pytest.approx(math.log(2), abs=1e-15)


def test_phi_warns_on_zero_reference():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        phi_divergence(D0, D0, lambda x: x ** 2 - 1)
    assert caught


def test_divergence_dispatch():
    nu, mu = Distribution([0.2, 0.8]), UNIF
    assert divergence(nu, mu, DivergenceSpec.renyi(2)).value == renyi_divergence(nu, mu, 2).value
    assert divergence(nu, mu, DivergenceSpec.kl()).value == kl_divergence(nu, mu).value
    assert divergence(nu, mu, DivergenceSpec.from_phi(lambda x: x ** 2 - 1)).value == pytest.approx(
        chi2_divergence(nu, mu).value, abs=1e-15)


# -- identities and properties ------------------------------------------------

def test_h2_identities():
    rng = np.random.default_rng(4)
    for _ in range(1000):
        n = int(rng.integers(2, 7))
        nu = Distribution(rng.dirichlet(np.ones(n)))
        mu = Distribution(dirichlet(rng, n, 1e-3))
        d2 = renyi_divergence(nu, mu, 2).value
        assert math.exp(d2) == pytest.approx(h2(nu, mu), rel=1e-12, abs=1e-12)
        assert math.exp(d2) == pytest.approx(1.0 + chi2_divergence(nu, mu).value, rel=1e-12, abs=1e-12)


KINDS = [DivergenceSpec.renyi(2), DivergenceSpec.renyi(4), DivergenceSpec.renyi(1.3),
         DivergenceSpec.kl(), DivergenceSpec.chi2(), DivergenceSpec.tv()]


def test_nonnegative_and_zero_only_at_mu():
    rng = np.random.default_rng(5)
    for _ in range(10_000):
        n = int(rng.integers(2, 6))
        nu = Distribution(rng.dirichlet(np.ones(n)))
        mu = Distribution(dirichlet(rng, n, 1e-4))
        far = np.abs(nu.probs - mu.probs).max() > 1e-3
        for spec in KINDS:
            v = divergence(nu, mu, spec).value
            assert v >= 0.0
            if far:
                assert v > 1e-12


@given(seeds, st.integers(2, 6))
def test_renyi_monotone_in_order(seed, n):
    rng = np.random.default_rng(seed)
    nu = Distribution(rng.dirichlet(np.ones(n)))
    mu = Distribution(dirichlet(rng, n, 1e-3))
    vals = [renyi_divergence(nu, mu, a).value for a in (1.1, 1.5, 2, 3, 5, 10)]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    assert kl_divergence(nu, mu).value <= vals[0] + 1e-12


@given(seeds, st.integers(2, 6), st.integers(2, 6), st.sampled_from(KINDS))
def test_data_processing(seed, n, m, spec):
    rng = np.random.default_rng(seed)
    nu = Distribution(rng.dirichlet(np.ones(n)))
    mu = Distribution(dirichlet(rng, n, 1e-3))
    K = Channel(rng.dirichlet(np.ones(m), size=n))
    before = divergence(nu, mu, spec).value
    after = divergence(pushforward(nu, K), pushforward(mu, K), spec).value
    assert after <= before + 1e-10


def test_large_order_tiny_entries_stay_finite():
    nu = Distribution([1.0 - 2e-12, 1e-12, 1e-12])
    mu = Distribution([1e-12, 1e-12, 1.0 - 2e-12])
    v = renyi_divergence(nu, mu, 50)
    assert v.finite and math.isfinite(v.value)
    # dominated by the first coordinate: log(mu0 (nu0/mu0)^50) / 49
    expected = (math.log(1e-12) + 50 * (math.log(1.0 - 2e-12) - math.log(1e-12))) / 49
    assert v.value == pytest.approx(expected, rel=1e-9)


@given(positive_vectors(4), positive_vectors(4))
def test_order_near_one_approaches_kl(p, q):
    nu, mu = Distribution(p), Distribution(q)
    assert abs(renyi_divergence(nu, mu, 1 + 1e-6).value - kl_divergence(nu, mu).value) <= 1e-4


def test_near_reference_renyi_has_no_cancellation():
    mu = Distribution([0.3, 0.7])
    nu = Distribution([0.3 + 1e-9, 0.7 - 1e-9])
    f = nu.probs / mu.probs - 1
    # second order: alpha/2 * E_mu[f^2] for small f
    expected = mu.probs @ f ** 2
    assert renyi_divergence(nu, mu, 2).value == pytest.approx(expected, rel=1e-6)
