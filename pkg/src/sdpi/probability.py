"""Finite-alphabet probability primitives.

Distributions and channels are immutable: their arrays are copied and
flagged read-only at construction.
"""
from dataclasses import dataclass, field

import numpy as np

SIMPLEX_TOL = 1e-12


class ValidationError(ValueError):
    """Input that does not describe a valid distribution, channel or pair."""


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _check_simplex(v, what):
    if not np.all(np.isfinite(v)):
        raise ValidationError(f"{what} has non-finite entries")
    if np.any(v < 0):
        raise ValidationError(f"{what} has negative entries")
    total = v.sum()
    if abs(total - 1.0) > SIMPLEX_TOL:
        raise ValidationError(f"{what} sums to {float(total)!r}, not 1")
    return v / total


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability vector on ``{0, ..., n-1}``, ``n >= 2``.

    Entries must sum to one within ``SIMPLEX_TOL``; such inputs are
    renormalised, anything further off is rejected.
    """

    probs: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.probs, dtype=float)
        if v.ndim != 1 or v.size < 2:
            raise ValidationError(f"distribution must be a vector of length >= 2, got shape {v.shape}")
        object.__setattr__(self, "probs", _frozen(_check_simplex(v, "distribution")))

    @classmethod
    def uniform(cls, n):
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def point_mass(cls, n, i):
        v = np.zeros(n)
        v[i] = 1.0
        return cls(v)

    @property
    def n(self):
        return self.probs.size

    def __len__(self):
        return self.probs.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.probs, dtype=dtype)

    def strictly_positive(self):
        return bool(np.all(self.probs > 0))

    def allclose(self, other, atol=1e-12):
        other = np.asarray(other, dtype=float)
        return other.shape == self.probs.shape and bool(np.allclose(self.probs, other, rtol=0, atol=atol))

    def __repr__(self):
        return f"Distribution({self.probs.tolist()})"


@dataclass(frozen=True, eq=False)
class Channel:
    """Row-stochastic ``n x m`` matrix; row ``x`` is ``K(.|x)``."""

    matrix: np.ndarray

    def __post_init__(self):
        K = np.asarray(self.matrix, dtype=float)
        if K.ndim != 2 or K.shape[0] < 1 or K.shape[1] < 1:
            raise ValidationError(f"channel must be a 2-d matrix, got shape {K.shape}")
        rows = [_check_simplex(row, f"channel row {x}") for x, row in enumerate(K)]
        object.__setattr__(self, "matrix", _frozen(np.vstack(rows)))

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n))

    @classmethod
    def bsc(cls, eps):
        """Binary symmetric channel flipping with probability ``eps``."""
        return cls([[1.0 - eps, eps], [eps, 1.0 - eps]])

    @classmethod
    def binary(cls, eps, theta):
        """The 2x2 channel ``[[1-eps, eps], [theta, 1-theta]]``."""
        return cls([[1.0 - eps, eps], [theta, 1.0 - theta]])

    @property
    def n_inputs(self):
        return self.matrix.shape[0]

    @property
    def n_outputs(self):
        return self.matrix.shape[1]

    @property
    def shape(self):
        return self.matrix.shape

    def apply(self, g):
        """``(Kg)(x) = sum_y K(y|x) g(y)`` for a function ``g`` on outputs."""
        g = np.asarray(g, dtype=float)
        if g.shape != (self.n_outputs,):
            raise ValidationError(f"function has length {g.size}, channel has {self.n_outputs} outputs")
        return self.matrix @ g

    def __repr__(self):
        return f"Channel({self.matrix.tolist()})"


def pushforward(mu, k):
    """Output law ``muK(y) = sum_x mu(x) K(y|x)``."""
    if mu.n != k.n_inputs:
        raise ValidationError(f"distribution has length {mu.n}, channel has {k.n_inputs} inputs")
    out = mu.probs @ k.matrix
    if out.size == 1:
        raise ValidationError("channel has a single output; pushforward is not a distribution of length >= 2")
    return Distribution(out)


@dataclass(frozen=True, eq=False)
class AdmissiblePair:
    """Input law and channel with both ``mu`` and ``muK`` strictly positive."""

    mu: Distribution
    channel: Channel
    mu_k: Distribution = field(init=False)

    def __post_init__(self):
        if not isinstance(self.mu, Distribution):
            object.__setattr__(self, "mu", Distribution(self.mu))
        if not isinstance(self.channel, Channel):
            object.__setattr__(self, "channel", Channel(self.channel))
        if not self.mu.strictly_positive():
            raise ValidationError("pair is not admissible: mu has a zero entry")
        mu_k = pushforward(self.mu, self.channel)
        if not mu_k.strictly_positive():
            raise ValidationError("pair is not admissible: muK has a zero entry")
        object.__setattr__(self, "mu_k", mu_k)

    @property
    def n(self):
        return self.mu.n

    @property
    def m(self):
        return self.channel.n_outputs


@dataclass(frozen=True, eq=False)
class DensityPerturbation:
    """Zero-mean density perturbation ``f = dnu/dmu - 1``."""

    values: np.ndarray
    mu: Distribution

    def __post_init__(self):
        f = np.asarray(self.values, dtype=float)
        if f.shape != self.mu.probs.shape:
            raise ValidationError(f"perturbation has length {f.size}, mu has {self.mu.n}")
        mean = float(self.mu.probs @ f)
        if abs(mean) > SIMPLEX_TOL:
            raise ValidationError(f"perturbation has mean {mean!r} under mu")
        if np.any(1.0 + f < -SIMPLEX_TOL):
            raise ValidationError("perturbation has 1 + f < 0")
        object.__setattr__(self, "values", _frozen(f))

    def to_distribution(self):
        """Recover ``nu = mu (1 + f)``."""
        return Distribution(self.mu.probs * (1.0 + self.values))


def perturbation_from(nu, mu):
    if nu.n != mu.n:
        raise ValidationError(f"nu has length {nu.n}, mu has {mu.n}")
    if not mu.strictly_positive():
        raise ValidationError("mu has a zero entry; dnu/dmu is undefined")
    return DensityPerturbation(nu.probs / mu.probs - 1.0, mu)


def adjoint(pair):
    """Backward channel ``K*(x|y) = K(y|x) mu(x) / muK(y)`` as an ``m x n`` matrix."""
    K = pair.channel.matrix
    joint = K * pair.mu.probs[:, None]
    return Channel((joint / pair.mu_k.probs[None, :]).T)


def apply_adjoint_to_perturbation(pair, f):
    """``K* f`` as a function on outputs; zero mean under ``muK``."""
    if f.values.shape != (pair.n,):
        raise ValidationError(f"perturbation has length {f.values.size}, pair has {pair.n} inputs")
    K = pair.channel.matrix
    return (pair.mu.probs * f.values) @ K / pair.mu_k.probs
