"""Divergences between distributions on a finite alphabet, in nats.

Renyi orders are restricted to ``1 < alpha < inf``; the KL divergence is the
``alpha -> 1`` limit and has its own function.
"""
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .probability import Distribution, ValidationError

PHI_TOL = 1e-12

_KIND_CODES = {"renyi": _kernels.RENYI, "kl": _kernels.KL, "chi2": _kernels.CHI2, "tv": _kernels.TV}


@dataclass(frozen=True)
class DivergenceSpec:
    """Selects one divergence: ``renyi`` (with ``alpha``), ``kl``, ``chi2``, ``tv`` or ``phi``.

    Convexity of a user ``phi`` is not checked; only ``phi(1) = 0`` is.
    """

    kind: str
    alpha: Optional[float] = None
    phi: Optional[Callable] = None

    def __post_init__(self):
        if self.kind not in ("renyi", "kl", "chi2", "tv", "phi"):
            raise ValueError(f"unknown divergence kind {self.kind!r}")
        if self.kind == "renyi":
            if self.alpha is None or not (1.0 < float(self.alpha) < math.inf):
                raise ValueError(f"Renyi order must satisfy 1 < alpha < inf, got {self.alpha!r}")
            object.__setattr__(self, "alpha", float(self.alpha))
        if self.kind == "phi":
            if self.phi is None:
                raise ValueError("phi divergence needs a function")
            at_one = float(self.phi(1.0))
            if abs(at_one) > PHI_TOL:
                raise ValueError(f"phi(1) must be 0, got {at_one!r}")

    @classmethod
    def renyi(cls, alpha):
        return cls("renyi", alpha=alpha)

    @classmethod
    def kl(cls):
        return cls("kl")

    @classmethod
    def chi2(cls):
        return cls("chi2")

    @classmethod
    def tv(cls):
        return cls("tv")

    @classmethod
    def from_phi(cls, phi):
        return cls("phi", phi=phi)

    @classmethod
    def parse(cls, text):
        """Parse ``renyi:<alpha>``, ``kl``, ``chi2`` or ``tv``."""
        name, _, arg = text.strip().lower().partition(":")
        if name == "renyi":
            if not arg:
                raise ValueError("renyi needs an order, e.g. renyi:2")
            return cls.renyi(float(arg))
        aliases = {"kl": "kl", "chi2": "chi2", "chisquare": "chi2", "tv": "tv"}
        if name not in aliases or arg:
            raise ValueError(f"cannot parse divergence spec {text!r}")
        return cls(aliases[name])

    @property
    def code(self):
        """Kernel code, or None for a user phi."""
        return _KIND_CODES.get(self.kind)

    @property
    def chi2_dominated(self):
        """True when the divergence has a smooth second-order expansion.

        For these the chi-square constant is a lower bound on the SDPI constant.
        """
        return self.kind in ("renyi", "kl", "chi2")

    def __str__(self):
        return f"renyi:{self.alpha:g}" if self.kind == "renyi" else self.kind


@dataclass(frozen=True)
class DivergenceValue:
    value: float
    finite: bool = True

    def __float__(self):
        return self.value


_INF = DivergenceValue(math.inf, finite=False)


def _pair_arrays(nu, mu):
    p = np.asarray(nu, dtype=float)
    q = np.asarray(mu, dtype=float)
    if p.shape != q.shape:
        raise ValidationError(f"distributions have lengths {p.size} and {q.size}")
    return p, q


def _support(nu, mu):
    """Restrict to the support of ``mu``; None if ``nu`` is not absolutely continuous."""
    p, q = _pair_arrays(nu, mu)
    supp = q > 0
    if np.any(p[~supp] > 0):
        return None
    return p[supp], q[supp]


def _kernel_value(nu, mu, code, alpha=2.0):
    arrays = _support(nu, mu)
    if arrays is None:
        return _INF
    p, q = arrays
    v = float(_kernels.divergence_rows(p[None, :], q, code, alpha)[0])
    return DivergenceValue(max(v, 0.0))


def renyi_divergence(nu, mu, alpha):
    """``D_alpha(nu || mu) = log(sum_i mu_i (nu_i/mu_i)**alpha) / (alpha - 1)``.

    Evaluated with a log-sum-exp so that large orders do not overflow.
    Returns an infinite value when ``nu`` is not absolutely continuous
    with respect to ``mu``.
    """
    if not (1.0 < alpha < math.inf):
        raise ValueError(f"Renyi order must satisfy 1 < alpha < inf, got {alpha!r}")
    return _kernel_value(nu, mu, _kernels.RENYI, alpha)


def kl_divergence(nu, mu):
    return _kernel_value(nu, mu, _kernels.KL)


def chi2_divergence(nu, mu):
    return _kernel_value(nu, mu, _kernels.CHI2)


def tv_divergence(nu, mu):
    p, q = _pair_arrays(nu, mu)
    return DivergenceValue(0.5 * float(np.abs(p - q).sum()))


def phi_divergence(nu, mu, phi):
    """``sum_i mu_i phi(nu_i / mu_i)`` over the support of ``mu``.

    Coordinates where ``mu`` vanishes are dropped with a warning; the
    result is then only meaningful for channels whose pair is admissible.
    """
    at_one = float(phi(1.0))
    if abs(at_one) > PHI_TOL:
        raise ValueError(f"phi(1) must be 0, got {at_one!r}")
    p, q = _pair_arrays(nu, mu)
    supp = q > 0
    if not supp.all():
        warnings.warn("mu has zero entries; those coordinates are excluded from the phi-divergence")
    value = float(np.sum(q[supp] * np.asarray(phi(p[supp] / q[supp]), dtype=float)))
    return DivergenceValue(value, finite=math.isfinite(value))


def h2(nu, mu):
    """``sum_j nu_j**2 / mu_j``, which equals ``exp(D_2(nu || mu))``."""
    arrays = _support(nu, mu)
    if arrays is None:
        return math.inf
    p, q = arrays
    return float(np.sum(p * p / q))


def divergence(nu, mu, spec):
    """Dispatch on a :class:`DivergenceSpec`."""
    if spec.kind == "renyi":
        return renyi_divergence(nu, mu, spec.alpha)
    if spec.kind == "kl":
        return kl_divergence(nu, mu)
    if spec.kind == "chi2":
        return chi2_divergence(nu, mu)
    if spec.kind == "tv":
        return tv_divergence(nu, mu)
    return phi_divergence(nu, mu, spec.phi)

