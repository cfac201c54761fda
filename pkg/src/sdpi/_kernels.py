"""Hot numeric kernels: row-wise divergences and SDPI ratios.

Every kernel exists twice: a scalar-loop version compiled with numba and a
vectorised numpy version. ``USE_NUMBA`` in :mod:`sdpi._accel` picks which one
the public names point at; both are importable for testing and benchmarks.

All kernels take a strictly positive reference ``q`` and rows ``p >= 0`` that
need not be exactly normalised (finite-difference probes step off the
simplex). The formulas are extensions that agree with the usual divergences
on the simplex:

* Renyi:  ``log(sum q (p/q)**a) / (a - 1)``
* KL:     ``sum p log(p/q) - p + q``
* chi^2:  ``sum (p - q)**2 / q``
* TV:     ``sum |p - q| / 2``
"""
import math

import numpy as np

from ._accel import USE_NUMBA, njit

RENYI = 0
KL = 1
CHI2 = 2
TV = 3

# below this max |p/q - 1| the Renyi moment is summed around 1 to avoid
# cancellation in log(1 + tiny)
_NEAR = 0.5


def _row_divergence(p, q, kind, alpha):
    n = p.shape[0]
    if kind == RENYI:
        xmax = 0.0
        for i in range(n):
            x = abs(p[i] / q[i] - 1.0)
            if x > xmax:
                xmax = x
        if xmax < _NEAR:
            s = 0.0
            lin = 0.0
            for i in range(n):
                x = p[i] / q[i] - 1.0
                s += q[i] * (math.expm1(alpha * math.log1p(x)) - alpha * x)
                lin += p[i] - q[i]
            return math.log1p(s + alpha * lin) / (alpha - 1.0)
        m = -np.inf
        for i in range(n):
            if p[i] > 0.0:
                t = math.log(q[i]) + alpha * (math.log(p[i]) - math.log(q[i]))
                if t > m:
                    m = t
        if m == -np.inf:
            return np.nan
        s = 0.0
        for i in range(n):
            if p[i] > 0.0:
                s += math.exp(math.log(q[i]) + alpha * (math.log(p[i]) - math.log(q[i])) - m)
        return (m + math.log(s)) / (alpha - 1.0)
    if kind == KL:
        s = 0.0
        for i in range(n):
            if p[i] > 0.0:
                s += p[i] * math.log(p[i] / q[i]) - p[i] + q[i]
            else:
                s += q[i] - p[i]
        return s
    if kind == CHI2:
        s = 0.0
        for i in range(n):
            d = p[i] - q[i]
            s += d * d / q[i]
        return s
    s = 0.0
    for i in range(n):
        s += abs(p[i] - q[i])
    return 0.5 * s


_row_divergence_jit = njit(_row_divergence)


def _divergence_rows_loop(P, q, kind, alpha):
    out = np.empty(P.shape[0])
    for r in range(P.shape[0]):
        out[r] = _row_divergence_jit(P[r], q, kind, alpha)
    return out


def _ratio_rows_loop(P, mu, K, muK, kind, alpha):
    rows, n = P.shape
    m = K.shape[1]
    out = np.empty(rows)
    pk = np.empty(m)
    for r in range(rows):
        for j in range(m):
            acc = 0.0
            for i in range(n):
                acc += P[r, i] * K[i, j]
            pk[j] = acc
        den = _row_divergence_jit(P[r], mu, kind, alpha)
        if den > 0.0:
            out[r] = _row_divergence_jit(pk, muK, kind, alpha) / den
        else:
            out[r] = np.nan
    return out


divergence_rows_numba = njit(_divergence_rows_loop)
ratio_rows_numba = njit(_ratio_rows_loop)


def divergence_rows_numpy(P, q, kind, alpha):
    """Vectorised counterpart of the loop kernel; same extended formulas."""
    P = np.asarray(P, dtype=float)
    q = np.asarray(q, dtype=float)
    if kind == RENYI:
        X = P / q - 1.0
        near = np.abs(X).max(axis=1) < _NEAR
        out = np.empty(P.shape[0])
        if near.any():
            Xn = X[near]
            with np.errstate(divide="ignore"):
                s = (q * (np.expm1(alpha * np.log1p(Xn)) - alpha * Xn)).sum(axis=1)
            lin = (P[near] - q).sum(axis=1)
            out[near] = np.log1p(s + alpha * lin) / (alpha - 1.0)
        far = ~near
        if far.any():
            Pf = P[far]
            with np.errstate(divide="ignore"):
                T = np.where(Pf > 0.0, np.log(q) + alpha * (np.log(Pf) - np.log(q)), -np.inf)
            mx = T.max(axis=1)
            safe = np.where(np.isfinite(mx), mx, 0.0)
            s = np.exp(T - safe[:, None]).sum(axis=1)
            with np.errstate(divide="ignore"):
                val = (safe + np.log(s)) / (alpha - 1.0)
            out[far] = np.where(np.isfinite(mx), val, np.nan)
        return out
    if kind == KL:
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(P > 0.0, P * np.log(P / q), 0.0)
        return (terms - P + q).sum(axis=1)
    if kind == CHI2:
        return ((P - q) ** 2 / q).sum(axis=1)
    return 0.5 * np.abs(P - q).sum(axis=1)


def ratio_rows_numpy(P, mu, K, muK, kind, alpha):
    P = np.asarray(P, dtype=float)
    den = divergence_rows_numpy(P, mu, kind, alpha)
    num = divergence_rows_numpy(P @ K, muK, kind, alpha)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(den > 0.0, num / den, np.nan)


def divergence_rows(P, q, kind, alpha=2.0):
    """Divergence of every row of ``P`` from the strictly positive ``q``."""
    P = np.ascontiguousarray(P, dtype=float)
    q = np.ascontiguousarray(q, dtype=float)
    if USE_NUMBA:
        return divergence_rows_numba(P, q, int(kind), float(alpha))
    return divergence_rows_numpy(P, q, int(kind), float(alpha))


def ratio_rows(P, mu, K, muK, kind, alpha=2.0):
    """``D(pK || muK) / D(p || mu)`` for every row ``p`` of ``P``.

    Rows with a non-positive denominator give NaN.
    """
    P = np.ascontiguousarray(P, dtype=float)
    args = (
        np.ascontiguousarray(mu, dtype=float),
        np.ascontiguousarray(K, dtype=float),
        np.ascontiguousarray(muK, dtype=float),
        int(kind),
        float(alpha),
    )
    if USE_NUMBA:
        return ratio_rows_numba(P, *args)
    return ratio_rows_numpy(P, *args)
