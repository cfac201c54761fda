"""Estimators and bounds for SDPI contraction constants.

For a fixed admissible pair ``(mu, K)`` and a divergence ``D`` the constant is
``eta(mu, K) = sup_{nu != mu} D(nuK || muK) / D(nu || mu)``. The estimators
here are:

* ``eta_chi2_spectral``: exact chi-square constant from an SVD.
* ``dobrushin_coefficient``: the channel-level TV constant.
* ``eta_estimate_grid``: brute-force maximum over a simplex lattice.
* ``eta_estimate_ascent``: multi-start projected gradient ascent.
* ``eta2_boundary``: order-2 Renyi constant searched on the simplex faces.
* closed forms for binary inputs and the pair-wise lower bound.

Search points within ``exclusion_radius`` (in TV) of ``mu`` are skipped,
since the ratio is 0/0 at ``mu``.
"""
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from ._simplex import faces, lattice, project_rows_to_face
from .divergences import DivergenceSpec, divergence
from .probability import (
    AdmissiblePair,
    Channel,
    Distribution,
    ValidationError,
    apply_adjoint_to_perturbation,
    perturbation_from,
    pushforward,
)

DEFAULT_RESOLUTION = {2: 200, 3: 60, 4: 25, 5: 14, 6: 10}
MAX_GRID_ALPHABET = 6
SPECTRAL_TOL = 1e-10
RATIO_SLACK = 1e-10
CHI2_PINCH = 1e-9
FD_STEP = 1e-7
METHODS = ("spectral", "dobrushin", "grid", "ascent", "boundary", "closed_form", "thm2_bound")

_INITIAL_STEP = 0.05
_MIN_STEP = 1e-13
_MIN_LAMBDA = 1e-12
_MAX_LAMBDA = 1e6
_ARMIJO = 1e-4
_MAX_BACKTRACK = 50
_STALL_WINDOW = 20
_TOP_FACE_STARTS = 4
_CHUNK = 200_000


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the lattice and ascent searches.

    ``grid_resolution=None`` picks a per-dimension default
    (200, 60, 25, 14, 10 points per edge for n = 2..6).
    """

    grid_resolution: Optional[int] = None
    ascent_restarts: int = 32
    ascent_tol: float = 1e-9
    max_iters: int = 10_000
    exclusion_radius: float = 1e-4
    seed: int = 0

    def __post_init__(self):
        if self.grid_resolution is not None and self.grid_resolution < 1:
            raise ValueError("grid_resolution must be positive")
        if self.ascent_restarts < 1 or self.max_iters < 1:
            raise ValueError("ascent_restarts and max_iters must be positive")
        if not self.ascent_tol > 0:
            raise ValueError("ascent_tol must be positive")
        if not 0 < self.exclusion_radius < 1:
            raise ValueError("exclusion_radius must lie in (0, 1)")

    def resolution(self, n):
        if self.grid_resolution is not None:
            return self.grid_resolution
        return DEFAULT_RESOLUTION.get(n, 8)

    @classmethod
    def from_mapping(cls, data):
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown search config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path):
        with open(path) as fh:
            return cls.from_mapping(json.load(fh))

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True, eq=False)
class EtaEstimate:
    """An SDPI constant estimate with its witness and a bracket ``(lower, upper)``."""

    value: float
    witness: Optional[np.ndarray]
    method: str
    bracket: tuple = field(default=(0.0, 1.0))

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        lo, hi = (float(b) for b in self.bracket)
        v = float(self.value)
        if not (0.0 <= lo <= v <= hi <= 1.0 + RATIO_SLACK):
            raise ValueError(f"inconsistent estimate: bracket ({lo}, {hi}) and value {v}")
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "bracket", (lo, hi))
        if self.witness is not None:
            w = np.array(self.witness, dtype=float)
            w.setflags(write=False)
            object.__setattr__(self, "witness", w)

    def to_dict(self):
        return {
            "value": self.value,
            "method": self.method,
            "witness": None if self.witness is None else self.witness.tolist(),
            "bracket": list(self.bracket),
        }


def _unit(x):
    """Clamp a ratio that DPI bounds by 1 into ``[0, 1]``."""
    return min(max(float(x), 0.0), 1.0)


def _as_pair(pair):
    if not isinstance(pair, AdmissiblePair):
        raise TypeError("expected an AdmissiblePair")
    return pair


class _Objective:
    """Row-wise SDPI ratio for one pair and divergence, with the exclusion ball."""

    def __init__(self, pair, spec, radius):
        self.mu = np.ascontiguousarray(pair.mu.probs)
        self.K = np.ascontiguousarray(pair.channel.matrix)
        self.muK = np.ascontiguousarray(pair.mu_k.probs)
        self.spec = spec
        self.radius = radius
        self.smooth = spec.chi2_dominated

    def raw(self, P):
        code = self.spec.code
        if code is not None:
            return _kernels.ratio_rows(P, self.mu, self.K, self.muK, code, self.spec.alpha or 2.0)
        phi = self.spec.phi
        with np.errstate(divide="ignore", invalid="ignore"):
            den = (self.mu * phi(P / self.mu)).sum(axis=1)
            num = (self.muK * phi((P @ self.K) / self.muK)).sum(axis=1)
            return np.where(den > 0, num / den, np.nan)

    def excluded(self, P):
        return 0.5 * np.abs(P - self.mu).sum(axis=1) <= self.radius

    def __call__(self, P):
        P = np.atleast_2d(P)
        out = np.empty(P.shape[0])
        for s in range(0, P.shape[0], _CHUNK):
            block = P[s:s + _CHUNK]
            vals = self.raw(block)
            vals[self.excluded(block)] = np.nan
            out[s:s + _CHUNK] = vals
        return np.where(np.isfinite(out), out, -np.inf)


def _fd_gradient(obj, X, fx, free):
    """Finite-difference gradient on the free coordinates.

    Central differences where the coordinate allows a backward step,
    forward differences at (or near) zero coordinates.
    """
    A, n = X.shape
    fi = np.flatnonzero(free)
    nf = fi.size
    h = FD_STEP
    cols = np.arange(nf)
    plus = np.repeat(X[:, None, :], nf, axis=1)
    plus[:, cols, fi] += h
    central = X[:, fi] >= h
    minus = np.repeat(X[:, None, :], nf, axis=1)
    minus[:, cols, fi] -= np.where(central, h, 0.0)
    vals = obj.raw(np.concatenate([plus.reshape(-1, n), minus.reshape(-1, n)]))
    fp = vals[: A * nf].reshape(A, nf)
    fm = vals[A * nf:].reshape(A, nf)
    fm = np.where(central, fm, fx[:, None])
    G = np.zeros((A, n))
    G[:, fi] = (fp - fm) / np.where(central, 2.0 * h, h)
    return G


def _ascend(obj, X0, free, cfg):
    """Batched spectral projected gradient ascent on a face of the simplex.

    Barzilai-Borwein step lengths, projection onto the face and a monotone
    Armijo backtrack per start. Returns final values and points; starts
    inside the exclusion ball or with an undefined ratio come back as
    ``-inf``.
    """
    X = project_rows_to_face(np.array(X0, dtype=float), free)
    S = X.shape[0]
    v = obj(X)
    alive = np.isfinite(v)
    lam = np.full(S, _INITIAL_STEP)
    G = np.zeros_like(X)
    if alive.any():
        G[alive] = _fd_gradient(obj, X[alive], v[alive], free)
    checkpoint = v.copy()
    for it in range(1, cfg.max_iters + 1):
        alive &= np.isfinite(G).all(axis=1)
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            break
        x, g, fx = X[idx], G[idx], v[idx]
        D = project_rows_to_face(x + lam[idx, None] * g, free) - x
        slope = np.einsum("ij,ij->i", g, D)
        done = ~(np.abs(D).max(axis=1) > _MIN_STEP) | ~(slope > 0)
        step = np.ones(idx.size)
        accepted = np.zeros(idx.size, dtype=bool)
        pending = ~done
        Y = x.copy()
        fy = fx.copy()
        for _ in range(_MAX_BACKTRACK):
            rows = np.flatnonzero(pending)
            if rows.size == 0:
                break
            trial = project_rows_to_face(x[rows] + step[rows, None] * D[rows], free)
            ft = obj(trial)
            ok = ft >= fx[rows] + _ARMIJO * step[rows] * slope[rows]
            good = rows[ok]
            Y[good], fy[good] = trial[ok], ft[ok]
            accepted[good] = True
            pending[good] = False
            step[rows[~ok]] *= 0.5
        stuck = ~accepted & ~done
        alive[idx[done | stuck]] = False
        a = np.flatnonzero(accepted)
        if a.size:
            rows = idx[a]
            Gn = _fd_gradient(obj, Y[a], fy[a], free)
            s_ = Y[a] - x[a]
            y_ = Gn - g[a]
            curv = -np.einsum("ij,ij->i", s_, y_)
            ss = np.einsum("ij,ij->i", s_, s_)
            with np.errstate(divide="ignore", invalid="ignore"):
                bb = np.where(curv > 0, ss / curv, _MAX_LAMBDA)
            lam[rows] = np.clip(bb, _MIN_LAMBDA, _MAX_LAMBDA)
            X[rows], v[rows], G[rows] = Y[a], fy[a], Gn
        if it % _STALL_WINDOW == 0:
            with np.errstate(invalid="ignore"):
                gain = v - checkpoint
                stalled = alive & ~(gain >= cfg.ascent_tol)
                # at its recent pace this start cannot reach the leader before
                # max_iters; only trusted on smooth objectives, where progress
                # does not come in jumps
                windows_left = (cfg.max_iters - it) / _STALL_WINDOW
                hopeless = alive & (v.max() - v > gain * windows_left) & obj.smooth
            alive[stalled | hopeless] = False
            _drop_duplicates(X, v, alive)
            checkpoint = v.copy()
    return v, X


def _drop_duplicates(X, v, alive, tol=1e-9):
    """Stop live starts that sit on top of a better (or equal, earlier) live start."""
    idx = np.flatnonzero(alive)
    if idx.size < 2:
        return
    order = idx[np.argsort(-v[idx], kind="stable")]
    kept = []
    for k in order:
        if any(np.abs(X[k] - X[j]).max() <= tol for j in kept):
            alive[k] = False
        else:
            kept.append(k)


def _best(values, points):
    """Maximum with first-index tie-breaking."""
    k = int(np.argmax(values))
    return float(values[k]), points[k]


def _chi2_operator(pair):
    mu = pair.mu.probs
    muK = pair.mu_k.probs
    B = np.sqrt(mu)[:, None] * pair.channel.matrix / np.sqrt(muK)[None, :]
    # remove the trivial singular pair (sqrt(mu), sqrt(muK)) with value 1
    return B - np.outer(np.sqrt(mu), np.sqrt(muK))


def _chi2_direction(pair):
    """Largest chi-square Rayleigh quotient and its maximising perturbation ``f``."""
    U, s, _ = np.linalg.svd(_chi2_operator(pair))
    f = U[:, 0] / np.sqrt(pair.mu.probs)
    f = f - pair.mu.probs @ f
    return float(s[0]) ** 2, f


def eta_chi2_spectral(pair):
    """Chi-square SDPI constant of ``(mu, K)``.

    Equals the squared second singular value of
    ``B[x, y] = sqrt(mu(x)) K(y|x) / sqrt(muK(y))``. The witness is
    ``mu (1 + delta f)`` along the top non-trivial singular direction; the
    chi-square ratio is constant along that ray.
    """
    pair = _as_pair(pair)
    value, f = _chi2_direction(pair)
    value = _unit(value)
    scale = np.abs(f).max()
    witness = None
    if scale > 0:
        witness = pair.mu.probs * (1.0 + 0.5 * f / scale)
        witness = witness / witness.sum()
    lo = max(value - SPECTRAL_TOL, 0.0)
    hi = min(value + SPECTRAL_TOL, 1.0)
    return EtaEstimate(value, witness, "spectral", (lo, hi))


def dobrushin_coefficient(k):
    """``max_{x, x'} TV(K(.|x), K(.|x'))``, the TV contraction of ``K`` over all inputs."""
    K = k.matrix
    return float(0.5 * np.abs(K[:, None, :] - K[None, :, :]).sum(axis=-1).max())


def eta_ratio(nu, pair, spec, exclusion_radius=1e-4):
    """``D(nuK || muK) / D(nu || mu)`` for one candidate ``nu``."""
    pair = _as_pair(pair)
    mu = pair.mu
    if nu.n != mu.n:
        raise ValidationError(f"nu has length {nu.n}, pair has {mu.n} inputs")
    if 0.5 * np.abs(nu.probs - mu.probs).sum() <= exclusion_radius:
        raise ValueError("nu lies within the exclusion radius of mu")
    den = divergence(nu, mu, spec)
    if not den.finite or not den.value > 0:
        raise ValueError(f"denominator D(nu || mu) = {den.value!r} is not finite and positive")
    num = divergence(pushforward(nu, pair.channel), pair.mu_k, spec)
    return num.value / den.value


def eta_estimate_grid(pair, spec, cfg=None):
    """Maximum ratio over the simplex lattice of resolution ``cfg.resolution(n)``.

    A lower bound only, so the bracket is ``(value, 1)``.
    """
    pair = _as_pair(pair)
    cfg = cfg or SearchConfig()
    n = pair.n
    if n > MAX_GRID_ALPHABET:
        raise ValueError(f"grid search supports n <= {MAX_GRID_ALPHABET}, got {n}")
    obj = _Objective(pair, spec, cfg.exclusion_radius)
    pts = lattice(n, cfg.resolution(n))
    vals = obj(pts)
    if not np.isfinite(vals).any():
        raise ValueError("no lattice point lies outside the exclusion radius")
    value, witness = _best(vals, pts)
    value = _unit(value)
    return EtaEstimate(value, witness, "grid", (value, 1.0))


def _spectral_starts(pair, radius):
    _, f = _chi2_direction(pair)
    mu = pair.mu.probs
    spread = float(mu @ np.abs(f))
    if not spread > 0:
        return np.empty((0, pair.n))
    out = []
    for target in (4.0 * radius, 1e-2):
        delta = 2.0 * target / spread
        for sign in (1.0, -1.0):
            nu = mu * (1.0 + sign * delta * f)
            if nu.min() >= 0:
                out.append(nu / nu.sum())
    return np.array(out).reshape(-1, pair.n)


def _starts(pair, cfg, rng):
    n = pair.n
    eye = np.eye(n)
    mids = [(eye[i] + eye[j]) / 2 for i in range(n) for j in range(i + 1, n)]
    draws = rng.dirichlet(np.ones(n), size=cfg.ascent_restarts)
    return np.vstack([eye, np.array(mids).reshape(-1, n), draws, _spectral_starts(pair, cfg.exclusion_radius)])


def eta_estimate_ascent(pair, spec, cfg=None):
    """Best ratio found by multi-start projected gradient ascent.

    Starts: every vertex, every edge midpoint, ``cfg.ascent_restarts``
    Dirichlet(1) draws, and points along the leading chi-square direction
    just outside the exclusion ball. Gradients are central finite
    differences with step ``1e-7``.
    """
    pair = _as_pair(pair)
    cfg = cfg or SearchConfig()
    rng = np.random.default_rng(cfg.seed)
    obj = _Objective(pair, spec, cfg.exclusion_radius)
    free = np.ones(pair.n, dtype=bool)
    vals, pts = _ascend(obj, _starts(pair, cfg, rng), free, cfg)
    if not np.isfinite(vals).any():
        return EtaEstimate(0.0, None, "ascent", (0.0, 1.0))
    value, witness = _best(vals, pts)
    value = _unit(value)
    return EtaEstimate(value, witness, "ascent", (value, 1.0))


def _pair_bound(mu, K):
    mu_k = mu @ K
    if np.any(mu_k <= 0):
        raise ValidationError("muK has a zero entry")
    best, arg = 0.0, None
    n = mu.size
    for i in range(n):
        for l in range(i + 1, n):
            d = K[i] - K[l]
            # mu_i mu_l / (mu_i + mu_l) written as 1 / (1/mu_i + 1/mu_l): for
            # a copy pair the numerator is then the same two terms, so w == 1
            w = float(np.sum(d * d / mu_k)) / (1.0 / mu[i] + 1.0 / mu[l])
            if arg is None or w > best:
                best, arg = w, (i, l)
    return best, arg


def thm2_lower_bound(mu, k):
    """Order-free lower bound on the Renyi SDPI constant from input pairs.

    ``max_{i != l} mu_i mu_l / (mu_i + mu_l) * sum_j (K_ij - K_lj)**2 / (muK)_j``.
    """
    if mu.n != k.n_inputs:
        raise ValidationError(f"distribution has length {mu.n}, channel has {k.n_inputs} inputs")
    value, _ = _pair_bound(mu.probs, k.matrix)
    return _unit(value)


def _face_search(obj, free_idx, n, cfg, rng):
    free = np.zeros(n, dtype=bool)
    free[list(free_idx)] = True
    d = len(free_idx)
    if d == 1:
        pt = free.astype(float)
        return float(obj(pt[None, :])[0]), pt
    sub = lattice(d, cfg.resolution(d))
    pts = np.zeros((sub.shape[0], n))
    pts[:, free] = sub
    vals = obj(pts)
    order = np.argsort(-vals, kind="stable")[:_TOP_FACE_STARTS]
    starts = np.zeros((cfg.ascent_restarts, n))
    starts[:, free] = rng.dirichlet(np.ones(d), size=cfg.ascent_restarts)
    av, ap = _ascend(obj, np.vstack([pts[order], starts]), free, cfg)
    allv = np.concatenate([vals, av])
    allp = np.vstack([pts, ap])
    return _best(allv, allp)


def eta2_boundary(pair, cfg=None):
    """Order-2 Renyi SDPI constant via the faces of the simplex.

    When the chi-square constant is below one, the supremum over ``nu`` is
    attained where some coordinate of ``nu`` vanishes; the constant is the
    larger of the best face ratio and the chi-square constant. Every proper
    face is searched by lattice and ascent (vertices directly). If the
    chi-square constant is already 1, both bounds pinch at 1.
    """
    pair = _as_pair(pair)
    cfg = cfg or SearchConfig()
    n = pair.n
    if n > MAX_GRID_ALPHABET:
        raise ValueError(f"face enumeration supports n <= {MAX_GRID_ALPHABET}, got {n}")
    chi = eta_chi2_spectral(pair)
    if chi.value >= 1.0 - CHI2_PINCH:
        return EtaEstimate(1.0, None, "closed_form", (1.0, 1.0))
    obj = _Objective(pair, DivergenceSpec.renyi(2.0), cfg.exclusion_radius)
    root = np.random.SeedSequence(cfg.seed)
    best, witness = -math.inf, None
    for (_, free_idx), seq in zip(faces(n), root.spawn(2 ** n)):
        val, pt = _face_search(obj, free_idx, n, cfg, np.random.default_rng(seq))
        if val > best:
            best, witness = val, pt
    if chi.value > best:
        best, witness = chi.value, chi.witness
    value = _unit(best)
    return EtaEstimate(value, witness, "boundary", (value, 1.0))


def eta2_binary_closed_form(p, eps, theta):
    """Order-2 Renyi constant of ``mu = (p, 1 - p)`` through ``[[1-eps, eps], [theta, 1-theta]]``.

    ``p`` is the mass on symbol 0. The supremum sits at a vertex, giving
    ``max(log_{1/p}((1-eps)^2/q0 + eps^2/q1), log_{1/(1-p)}(theta^2/q0 + (1-theta)^2/q1))``
    with ``q0 = p + theta - eps p - p theta`` the output mass on 0.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p!r}")
    if not (0.0 <= eps <= 1.0 and 0.0 <= theta <= 1.0):
        raise ValueError("eps and theta must lie in [0, 1]")
    q0 = p + theta - eps * p - p * theta
    q1 = 1.0 - q0
    if not (q0 > 0.0 and q1 > 0.0):
        raise ValueError("output distribution has a zero entry")
    from_zero = math.log((1.0 - eps) ** 2 / q0 + eps ** 2 / q1) / math.log(1.0 / p)
    from_one = math.log(theta ** 2 / q0 + (1.0 - theta) ** 2 / q1) / math.log(1.0 / (1.0 - p))
    return max(from_zero, from_one)


def eta2_bsc_sup(eps):
    """``sup_mu`` of the order-2 Renyi constant of BSC(eps): ``log2(2 (1 - 2 eps (1 - eps)))``."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must lie in [0, 1], got {eps!r}")
    return math.log2(2.0 * (1.0 - 2.0 * eps * (1.0 - eps)))


def eta2_binary_sup(eps, theta, points=2001):
    """Outer grid over input laws ``(p, 1 - p)`` of the binary closed form."""
    best = 0.0
    for p in np.linspace(0.0, 1.0, points)[1:-1]:
        try:
            best = max(best, eta2_binary_closed_form(float(p), eps, theta))
        except ValueError:
            continue
    return best


def _log_moment(weights, x, alpha):
    """``log sum_i w_i (1 + x_i)**alpha`` for small zero-mean ``x``, without cancellation."""
    with np.errstate(divide="ignore"):
        curved = np.expm1(alpha * np.log1p(x)) - alpha * x
    return math.log1p(float(weights @ curved) + alpha * float(weights @ x))


def thm1_directional_limit(pair, nu, alpha, eps_schedule=None):
    """Ratios along ``nu_e = mu + e (nu - mu)`` for a decreasing schedule of ``e``.

    They tend to the chi-square Rayleigh quotient
    ``E_muK[(K*f)^2] / E_mu[f^2]`` of ``f = dnu/dmu - 1`` as ``e -> 0``.
    """
    pair = _as_pair(pair)
    if not alpha > 1.0:
        raise ValueError(f"alpha must exceed 1, got {alpha!r}")
    if eps_schedule is None:
        eps_schedule = [10.0 ** -k for k in range(1, 7)]
    eps_schedule = [float(e) for e in eps_schedule]
    if not eps_schedule or any(not 0.0 < e <= 1.0 for e in eps_schedule):
        raise ValueError("schedule entries must lie in (0, 1]")
    if any(b >= a for a, b in zip(eps_schedule, eps_schedule[1:])):
        raise ValueError("schedule must be strictly decreasing")
    f = perturbation_from(nu, pair.mu)
    if np.abs(f.values).max() <= 1e-15:
        raise ValueError("nu equals mu")
    g = apply_adjoint_to_perturbation(pair, f)
    mu, muK = pair.mu.probs, pair.mu_k.probs
    return [_log_moment(muK, e * g, alpha) / _log_moment(mu, e * f.values, alpha) for e in eps_schedule]


def rayleigh_quotient(pair, nu):
    """``E_muK[(K*f)^2] / E_mu[f^2]`` for ``f = dnu/dmu - 1``."""
    f = perturbation_from(nu, pair.mu)
    den = float(pair.mu.probs @ f.values ** 2)
    if not den > 0:
        raise ValueError("nu equals mu")
    g = apply_adjoint_to_perturbation(pair, f)
    return float(pair.mu_k.probs @ g ** 2) / den


def estimate(mu, channel, spec, method="auto", cfg=None):
    """Front door used by the CLI.

    ``auto`` picks spectral for chi-square, Dobrushin for TV without an input
    law, the face search for order-2 Renyi with ``n <= 6`` and ascent (plus
    grid when ``n <= 6``) otherwise. For Renyi and KL the pair-wise bound and
    the chi-square constant are folded into the lower edge of the bracket.
    """
    cfg = cfg or SearchConfig()
    method = method.replace("-", "_")
    if mu is None:
        if spec.kind == "tv" and method in ("auto", "dobrushin"):
            value = dobrushin_coefficient(channel)
            return EtaEstimate(value, None, "dobrushin", (value, value))
        raise ValidationError("an input distribution mu is required for this method")
    if method == "dobrushin":
        value = dobrushin_coefficient(channel)
        return EtaEstimate(value, None, "dobrushin", (0.0, value))
    if method == "thm2":
        value = thm2_lower_bound(mu, channel)
        return EtaEstimate(value, None, "thm2_bound", (value, 1.0))
    if method == "closed_form":
        if spec.kind != "renyi" or spec.alpha != 2.0 or channel.shape != (2, 2):
            raise ValidationError("closed form needs renyi:2 and a 2x2 channel")
        K = channel.matrix
        value = _unit(eta2_binary_closed_form(float(mu.probs[0]), float(K[0, 1]), float(K[1, 0])))
        return EtaEstimate(value, None, "closed_form", (value, value))
    pair = AdmissiblePair(mu, channel)
    renyi2 = spec.kind == "renyi" and spec.alpha == 2.0
    if method == "spectral":
        return eta_chi2_spectral(pair)
    if method == "grid":
        return eta_estimate_grid(pair, spec, cfg)
    if method == "ascent":
        return eta_estimate_ascent(pair, spec, cfg)
    if method == "boundary":
        if not renyi2:
            raise ValidationError("the face search is only valid for renyi:2")
        return eta2_boundary(pair, cfg)
    if method != "auto":
        raise ValidationError(f"unknown method {method!r}")

    if spec.kind == "chi2":
        return eta_chi2_spectral(pair)
    if renyi2 and pair.n <= MAX_GRID_ALPHABET:
        est = eta2_boundary(pair, cfg)
    else:
        est = eta_estimate_ascent(pair, spec, cfg)
        if pair.n <= MAX_GRID_ALPHABET:
            grid = eta_estimate_grid(pair, spec, cfg)
            if grid.value > est.value:
                est = EtaEstimate(grid.value, grid.witness, "ascent", (grid.value, 1.0))
    if spec.kind not in ("renyi", "kl"):
        return est
    lower = max(est.bracket[0], thm2_lower_bound(mu, channel), eta_chi2_spectral(pair).value)
    if lower >= 1.0 - 1e-12:
        # DPI caps every constant at 1
        return EtaEstimate(1.0, est.witness, est.method, (1.0, 1.0))
    value = max(est.value, lower)
    return EtaEstimate(value, est.witness, est.method, (lower, est.bracket[1]))


__all__ = [
    "SearchConfig",
    "EtaEstimate",
    "eta_chi2_spectral",
    "dobrushin_coefficient",
    "eta_ratio",
    "eta_estimate_grid",
    "eta_estimate_ascent",
    "thm2_lower_bound",
    "eta2_boundary",
    "eta2_binary_closed_form",
    "eta2_bsc_sup",
    "eta2_binary_sup",
    "thm1_directional_limit",
    "rayleigh_quotient",
    "estimate",
    "Channel",
    "Distribution",
]
