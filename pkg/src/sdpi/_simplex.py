"""Simplex geometry used by the estimators: projection, lattices, faces."""
import itertools
from math import comb

import numpy as np

MAX_LATTICE_POINTS = 5_000_000


def project_rows(V):
    """Euclidean projection of each row of ``V`` onto the probability simplex.

    Sort-based algorithm (Held, Wolfe and Crowder; Duchi et al.).
    """
    V = np.atleast_2d(np.asarray(V, dtype=float))
    n = V.shape[1]
    U = -np.sort(-V, axis=1)
    css = np.cumsum(U, axis=1) - 1.0
    idx = np.arange(1, n + 1)
    cond = U - css / idx > 0
    rho = n - 1 - np.argmax(cond[:, ::-1], axis=1)
    theta = css[np.arange(V.shape[0]), rho] / (rho + 1)
    return np.maximum(V - theta[:, None], 0.0)


def project_rows_to_face(V, free):
    """Project onto the face of the simplex where coordinates outside ``free`` vanish."""
    out = np.zeros_like(V, dtype=float)
    out[:, free] = project_rows(V[:, free])
    return out


def lattice(n, r):
    """All points ``c / r`` with nonnegative integer ``c`` summing to ``r``.

    Stars and bars over ``combinations`` of bar positions; ordering is
    deterministic.
    """
    count = comb(n + r - 1, n - 1)
    if count > MAX_LATTICE_POINTS:
        raise ValueError(f"lattice with n={n}, r={r} has {count} points")
    bars = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(n + r - 1), n - 1)),
        dtype=np.int64,
        count=count * (n - 1),
    ).reshape(count, n - 1)
    edges = np.hstack([np.full((count, 1), -1), bars, np.full((count, 1), n + r - 1)])
    counts = np.diff(edges, axis=1) - 1
    return counts / r


def faces(n):
    """Zero patterns of proper faces: ``(zero_set, free_set)`` in lexicographic order."""
    for size in range(1, n):
        for zero in itertools.combinations(range(n), size):
            free = tuple(i for i in range(n) if i not in zero)
            yield zero, free
