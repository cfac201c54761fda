"""Compare the numba and numpy ratio kernels on batches of candidate inputs.

Usage::

    python3 benchmarks/bench_kernels.py --rows 20000 --n 4 --m 4 --repeat 5

Prints the best wall time for each path and checks the two agree. With
``--end-to-end`` it also times a full ascent estimate in two subprocesses, one
with ``SDPI_DISABLE_NUMBA=1``.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from sdpi import _kernels
from sdpi._accel import HAVE_NUMBA

KINDS = {"renyi2": (_kernels.RENYI, 2.0), "kl": (_kernels.KL, 2.0),
         "chi2": (_kernels.CHI2, 2.0), "tv": (_kernels.TV, 2.0)}


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


_E2E = """
import time, numpy as np
from sdpi import AdmissiblePair, Channel, Distribution, DivergenceSpec, SearchConfig, eta_estimate_ascent
from sdpi._accel import USE_NUMBA
rng = np.random.default_rng(1)
pair = AdmissiblePair(Distribution(rng.dirichlet(np.ones(4))), Channel(rng.dirichlet(np.ones(4), size=4)))
eta_estimate_ascent(pair, DivergenceSpec.renyi(2.0), SearchConfig(ascent_restarts=2))
t0 = time.perf_counter()
v = eta_estimate_ascent(pair, DivergenceSpec.renyi(2.0), SearchConfig()).value
print(USE_NUMBA, time.perf_counter() - t0, repr(v))
"""


def end_to_end():
    for disable in ("0", "1"):
        env = dict(os.environ, SDPI_DISABLE_NUMBA=disable)
        out = subprocess.run([sys.executable, "-c", _E2E], env=env, capture_output=True, text=True, check=True)
        numba_on, secs, value = out.stdout.split()
        label = "numba" if numba_on == "True" else "numpy"
        print(f"ascent 4x4 renyi2 [{label}]: {float(secs):.3f} s  value={value}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=20000)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--m", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--end-to-end", action="store_true", help="also time a full ascent under both paths")
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(args.seed)
    mu = rng.dirichlet(np.ones(args.n))
    K = rng.dirichlet(np.ones(args.m), size=args.n)
    muK = mu @ K
    P = rng.dirichlet(np.ones(args.n), size=args.rows)

    print(f"rows={args.rows} n={args.n} m={args.m} repeat={args.repeat}")
    print(f"{'kind':8s} {'numba [ms]':>12s} {'numpy [ms]':>12s} {'speedup':>8s} {'max diff':>10s}")
    for name, (kind, alpha) in KINDS.items():
        fast = _kernels.ratio_rows_numba(P, mu, K, muK, kind, alpha)  # warm-up compiles
        slow = _kernels.ratio_rows_numpy(P, mu, K, muK, kind, alpha)
        diff = float(np.nanmax(np.abs(fast - slow)))
        t_fast = best_time(lambda: _kernels.ratio_rows_numba(P, mu, K, muK, kind, alpha), args.repeat)
        t_slow = best_time(lambda: _kernels.ratio_rows_numpy(P, mu, K, muK, kind, alpha), args.repeat)
        print(f"{name:8s} {1e3 * t_fast:12.3f} {1e3 * t_slow:12.3f} {t_slow / t_fast:8.2f} {diff:10.2e}")
    if args.end_to_end:
        end_to_end()


if __name__ == "__main__":
    main()
