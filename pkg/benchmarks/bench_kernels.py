"""Compare the compiled and pure-Python trajectory kernels.

    python3 benchmarks/bench_kernels.py [--steps 10000] [--repeat 5]

Times the canonical free rigid body run (I = diag(1, 2, 3), mu0 = (1,1,1)/sqrt(3),
t = 1e-2) for both integrators and both tau maps, and checks the backends agree.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from geomint import kernels
from geomint.integrators import EulerPoincareState, InertiaOperator, IntegratorConfig, LiePoissonState
from geomint.retraction import DiscretizationMap, TauKind, make_tau


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--step", type=float, default=1e-2)
    args = p.parse_args(argv)

    backends = ["python"] + (["cython"] if kernels._compiled is not None else [])
    if len(backends) == 1:
        print("compiled kernels not built; timing the Python backend only")
    inertia = InertiaOperator.diagonal([1.0, 2.0, 3.0])
    mu0 = np.ones(3) / np.sqrt(3)
    cfg = IntegratorConfig(args.step)
    cases = {
        "lie_poisson": lambda d, b: kernels.run_lie_poisson(inertia, cfg, d, LiePoissonState(np.eye(3), mu0), args.steps, b),
        "euler_poincare": lambda d, b: kernels.run_euler_poincare(
            inertia, cfg, d, EulerPoincareState(np.eye(3), inertia.solve(mu0)), args.steps, b
        ),
    }

    print(f"{'integrator':<16}{'tau':<8}" + "".join(f"{b + ' [s]':>14}" for b in backends) + f"{'speedup':>10}{'max diff':>12}")
    for name, fn in cases.items():
        for kind in TauKind:
            d = DiscretizationMap(make_tau(kind))
            best = {b: min(timeit.repeat(lambda: fn(d, b), number=1, repeat=args.repeat)) for b in backends}
            outs = [fn(d, b) for b in backends]
            diff = max(float(np.max(np.abs(x - y))) for x, y in zip(outs[0], outs[-1]))
            speed = best["python"] / best["cython"] if "cython" in best else float("nan")
            row = "".join(f"{best[b]:14.4f}" for b in backends)
            print(f"{name:<16}{kind.value:<8}{row}{speed:10.1f}{diff:12.1e}")


if __name__ == "__main__":
    main()
