"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--n-points 4000] [--steps 10000]
"""
import argparse
import timeit

import numpy as np

from coriolis_states.kernels import BACKENDS


def _cases(n_points, steps):
    xi = np.linspace(-12.0, 12.0, n_points)
    h = xi[1] - xi[0]
    diag = 1.0 / h**2 + 0.5 * xi**2
    off = np.full(n_points - 1, -0.5 / h**2)
    off_sq = off**2
    hi = float(np.max(diag) + 1.0 / h**2)
    rhs = np.random.default_rng(0).uniform(-1, 1, n_points)
    rng = np.random.default_rng(1)
    rotvecs = np.ascontiguousarray(rng.normal(size=(steps, 3)) * 1e-3)
    r0 = np.array([1.0, 0.0, 0.0])
    return {
        f"bisect 6 levels, N={n_points}": lambda k: [
            k.bisect_eigenvalue(diag, off_sq, j, 0.0, hi, 1e-12, 1e-300) for j in range(6)
        ],
        f"shifted solve, N={n_points}": lambda k: k.shifted_solve(diag, off, 0.5, rhs, 1e-300),
        f"compose rodrigues, {steps} steps": lambda k: k.compose_rodrigues(rotvecs, r0),
        f"rk4, {steps} steps": lambda k: k.rk4_cross(rotvecs, rotvecs, rotvecs, r0, 1e-3),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-points", type=int, default=4000)
    parser.add_argument("--steps", type=int, default=10000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    names = sorted(BACKENDS)
    print(f"{'case':36s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in _cases(args.n_points, args.steps).items():
        times = {}
        for name in names:
            kern = BACKENDS[name]
            times[name] = min(timeit.repeat(lambda: fn(kern), number=1, repeat=args.repeat))
        line = f"{label:36s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if "cython" in times:
            line += f"{times['python'] / times['cython']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
