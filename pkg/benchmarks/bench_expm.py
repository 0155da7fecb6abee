#!/usr/bin/env python3
"""Time the compiled matrix-exponential kernel against the numpy fallback.

Matrices mimic the workload the Fock oracle generates: anti-Hermitian
squeeze/displacement generators at truncation dimensions from small to the
oracle cap. scipy.linalg.expm is timed alongside as a reference point.

Run from the repository root:

    python3 benchmarks/bench_expm.py
    python3 benchmarks/bench_expm.py --dims 64 256 512 --repeats 5
"""

import argparse
import math
import time

import numpy as np
import scipy.linalg

from sqthermal import matexp
from sqthermal import _expm_py
from sqthermal.fock import build_fock_space


def squeeze_generator(dim: int, r: float = 0.8, phi: float = 0.4) -> np.ndarray:
    fs = build_fock_space(dim)
    half = 0.5 * r * complex(math.cos(phi), math.sin(phi))
    a2 = fs.annihilate @ fs.annihilate
    return half.conjugate() * a2 - half * a2.conj().T


def _time(fn, arg, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(arg)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+",
                    default=[32, 64, 128, 256, 512])
    ap.add_argument("--repeats", type=int, default=3,
                    help="keep the best of this many runs")
    args = ap.parse_args()

    backends = [("python", _expm_py.expm)]
    if matexp.available_backends().get("cython"):
        from sqthermal import _expm_cy
        backends.insert(0, ("cython", _expm_cy.expm))
    else:
        print("note: compiled kernel unavailable, timing the fallback only")
    backends.append(("scipy", scipy.linalg.expm))

    print(f"active backend: {matexp.backend_name()}")
    header = ["dim"] + [name for name, _ in backends] + ["max |cy-py|"]
    widths = [6] + [12] * (len(header) - 1)
    print("".join(h.rjust(w) for h, w in zip(header, widths)))

    for dim in args.dims:
        g = squeeze_generator(dim)
        row = [f"{dim}".rjust(widths[0])]
        results = {}
        for name, fn in backends:
            dt = _time(fn, g, args.repeats)
            results[name] = fn(g)
            row.append(f"{dt * 1e3:9.2f} ms".rjust(widths[1]))
        if "cython" in results:
            dev = np.abs(results["cython"] - results["python"]).max()
            row.append(f"{dev:.1e}".rjust(widths[1]))
        else:
            row.append("n/a".rjust(widths[1]))
        print("".join(row))


if __name__ == "__main__":
    main()
