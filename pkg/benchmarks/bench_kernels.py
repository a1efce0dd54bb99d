"""Benchmark the compiled kernels against the NumPy fallback.

Times the three hot kernels at training-relevant sizes plus one full
training step (forward + adjoint gradient) per backend.  Invoke as::

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from eqgc import _kernels_py
from eqgc.linalg import random_unitary

try:
    from eqgc import _kernels

    BACKENDS = [("compiled", _kernels), ("numpy", _kernels_py)]
except ImportError:
    BACKENDS = [("numpy", _kernels_py)]


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(repeat: int) -> list[tuple[str, str, float, float]]:
    rng = np.random.default_rng(0)
    rows = []
    for nq in (8, 10):
        amps = rng.normal(size=2**nq) + 1j * rng.normal(size=2**nq)
        amps = np.ascontiguousarray(amps / np.linalg.norm(amps))
        u2 = np.ascontiguousarray(random_unitary(rng, 2))
        u16 = np.ascontiguousarray(random_unitary(rng, 16))
        d = np.ascontiguousarray(np.exp(1j * rng.normal(size=4)))
        pos4 = np.array([nq - 1, nq - 3, 2, 0], dtype=np.int64)
        cases = {
            f"apply_1q (n={nq}, 100x)": lambda k, a=amps: [k.apply_1q(a, u2, p % nq) for p in range(100)],
            f"apply_diag2 (n={nq}, 100x)": lambda k, a=amps: [
                k.apply_diag2(a, d, (p + 1) % nq, p % nq) for p in range(100)
            ],
            f"apply_kq 4-wire (n={nq}, 20x)": lambda k, a=amps: [k.apply_kq(a, u16, pos4) for _ in range(20)],
        }
        for name, fn in cases.items():
            times = {}
            for bname, mod in BACKENDS:
                work = amps.copy()
                times[bname] = _time(lambda m=mod: fn(m, work), repeat)
            rows.append((name, *(times.get(b, float("nan")) for b, _ in BACKENDS)))
    return rows


def bench_training_step() -> list[tuple[str, float]]:
    import os
    import subprocess
    import sys

    # run each backend in a fresh interpreter so the import-time selection applies
    code = (
        "import time, numpy as np\n"
        "from eqgc.graphs import cycles_dataset\n"
        "from eqgc.training import ModelParams, _loss_and_gradient\n"
        "train, _ = cycles_dataset()\n"
        "rng = np.random.default_rng(0)\n"
        "p = ModelParams(rng.uniform(-np.pi, np.pi, (14, 6)), (4.0, -2.0))\n"
        "_loss_and_gradient(p, train)\n"
        "t0 = time.perf_counter()\n"
        "for _ in range(3):\n"
        "    _loss_and_gradient(p, train)\n"
        "print((time.perf_counter() - t0) / 3)\n"
    )
    rows = []
    for bname, _ in BACKENDS:
        env = dict(os.environ, EQGC_KERNELS="python" if bname == "numpy" else "compiled")
        out = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
        )
        rows.append((bname, float(out.stdout.strip().splitlines()[-1])))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    names = [b for b, _ in BACKENDS]
    print(f"{'kernel':38s} " + " ".join(f"{n:>12s}" for n in names) + "   speedup")
    for row in bench_kernels(args.repeat):
        name, *times = row
        speed = times[-1] / times[0] if len(times) == 2 and times[0] > 0 else float("nan")
        cells = " ".join(f"{t * 1e3:10.3f}ms" for t in times)
        print(f"{name:38s} {cells}   {speed:6.1f}x")

    print()
    print("full training step (depth 14, 11 graphs, forward + adjoint gradient):")
    for bname, t in bench_training_step():
        print(f"  {bname:10s} {t * 1e3:10.1f} ms")


if __name__ == "__main__":
    main()
