"""Compare the compiled GF(2) kernels against the pure-numpy fallback.

Run from the repository root:

    python benchmarks/bench_kernels.py

The same inputs are fed to both backends; outputs are checked equal before
timing.  The end-to-end rows time full decode trials through the public
pipeline under each backend (the backend is chosen at import, so the
pipeline rows spawn a subprocess per backend).
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import time

import numpy as np

from colorsurf._kernels import _pure

try:
    from colorsurf._kernels import _core
except ImportError:
    _core = None


def timeit(fn, repeats=5):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench_kernel_ops():
    rng = np.random.default_rng(99)
    rows = []
    for size in (256, 1024, 2048):
        dense = rng.integers(0, 2, size=(size, size)).astype(np.uint8)
        packed = _pure.pack_rows(dense)
        vec = _pure.pack_vec(rng.integers(0, 2, size=size).astype(np.uint8))
        other = _pure.pack_rows(rng.integers(0, 2, size=(size, size)).astype(np.uint8))

        cases = {
            f"row_reduce {size}x{size}": lambda impl: impl.row_reduce(packed.copy(), size),
            f"matmul {size}x{size}": lambda impl: impl.matmul(packed, size, other),
            f"mat_vec_parity {size}x{size} x1000": lambda impl: [
                impl.mat_vec_parity(packed, vec) for _ in range(1000)
            ],
        }
        for name, fn in cases.items():
            t_pure = timeit(lambda: fn(_pure), repeats=3)
            if _core is not None:
                t_core = timeit(lambda: fn(_core), repeats=3)
                rows.append((name, t_pure, t_core, t_pure / t_core))
            else:
                rows.append((name, t_pure, None, None))

    table = rng.integers(0, 1 << 36, size=1 << 14, dtype=np.uint64)
    vs = rng.integers(0, 1 << 36, size=64, dtype=np.uint64)

    def coset(impl):
        impl.coset_min_weight_many(table, vs, 18)

    t_pure = timeit(lambda: coset(_pure), repeats=5)
    if _core is not None:
        t_core = timeit(lambda: coset(_core), repeats=5)
        rows.append(("coset_min_weight_many 64x16384", t_pure, t_core, t_pure / t_core))
    else:
        rows.append(("coset_min_weight_many 64x16384", t_pure, None, None))
    return rows


_PIPELINE_SNIPPET = r"""
import json, time
from colorsurf import Color, build_artifact, build_hexagonal_torus
from colorsurf.decode import ColorDecoder
from colorsurf.simulate import sample_error, trial_rng
import colorsurf

g = build_hexagonal_torus(6, 6)
t0 = time.perf_counter()
art = build_artifact(g, Color.R)
build_s = time.perf_counter() - t0
dec = ColorDecoder(art)
space = art.color_code.space
trials = 3000
t0 = time.perf_counter()
fails = 0
for t in range(trials):
    out = dec.decode_error(sample_error(space, 0.01, trial_rng(1, t)))
    fails += not out.success
decode_s = time.perf_counter() - t0
print(json.dumps({
    "backend": colorsurf.KERNEL_BACKEND,
    "build_s": build_s,
    "decode_us_per_trial": decode_s / trials * 1e6,
}))
"""


def bench_pipeline(backend: str):
    env = dict(os.environ, COLORSURF_KERNELS=backend)
    out = subprocess.run(
        [sys.executable, "-c", _PIPELINE_SNIPPET],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    print(f"kernel micro-benchmarks (pure vs compiled){'':>20}")
    print(f"{'operation':<38} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for name, t_pure, t_core, speedup in bench_kernel_ops():
        if t_core is None:
            print(f"{name:<38} {t_pure * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>8}")
        else:
            print(
                f"{name:<38} {t_pure * 1e3:>8.2f}ms {t_core * 1e3:>8.2f}ms "
                f"{speedup:>7.1f}x"
            )

    print()
    print("end-to-end decode pipeline, hexagonal 6x6 torus at p = 0.01")
    for backend in ("pure", "compiled") if _core is not None else ("pure",):
        info = bench_pipeline(backend)
        print(
            f"  {info['backend']:<9} build {info['build_s'] * 1e3:7.1f}ms   "
            f"decode {info['decode_us_per_trial']:7.0f}us/trial"
        )


if __name__ == "__main__":
    main()
