"""Compare the compiled and numpy GF(2) kernel backends.

Micro-benchmarks run both kernel modules side by side on the same random
packed rows.  The end-to-end build is timed in fresh interpreters, since the
backend is chosen once at import (``GAMMA4_PURE_PYTHON=1`` forces numpy).

    python3 benchmarks/bench_kernels.py --n 6 7 --repeat 3
"""

from __future__ import annotations

import argparse
import importlib
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from gamma4 import _gf2_py

try:
    _gf2 = importlib.import_module("gamma4._gf2")
except ImportError:
    _gf2 = None


def echelon_fixture(rng: np.random.Generator, nrows: int, nwords: int):
    """A reduced echelon row set with pivots at random distinct columns."""
    dim = 64 * nwords
    cols = np.sort(rng.choice(dim, nrows, replace=False))
    rows = np.zeros((nrows, nwords), np.uint64)
    row_of_col = np.full(dim, -1, np.int64)
    pivmask = np.zeros(nwords, np.uint64)
    free = np.setdiff1d(np.arange(dim), cols)
    for i, c in enumerate(cols):
        bits = np.zeros(dim, np.uint8)
        bits[c] = 1
        bits[rng.choice(free, 8)] = 1
        rows[i] = np.packbits(bits, bitorder="little").view("<u8")
        row_of_col[c] = i
        pivmask[c >> 6] |= np.uint64(1) << np.uint64(c & 63)
    return rows, row_of_col, pivmask


def micro(impl, rows, row_of_col, pivmask, probes, number: int) -> dict[str, float]:
    def reduce_all():
        for v in probes:
            impl.reduce_inplace(v.copy(), rows, row_of_col, pivmask)

    def lowest_all():
        for v in probes:
            impl.lowest_bit(v)

    def eliminate():
        work = rows.copy()
        impl.eliminate_column(work, len(work), int(impl.lowest_bit(rows[0])), rows[0])

    def rank():
        impl.rank_inplace(rows[:256].copy(), 64 * rows.shape[1])

    out = {}
    for name, fn in (("reduce", reduce_all), ("lowest_bit", lowest_all), ("eliminate", eliminate), ("rank", rank)):
        out[name] = min(timeit.repeat(fn, number=number, repeat=3)) / number
    return out


_BUILD = "import json,time;t=time.perf_counter();from gamma4.engine import build_model;from gamma4 import kernels;" \
    "m=build_model({n});print(json.dumps([kernels.BACKEND,time.perf_counter()-t,m.q,m.p]))"


def build_time(n: int, pure: bool) -> tuple[str, float, int, int]:
    env = dict(os.environ)
    env.pop("GAMMA4_PURE_PYTHON", None)
    if pure:
        env["GAMMA4_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", _BUILD.format(n=n)], env=env, capture_output=True, text=True, check=True)
    backend, seconds, q, p = json.loads(out.stdout)
    return backend, seconds, q, p


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="*", default=[6, 7], help="build sizes to time")
    parser.add_argument("--rows", type=int, default=2000)
    parser.add_argument("--words", type=int, default=86, help="packed row width (86 words ~ n=7)")
    parser.add_argument("--number", type=int, default=5)
    parser.add_argument("--repeat", type=int, default=1, help="build repetitions per backend")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    rows, row_of_col, pivmask = echelon_fixture(rng, args.rows, args.words)
    probes = [rng.integers(0, 2**63, args.words, dtype=np.uint64) for _ in range(200)]

    impls = [("python", _gf2_py)] + ([("cython", _gf2)] if _gf2 is not None else [])
    results = {name: micro(impl, rows, row_of_col, pivmask, probes, args.number) for name, impl in impls}
    print(f"kernels ({args.rows} rows x {args.words} words, seconds per call batch)")
    print(f"{'kernel':12s}" + "".join(f"{name:>14s}" for name, _ in impls) + ("   speedup" if len(impls) > 1 else ""))
    for kernel in results["python"]:
        cells = "".join(f"{results[name][kernel]:14.6f}" for name, _ in impls)
        ratio = f"{results['python'][kernel] / results['cython'][kernel]:9.1f}x" if len(impls) > 1 else ""
        print(f"{kernel:12s}{cells}   {ratio}")

    print("\nbuild_model (fresh interpreter, best of repeats)")
    for n in args.n:
        line = [f"n={n}"]
        for pure in (False, True):
            best = min((build_time(n, pure) for _ in range(args.repeat)), key=lambda r: r[1])
            line.append(f"{best[0]}: {best[1]:.2f}s (q={best[2]}, p={best[3]})")
        print("  ".join(line))
    if _gf2 is None:
        print("note: compiled extension not built, both build timings use the numpy kernels")


if __name__ == "__main__":
    main()
