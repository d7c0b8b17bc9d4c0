#!/usr/bin/env python3
"""Time the hot kernels on both backends.

Runs itself twice in subprocesses, once with QUASIKIT_NUMBA=0 (pure
NumPy/Python fallbacks) and once with QUASIKIT_NUMBA=1 (jitted), then
prints the comparison. JIT compilation happens during warmup and is not
timed.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _workloads():
    rng = np.random.default_rng(0)
    order = 256
    base = (np.arange(order)[:, None] + np.arange(order)[None, :]) % order
    perm = rng.permutation(order)
    table = perm[base].astype(np.int64)
    ldiv = np.argsort(table, axis=1).astype(np.int64)
    msg = rng.integers(0, order, size=1_000_000)
    bits = rng.integers(0, 2, size=1 << 22).astype(np.uint8)
    grid7 = -np.ones(49, dtype=np.int64)
    n_codes = 10**6
    shuffled = rng.permutation(n_codes)
    ops_flat = np.stack([(shuffled // 10**i) % 10 for i in range(6)]).astype(np.int64)
    return table, ldiv, msg, bits, grid7, ops_flat


def run_worker(repeats: int) -> None:
    from quasikit import _kernels

    table, ldiv, msg, bits, grid7, ops_flat = _workloads()
    _kernels.warmup()
    cases = {
        "stream_encrypt (1e6 symbols, order 256)": lambda: _kernels.stream_encrypt(
            table, 0, msg
        ),
        "stream_decrypt (1e6 symbols, order 256)": lambda: _kernels.stream_decrypt(
            ldiv, 0, msg
        ),
        "moebius (2^22 bits)": lambda: _kernels.moebius(bits),
        "count_completions (7x7 empty, limit 2e4)": lambda: _kernels.count_completions(
            grid7, 7, 20_000
        ),
        "codes_bijective (10^6 tuples)": lambda: _kernels.codes_bijective(ops_flat, 10),
    }
    results = {}
    for name, fn in cases.items():
        fn()  # one untimed call per case
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn()
            times.append(time.perf_counter() - t0)
        results[name] = min(times)
    print(json.dumps({"numba": _kernels.NUMBA_ENABLED, "results": results}))


def run_comparison(repeats: int) -> None:
    rows = {}
    for label, flag in (("pure", "0"), ("numba", "1")):
        env = dict(os.environ, QUASIKIT_NUMBA=flag)
        proc = subprocess.run(
            [sys.executable, __file__, "--worker", "--repeats", str(repeats)],
            capture_output=True,
            text=True,
            env=env,
        )
        if proc.returncode != 0:
            sys.stderr.write(proc.stderr)
            raise SystemExit(f"{label} worker failed")
        payload = json.loads(proc.stdout.strip().splitlines()[-1])
        assert payload["numba"] == (flag == "1")
        rows[label] = payload["results"]
    width = max(len(k) for k in rows["pure"])
    print(f"{'kernel':<{width}}  {'pure':>10}  {'numba':>10}  {'speedup':>8}")
    for name in rows["pure"]:
        pure = rows["pure"][name]
        jit = rows["numba"][name]
        print(f"{name:<{width}}  {pure:>9.4f}s  {jit:>9.4f}s  {pure / jit:>7.1f}x")


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--worker", action="store_true")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    if args.worker:
        run_worker(args.repeats)
    else:
        run_comparison(args.repeats)


if __name__ == "__main__":
    main()
