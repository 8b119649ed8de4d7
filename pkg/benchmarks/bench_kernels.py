"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json]

Compilation happens once before timing (cache=True keeps it across runs).
Each row reports the best wall time over ``--repeat`` runs and checks that
both paths return the same answer.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from andcohom import _kernels


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(rng: np.random.Generator):
    for m in (40, 120, 240):
        a = rng.integers(0, 7, size=(m, m))
        yield f"rank_mod_p {m}x{m} p=7", lambda nb, a=a: _kernels.rank_mod_p(a, 7, use_numba=nb)
    for n in (8, 10, 12):
        # a genuine measure, so the whole table is scanned
        bits = np.array([bin(k).count("1") for k in range(1 << n)], dtype=np.int64)
        h = n - bits
        yield f"subadditive_violation |S|={n}", lambda nb, h=h: _kernels.subadditive_violation(h, use_numba=nb)
    for n in (8, 10, 12):
        # members: functions that are 1 at point 0; closed under AND
        member = np.array([(k >> (n - 1)) & 1 == 1 for k in range(1 << n)])
        yield f"conj_closed_violation |S|={n}", lambda nb, m=member: _kernels.conj_closed_violation(m, use_numba=nb)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if not _kernels.HAS_NUMBA:
        print("numba unavailable (or ANDCOHOM_DISABLE_NUMBA set); nothing to compare", file=sys.stderr)
        return 1
    rows = []
    for name, fn in cases(np.random.default_rng(0)):
        fast, slow = fn(True), fn(False)  # warm-up and parity
        if fast != slow:
            print(f"MISMATCH {name}: numba {fast} vs numpy {slow}", file=sys.stderr)
            return 2
        t_nb = best_of(lambda: fn(True), args.repeat)
        t_np = best_of(lambda: fn(False), args.repeat)
        rows.append({"case": name, "numba_s": t_nb, "numpy_s": t_np, "speedup": t_np / t_nb if t_nb else float("inf")})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'case':36s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
        for r in rows:
            print(f"{r['case']:36s} {r['numba_s'] * 1e3:9.2f}ms {r['numpy_s'] * 1e3:9.2f}ms {r['speedup']:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
