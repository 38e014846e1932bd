#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot leaf routines (Euler-Maclaurin Hurwitz zeta, Stirling
log-Gamma) and an end-to-end torsion evaluation that exercises them.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from zetadet import _kernels_py
from zetadet.config import EM_BERNOULLI_ORDER, em_num_terms

try:
    from zetadet import _kernels_cy
except ImportError:
    _kernels_cy = None


def _workload():
    points = []
    for i in range(40):
        s = complex(0.1 * i - 2.0, 0.07 * i)
        q = complex(0.1 + 0.05 * i, 0.03 * i - 0.6)
        points.append((s, q))
    return points


def bench_hurwitz(impl, repeat: int) -> float:
    points = _workload()
    started = time.perf_counter()
    for _ in range(repeat):
        for s, q in points:
            impl.hurwitz_zeta(s, q, em_num_terms(s, q), EM_BERNOULLI_ORDER)
    return (time.perf_counter() - started) / (repeat * len(points))


def bench_log_gamma(impl, repeat: int) -> float:
    zs = [complex(0.1 + 0.2 * i, 0.15 * i - 1.0) for i in range(40)]
    started = time.perf_counter()
    for _ in range(repeat):
        for z in zs:
            impl.log_gamma(z)
    return (time.perf_counter() - started) / (repeat * len(zs))


def bench_torsion(repeat: int) -> float:
    from zetadet import build_rank1, refined_torsion

    params = [complex(0.1 + 0.02 * i, 0.01 * i - 0.2) for i in range(40)]
    started = time.perf_counter()
    for _ in range(repeat):
        for a in params:
            refined_torsion(build_rank1(a))
    return (time.perf_counter() - started) / (repeat * len(params))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=50)
    args = parser.parse_args()

    rows = []
    t_py = bench_hurwitz(_kernels_py, args.repeat)
    rows.append(("hurwitz_zeta", "python", t_py, 1.0))
    if _kernels_cy is not None:
        t_cy = bench_hurwitz(_kernels_cy, args.repeat)
        rows.append(("hurwitz_zeta", "cython", t_cy, t_py / t_cy))

    g_py = bench_log_gamma(_kernels_py, args.repeat)
    rows.append(("log_gamma", "python", g_py, 1.0))
    if _kernels_cy is not None:
        g_cy = bench_log_gamma(_kernels_cy, args.repeat)
        rows.append(("log_gamma", "cython", g_cy, g_py / g_cy))

    print(f"{'kernel':<14} {'backend':<8} {'us/call':>10} {'speedup':>8}")
    for name, backend, sec, speedup in rows:
        print(f"{name:<14} {backend:<8} {sec * 1e6:>10.2f} {speedup:>8.2f}x")

    from zetadet.kernels import BACKEND

    t = bench_torsion(max(1, args.repeat // 10))
    print(f"\nend-to-end refined_torsion ({BACKEND} backend): {t * 1e6:.1f} us/model")
    if _kernels_cy is None:
        print("compiled backend not built; run pip install -e . to compare")


if __name__ == "__main__":
    main()
