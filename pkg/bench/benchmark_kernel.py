#!/usr/bin/env python3
"""Compare the pure-Python and compiled count kernels on one (d, g) query.

Runs both kernels over every admissible sigma (the same loop count_twisted
uses), checks that the tuple counts agree, and reports wall times and the
speedup.  The compiled kernel is optional; without it only the Python
timing is shown.

Usage:
    python3 bench/benchmark_kernel.py -d 3 -g 5 --repeat 3
"""

import argparse
import statistics
import time

from twisted_hurwitz import _slowcount
from twisted_hurwitz.factorizations import _alpha_lookup, _twisted_tables

try:
    from twisted_hurwitz import _fastcount
except ImportError:
    _fastcount = None


def run_once(kernel, tables, lookups, g, connected):
    etas, eta_taus, alphas, sigmas = tables
    start = time.perf_counter()
    total = 0
    for sigma, lookup in zip(sigmas, lookups):
        total += kernel.count_for_sigma(
            sigma, etas, eta_taus, alphas, lookup, g - 1, connected
        )
    return total, time.perf_counter() - start


def bench(kernel, tables, lookups, g, connected, repeat):
    counts, times = [], []
    for _ in range(repeat):
        total, elapsed = run_once(kernel, tables, lookups, g, connected)
        counts.append(total)
        times.append(elapsed)
    assert len(set(counts)) == 1, "kernel is non-deterministic?!"
    return counts[0], min(times), statistics.mean(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("-d", type=int, default=3, help="degree (default 3)")
    parser.add_argument("-g", type=int, default=5, help="genus (default 5)")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--disconnected", action="store_true")
    args = parser.parse_args()

    connected = not args.disconnected
    tables = _twisted_tables(args.d)
    lookups = [_alpha_lookup(sigma, tables[2]) for sigma in tables[3]]
    label = "connected" if connected else "disconnected"
    print(
        "d=%d g=%d (%s): %d sigmas, %d transpositions, %d alphas"
        % (args.d, args.g, label, len(tables[3]), len(tables[0]), len(tables[2]))
    )

    total_py, best_py, mean_py = bench(
        _slowcount, tables, lookups, args.g, connected, args.repeat
    )
    print(
        "python kernel: %d tuples  best %.4f s  mean %.4f s"
        % (total_py, best_py, mean_py)
    )

    if _fastcount is None:
        print("compiled kernel not available (build with Cython to compare)")
        return

    total_cy, best_cy, mean_cy = bench(
        _fastcount, tables, lookups, args.g, connected, args.repeat
    )
    print(
        "cython kernel: %d tuples  best %.4f s  mean %.4f s"
        % (total_cy, best_cy, mean_cy)
    )
    if total_py != total_cy:
        raise SystemExit(
            "MISMATCH: python=%d cython=%d" % (total_py, total_cy)
        )
    print("counts agree; speedup (best/best): %.1fx" % (best_py / best_cy))


if __name__ == "__main__":
    main()
