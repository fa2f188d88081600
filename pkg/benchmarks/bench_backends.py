"""Benchmark the pure-Python kernels against the compiled extension.

Usage:
    python benchmarks/bench_backends.py [--slots N]

Both backends replay identical random streams, so the tallies printed per
row must agree exactly; the benchmark doubles as a parity check.
"""

from __future__ import annotations

import argparse
import time

from entmac._kernels import has_compiled, pure
from entmac.hyperdense import CoinPairSource, QubitPairSource

if has_compiled():
    from entmac._kernels import _fast
else:
    _fast = None


def time_call(fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - start


def bench(name, n_slots, pure_call, fast_call):
    pure_result, pure_s = time_call(*pure_call)
    row = f"{name:<28} pure {n_slots / pure_s / 1e3:9.1f} kslot/s"
    if fast_call is not None:
        fast_result, fast_s = time_call(*fast_call)
        if fast_result != pure_result:
            raise SystemExit(f"backend mismatch in {name}: {pure_result} vs {fast_result}")
        row += f"   compiled {n_slots / fast_s / 1e3:12.1f} kslot/s   speedup {pure_s / fast_s:7.1f}x"
    print(row)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--slots", type=int, default=200_000)
    args = parser.parse_args()
    n = args.slots
    seed = 12345

    print(f"{n} slots per kernel, seed {seed}")
    if _fast is None:
        print("compiled kernel not built; timing the pure backend only")
    print()

    bench(
        "aloha (M=2, p=0.5)", n,
        (pure.aloha_tally, 2, 0.5, n, seed),
        (_fast.aloha_tally, 2, 0.5, n, seed) if _fast else None,
    )
    bench(
        "aloha (M=8, p=1/8)", n,
        (pure.aloha_tally, 8, 0.125, n, seed),
        (_fast.aloha_tally, 8, 0.125, n, seed) if _fast else None,
    )
    bench(
        "hyperdense (qubit pairs)", n,
        (pure.hyperdense_tally, n, seed, QubitPairSource()),
        (_fast.hyperdense_tally, n, seed, "qubit") if _fast else None,
    )
    bench(
        "hyperdense (coin)", n,
        (pure.hyperdense_tally, n, seed, CoinPairSource()),
        (_fast.hyperdense_tally, n, seed, "coin") if _fast else None,
    )


if __name__ == "__main__":
    main()
