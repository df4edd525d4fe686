#!/usr/bin/env python3
"""Benchmark the compiled sweep kernel against the pure-Python fallback.

The hot path of the toolkit is the criterion-surface sweep: every candidate
cluster size crossed with every ICC grid point.  Run with::

    python3 benchmarks/bench_kernels.py [--grid-steps N] [--repeats R]
"""

import argparse
import statistics
import time

from crtdesign._kernels import KIND_COMPOUND, KIND_HTE, _pykern

try:
    from crtdesign._kernels import _cykern
except ImportError:
    _cykern = None


def _workload(grid_steps: int):
    rys = [0.005 + (0.2 - 0.005) * i / grid_steps for i in range(grid_steps + 1)]
    rxs = [0.1 + 0.9 * j / grid_steps for j in range(grid_steps + 1)]
    grid_y = [ry for ry in rys for _ in rxs]
    grid_x = [rx for _ in rys for rx in rxs]
    ms = list(range(2, 324))
    return ms, grid_y, grid_x


def _time(fn, repeats: int) -> float:
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid-steps", type=int, default=40)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    ms, grid_y, grid_x = _workload(args.grid_steps)
    cells = len(ms) * len(grid_y)
    print(f"workload: {len(ms)} cluster sizes x {len(grid_y)} ICC points "
          f"= {cells} cells, median of {args.repeats} runs")

    for kind, lam, label in (
        (KIND_HTE, 0.0, "interaction sweep"),
        (KIND_COMPOUND, 0.5, "compound sweep  "),
    ):
        call = (kind, lam, ms, grid_y, grid_x, 10.0, 2.0, 323.3333333333333)
        t_py = _time(lambda: _pykern.criterion_matrix(*call), args.repeats)
        line = f"{label}  python: {t_py * 1e3:8.2f} ms"
        if _cykern is not None:
            t_cy = _time(lambda: _cykern.criterion_matrix(*call), args.repeats)
            line += f"  compiled: {t_cy * 1e3:8.2f} ms  speedup: {t_py / t_cy:5.1f}x"
        else:
            line += "  compiled: not built"
        print(line)


if __name__ == "__main__":
    main()
