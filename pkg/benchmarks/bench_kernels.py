"""Time the compiled kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from planefix import _kernels_py as pure

try:
    from planefix import _kernels as compiled
except ImportError:
    compiled = None


def cases(rng):
    n = 1 << 18
    t = np.linspace(0, 6 * np.pi, n)
    dx, dy = np.ascontiguousarray(np.cos(t)), np.ascontiguousarray(np.sin(t))
    passable = np.ascontiguousarray(rng.random((400, 400)) < 0.62, dtype=np.uint8)
    seeds = np.zeros_like(passable)
    seeds[0, :] = 1
    th = np.linspace(0, 2 * np.pi, 256, endpoint=False)
    vx, vy = np.cos(th) * (1 + 0.2 * np.sin(5 * th)), np.sin(th) * (1 + 0.2 * np.sin(5 * th))
    px, py = rng.uniform(-1.3, 1.3, 20000), rng.uniform(-1.3, 1.3, 20000)
    f = np.ascontiguousarray
    return {
        "lift_turns (262k samples)": ("lift_turns", (dx, dy)),
        "flood4 (400x400 grid)": ("flood4", (passable, seeds)),
        "points_in_polygon (20k pts, 256-gon)": ("points_in_polygon", (f(px), f(py), f(vx), f(vy))),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(7)
    print(f"{'kernel':40s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speed-up':>9s}")
    for label, (name, argv) in cases(rng).items():
        tp = min(timeit.repeat(lambda: getattr(pure, name)(*argv), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{label:40s} {tp * 1e3:12.2f} {'n/a':>12s} {'':>9s}")
            continue
        tc = min(timeit.repeat(lambda: getattr(compiled, name)(*argv), number=1, repeat=args.repeat))
        print(f"{label:40s} {tp * 1e3:12.2f} {tc * 1e3:12.2f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
