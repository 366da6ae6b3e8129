#!/usr/bin/env python3
"""Compare the compiled vision kernels against the NumPy/Python fallback.

Renders a batch of synthetic frames once, then times the full detect
pipeline and the individual kernel stages under each backend. Both backends
are bit-identical in output (enforced by the test suite); this script
measures what the compiled extension buys.

Usage: python benchmarks/bench_detect.py [--frames N] [--size WxH] [--noise S]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from ethica_ar.cards import ALL_CARDS
from ethica_ar.vision import (
    DetectionParams,
    available_backends,
    default_marker_spec,
    detect,
    random_admissible_pose,
    render_synthetic_frame,
    use_backend,
    white_background,
)
from ethica_ar.vision.backend import _BACKENDS


def make_frames(spec, count: int, size: tuple[int, int], noise: float) -> list[np.ndarray]:
    rng = np.random.default_rng(42)
    frames = []
    for i in range(count):
        pose = random_admissible_pose(
            rng, spec, frame_size=size, min_width_frac=0.2, max_width_frac=0.55
        )
        frames.append(
            render_synthetic_frame(
                spec,
                ALL_CARDS[i % 4],
                pose,
                noise_sigma=noise,
                background=white_background(*size),
                seed=i,
            ).image
        )
    return frames


def time_per_frame(fn, frames, repeats: int = 1) -> list[float]:
    times = []
    for frame in frames:
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn(frame)
            best = min(best, time.perf_counter() - t0)
        times.append(best)
    return times


def fmt(times: list[float]) -> str:
    ms = [t * 1e3 for t in times]
    return f"median {statistics.median(ms):7.2f} ms   mean {statistics.fmean(ms):7.2f} ms"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--frames", type=int, default=30)
    parser.add_argument("--size", default="640x480", help="frame size WxH")
    parser.add_argument("--noise", type=float, default=6.0)
    args = parser.parse_args()
    w, h = (int(v) for v in args.size.lower().split("x"))

    spec = default_marker_spec()
    params = DetectionParams()
    print(f"backends available: {', '.join(available_backends())}")
    if "compiled" not in available_backends():
        print("compiled kernels not built; benchmarking the fallback only")

    frames = make_frames(spec, args.frames, (w, h), args.noise)
    binaries = None
    results: dict[str, dict[str, list[float]]] = {}

    for name in available_backends():
        kernels = _BACKENDS[name]
        with use_backend(name):
            stage_times = {
                "detect (full)": time_per_frame(lambda f: detect(f, spec, params), frames),
                "adaptive_threshold": time_per_frame(
                    lambda f: kernels.adaptive_threshold(f, params.window, params.offset),
                    frames,
                ),
            }
            if binaries is None:
                binaries = [
                    kernels.adaptive_threshold(f, params.window, params.offset)
                    for f in frames
                ]
            idx = iter(range(len(frames)))
            stage_times["trace_boundaries"] = time_per_frame(
                lambda f, it=idx: kernels.trace_boundaries(binaries[next(it)]), frames
            )
            results[name] = stage_times

    print(f"\n{args.frames} frames at {w}x{h}, noise sigma {args.noise}\n")
    stages = list(next(iter(results.values())))
    for stage in stages:
        print(f"{stage}:")
        for name in results:
            print(f"  {name:9s} {fmt(results[name][stage])}")
        if len(results) == 2:
            py = statistics.median(results["python"][stage])
            cy = statistics.median(results["compiled"][stage])
            if cy > 0:
                print(f"  {'speedup':9s} {py / cy:7.1f}x (compiled over python)")
        print()


if __name__ == "__main__":
    main()
