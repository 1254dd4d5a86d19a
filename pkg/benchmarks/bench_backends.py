#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot paths: dense grid evaluation of the general magnetic /
electric fields, and RK4 field-line tracing (sequential point queries).

    python benchmarks/bench_backends.py [--grid 200] [--steps 2000]
"""

import argparse
import math
import os
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import gaugewheel as gw                           # noqa: E402
from gaugewheel.gauge import CylVec, pack_params  # noqa: E402
from gaugewheel.kernels import _pykern            # noqa: E402


def grid_bench(impl, P, n, field_id, repeats=3):
    rng = np.random.default_rng(0)
    rr = rng.uniform(0.05, 3.0, n * n) * 5e-6
    pp = rng.uniform(0.0, 2.0 * math.pi, n * n)
    zz = np.zeros(n * n)
    out = np.empty((n * n, 3))
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        impl.eval_block(P, field_id, rr, pp, zz, 0.0, out)
        best = min(best, time.perf_counter() - t0)
    return best, out


def trace_bench(impl, P, steps, repeats=3):
    def field(pt):
        return CylVec(*impl.b_general(P, pt.r, pt.phi, pt.z, pt.t))

    seed = gw.FieldPoint(1.5e-6, 0.4, 0.0, 0.0)
    best = math.inf
    line = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        line = gw.trace_field_line(field, seed, step=1e-7, max_steps=steps,
                                   r_max=3e-5, z_max=3e-5)
        best = min(best, time.perf_counter() - t0)
    return best, line


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--grid", type=int, default=200, help="grid side length")
    ap.add_argument("--steps", type=int, default=2000, help="trace steps")
    args = ap.parse_args()

    try:
        from gaugewheel import _fastkern as fast
    except ImportError:
        print("compiled kernels not built; run: python setup.py build_ext --inplace")
        return 1

    s = gw.preset("fig1")
    beam = s.beam.with_(freq_shift=4.0 * s.atom.linewidth)
    P = pack_params(beam, s.atom)
    n = args.grid

    print("point grid %dx%d, trace %d RK4 steps" % (n, n, args.steps))
    print("%-26s %12s %12s %9s" % ("benchmark", "python [s]", "cython [s]",
                                   "speedup"))
    for label, fid in (("grid B (general)", 1), ("grid E (general)", 2)):
        t_py, out_py = grid_bench(_pykern, P, n, fid)
        t_cy, out_cy = grid_bench(fast, P, n, fid)
        tag = "bitwise-equal" if np.array_equal(out_py, out_cy) else "DIFFER"
        print("%-26s %12.4f %12.4f %8.1fx  (%s)"
              % (label, t_py, t_cy, t_py / t_cy, tag))
    t_py, line_py = trace_bench(_pykern, P, args.steps)
    t_cy, line_cy = trace_bench(fast, P, args.steps)
    tag = ("bitwise-equal" if all(
        a.r == b.r and a.phi == b.phi and a.z == b.z
        for a, b in zip(line_py.points, line_cy.points)) else "DIFFER")
    print("%-26s %12.4f %12.4f %8.1fx  (%s)"
          % ("field-line trace", t_py, t_cy, t_py / t_cy, tag))
    return 0


if __name__ == "__main__":
    sys.exit(main())
