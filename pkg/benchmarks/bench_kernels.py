"""Compare the compiled kernels with their numpy twins on identical inputs.

    python3 benchmarks/bench_kernels.py [--radius 20] [--points 4096] [--repeat 3]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from regulab.elliptic_lab import _fallback
from regulab.elliptic_lab.lattice import Divisor, Lattice, TruncationPlan, common_denominator, integer_phases
from regulab.elliptic_lab.sums import _plan_tables
from regulab.suites import DEFAULT_X, DEFAULT_Y, DEFAULT_Z, parse_divisor

try:
    from regulab.elliptic_lab import _kernels
except ImportError:  # pragma: no cover
    _kernels = None


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def character_inputs(L: Lattice, plan: TruncationPlan, points: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    m, n = plan.index_arrays(L)
    g = m * L.v + n * L.u
    w = 1.0 / np.abs(g) ** 2
    s = rng.uniform(-0.5, 0.5, points)
    r = rng.uniform(-0.5, 0.5, points)
    return s, r, m, n, w


def k3_inputs(L: Lattice, plan: TruncationPlan, divs: list[Divisor]):
    m, n, norm2, gbar, lookup, mo, no = _plan_tables(L, plan)
    den = common_denominator(divs)
    args = [m, n, norm2, gbar, lookup, mo, no]
    for d in divs:
        S, R, K = integer_phases(d, den)
        args.append(np.ascontiguousarray((np.outer(S, n) - np.outer(R, m)) % den, dtype=np.int64))
        args.append(np.ascontiguousarray(K, dtype=np.int64))
    table = np.exp(2j * np.pi * (np.arange(den) / den))
    return args + [den, table]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--radius", type=float, default=20)
    ap.add_argument("--green-radius", type=float, default=60)
    ap.add_argument("--points", type=int, default=4096)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    L = Lattice.square()
    rows = []
    ci = character_inputs(L, TruncationPlan(args.green_radius), args.points)
    ki = k3_inputs(L, TruncationPlan(args.radius), [parse_divisor(L, d) for d in (DEFAULT_X, DEFAULT_Y, DEFAULT_Z)])
    for label, name, inputs in (("character_sum", "character_sum", ci), ("k3_direct_exact", "k3_direct_exact", ki)):
        t_np, v_np = best_of(lambda: getattr(_fallback, name)(*inputs), args.repeat)
        if _kernels is None:
            rows.append((label, t_np, None, None))
            continue
        t_cy, v_cy = best_of(lambda: getattr(_kernels, name)(*inputs), args.repeat)
        diff = float(np.max(np.abs(np.asarray(v_np) - np.asarray(v_cy))))
        rows.append((label, t_np, t_cy, diff))

    print(f"{'kernel':<18}{'numpy [s]':>12}{'cython [s]':>12}{'speedup':>10}{'max |diff|':>14}")
    for label, t_np, t_cy, diff in rows:
        if t_cy is None:
            print(f"{label:<18}{t_np:>12.4f}{'n/a':>12}{'':>10}{'':>14}")
        else:
            print(f"{label:<18}{t_np:>12.4f}{t_cy:>12.4f}{t_np / t_cy:>10.1f}{diff:>14.3e}")


if __name__ == "__main__":
    main()
