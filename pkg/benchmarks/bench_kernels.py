"""Compare the compiled and pure-Python property kernels.

Runs each kernel on the same seeded random properties under every available
backend, checks that the results agree, and reports the time per call. With
``--sweep`` it also times an exhaustive completeness sweep in a subprocess per
backend (the backend is fixed at import time, so switching needs a fresh
interpreter).

    python benchmarks/bench_kernels.py --points 4 8 --sweep
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

from teamlogic.kernels import available_backends

SWEEP = "from teamlogic.synth import verify_completeness as v; r = v('{logic}', 'p,q'); assert r.ok"


def _time(fn, args_list, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = [fn(*a) for a in args_list]
        best = min(best, time.perf_counter() - start)
    return best / len(args_list), out


def bench_kernels(points: list[int], calls: int, repeat: int, seed: int) -> list[dict]:
    backends = available_backends()
    rows = []
    for m in points:
        rng = random.Random(seed)
        teams = 1 << m
        props = [rng.getrandbits(teams) for _ in range(calls)]
        # sparse arguments keep split_or tractable at larger m
        sparse = [sum(1 << t for t in rng.sample(range(teams), 4)) for _ in range(2 * calls)]
        cases = {
            "down_closure": [(P, m) for P in props],
            "up_closure": [(P, m) for P in props],
            "split_or": [(sparse[2 * i], sparse[2 * i + 1], m) for i in range(calls)],
        }
        for name, args_list in cases.items():
            results = {}
            for bname, mod in backends.items():
                per_call, out = _time(getattr(mod, name), args_list, repeat)
                results[bname] = (per_call, out)
            outs = [r[1] for r in results.values()]
            row = {"kernel": name, "points": m, "agree": all(o == outs[0] for o in outs)}
            row.update({b: r[0] for b, r in results.items()})
            rows.append(row)
    return rows


def bench_sweep(logic: str) -> dict[str, float]:
    out = {}
    for bname in available_backends():
        env = dict(os.environ, TEAMLOGIC_PURE="1" if bname == "python" else "0")
        start = time.perf_counter()
        subprocess.run([sys.executable, "-c", SWEEP.format(logic=logic)], env=env, check=True)
        out[bname] = time.perf_counter() - start
    return out


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, nargs="+", default=[4, 8], help="valuation counts (team lattice 2^m)")
    ap.add_argument("--calls", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sweep", action="store_true", help="also time an exhaustive sweep per backend")
    ap.add_argument("--logic", default="CONDEP")
    args = ap.parse_args(argv)

    backends = list(available_backends())
    if len(backends) == 1:
        print("compiled kernels are not built; only the pure-Python backend is timed", file=sys.stderr)
    header = f"{'kernel':<14}{'points':>7}" + "".join(f"{b + ' us':>14}" for b in backends) + f"{'speedup':>10}  agree"
    print(header)
    ok = True
    for row in bench_kernels(args.points, args.calls, args.repeat, args.seed):
        cols = "".join(f"{row[b] * 1e6:>14.1f}" for b in backends)
        speed = f"{row['python'] / row['cython']:>9.1f}x" if "cython" in row else f"{'-':>10}"
        print(f"{row['kernel']:<14}{row['points']:>7}{cols}{speed}  {row['agree']}")
        ok &= row["agree"]
    if args.sweep:
        times = bench_sweep(args.logic)
        print(f"\nexhaustive {args.logic} sweep over p,q: " + ", ".join(f"{b} {t:.1f}s" for b, t in times.items()))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
