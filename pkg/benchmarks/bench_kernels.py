"""Compare the numba and numpy packed-polynomial kernels.

Each workload packs a power of a catalog invariant and times three kernel
calls on it: the off-diagonal merge (applying the dual operator), the exact
diagonal pass (applying the Euler operator squared) and a product.  Both
backends must produce identical residues; a mismatch aborts the run.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --repeat 5 --json
"""

import argparse
import json
import sys
import time

from radcomp._kernels import available_backends
from radcomp.packed import PackedRing
from radcomp.phv import build_invariant, catalog_entry, dual_operator
from radcomp.weyl import euler_operator

WORKLOADS = [
    ("quadratic", 6, 5),
    ("determinant", 3, 4),
    ("pfaffian", 6, 4),
    ("determinant", 4, 3),
]


def _prepare(name, size, power):
    entry = catalog_entry(name, size)
    f = build_invariant(entry)
    op = dual_operator(f, entry.metric)
    theta = euler_operator(f.nvars)
    ops = {"dual": op, "euler^2": theta * theta}
    g = f**power
    # per-variable room for the product f * g and for the dual operator's shifts
    reach = max(e for exps in g.terms for e in exps) + max(e for exps in f.terms for e in exps)
    return g, f, ops, reach + 2


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def run(repeat):
    backends = available_backends()
    rows = []
    for name, size, power in WORKLOADS:
        g, f, ops, radix = _prepare(name, size, power)
        per_backend = {}
        for kernel in backends:
            ring = PackedRing(g.nvars, radix, 3, kernel)
            G, F = ring.from_multipoly(g), ring.from_multipoly(f)
            compiled = {label: ring.compile(op) for label, op in ops.items()}
            jobs = {label: (lambda c=c: ring.apply(c, G)) for label, c in compiled.items()}
            jobs["product"] = lambda: ring.mul(F, G)
            for job in jobs.values():  # warm-up, includes jit compilation
                job()
            per_backend[kernel] = {}
            for label, job in jobs.items():
                secs, out = _time(job, repeat)
                per_backend[kernel][label] = (secs, out.keys.tolist(), out.res.tolist())
        for label in per_backend[backends[0]]:
            results = {k: per_backend[k][label] for k in backends}
            ref = results[backends[0]][1:]
            if any(r[1:] != ref for r in results.values()):
                raise SystemExit(f"backends disagree on {name} {size} {label}")
            rows.append({
                "workload": f"{name} {size}, f^{power}",
                "terms": len(g),
                "op": label,
                **{k: results[k][0] for k in backends},
            })
    return backends, rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="timed runs per job (best is kept)")
    parser.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    args = parser.parse_args(argv)
    backends, rows = run(args.repeat)
    if args.json:
        print(json.dumps({"backends": backends, "rows": rows}, indent=2))
        return 0
    header = f"{'workload':<26}{'terms':>8}  {'op':<9}" + "".join(f"{b:>11}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>9}"
    print(header)
    for r in rows:
        line = f"{r['workload']:<26}{r['terms']:>8}  {r['op']:<9}"
        line += "".join(f"{r[b] * 1e3:>9.2f}ms" for b in backends)
        if len(backends) == 2:
            line += f"{r['numpy'] / r['numba']:>8.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
