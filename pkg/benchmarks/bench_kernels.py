"""Compare the numba and numpy kernel backends on the enumeration workloads.

    python3 benchmarks/bench_kernels.py --q 9 --repeat 3

Both backends must return identical arrays; the script checks that before
printing timings.
"""
from __future__ import annotations

import argparse
import json
import time

import numpy as np

from imprimitive import kernels as K
from imprimitive.field import field_of_order
from imprimitive.group import BetaKind, params_validate
from imprimitive.tables import all_elements, all_points, all_unipotent, law_tables


def workloads(law):
    q = law.q
    G, P, U = all_elements(q), all_points(q), all_unipotent(q)
    rng = np.random.default_rng(0)
    n = 200_000
    A = G[rng.integers(0, len(G), n)]
    B = G[rng.integers(0, len(G), n)]
    return {
        "group_mul": lambda: K.group_mul(law, A, B),
        "group_inv": lambda: K.group_inv(law, A),
        "act_all_pairs": lambda: K.act_all_pairs(law, G, P),
        "fixed_point_counts": lambda: K.fixed_point_counts(law, G, P),
        "central_mask": lambda: K.central_mask(law, U, U[: 4 * q]),
    }


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=9)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print one JSON document")
    args = ap.parse_args(argv)

    ctx = field_of_order(args.q)
    beta = BetaKind.ncm(0, 0, 0, 1) if ctx.p > 2 else BetaKind.monomial(0, 1)
    law = law_tables(params_validate(field=ctx, beta=beta))
    backends = K.available_backends()
    rows = []
    for name, fn in workloads(law).items():
        out, t = {}, {}
        for b in backends:
            with K.backend(b):
                fn()  # warm-up (JIT compile for numba)
                out[b] = fn()
                t[b] = best_of(fn, args.repeat)
        ref = out["numpy"]
        same = all(np.array_equal(ref, v) for v in out.values())
        rows.append({"kernel": name, "agree": same, **{f"{b}_s": round(t[b], 5) for b in backends}})

    if args.json:
        print(json.dumps({"q": args.q, "rows": rows}, indent=2))
        return
    print(f"q = {args.q}  backends = {backends}")
    for r in rows:
        cols = "  ".join(f"{b}={r[f'{b}_s'] * 1e3:9.2f} ms" for b in backends)
        speed = ""
        if "numba" in backends and r["numba_s"] > 0:
            speed = f"  speedup x{r['numpy_s'] / r['numba_s']:.1f}"
        print(f"{r['kernel']:<20} {cols}{speed}  agree={r['agree']}")


if __name__ == "__main__":
    main()
