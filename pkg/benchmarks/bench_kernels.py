"""Compare the compiled collection kernel against the pure-Python fallback.

Usage:
    python benchmarks/bench_kernels.py [--reps 20000] [--scan-size 19683]

Times single multiplications, word collections, and the bulk scans (BFS
enumeration, centralizer) that dominate center/quotient computations.
"""

import argparse
import random
import time

from nilprod import assign_moduli, build_basis
from nilprod.hallbasis import K3P2, STANDARD
from nilprod.kernel import HAVE_C, make_kernel
from nilprod.tables import KernelData


def _time(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def bench_case(name, data, reps, scans):
    rng = random.Random(0)
    kernels = {}
    if HAVE_C:
        kernels["c"] = make_kernel(data, "c")
    kernels["py"] = make_kernel(data, "py")
    order = next(iter(kernels.values())).order

    pairs = [(rng.randrange(order), rng.randrange(order)) for _ in range(reps)]
    words = []
    for _ in range(max(1, reps // 10)):
        length = rng.randrange(2, 10)
        words.append([(rng.randrange(data.n), rng.randrange(-5, 6)) for _ in range(length)])

    rows = []
    for op, runner in [
        ("id_mul", lambda k: [k.id_mul(a, b) for a, b in pairs]),
        ("collect", lambda k: [k.collect(w) for w in words]),
        ("bfs_order", lambda k: k.bfs_order(k.gen_ids) if scans else None),
        ("centralizer", lambda k: k.centralizer(k.gen_ids) if scans else None),
    ]:
        if not scans and op in ("bfs_order", "centralizer"):
            continue
        times = {}
        for tag, kern in kernels.items():
            times[tag] = _time(lambda kern=kern: runner(kern))
        if "c" in times:
            speedup = times["py"] / times["c"] if times["c"] > 0 else float("inf")
            rows.append((op, times["c"], times["py"], speedup))
        else:
            rows.append((op, None, times["py"], None))

    print(f"\n{name}  (order {order}, {data.n} basis atoms, class {data.kclass})")
    print(f"  {'op':<12} {'compiled':>10} {'pure py':>10} {'speedup':>9}")
    for op, tc, tp, sp in rows:
        ctxt = f"{tc:.3f}s" if tc is not None else "-"
        stxt = f"{sp:8.1f}x" if sp is not None else "       -"
        print(f"  {op:<12} {ctxt:>10} {tp:>9.3f}s {stxt}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--reps", type=int, default=20000, help="random multiplications per case")
    args = ap.parse_args()

    if not HAVE_C:
        print("note: compiled kernel not built; timing the pure-Python kernel only")

    cases = [
        ("2-nilpotent product of C3, C9, C9", 3, 2, (1, 2, 2), STANDARD, True),
        ("3-nilpotent product of C9, C9", 3, 3, (2, 2), STANDARD, False),
        ("3-nilpotent product of C4, C8 (p=2 basis)", 2, 3, (2, 3), K3P2, True),
        ("4-nilpotent product of C5, C5", 5, 4, (1, 1), STANDARD, False),
    ]
    for name, p, k, orders, variant, scans in cases:
        basis = assign_moduli(build_basis(len(orders), k), p, orders, variant)
        bench_case(name, KernelData(basis), args.reps, scans)


if __name__ == "__main__":
    main()
