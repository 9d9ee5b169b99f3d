"""Benchmark: compiled kernels against the pure-Python fallback.

Runs the four hot kernels on representative workloads and prints a timing
table. Usage::

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import ogroup as og
from ogroup import _kernels_py
from ogroup.subgroups import generating_sequence

try:
    from ogroup import _ckernels
except ImportError:
    _ckernels = None


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    s4 = og.build_named("symmetric", 4)
    s3s3 = og.direct_product([og.build_named("symmetric", 3)] * 2).product
    c2 = og.build_named("cyclic", 2)
    e8 = og.direct_product([c2] * 3).product
    d6 = og.build_named("dihedral", 6)

    def closures(k):
        def run():
            for x in range(s3s3.order):
                k.closure_mask(s3s3.table, (), (1 << x) | 2)
        return run

    def lattice(k):
        return lambda: k.all_subgroup_masks(s4.table, ())

    def normal(k):
        conj = s3s3.conjugation_actions()
        return lambda: k.normal_subgroup_masks(s3s3.table, (), conj)

    def homs(k):
        gens = generating_sequence(e8)
        orders = e8.element_orders()
        cands = [tuple(t for t in range(e8.order) if orders[g] % orders[t] == 0)
                 for g in gens]
        return lambda: k.search_morphisms(e8.table, (), e8.table, (), gens, cands)

    def canon(k):
        return lambda: k.canonical_encoding(d6.table, ())

    return [
        ("closure x36 (order 36)", closures),
        ("subgroup lattice (S4, order 24)", lattice),
        ("normal lattice (order 36)", normal),
        ("all endomorphisms (C2^3)", homs),
        ("canonical form (D6, order 12)", canon),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _ckernels is None:
        print("compiled kernels not built; showing pure-Python timings only")
    header = f"{'workload':<34} {'pure':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, make in workloads():
        t_pure = _time(make(_kernels_py), args.repeat)
        if _ckernels is not None:
            t_c = _time(make(_ckernels), args.repeat)
            print(f"{name:<34} {t_pure * 1e3:>9.2f}ms {t_c * 1e3:>9.2f}ms "
                  f"{t_pure / t_c:>7.1f}x")
        else:
            print(f"{name:<34} {t_pure * 1e3:>9.2f}ms {'-':>10} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
