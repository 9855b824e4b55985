"""Compare the numba and numpy point-counting kernels on a few fixed workloads.

    python3 benchmarks/bench_count.py [--repeat 3] [--large]
"""
from __future__ import annotations

import argparse
import time

from fermat_twists.descent import FormDatum, base_field, trace_form
from fermat_twists.gf import AlgebraSpec, extension, make_field
from fermat_twists.oracle import count_points


def example_form():
    base = base_field(7)
    F2401 = make_field(7, 4, (5, 1, 4, 5, 1))
    F49 = make_field(7, 2, (5, 5, 1))
    d = FormDatum(3, AlgebraSpec(base, (F2401, F49)), (F2401.root.inverse(), F49.root.inverse() ** 2))
    return trace_form(d)


def workloads(large: bool):
    base = base_field(7)
    yield "twisted n=6 over F_7", example_form(), 1
    yield "fermat n=4 over F_49", trace_form(FormDatum.fermat(3, 4, base)), 2
    cubic = FormDatum(3, AlgebraSpec(base, (extension(base, 3),)), (extension(base, 3).generator,))
    yield "F_343 cubic n=3 over F_7^3", trace_form(cubic), 3
    yield "fermat n=5 over F_49", trace_form(FormDatum.fermat(3, 5, base)), 2
    if large:
        yield "twisted n=6 over F_49", example_form(), 2


def best_of(fn, repeat: int) -> tuple[float, int]:
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--large", action="store_true", help="include the 2.9e8 point workload (numpy takes minutes)")
    args = ap.parse_args()

    # compile (or load from cache) before timing
    count_points(trace_form(FormDatum.fermat(3, 3, base_field(7))), 1, backend="numba")

    print(f"{'workload':32s} {'points':>10s} {'numba s':>9s} {'numpy s':>9s} {'speedup':>8s}")
    for name, poly, ext in workloads(args.large):
        t_nb, c_nb = best_of(lambda: count_points(poly, ext, backend="numba").count, args.repeat)
        t_np, c_np = best_of(lambda: count_points(poly, ext, backend="numpy").count, args.repeat)
        if c_nb != c_np:
            raise SystemExit(f"{name}: kernels disagree ({c_nb} vs {c_np})")
        print(f"{name:32s} {c_nb:10d} {t_nb:9.3f} {t_np:9.3f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
