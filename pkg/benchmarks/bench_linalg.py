"""Compare the compiled row-reduction kernel against the pure Python one.

Generates random sparse matrices, runs rref under each backend, checks
that the answers agree, and reports wall times.  The optional --hom flag
also times a full morphism-space computation, which is the shape of work
the library actually does.

    python3 benchmarks/bench_linalg.py --sizes 60,120,240 --repeats 3
"""

import argparse
import random
import time
from fractions import Fraction

from mfcat import field_from_name, hom_space, linalg


def random_rows(n, ncols, density, rng, field):
    rows = []
    for _ in range(n):
        row = {}
        for j in range(ncols):
            if rng.random() < density:
                num = rng.randint(-9, 9)
                if num == 0:
                    continue
                if field.rational:
                    row[j] = Fraction(num, rng.randint(1, 4))
                else:
                    row[j] = field.coerce(num)
        rows.append(row)
    return rows


def copy_rows(rows):
    return [dict(r) for r in rows]


def time_backend(name, rows, ncols, field, repeats):
    linalg.set_backend(name)
    best = None
    result = None
    for _ in range(repeats):
        work = copy_rows(rows)
        t0 = time.perf_counter()
        result = linalg.rref(work, ncols, field)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def bench_hom(repeats):
    from mfcat import koszul_factorization, parse_poly, WeightSystem

    xs = [parse_poly(f"x{i}", 3) for i in (1, 2, 3)]
    mf = koszul_factorization([(x, x * x) for x in xs],
                              weights=WeightSystem((1, 1, 1), 3))
    out = {}
    for name in ("python", "cython"):
        try:
            linalg.set_backend(name)
        except ImportError:
            out[name] = None
            continue
        best = None
        for _ in range(repeats):
            t0 = time.perf_counter()
            hs = hom_space(mf, mf)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        assert hs.total == 4
        out[name] = best
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="60,120,240",
                    help="comma-separated square matrix sizes")
    ap.add_argument("--density", type=float, default=0.08)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--field", default="q", help="q or p:PRIME")
    ap.add_argument("--hom", action="store_true",
                    help="also time a morphism-space computation")
    args = ap.parse_args(argv)

    field = field_from_name(args.field)
    sizes = [int(s) for s in args.sizes.split(",") if s]
    saved = linalg.BACKEND

    try:
        linalg.set_backend("cython")
        have_cython = True
    except ImportError:
        have_cython = False
        print("compiled kernel not built; timing pure Python only")

    print(f"{'size':>6} {'density':>8} {'python':>10} {'cython':>10} {'speedup':>8}")
    try:
        for n in sizes:
            rng = random.Random(args.seed)
            rows = random_rows(n, n, args.density, rng, field)
            t_py, res_py = time_backend("python", rows, n, field, args.repeats)
            if have_cython:
                t_cy, res_cy = time_backend("cython", rows, n, field,
                                            args.repeats)
                assert res_py == res_cy, "backends disagree"
                print(f"{n:>6} {args.density:>8.2f} {t_py:>10.4f} "
                      f"{t_cy:>10.4f} {t_py / t_cy:>7.1f}x")
            else:
                print(f"{n:>6} {args.density:>8.2f} {t_py:>10.4f} "
                      f"{'-':>10} {'-':>8}")
        if args.hom:
            times = bench_hom(args.repeats)
            py, cy = times["python"], times["cython"]
            line = f"hom-space (diagonal cubic End): python {py:.4f}s"
            if cy is not None:
                line += f", cython {cy:.4f}s, speedup {py / cy:.1f}x"
            print(line)
    finally:
        linalg.set_backend(saved)


if __name__ == "__main__":
    main()
