"""Compare the compiled and pure-Python rank kernels on FN boundary matrices.

Run with ``python3 benchmarks/bench_kernels.py``.  Each row times the rank
of one boundary matrix over one ring with both kernels and checks that the
answers agree.
"""

from __future__ import annotations

import argparse
import time

from monostab.fn import ConfigSpec, FNComplex
from monostab.linalg import BACKEND, GF, QQ, rank
from monostab.rep import SubgroupSpec

CASES = [
    # (label, n, d, group, degree)
    ("F_5(R^3) p=3", 5, 3, SubgroupSpec.trivial(5), 3),
    ("F_6(R^3) p=2", 6, 3, SubgroupSpec.trivial(6), 2),
    ("F_6(R^3) p=3", 6, 3, SubgroupSpec.trivial(6), 3),
    ("F_6(R^2) p=3", 6, 2, SubgroupSpec.trivial(6), 3),
    ("F_6(R^3)/S3xS3 p=4", 6, 3, SubgroupSpec.young([3, 3]), 4),
]


def best_of(fn, repeat: int) -> tuple[float, int]:
    best, value = float("inf"), -1
    for _ in range(repeat):
        t = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t)
    return best, value


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="only the two smallest cases")
    args = ap.parse_args(argv)
    if BACKEND != "cython":
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")
    cases = CASES[:2] if args.quick else CASES
    print(f"{'matrix':<20} {'shape':>13} {'nnz':>7} {'ring':>4} {'rank':>6} {'cython s':>9} {'python s':>9} {'speedup':>8}")
    for label, n, d, group, p in cases:
        spec = ConfigSpec.trivial_coefficients(n, d, group, QQ)
        A = FNComplex(spec, p).boundary(p)
        for ring in (QQ, GF(2)):
            tc, rc = best_of(lambda: rank(A, ring, "cython"), args.repeat)
            tp, rp = best_of(lambda: rank(A, ring, "python"), args.repeat)
            if rc != rp:
                raise SystemExit(f"kernels disagree on {label} over {ring.name}: {rc} vs {rp}")
            shape = f"{A.rows}x{A.cols}"
            print(
                f"{label:<20} {shape:>13} {A.nnz:>7} {ring.name:>4} {rc:>6} {tc:>9.3f} {tp:>9.3f} {tp / tc:>7.1f}x"
            )


if __name__ == "__main__":
    main()
