"""Command line front end.

Exit codes: 0 when everything checked is verified, 1 when a mathematical
verdict is negative (a refuted bound, a failed stability cell), 2 for
invalid input.  Reports are JSON with sorted keys and no timestamps, so
identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import __version__
from .arnold import forgetful_differences, gm_euler_class, verify_pullback_lemma
from .fisharp import degree_bound, make_TZYq
from .fn.complex import ConfigSpec, homology_config
from .fn.e2 import E2_RANGE_RULE, e2_page, e2_stability_report
from .koszul import TOTAL_RANGE_RULE, total_stability_report
from .linalg import Ring
from .rep import (
    GradedBettiTable,
    SubgroupSpec,
    from_cycles,
    permutation_module,
    sign_module,
    trivial_module,
)

SCHEMA = 1
WORKERS_ENV = "MONOSTAB_WORKERS"

STABILITY_RANGES = {
    "field": "isomorphism in all degrees <= n/2 (field coefficients)",
    "integers": "isomorphism in all degrees <= n/2 - 1 (integer coefficients)",
}


class UsageError(ValueError):
    """Invalid command line input (exit code 2)."""


# parsing helpers


def parse_weights(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"weights must be comma-separated integers, got {text!r}") from None
    if any(v <= 0 for v in vals):
        raise UsageError("weights must be positive")
    return vals


def parse_table(text: str) -> GradedBettiTable:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"betti table must be comma-separated integers, got {text!r}") from None
    try:
        return GradedBettiTable(vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_range(text: str) -> list[int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise UsageError(f"range must look like 3 or 2..6, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise UsageError("empty range")
    return list(range(lo, hi + 1))


def parse_ring(text: str, field_only: bool = False) -> Ring:
    try:
        ring = Ring.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if field_only and not ring.is_field:
        raise UsageError("a field is required here (Q or Fp)")
    return ring


def parse_group(text: str, n: int) -> SubgroupSpec:
    """``full``, ``trivial``, ``young:2,1`` or ``gens:(1 2);(1 2 3)`` (1-based cycles)."""
    t = text.strip()
    if t == "full":
        return SubgroupSpec.symmetric(n)
    if t == "trivial":
        return SubgroupSpec.trivial(n)
    if t.startswith("young:"):
        sizes = [int(x) for x in t[6:].split(",") if x]
        if sum(sizes) != n or any(s <= 0 for s in sizes):
            raise UsageError(f"Young block sizes must be positive and sum to n = {n}")
        return SubgroupSpec.young(sizes)
    if t.startswith("gens:"):
        gens = []
        for word in t[5:].split(";"):
            cycles = [[int(x) for x in c.split()] for c in re.findall(r"\(([^)]*)\)", word)]
            try:
                gens.append(from_cycles(n, cycles))
            except (ValueError, IndexError) as exc:
                raise UsageError(str(exc)) from None
        return SubgroupSpec.generated_by(n, gens)
    raise UsageError(f"unknown group {text!r}")


DEFAULT_TABLES_ANY_FIELD = {1: (1, 1)}
DEFAULT_TABLES_RATIONAL = "charges >= 2 use (1, 1) over Q"


def load_fibre_tables(path: str | None, field: Ring, needed: Sequence[int]) -> tuple[dict, GradedBettiTable, str]:
    """Betti tables per charge plus the Y table, and a provenance string."""
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read fibre table file: {exc}") from None
        if not isinstance(doc, dict) or "charges" not in doc:
            raise UsageError("fibre table file needs a 'charges' object")
        if "field" in doc and parse_ring(str(doc["field"])) != field:
            raise UsageError(f"fibre tables are for {doc['field']}, but the run is over {field.name}")
        try:
            tables = {int(k): GradedBettiTable(tuple(v)) for k, v in doc["charges"].items()}
            y = GradedBettiTable(tuple(doc.get("y", [1])))
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad fibre table: {exc}") from None
        source = f"file:{os.path.basename(path)}"
    else:
        tables = {k: GradedBettiTable(v) for k, v in DEFAULT_TABLES_ANY_FIELD.items()}
        if field.characteristic == 0:
            for k in needed:
                tables.setdefault(k, GradedBettiTable((1, 1)))
        y = GradedBettiTable((1,))
        source = "default: charge 1 -> (1,1)"
        if field.characteristic == 0:
            source += "; " + DEFAULT_TABLES_RATIONAL
    missing = sorted(k for k in set(needed) if k not in tables)
    if missing:
        raise UsageError(
            f"no Betti table for charge(s) {missing} over {field.name}; supply one with --fibre"
        )
    return tables, y, source


def check_charges(lam: Sequence[int], c: int) -> None:
    if c < 1:
        raise UsageError("the added charge c must be at least 1")
    if any(k == c for k in lam):
        raise UsageError(f"weights must differ from the added charge c = {c}")


def worker_count(arg: int | None) -> int:
    if arg is not None:
        return max(1, arg)
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"{WORKERS_ENV} must be an integer") from None
    return 1


def run_jobs(fn, jobs: list, width: int) -> list:
    if width <= 1 or len(jobs) <= 1:
        return [fn(*j) for j in jobs]
    with ProcessPoolExecutor(max_workers=width) as pool:
        futures = [pool.submit(fn, *j) for j in jobs]
        return [f.result() for f in futures]


def emit(report: dict, output: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if output and output != "-":
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# commands


def cmd_homology(args) -> int:
    ring = parse_ring(args.ring)
    if args.n < 0:
        raise UsageError("n must be nonnegative")
    if args.d < 2:
        raise UsageError("d must be at least 2")
    group = parse_group(args.group, args.n)
    if args.coeff == "trivial":
        module = trivial_module(group, ring)
    elif args.coeff == "sign":
        module = sign_module(group, ring)
    else:
        module = permutation_module(args.n, ring, group)
    # a noncompact manifold of dimension nd has no homology from degree nd on
    top = max(args.n * args.d - 1, 0) if args.max_degree is None else args.max_degree
    if top < 0:
        raise UsageError("max degree must be nonnegative")
    result = homology_config(ConfigSpec(args.n, args.d, group, module, ring), top)
    body = {
        "ring": ring.name,
        "degrees": [
            {
                "degree": k,
                "betti": result.betti.get(k, 0),
                "torsion": list(result.torsion.get(k, ())),
                "group": result.group(k),
            }
            for k in range(top + 1)
        ],
    }
    emit(
        {
            "schema": SCHEMA,
            "command": "homology",
            "input": {
                "n": args.n,
                "d": args.d,
                "group": args.group,
                "group_order": group.order,
                "coefficients": args.coeff,
                "ring": ring.name,
                "max_degree": top,
            },
            "result": body,
        },
        args.output,
    )
    return 0


def cmd_fisharp_degree(args) -> int:
    field = parse_ring(args.field, field_only=True)
    z, y = parse_table(args.z), parse_table(args.y)
    if args.q < 0:
        raise UsageError("q must be nonnegative")
    if args.bound < -1:
        raise UsageError("degree bounds start at -1")
    T = make_TZYq(z, y, args.q, field, args.nmax)
    cert = degree_bound(T, args.bound)
    emit(
        {
            "schema": SCHEMA,
            "command": "fisharp-degree",
            "input": {
                "z": list(z.betti),
                "y": list(y.betti),
                "q": args.q,
                "bound": args.bound,
                "nmax": args.nmax,
                "field": field.name,
            },
            "values": list(T.dims),
            "certificate": cert.as_dict(),
            "range_rule": "deg T <= d iff the (d+1)-fold cokernel tower vanishes; checked for n <= nmax - d - 1 only",
        },
        args.output,
    )
    if cert.status == "verified":
        return 0
    if cert.status == "refuted":
        return 1
    return 2


def cmd_gm(args) -> int:
    lam = parse_weights(args.weights)
    if not lam:
        raise UsageError("need at least one weight")
    out: dict = {"schema": SCHEMA, "command": f"gm {args.action}", "input": {"lambda": list(lam)}}
    code = 0
    if args.action == "euler":
        if args.j is None or not 1 <= args.j <= len(lam):
            raise UsageError(f"--j must lie in 1..{len(lam)}")
        e = gm_euler_class(lam, args.j)
        out["input"]["j"] = args.j
        out["euler_class"] = e.cls.as_dict()
    elif args.action == "verify-pullback":
        verdicts = verify_pullback_lemma(lam)
        out["verdicts"] = [v.as_dict() for v in verdicts]
        out["all_hold"] = all(v.holds for v in verdicts)
        code = 0 if out["all_hold"] else 1
    else:
        if args.r is None or not 1 <= args.r < len(lam):
            raise UsageError(f"--r must lie in 1..{len(lam) - 1}")
        diffs = forgetful_differences(lam, args.r)
        out["input"]["r"] = args.r
        out["differences"] = [d.as_dict() for d in diffs]
        wit = next((d for d in diffs if not d.difference.is_zero()), None)
        out["witness"] = None if wit is None else wit.as_dict()
        # positive weights predict an obstruction
        code = 0 if wit is not None else 1
    emit(out, args.output)
    return code


def _e2_job(lam, c, n, field_text, q_max, tables, y):
    field = Ring.parse(field_text)
    return e2_stability_report(lam, c, n, field, q_max, tables, y).as_dict()


def cmd_stability(args) -> int:
    lam = parse_weights(args.weights)
    check_charges(lam, args.c)
    ns = parse_range(args.n)
    width = worker_count(args.workers)
    if args.mode == "e2":
        field = parse_ring(args.field, field_only=True)
        tables, y, source = load_fibre_tables(args.fibre, field, list(lam) + [args.c])
        raw = {k: list(v.betti) for k, v in tables.items()}
        jobs = [(lam, args.c, n, field.name, args.q_max, raw, list(y.betti)) for n in ns]
        reports = run_jobs(_e2_job, jobs, width)
        rule = E2_RANGE_RULE
        extra = {"fibre_tables": {str(k): v for k, v in sorted(raw.items())}, "y": list(y.betti), "fibre_source": source}
        field_name = field.name
    else:
        field = parse_ring(args.field, field_only=True)
        if field.characteristic != 0:
            raise UsageError("the total-space check runs over Q only")
        reports = [r.as_dict() for r in total_stability_report(lam, args.c, ns)]
        rule = TOTAL_RANGE_RULE
        extra = {"note": "rank-level comparison of Betti numbers; no map is constructed"}
        field_name = "Q"
    passed = all(r["verdict"] == "PASS" for r in reports)
    doc = {
        "schema": SCHEMA,
        "command": f"stability {args.mode}",
        "input": {"lambda": list(lam), "c": args.c, "n": ns, "field": field_name, "q_max": args.q_max},
        "range_rule": rule,
        "stability_ranges": STABILITY_RANGES,
        "reports": reports,
        "verdict": "PASS" if passed else "FAIL",
        "mode": "rank-consistent" if any(r["mode"] == "rank-consistent" for r in reports) else "iso-verified",
        **extra,
    }
    emit(doc, args.output)
    if args.csv:
        write_stability_csv(reports, args.csv)
    return 0 if passed else 1


def write_stability_csv(reports: list[dict], path: str) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "p", "q", "source_dim", "target_dim", "rank", "verdict"])
    for r in reports:
        for c in r["cells"]:
            w.writerow([r["n"], c["p"], "" if c["q"] is None else c["q"], c["source_dim"], c["target_dim"],
                        "" if c["rank"] is None else c["rank"], c["verdict"]])
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(buf.getvalue())


def cmd_page(args) -> int:
    lam = parse_weights(args.weights)
    check_charges(lam, args.c)
    field = parse_ring(args.field, field_only=True)
    tables, y, source = load_fibre_tables(args.fibre, field, list(lam) + [args.c])
    page = e2_page(lam, args.c, args.n, tables, y, args.q_max, field, args.p_max)
    doc = {"schema": SCHEMA, "command": "page", "page": page.as_dict(), "fibre_source": source}
    emit(doc, args.output)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q\\p"] + list(range(page.p_max + 1)))
        for q, row in enumerate(page.rows()):
            w.writerow([q] + row)
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="monostab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    h = sub.add_parser("homology", help="homology of F_n(R^d)/G with coefficients")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--d", type=int, default=3)
    h.add_argument("--group", default="full", help="full | trivial | young:a,b,... | gens:(1 2);(1 2 3)")
    h.add_argument("--coeff", choices=["trivial", "sign", "permutation"], default="trivial")
    h.add_argument("--ring", default="Z")
    h.add_argument("--max-degree", type=int, default=None)
    h.add_argument("--output", "-o", default=None)
    h.set_defaults(func=cmd_homology)

    f = sub.add_parser("fisharp-degree", help="certify deg T_{Z,Y,q} <= bound")
    f.add_argument("--z", default="1,1")
    f.add_argument("--y", default="1")
    f.add_argument("--q", type=int, required=True)
    f.add_argument("--bound", type=int, required=True)
    f.add_argument("--nmax", type=int, default=8)
    f.add_argument("--field", default="Q")
    f.add_argument("--output", "-o", default=None)
    f.set_defaults(func=cmd_fisharp_degree)

    g = sub.add_parser("gm", help="Gibbons-Manton Euler class checks")
    g.add_argument("action", choices=["verify-pullback", "forgetful", "euler"])
    g.add_argument("--lambda", dest="weights", required=True)
    g.add_argument("--j", type=int, default=None)
    g.add_argument("--r", type=int, default=None)
    g.add_argument("--output", "-o", default=None)
    g.set_defaults(func=cmd_gm)

    s = sub.add_parser("stability", help="check stabilisation on E2 pages or total spaces")
    s.add_argument("mode", choices=["e2", "total"])
    s.add_argument("--lambda", dest="weights", default="")
    s.add_argument("--c", type=int, default=1)
    s.add_argument("--n", required=True, help="source sizes, e.g. 2..6")
    s.add_argument("--field", default="Q")
    s.add_argument("--q-max", type=int, default=None)
    s.add_argument("--fibre", default=None, help="JSON Betti tables per charge")
    s.add_argument("--workers", type=int, default=None, help=f"process pool width (or ${WORKERS_ENV})")
    s.add_argument("--csv", default=None, help="also write the per-cell table as CSV")
    s.add_argument("--output", "-o", default=None)
    s.set_defaults(func=cmd_stability)

    p = sub.add_parser("page", help="tabulate an E2 page")
    p.add_argument("--lambda", dest="weights", default="")
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", default="Q")
    p.add_argument("--q-max", type=int, default=None)
    p.add_argument("--p-max", type=int, default=None)
    p.add_argument("--fibre", default=None)
    p.add_argument("--csv", default=None)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_page)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"monostab: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"monostab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
