"""Command-line front end.

Exit status: 0 on success, 1 on a usage error, 2 when a verification or
theorem check fails.

Level-2 numbers are addressed by their actual (even) subscript, so
``pb2 --n 4 --k 1`` prints B_4^(1) = 62/15.  ``vsc --n N`` instead takes the
``n`` of B_2n, and ``congruence --k K`` takes the positive ``K`` in B_n^(-K).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from polybern2 import numbertheory as nt
from polybern2 import polynum as pn
from polybern2 import stirling as st
from polybern2.core import InconsistencyError, TheoremViolation, rat_str
from polybern2.verify import Bounds, format_result, injected_fault, run_suites

MAX_INDEX = 400
MAX_TABLE = 200

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _format_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("plain", "csv", "json"), default="plain")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polybern2", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stirling", help="Stirling number of either kind with level s")
    p.add_argument("--kind", type=int, choices=(1, 2), default=2)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _format_flag(p)

    for name, what in (("pb2", "poly-Bernoulli"), ("pc2", "poly-Cauchy")):
        p = sub.add_parser(name, help=f"{what} number with level 2, B_n^(k) (n even)")
        p.add_argument("--n", type=int, required=True, help="even subscript")
        p.add_argument("--k", type=int, required=True, help="upper index, may be negative")
        _format_flag(p)

    p = sub.add_parser("bernoulli2", help="Bernoulli number with level 2 (n even)")
    p.add_argument("--n", type=int, required=True, help="even subscript")
    _format_flag(p)

    p = sub.add_parser("table", help="frac | cong | stirling1 | stirling2 | pb2")
    p.add_argument("what", choices=("frac", "cong", "stirling1", "stirling2", "pb2"))
    p.add_argument("--max", type=int, default=20, help="largest subscript (frac, pb2)")
    p.add_argument("--mod", type=int, default=7, help="modulus for cong (5 or 7)")
    p.add_argument("--level", type=int, default=2)
    p.add_argument("--n", type=int, default=6, help="last row of a Stirling triangle")
    p.add_argument("--k", type=int, default=1, help="upper index for the pb2 table")
    _format_flag(p)

    p = sub.add_parser("vsc", help="von Staudt-Clausen type defect of B_2n with level 2")
    p.add_argument("--n", type=int, required=True, help="n in B_2n, n >= 1")
    _format_flag(p)

    p = sub.add_parser("congruence", help="B_n^(-k) mod m (n even, k >= 1)")
    p.add_argument("--n", type=int, required=True, help="even subscript >= 2")
    p.add_argument("--k", type=int, required=True, help="k >= 1, the value is B_n^(-k)")
    p.add_argument("--mod", type=int, required=True)
    _format_flag(p)

    p = sub.add_parser("verify", help="run every identity suite")
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--order", type=int, default=15)
    p.add_argument("--bi-order", type=int, default=20)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    _format_flag(p)
    return parser


def _check_range(name: str, value: int, lo: int, hi: int = MAX_INDEX) -> None:
    if not lo <= value <= hi:
        raise UsageError(f"--{name} must be between {lo} and {hi}, got {value}")


def _half_index(n: int) -> int:
    _check_range("n", n, 0, 2 * MAX_INDEX)
    if n % 2:
        raise UsageError(f"odd subscript n={n}: level-2 numbers vanish at odd index, use an even n")
    return n // 2


def _emit_value(command: str, params: dict, value, fmt: str, out) -> None:
    text = value if isinstance(value, str) else rat_str(value)
    if fmt == "json":
        json.dump({"command": command, "params": params, "result": text}, out)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["value"])
        w.writerow([text])
    else:
        out.write(text + "\n")


def _emit_table(command: str, params: dict, header: list[str], rows: list[list], fmt: str, out) -> None:
    rows = [[c if isinstance(c, str) else rat_str(c) for c in row] for row in rows]
    if fmt == "json":
        json.dump(
            {"command": command, "params": params, "columns": header, "rows": rows, "result": rows},
            out,
        )
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
        for row in [header] + rows:
            out.write("  ".join(str(c).rjust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _table(args, out) -> int:
    what, fmt = args.what, args.format
    params = {"what": what}
    if what == "frac":
        _check_range("max", args.max, 0, MAX_TABLE)
        params["max"] = args.max
        rows = [[str(sub), v] for sub, v in nt.frac_table(args.max // 2)]
        _emit_table("table", params, ["n", "frac"], rows, fmt, out)
    elif what == "cong":
        if args.mod not in (5, 7):
            raise UsageError("--mod must be 5 or 7 for the residue tables")
        params["mod"] = args.mod
        t = nt.cong5_table() if args.mod == 5 else nt.cong7_table()
        header = [f"n mod {t.row_period} \\ k mod {t.col_period}"] + [str(c) for c in range(t.col_period)]
        rows = [[str(r)] + [str(e) for e in row] for r, row in enumerate(t.entries)]
        _emit_table("table", params, header, rows, fmt, out)
    elif what in ("stirling1", "stirling2"):
        _check_range("level", args.level, 1, 64)
        _check_range("n", args.n, 0, MAX_TABLE)
        params.update(level=args.level, n=args.n)
        tab = st.table(int(what[-1]), args.level)
        header = ["n"] + [f"k={k}" for k in range(args.n + 1)]
        rows = [[str(n)] + [str(tab(n, k)) for k in range(args.n + 1)] for n in range(args.n + 1)]
        _emit_table("table", params, header, rows, fmt, out)
    else:
        _check_range("max", args.max, 0, MAX_TABLE)
        _check_range("k", args.k, -MAX_INDEX, MAX_INDEX)
        params.update(max=args.max, k=args.k)
        rows = [[str(2 * n), pn.pb2_explicit(n, args.k)] for n in range(args.max // 2 + 1)]
        _emit_table("table", params, ["n", f"B_n^({args.k})"], rows, fmt, out)
    return EXIT_OK


def _verify(args, out) -> int:
    for name in ("nmax", "kmax"):
        _check_range(name, getattr(args, name), 1, 12)
    _check_range("order", args.order, 1, 40)
    _check_range("bi-order", args.bi_order, 0, 30)
    bounds = Bounds(args.nmax, args.kmax, args.order, args.bi_order)
    if args.inject_fault:
        with injected_fault():
            results = run_suites(bounds)
    else:
        results = run_suites(bounds)
    ok = all(r.passed for r in results if not r.diagnostic)
    if args.format == "json":
        json.dump(
            {
                "command": "verify",
                "params": {"nmax": bounds.nmax, "kmax": bounds.kmax, "order": bounds.order, "bi_order": bounds.bi_order},
                "result": [[r.name, "pass" if r.passed else "fail", str(r.checks)] for r in results],
            },
            out,
        )
        out.write("\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["suite", "status", "checks"])
        w.writerows([r.name, "pass" if r.passed else "fail", r.checks] for r in results)
    else:
        for r in results:
            out.write("\n".join(format_result(r)) + "\n")
        out.write("all suites passed\n" if ok else "VERIFICATION FAILED\n")
    return EXIT_OK if ok else EXIT_VERIFY


def dispatch(args, out) -> int:
    cmd, fmt = args.command, args.format
    if cmd == "stirling":
        _check_range("level", args.level, 1, 64)
        _check_range("n", args.n, 0)
        _check_range("k", args.k, 0)
        fn = st.stirling1_level if args.kind == 1 else st.stirling2_level
        params = {"kind": args.kind, "level": args.level, "n": args.n, "k": args.k}
        _emit_value(cmd, params, str(fn(args.level, args.n, args.k)), fmt, out)
    elif cmd in ("pb2", "pc2"):
        half = _half_index(args.n)
        _check_range("k", args.k, -MAX_INDEX, MAX_INDEX)
        fn = pn.pb2_explicit if cmd == "pb2" else pn.pc2_explicit
        _emit_value(cmd, {"n": args.n, "k": args.k}, fn(half, args.k), fmt, out)
    elif cmd == "bernoulli2":
        _emit_value(cmd, {"n": args.n}, nt.bernoulli2(_half_index(args.n)), fmt, out)
    elif cmd == "table":
        return _table(args, out)
    elif cmd == "vsc":
        _check_range("n", args.n, 1)
        rep = nt.vsc_defect(args.n)
        if fmt == "plain":
            out.write("\n".join(rep.lines()) + "\n")
        else:
            params = {"n": args.n}
            rows = [[str(p), rat_str(t)] for p, t in rep.terms]
            if fmt == "json":
                json.dump(
                    {
                        "command": cmd,
                        "params": params,
                        "value": rat_str(rep.value),
                        "terms": rows,
                        "full_defect": rat_str(rep.defect),
                        "result": rat_str(rep.reduced_defect),
                    },
                    out,
                )
                out.write("\n")
            else:
                _emit_table(cmd, params, ["p", "term"], rows + [["defect", rep.reduced_defect]], fmt, out)
    elif cmd == "congruence":
        half = _half_index(args.n)
        if half < 1:
            raise UsageError("--n must be at least 2")
        _check_range("k", args.k, 1)
        _check_range("mod", args.mod, 2, 10**9)
        params = {"n": args.n, "k": args.k, "mod": args.mod}
        _emit_value(cmd, params, str(nt.pb2_residue(half, args.k, args.mod)), fmt, out)
    elif cmd == "verify":
        return _verify(args, out)
    return EXIT_OK


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return dispatch(args, out)
    except UsageError as exc:
        print(f"polybern2 {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TheoremViolation, InconsistencyError) as exc:
        print(f"polybern2 {args.command}: check failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def run_to_string(argv: Sequence[str]) -> tuple[int, str]:
    buf = io.StringIO()
    code = run(argv, buf)
    return code, buf.getvalue()


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
