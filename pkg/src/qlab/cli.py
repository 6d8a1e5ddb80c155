"""``qlab`` command line: evaluation, coefficient tables and verification suites.

Exit status: 0 on success (every verification row PASS), 1 when a
verification row fails, 2 on a usage or parameter error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import math
import os
import sys
from typing import List, Optional, Sequence

from . import expansion, polys, qexp, quad
from ._backend import BACKEND
from .errors import QLabError
from .opalg import Generator, mutated
from .verify import CheckRow, SuiteOptions, run_suites

VERIFY_COLUMNS = ("check", "relation_id", "n", "m", "q", "residual", "tol", "status")
SUITE_ORDER = ("polys", "actions", "relations", "orthogonality", "qexp", "expansion", "limits")
MAX_FAILURES_SHOWN = 20


class UsageError(Exception):
    pass


def _q_value(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError(f"q must lie in (0, 1), got {v}")
    return v


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {v}")
    return v


def _pos_int(text: str) -> int:
    v = _nonneg_int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {v}")
    return v


def _generator(text: str) -> Generator:
    try:
        return Generator.parse(text)
    except QLabError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--mutate", type=_generator, metavar="GEN",
                   help="debug: corrupt one generator (A+, A-, B+, B-, K, K^1/2, P, Q); also QLAB_MUTATE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qlab", description="Big q-Hermite polynomials, E_q and the q-oscillator "
                                                             "realization: evaluation and identity checks.")
    parser.add_argument("--version", action="store_true", help="print version and kernel backend")
    sub = parser.add_subparsers(dest="command")

    ev = sub.add_parser("eval", help="evaluate H_n or E_q at one point")
    evsub = ev.add_subparsers(dest="what", required=True)
    pp = evsub.add_parser("poly", help="H_n(x; a | q) by every route")
    pp.add_argument("--n", type=_nonneg_int, required=True)
    pp.add_argument("--q", type=_q_value, required=True)
    pp.add_argument("--a-re", type=float, default=0.0)
    pp.add_argument("--a-im", type=float, default=0.0)
    pp.add_argument("--x", type=float, required=True)
    _common(pp)
    pq = evsub.add_parser("qexp", help="E_q(x; a, b)")
    pq.add_argument("--q", type=_q_value, required=True)
    pq.add_argument("--a-re", type=float, default=0.0)
    pq.add_argument("--a-im", type=float, default=0.0)
    pq.add_argument("--b-re", type=float, default=0.0)
    pq.add_argument("--b-im", type=float, default=0.0)
    pq.add_argument("--x", type=float, required=True)
    _common(pq)

    tb = sub.add_parser("table", help="coefficient tables")
    tbsub = tb.add_subparsers(dest="what", required=True)
    pw = tbsub.add_parser("wcoeff", help="W_n^m(b) = u_n(b) y_{m+n}(b) for n = 0..n-max")
    pw.add_argument("--q", type=_q_value, required=True)
    pw.add_argument("--b-re", type=float, default=0.0)
    pw.add_argument("--b-im", type=float, default=0.0)
    pw.add_argument("--n-max", type=_nonneg_int, default=10)
    pw.add_argument("--m", type=int, default=0)
    _common(pw)

    vf = sub.add_parser("verify", help="residual sweeps; exit 1 if any row fails")
    vf.add_argument("suite", choices=SUITE_ORDER + ("all",))
    vf.add_argument("--q", type=_q_value, help="restrict q-sweeps to this value")
    vf.add_argument("--tol", type=_positive, help="tolerance for every residual row (default: per check; QLAB_TOL)")
    vf.add_argument("--a", type=float, help="orthogonality: a single real a with |a| < 1")
    vf.add_argument("--n-max", type=_nonneg_int, help="orthogonality: largest degree (default 8)")
    vf.add_argument("--nodes", type=_pos_int, help="orthogonality: quadrature nodes (default 512)")
    _common(vf)

    gm = sub.add_parser("gram", help="Gram matrix of H_0..H_{n-max} under the orthogonality weight")
    gm.add_argument("--n-max", type=_nonneg_int, default=4)
    gm.add_argument("--a", type=float, default=0.0)
    gm.add_argument("--q", type=_q_value, required=True)
    gm.add_argument("--nodes", type=_pos_int, help="default 256 for n-max <= 6, else 512")
    _common(gm)
    return parser


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def render(columns: Sequence[str], records: Sequence[dict], fmt: str) -> str:
    if fmt == "json":
        payload = [{c: _json_value(r[c]) for c in columns} for r in records]
        return json.dumps(payload, indent=1, ensure_ascii=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in records:
        writer.writerow([_cell(r[c]) for c in columns])
    return buf.getvalue()


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _env_tol() -> Optional[float]:
    raw = os.environ.get("QLAB_TOL")
    if raw is None or raw.strip() == "":
        return None
    try:
        return _positive(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"QLAB_TOL: {exc}") from None


def _env_mutation() -> Optional[Generator]:
    raw = os.environ.get("QLAB_MUTATE")
    if raw is None or raw.strip() == "":
        return None
    try:
        return Generator.parse(raw)
    except QLabError as exc:
        raise UsageError(f"QLAB_MUTATE: {exc}") from None


def _point(x: float) -> polys.EvalPointZT:
    return polys.EvalPointZT.from_x(x)


def _complex_record(name: str, v: complex) -> dict:
    v = complex(v)
    return {"name": name, "re": v.real, "im": v.imag}


def cmd_eval_poly(args) -> List[dict]:
    a = complex(args.a_re, args.a_im)
    spec = polys.BigQHermiteSpec(args.n, a, args.q)
    cmp = polys.compare_routes(spec, _point(args.x))
    records = [_complex_record("recurrence", cmp.recurrence)]
    if cmp.phi32 is not None:
        records.append(_complex_record("3phi2", cmp.phi32))
    records.append(_complex_record("2phi0", cmp.phi20))
    records.append({"name": "max_deviation", "re": cmp.max_deviation, "im": 0.0})
    return records


def cmd_eval_qexp(args) -> List[dict]:
    params = qexp.QExpParams(complex(args.a_re, args.a_im), complex(args.b_re, args.b_im))
    return [_complex_record("E_q", qexp.qexp(_point(args.x), params, args.q))]


def cmd_table_wcoeff(args) -> List[dict]:
    b = complex(args.b_re, args.b_im)
    out = []
    for n in range(args.n_max + 1):
        w = expansion.w_coeff(n, args.m, b, args.q)
        out.append({"n": n, "m": args.m, "re": w.real, "im": w.imag, "abs": abs(w)})
    return out


def cmd_gram(args) -> List[dict]:
    rule = quad.chebyshev_rule(args.nodes or quad.default_nodes(args.n_max))
    gram = quad.gram_matrix(args.n_max, args.a, args.q, rule)
    return [{"m": r.m, "n": r.n, "computed": r.computed, "expected": r.expected, "abs_err": r.abs_err}
            for row in gram for r in row]


def _report_failures(rows: Sequence[CheckRow]):
    failed = [r for r in rows if not r.passed]
    err = sys.stderr
    if not failed:
        print(f"{len(rows)} checks, all PASS", file=err)
        return
    print(f"{len(rows)} checks, {len(failed)} FAIL", file=err)
    for r in failed[:MAX_FAILURES_SHOWN]:
        print(f"FAIL check={r.check} relation_id={r.relation_id} n={_cell(r.n)} m={_cell(r.m)} q={r.q} "
              f"residual={r.residual!r} tol={r.tol!r}", file=err)
    if len(failed) > MAX_FAILURES_SHOWN:
        print(f"... {len(failed) - MAX_FAILURES_SHOWN} more", file=err)


def cmd_verify(args) -> int:
    tol = args.tol if args.tol is not None else _env_tol()
    opts = SuiteOptions(q=args.q, tol=tol, a=args.a, n_max=args.n_max, nodes=args.nodes)
    names = SUITE_ORDER if args.suite == "all" else (args.suite,)
    rows = run_suites(names, opts)
    _emit(render(VERIFY_COLUMNS, [r.as_dict() for r in rows], args.format), args.output)
    _report_failures(rows)
    return 0 if all(r.passed for r in rows) else 1


TABLE_COLUMNS = {
    ("eval", "poly"): ("name", "re", "im"),
    ("eval", "qexp"): ("name", "re", "im"),
    ("table", "wcoeff"): ("n", "m", "re", "im", "abs"),
    ("gram", None): ("m", "n", "computed", "expected", "abs_err"),
}
HANDLERS = {
    ("eval", "poly"): cmd_eval_poly,
    ("eval", "qexp"): cmd_eval_qexp,
    ("table", "wcoeff"): cmd_table_wcoeff,
    ("gram", None): cmd_gram,
}


def _dispatch(args) -> int:
    if args.command == "verify":
        return cmd_verify(args)
    key = (args.command, getattr(args, "what", None))
    records = HANDLERS[key](args)
    _emit(render(TABLE_COLUMNS[key], records, args.format), args.output)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.version:
        from . import __version__
        print(f"qlab {__version__} ({BACKEND} kernels)")
        return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        gen = args.mutate if args.mutate is not None else _env_mutation()
        ctx = mutated(gen) if gen is not None else contextlib.nullcontext()
        with ctx:
            return _dispatch(args)
    except (UsageError, QLabError, OSError) as exc:
        print(f"qlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
