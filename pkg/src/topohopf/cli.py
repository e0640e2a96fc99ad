"""Command-line front end.

Exit codes: 0 on success or a passing check, 1 on a failing check, 2 on a
usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import checks as ck
from . import moulds as ml
from . import qposet as qp
from . import setcomp as scm
from . import topalg as ta
from . import wordalg as wa
from .errors import ResourceError, TopoHopfError
from .lincomb import LinComb, fmt_coeff

ENUM_CAPS = {"topologies": 5, "iso-classes": 5, "set-compositions": 6}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read_topology(text: str) -> qp.QPoset:
    text = text.strip()
    return qp.parse(json.loads(text) if text.startswith("{") else text)


def _emit(args, text: str, obj) -> None:
    if args.json:
        print(json.dumps(obj, sort_keys=False))
    else:
        print(text)


def _lin_json(x: LinComb, basis_json) -> list[dict]:
    return [{"basis": basis_json(b), "coeff": fmt_coeff(c)} for b, c in x]


def cmd_enumerate(args) -> int:
    cap = ENUM_CAPS[args.kind]
    if args.n > cap:
        raise ResourceError(f"enumerate {args.kind} is capped at n={cap}")
    atoms = range(1, args.n + 1)
    if args.kind == "topologies":
        items = qp.all_topologies(atoms)
        rows, objs = [str(T) for T in items], [qp.to_json(T) for T in items]
    elif args.kind == "iso-classes":
        items = ta.iso_classes(args.n)
        rows, objs = [str(c) for c in items], [qp.to_json(c.representative) for c in items]
    else:
        items = scm.all_set_compositions(atoms)
        rows, objs = [str(C) for C in items], [C.to_json() for C in items]
    order = sorted(range(len(items)), key=lambda i: items[i].sort_key())
    rows, objs = [rows[i] for i in order], [objs[i] for i in order]
    obj = {"kind": args.kind, "n": args.n, "count": len(items)}
    if args.list:
        obj["items"] = objs
    text = f"{len(items)}" if not args.list else "\n".join([f"{len(items)}"] + rows)
    _emit(args, text, obj)
    return 0


def cmd_gamma(args) -> int:
    x = ta.gamma(_read_topology(args.topology))
    _emit(args, str(x), ta.tensor_to_json(x))
    return 0


def cmd_delta(args) -> int:
    x = ta.delta(_read_topology(args.topology))
    _emit(args, str(x), ta.tensor_to_json(x))
    return 0


def cmd_L(args) -> int:
    x = scm.L(_read_topology(args.topology))
    _emit(args, str(x), _lin_json(x, lambda C: C.to_json()))
    return 0


def _M(b) -> str:
    return f"M{b}" if isinstance(b, wa.Composition) else f"M({b})"


def cmd_lambda(args) -> int:
    x = wa.lambda_map(_read_topology(args.topology))
    _emit(args, x.render(_M), _lin_json(x, lambda c: list(c.parts)))
    return 0


def cmd_wlambda(args) -> int:
    T = _read_topology(args.topology)
    x = wa.Lambda_map(ta.LabeledTop(qp.standardize(T)) if args.standardize else ta.LabeledTop(T))
    _emit(args, x.render(_M), _lin_json(x, lambda w: w.to_json()))
    return 0


def cmd_mould(args) -> int:
    M = ml.parse_mould(args.expression)
    table = M.table(args.caps)
    width = max((len(_seq(s)) for s, _ in table), default=0)
    text = "\n".join(f"{_seq(s):<{width}}  {fmt_coeff(v)}" for s, v in table)
    obj = {"mould": args.expression, "caps": [args.caps.length, args.caps.norm],
           "values": [{"seq": list(s), "value": fmt_coeff(v)} for s, v in table]}
    _emit(args, text, obj)
    return 0


def _seq(s) -> str:
    return "(" + ",".join(map(str, s)) + ")"


def cmd_check(args) -> int:
    names = args.suite
    unknown = [s for s in names if s != "all" and s not in ck.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {', '.join(unknown)}; available: all, {', '.join(ck.suite_names())}")
    params = ck.Params(n=args.n, seed=args.seed, caps=args.caps)
    reports = []
    for name in (ck.suite_names() if "all" in names else names):
        r = ck.run_suite(name, params, jobs=args.jobs)
        reports.append(r)
        if not args.json:
            print(r.summary(args.timing), flush=True)
            for f in r.failures[: args.show]:
                print(f"  instance {f.instance}\n    lhs: {f.lhs}\n    rhs: {f.rhs}")
    ok = all(r.passed for r in reports)
    if args.json:
        print(json.dumps({"pass": ok, "reports": [r.to_json(args.timing) for r in reports]}))
    elif len(reports) > 1:
        print(f"{sum(r.passed for r in reports)}/{len(reports)} suites pass")
    return 0 if ok else 1


def _caps(text: str) -> ml.Caps:
    try:
        return ml.Caps.parse(text)
    except TopoHopfError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="topohopf", description="Hopf algebras of finite topologies.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, caps=False):
        p.add_argument("--json", action="store_true", help="emit JSON")
        if caps:
            p.add_argument("--caps", type=_caps, default=ml.DEFAULT_CAPS, metavar="LEN,NORM",
                           help="mould caps: maximal length and norm (default 4,8)")
            p.add_argument("--len", type=int, dest="length", help="shortcut for --caps LEN,2*LEN")

    p = sub.add_parser("enumerate", help="count (and list) topologies, classes or set compositions")
    p.add_argument("kind", nargs="?", default="topologies", choices=sorted(ENUM_CAPS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true", help="list the items too")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    for name, func, help_ in (
        ("gamma", cmd_gamma, "internal coproduct"),
        ("delta", cmd_delta, "external coproduct"),
        ("L", cmd_L, "linear extensions as set compositions"),
        ("lambda", cmd_lambda, "image in QSym"),
        ("wlambda", cmd_wlambda, "image in WQSym (atoms must be 1..n)"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("topology", help="DSL text such as '0<1, 1~2, 3' or a JSON object")
        common(p)
        if name == "wlambda":
            p.add_argument("--standardize", action="store_true", help="relabel atoms onto 1..n first")
        p.set_defaults(func=func)

    p = sub.add_parser("mould", help="tabulate a mould expression")
    p.add_argument("expression", help="e.g. 'exp(f=1,1/2) @ monomial(x=1,2) * one'")
    common(p, caps=True)
    p.set_defaults(func=cmd_mould)

    p = sub.add_parser("check", help="run invariant suites ('all' runs every suite)")
    p.add_argument("suite", nargs="+")
    p.add_argument("--n", type=int, default=4, help="largest instance size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--show", type=int, default=3, help="failures printed per suite")
    p.add_argument("--timing", action="store_true", help="print elapsed times")
    common(p, caps=True)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "length", None) is not None:
            args.caps = ml.Caps(args.length, 2 * args.length)
        return args.func(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 2
    except TopoHopfError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
