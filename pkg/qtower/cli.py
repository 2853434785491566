"""
Command line front end: builds presentations, runs the verification suites
and the K-theory tower computations, and emits text or JSON reports
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .abgrp import UnderdeterminedReport, check_sixterm, is_surjective, sixterm_from_dict
from .abgrp import solve_sixterm
from .ncalg import DEFAULT_STEP_LIMIT, ReductionStatus, reduce, render
from .parser import build_tower, parse_expression, parse_presentation
from .parser import parse_tower, render_presentation
from .qpres import (
    MAX_THETA_IDEAL_LEVEL,
    Status,
    build_suq,
    build_w_presentation,
    check_hypothesis_b,
    coaction_invariant,
    cp_link,
    sphere_link,
    verify_coassoc,
    verify_delta_star,
    verify_pi_square,
    verify_square,
    verify_theta_ideal,
)
from .towers import cp_tower, milnor_assemble, sphere_tower, su_tower

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CommandResult:
    status: int
    report: dict = field(default_factory=dict)
    text: str = ""
    format: str = "text"


def _status_of(items):
    statuses = {x["status"] for x in items}
    if Status.UNKNOWN.value in statuses:
        return EXIT_UNKNOWN
    if Status.REFUTED.value in statuses:
        return EXIT_REFUTED
    return EXIT_OK


def _window(text):
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError("expected A..B, got %r" % text)
    if lo > hi:
        raise argparse.ArgumentTypeError("empty window %s" % text)
    return lo, hi


def _document(task, inputs, items, summary, provenance=()):
    return {
        "tool": "qtower",
        "version": __version__,
        "task": task,
        "inputs": inputs,
        "items": items,
        "summary": summary,
        "provenance": list(provenance),
    }


def _from_report(report, inputs):
    d = report.to_dict()
    doc = _document(report.task, inputs, d["items"], d["summary"])
    return CommandResult(_status_of(d["items"]), doc, report.to_text())


def _read(path):
    with open(path, encoding="utf-8") as f:
        return f.read()


def cmd_build(args):
    if args.n < 1:
        raise ValueError("--n must be >= 1")
    pres = build_suq(args.n) if args.what == "su_q" else build_w_presentation(args.n)
    text = render_presentation(pres)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info("wrote %s", args.out)
    items = [{"id": rid, "status": Status.VERIFIED.value, "steps": 0} for rid, _ in pres.alg_relations]
    summary = {"generators": len(pres.matrix_generators()), "relations": len(items)}
    doc = _document("build-%s" % args.what, {"n": args.n}, items, summary)
    doc["document"] = text
    return CommandResult(EXIT_OK, doc, text.rstrip())


def cmd_verify(args):
    inputs = {"step_limit": args.step_limit}
    if args.suite == "hypothesis-b":
        if args.tower is None:
            raise UsageError("verify hypothesis-b needs --tower")
        tower = build_tower(parse_tower(_read(args.tower)), args.window)
        inputs.update(tower=args.tower, window=list(tower.window(args.window)))
        report = check_hypothesis_b(tower, args.window, args.step_limit, args.jobs)
        return _from_report(report, inputs)

    if args.n is None:
        raise UsageError("verify %s needs --n" % args.suite)
    inputs["n"] = args.n
    if args.suite == "coassoc":
        report = verify_coassoc(args.n, args.step_limit, args.jobs)
    elif args.suite == "square":
        report = verify_square(args.n, args.step_limit, args.jobs)
    elif args.suite == "pi-square":
        report = verify_pi_square(args.n)
    elif args.suite == "delta-star":
        report = verify_delta_star(args.n)
    else:
        report = verify_theta_ideal(
            args.n, args.step_limit, args.jobs, allow_large=args.allow_large
        )
    return _from_report(report, inputs)


def cmd_hs(args):
    link = sphere_link(args.n) if args.link == "sphere" else cp_link(args.n)
    pres = link.a_tower.level(args.n)
    f = parse_expression(args.element, pres.generators)
    status = coaction_invariant(f, link, args.n, args.step_limit, args.side)
    items = [{"id": "%s-coaction:%s" % (args.side, render(f)), "status": status.value, "steps": 0}]
    summary = {s.value: int(s is status) for s in Status}
    summary["total"] = 1
    inputs = {"n": args.n, "element": args.element, "link": args.link, "side": args.side}
    text = "%s in C(%s_q) at n = %d (%s coaction): %s" % (
        render(f), "S" if args.link == "sphere" else "CP", args.n, args.side, status.value)
    return CommandResult(_status_of(items), _document("hs-check", inputs, items, summary), text)


def _tower_table(k0, k1, extra=None):
    rows, items = ["%4s  %-16s %-16s" % ("n", "K0", "K1")], []
    for n in range(k0.start, k0.end + 1):
        g0, g1 = k0.group(n), k1.group(n)
        rows.append("%4d  %-16s %-16s" % (n, g0, g1))
        item = {"id": "n=%d" % n, "status": Status.VERIFIED.value, "K0": str(g0), "K1": str(g1)}
        if extra is not None:
            item.update(extra(n))
        items.append(item)
    return rows, items


def _milnor_lines(res):
    return [
        "RK0 = %s   lim = %s   lim1 K1 = %s" % (res.rk0, res.lim[0], res.lim1[0]),
        "RK1 = %s   lim = %s   lim1 K0 = %s" % (res.rk1, res.lim[1], res.lim1[1]),
    ]


def _milnor_summary(res):
    return {
        "RK0": str(res.rk0),
        "RK1": str(res.rk1),
        "RK0_class": res.rk0.tag.value,
        "RK1_class": res.rk1.tag.value,
        "lim1": [str(x) for x in res.lim1],
        "split": res.split_justification,
    }


def cmd_k(args):
    if args.space == "hexagon":
        if args.file is None:
            raise UsageError("k hexagon needs --file")
        return _k_hexagon(args)
    if args.n_max is None:
        raise UsageError("k %s needs --n-max" % args.space)

    extra = None
    if args.space == "sphere":
        k0, k1 = sphere_tower(args.n_max)
    elif args.space == "cp":
        k0, k1 = cp_tower(args.n_max)
    else:
        k0, k1 = su_tower(args.n_max)

        def extra(n):
            rank = k0.group(n).rank + k1.group(n).rank
            if n == k0.start:
                return {"rank": rank}
            return {"rank": rank, "surjective": [is_surjective(k0.map(n)), is_surjective(k1.map(n))]}

    res = milnor_assemble(k0, k1)
    rows, items = _tower_table(k0, k1, extra)
    summary = _milnor_summary(res)
    summary["levels"] = [k0.start, k0.end]
    doc = _document("k-%s" % args.space, {"n_max": args.n_max}, items, summary, res.provenance)
    status = EXIT_OK if all(x.is_zero for x in res.lim1) else EXIT_UNKNOWN
    return CommandResult(status, doc, "\n".join(rows + _milnor_lines(res)))


def _k_hexagon(args):
    st = sixterm_from_dict(json.loads(_read(args.file)))
    res = solve_sixterm(st)
    if isinstance(res, UnderdeterminedReport):
        text = res.partial.to_text() + "\n" + str(res)
        items = [{"id": "hexagon", "status": Status.UNKNOWN.value}]
        summary = {"resolved": False, "unresolved": list(res.unresolved)}
        return CommandResult(EXIT_UNKNOWN, _document("k-hexagon", {"file": args.file}, items, summary), text)
    ok = check_sixterm(res)
    items = [{"id": "hexagon", "status": (Status.VERIFIED if ok else Status.REFUTED).value}]
    summary = {"resolved": True, "nodes": [str(G) for G in res.nodes], "exact": ok}
    doc = _document("k-hexagon", {"file": args.file}, items, summary)
    return CommandResult(_status_of(items), doc, res.to_text())


def cmd_reduce(args):
    pres = parse_presentation(_read(args.pres))
    p = parse_expression(args.expr, pres.generators)
    out = reduce(p, pres.rules, args.step_limit)
    status = {
        ReductionStatus.REDUCED_TO_ZERO: Status.VERIFIED,
        ReductionStatus.NORMAL_FORM: Status.VERIFIED,
        ReductionStatus.STEP_LIMIT: Status.UNKNOWN,
    }[out.status]
    items = [{"id": "expr", "status": status.value, "steps": out.steps,
              "reduction": out.status.value, "normal_form": render(out.result)}]
    summary = {"reduction": out.status.value, "steps": out.steps}
    doc = _document("reduce", {"pres": args.pres, "expr": args.expr}, items, summary)
    text = "%s  [%s, %d steps]" % (render(out.result), out.status.value, out.steps)
    return CommandResult(_status_of(items), doc, text)


def make_parser():
    parser = _Parser(prog="qtower", description=__doc__)
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument(
        "--log-level", default=os.getenv("QTOWER_LOG_LEVEL", "WARNING"),
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--step-limit", type=int, default=DEFAULT_STEP_LIMIT)
        p.add_argument("--jobs", type=int, default=None)

    p = sub.add_parser("build", help="render a presentation document")
    p.add_argument("what", choices=("su_q", "w"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run a symbolic verification suite")
    p.add_argument(
        "suite", choices=("coassoc", "square", "theta-ideal", "pi-square", "delta-star", "hypothesis-b")
    )
    p.add_argument("--n", type=int)
    p.add_argument("--tower")
    p.add_argument("--window", type=_window)
    p.add_argument(
        "--allow-large", action="store_true",
        help="run theta-ideal above n = %d" % MAX_THETA_IDEAL_LEVEL,
    )
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hs", help="quantum homogeneous space checks")
    p.add_argument("action", choices=("check",))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--link", choices=("sphere", "cp"), default="sphere")
    p.add_argument("--side", choices=("left", "right"), default="left")
    common(p)
    p.set_defaults(func=cmd_hs)

    p = sub.add_parser("k", help="K-theory towers and six-term sequences")
    p.add_argument("space", choices=("sphere", "cp", "su", "hexagon"))
    p.add_argument("--n-max", type=int)
    p.add_argument("--file")
    p.set_defaults(func=cmd_k)

    p = sub.add_parser("reduce", help="normal form of an expression")
    p.add_argument("--pres", required=True)
    p.add_argument("--expr", required=True)
    common(p)
    p.set_defaults(func=cmd_reduce)
    return parser


def run(argv=None, configure_logging=False):
    try:
        args = make_parser().parse_args(argv)
        if configure_logging:
            logging.basicConfig(
                level=getattr(logging, args.log_level),
                format="%(levelname)s %(name)s: %(message)s",
            )
        res = args.func(args)
    except (UsageError, ValueError, KeyError, NotImplementedError, OSError) as e:
        logger.debug("command failed", exc_info=True)
        return CommandResult(EXIT_USAGE, {}, "error: %s" % e)
    res.format = args.format
    return res


def main(argv=None):
    res = run(argv, configure_logging=True)
    if res.status == EXIT_USAGE:
        print(res.text, file=sys.stderr)
    elif res.format == "json":
        print(json.dumps(res.report, indent=2, sort_keys=True))
    else:
        print(res.text)
    return res.status


if __name__ == "__main__":
    sys.exit(main())
