"""Command-line front end.

Exit status is 0 on success, 1 on a parse or validation error and 2 when
``verify`` finds a failing check.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .canon import canonicalize
from .expr import parse_expr
from .graph import GraphError, graph_from_obj
from .hopf import (CoefficientError, DropOneChannel, Elem, antipode, coproduct, hopf_project,
                   product, reduced_coproduct, verify_axioms)
from .instances import NAMES, InstanceError, Unsupported, amputate, get_instance
from .morphism import MorphismError
from .render import FORMATS, from_obj, render

VERBS = ("coproduct", "reduced", "antipode", "product", "verify", "amputate", "canonical")

_GRAMMARS = """\
instances and generator grammar:
  surj-ord, surj-sym     pi(n), n >= 1
  joyal                  J(n) or (1;0...0;1)
  seq:<alphabet>         seq(a_0,...,a_n) with entries from the alphabet, e.g. seq:ab
  nerve:<file>           chain(f_1,...,f_n) over a JSON composition table
  ck-tree-planar, ck-tree-sym (and the -amp variants without tails)
                         ladder(n), corolla(n), tree(<key>) or a key such as [[o]o]
  ck-graph-core, ck-graph-1pi, ck-graph-motic
                         banana(n[,tails]), cycle(n[,tails]), loop, edge, path(n),
                         dumbbell, corolla(t), graph(<json>) or a canonical key

expressions:
  sums of products with integer or p/q coefficients, e.g. '2*ladder(2) - ladder(1)*ladder(1)'
  '1' is the unit.  A JSON list of {"word": [...], "coeff": "p/q"} terms is also accepted.
  Prefix an argument with @ to read it from a file, or pass - for stdin.

exit status: 0 success, 1 parse or validation error, 2 verify failure.
FEYNCAT_THREADS caps the worker threads used by verify.
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class Result:
    status: int
    output: str = ""
    errors: list[str] = field(default_factory=list)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="feyncat", description="Coproducts, antipodes and axiom checks for "
                "bialgebras built from Feynman-category data.",
                epilog=_GRAMMARS, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"feyncat {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", "-i", help="instance name (" + ", ".join(NAMES) + ")")
    common.add_argument("--format", "-f", choices=FORMATS, default="text")
    common.add_argument("--output", "-o", help="write the result to this path")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    for verb, helptext in (("coproduct", "full coproduct"),
                           ("reduced", "reduced coproduct in the Hopf quotient"),
                           ("antipode", "antipode in the Hopf quotient"),
                           ("amputate", "delete the tails of tree factors")):
        s = sub.add_parser(verb, parents=[common], help=helptext, epilog=_GRAMMARS,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        s.add_argument("expr", help="inline expression or JSON element")
        if verb == "coproduct":
            s.add_argument("--hopf", action="store_true",
                           help="identify identity classes with the unit first")

    s = sub.add_parser("product", parents=[common], help="product of two elements")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--hopf", action="store_true")

    s = sub.add_parser("verify", parents=[common], help="check the bialgebra and Hopf axioms")
    s.add_argument("--max-degree", type=int, default=None,
                   help="generator degree bound (default: the instance's acceptance degree)")
    s.add_argument("--seed", type=int, default=0, help="seed for the random pair sample")
    s.add_argument("--pairs", type=int, default=200, help="number of random pairs")
    s.add_argument("--drop-channel", action="store_true",
                   help="negative control: forget one channel per word")

    s = sub.add_parser("canonical", parents=[common],
                       help="canonical key of a graph (JSON) or of instance generators")
    s.add_argument("expr", help="graph JSON object, or an expression with --instance")
    return p


def _read(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if arg.startswith("@"):
        try:
            with open(arg[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise InstanceError(f"cannot read {arg[1:]}: {exc.strerror}") from exc
    return arg


def _maybe_json(text: str):
    s = text.strip()
    if not s.startswith(("[{", "{")) and s != "[]":
        return None
    try:
        return json.loads(s)
    except json.JSONDecodeError:
        return None


def parse_input(inst, text: str) -> Elem:
    obj = _maybe_json(text)
    if isinstance(obj, list) and obj and all(isinstance(t, dict) for t in obj):
        return from_obj(inst, obj)
    return parse_expr(inst, text)


def _instance(args):
    if not args.instance:
        raise InstanceError("this command needs --instance")
    return get_instance(args.instance)


def _canonical(args) -> str:
    text = _read(args.expr)
    obj = _maybe_json(text)
    if isinstance(obj, dict):
        ck = canonicalize(graph_from_obj(obj))
        if args.format == "json":
            return json.dumps({"key": ck.key,
                               "vertex_order": {str(k): v for k, v in ck.vertex_order.items()},
                               "flag_order": {str(k): v for k, v in ck.flag_order.items()}},
                              sort_keys=True, separators=(",", ":"))
        return ck.key
    inst = _instance(args)
    x = parse_input(inst, text)
    keys = sorted({k for w in x.terms for k in w})
    if args.format == "json":
        return json.dumps(keys, separators=(",", ":"))
    return "\n".join(keys)


def run(argv: list[str] | None = None) -> Result:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verb == "canonical":
            return Result(0, _canonical(args))
        inst = _instance(args)
        if args.verb == "verify":
            if args.max_degree is not None and args.max_degree < 0:
                raise InstanceError("--max-degree must be nonnegative")
            target = DropOneChannel(inst) if args.drop_channel else inst
            deg = inst.acceptance_degree if args.max_degree is None else args.max_degree
            rep = verify_axioms(target, deg, pairs=args.pairs, seed=args.seed)
            if args.format == "json":
                out = json.dumps({"instance": rep.instance, "max_degree": rep.max_degree,
                                  "ok": rep.ok,
                                  "checks": [{"name": c.name, "passed": c.passed,
                                              "cases": c.cases,
                                              "counterexample": c.counterexample}
                                             for c in rep.checks]},
                                 separators=(",", ":"))
            else:
                out = rep.render()
            return Result(0 if rep.ok else 2, out)
        if args.verb == "product":
            a = parse_input(inst, _read(args.left))
            b = parse_input(inst, _read(args.right))
            y = product(a, b)
            return Result(0, render(hopf_project(y) if args.hopf else y, args.format))
        x = parse_input(inst, _read(args.expr))
        if args.verb == "coproduct":
            y = coproduct(hopf_project(x) if args.hopf else x)
        elif args.verb == "reduced":
            y = reduced_coproduct(x)
        elif args.verb == "antipode":
            y = antipode(hopf_project(x))
        else:
            y = amputate(x)
        return Result(0, render(y, args.format))
    except (InstanceError, Unsupported, GraphError, MorphismError, CoefficientError,
            ValueError) as exc:
        return Result(1, errors=[str(exc)])


def main(argv: list[str] | None = None) -> int:
    res = run(argv)
    for e in res.errors:
        print(f"feyncat: error: {e}", file=sys.stderr)
    if res.output:
        args = argv if argv is not None else sys.argv[1:]
        path = _output_path(args)
        if path:
            try:
                with open(path, "w", encoding="utf-8") as fh:
                    fh.write(res.output + "\n")
            except OSError as exc:
                print(f"feyncat: error: cannot write {path}: {exc.strerror}", file=sys.stderr)
                return 1
        else:
            sys.stdout.write(res.output + "\n")
    return res.status


def _output_path(argv: list[str]) -> str | None:
    args = build_parser().parse_args(argv)
    return args.output
