"""Command line interface.

Subcommands: classify, simulate, confine, caterpillar, degree-check,
orbits, enumerate, census, verify, serve.  Input documents are JSON
(amoeba/colony/tree) or JSONL (sequence logs) read from --input or
stdin.  Output is a single JSON document, JSONL for simulate/verify, or
DOT with --emit dot.  Exit codes: 0 decided/completed, 2 undecided
(budget exhausted or nothing found), 1 input error with {"error": ...}
on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from .caterpillar import decide_caterpillar, parse_caterpillar, shift_step
from .engine import (
    BUDGET_EXHAUSTED,
    CONFINING_REACHED,
    DEFAULT_MAX_STEPS,
    DEFAULT_MAX_VERTICES,
    UNKNOWN,
    Colony,
    Strategy,
    classify,
    find_confining_tree,
    run_census,
    run_colony,
    run_generation,
    verify_log,
)
from .errors import AmoebaError, MalformedInput
from .model import Amoeba, degree_check
from .serialize import dot_graph, log_lines, parse_input, parse_log
from .trees import Tree, count_free_trees, automorphism_orbits


class _Parser(argparse.ArgumentParser):
    """argparse that reports bad usage through the JSON error contract."""

    def error(self, message):
        raise MalformedInput(message)


def _positive(name):
    def convert(text):
        try:
            value = int(text)
        except ValueError:
            raise MalformedInput(f"{name} must be an integer, got {text!r}")
        if value < 1:
            raise MalformedInput(f"{name} must be at least 1, got {value}")
        return value

    return convert


def _seed(text):
    try:
        return int(text)
    except ValueError:
        raise MalformedInput(f"seed must be an integer, got {text!r}")


def _build_parser() -> _Parser:
    top = _Parser(prog="amoebas", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def cmd(name, help_text):
        return sub.add_parser(name, help=help_text)

    def opt_input(p):
        p.add_argument("--input", metavar="PATH", help="input file, - or absent for stdin")

    def opt_budget(p):
        p.add_argument("--max-steps", type=_positive("--max-steps"), default=DEFAULT_MAX_STEPS)
        p.add_argument(
            "--max-vertices", type=_positive("--max-vertices"), default=DEFAULT_MAX_VERTICES
        )

    def opt_ell(p):
        p.add_argument("--ell", type=_positive("--ell"), default=1)

    p = cmd("classify", "decide mortality of an amoeba with a certificate")
    opt_input(p)
    opt_ell(p)
    opt_budget(p)

    p = cmd("simulate", "run one growth sequence, emitting the log")
    opt_input(p)
    opt_ell(p)
    opt_budget(p)
    p.add_argument("--strategy", choices=["first", "random"], default="first")
    p.add_argument("--seed", type=_seed, default=None)
    p.add_argument("--emit", choices=["jsonl", "json", "dot"], default="jsonl")

    p = cmd("confine", "search for a smallest confining tree")
    opt_input(p)
    opt_ell(p)
    p.add_argument("--max-n", type=_positive("--max-n"), required=True)
    p.add_argument("--emit", choices=["json", "dot"], default="json")

    p = cmd("caterpillar", "decide or shift a caterpillar amoeba")
    opt_input(p)
    p.add_argument("--spec", metavar="TEXT", help='e.g. "C(0,2,2,3,0) roots=1,3,4"')
    p.add_argument("--shift", type=int, default=0, metavar="N", help="apply N right shifts")

    p = cmd("degree-check", "evaluate the ell=1 degree conditions")
    opt_input(p)

    p = cmd("orbits", "automorphism orbits of a tree or amoeba shape")
    opt_input(p)

    p = cmd("enumerate", "count free trees up to a vertex bound")
    p.add_argument("--max-n", type=_positive("--max-n"), required=True)

    p = cmd("census", "classify every amoeba up to size bounds")
    opt_ell(p)
    opt_budget(p)
    p.add_argument("--max-n", type=_positive("--max-n"), required=True)
    p.add_argument("--k-max", type=_positive("--k-max"), default=1)
    p.add_argument("--parallel", type=_positive("--parallel"), default=1)

    p = cmd("verify", "replay a sequence log and report violations")
    opt_input(p)

    p = cmd("serve", "run the interactive session service")
    p.add_argument("--port", type=_positive("--port"), default=8000)
    p.add_argument(
        "--max-vertices", type=_positive("--max-vertices"), default=DEFAULT_MAX_VERTICES
    )

    return top


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise MalformedInput(f"cannot read {path}: {e}")


def _read_json(path: str | None):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"input is not JSON: {e}")


def _amoeba_input(args) -> Amoeba:
    doc = parse_input(_read_json(args.input))
    if not isinstance(doc, Amoeba):
        raise MalformedInput("this command expects an amoeba document")
    return doc


def _emit_json(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _cmd_classify(args) -> int:
    a = _amoeba_input(args)
    result = classify(a, args.ell, args.max_steps, args.max_vertices)
    _emit_json(result.to_json())
    return 2 if result.verdict == UNKNOWN else 0


def _cmd_simulate(args) -> int:
    doc = parse_input(_read_json(args.input))
    strategy = Strategy(args.strategy, args.seed)
    if isinstance(doc, Colony):
        result = run_colony(
            doc, args.ell, doc.members[0].shape, strategy, args.max_steps, args.max_vertices
        )
    elif isinstance(doc, Amoeba):
        result = run_generation(doc, args.ell, strategy, args.max_steps, args.max_vertices)
    else:
        raise MalformedInput("simulate expects an amoeba or a colony")
    final = result.state.current
    if args.emit == "dot":
        last = result.state.log.steps[-1] if result.state.log.steps else None
        sys.stdout.write(
            dot_graph(
                final,
                copy_vertices=last.copy.vertices if last else (),
                new_edges=last.new_edges if last else (),
            )
        )
    elif args.emit == "json":
        _emit_json(
            {"outcome": result.outcome, "steps": result.steps, "final": final.to_json()}
        )
    else:
        sys.stdout.write("\n".join(log_lines(result.state.log)) + "\n")
    return 0 if result.outcome == CONFINING_REACHED else 2


def _cmd_confine(args) -> int:
    a = _amoeba_input(args)
    tree = find_confining_tree(a, args.ell, args.max_n)
    if tree is None:
        _emit_json({"found": False, "tree": None, "max_n": args.max_n})
        return 2
    if args.emit == "dot":
        sys.stdout.write(dot_graph(tree))
    else:
        _emit_json({"found": True, "tree": tree.to_json(), "max_n": args.max_n})
    return 0


def _cmd_caterpillar(args) -> int:
    if args.spec is not None and args.input is not None:
        raise MalformedInput("give either --spec or --input, not both")
    if args.spec is not None:
        spec = parse_caterpillar(args.spec)
        if args.shift < 0:
            raise MalformedInput("--shift must be non-negative")
        if args.shift:
            for _ in range(args.shift):
                spec = shift_step(spec)
            _emit_json({"spec": spec.text()})
            return 0
        decision = decide_caterpillar(spec.to_amoeba())
        _emit_json(decision.to_json())
        return 0
    if args.shift:
        raise MalformedInput("--shift needs --spec")
    decision = decide_caterpillar(_amoeba_input(args))
    _emit_json(decision.to_json())
    return 0


def _cmd_degree_check(args) -> int:
    _emit_json(degree_check(_amoeba_input(args)).to_json())
    return 0


def _cmd_orbits(args) -> int:
    doc = parse_input(_read_json(args.input))
    if isinstance(doc, Amoeba):
        orbits = automorphism_orbits(doc.shape, doc.mult)
    elif isinstance(doc, Tree):
        orbits = automorphism_orbits(doc)
    else:
        raise MalformedInput("orbits expects a tree or an amoeba")
    _emit_json({"orbits": [list(block) for block in orbits]})
    return 0


def _cmd_enumerate(args) -> int:
    counts = [{"n": n, "count": count_free_trees(n)} for n in range(1, args.max_n + 1)]
    _emit_json(
        {"max_n": args.max_n, "counts": counts, "total": sum(c["count"] for c in counts)}
    )
    return 0


def _cmd_census(args) -> int:
    rows = run_census(
        args.max_n, args.k_max, args.ell, args.max_steps, args.max_vertices, args.parallel
    )
    _emit_json(
        {
            "rows": [
                {
                    "code": r.code,
                    "amoeba": r.amoeba.to_json(),
                    "classification": r.classification.to_json(),
                }
                for r in rows
            ]
        }
    )
    return 0


def _cmd_verify(args) -> int:
    log = parse_log(_read_text(args.input))
    violations = verify_log(log)
    for v in violations:
        print(json.dumps({"violation": v}, sort_keys=True))
    print(
        json.dumps(
            {"steps": len(log.steps), "violations": len(violations)}, sort_keys=True
        )
    )
    return 1 if violations else 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(max_vertices=args.max_vertices), host="127.0.0.1", port=args.port)
    return 0


_HANDLERS = {
    "classify": _cmd_classify,
    "simulate": _cmd_simulate,
    "confine": _cmd_confine,
    "caterpillar": _cmd_caterpillar,
    "degree-check": _cmd_degree_check,
    "orbits": _cmd_orbits,
    "enumerate": _cmd_enumerate,
    "census": _cmd_census,
    "verify": _cmd_verify,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return _HANDLERS[args.command](args)
    except AmoebaError as e:
        print(json.dumps({"error": str(e)}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
