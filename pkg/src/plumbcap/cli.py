"""Command line interface.

Subcommands mirror the pipeline stages: validate, gram, openbook, dual,
embed, wu, mubar, obstruct, gamma-n.  Graph files use the plain text
format (``v id framing`` and ``e id id`` lines); ``-`` reads stdin, so
stages compose by piping, for example::

    plumbcap gamma-n 7 | plumbcap obstruct -

Exit codes: 0 success, 1 only with --fail-on-inconclusive when the run
does not obstruct, 2 usage errors and unreadable files, 3 malformed or
invalid input (parse errors, failed validation, missing preconditions),
4 exhausted search budget.  JSON output is requested with --json and is
deterministic once --no-timings removes the wall-clock fields.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import pipeline
from .dualcap import NoAdmissibleRootError, build_dual, choose_root
from .embedder import Budget, embed_diagonal
from .intlin import (
    GramMatrix,
    NonUniqueSpinError,
    NotDefiniteError,
    gram_from_json,
    mu_bar,
    wu_classes,
)
from .openbook import build_open_book
from .plumbing import (
    GraphFormatError,
    ValidationFailure,
    generate_gamma_n,
    gram_matrix,
    parse_plumbing,
    serialize_plumbing,
    validate,
)

ENV_BUDGET_NODES = "PLUMBCAP_BUDGET_NODES"

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_BUDGET = 4


class _UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_graph(path: str):
    return parse_plumbing(_read_text(path))


def _load_gram(args) -> GramMatrix:
    if getattr(args, "gram", False):
        return gram_from_json(_read_text(args.file))
    return gram_matrix(_load_graph(args.file))


def _resolve_budget(args) -> Budget | None:
    nodes = getattr(args, "budget_nodes", None)
    if nodes is None:
        raw = os.environ.get(ENV_BUDGET_NODES)
        if raw is not None and raw.strip():
            try:
                nodes = int(raw)
            except ValueError:
                raise _UsageError(
                    "%s must be an integer, got %r" % (ENV_BUDGET_NODES, raw))
    if nodes is None:
        return None
    if nodes < 0:
        raise _UsageError("node budget must be nonnegative")
    return Budget(max_nodes=nodes)


def _emit_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _render_gram(q: GramMatrix) -> str:
    lines = ["labels: %s" % " ".join(q.labels)]
    width = max((len(str(v)) for row in q.entries for v in row), default=1)
    for row in q.entries:
        lines.append(" ".join(str(v).rjust(width) for v in row))
    return "\n".join(lines)


def _cmd_validate(args) -> int:
    report = validate(_load_graph(args.file))
    if args.json:
        _emit_json(report.to_json_dict())
    else:
        print(report.describe())
    return EXIT_OK if report.all_ok else EXIT_INVALID


def _cmd_gram(args) -> int:
    q = gram_matrix(_load_graph(args.file))
    if args.json:
        _emit_json(q.to_json_dict())
    else:
        print(_render_gram(q))
    return EXIT_OK


def _cmd_openbook(args) -> int:
    book = build_open_book(_load_graph(args.file))
    if args.json:
        _emit_json(book.to_json_dict())
        return EXIT_OK
    for hole, owner in book.holes:
        print("hole %d: vertex %d" % (hole, owner))
    for curve in book.curves:
        holes = " ".join(str(h) for h in curve.holes)
        if curve.kind == "boundary":
            print("boundary curve: hole %s" % holes)
        else:
            print("edge curve %d-%d: holes %s" % (curve.edge[0], curve.edge[1], holes))
    return EXIT_OK


def _cmd_dual(args) -> int:
    graph = _load_graph(args.file)
    root = args.root if args.root is not None else choose_root(graph)
    dual = build_dual(graph, root)
    if args.gram_only:
        if args.json:
            _emit_json(dual.gram.to_json_dict())
        else:
            print(_render_gram(dual.gram))
        return EXIT_OK
    if args.json:
        _emit_json(dual.to_json_dict())
        return EXIT_OK
    print("root: %d" % dual.root)
    for s in dual.strings:
        print("%s: vertex %d, distance %d, framing %d"
              % (s.label, s.vertex, s.distance, s.framing))
    print(_render_gram(dual.gram))
    return EXIT_OK


def _cmd_embed(args) -> int:
    q = gram_from_json(_read_text(args.file))
    rank = args.rank if args.rank is not None else q.rank
    if rank < 0:
        raise _UsageError("target rank must be nonnegative")
    outcome = embed_diagonal(q, rank, _resolve_budget(args))
    if args.json:
        _emit_json(outcome.to_json_dict(include_timings=not args.no_timings))
    else:
        if not outcome.completed:
            print("undecided: budget exhausted after %d nodes" % outcome.nodes)
        elif outcome.embeddable:
            print("embeddable into <-1>^%d (%d nodes)" % (rank, outcome.nodes))
            for row in outcome.witness:
                print("  " + " ".join(str(v) for v in row))
        else:
            print("not embeddable into <-1>^%d (%d nodes)" % (rank, outcome.nodes))
    return EXIT_OK if outcome.completed else EXIT_BUDGET


def _cmd_wu(args) -> int:
    q = _load_gram(args)
    classes = wu_classes(q)
    if args.json:
        _emit_json({
            "labels": list(q.labels),
            "classes": [list(w.coefficients) for w in classes],
        })
        return EXIT_OK
    for w in classes:
        support = " ".join(w.support_labels(q))
        print("wu class: %s" % (support or "(empty)"))
    return EXIT_OK


def _cmd_mubar(args) -> int:
    value = mu_bar(_load_gram(args))
    if args.json:
        _emit_json({"mu_bar": value})
    else:
        print("mu-bar: %d" % value)
    return EXIT_OK


def _cmd_obstruct(args) -> int:
    graph = _load_graph(args.file)
    report = pipeline.qhd_obstruction(
        graph, root=args.root, all_roots=args.all_roots,
        budget=_resolve_budget(args))
    include_timings = not args.no_timings
    if args.json:
        _emit_json(report.to_json_dict(include_timings))
    else:
        print(pipeline.render_report(report, include_timings))
    if report.verdict == pipeline.UNDECIDED:
        return EXIT_BUDGET
    if args.fail_on_inconclusive and report.verdict != pipeline.OBSTRUCTED:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_gamma_n(args) -> int:
    if args.n < 2:
        raise _UsageError("gamma-n needs n >= 2")
    sys.stdout.write(serialize_plumbing(generate_gamma_n(args.n)))
    return EXIT_OK


def _add_json_flag(sub) -> None:
    sub.add_argument("--json", action="store_true", help="emit JSON")


def _add_file(sub, what: str) -> None:
    sub.add_argument("file", help="%s, or - for stdin" % what)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plumbcap",
        description="Rational homology disk obstructions for negative "
                    "definite plumbing trees.")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("validate", help="check tree, definiteness, framing bounds")
    _add_file(sub, "graph file")
    _add_json_flag(sub)
    sub.set_defaults(handler=_cmd_validate)

    sub = commands.add_parser("gram", help="intersection form of the graph")
    _add_file(sub, "graph file")
    _add_json_flag(sub)
    sub.set_defaults(handler=_cmd_gram)

    sub = commands.add_parser("openbook", help="planar open book holes and twist curves")
    _add_file(sub, "graph file")
    _add_json_flag(sub)
    sub.set_defaults(handler=_cmd_openbook)

    sub = commands.add_parser("dual", help="dual configuration strings and gram matrix")
    _add_file(sub, "graph file")
    sub.add_argument("--root", type=int, default=None, help="root vertex id")
    sub.add_argument("--gram-only", action="store_true",
                     help="print only the dual gram matrix")
    _add_json_flag(sub)
    sub.set_defaults(handler=_cmd_dual)

    sub = commands.add_parser("embed", help="search an embedding into <-1>^r")
    _add_file(sub, "gram JSON file")
    sub.add_argument("--rank", type=int, default=None,
                     help="target rank r (default: rank of the form)")
    sub.add_argument("--budget-nodes", type=int, default=None,
                     help="node budget (default: $%s or unlimited)" % ENV_BUDGET_NODES)
    sub.add_argument("--no-timings", action="store_true",
                     help="omit wall-clock fields from the output")
    _add_json_flag(sub)
    sub.set_defaults(handler=_cmd_embed)

    sub = commands.add_parser("wu", help="mod 2 Wu classes of the intersection form")
    _add_file(sub, "graph file")
    sub.add_argument("--gram", action="store_true",
                     help="input is a gram JSON file instead of a graph")
    _add_json_flag(sub)
    sub.set_defaults(handler=_cmd_wu)

    sub = commands.add_parser("mubar", help="mu-bar invariant (odd determinant only)")
    _add_file(sub, "graph file")
    sub.add_argument("--gram", action="store_true",
                     help="input is a gram JSON file instead of a graph")
    _add_json_flag(sub)
    sub.set_defaults(handler=_cmd_mubar)

    sub = commands.add_parser("obstruct", help="full rational homology disk obstruction")
    _add_file(sub, "graph file")
    roots = sub.add_mutually_exclusive_group()
    roots.add_argument("--root", type=int, default=None, help="use this root only")
    roots.add_argument("--all-roots", action="store_true",
                       help="run the search at every admissible root")
    sub.add_argument("--budget-nodes", type=int, default=None,
                     help="node budget (default: $%s or unlimited)" % ENV_BUDGET_NODES)
    sub.add_argument("--fail-on-inconclusive", action="store_true",
                     help="exit 1 unless the run obstructs")
    sub.add_argument("--no-timings", action="store_true",
                     help="omit wall-clock fields from the output")
    _add_json_flag(sub)
    sub.set_defaults(handler=_cmd_obstruct)

    sub = commands.add_parser("gamma-n", help="emit the n-th built-in family graph")
    sub.add_argument("n", type=int, help="family index, n >= 2")
    sub.set_defaults(handler=_cmd_gamma_n)

    return parser


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except _UsageError as exc:
        print("plumbcap: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except ValidationFailure as exc:
        print("plumbcap: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except (GraphFormatError, NoAdmissibleRootError,
            NotDefiniteError, NonUniqueSpinError) as exc:
        print("plumbcap: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except KeyError as exc:
        print("plumbcap: %s" % exc.args[0], file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print("plumbcap: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print("plumbcap: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    sys.exit(cli_main(sys.argv[1:]))
