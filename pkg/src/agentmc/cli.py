"""Command-line interface.

    agentmc check MODEL --formula F [--method auto|explicit] [--json]
                        [--explicit-max N] [--implicit-max N]
    agentmc validate MODEL [--json]
    agentmc classify MODEL [--formula F]
    agentmc graph MODEL [--out PATH]

Exit codes: 0 verdict true or OK, 1 verdict false, 2 input error (parse,
validation, unknown names, no capable checker, unreadable files), 3 internal
error.  Diagnostics go to stderr; results go to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    NoCapableChecker,
    ParseError,
    UnknownAgent,
    UnknownAtom,
    UnknownModelClass,
    ValidationError,
)
from .kernel import (
    Method,
    SelectionPolicy,
    classify_formula,
    default_registry,
    verify,
)
from .logics import parse_formula
from .models import export_dot, parse_model_text

_INPUT_ERRORS = (
    ParseError,
    ValidationError,
    UnknownAtom,
    UnknownAgent,
    UnknownModelClass,
    NoCapableChecker,
)


def _read(path):
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _formula_text(args, parser):
    if getattr(args, "formula", None) and getattr(args, "formula_file", None):
        parser.error("--formula and --formula-file are mutually exclusive")
    if getattr(args, "formula", None):
        return args.formula
    if getattr(args, "formula_file", None):
        return _read(args.formula_file)
    return None


def _policy(args):
    kwargs = {}
    if getattr(args, "explicit_max", None) is not None:
        kwargs["explicit_max_states"] = args.explicit_max
    if getattr(args, "implicit_max", None) is not None:
        kwargs["implicit_max_states"] = args.implicit_max
    return SelectionPolicy(**kwargs) if kwargs else None


def _cmd_check(args, parser):
    formula = _formula_text(args, parser)
    if formula is None:
        parser.error("check needs --formula or --formula-file")
    override = Method.EXPLICIT if args.method == "explicit" else None
    result = verify(
        default_registry(),
        _read(args.model),
        formula,
        policy=_policy(args),
        method_override=override,
    )
    if args.json:
        print(json.dumps(result.to_jsonable(), indent=2))
    else:
        print("overall: %s" % str(result.overall).lower())
        for state, verdict in result.per_initial.items():
            print("%s: %s" % (state, str(verdict).lower()))
        print("method: %s" % result.method.value)
        print("fallback: %s" % (result.trace.note if result.trace.fallback_applied else "none"))
        print("elapsed: %.1f ms" % (result.elapsed_seconds * 1000.0))
    return 0 if result.overall else 1


def _cmd_validate(args, parser):
    try:
        parse_model_text(_read(args.model))
    except ValidationError as err:
        if args.json:
            print(
                json.dumps(
                    {
                        "ok": False,
                        "violations": [
                            {
                                "invariant": v.invariant,
                                "subject": v.subject,
                                "message": v.message,
                                "line": v.line,
                            }
                            for v in err.violations
                        ],
                    },
                    indent=2,
                )
            )
        else:
            for v in err.violations:
                where = " (line %d)" % v.line if v.line else ""
                print("%s: %s%s" % (v.invariant, v.message, where))
        return 2
    if args.json:
        print(json.dumps({"ok": True, "violations": []}, indent=2))
    else:
        print("OK")
    return 0


def _cmd_classify(args, parser):
    doc = parse_model_text(_read(args.model))
    line = "model: %s" % doc.model_class.id
    formula = _formula_text(args, parser)
    if formula is not None:
        logic = classify_formula(parse_formula(formula))
        line += ", logic: %s" % logic.id
    print(line)
    return 0


def _cmd_graph(args, parser):
    dot = export_dot(parse_model_text(_read(args.model)))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(dot)
    else:
        print(dot, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agentmc",
        description="Model checking for multi-agent systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="verify a formula against a model")
    check.add_argument("model", help="path to model text")
    check.add_argument("--formula", help="formula text")
    check.add_argument("--formula-file", help="read the formula from a file")
    check.add_argument(
        "--method",
        choices=("auto", "explicit"),
        default="auto",
        help="auto follows the state-count policy; explicit forces the explicit checker",
    )
    check.add_argument("--json", action="store_true", help="machine-readable output")
    check.add_argument(
        "--explicit-max", type=int, default=None, metavar="N",
        help="prefer the explicit method below N states (default 50)",
    )
    check.add_argument(
        "--implicit-max", type=int, default=None, metavar="N",
        help="prefer the implicit method below N states (default 100)",
    )
    check.set_defaults(func=_cmd_check)

    validate = sub.add_parser("validate", help="parse and validate a model")
    validate.add_argument("model", help="path to model text")
    validate.add_argument("--json", action="store_true", help="machine-readable output")
    validate.set_defaults(func=_cmd_validate)

    classify = sub.add_parser("classify", help="report model and formula classes")
    classify.add_argument("model", help="path to model text")
    classify.add_argument("--formula", help="formula text")
    classify.add_argument("--formula-file", help="read the formula from a file")
    classify.set_defaults(func=_cmd_classify)

    graph = sub.add_parser("graph", help="export the model as Graphviz DOT")
    graph.add_argument("model", help="path to model text")
    graph.add_argument("--out", help="write DOT here instead of stdout")
    graph.set_defaults(func=_cmd_graph)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, parser)
    except SystemExit as exc:
        code = exc.code
        if isinstance(code, int):
            return code
        return 0 if code is None else 2
    except ValidationError as err:
        for v in err.violations:
            where = " (line %d)" % v.line if v.line else ""
            print("error: %s: %s%s" % (v.invariant, v.message, where), file=sys.stderr)
        return 2
    except _INPUT_ERRORS as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    except OSError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    except Exception as err:  # noqa: BLE001 - the contract wants exit 3 here
        print("internal error: %s" % err, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
