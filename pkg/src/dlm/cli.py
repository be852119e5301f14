"""Command-line front end.

Exit codes: 0 true/success, 1 false result (or failed check), 2 usage or
formula parse error, 3 model/action validation error, 4 action not
executable, 5 enumeration budget exhausted.  ``DLM_BUDGET`` caps
enumeration size when no ``--budget`` flag is given.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dot, explorer, kripke, reduce, scenario, storage, update
from .errors import BudgetExceededError, StructureError
from .explorer import Bounds
from .formula import (
    ParseError,
    Registry,
    atom_key,
    iff,
    parse,
    parse_action_expr,
    render,
    render_atom,
)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_NOT_EXECUTABLE = 4
EXIT_BUDGET = 5


def _registry_from_args(args) -> Registry:
    if not args.agents or not args.props:
        raise ValueError("this command needs --agents and --props")
    return Registry(tuple(args.agents.split(",")), tuple(args.props.split(",")))


def _actions_from_args(args, registry: Registry) -> dict:
    actions = {}
    for item in args.action_model or ():
        name, _, path = item.partition("=")
        if not path:
            raise ValueError(f"--action-model expects name=path, got {item!r}")
        actions[name] = storage.load_pointed_action(path, registry)
    return actions


def _emit(args, payload: dict, text: str):
    if getattr(args, "format", "text") == "json-lines":
        print(json.dumps(payload))
    else:
        print(text)


# ---------------------------------------------------------------------------
# Command handlers

def cmd_parse(args) -> int:
    registry = _registry_from_args(args)
    f = parse(args.formula, registry, _actions_from_args(args, registry))
    print(render(f))
    return EXIT_TRUE


def cmd_check(args) -> int:
    model, point = storage.load_model(args.model)
    if point is None:
        raise StructureError("model document has no designated world (point)")
    report = kripke.validate(model, args.strictness)
    if not report.valid:
        raise StructureError(
            f"model is not valid at {args.strictness} strictness: {report}"
        )
    f = parse(args.formula, model.registry, _actions_from_args(args, model.registry))
    pm = kripke.PointedModel(model, point)
    if args.trace:
        _print_trace(pm, f)
    value = kripke.satisfies(pm, f)
    _emit(
        args,
        {"formula": render(f), "point": point, "holds": value},
        f"{render(f)}  @ {point} : {str(value).lower()}",
    )
    return EXIT_TRUE if value else EXIT_FALSE


def cmd_update(args) -> int:
    model, point = storage.load_model(args.model)
    if point is None:
        raise StructureError("model document has no designated world (point)")
    report = kripke.validate(model, "relational")
    if not report.valid:
        raise StructureError("model is not valid at relational strictness")
    actions = _actions_from_args(args, model.registry)
    expr = parse_action_expr(args.action, model.registry, actions)
    pa = expr.resolve(model.registry)
    pm = kripke.PointedModel(model, point)
    executable = kripke.satisfies(pm, pa.action.pre[pa.point])
    if not executable and not args.force_product:
        print(
            f"action {expr.unparse()} is not executable at {point}"
            " (use --force-product to write the product anyway)",
            file=sys.stderr,
        )
        return EXIT_NOT_EXECUTABLE
    prod = update.product(model, pa.action)
    new_point = update.compound(point, pa.point) if executable else None
    storage.save_model(args.out, prod, new_point)
    if args.dot:
        Path(args.dot).write_text(dot.model_dot(prod, new_point))
    _emit(
        args,
        {
            "action": expr.unparse(),
            "worlds": len(prod.worlds),
            "point": new_point,
            "out": str(args.out),
        },
        f"wrote product with {len(prod.worlds)} worlds to {args.out}",
    )
    return EXIT_TRUE


def cmd_translate(args) -> int:
    registry = _registry_from_args(args)
    f = parse(args.formula, registry, _actions_from_args(args, registry))
    static = reduce.translate(f, registry)
    if args.simplify:
        static = reduce.simplify(static)
    print(render(static))
    if args.check_equiv:
        bounds = Bounds(args.max_worlds, registry.agents, registry.props, "observational")
        result = explorer.check_validity(iff(f, static), bounds, budget=args.budget)
        if result.status == "budget_exhausted":
            print("equivalence check ran out of budget", file=sys.stderr)
            return EXIT_BUDGET
        if result.status == "countermodel":
            print("translation disagrees with direct evaluation!", file=sys.stderr)
            return EXIT_FALSE
        print(
            f"equivalent on all {result.models_checked} pointed models"
            f" up to {args.max_worlds} worlds",
            file=sys.stderr,
        )
    return EXIT_TRUE


def cmd_verify(args) -> int:
    registry = _registry_from_args(args)
    f = parse(args.formula, registry, _actions_from_args(args, registry))
    bounds = Bounds(args.max_worlds, registry.agents, registry.props, args.frame_class)
    if args.satisfiable:
        result = explorer.find_witness(f, bounds, budget=args.budget)
        found = result.witness
        outcome = result.status
    else:
        result = explorer.check_validity(f, bounds, budget=args.budget)
        found = result.countermodel
        outcome = result.status
    _emit(
        args,
        {"formula": render(f), "status": outcome, "models_checked": result.models_checked},
        f"{outcome} ({result.models_checked} pointed models checked)",
    )
    if found is not None:
        doc = storage.model_to_dict(found.model, found.point)
        if args.out:
            Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
        else:
            print(json.dumps(doc, indent=2))
    if outcome == "budget_exhausted":
        return EXIT_BUDGET
    if args.satisfiable:
        return EXIT_TRUE if outcome == "witness" else EXIT_FALSE
    return EXIT_TRUE if outcome == "valid_within_bounds" else EXIT_FALSE


def cmd_scenario(args) -> int:
    report = scenario.run(args.name)
    for step in report.steps:
        _emit(
            args,
            {
                "step": step.name,
                "worlds": step.world_count,
                "point": step.pointed.point,
                "world_names": list(step.pointed.model.worlds),
            },
            f"[{step.name}] {step.world_count} worlds, point {step.pointed.point}",
        )
    for assertion in report.assertions:
        _emit(
            args,
            {"assert": assertion.description, "holds": assertion.holds},
            f"{'PASS' if assertion.holds else 'FAIL'}  {assertion.description}",
        )
    if args.dot:
        out_dir = Path(args.dot)
        out_dir.mkdir(parents=True, exist_ok=True)
        for step in report.steps:
            path = out_dir / f"{report.name}_{step.name}.dot"
            path.write_text(dot.model_dot(step.pointed.model, step.pointed.point))
    if not report.ok:
        failure = report.first_failure
        detail = f" [{render(failure.formula)}]" if failure.formula is not None else ""
        print(f"first failing assertion: {failure.description}{detail}", file=sys.stderr)
        return EXIT_FALSE
    return EXIT_TRUE


def cmd_export(args) -> int:
    try:
        doc = json.loads(Path(args.path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise StructureError(f"cannot read {args.path}: {exc}") from exc
    if isinstance(doc, dict) and "worlds" in doc:
        model, point = storage.model_from_dict(doc)
        text = dot.model_dot(model, point)
    elif isinstance(doc, dict) and "events" in doc:
        registry = _registry_from_args(args)
        action, point = storage.action_from_dict(doc, registry)
        text = dot.action_dot(action, point)
    else:
        raise StructureError(f"{args.path} is neither a model nor an action document")
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text, end="")
    return EXIT_TRUE


# ---------------------------------------------------------------------------
# Evaluation trace

def _print_trace(pm, f, indent: int = 0):
    from .formula import And, Believes, DynBox, Not

    pad = "  " * indent
    value = kripke.satisfies(pm, f)
    print(f"{pad}{render(f)}  @ {pm.point} : {str(value).lower()}")
    if isinstance(f, Not):
        _print_trace(pm, f.sub, indent + 1)
    elif isinstance(f, And):
        _print_trace(pm, f.left, indent + 1)
        _print_trace(pm, f.right, indent + 1)
    elif isinstance(f, Believes):
        for v in pm.model.succ(f.agent, pm.point):
            _print_trace(kripke.PointedModel(pm.model, v), f.sub, indent + 1)
    elif isinstance(f, DynBox):
        pa = f.act.resolve(pm.model.registry)
        pre = pa.action.pre[pa.point]
        print(f"{pad}  pre({pa.point}) = {render(pre)}")
        _print_trace(pm, pre, indent + 1)
        nxt = update.apply(pm, pa)
        if nxt is None:
            print(f"{pad}  not executable; box holds vacuously")
            return
        print(f"{pad}  product model ({len(nxt.model.worlds)} worlds):")
        for w in nxt.model.worlds:
            atoms = ", ".join(
                render_atom(a) for a in sorted(nxt.model.valuation[w], key=atom_key)
            )
            mark = "*" if w == nxt.point else " "
            print(f"{pad}   {mark}{w}: {{{atoms}}}")
        _print_trace(nxt, f.body, indent + 1)


# ---------------------------------------------------------------------------
# Argument parsing

def _add_registry_flags(sub):
    sub.add_argument("--agents", help="comma-separated agent names")
    sub.add_argument("--props", help="comma-separated prop names")


def _add_common_flags(sub):
    sub.add_argument(
        "--action-model",
        action="append",
        metavar="NAME=PATH",
        help="named action model file usable as @NAME (repeatable)",
    )
    sub.add_argument(
        "--format", choices=("text", "json-lines"), default="text",
        help="report format",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dlm",
        description="Model checker for observational epistemic models and misdirection actions.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("parse", help="parse a formula and print its canonical form")
    p.add_argument("formula")
    _add_registry_flags(p)
    _add_common_flags(p)
    p.set_defaults(handler=cmd_parse)

    p = subs.add_parser("check", help="evaluate a formula at a model's point")
    p.add_argument("model", help="model document (JSON)")
    p.add_argument("formula")
    p.add_argument("--trace", action="store_true", help="print per-subformula evaluation")
    p.add_argument(
        "--strictness", choices=("observational", "relational"), default="relational",
        help="validation level required of the input model",
    )
    _add_common_flags(p)
    p.set_defaults(handler=cmd_check)

    p = subs.add_parser("update", help="apply an action and write the product model")
    p.add_argument("model")
    p.add_argument("action", help="action expression, e.g. 'show-(a,r & ~l)' or '@name'")
    p.add_argument("--out", required=True)
    p.add_argument("--dot", help="also write a DOT rendering of the product")
    p.add_argument(
        "--force-product", action="store_true",
        help="write the product even when the action is not executable at the point",
    )
    _add_common_flags(p)
    p.set_defaults(handler=cmd_update)

    p = subs.add_parser("translate", help="compile a formula to the static fragment")
    p.add_argument("formula")
    _add_registry_flags(p)
    p.add_argument("--simplify", action="store_true", help="fold boolean constants")
    p.add_argument("--check-equiv", action="store_true",
                   help="cross-validate against direct evaluation on enumerated models")
    p.add_argument("--max-worlds", type=int, default=2)
    p.add_argument("--budget", type=int, default=None)
    _add_common_flags(p)
    p.set_defaults(handler=cmd_translate)

    p = subs.add_parser("verify", help="bounded validity or satisfiability check")
    p.add_argument("formula")
    _add_registry_flags(p)
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--frame-class", choices=explorer.FRAME_CLASSES, default="observational")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--satisfiable", action="store_true",
                   help="search for a witness instead of checking validity")
    p.add_argument("--out", help="write the countermodel/witness document here")
    _add_common_flags(p)
    p.set_defaults(handler=cmd_verify)

    p = subs.add_parser("scenario", help="run a built-in scenario end to end")
    p.add_argument("name", choices=scenario.SCENARIOS)
    p.add_argument("--dot", metavar="DIR", help="write DOT files for every stage")
    _add_common_flags(p)
    p.set_defaults(handler=cmd_scenario)

    p = subs.add_parser("export", help="export a model or action document to DOT")
    p.add_argument("path")
    p.add_argument("--out")
    _add_registry_flags(p)
    _add_common_flags(p)
    p.set_defaults(handler=cmd_export)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except StructureError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
