"""Reading and writing model and action-model documents.

Model documents::

    {"agents": [..], "props": [..], "worlds": [..],
     "relations": {agent: [[w, v], ..], ..},
     "valuation": {world: ["p", "obs(a,p)", "obs(a,~p)", ..], ..},
     "point": w}

Action documents::

    {"events": [..], "relations": {agent: [[e, f], ..], ..},
     "pre": {event: "<formula>", ..},
     "post": {event: {"atom": true|false, ..}, ..},
     "point": e}

``point`` may be null.  Everything the toolkit writes re-reads to an equal
object.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from .action import ActionModel, PointedAction, PostMap
from .errors import StructureError
from .formula import ParseError, Registry, atom_key, parse, parse_atom, render, render_atom
from .kripke import Model


def model_to_dict(m: Model, point: Optional[str] = None) -> dict:
    order = {w: i for i, w in enumerate(m.worlds)}
    return {
        "agents": list(m.registry.agents),
        "props": list(m.registry.props),
        "worlds": list(m.worlds),
        "relations": {
            agent: [list(p) for p in sorted(m.relations[agent], key=lambda p: (order[p[0]], order[p[1]]))]
            for agent in m.registry.agents
        },
        "valuation": {
            w: [render_atom(a) for a in sorted(m.valuation[w], key=atom_key)] for w in m.worlds
        },
        "point": point,
    }


def model_from_dict(doc: Any) -> tuple[Model, Optional[str]]:
    if not isinstance(doc, dict):
        raise StructureError("model document must be a mapping")
    try:
        registry = Registry(tuple(doc["agents"]), tuple(doc["props"]))
        worlds = tuple(doc["worlds"])
        relations = {
            agent: [tuple(pair) for pair in pairs]
            for agent, pairs in doc.get("relations", {}).items()
        }
        raw_valuation = doc.get("valuation", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"malformed model document: {exc}") from exc
    valuation = {}
    for world, atoms in raw_valuation.items():
        try:
            valuation[world] = [parse_atom(text, registry) for text in atoms]
        except ParseError as exc:
            raise StructureError(f"bad atom in valuation of {world!r}: {exc}") from exc
    model = Model(registry, worlds, relations, valuation)
    point = doc.get("point")
    if point is not None and point not in model.world_set:
        raise StructureError(f"point {point!r} is not a world of the model")
    return model, point


def action_to_dict(a: ActionModel, point: Optional[str] = None) -> dict:
    order = {e: i for i, e in enumerate(a.events)}
    return {
        "events": list(a.events),
        "relations": {
            agent: [list(p) for p in sorted(a.relations[agent], key=lambda p: (order[p[0]], order[p[1]]))]
            for agent in sorted(a.relations)
        },
        "pre": {e: render(a.pre[e]) for e in a.events},
        "post": {
            e: {render_atom(atom): value for atom, value in a.post[e].items()}
            for e in a.events
        },
        "point": point,
    }


def action_from_dict(doc: Any, registry: Registry) -> tuple[ActionModel, Optional[str]]:
    if not isinstance(doc, dict):
        raise StructureError("action document must be a mapping")
    try:
        events = tuple(doc["events"])
        relations = {
            agent: [tuple(pair) for pair in pairs]
            for agent, pairs in doc.get("relations", {}).items()
        }
        raw_pre = doc["pre"]
        raw_post = doc["post"]
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"malformed action document: {exc}") from exc
    pre = {}
    for event, text in raw_pre.items():
        try:
            pre[event] = parse(text, registry)
        except ParseError as exc:
            raise StructureError(f"bad precondition for {event!r}: {exc}") from exc
    post = {}
    for event, assigns in raw_post.items():
        try:
            post[event] = PostMap(
                {parse_atom(text, registry): bool(value) for text, value in assigns.items()}
            )
        except ParseError as exc:
            raise StructureError(f"bad postcondition atom for {event!r}: {exc}") from exc
    action = ActionModel(events, relations, pre, post)
    point = doc.get("point")
    if point is not None and point not in action.events:
        raise StructureError(f"point {point!r} is not an event of the action model")
    return action, point


def _read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise StructureError(f"cannot read {path}: {exc}") from exc


def load_model(path) -> tuple[Model, Optional[str]]:
    return model_from_dict(_read_json(path))


def save_model(path, m: Model, point: Optional[str] = None):
    Path(path).write_text(json.dumps(model_to_dict(m, point), indent=2) + "\n")


def load_action(path, registry: Registry) -> tuple[ActionModel, Optional[str]]:
    return action_from_dict(_read_json(path), registry)


def save_action(path, a: ActionModel, point: Optional[str] = None):
    Path(path).write_text(json.dumps(action_to_dict(a, point), indent=2) + "\n")


def load_pointed_action(path, registry: Registry) -> PointedAction:
    action, point = load_action(path, registry)
    if point is None:
        raise StructureError(f"action document {path} has no designated event")
    return PointedAction(action, point)
