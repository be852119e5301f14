"""Product update of a model by an action model.

The product keeps exactly the (world, event) pairs whose precondition
holds, synchronizes the relations componentwise, and rewrites valuations
through the event's postcondition map (assigned atoms take their assigned
value, all others copy their value from the source world).
"""

from __future__ import annotations

from typing import Optional

from . import kripke
from .action import ActionModel, PointedAction
from .formula import Atom
from .kripke import FrameReport, Model, PointedModel


def compound(world: str, event: str) -> str:
    """Deterministic name of a product world; composes under iteration."""
    return f"({world},{event})"


def product(m: Model, a: ActionModel) -> Model:
    """The synchronous product of ``m`` with ``a``.

    The result may have an empty world set (no pair survived); callers
    that require a non-empty model must reject it, see
    :attr:`Model.is_empty`.
    """
    survivors = {e: kripke.satisfying_worlds(m, a.pre[e]) for e in a.events}
    worlds = tuple(
        compound(w, e) for w in m.worlds for e in a.events if w in survivors[e]
    )
    relations: dict[str, frozenset[tuple[str, str]]] = {}
    for agent in m.registry.agents:
        mpairs = m.relations[agent]
        apairs = a.rel(agent)
        relations[agent] = frozenset(
            (compound(w, e), compound(v, f))
            for w, v in mpairs
            for e, f in apairs
            if w in survivors[e] and v in survivors[f]
        )
    valuation: dict[str, frozenset[Atom]] = {}
    for w in m.worlds:
        base = m.valuation[w]
        for e in a.events:
            if w not in survivors[e]:
                continue
            post = a.post[e]
            if post.is_identity():
                valuation[compound(w, e)] = base
            else:
                atoms = {x for x in base if x not in post}
                atoms.update(x for x, v in post.items() if v)
                valuation[compound(w, e)] = frozenset(atoms)
    return Model._unchecked(m.registry, worlds, relations, valuation)


def apply(pm: PointedModel, pa: PointedAction) -> Optional[PointedModel]:
    """Pointed application: ``None`` when the action is not executable at
    the point (its precondition fails there)."""
    if not kripke.satisfies(pm, pa.action.pre[pa.point]):
        return None
    prod = product(pm.model, pa.action)
    return PointedModel(prod, compound(pm.point, pa.point))


def preservation_report(m: Model, a: ActionModel) -> tuple[FrameReport, FrameReport]:
    """Frame reports of ``m`` and of its product with ``a``, both at
    relational strictness; witnesses which frame properties an update
    preserves or destroys."""
    before = kripke.validate(m, "relational")
    after = kripke.validate(product(m, a), "relational")
    return before, after
