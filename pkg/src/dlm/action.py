"""Action models with preconditions and postconditions.

An action model is a finite set of events with one accessibility relation
per agent, a precondition formula per event and a finite postcondition
assignment per event.  The four action types (truthful/untruthful telling,
genuine/bogus showing) expand into fixed two-event pointed action models
parameterized by the actor and the payload.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional

from .errors import StructureError
from .formula import (
    ActionExpr,
    Atom,
    And,
    Believes,
    Formula,
    Lit,
    Not,
    Obs,
    ObsAtom,
    Registry,
    atom_key,
    conj,
    lit_formula,
    negate,
    render,
)


class PostMap:
    """Finite assignment of truth values to atoms, applied during update.

    Atoms outside the map keep their old value.  Observation atoms come in
    pairs: if ``obs(a,p)`` is assigned then ``obs(a,~p)`` must be too, and
    the pair is never assigned true together.
    """

    __slots__ = ("_assignments", "_items")

    def __init__(self, assignments: Mapping[Atom, bool] | Iterable[tuple[Atom, bool]] = ()):
        items = dict(assignments)
        for atom, value in items.items():
            if not isinstance(atom, (str, ObsAtom)):
                raise StructureError(f"postcondition key is not an atom: {atom!r}")
            if not isinstance(value, bool):
                raise StructureError(f"postcondition value for {atom} must be a boolean")
            if isinstance(atom, ObsAtom):
                partner = atom.paired()
                if partner not in items:
                    raise StructureError(
                        f"postcondition assigns {atom} without its counterpart {partner}"
                    )
                if value and items[partner]:
                    raise StructureError(
                        f"postcondition assigns both {atom} and {partner} true"
                    )
        self._assignments = items
        self._items = tuple(sorted(items.items(), key=lambda kv: atom_key(kv[0])))

    def get(self, atom: Atom) -> Optional[bool]:
        return self._assignments.get(atom)

    def __contains__(self, atom: Atom) -> bool:
        return atom in self._assignments

    def items(self) -> tuple[tuple[Atom, bool], ...]:
        return self._items

    def domain(self) -> tuple[Atom, ...]:
        return tuple(atom for atom, _ in self._items)

    def is_identity(self) -> bool:
        return not self._items

    def __eq__(self, other) -> bool:
        return isinstance(other, PostMap) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        inner = ", ".join(f"{atom}:={str(v).lower()}" for atom, v in self._items)
        return f"PostMap({inner})"


class ActionModel:
    """Immutable action model: events, per-agent relations, pre and post."""

    __slots__ = ("events", "relations", "pre", "post", "_event_set", "_hash")

    def __init__(
        self,
        events: Iterable[str],
        relations: Mapping[str, Iterable[tuple[str, str]]],
        pre: Mapping[str, Formula],
        post: Mapping[str, PostMap],
    ):
        events = tuple(events)
        if not events:
            raise StructureError("action model needs at least one event")
        if len(set(events)) != len(events):
            raise StructureError("duplicate event names")
        event_set = frozenset(events)
        rels: dict[str, frozenset[tuple[str, str]]] = {}
        for agent, pairs in relations.items():
            pairs = frozenset((str(e), str(f)) for e, f in pairs)
            for e, f in pairs:
                if e not in event_set or f not in event_set:
                    raise StructureError(f"relation for {agent} references unknown event")
            rels[agent] = pairs
        for e in events:
            if e not in pre:
                raise StructureError(f"event {e!r} has no precondition")
            if not isinstance(pre[e], Formula):
                raise StructureError(f"precondition of {e!r} is not a formula")
            if e not in post or not isinstance(post[e], PostMap):
                raise StructureError(f"event {e!r} has no postcondition map")
        self.events = events
        self.relations = rels
        self.pre = {e: pre[e] for e in events}
        self.post = {e: post[e] for e in events}
        self._event_set = event_set
        self._hash = None

    def rel(self, agent: str) -> frozenset[tuple[str, str]]:
        return self.relations.get(agent, frozenset())

    def successors(self, agent: str, event: str) -> tuple[str, ...]:
        pairs = self.rel(agent)
        return tuple(f for f in self.events if (event, f) in pairs)

    def _key(self):
        return (
            self.events,
            tuple(sorted((a, tuple(sorted(r))) for a, r in self.relations.items())),
            tuple(self.pre[e] for e in self.events),
            tuple(self.post[e] for e in self.events),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, ActionModel) and self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._key()))
        return self._hash

    def __repr__(self) -> str:
        return f"ActionModel(events={self.events!r})"


@dataclass(frozen=True)
class PointedAction:
    action: ActionModel
    point: str

    def __post_init__(self):
        if self.point not in self.action.events:
            raise StructureError(f"designated event {self.point!r} not in action model")


# ---------------------------------------------------------------------------
# Action types

@dataclass(frozen=True)
class TellPlus(ActionExpr):
    """Truthful announcement of the payload formula by the actor."""

    actor: str
    payload: Formula

    def resolve(self, registry: Registry) -> PointedAction:
        return expand(self, registry.audience(self.actor))

    def unparse(self) -> str:
        return f"tell+({self.actor},{render(self.payload)})"


@dataclass(frozen=True)
class TellMinus(ActionExpr):
    """Untruthful announcement: the actor believes the payload's negation."""

    actor: str
    payload: Formula

    def resolve(self, registry: Registry) -> PointedAction:
        return expand(self, registry.audience(self.actor))

    def unparse(self) -> str:
        return f"tell-({self.actor},{render(self.payload)})"


def _check_payload(lits: tuple[Lit, ...]):
    if not lits:
        raise ValueError("show payload needs at least one literal")
    if len({l.prop for l in lits}) != len(lits):
        raise ValueError("show payload repeats a prop")


@dataclass(frozen=True)
class ShowPlus(ActionExpr):
    """Genuine visual demonstration of a conjunction of literals."""

    actor: str
    payload: tuple[Lit, ...]

    def __post_init__(self):
        object.__setattr__(self, "payload", tuple(self.payload))
        _check_payload(self.payload)

    def resolve(self, registry: Registry) -> PointedAction:
        return expand(self, registry.audience(self.actor))

    def unparse(self) -> str:
        lits = " & ".join(str(l) for l in self.payload)
        return f"show+({self.actor},{lits})"


@dataclass(frozen=True)
class ShowMinus(ActionExpr):
    """Bogus visual demonstration: the payload literals are in fact false."""

    actor: str
    payload: tuple[Lit, ...]

    def __post_init__(self):
        object.__setattr__(self, "payload", tuple(self.payload))
        _check_payload(self.payload)

    def resolve(self, registry: Registry) -> PointedAction:
        return expand(self, registry.audience(self.actor))

    def unparse(self) -> str:
        lits = " & ".join(str(l) for l in self.payload)
        return f"show-({self.actor},{lits})"


ActionType = (TellPlus, TellMinus, ShowPlus, ShowMinus)


@dataclass(frozen=True)
class NamedAction(ActionExpr):
    """A reference to an action model loaded from a file, usable as ``@name``."""

    name: str
    pointed: PointedAction

    def resolve(self, registry: Registry) -> PointedAction:
        return self.pointed

    def unparse(self) -> str:
        return f"@{self.name}"


# ---------------------------------------------------------------------------
# Expansion of action types into concrete pointed action models

_E, _F = "e", "f"
_FULL = frozenset({(_E, _E), (_E, _F), (_F, _E), (_F, _F)})
_SPECTATOR = frozenset({(_E, _F), (_F, _F)})
_SHOW_MINUS_ACTOR = frozenset({(_E, _E), (_F, _F), (_F, _E)})


def expand(t: ActionExpr, audience: Iterable[str]) -> PointedAction:
    """Build the two-event pointed action model for an action type.

    ``audience`` must be every registered agent except the actor.  Equal
    type and audience always produce structurally identical results.
    """
    if not isinstance(t, ActionType):
        raise ValueError(f"not an action type: {t!r}")
    audience = tuple(sorted(set(audience)))
    if not audience:
        raise ValueError("audience must not be empty")
    if t.actor in audience:
        raise ValueError("actor cannot be part of the audience")
    return _expand_cached(t, audience)


@lru_cache(maxsize=None)
def _expand_cached(t, audience: tuple[str, ...]) -> PointedAction:
    actor = t.actor
    if isinstance(t, (TellPlus, TellMinus)):
        relations = {actor: _FULL, **{b: _SPECTATOR for b in audience}}
        if isinstance(t, TellPlus):
            pre_e = Believes(actor, t.payload)
        else:
            pre_e = Believes(actor, negate(t.payload))
        pre_f = And(t.payload, Believes(actor, t.payload))
        identity = PostMap()
        model = ActionModel(
            (_E, _F),
            relations,
            {_E: pre_e, _F: pre_f},
            {_E: identity, _F: identity},
        )
        return PointedAction(model, _E)

    lits = t.payload
    if isinstance(t, ShowPlus):
        relations = {actor: _FULL, **{b: _SPECTATOR for b in audience}}
        pre_e = conj(
            [lit_formula(l) for l in lits] + [Obs(ObsAtom(actor, l)) for l in lits]
        )
        pre_f = conj([Not(Obs(ObsAtom(actor, l.negated()))) for l in lits])
        assigns: dict[Atom, bool] = {}
        for l in lits:
            assigns[l.prop] = l.positive
        for b in audience:
            for l in lits:
                assigns[ObsAtom(b, l)] = True
                assigns[ObsAtom(b, l.negated())] = False
        post = PostMap(assigns)
        model = ActionModel(
            (_E, _F),
            relations,
            {_E: pre_e, _F: pre_f},
            {_E: post, _F: post},
        )
        return PointedAction(model, _E)

    # show-: the actor keeps apart the bogus event; spectators cannot tell.
    relations = {actor: _SHOW_MINUS_ACTOR, **{b: _SPECTATOR for b in audience}}
    pre_e = conj(
        [lit_formula(l.negated()) for l in lits]
        + [Obs(ObsAtom(actor, l.negated())) for l in lits]
    )
    pre_f = conj(
        [Not(Obs(ObsAtom(b, l.negated()))) for b in audience for l in lits]
    )
    assigns_e: dict[Atom, bool] = {}
    for l in lits:
        assigns_e[l.prop] = not l.positive
    for b in audience:
        for l in lits:
            assigns_e[ObsAtom(b, l)] = True
            assigns_e[ObsAtom(b, l.negated())] = False
    assigns_f: dict[Atom, bool] = {}
    for l in lits:
        assigns_f[l.prop] = l.positive
    for x in (actor,) + audience:
        for l in lits:
            assigns_f[ObsAtom(x, l)] = True
            assigns_f[ObsAtom(x, l.negated())] = False
    model = ActionModel(
        (_E, _F),
        relations,
        {_E: pre_e, _F: pre_f},
        {_E: PostMap(assigns_e), _F: PostMap(assigns_f)},
    )
    return PointedAction(model, _E)


def validate_action(a: ActionModel, strictness: str = "strict"):
    """Frame report for an action model.

    ``strict`` requires every relation to be Euclidean, transitive and
    serial; ``lenient`` only gates on structure and postcondition
    discipline (both already hard construction errors).
    """
    from . import kripke

    if strictness not in ("strict", "lenient"):
        raise ValueError(f"unknown strictness {strictness!r}")
    per_agent = {
        agent: kripke.relation_flags(a.events, a.rel(agent))
        for agent in sorted(a.relations)
    }
    if strictness == "strict":
        valid = all(
            fl.euclidean and fl.transitive and fl.serial for fl in per_agent.values()
        )
    else:
        valid = True
    return kripke.FrameReport(
        per_agent=per_agent,
        obs_consistent=True,
        empty=False,
        strictness=strictness,
        valid=valid,
    )
