"""Observational epistemic models and the satisfaction relation.

A model is a finite set of worlds, one binary accessibility relation per
agent and a valuation mapping each world to the set of atoms true there
(closed world: absent atoms are false).  An observational epistemic model
additionally has Euclidean, transitive, serial relations and never makes
an agent observe a literal and its opposite in the same world.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import StructureError
from .formula import (
    And,
    Atom,
    Believes,
    DynBox,
    Formula,
    Not,
    Obs,
    ObsAtom,
    Prop,
    Registry,
    Truth,
)


@dataclass(frozen=True)
class AgentFrameFlags:
    euclidean: bool
    transitive: bool
    serial: bool


@dataclass(frozen=True, eq=True)
class FrameReport:
    """Per-agent frame properties plus the global validity verdict."""

    per_agent: dict[str, AgentFrameFlags]
    obs_consistent: bool
    empty: bool
    strictness: str
    valid: bool

    __hash__ = None

    @property
    def euclidean(self) -> bool:
        return all(f.euclidean for f in self.per_agent.values())

    @property
    def transitive(self) -> bool:
        return all(f.transitive for f in self.per_agent.values())

    @property
    def serial(self) -> bool:
        return all(f.serial for f in self.per_agent.values())


def relation_flags(domain: Iterable[str], pairs: frozenset[tuple[str, str]]) -> AgentFrameFlags:
    """Brute-force Euclidean/transitive/serial check of a finite relation."""
    succ: dict[str, set[str]] = {x: set() for x in domain}
    for x, y in pairs:
        succ[x].add(y)
    euclidean = True
    transitive = True
    serial = True
    for x in succ:
        sx = succ[x]
        if not sx:
            serial = False
        for y in sx:
            if not sx <= succ[y]:
                euclidean = False
            if not succ[y] <= sx:
                transitive = False
    return AgentFrameFlags(euclidean, transitive, serial)


class Model:
    """Immutable relational model over a registry of agents and props."""

    __slots__ = ("registry", "worlds", "relations", "valuation", "world_set", "_succ", "_hash")

    def __init__(
        self,
        registry: Registry,
        worlds: Iterable[str],
        relations: Mapping[str, Iterable[tuple[str, str]]],
        valuation: Mapping[str, Iterable[Atom]],
    ):
        worlds = tuple(worlds)
        if len(set(worlds)) != len(worlds):
            raise StructureError("duplicate world names")
        world_set = frozenset(worlds)
        rels: dict[str, frozenset[tuple[str, str]]] = {}
        for agent, pairs in relations.items():
            if agent not in registry.agents:
                raise StructureError(f"relation for unregistered agent {agent!r}")
            pairs = frozenset((str(w), str(v)) for w, v in pairs)
            for w, v in pairs:
                if w not in world_set or v not in world_set:
                    raise StructureError(f"relation for {agent!r} references unknown world")
            rels[agent] = pairs
        for agent in registry.agents:
            rels.setdefault(agent, frozenset())
        vals: dict[str, frozenset[Atom]] = {}
        for world, atoms in valuation.items():
            if world not in world_set:
                raise StructureError(f"valuation references unknown world {world!r}")
            atoms = frozenset(atoms)
            for atom in atoms:
                if isinstance(atom, ObsAtom):
                    if atom.agent not in registry.agents or atom.lit.prop not in registry.props:
                        raise StructureError(f"valuation uses unregistered atom {atom}")
                elif isinstance(atom, str):
                    if atom not in registry.props:
                        raise StructureError(f"valuation uses unregistered prop {atom!r}")
                else:
                    raise StructureError(f"not an atom: {atom!r}")
            vals[world] = atoms
        for world in worlds:
            vals.setdefault(world, frozenset())
        self.registry = registry
        self.worlds = worlds
        self.relations = rels
        self.valuation = vals
        self.world_set = world_set
        self._succ = None
        self._hash = None

    @classmethod
    def _unchecked(
        cls,
        registry: Registry,
        worlds: tuple[str, ...],
        relations: dict[str, frozenset[tuple[str, str]]],
        valuation: dict[str, frozenset[Atom]],
    ) -> "Model":
        """Fast path for generated models whose structure holds by construction."""
        m = object.__new__(cls)
        m.registry = registry
        m.worlds = worlds
        m.relations = relations
        m.valuation = valuation
        m.world_set = frozenset(worlds)
        m._succ = None
        m._hash = None
        return m

    @property
    def is_empty(self) -> bool:
        return not self.worlds

    def succ(self, agent: str, world: str) -> tuple[str, ...]:
        """Successor worlds of ``world`` under the agent's relation."""
        if self._succ is None:
            table: dict[str, dict[str, list[str]]] = {}
            order = {w: i for i, w in enumerate(self.worlds)}
            for agent_name, pairs in self.relations.items():
                per = {w: [] for w in self.worlds}
                for w, v in sorted(pairs, key=lambda p: (order[p[0]], order[p[1]])):
                    per[w].append(v)
                table[agent_name] = {w: tuple(vs) for w, vs in per.items()}
            self._succ = table
        return self._succ[agent][world]

    def atoms_at(self, world: str) -> frozenset[Atom]:
        return self.valuation[world]

    def _key(self):
        from .formula import atom_key

        return (
            self.registry,
            self.world_set,
            tuple(sorted((a, tuple(sorted(r))) for a, r in self.relations.items())),
            tuple(sorted((w, tuple(sorted(v, key=atom_key))) for w, v in self.valuation.items())),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Model) and self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        return f"Model(worlds={self.worlds!r})"


@dataclass(frozen=True)
class PointedModel:
    model: Model
    point: str

    def __post_init__(self):
        if self.point not in self.model.world_set:
            raise StructureError(f"designated world {self.point!r} not in model")


def _obs_consistent(m: Model) -> bool:
    for atoms in m.valuation.values():
        for atom in atoms:
            if isinstance(atom, ObsAtom) and atom.paired() in atoms:
                return False
    return True


def validate(m: Model, strictness: str = "observational") -> FrameReport:
    """Frame report for a model.

    ``observational`` strictness requires Euclidean, transitive and serial
    relations plus observation consistency; ``relational`` only gates on
    structure and observation consistency (products may lose seriality but
    must remain usable).  Structural damage raises in both modes.
    """
    if strictness not in ("observational", "relational"):
        raise ValueError(f"unknown strictness {strictness!r}")
    for agent, pairs in m.relations.items():
        for w, v in pairs:
            if w not in m.world_set or v not in m.world_set:
                raise StructureError(f"relation for {agent!r} references unknown world")
    for world in m.valuation:
        if world not in m.world_set:
            raise StructureError(f"valuation references unknown world {world!r}")
    per_agent = {
        agent: relation_flags(m.worlds, m.relations[agent]) for agent in m.registry.agents
    }
    obs_ok = _obs_consistent(m)
    empty = m.is_empty
    if strictness == "observational":
        valid = (
            not empty
            and obs_ok
            and all(f.euclidean and f.transitive and f.serial for f in per_agent.values())
        )
    else:
        valid = not empty and obs_ok
    return FrameReport(
        per_agent=per_agent,
        obs_consistent=obs_ok,
        empty=empty,
        strictness=strictness,
        valid=valid,
    )


def satisfies(pm: PointedModel, f: Formula) -> bool:
    """Pointwise truth of ``f`` at a pointed model.

    A dynamic box is true when its precondition fails at the point, and
    otherwise defers to the body at the updated model's matching world.
    """
    m, w = pm.model, pm.point
    if isinstance(f, Truth):
        return True
    if isinstance(f, Prop):
        return f.name in m.valuation[w]
    if isinstance(f, Obs):
        return f.atom in m.valuation[w]
    if isinstance(f, Not):
        return not satisfies(pm, f.sub)
    if isinstance(f, And):
        return satisfies(pm, f.left) and satisfies(pm, f.right)
    if isinstance(f, Believes):
        return all(satisfies(PointedModel(m, v), f.sub) for v in m.succ(f.agent, w))
    if isinstance(f, DynBox):
        from . import update

        pa = f.act.resolve(m.registry)
        nxt = update.apply(pm, pa)
        if nxt is None:
            return True
        return satisfies(nxt, f.body)
    raise TypeError(f"not a formula: {f!r}")


def satisfying_worlds(m: Model, f: Formula) -> frozenset[str]:
    """All worlds of ``m`` where ``f`` holds, computed bottom-up.

    Equivalent to pointwise satisfaction but shares subformula labelling
    and product computations across worlds.
    """
    if isinstance(f, Truth):
        return m.world_set
    if isinstance(f, Prop):
        return frozenset(w for w in m.worlds if f.name in m.valuation[w])
    if isinstance(f, Obs):
        return frozenset(w for w in m.worlds if f.atom in m.valuation[w])
    if isinstance(f, Not):
        return m.world_set - satisfying_worlds(m, f.sub)
    if isinstance(f, And):
        return satisfying_worlds(m, f.left) & satisfying_worlds(m, f.right)
    if isinstance(f, Believes):
        sub = satisfying_worlds(m, f.sub)
        pairs = m.relations[f.agent]
        bad = {w for w, v in pairs if v not in sub}
        return frozenset(w for w in m.worlds if w not in bad)
    if isinstance(f, DynBox):
        from . import update

        pa = f.act.resolve(m.registry)
        prod = update.product(m, pa.action)
        body = satisfying_worlds(prod, f.body)
        out = []
        for w in m.worlds:
            cid = update.compound(w, pa.point)
            if cid not in prod.world_set or cid in body:
                out.append(w)
        return frozenset(out)
    raise TypeError(f"not a formula: {f!r}")


def holds_everywhere(m: Model, f: Formula) -> bool:
    """Global truth: ``f`` holds at every world of ``m``."""
    return satisfying_worlds(m, f) == m.world_set
