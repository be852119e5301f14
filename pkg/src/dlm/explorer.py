"""Bounded enumeration of models: validity checks and witness search.

Enumeration ranges over every model with canonical world names ``w1..wn``
for each n up to the bound, every combination of per-agent relations in
the requested frame class, every observation-consistent valuation over the
atom basis, and every choice of point, in a fixed deterministic order (no
isomorphism reduction).  This is a desk-scale surrogate for quantifying
over all pointed models: "valid within bounds" is not a decision
procedure.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from . import kripke
from .action import ActionType
from .errors import BudgetExceededError
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
    atom_key,
)
from .kripke import Model, PointedModel

FRAME_CLASSES = ("observational", "euclidean_transitive", "all")

# 2^(n*n) relation candidates per agent; beyond 4 worlds the filter itself
# is intractable, independent of any budget.
_MAX_RELATION_WORLDS = 4

BUDGET_ENV_VAR = "DLM_BUDGET"


@dataclass(frozen=True)
class Bounds:
    """Enumeration bounds: world count, symbol pool and frame class."""

    max_worlds: int
    agents: tuple[str, ...]
    props: tuple[str, ...]
    frame_class: str = "observational"

    def __post_init__(self):
        if self.max_worlds < 1:
            raise ValueError("max_worlds must be at least 1")
        if self.frame_class not in FRAME_CLASSES:
            raise ValueError(f"unknown frame class {self.frame_class!r}")
        object.__setattr__(self, "agents", tuple(self.agents))
        object.__setattr__(self, "props", tuple(self.props))
        Registry(self.agents, self.props)

    @property
    def registry(self) -> Registry:
        return Registry(self.agents, self.props)


@dataclass(frozen=True)
class CheckResult:
    status: str  # "valid_within_bounds" | "countermodel" | "budget_exhausted"
    countermodel: Optional[PointedModel]
    models_checked: int

    @property
    def is_valid(self) -> bool:
        return self.status == "valid_within_bounds"


@dataclass(frozen=True)
class WitnessResult:
    status: str  # "witness" | "none_within_bounds" | "budget_exhausted"
    witness: Optional[PointedModel]
    models_checked: int

    @property
    def found(self) -> bool:
        return self.status == "witness"


def world_names(n: int) -> tuple[str, ...]:
    return tuple(f"w{i + 1}" for i in range(n))


@lru_cache(maxsize=None)
def relations_in_class(n: int, frame_class: str) -> tuple[frozenset, ...]:
    """All relations over n canonical worlds passing the class filter, in
    ascending bitmask order over the lexicographic pair list."""
    if n > _MAX_RELATION_WORLDS:
        raise BudgetExceededError(
            f"relation enumeration over {n} worlds is out of reach (max {_MAX_RELATION_WORLDS})"
        )
    worlds = world_names(n)
    pairs = [(w, v) for w in worlds for v in worlds]
    out = []
    for mask in range(1 << len(pairs)):
        rel = frozenset(pairs[i] for i in range(len(pairs)) if mask >> i & 1)
        if frame_class != "all":
            flags = kripke.relation_flags(worlds, rel)
            if not (flags.euclidean and flags.transitive):
                continue
            if frame_class == "observational" and not flags.serial:
                continue
        out.append(rel)
    return tuple(out)


@lru_cache(maxsize=None)
def consistent_valuations(basis: tuple[Atom, ...]) -> tuple[frozenset, ...]:
    """All subsets of the atom basis with no observation clash, in
    ascending bitmask order."""
    if len(basis) > 22:
        raise BudgetExceededError(
            f"valuation enumeration over {len(basis)} atoms is out of reach"
        )
    index = {atom: i for i, atom in enumerate(basis)}
    clashes = []
    for atom in basis:
        if isinstance(atom, ObsAtom) and atom.lit.positive:
            partner = atom.paired()
            if partner in index:
                clashes.append((1 << index[atom]) | (1 << index[partner]))
    out = []
    for mask in range(1 << len(basis)):
        if any(mask & c == c for c in clashes):
            continue
        out.append(frozenset(basis[i] for i in range(len(basis)) if mask >> i & 1))
    return tuple(out)


def enumerate_base_models(
    bounds: Bounds, atom_basis: Optional[Iterable[Atom]] = None
) -> Iterator[Model]:
    """Every model (unpointed) within the bounds, in canonical order.

    Out-of-reach bounds are rejected up front, before anything streams.
    """
    registry = bounds.registry
    if atom_basis is None:
        basis = registry.all_atoms()
    else:
        basis = tuple(sorted(set(atom_basis), key=atom_key))
    vals = consistent_valuations(basis)
    layers = [
        (world_names(n), relations_in_class(n, bounds.frame_class))
        for n in range(1, bounds.max_worlds + 1)
    ]

    def generate():
        for worlds, rels in layers:
            for rel_combo in itertools.product(rels, repeat=len(bounds.agents)):
                relations = dict(zip(bounds.agents, rel_combo))
                for val_combo in itertools.product(vals, repeat=len(worlds)):
                    valuation = dict(zip(worlds, val_combo))
                    yield Model._unchecked(registry, worlds, relations, valuation)

    return generate()


def enumerate_models(
    bounds: Bounds,
    atom_basis: Optional[Iterable[Atom]] = None,
    budget: Optional[int] = None,
) -> Iterator[PointedModel]:
    """Every pointed model within the bounds, each exactly once, in a
    deterministic order.  Raises :class:`BudgetExceededError` when the
    stream outgrows the budget."""
    budget = _effective_budget(budget)
    count = 0
    for m in enumerate_base_models(bounds, atom_basis):
        for w in m.worlds:
            count += 1
            if budget is not None and count > budget:
                raise BudgetExceededError(
                    f"enumeration exceeded the budget of {budget} pointed models"
                )
            yield PointedModel(m, w)


def count_models(bounds: Bounds, atom_basis: Optional[Iterable[Atom]] = None) -> int:
    """Closed-form count of the pointed models :func:`enumerate_models`
    yields, computed without generating them."""
    registry = bounds.registry
    if atom_basis is None:
        basis = registry.all_atoms()
    else:
        basis = tuple(sorted(set(atom_basis), key=atom_key))
    vals = len(consistent_valuations(basis))
    total = 0
    for n in range(1, bounds.max_worlds + 1):
        rels = len(relations_in_class(n, bounds.frame_class))
        total += (rels ** len(bounds.agents)) * (vals ** n) * n
    return total


# ---------------------------------------------------------------------------
# Formula-driven atom restriction

def relevant_atoms(f: Formula, registry: Registry) -> tuple[Atom, ...]:
    """The atoms a formula's truth value can depend on: the atoms it reads,
    the atoms its actions' preconditions read, and the atoms its actions
    assign.  Satisfaction is invariant under changing any other atom."""
    atoms: set[Atom] = set()

    def walk(g: Formula):
        if isinstance(g, Prop):
            atoms.add(g.name)
        elif isinstance(g, Obs):
            atoms.add(g.atom)
        elif isinstance(g, Not):
            walk(g.sub)
        elif isinstance(g, And):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, Believes):
            walk(g.sub)
        elif isinstance(g, DynBox):
            walk(g.body)
            pa = g.act.resolve(registry)
            for e in pa.action.events:
                walk(pa.action.pre[e])
                atoms.update(pa.action.post[e].domain())

    walk(f)
    return tuple(sorted(atoms, key=atom_key))


def formula_symbols(f: Formula, registry: Registry) -> tuple[set[str], set[str]]:
    """Agents and props a formula mentions, actions included."""
    agents: set[str] = set()
    props: set[str] = set()

    def note_atom(atom: Atom):
        if isinstance(atom, ObsAtom):
            agents.add(atom.agent)
            props.add(atom.lit.prop)
        else:
            props.add(atom)

    def walk(g: Formula):
        if isinstance(g, Prop):
            props.add(g.name)
        elif isinstance(g, Obs):
            note_atom(g.atom)
        elif isinstance(g, Not):
            walk(g.sub)
        elif isinstance(g, And):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, Believes):
            agents.add(g.agent)
            walk(g.sub)
        elif isinstance(g, DynBox):
            walk(g.body)
            if isinstance(g.act, ActionType):
                agents.add(g.act.actor)
            pa = g.act.resolve(registry)
            for agent in pa.action.relations:
                agents.add(agent)
            for e in pa.action.events:
                walk(pa.action.pre[e])
                for atom in pa.action.post[e].domain():
                    note_atom(atom)

    walk(f)
    return agents, props


def _effective_budget(budget: Optional[int]) -> Optional[int]:
    if budget is not None:
        return budget
    raw = os.environ.get(BUDGET_ENV_VAR)
    return int(raw) if raw else None


def _prepare(f: Formula, bounds: Bounds, restrict_atoms: bool):
    registry = bounds.registry
    agents, props = formula_symbols(f, registry)
    if not agents <= set(bounds.agents):
        raise ValueError(f"formula mentions agents outside the bounds: {sorted(agents - set(bounds.agents))}")
    if not props <= set(bounds.props):
        raise ValueError(f"formula mentions props outside the bounds: {sorted(props - set(bounds.props))}")
    return relevant_atoms(f, registry) if restrict_atoms else None


def check_validity(
    f: Formula,
    bounds: Bounds,
    budget: Optional[int] = None,
    restrict_atoms: bool = True,
) -> CheckResult:
    """Bounded validity: the first countermodel in enumeration order, or
    the verdict that none exists within the bounds.

    With ``restrict_atoms`` (default) valuations range only over the atoms
    the formula can depend on; the verdict is the same as for the full
    atom space, and any countermodel returned is a genuine model within
    the bounds.
    """
    basis = _prepare(f, bounds, restrict_atoms)
    budget = _effective_budget(budget)
    checked = 0
    for m in enumerate_base_models(bounds, basis):
        sat = kripke.satisfying_worlds(m, f)
        for w in m.worlds:
            if budget is not None and checked >= budget:
                return CheckResult("budget_exhausted", None, checked)
            checked += 1
            if w not in sat:
                return CheckResult("countermodel", PointedModel(m, w), checked)
    return CheckResult("valid_within_bounds", None, checked)


def find_witness(
    f: Formula,
    bounds: Bounds,
    budget: Optional[int] = None,
    restrict_atoms: bool = True,
) -> WitnessResult:
    """Bounded satisfiability: the first pointed model satisfying ``f``."""
    basis = _prepare(f, bounds, restrict_atoms)
    budget = _effective_budget(budget)
    checked = 0
    for m in enumerate_base_models(bounds, basis):
        sat = kripke.satisfying_worlds(m, f)
        for w in m.worlds:
            if budget is not None and checked >= budget:
                return WitnessResult("budget_exhausted", None, checked)
            checked += 1
            if w in sat:
                return WitnessResult("witness", PointedModel(m, w), checked)
    return WitnessResult("none_within_bounds", None, checked)
