"""Builders for the derived misdirection vocabulary.

Epistemic observation, strong observation, strong belief, simulation,
dissimulation and the three surprise readings are all plain formulas of
the core language; these helpers assemble them.  The CLI exposes them as
the macros ``O``, ``Bs``, ``Sim``, ``Dis`` and ``Surprise``.
"""

from __future__ import annotations

from typing import Iterable

from .action import ShowMinus, ShowPlus, TellMinus, TellPlus
from .formula import (
    And,
    Believes,
    Formula,
    Lit,
    Not,
    Obs,
    ObsAtom,
    Prop,
    as_literal_conj,
    diamond,
    disj,
    lit_formula,
    or_,
)

SURPRISE_KINDS = ("mismatch", "strong_mismatch", "astonishment")


def epistemic_obs(agent: str, lit: Lit) -> Formula:
    """Observing a literal while believing that one observes it."""
    atom = Obs(ObsAtom(agent, lit))
    return And(atom, Believes(agent, atom))


def strong_epistemic_obs(subject: str, actors: Iterable[str], lit: Lit) -> Formula:
    """Epistemic observation backed by an executable truthful action of
    some other agent that would leave the subject believing the literal."""
    actors = _actor_list(subject, actors)
    body = lit_formula(lit)
    belief = Believes(subject, body)
    disjuncts = []
    for actor in actors:
        disjuncts.append(diamond(TellPlus(actor, body), belief))
        disjuncts.append(diamond(ShowPlus(actor, (lit,)), belief))
    return And(epistemic_obs(subject, lit), disj(disjuncts))


def strong_belief(subject: str, actors: Iterable[str], f: Formula) -> Formula:
    """Belief robust under some other agent's truthful action with the same
    content.  The visual disjunct only exists when the content is a
    conjunction of literals, since showing accepts nothing else."""
    actors = _actor_list(subject, actors)
    belief = Believes(subject, f)
    lits = as_literal_conj(f)
    disjuncts = []
    for actor in actors:
        disjuncts.append(diamond(TellPlus(actor, f), belief))
        if lits is not None:
            disjuncts.append(diamond(ShowPlus(actor, lits), belief))
    return And(belief, disj(disjuncts))


def sim(actor: str, addressee: str, prop: str) -> Formula:
    """Simulation of the falsity of ``prop`` towards the addressee: an
    untruthful telling or showing of ``~prop`` that takes effect."""
    if actor == addressee:
        raise ValueError("simulation needs two distinct agents")
    neg = Lit(prop, False)
    verbal = And(
        Believes(actor, Prop(prop)),
        diamond(TellMinus(actor, lit_formula(neg)), Believes(addressee, lit_formula(neg))),
    )
    visual = And(
        Obs(ObsAtom(actor, Lit(prop, True))),
        diamond(ShowMinus(actor, (neg,)), Obs(ObsAtom(addressee, neg))),
    )
    return or_(verbal, visual)


def dis(actor: str, addressee: str, prop: str) -> Formula:
    """Dissimulation of ``prop``: the addressee holds the wrong picture and
    no truthful action of the actor is responsible for it."""
    if actor == addressee:
        raise ValueError("dissimulation needs two distinct agents")
    pos = Lit(prop, True)
    neg = Lit(prop, False)
    verbal = And(
        And(Believes(actor, Prop(prop)), Believes(addressee, lit_formula(neg))),
        Not(diamond(TellPlus(actor, Prop(prop)), Believes(addressee, lit_formula(neg)))),
    )
    visual = And(
        And(Obs(ObsAtom(actor, pos)), Obs(ObsAtom(addressee, neg))),
        Not(diamond(ShowPlus(actor, (pos,)), Obs(ObsAtom(addressee, neg)))),
    )
    return or_(verbal, visual)


def surprise(kind: str, agent: str, prop: str) -> Formula:
    """Surprise of ``agent`` about ``prop`` holding.

    ``mismatch``: the fact was not believed; ``strong_mismatch``: its
    negation was believed; ``astonishment``: the agent had no belief
    either way.
    """
    p = Prop(prop)
    if kind == "mismatch":
        return And(Not(Believes(agent, p)), p)
    if kind == "strong_mismatch":
        return And(Believes(agent, Not(p)), p)
    if kind == "astonishment":
        return And(And(p, Not(Believes(agent, p))), Not(Believes(agent, Not(p))))
    raise ValueError(f"unknown surprise kind {kind!r}; pick one of {SURPRISE_KINDS}")


def _actor_list(subject: str, actors: Iterable[str]) -> tuple[str, ...]:
    actors = tuple(sorted(set(actors)))
    if not actors:
        raise ValueError("at least one potential actor is required")
    if subject in actors:
        raise ValueError("the subject cannot act on itself here")
    return actors
