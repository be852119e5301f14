"""Built-in scenarios; currently the French Drop coin trick.

A magician (agent ``a``) holds a coin in her left hand (``l``).  She fakes
a pass to the right hand (a bogus showing of ``r & ~l``), then opens the
left hand (a genuine showing of ``l & ~r``).  The run applies both actions
in sequence and checks the expected observation and belief effects at each
stage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import kripke, update
from .action import ShowMinus, ShowPlus
from .derived import epistemic_obs
from .formula import Formula, Lit, ObsAtom, Registry, parse, render
from .kripke import Model, PointedModel

SCENARIOS = ("french_drop",)

POSTERIOR_FORMULA = (
    "l & obs(a,l) & obs(a,~r) & ~obs(a,r) & ~obs(b,r)"
    " & <show-(a,r & ~l)>(obs(a,l) & obs(a,~r) & obs(b,r) & obs(b,~l)"
    " & <show+(a,l & ~r)>(obs(b,l) & obs(b,~r)))"
)


def french_drop_registry() -> Registry:
    return Registry(agents=("a", "b"), props=("l", "r"))


def _sees(agent: str, lit: str) -> ObsAtom:
    if lit.startswith("~"):
        return ObsAtom(agent, Lit(lit[1:], False))
    return ObsAtom(agent, Lit(lit, True))


def french_drop_initial() -> PointedModel:
    """Opening state: coin in the left hand, the audience undecided between
    left, right and no coin at all; only the magician sees anything."""
    registry = french_drop_registry()
    worlds = ("w", "v", "u")
    relations = {
        "a": {("w", "w"), ("v", "v"), ("u", "u")},
        "b": {(x, y) for x in worlds for y in worlds},
    }
    valuation = {
        "w": ["l", _sees("a", "l"), _sees("a", "~r")],
        "v": ["r", _sees("a", "r"), _sees("a", "~l")],
        "u": [_sees("a", "~r"), _sees("a", "~l")],
    }
    model = Model(registry, worlds, relations, valuation)
    return PointedModel(model, "w")


def fake_pass() -> ShowMinus:
    return ShowMinus("a", (Lit("r", True), Lit("l", False)))


def reveal() -> ShowPlus:
    return ShowPlus("a", (Lit("l", True), Lit("r", False)))


@dataclass
class Step:
    name: str
    pointed: PointedModel

    @property
    def world_count(self) -> int:
        return len(self.pointed.model.worlds)


@dataclass
class Assertion:
    description: str
    formula: Optional[Formula]
    holds: bool


@dataclass
class ScenarioReport:
    name: str
    steps: list[Step] = field(default_factory=list)
    assertions: list[Assertion] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(a.holds for a in self.assertions)

    @property
    def first_failure(self) -> Optional[Assertion]:
        for a in self.assertions:
            if not a.holds:
                return a
        return None


def run_french_drop() -> ScenarioReport:
    registry = french_drop_registry()
    report = ScenarioReport("french_drop")
    initial = french_drop_initial()
    report.steps.append(Step("initial", initial))

    def check(description: str, pointed: PointedModel, f: Formula):
        report.assertions.append(
            Assertion(description, f, kripke.satisfies(pointed, f))
        )

    def expect(description: str, outcome: bool):
        report.assertions.append(Assertion(description, None, outcome))

    posterior = parse(POSTERIOR_FORMULA, registry)
    check(f"initial state satisfies {render(posterior)}", initial, posterior)

    pass_action = fake_pass().resolve(registry)
    intermediate = update.apply(initial, pass_action)
    expect("fake pass is executable at the opening state", intermediate is not None)
    if intermediate is None:
        return report
    report.steps.append(Step("after_fake_pass", intermediate))
    expect("fake pass yields 4 worlds", len(intermediate.model.worlds) == 4)
    expect(
        "the fake-pass event is impossible where the coin is elsewhere",
        "(v,e)" not in intermediate.model.world_set
        and "(u,e)" not in intermediate.model.world_set,
    )
    check(
        "audience epistemically observes the coin gone from the left hand",
        intermediate,
        epistemic_obs("b", Lit("l", False)),
    )
    check(
        "audience epistemically observes the coin in the right hand",
        intermediate,
        epistemic_obs("b", Lit("r", True)),
    )

    reveal_action = reveal().resolve(registry)
    final = update.apply(intermediate, reveal_action)
    expect("the reveal is executable after the fake pass", final is not None)
    if final is None:
        return report
    report.steps.append(Step("final", final))
    expect("the reveal yields 2 worlds", len(final.model.worlds) == 2)
    check(
        "audience epistemically observes the coin in the left hand",
        final,
        epistemic_obs("b", Lit("l", True)),
    )
    check(
        "audience epistemically observes the right hand empty",
        final,
        epistemic_obs("b", Lit("r", False)),
    )
    return report


def run(name: str) -> ScenarioReport:
    if name == "french_drop":
        return run_french_drop()
    raise ValueError(f"unknown scenario {name!r}; available: {', '.join(SCENARIOS)}")
