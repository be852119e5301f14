"""Model-checking toolkit for a dynamic logic of misdirection.

Observational epistemic models pair ordinary doxastic accessibility with
per-agent observation atoms; action models with postconditions update both
through product update.  The package parses and evaluates the dynamic
language, compiles it to its static fragment, and verifies validities by
bounded enumeration.
"""

from .action import (
    ActionModel,
    NamedAction,
    PointedAction,
    PostMap,
    ShowMinus,
    ShowPlus,
    TellMinus,
    TellPlus,
    expand,
    validate_action,
)
from .derived import (
    dis,
    epistemic_obs,
    sim,
    strong_belief,
    strong_epistemic_obs,
    surprise,
)
from .errors import BudgetExceededError, StructureError
from .explorer import (
    Bounds,
    CheckResult,
    WitnessResult,
    check_validity,
    enumerate_models,
    find_witness,
)
from .formula import (
    And,
    Believes,
    DynBox,
    Formula,
    Lit,
    Not,
    Obs,
    ObsAtom,
    ParseError,
    Prop,
    Registry,
    Truth,
    bel_hat,
    diamond,
    false_,
    iff,
    implies,
    is_static,
    or_,
    parse,
    render,
)
from .kripke import (
    FrameReport,
    Model,
    PointedModel,
    holds_everywhere,
    satisfies,
    satisfying_worlds,
    validate,
)
from .reduce import dynamic_depth, simplify, translate
from .update import apply, compound, preservation_report, product

__all__ = [name for name in dir() if not name.startswith("_")]
