from __future__ import annotations

import pytest

from dlm.formula import Lit, ObsAtom, Registry
from dlm.kripke import Model, PointedModel


@pytest.fixture
def reg_ab_p() -> Registry:
    return Registry(("a", "b"), ("p",))


@pytest.fixture
def reg_ab_pq() -> Registry:
    return Registry(("a", "b"), ("p", "q"))


def build_example1() -> PointedModel:
    """Two-world model: a is sure it observes p, b cannot tell p from ~p."""
    registry = Registry(("a", "b"), ("p",))
    model = Model(
        registry,
        ("w", "v"),
        {
            "a": {("w", "w"), ("v", "v")},
            "b": {("w", "w"), ("w", "v"), ("v", "w"), ("v", "v")},
        },
        {
            "w": ["p", ObsAtom("a", Lit("p", True))],
            "v": [ObsAtom("a", Lit("p", False)), ObsAtom("b", Lit("p", False))],
        },
    )
    return PointedModel(model, "w")


@pytest.fixture
def example1() -> PointedModel:
    return build_example1()
