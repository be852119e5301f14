from __future__ import annotations

import pytest

from dlm.action import (
    ActionModel,
    PointedAction,
    PostMap,
    ShowMinus,
    ShowPlus,
    TellMinus,
    TellPlus,
    expand,
    validate_action,
)
from dlm.errors import StructureError
from dlm.formula import (
    And,
    Believes,
    Lit,
    Not,
    Obs,
    ObsAtom,
    Prop,
    Registry,
    conj,
)

from oracles import naive_euclidean, naive_serial, naive_transitive

REG = Registry(("a", "b"), ("p", "l", "r"))

FULL = {("e", "e"), ("e", "f"), ("f", "e"), ("f", "f")}
SPECTATOR = {("e", "f"), ("f", "f")}


def oat(agent, prop, positive=True):
    return ObsAtom(agent, Lit(prop, positive))


def obs(agent, prop, positive=True):
    return Obs(oat(agent, prop, positive))


class TestTellExpansion:
    def test_tell_plus_structure(self):
        pa = expand(TellPlus("a", Prop("p")), ("b",))
        a = pa.action
        assert pa.point == "e"
        assert a.events == ("e", "f")
        assert a.rel("a") == frozenset(FULL)
        assert a.rel("b") == frozenset(SPECTATOR)
        assert a.pre["e"] == Believes("a", Prop("p"))
        assert a.pre["f"] == And(Prop("p"), Believes("a", Prop("p")))
        assert a.post["e"].is_identity() and a.post["f"].is_identity()

    def test_tell_minus_negates_the_actor_belief(self):
        pa = expand(TellMinus("a", Not(Prop("p"))), ("b",))
        a = pa.action
        # the negation of ~p collapses to p in the actor's precondition
        assert a.pre["e"] == Believes("a", Prop("p"))
        assert a.pre["f"] == And(Not(Prop("p")), Believes("a", Not(Prop("p"))))
        assert a.rel("a") == frozenset(FULL)

    def test_tell_posts_are_identity_on_every_atom(self):
        for expr in (TellPlus("a", Prop("p")), TellMinus("a", Prop("p"))):
            pa = expand(expr, ("b",))
            for e in pa.action.events:
                assert pa.action.post[e].is_identity()


class TestShowExpansion:
    def test_show_plus_reveal(self):
        pa = expand(ShowPlus("a", (Lit("l"), Lit("r", False))), ("b",))
        a = pa.action
        assert a.rel("a") == frozenset(FULL)
        assert a.rel("b") == frozenset(SPECTATOR)
        assert a.pre["e"] == conj(
            [Prop("l"), Not(Prop("r")), obs("a", "l"), obs("a", "r", False)]
        )
        assert a.pre["f"] == conj([Not(obs("a", "l", False)), Not(obs("a", "r", True))])
        expected_post = PostMap(
            {
                "l": True,
                "r": False,
                oat("b", "l"): True,
                oat("b", "l", False): False,
                oat("b", "r", False): True,
                oat("b", "r"): False,
            }
        )
        assert a.post["e"] == expected_post
        assert a.post["f"] == expected_post

    def test_show_minus_fake_pass(self):
        pa = expand(ShowMinus("a", (Lit("r"), Lit("l", False))), ("b",))
        a = pa.action
        assert a.rel("a") == frozenset({("e", "e"), ("f", "f"), ("f", "e")})
        assert a.rel("b") == frozenset(SPECTATOR)
        assert a.pre["e"] == conj(
            [Not(Prop("r")), Prop("l"), obs("a", "r", False), obs("a", "l")]
        )
        assert a.pre["f"] == conj([Not(obs("b", "r", False)), Not(obs("b", "l"))])
        assert a.post["e"] == PostMap(
            {
                "r": False,
                "l": True,
                oat("b", "r"): True,
                oat("b", "r", False): False,
                oat("b", "l", False): True,
                oat("b", "l"): False,
            }
        )
        assert a.post["f"] == PostMap(
            {
                "r": True,
                "l": False,
                oat("a", "r"): True,
                oat("a", "r", False): False,
                oat("a", "l", False): True,
                oat("a", "l"): False,
                oat("b", "r"): True,
                oat("b", "r", False): False,
                oat("b", "l", False): True,
                oat("b", "l"): False,
            }
        )

    def test_show_minus_single_negative_literal(self):
        pa = expand(ShowMinus("a", (Lit("p", False),)), ("b",))
        a = pa.action
        # observing "the negation of ~p" is observing p itself
        assert a.pre["e"] == And(Prop("p"), obs("a", "p"))
        assert a.pre["f"] == Not(obs("b", "p"))
        assert a.post["e"] == PostMap(
            {"p": True, oat("b", "p", False): True, oat("b", "p"): False}
        )

    def test_multi_spectator_replicates_the_pattern(self):
        reg = Registry(("a", "b", "c"), ("p",))
        pa = ShowPlus("a", (Lit("p"),)).resolve(reg)
        a = pa.action
        assert a.rel("b") == frozenset(SPECTATOR)
        assert a.rel("c") == frozenset(SPECTATOR)
        assert a.post["e"].get(oat("b", "p")) is True
        assert a.post["e"].get(oat("c", "p")) is True
        pa2 = ShowMinus("a", (Lit("p", False),)).resolve(reg)
        assert pa2.action.pre["f"] == conj([Not(obs("b", "p")), Not(obs("c", "p"))])

    def test_expand_is_deterministic(self):
        t = ShowMinus("a", (Lit("r"), Lit("l", False)))
        assert expand(t, ("b",)) == expand(t, ("b",))
        assert expand(t, ("b",)) == expand(t, {"b"})


class TestExpandErrors:
    def test_repeated_prop_rejected(self):
        with pytest.raises(ValueError, match="repeats"):
            ShowPlus("a", (Lit("p"), Lit("p", False)))

    def test_empty_payload_rejected(self):
        with pytest.raises(ValueError):
            ShowPlus("a", ())

    def test_empty_audience_rejected(self):
        with pytest.raises(ValueError, match="audience"):
            expand(TellPlus("a", Prop("p")), ())

    def test_actor_in_audience_rejected(self):
        with pytest.raises(ValueError, match="actor"):
            expand(TellPlus("a", Prop("p")), ("a", "b"))


class TestPostMapDiscipline:
    def test_pairing_required(self):
        with pytest.raises(StructureError, match="counterpart"):
            PostMap({oat("b", "p"): True})

    def test_both_true_rejected(self):
        with pytest.raises(StructureError, match="true"):
            PostMap({oat("b", "p"): True, oat("b", "p", False): True})

    def test_both_false_allowed(self):
        pm = PostMap({oat("b", "p"): False, oat("b", "p", False): False})
        assert pm.get(oat("b", "p")) is False

    def test_non_boolean_rejected(self):
        with pytest.raises(StructureError):
            PostMap({"p": "yes"})

    def test_expanded_actions_respect_discipline(self):
        reg = Registry(("a", "b"), ("p", "l", "r"))
        for expr in (
            TellPlus("a", Prop("p")),
            TellMinus("a", Prop("p")),
            ShowPlus("a", (Lit("l"), Lit("r", False))),
            ShowMinus("a", (Lit("r"), Lit("l", False))),
        ):
            pa = expr.resolve(reg)
            for e in pa.action.events:
                for atom, value in pa.action.post[e].items():
                    if isinstance(atom, ObsAtom):
                        partner = pa.action.post[e].get(atom.paired())
                        assert partner is not None
                        assert not (value and partner)


class TestValidateAction:
    def test_tell_plus_is_strict_valid(self):
        pa = expand(TellPlus("a", Prop("p")), ("b",))
        report = validate_action(pa.action, "strict")
        assert report.valid
        for agent in ("a", "b"):
            rel = pa.action.rel(agent)
            assert naive_euclidean(pa.action.events, rel)
            assert naive_transitive(pa.action.events, rel)
            assert naive_serial(pa.action.events, rel)

    def test_show_minus_actor_relation_is_not_euclidean(self):
        pa = expand(ShowMinus("a", (Lit("p"),)), ("b",))
        rel = pa.action.rel("a")
        assert not naive_euclidean(pa.action.events, rel)
        report = validate_action(pa.action, "strict")
        assert not report.per_agent["a"].euclidean
        assert not report.valid
        assert validate_action(pa.action, "lenient").valid

    def test_structural_errors_are_hard(self):
        with pytest.raises(StructureError):
            ActionModel((), {}, {}, {})
        with pytest.raises(StructureError):
            ActionModel(("e",), {"a": {("e", "x")}}, {"e": Prop("p")}, {"e": PostMap()})
        with pytest.raises(StructureError):
            ActionModel(("e",), {}, {}, {"e": PostMap()})

    def test_pointed_action_point_checked(self):
        pa = expand(TellPlus("a", Prop("p")), ("b",))
        with pytest.raises(StructureError):
            PointedAction(pa.action, "zz")
