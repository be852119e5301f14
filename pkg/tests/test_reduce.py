from __future__ import annotations

from hypothesis import given, settings

from dlm.action import ActionModel, NamedAction, PointedAction, PostMap, TellPlus
from dlm.formula import (
    And,
    Believes,
    DynBox,
    Lit,
    Not,
    Obs,
    ObsAtom,
    Prop,
    Registry,
    Truth,
    conj,
    diamond,
    implies,
    is_static,
    parse,
    render,
)
from dlm.kripke import satisfies
from dlm.reduce import dynamic_depth, simplify, translate

import test_formula
import test_kripke

REG = Registry(("a", "b"), ("p", "q", "r", "l"))


def tell_p():
    return TellPlus("a", Prop("p"))


class TestDynamicDepth:
    def test_static_is_zero(self):
        assert dynamic_depth(parse("B[a](p & ~q)", REG)) == 0

    def test_nested_boxes(self):
        f = DynBox(tell_p(), DynBox(tell_p(), Prop("p")))
        assert dynamic_depth(f) == 2

    def test_box_over_conjunction(self):
        f = DynBox(tell_p(), And(Prop("p"), DynBox(tell_p(), Prop("q"))))
        assert dynamic_depth(f) == 2


class TestTranslateGolden:
    def test_static_formula_unchanged(self):
        f = parse("B[a](p -> obs(b,~q))", REG)
        assert translate(f, REG) == f

    def test_atom_clause_identity_post(self):
        f = parse("[tell+(a,p)] q", REG)
        expected = implies(Believes("a", Prop("p")), Prop("q"))
        assert translate(f, REG) == expected
        assert render(translate(f, REG)) == "(B[a](p) -> q)"

    def test_atom_clause_materializes_assigned_true(self):
        f = parse("[show+(a,p)] obs(b,p)", REG)
        pre_e = And(Prop("p"), Obs(ObsAtom("a", Lit("p"))))
        assert translate(f, REG) == implies(pre_e, Truth())
        assert render(translate(f, REG)) == "((p & obs(a,p)) -> true)"

    def test_atom_clause_materializes_assigned_false(self):
        f = parse("[show+(a,p)] obs(b,~p)", REG)
        pre_e = And(Prop("p"), Obs(ObsAtom("a", Lit("p"))))
        assert translate(f, REG) == implies(pre_e, Not(Truth()))

    def test_negation_clause(self):
        f = parse("[tell+(a,p)] ~q", REG)
        pre = Believes("a", Prop("p"))
        assert translate(f, REG) == implies(pre, Not(implies(pre, Prop("q"))))

    def test_conjunction_clause(self):
        f = parse("[tell+(a,p)] (q & r)", REG)
        pre = Believes("a", Prop("p"))
        assert translate(f, REG) == And(
            implies(pre, Prop("q")), implies(pre, Prop("r"))
        )

    def test_belief_clause_spectator_sees_only_f(self):
        f = parse("[tell+(a,p)] B[b] q", REG)
        pre_e = Believes("a", Prop("p"))
        pre_f = And(Prop("p"), Believes("a", Prop("p")))
        expected = implies(pre_e, Believes("b", implies(pre_f, Prop("q"))))
        assert translate(f, REG) == expected

    def test_belief_clause_actor_sees_both_events(self):
        f = parse("[tell+(a,p)] B[a] q", REG)
        pre_e = Believes("a", Prop("p"))
        pre_f = And(Prop("p"), Believes("a", Prop("p")))
        expected = implies(
            pre_e,
            conj(
                [
                    Believes("a", implies(pre_e, Prop("q"))),
                    Believes("a", implies(pre_f, Prop("q"))),
                ]
            ),
        )
        assert translate(f, REG) == expected

    def test_empty_successor_set_gives_empty_conjunction(self):
        lonely = ActionModel(
            ("e",),
            {"a": set(), "b": set()},
            {"e": Truth()},
            {"e": PostMap()},
        )
        f = DynBox(NamedAction("lonely", PointedAction(lonely, "e")), Believes("a", Prop("p")))
        assert translate(f, REG) == implies(Truth(), Truth())

    def test_diamond_rewrites_through_its_definition(self):
        f = diamond(tell_p(), Prop("q"))
        pre = Believes("a", Prop("p"))
        assert translate(f, REG) == Not(implies(pre, Not(implies(pre, Prop("q")))))

    def test_dynamic_precondition_is_inlined_statically(self):
        from conftest import build_example1

        inner = DynBox(TellPlus("b", Prop("q")), Prop("p"))
        f = DynBox(TellPlus("a", inner), Prop("r"))
        out = translate(f, REG)
        assert is_static(out)
        pm = build_example1()
        reg = pm.model.registry
        g = DynBox(TellPlus("a", DynBox(TellPlus("b", Prop("p")), Prop("p"))), Prop("p"))
        assert satisfies(pm, g) == satisfies(pm, translate(g, reg))


class TestSimplify:
    def test_constant_folding(self):
        f = implies(Prop("p"), Truth())
        assert simplify(f) == Not(Not(Prop("p"))) or simplify(f) == Truth()
        assert simplify(And(Truth(), Prop("p"))) == Prop("p")
        assert simplify(Not(Not(Prop("p")))) == Prop("p")


@given(test_formula.formulas(max_leaves=8))
@settings(max_examples=200, deadline=None)
def test_translate_output_is_static_and_idempotent(f):
    out = translate(f, REG)
    assert is_static(out)
    assert dynamic_depth(out) == 0
    assert translate(out, REG) == out


@given(test_kripke.pointed_models(), test_formula.formulas(max_leaves=6))
@settings(max_examples=150, deadline=None)
def test_translate_preserves_satisfaction(pm, f):
    assert satisfies(pm, f) == satisfies(pm, translate(f, pm.model.registry))
