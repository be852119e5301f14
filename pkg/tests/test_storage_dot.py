from __future__ import annotations

import json

import pytest

from dlm import dot, scenario, storage
from dlm.action import ShowMinus, TellPlus
from dlm.errors import StructureError
from dlm.formula import Lit, Prop, Registry

import test_kripke
from hypothesis import given, settings


class TestModelFiles:
    def test_round_trip(self, tmp_path, example1):
        path = tmp_path / "m.json"
        storage.save_model(path, example1.model, example1.point)
        model, point = storage.load_model(path)
        assert model == example1.model
        assert point == example1.point

    def test_document_shape(self, example1):
        doc = storage.model_to_dict(example1.model, example1.point)
        assert doc["agents"] == ["a", "b"]
        assert doc["props"] == ["p"]
        assert doc["worlds"] == ["w", "v"]
        assert doc["point"] == "w"
        assert doc["valuation"]["w"] == ["p", "obs(a,p)"]
        assert doc["valuation"]["v"] == ["obs(a,~p)", "obs(b,~p)"]
        assert ["w", "v"] in doc["relations"]["b"]

    def test_dump_is_deterministic(self, example1):
        a = json.dumps(storage.model_to_dict(example1.model, example1.point))
        b = json.dumps(storage.model_to_dict(example1.model, example1.point))
        assert a == b

    def test_point_optional(self, tmp_path, example1):
        path = tmp_path / "m.json"
        storage.save_model(path, example1.model, None)
        _, point = storage.load_model(path)
        assert point is None

    def test_malformed_documents(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(StructureError):
            storage.load_model(path)
        path.write_text(json.dumps({"agents": ["a"]}))
        with pytest.raises(StructureError):
            storage.load_model(path)
        path.write_text(json.dumps({
            "agents": ["a"], "props": ["p"], "worlds": ["w"],
            "relations": {}, "valuation": {"w": ["zz"]}, "point": "w",
        }))
        with pytest.raises(StructureError):
            storage.load_model(path)
        path.write_text(json.dumps({
            "agents": ["a"], "props": ["p"], "worlds": ["w"],
            "relations": {}, "valuation": {}, "point": "zz",
        }))
        with pytest.raises(StructureError):
            storage.load_model(path)

    @given(test_kripke.models())
    @settings(max_examples=50, deadline=None)
    def test_round_trip_property(self, m):
        doc = json.loads(json.dumps(storage.model_to_dict(m, None)))
        model, _ = storage.model_from_dict(doc)
        assert model == m


class TestActionFiles:
    def test_round_trip(self, tmp_path):
        reg = Registry(("a", "b"), ("p", "l", "r"))
        pa = ShowMinus("a", (Lit("r"), Lit("l", False))).resolve(reg)
        path = tmp_path / "act.json"
        storage.save_action(path, pa.action, pa.point)
        action, point = storage.load_action(path, reg)
        assert action == pa.action
        assert point == pa.point
        assert storage.load_pointed_action(path, reg) == pa

    def test_document_shape(self):
        reg = Registry(("a", "b"), ("p",))
        pa = TellPlus("a", Prop("p")).resolve(reg)
        doc = storage.action_to_dict(pa.action, pa.point)
        assert doc["events"] == ["e", "f"]
        assert doc["pre"]["e"] == "B[a](p)"
        assert doc["pre"]["f"] == "(p & B[a](p))"
        assert doc["post"] == {"e": {}, "f": {}}
        assert doc["point"] == "e"

    def test_malformed_action(self, tmp_path):
        reg = Registry(("a",), ("p",))
        path = tmp_path / "act.json"
        path.write_text(json.dumps({
            "events": ["e"], "relations": {}, "pre": {"e": "p &"}, "post": {"e": {}},
        }))
        with pytest.raises(StructureError):
            storage.load_action(path, reg)
        path.write_text(json.dumps({
            "events": ["e"], "relations": {}, "pre": {"e": "p"},
            "post": {"e": {"obs(a,p)": True}},
        }))
        with pytest.raises(StructureError):
            storage.load_action(path, reg)


class TestDot:
    def test_model_dot_conventions(self, example1):
        text = dot.model_dot(example1.model, example1.point)
        assert text.startswith("digraph model {")
        assert "doublecircle" in text
        assert 'label="a,b"' in text
        assert "obs(a,~p)" in text

    def test_action_dot_conventions(self):
        reg = Registry(("a", "b"), ("p",))
        pa = ShowMinus("a", (Lit("p", False),)).resolve(reg)
        text = dot.action_dot(pa.action, pa.point)
        assert "shape=box" in text
        assert "peripheries=2" in text
        assert "pre: (p & obs(a,p))" in text
        assert "post: p & ~obs(b,p) & obs(b,~p)" in text

    def test_identity_post_shown_as_id(self):
        reg = Registry(("a", "b"), ("p",))
        pa = TellPlus("a", Prop("p")).resolve(reg)
        assert "post: id" in dot.action_dot(pa.action, pa.point)

    def test_scenario_stages_export(self, tmp_path):
        pm = scenario.french_drop_initial()
        text = dot.model_dot(pm.model, pm.point)
        assert text.count("shape=doublecircle") == 1
