from __future__ import annotations

import json

import pytest

from sigpds.algebra import NaiveFlatSemiring, flatten, lift
from sigpds.domains import SHIPPED, default_structure
from sigpds.domains.minheight import MinHeight
from sigpds.laws import law_suite

SAMPLES = 150


@pytest.mark.parametrize("domain", SHIPPED)
def test_weight_structures_pass(domain):
    rep = law_suite(default_structure(domain), samples=SAMPLES, seed=1)
    assert rep.ok, rep.render()
    assert all(r.checked == SAMPLES for r in rep.records)


@pytest.mark.parametrize("domain", SHIPPED)
def test_lifted_semirings_pass(domain):
    rep = law_suite(lift(default_structure(domain)), samples=SAMPLES, seed=2)
    assert rep.ok, rep.render()
    assert rep.record("conv-exchange").checked > SAMPLES // 2


@pytest.mark.parametrize("domain", ["minheight", "relations", "trpds"])
def test_flattened_semirings_pass(domain):
    rep = law_suite(flatten(lift(default_structure(domain))), samples=SAMPLES, seed=3)
    assert rep.ok, rep.render()


def test_naive_flattening_fails_distributivity_with_the_known_shape():
    rep = law_suite(NaiveFlatSemiring(lift(default_structure("minheight"))), samples=2000, seed=0)
    failed = {r.name for r in rep.failures()}
    assert failed == {"distrib-left", "distrib-right"}
    shapes = rep.record("distrib-right").witness_shapes
    assert any(s in shapes for s in ("ε/ε, a/a, a/a", "ε/ε, b/b, b/b", "a/a, ε/ε, a/a", "b/b, ε/ε, b/b"))


def test_report_is_json():
    rep = law_suite(default_structure("minheight"), samples=20, seed=0)
    obj = json.loads(rep.to_json())
    assert obj["ok"] is True
    assert {"name", "reference", "status", "checked", "witness"} <= set(obj["laws"][0])


class _MaxHeight(MinHeight):
    """Deliberately broken: maximum instead of minimum."""

    def add(self, s, a, b):
        return max(a, b)


class _SumHeight(MinHeight):
    """Deliberately broken: heights add up along products."""

    def smul(self, s1, s2, a, b):
        return a + b


def test_broken_structures_are_caught():
    rep = law_suite(_MaxHeight(("a", "b")), samples=200, seed=0)
    assert "add-zero" in {r.name for r in rep.failures()}
    rep = law_suite(_SumHeight(("a", "b")), samples=200, seed=0)
    names = {r.name for r in rep.failures()}
    assert "unit-left" in names and "mul-associative" not in names
    w = rep.record("unit-left")
    assert w.witness and w.witness_size is not None


def test_suite_is_deterministic_per_seed():
    a = law_suite(lift(default_structure("relations")), samples=40, seed=9).to_json()
    b = law_suite(lift(default_structure("relations")), samples=40, seed=9).to_json()
    assert a == b
