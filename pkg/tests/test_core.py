"""
tests/test_core.py — Categorías finitas, funtores y colímites
"""
import itertools
import os
import sys
import unittest

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Agregar el directorio raíz al path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.builders import (
    arrow_category, discrete_category, free_category_on_dag, linear_poset,
    make_category, monoid_category, preorder_category,
)
from core.category import (
    FinCategory, find_isomorphism, indecomposable_arrows, opposite, validate_category,
)
from core.colimits import (
    DisjointSet, colimit_set_functor, colimit_universality, functor_colimit_oracle,
)
from core.functors import (
    FinFunctor, NatTransform, SetFunctor, check_functor, check_functoriality,
    check_naturality, constant_functor, extend_action, identity_transform,
)
from sample_categories import dag_categories, finite_categories


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 1: validate_category
# ═══════════════════════════════════════════════════════════════════════════════

class TestValidateCategory(unittest.TestCase):

    def test_linear_poset_is_valid(self):
        report = validate_category(linear_poset(2))
        self.assertTrue(report.ok, report.violations)
        self.assertEqual(len(linear_poset(2).objects), 3)

    def test_idempotent_monoid_is_valid(self):
        c = monoid_category(["id", "f"], {("id", "id"): "id", ("id", "f"): "f",
                                         ("f", "id"): "f", ("f", "f"): "f"}, "id")
        self.assertTrue(validate_category(c).ok)

    def test_magma_search_finds_non_associative_triple(self):
        """Búsqueda exhaustiva sobre magmas de 2 flechas: el reporte nombra cada tripla rota."""
        elements = ["e", "f"]
        found = 0
        for values in itertools.product(elements, repeat=4):
            table = dict(zip(itertools.product(elements, repeat=2), values))
            c = monoid_category(elements, table, "e")
            broken = [
                (x, y, z) for x, y, z in itertools.product(elements, repeat=3)
                if table[(table[(x, y)], z)] != table[(x, table[(y, z)])]
            ]
            report = validate_category(c)
            for x, y, z in broken:
                found += 1
                expected = f"associativity: ({x!r}, {y!r}, {z!r})"
                self.assertTrue(any(v.startswith(expected) for v in report.violations), report.violations)
            if broken:
                self.assertFalse(report.ok)
        self.assertGreater(found, 0)

    def test_missing_composition_is_reported(self):
        c = linear_poset(2)
        broken = FinCategory(c.objects, c.arrows, c.identities,
                             {k: v for k, v in c.comp.items() if k != ("0->1", "1->2")})
        report = validate_category(broken)
        self.assertFalse(report.ok)
        self.assertIn("falta", report.violations[0])


@settings(max_examples=60, deadline=None)
@given(c=finite_categories())
def test_generated_categories_validate(c):
    assert validate_category(c).ok


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 2: opposite
# ═══════════════════════════════════════════════════════════════════════════════

class TestOpposite(unittest.TestCase):

    def test_involution(self):
        c = free_category_on_dag("ABC", {"f": ("A", "B"), "g": ("B", "C")})
        self.assertEqual(opposite(opposite(c)), c)

    def test_hom_counts_swap(self):
        c = free_category_on_dag("ABC", {"f": ("A", "B"), "g": ("B", "C"), "h": ("A", "C")})
        op = opposite(c)
        for a in c.objects:
            for b in c.objects:
                self.assertEqual(len(c.hom(a, b)), len(op.hom(b, a)))
        self.assertTrue(validate_category(op).ok)

    def test_arrow_category_reversed(self):
        op = opposite(arrow_category())
        self.assertEqual(op.hom("1", "0"), ("0->1",))
        self.assertEqual(op.hom("0", "1"), ())


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 3: colimit_set_functor
# ═══════════════════════════════════════════════════════════════════════════════

class TestColimits(unittest.TestCase):

    def test_coproduct_of_discrete_diagram(self):
        c = discrete_category(["a", "b"])
        F = SetFunctor(c, {"a": ("x", "y"), "b": ("p", "q", "r")},
                       {c.identity("a"): {"x": "x", "y": "y"},
                        c.identity("b"): {"p": "p", "q": "q", "r": "r"}})
        result = colimit_set_functor(F)
        self.assertEqual(result.size, 5)
        self.assertTrue(colimit_universality(F, result).ok)

    def test_pushout_of_points(self):
        span = preorder_category(["l", "m", "r"], [("m", "l"), ("m", "r")])
        F = constant_functor(span, ["*"])
        self.assertEqual(colimit_set_functor(F).size, 1)

    def test_arrow_category_merges_both_classes(self):
        c = arrow_category()
        F = extend_action(c, {"0": ("a", "b"), "1": ("x",)}, {"0->1": {"a": "x", "b": "x"}})
        result = colimit_set_functor(F)
        self.assertEqual(result.size, 1)
        self.assertEqual(result.partition(), functor_colimit_oracle(F))
        self.assertEqual(result.apex, (("0", "a"),))

    def test_disjoint_set_canonical_representatives(self):
        ds = DisjointSet()
        ds.union("c", "a")
        ds.union("b", "c")
        ds.make_set("z")
        self.assertEqual(ds.sorted(), (("a", "b", "c"), ("z",)))


@st.composite
def small_diagrams(draw):
    c = draw(dag_categories(max_objects=4, max_arrows=12))
    carrier = {o: tuple(f"{o}{k}" for k in range(draw(st.integers(0, 4)))) for o in c.objects}
    edges = [a for a in c.arrows if not c.is_identity(a.id) and "∘" not in a.id]
    for _ in c.objects:
        for a in edges:
            if carrier[a.src] and not carrier[a.tgt]:
                carrier[a.tgt] = (f"{a.tgt}0",)
    generators = {
        a.id: {x: draw(st.sampled_from(carrier[a.tgt])) for x in carrier[a.src]}
        for a in edges
    }
    return extend_action(c, carrier, generators)


@settings(max_examples=80, deadline=None)
@given(F=small_diagrams())
def test_colimit_agrees_with_closure_oracle(F):
    assert check_functoriality(F).ok
    assert colimit_set_functor(F).partition() == functor_colimit_oracle(F)


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 4: naturalidad
# ═══════════════════════════════════════════════════════════════════════════════

class TestNaturality(unittest.TestCase):

    def setUp(self):
        self.c = arrow_category()
        self.F = extend_action(self.c, {"0": ("a", "b"), "1": ("x", "y")},
                               {"0->1": {"a": "x", "b": "y"}})

    def test_identity_transformation(self):
        self.assertTrue(check_naturality(identity_transform(self.F)).ok)

    def test_between_constant_functors(self):
        X = constant_functor(self.c, ["0", "1"])
        Y = constant_functor(self.c, ["u"])
        t = NatTransform(X, Y, {o: {"0": "u", "1": "u"} for o in self.c.objects})
        self.assertTrue(check_naturality(t).ok)

    def test_perturbed_component_names_the_square(self):
        t = identity_transform(self.F)
        components = dict(t.components)
        components["1"] = {"x": "y", "y": "x"}
        report = check_naturality(NatTransform(self.F, self.F, components))
        self.assertFalse(report.ok)
        self.assertTrue(all("'0->1'" in v for v in report.violations))
        self.assertEqual(report.witness["arrow"], "0->1")


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 5: funtores e isomorfismos
# ═══════════════════════════════════════════════════════════════════════════════

def test_isomorphism_search_up_to_renaming():
    c = free_category_on_dag("ABC", {"f": ("A", "B"), "g": ("B", "C")})
    d = make_category(
        ["x", "y", "z"],
        {"u": ("y", "z"), "v": ("z", "x"), "w": ("y", "x")},
        {("u", "v"): "w"},
    )
    F = find_isomorphism(c, d)
    assert F is not None
    assert check_functor(F).ok
    assert F.objects == {"A": "y", "B": "z", "C": "x"}


def test_non_isomorphic_categories():
    assert find_isomorphism(linear_poset(2), discrete_category(["0", "1", "2"])) is None
    chain = free_category_on_dag("ABC", {"f": ("A", "B"), "g": ("B", "C")})
    fork = free_category_on_dag("ABC", {"f": ("A", "B"), "g": ("A", "C")})
    assert find_isomorphism(chain, fork) is None


def _two_paths(second_composite: str):
    """f1, f2: A -> B, g: B -> C, h1, h2: A -> C; f1;g = h1 y f2;g = second_composite."""
    return make_category(
        ["A", "B", "C"],
        {"f1": ("A", "B"), "f2": ("A", "B"), "g": ("B", "C"), "h1": ("A", "C"), "h2": ("A", "C")},
        {("f1", "g"): "h1", ("f2", "g"): second_composite},
    )


def test_composite_assigned_after_its_factors_is_checked():
    merged, split = _two_paths("h1"), _two_paths("h2")
    assert validate_category(merged).ok and validate_category(split).ok
    assert find_isomorphism(merged, split) is None
    assert find_isomorphism(split, merged) is None
    F = find_isomorphism(split, _two_paths("h2"))
    assert F is not None and check_functor(F).ok


@settings(max_examples=40, deadline=None)
@given(finite_categories(max_objects=3, max_arrows=7), finite_categories(max_objects=3, max_arrows=7))
def test_found_isomorphisms_are_functors(c, d):
    F = find_isomorphism(c, d)
    if F is not None:
        assert check_functor(F).ok


def test_indecomposable_arrows():
    c = free_category_on_dag("ABCD", {"a": ("A", "B"), "b": ("B", "C"), "c": ("C", "D")})
    assert sorted(indecomposable_arrows(c)) == ["a", "b", "c"]


def test_functor_breaking_composition_is_reported():
    c = linear_poset(2)
    objects = {o: o for o in c.objects}
    arrows = {a: a for a in c.arrow_ids()}
    arrows["0->2"] = "0->1"
    report = check_functor(FinFunctor(c, c, objects, arrows))
    assert not report.ok


@pytest.mark.parametrize("n", [0, 1, 3])
def test_linear_poset_sizes(n):
    c = linear_poset(n)
    assert len(c.objects) == n + 1
    assert len(c.arrows) == (n + 1) * (n + 2) // 2
