"""
tests/test_kan.py — Coends, extensiones de Kan puntuales, colímites ponderados y densidad
"""
import os
import sys
import unittest

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

# Agregar el directorio raíz al path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.builders import (
    arrow_category, discrete_category, finset_inclusion, point_category,
)
from core.category import full_subcategory, opposite
from core.colimits import colimit_set_functor
from core.functors import (
    FinFunctor, NatTransform, SetFunctor, check_functoriality, constant_functor, identity_functor,
    representable, restrict, terminal_functor,
)
from freecat.graph import graph_to_presheaf, graphs_isomorphic, linear_quiver, make_graph
from freecat.nerve import graph_nerve
from kan.coend import (
    MixedVarianceFunctor, check_mixed, coend_set, cowedge_universality, hom_mixed, tensor_mixed,
)
from kan.extension import (
    comma_colimit_oracle, lan_as_colimit_check, lan_unit, left_kan_extension, pointwise_lan,
)
from kan.weighted import (
    WeightedDiagram, delta0_graph_arities, density_check, graph_realization, presheaf_morphisms,
    weighted_colimit,
)
from sample_categories import SMALL_MONOIDS, finite_categories, six_vertex_graph


def _finset_identity_carrier(c):
    """n ↦ {0, …, n-1} con cada flecha actuando como la función que nombra."""
    carrier = {o: tuple(range(int(o))) for o in c.objects}
    action = {}
    for a in c.arrows:
        values = a.id.split(":", 1)[1]
        image = tuple(int(v) for v in values.split(",")) if values else ()
        action[a.id] = dict(enumerate(image))
    return SetFunctor(c, carrier, action)


def _inclusion(e, objects):
    small = full_subcategory(e, objects)
    return FinFunctor(small, e, {o: o for o in small.objects}, {a: a for a in small.arrow_ids()})


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 1: coends
# ═══════════════════════════════════════════════════════════════════════════════

class TestCoend(unittest.TestCase):

    def test_discrete_base_is_union_of_diagonals(self):
        c = discrete_category(["p", "q"])
        weight = SetFunctor(opposite(c), {"p": (0, 1), "q": (0,)}, {"p->p": {0: 0, 1: 1}, "q->q": {0: 0}})
        f = SetFunctor(c, {"p": ("x",), "q": ("y", "z")}, {"p->p": {"x": "x"}, "q->q": {"y": "y", "z": "z"}})
        s = tensor_mixed(weight, f)
        self.assertTrue(check_mixed(s).ok)
        self.assertEqual(coend_set(s).size, 2 * 1 + 1 * 2)

    def test_shared_bijection_identifies_pairwise(self):
        c = arrow_category()
        pairs = [(a, b) for a in c.objects for b in c.objects]
        carrier = {ab: ("x", "y") for ab in pairs}
        ident = {"x": "x", "y": "y"}
        left = {(u.id, b): dict(ident) for u in c.arrows for b in c.objects}
        right = {(a, v.id): dict(ident) for a in c.objects for v in c.arrows}
        s = MixedVarianceFunctor(c, carrier, left, right)
        result = coend_set(s)
        self.assertEqual(result.size, 2)
        self.assertEqual(result.partition(), frozenset({
            frozenset({("0", "x"), ("1", "x")}), frozenset({("0", "y"), ("1", "y")}),
        }))
        self.assertTrue(cowedge_universality(s, result).ok)

    def test_constant_singleton(self):
        c = arrow_category()
        s = tensor_mixed(constant_functor(opposite(c), ["*"]), constant_functor(c, ["*"]))
        self.assertEqual(coend_set(s).size, 1)

    def test_hom_coend_of_abelian_monoid(self):
        z2 = SMALL_MONOIDS[1]
        s = hom_mixed(z2)
        self.assertTrue(check_mixed(s).ok)
        self.assertEqual(coend_set(s).size, 2)


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 2: Lan puntual
# ═══════════════════════════════════════════════════════════════════════════════

class TestPointwiseLan(unittest.TestCase):

    def test_identity_functor(self):
        c = SMALL_MONOIDS[3]
        f = representable(c, "*", contravariant=False)
        i = identity_functor(c)
        self.assertEqual(pointwise_lan(f, i, "*").size, f.size("*"))
        unit = lan_unit(f, i, "*")
        self.assertEqual(len(set(unit.values())), len(unit))

    def test_missing_object_gives_empty_set(self):
        small, big = discrete_category(["p"]), discrete_category(["p", "q"])
        i = FinFunctor(small, big, {"p": "p"}, {"p->p": "p->p"})
        f = constant_functor(small, ["x", "y"])
        self.assertEqual(pointwise_lan(f, i, "q").size, 0)
        self.assertEqual(pointwise_lan(f, i, "p").size, 2)

    def test_finset_inclusion_matches_oracle(self):
        i = finset_inclusion(2, 3)
        f = _finset_identity_carrier(i.source)
        value = pointwise_lan(f, i, "3")
        self.assertEqual(value.size, 3)
        self.assertEqual(value.colimit.partition(), comma_colimit_oracle(f, i, "3"))

    def test_full_extension_is_functorial(self):
        i = finset_inclusion(1, 2)
        lan = left_kan_extension(_finset_identity_carrier(i.source), i)
        self.assertTrue(check_functoriality(lan).ok)
        self.assertEqual([len(lan.carrier[o]) for o in lan.base.objects], [0, 1, 2])

    def test_along_terminal_functor_is_colimit(self):
        c = arrow_category()
        f = representable(c, "1", contravariant=False)
        point = point_category()
        self.assertTrue(lan_as_colimit_check(f, terminal_functor(c, point)))
        self.assertEqual(pointwise_lan(f, terminal_functor(c, point), "*").size, colimit_set_functor(f).size)


@st.composite
def _lan_instances(draw):
    e = draw(finite_categories(max_objects=4, max_arrows=10))
    chosen = draw(st.lists(st.sampled_from(list(e.objects)), min_size=1, max_size=3, unique=True))
    i = _inclusion(e, chosen)
    source_obj = draw(st.sampled_from(list(e.objects)))
    f = restrict(representable(e, source_obj, contravariant=False), i)
    assume(all(len(xs) <= 3 for xs in f.carrier.values()))
    return f, i


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
@given(_lan_instances())
def test_lan_agrees_with_comma_oracle(instance):
    f, i = instance
    for e in i.target.objects:
        assert pointwise_lan(f, i, e).colimit.partition() == comma_colimit_oracle(f, i, e)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
@given(_lan_instances())
def test_unit_is_bijective_along_full_inclusions(instance):
    f, i = instance
    for c in i.source.objects:
        unit = lan_unit(f, i, c)
        assert len(set(unit.values())) == len(unit) == pointwise_lan(f, i, i.objects[c]).size


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 3: colímites ponderados y densidad
# ═══════════════════════════════════════════════════════════════════════════════

def _edge_with_vertex_diagram(weight_factory):
    """0 -> 1 en el índice; D(0) = un vértice, D(1) = i₀[1], la flecha incluye el vértice 0."""
    index = arrow_category()
    point, edge = graph_to_presheaf(linear_quiver(0)), graph_to_presheaf(linear_quiver(1))
    arrows = {
        "0->0": NatTransform(point, point, {"V": {0: 0}, "E": {}}),
        "1->1": NatTransform(edge, edge, {"V": {0: 0, 1: 1}, "E": {0: 0}}),
        "0->1": NatTransform(point, edge, {"V": {0: 0}, "E": {}}),
    }
    return WeightedDiagram(index, weight_factory(index), {"0": point, "1": edge}, arrows)


class TestWeightedColimit(unittest.TestCase):

    def test_constant_weight_is_ordinary_colimit(self):
        d = _edge_with_vertex_diagram(lambda c: constant_functor(opposite(c), ["*"]))
        result = weighted_colimit(d)
        for level in ("V", "E"):
            ordinary = SetFunctor(
                d.index,
                {c: d.objects[c].carrier[level] for c in d.index.objects},
                {u: d.arrows[u].components[level] for u in d.index.arrow_ids()},
            )
            self.assertEqual(result.levels[level].size, colimit_set_functor(ordinary).size)
        self.assertEqual(len(result.presheaf.carrier["V"]), 2)

    def test_weight_two_duplicates_contribution(self):
        index = discrete_category(["a"])
        edge = graph_to_presheaf(linear_quiver(1))
        weight = SetFunctor(opposite(index), {"a": (0, 1)}, {"a->a": {0: 0, 1: 1}})
        d = WeightedDiagram(index, weight, {"a": edge},
                            {"a->a": NatTransform(edge, edge, {"V": {0: 0, 1: 1}, "E": {0: 0}})})
        result = weighted_colimit(d)
        self.assertEqual(result.levels["V"].size, 4)
        self.assertEqual(result.levels["E"].size, 2)

    def test_reconstruction_of_a_four_vertex_graph(self):
        g = make_graph("abcd", {"x": ("a", "b"), "y": ("b", "c"), "z": ("b", "d"), "w": ("d", "a")})
        realized = graph_realization(graph_nerve(g, 3))
        self.assertIsNotNone(graphs_isomorphic(g, realized))

    def test_presheaf_morphisms_count_edge_placements(self):
        self.assertEqual(len(presheaf_morphisms(graph_to_presheaf(linear_quiver(1)),
                                                graph_to_presheaf(linear_quiver(2)))), 2)


class TestDensity(unittest.TestCase):

    def setUp(self):
        self.system = delta0_graph_arities(3)

    def test_linear_quiver_is_reconstructed(self):
        (verdict,) = density_check(self.system, {"i0[2]": graph_to_presheaf(linear_quiver(2))}, 3)
        self.assertEqual(verdict.verdict, "isomorphism")

    def test_six_vertex_graph_is_reconstructed(self):
        (verdict,) = density_check(self.system, {"g": graph_to_presheaf(six_vertex_graph())}, 3)
        self.assertEqual(verdict.verdict, "isomorphism")
        self.assertEqual(verdict.counts["V"], [6, 6])
        self.assertEqual(verdict.counts["E"], [5, 5])

    def test_isolated_vertex(self):
        lonely = graph_to_presheaf(make_graph(["v"], {}))
        (verdict,) = density_check(self.system, {"v": lonely}, 0)
        self.assertEqual(verdict.verdict, "isomorphism")

    def test_insufficient_bound_is_undetermined(self):
        (verdict,) = density_check(self.system, {"edge": graph_to_presheaf(linear_quiver(1))}, 0)
        self.assertEqual(verdict.verdict, "undetermined")
