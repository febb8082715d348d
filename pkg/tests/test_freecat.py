"""
tests/test_freecat.py — Grafos, mónada de categoría libre, Θ_T y nervio sobre Δ₀
"""
import os
import sys
import unittest

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

# Agregar el directorio raíz al path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.category import find_isomorphism, validate_category
from core.errors import MalformedMorphismError
from freecat.arity import kleisli_arity_hom, kleisli_compose, theta_free_category, to_monotone
from freecat.graph import graph_morphisms, graphs_isomorphic, linear_quiver, make_graph, underlying_graph
from freecat.nerve import graph_nerve, segal_representability_check
from freecat.paths import (
    Path, algebra_report, category_from_algebra, eta, eta_path, eval_path, free_paths, make_path,
    monad_law_report, mu_flatten, t_eta,
)
from simplicial.delta import compose_monotone, delta_category, enumerate_monotone
from simplicial.nerve import nerve
from simplicial.sset import restrict_along_delta0
from sample_categories import SMALL_MONOIDS, finite_categories, reference_nerve_category, six_vertex_graph


def _loop():
    return make_graph(["*"], {"l": ("*", "*")})


@st.composite
def small_graphs(draw, max_vertices=4, max_edges=6):
    n = draw(st.integers(1, max_vertices))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges))
    return make_graph(range(n), {f"e{k}": pair for k, pair in enumerate(pairs)})


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 1: grafos y caminos
# ═══════════════════════════════════════════════════════════════════════════════

class TestGraphs(unittest.TestCase):

    def test_linear_quiver_shapes(self):
        self.assertEqual((len(linear_quiver(0).vertices), len(linear_quiver(0).edges)), (1, 0))
        self.assertEqual((len(linear_quiver(2).vertices), len(linear_quiver(2).edges)), (3, 2))

    def test_edge_placements(self):
        self.assertEqual(len(list(graph_morphisms(linear_quiver(1), linear_quiver(2)))), 2)

    def test_isomorphism_of_relabelled_graph(self):
        g = make_graph("xyz", {"p": ("x", "y"), "q": ("y", "z")})
        self.assertIsNotNone(graphs_isomorphic(g, linear_quiver(2)))
        self.assertIsNone(graphs_isomorphic(g, _loop()))

    def test_free_paths_counts(self):
        self.assertEqual(len(free_paths(linear_quiver(2), 2)), 6)
        self.assertEqual(len(free_paths(_loop(), 3)), 4)
        self.assertEqual(free_paths(make_graph([], {}), 3), [])


class TestMonad(unittest.TestCase):

    def test_flatten_two_edges(self):
        g = linear_quiver(2)
        outer = Path(0, (eta(g, 0), eta(g, 1)), 2)
        self.assertEqual(mu_flatten(outer), Path(0, (0, 1), 2))

    def test_units(self):
        g = six_vertex_graph()
        p = make_path(g, 0, ["a", "b", "c"])
        self.assertEqual(mu_flatten(t_eta(g, p)), p)
        self.assertEqual(mu_flatten(eta_path(p)), p)

    def test_endpoint_mismatch(self):
        g = six_vertex_graph()
        with self.assertRaises(MalformedMorphismError):
            mu_flatten(Path(0, (eta(g, "a"), eta(g, "c")), 3))


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(small_graphs())
def test_monad_laws_on_small_graphs(g):
    report = monad_law_report(g, maxlen=4)
    assert report.ok, report.violations[:3]


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 2: categorías como álgebras
# ═══════════════════════════════════════════════════════════════════════════════

@pytest.mark.parametrize("c", [reference_nerve_category(), *SMALL_MONOIDS[1:3]])
def test_composition_is_an_algebra(c):
    report = algebra_report(c, maxlen=4)
    assert report.ok, report.violations[:3]


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
@given(finite_categories())
def test_algebra_reconstructs_category(c):
    rebuilt = category_from_algebra(underlying_graph(c), lambda p: eval_path(c, p))
    assert validate_category(rebuilt).ok
    assert find_isomorphism(c, rebuilt) is not None


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 3: Θ_T y Δ
# ═══════════════════════════════════════════════════════════════════════════════

class TestKleisliArity(unittest.TestCase):

    def test_small_hom_counts(self):
        self.assertEqual(len(kleisli_arity_hom(1, 1)), 3)
        for n in range(5):
            self.assertEqual(len(kleisli_arity_hom(0, n)), n + 1)

    def test_bijection_with_monotone_maps(self):
        for m in range(5):
            for n in range(5):
                images = [to_monotone(a) for a in kleisli_arity_hom(m, n)]
                self.assertEqual(len(set(images)), len(images))
                self.assertEqual(set(images), set(enumerate_monotone(m, n)))

    def test_composition_matches_delta(self):
        for a in kleisli_arity_hom(1, 2):
            for b in kleisli_arity_hom(2, 2):
                self.assertEqual(to_monotone(kleisli_compose(a, b)),
                                 compose_monotone(to_monotone(a), to_monotone(b)))

    def test_theta_is_delta(self):
        theta = theta_free_category(2)
        self.assertTrue(validate_category(theta).ok)
        self.assertIsNotNone(find_isomorphism(theta, delta_category(2)))


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 4: nervio de grafos y representabilidad
# ═══════════════════════════════════════════════════════════════════════════════

class TestGraphNerve(unittest.TestCase):

    def test_low_levels(self):
        g = six_vertex_graph()
        x = graph_nerve(g, 3)
        self.assertEqual(x.carrier["0"], g.vertices)
        self.assertEqual(set(x.carrier["1"]), {(e,) for e in g.edges})
        self.assertEqual(len(x.carrier["3"]), 1)

    def test_linear_quiver_level_two(self):
        self.assertEqual(len(graph_nerve(linear_quiver(2), 2).carrier["2"]), 1)

    def test_loop_is_never_empty(self):
        x = graph_nerve(_loop(), 4)
        self.assertTrue(all(len(x.carrier[str(n)]) == 1 for n in range(5)))


class TestRepresentability(unittest.TestCase):

    def test_restricted_nerve_of_a_category(self):
        c = reference_nerve_category()
        result = segal_representability_check(restrict_along_delta0(nerve(c, 3)))
        self.assertTrue(result.ok)
        self.assertIsNotNone(graphs_isomorphic(result.graph, underlying_graph(c)))

    def test_graph_nerve_recovers_the_graph(self):
        g = six_vertex_graph()
        result = segal_representability_check(graph_nerve(g, 3))
        self.assertTrue(result.ok)
        self.assertIsNotNone(graphs_isomorphic(result.graph, g))

    def test_missing_level_two_element(self):
        x = graph_nerve(six_vertex_graph(), 3).without("2", ("d", "e"))
        result = segal_representability_check(x)
        self.assertFalse(result.ok)
        self.assertEqual(result.level, 2)
