"""
tests/test_globular.py — Conjuntos 2-globulares, diagramas de pegado y la 2-categoría libre
"""
import os
import sys
import unittest

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Agregar el directorio raíz al path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.category import validate_category
from core.errors import (
    InvalidStructureError, MalformedMorphismError, TruncationError, WidthMismatchError,
)
from core.functors import SetFunctor, check_functoriality
from globular.factorize2 import arity_factorize2, factorizations2, recompose2, split_like
from globular.free2 import (
    PdLabeling, free2_by_moves, free2_cells, free2_globset, generic_labeling, labelings_of_shape,
    monad_law_report2, mu2_substitute, path_labeling, tmap2, unit_cell, unit_labeling,
)
from globular.globset import check_globular, make_globular_set, pd_realize
from globular.pasting import Pd2, enumerate_shapes, parse_shape, pd_compose
from globular.segal2 import (
    _atomic_ids, fpd2_category, glob_nerve, nerve2_of_free, pd_inclusion_category, pd_inclusions,
    segal2_check,
)
from sample_categories import parallel_cell, two_column_globset


def _terminal():
    return make_globular_set(["*"], {"e": ("*", "*")}, {"α": ("e", "e")})


def _eta_everywhere(x, lab):
    return tmap2(lab, lambda v: v, lambda f: unit_cell(x, f, 1), lambda a: unit_cell(x, a, 2))


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 1: formas y realizaciones
# ═══════════════════════════════════════════════════════════════════════════════

class TestShapes(unittest.TestCase):

    def test_empty_shape_is_a_point(self):
        self.assertEqual(pd_realize(Pd2(())).sizes(), [1, 0, 0])

    def test_drawn_example(self):
        x = pd_realize(Pd2((2, 0, 1)))
        self.assertEqual(x.sizes(), [4, 6, 3])
        self.assertEqual((x.s2["c0:1"], x.t2["c0:1"]), ("c0.1", "c0.2"))
        self.assertTrue(check_globular(x).ok)

    def test_bare_column_is_an_arrow(self):
        x = pd_realize(Pd2((0,)))
        self.assertEqual(x.sizes(), [2, 1, 0])
        self.assertEqual((x.s1["c0.0"], x.t1["c0.0"]), ("v0", "v1"))

    def test_globularity_violation(self):
        with self.assertRaises(InvalidStructureError):
            make_globular_set("ABC", {"f": ("A", "B"), "g": ("A", "C")}, {"α": ("f", "g")})

    def test_level_tree_and_labels(self):
        p = parse_shape("(1,2,0)")
        self.assertEqual(p, Pd2((1, 2, 0)))
        self.assertEqual(Pd2.from_level_tree(p.to_level_tree()), p)
        self.assertEqual(parse_shape("()"), Pd2(()))
        self.assertEqual(Pd2((1,)).label(), "(1)")


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 2: composición por sustitución
# ═══════════════════════════════════════════════════════════════════════════════

class TestPdCompose(unittest.TestCase):

    def test_worked_composite(self):
        outer = Pd2((2, 1, 0))
        labels = [[Pd2((0, 0)), Pd2((1, 2))], [Pd2((0, 2))], 2]
        self.assertEqual(pd_compose(outer, labels), Pd2((1, 2, 0, 2, 0, 0)))

    def test_identity_substitution(self):
        rho = Pd2((2, 0, 1))
        self.assertEqual(pd_compose(Pd2((1,)), [[rho]]), rho)

    def test_single_cells_leave_outer_unchanged(self):
        for outer in enumerate_shapes(3, 2):
            labels = [[Pd2((1,))] * k if k else 1 for k in outer.heights]
            self.assertEqual(pd_compose(outer, labels), outer)

    def test_width_mismatch(self):
        with self.assertRaises(WidthMismatchError):
            pd_compose(Pd2((2,)), [[Pd2((1,)), Pd2((1, 1))]])


@st.composite
def _labels_for(draw, outer, max_width=2, max_height=2):
    labels = []
    for k in outer.heights:
        w = draw(st.integers(0, max_width))
        if k == 0:
            labels.append(w)
        else:
            labels.append([
                Pd2(tuple(draw(st.lists(st.integers(0, max_height), min_size=w, max_size=w))))
                for _ in range(k)
            ])
    return labels


def _nest(outer, first, second):
    """Compone primero las etiquetas con la segunda capa y después sustituye en outer."""
    nested, offset = [], 0
    for k, label in zip(outer.heights, first):
        if k == 0:
            nested.append(sum(second[offset:offset + label]))
            offset += label
            continue
        w = label[0].width
        used = [0] * w
        inner = []
        for q in label:
            per_column = []
            for c in range(w):
                column, h = second[offset + c], q.heights[c]
                if h:
                    per_column.append(column[used[c]:used[c] + h])
                    used[c] += h
                else:
                    per_column.append(column if isinstance(column, int) else column[0].width)
            inner.append(pd_compose(q, per_column))
        nested.append(inner)
        offset += w
    return nested


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_pd_compose_is_associative(data):
    outer = Pd2(tuple(data.draw(st.lists(st.integers(0, 2), max_size=3))))
    first = data.draw(_labels_for(outer))
    middle = pd_compose(outer, first)
    second = data.draw(_labels_for(middle))
    assert pd_compose(middle, second) == pd_compose(outer, _nest(outer, first, second))


def test_shape_of_mu_is_pd_compose():
    x = _terminal()
    tx = free2_globset(x, 2)
    for z in free2_cells(tx, 2):
        labels = [[b.shape for b in z.cells[i]] if k else z.columns[i][0].width
                  for i, k in enumerate(z.shape.heights)]
        assert mu2_substitute(z).shape == pd_compose(z.shape, labels)


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 3: 2-celdas libres y la mónada
# ═══════════════════════════════════════════════════════════════════════════════

class TestFreeCells(unittest.TestCase):

    def test_parallel_cell_does_not_stack(self):
        x = parallel_cell()
        self.assertEqual(len(labelings_of_shape(Pd2((1,)), x)), 1)
        self.assertEqual(labelings_of_shape(Pd2((2,)), x), [])

    def test_stack_in_second_column(self):
        self.assertEqual(len(labelings_of_shape(Pd2((0, 2)), two_column_globset())), 2)

    def test_only_points_without_arrows(self):
        x = make_globular_set("AB", {}, {})
        cells = free2_cells(x, 3)
        self.assertEqual(len(cells), 2)
        self.assertTrue(all(c.shape == Pd2(()) for c in cells))

    def test_moves_agree_with_labelings(self):
        for x in (parallel_cell(), two_column_globset()):
            for bound in (1, 2, 3):
                self.assertEqual(free2_by_moves(x, bound), set(free2_cells(x, bound)))

    def test_unit_laws_by_hand(self):
        x = two_column_globset()
        for lab in free2_cells(x, 2):
            self.assertEqual(mu2_substitute(unit_labeling(lab, 2)), lab)
            self.assertEqual(mu2_substitute(_eta_everywhere(x, lab)), lab)

    def test_boundary_mismatch(self):
        x = parallel_cell()
        alpha = unit_cell(x, "α", 2)
        wrong = PdLabeling(Pd2((1,)), ("A", "B"), ((alpha.target(), alpha.source()),), ((alpha,),))
        with self.assertRaises(MalformedMorphismError):
            mu2_substitute(wrong)


@pytest.mark.parametrize("factory", [parallel_cell, two_column_globset])
def test_free_2_category_monad_laws(factory):
    report = monad_law_report2(factory(), bound=3)
    assert report.ok, report.violations[:3]


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 4: factorización por formas
# ═══════════════════════════════════════════════════════════════════════════════

def _alpha_beta():
    return PdLabeling(Pd2((1, 1)), ("A", "B", "C"), (("f", "g"), ("h", "k")), (("α",), ("β",)))


class TestArityFactorize2(unittest.TestCase):

    def setUp(self):
        self.x = two_column_globset()

    def test_single_cells_keep_the_shape(self):
        lab = _alpha_beta()
        g = _eta_everywhere(self.x, lab)
        fact = arity_factorize2(g, self.x)
        self.assertEqual(fact.middle, lab.shape)
        self.assertEqual(fact.f, lab)
        self.assertEqual(recompose2(fact), g)

    def test_cell_sent_to_a_larger_diagram(self):
        cell = PdLabeling(Pd2((1, 2)), ("A", "B", "C"), (("f", "g"), ("h", "k", "l")), (("α",), ("β", "γ")))
        fact = arity_factorize2(unit_labeling(cell, 2), self.x)
        self.assertEqual(fact.middle, Pd2((1, 2)))
        self.assertEqual(fact.e.cells[0][0], generic_labeling(Pd2((1, 2))))

    def test_bare_column_widens(self):
        path = path_labeling("ABC", ["f", "h"])
        fact = arity_factorize2(unit_labeling(path, 1), self.x)
        self.assertEqual(fact.middle, Pd2((0, 0)))
        self.assertEqual(recompose2(fact), unit_labeling(path, 1))

    def test_recomposition_is_exact(self):
        x = parallel_cell()
        tx = free2_globset(x, 2)
        for g in free2_cells(tx, 2):
            fact = arity_factorize2(g, x)
            self.assertEqual(recompose2(fact), g)
            self.assertEqual(split_like(g, mu2_substitute(g)), g)

    def test_middle_is_minimal(self):
        g = _eta_everywhere(self.x, _alpha_beta())
        canonical = arity_factorize2(g)
        found = factorizations2(g, self.x, 2)
        self.assertIn(canonical, found)
        self.assertEqual(min(f.middle.size for f in found), canonical.middle.size)

    def test_label_outside_the_globular_set(self):
        stray = PdLabeling(Pd2((1,)), ("A", "B"), (("f", "g"),), (("ω",),))
        with self.assertRaises(MalformedMorphismError):
            arity_factorize2(unit_labeling(stray, 2), self.x)


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 5: nervios y Segal en dimensión 2
# ═══════════════════════════════════════════════════════════════════════════════

class TestSegal2(unittest.TestCase):

    def test_shape_categories_are_valid(self):
        self.assertTrue(validate_category(fpd2_category(1, 1)).ok)
        self.assertTrue(validate_category(pd_inclusion_category(2, 1)).ok)

    def test_globular_nerve_passes(self):
        result = segal2_check(glob_nerve(two_column_globset(), 2, 1))
        self.assertTrue(result.ok, result.reason)
        self.assertEqual(result.globset.sizes(), [3, 5, 3])

    def test_missing_horizontal_filler(self):
        x = glob_nerve(two_column_globset(), 2, 1)
        self.assertEqual(len(x.carrier["(1,1)"]), 2)
        result = segal2_check(x.without("(1,1)", x.carrier["(1,1)"][0]))
        self.assertFalse(result.ok)
        self.assertEqual(result.shape, "(1,1)")

    def test_graph_like_presheaf(self):
        g = make_globular_set("ABC", {"f": ("A", "B"), "h": ("B", "C")}, {})
        result = segal2_check(glob_nerve(g, 2, 1))
        self.assertTrue(result.ok)
        self.assertEqual(result.globset.cells2, ())

    def test_nerve_of_a_free_2_category(self):
        x = parallel_cell()
        nerve = nerve2_of_free(x, 1, 1)
        self.assertTrue(check_functoriality(nerve).ok)
        result = segal2_check(nerve)
        self.assertTrue(result.ok, result.reason)
        self.assertEqual(result.globset.sizes(), free2_globset(x).sizes())
        self.assertEqual(result.globset.sizes(), [2, 4, 5])

    def test_extra_element_with_a_broken_labeling(self):
        g = make_globular_set("ABC", {"f": ("A", "B"), "h": ("B", "C")}, {})
        x = glob_nerve(g, 2, 1)
        inclusions = pd_inclusions(2, 1)
        ids = _atomic_ids(inclusions, parse_shape("(0,0)"))
        first, second = ids.columns[0][0], ids.columns[1][0]
        (good,) = x.carrier["(0,0)"]
        carrier = {**x.carrier, "(0,0)": (good, "f.f")}
        action = {u: dict(table) for u, table in x.action.items()}
        for a in inclusions.category.arrows:
            if a.tgt == "(0,0)":
                action[a.id]["f.f"] = "f.f" if a.src == "(0,0)" else action[a.id][good]
        action[second]["f.f"] = action[first][good]
        result = segal2_check(SetFunctor(x.base, carrier, action))
        self.assertFalse(result.ok)
        self.assertEqual(result.shape, "(0,0)")
        self.assertIn("no es morfismo", result.reason)

    def test_truncation_without_cells(self):
        with self.assertRaises(TruncationError):
            segal2_check(glob_nerve(parallel_cell(), 1, 0))
