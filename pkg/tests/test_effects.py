"""
tests/test_effects.py — Mónadas finitas, Θ_T, álgebras y grupo libre
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

from core.category import validate_category
from core.errors import CarrierOverflowError, InputError, UnknownMonadError
from core.functors import SetFunctor, check_functoriality
from effects.free_group import (
    GroupWord, eta_word, format_word, free_group_mu, inverse, parse_word, reduce_word, tmap_word,
)
from effects.io_trees import (
    In, IOMonad, OutputMonad, Out, Ret, input_monad, io_graft, io_to_output, read_tree, tree_depth,
    write_tree,
)
from effects.linton import algebra_nerve, algebras, linton_check
from effects.monads import (
    ExceptionsMonad, NondeterminismMonad, PartialityMonad, classic_monads,
    generalized_exceptions_carrier, monad_law_report,
)
from effects.state import (
    StateMonad, Store, build_state_monad, recompose_state, state_factorizations, state_factorize,
    state_zigzag_related,
)
from effects.theta import theta, theta_finitary
from freecat.arity import ZigzagVerdict

ONE_BIT = Store(("l",), ("0", "1"))


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 1: mónadas clásicas
# ═══════════════════════════════════════════════════════════════════════════════

class TestClassicMonads(unittest.TestCase):

    def test_carrier_sizes(self):
        self.assertEqual(len(classic_monads("partiality").carrier((0, 1, 2))), 4)
        self.assertEqual(len(classic_monads("nondeterminism").carrier((0, 1))), 4)
        self.assertEqual(len(classic_monads("exceptions", errors=("e1", "e2")).carrier((0,))), 3)

    def test_raise_generators(self):
        t = ExceptionsMonad(("e1", "e2"))
        gens = t.generators()
        self.assertEqual(set(gens), {"raise_e1", "raise_e2"})
        for value in gens.values():
            self.assertIn(value, t.carrier(()))

    def test_unknown_monad(self):
        with self.assertRaises(UnknownMonadError):
            classic_monads("continuations")

    def test_generalized_exceptions_is_only_a_set(self):
        carrier = generalized_exceptions_carrier((0,), ("e1", "e2"))
        self.assertEqual(len(carrier), 2 * 3)

    def test_partiality_multiplication(self):
        t = PartialityMonad()
        self.assertEqual(t.mult(("ok", ("ok", 1))), ("ok", 1))
        self.assertEqual(t.mult(("ok", t.BOTTOM)), t.BOTTOM)
        self.assertEqual(t.mult(t.BOTTOM), t.BOTTOM)


@pytest.mark.parametrize("monad", [
    PartialityMonad(),
    NondeterminismMonad(),
    ExceptionsMonad(("e1", "e2")),
    StateMonad(ONE_BIT),
    IOMonad(("i",), ("o",), 1),
    IOMonad(("i", "j"), ("o",), 1),
    input_monad(("i", "j"), 1),
    OutputMonad(("o", "p"), 2),
], ids=lambda t: t.name)
def test_monad_laws(monad):
    report = monad_law_report(monad, sizes=(0, 1, 2))
    assert report.ok, report.violations[:3]
    assert report.checked > 0


def test_overflow_is_counted_not_raised():
    report = monad_law_report(StateMonad(Store(("l", "m"), ("0", "1"))), sizes=(2,))
    assert report.ok
    assert report.skipped >= 1


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 2: estado
# ═══════════════════════════════════════════════════════════════════════════════

class TestStateMonad(unittest.TestCase):

    def test_carrier(self):
        t, carrier = build_state_monad(ONE_BIT, ("a",))
        self.assertEqual(len(carrier), 4)
        self.assertEqual(t.unit("a"), ((("0",), "a"), (("1",), "a")))

    def test_mult_runs_outer_then_inner(self):
        t, carrier = build_state_monad(ONE_BIT, ("a",))
        for outer in t.carrier(carrier):
            flat = t.mult(outer)
            for s in t.states:
                s1, inner = t.run(outer, s)
                self.assertEqual(t.run(flat, s), t.run(inner, s1))


def _state_functions(store, n, a):
    t = StateMonad(store)
    return list(itertools.product(t.carrier(a), repeat=n))


class TestStateFactorize(unittest.TestCase):

    def test_constant_value(self):
        t = StateMonad(ONE_BIT)
        h = (t.unit("b"), t.unit("b"))
        fact = state_factorize(h, ONE_BIT)
        self.assertEqual(fact.p, 1)
        self.assertEqual(fact.f, ("b",))

    def test_image_of_two_out_of_three(self):
        t = StateMonad(ONE_BIT)
        h = (t.unit("c"), ((("1",), "a"), (("0",), "c")))
        fact = state_factorize(h, ONE_BIT)
        self.assertEqual(fact.p, 2)
        self.assertEqual(set(fact.f), {"a", "c"})
        self.assertEqual(recompose_state(t, fact), h)

    def test_exact_and_minimal(self):
        a = ("a", "b")
        t = StateMonad(ONE_BIT)
        for n in (1, 2):
            for h in _state_functions(ONE_BIT, n, a):
                fact = state_factorize(h, ONE_BIT)
                self.assertEqual(recompose_state(t, fact), h)
                self.assertEqual(len(set(fact.f)), fact.p)
                if n == 1:
                    found = state_factorizations(h, ONE_BIT, a, 2)
                    self.assertEqual(min(f.p for f in found), fact.p)

    def test_factorizations_are_zigzag_related(self):
        a = ("a", "b")
        for (h,) in _state_functions(ONE_BIT, 1, a):
            canonical = state_factorize((h,), ONE_BIT)
            for other in state_factorizations((h,), ONE_BIT, a, 2):
                result = state_zigzag_related(canonical, other, ONE_BIT)
                self.assertIsNot(result.verdict, ZigzagVerdict.NO_WITHIN_BOUND)


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 3: árboles de entrada/salida
# ═══════════════════════════════════════════════════════════════════════════════

class TestIOTrees(unittest.TestCase):

    def test_count_depth_one(self):
        t = IOMonad(("i",), ("o",), 1)
        self.assertEqual(len(t.carrier(("a",))), 3)
        self.assertEqual(t.count(1), 3)

    def test_graft_on_return(self):
        inner = Out("o", Ret("a"))
        self.assertEqual(io_graft(Ret(inner)), inner)

    def test_output_words_concatenate(self):
        outer = Out("o", Out("p", Ret(Out("q", Ret("a")))))
        self.assertEqual(io_to_output(io_graft(outer)), (("o", "p", "q"), "a"))
        m = OutputMonad(("o", "p", "q"), 3)
        self.assertEqual(m.mult((("o", "p"), (("q",), "a"))), io_to_output(io_graft(outer)))

    def test_depth_after_grafting(self):
        outer = In((Ret(write_tree("o")), Ret(Ret("x"))))
        grafted = io_graft(outer)
        self.assertLessEqual(tree_depth(grafted), tree_depth(outer) + 1)

    def test_read_then_write(self):
        echo = io_graft(IOMonad().fmap(write_tree, read_tree(("o", "p"))))
        self.assertEqual(echo, In((Out("o", Ret(())), Out("p", Ret(())))))


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 4: grupo libre
# ═══════════════════════════════════════════════════════════════════════════════

class TestFreeGroup(unittest.TestCase):

    def test_flattening_example(self):
        w = parse_word("[[a][b]⁻¹][[c][a]][[d]][[a][b]]⁻¹")
        self.assertEqual(w.depth, 2)
        self.assertEqual(format_word(free_group_mu(w)), "[a][b]⁻¹[c][a][d][b]⁻¹[a]⁻¹")

    def test_singletons(self):
        w = parse_word("[a][b]^-1[c]")
        self.assertEqual(free_group_mu(tmap_word(eta_word, w)), w)
        self.assertEqual(free_group_mu(eta_word(w)), w)

    def test_cancellation(self):
        self.assertEqual(reduce_word(parse_word("[a][a]⁻¹")), GroupWord())
        self.assertEqual(reduce_word(parse_word("[b]⁻¹[a][a]⁻¹[b]")), GroupWord())

    def test_bracket_mismatch(self):
        for bad in ("[a", "[a]]", "a", "[]"):
            with self.assertRaises(InputError):
                parse_word(bad)


_letters = st.tuples(st.sampled_from("abc"), st.sampled_from((1, -1)))
_words = st.lists(_letters, max_size=6).map(lambda ls: GroupWord(tuple(ls)))


@settings(max_examples=200, deadline=None)
@given(_words)
def test_free_group_unit_laws(w):
    r = reduce_word(w)
    assert free_group_mu(eta_word(r)) == r
    assert free_group_mu(tmap_word(eta_word, r)) == r
    assert reduce_word(GroupWord(r.letters + inverse(r).letters)) == GroupWord()


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.tuples(_words, st.sampled_from((1, -1))), max_size=3), max_size=3))
def test_free_group_associativity(rows):
    ttt = GroupWord(tuple((GroupWord(tuple(row)), 1) for row in rows))
    assert free_group_mu(tmap_word(free_group_mu, ttt)) == free_group_mu(free_group_mu(ttt))


# ═══════════════════════════════════════════════════════════════════════════════
# TEST 5: Θ_T y álgebras
# ═══════════════════════════════════════════════════════════════════════════════

class TestTheta(unittest.TestCase):

    def test_hom_sizes(self):
        self.assertEqual(len(theta_finitary(PartialityMonad(), 1).hom("1", "1")), 2)
        self.assertEqual(len(theta_finitary(StateMonad(ONE_BIT), 1).hom("1", "1")), 4)
        self.assertEqual(len(theta_finitary(ExceptionsMonad(("e",)), 1).hom("0", "1")), 1)

    def test_categories_are_valid(self):
        for t, bound in ((PartialityMonad(), 3), (ExceptionsMonad(("e",)), 3),
                         (NondeterminismMonad(), 2), (StateMonad(ONE_BIT), 1)):
            report = validate_category(theta_finitary(t, bound))
            self.assertTrue(report.ok, (t.name, report.violations[:3]))

    def test_overflow(self):
        with self.assertRaises(CarrierOverflowError):
            theta(StateMonad(ONE_BIT), 3)


class TestAlgebras(unittest.TestCase):

    def test_pointed_sets(self):
        self.assertEqual(len(algebras(PartialityMonad(), (0, 1))), 2)

    def test_semilattices(self):
        self.assertEqual(len(algebras(NondeterminismMonad(), (0, 1))), 2)

    def test_nerve_is_functorial_and_recovered(self):
        t = NondeterminismMonad()
        theta_cat = theta(t, 2)
        for alpha in algebras(t, (0, 1)):
            nerve = algebra_nerve(theta_cat, (0, 1), alpha)
            self.assertTrue(check_functoriality(nerve).ok)
            result = linton_check(nerve, theta_cat)
            self.assertTrue(result.ok, result.reason)
            for tau, value in alpha.items():
                self.assertEqual(result.structure[t.fmap(lambda v: (v,), tau)], (value,))

    def test_sum_of_two_nerves_fails(self):
        t = PartialityMonad()
        theta_cat = theta(t, 2)
        first, second = (algebra_nerve(theta_cat, (0, 1), alpha) for alpha in algebras(t, (0, 1)))
        result = linton_check(_sum(first, second), theta_cat)
        self.assertFalse(result.ok)
        self.assertEqual(result.level, 0)


def _sum(p, q):
    """Coproducto de dos prehaces sobre la misma base."""
    carrier = {o: tuple(("L", y) for y in p.carrier[o]) + tuple(("R", y) for y in q.carrier[o]) for o in p.carrier}
    action = {
        f: {**{("L", y): ("L", v) for y, v in p.action[f].items()},
            **{("R", y): ("R", v) for y, v in q.action[f].items()}}
        for f in p.action
    }
    return SetFunctor(p.base, carrier, action)
