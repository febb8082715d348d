"""
kan/coend.py — Funtores de varianza mixta C^op × C -> Set y sus coends

El coend es el cociente de ⊔_c S(c, c) por la relación de cuña: para
u: a -> b y x ∈ S(b, a), (a, S(u, a)x) ~ (b, S(b, u)x).
"""
import itertools
import logging
from dataclasses import dataclass

from core.category import FinCategory
from core.colimits import ColimitResult, cocone_universality, quotient
from core.functors import SetFunctor
from core.report import Report

logger = logging.getLogger("nervio.kan")


@dataclass(frozen=True)
class MixedVarianceFunctor:
    base: FinCategory
    carrier: dict            # (a, b) -> tuple
    left: dict               # (u, b) -> {x ∈ S(tgt u, b): S(src u, b)}
    right: dict              # (a, v) -> {x ∈ S(a, src v): S(a, tgt v)}

    def diagonal(self) -> list:
        return [(c, x) for c in self.base.objects for x in self.carrier[(c, c)]]


def check_mixed(s: MixedVarianceFunctor) -> Report:
    """Cada pata funtorial por separado y las dos acciones conmutan."""
    report = Report("mixed-variance")
    c = s.base
    for f, g in c.composable_pairs():
        h = c.compose(f, g)
        for b in c.objects:
            # contravariante: S(f;g, b) = S(f, b) ∘ S(g, b)
            for x in s.carrier[(c.tgt(g), b)]:
                report.checked += 1
                if s.left[(h, b)][x] != s.left[(f, b)][s.left[(g, b)][x]]:
                    report.fail(f"left leg not functorial on ({f!r}, {g!r}) at {x!r}", {"pair": [f, g]})
        for a in c.objects:
            for x in s.carrier[(a, c.src(f))]:
                report.checked += 1
                if s.right[(a, h)][x] != s.right[(a, g)][s.right[(a, f)][x]]:
                    report.fail(f"right leg not functorial on ({f!r}, {g!r}) at {x!r}", {"pair": [f, g]})
    for o in c.objects:
        ident = c.identity(o)
        for b in c.objects:
            if any(s.left[(ident, b)][x] != x for x in s.carrier[(o, b)]):
                report.fail(f"left leg moves elements along {ident!r}", {"arrow": ident})
            if any(s.right[(b, ident)][x] != x for x in s.carrier[(b, o)]):
                report.fail(f"right leg moves elements along {ident!r}", {"arrow": ident})
    for u, v in itertools.product(c.arrows, repeat=2):
        for x in s.carrier[(u.tgt, v.src)]:
            report.checked += 1
            one = s.right[(u.src, v.id)][s.left[(u.id, v.src)][x]]
            two = s.left[(u.id, v.tgt)][s.right[(u.tgt, v.id)][x]]
            if one != two:
                report.fail(f"legs do not commute on ({u.id!r}, {v.id!r}) at {x!r}", {"pair": [u.id, v.id]})
    return report


def wedge_pairs(s: MixedVarianceFunctor):
    for u in s.base.arrows:
        a, b = u.src, u.tgt
        for x in s.carrier[(b, a)]:
            yield (a, s.left[(u.id, a)][x]), (b, s.right[(b, u.id)][x])


def coend_set(s: MixedVarianceFunctor) -> ColimitResult:
    result = quotient(s.diagonal(), wedge_pairs(s))
    logger.debug(f"coend: {len(s.diagonal())} elementos diagonales -> {result.size} clases")
    return result


def cowedge_universality(s: MixedVarianceFunctor, result: ColimitResult, target_size: int = 2) -> Report:
    """Toda co-cuña hacia un conjunto chico factoriza de forma única por el coend."""
    report = cocone_universality(s.diagonal(), list(wedge_pairs(s)), result, target_size)
    report.name = "cowedge-universality"
    return report


# ─── Constructores ───────────────────────────────────────────────────────

def hom_mixed(c: FinCategory) -> MixedVarianceFunctor:
    """S(a, b) = C(a, b); su coend son las clases de traza de los endomorfismos."""
    carrier = {(a, b): c.hom(a, b) for a in c.objects for b in c.objects}
    left = {(u.id, b): {x: c.compose(u.id, x) for x in carrier[(u.tgt, b)]} for u in c.arrows for b in c.objects}
    right = {(a, v.id): {x: c.compose(x, v.id) for x in carrier[(a, v.src)]} for a in c.objects for v in c.arrows}
    return MixedVarianceFunctor(c, carrier, left, right)


def tensor_mixed(weight: SetFunctor, f: SetFunctor) -> MixedVarianceFunctor:
    """S(a, b) = W(a) × F(b) con W un prehaz y F covariante sobre la misma base."""
    c = f.base
    carrier = {(a, b): tuple(itertools.product(weight.carrier[a], f.carrier[b])) for a in c.objects for b in c.objects}
    left = {
        (u.id, b): {(w, x): (weight.action[u.id][w], x) for w, x in carrier[(u.tgt, b)]}
        for u in c.arrows for b in c.objects
    }
    right = {
        (a, v.id): {(w, x): (w, f.action[v.id][x]) for w, x in carrier[(a, v.src)]}
        for a in c.objects for v in c.arrows
    }
    return MixedVarianceFunctor(c, carrier, left, right)
