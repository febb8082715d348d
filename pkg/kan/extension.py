"""
kan/extension.py — Extensiones de Kan a izquierda puntuales

(Lan_i F)(e) = ∫^c E(i c, e) × F c. Los elementos son triples (c, u, x) con
u: i c -> e y x ∈ F c, módulo (c, i(w);u', x) ~ (c', u', F(w)x) para w: c -> c'.
"""
import logging
from dataclasses import dataclass

from core.category import Arrow, FinCategory
from core.colimits import ColimitResult, colimit_set_functor, functor_colimit_oracle
from core.errors import DomainMismatchError
from core.functors import FinFunctor, SetFunctor
from core.report import Report
from kan.coend import MixedVarianceFunctor, coend_set

logger = logging.getLogger("nervio.kan")


@dataclass(frozen=True)
class LanValue:
    """El valor en e: las clases y el co-cono (c, u) ↦ (x ↦ clase)."""
    obj: object
    colimit: ColimitResult

    @property
    def size(self) -> int:
        return self.colimit.size

    def class_of(self, c, u, x):
        return self.colimit.injections[(c, (u, x))]

    def to_dict(self) -> dict:
        return {"object": str(self.obj), **self.colimit.to_dict()}


def _lan_mixed(f: SetFunctor, i: FinFunctor, e) -> MixedVarianceFunctor:
    """S(a, b) = E(i a, e) × F b."""
    c, big = f.base, i.target
    carrier = {
        (a, b): tuple((u, x) for u in big.hom(i.objects[a], e) for x in f.carrier[b])
        for a in c.objects for b in c.objects
    }
    left = {
        (w.id, b): {(u, x): (big.compose(i.arrows[w.id], u), x) for u, x in carrier[(w.tgt, b)]}
        for w in c.arrows for b in c.objects
    }
    right = {
        (a, w.id): {(u, x): (u, f.action[w.id][x]) for u, x in carrier[(a, w.src)]}
        for a in c.objects for w in c.arrows
    }
    return MixedVarianceFunctor(c, carrier, left, right)


def pointwise_lan(f: SetFunctor, i: FinFunctor, e) -> LanValue:
    if e not in set(i.target.objects):
        raise DomainMismatchError(f"pointwise_lan: {e!r} no es objeto de E")
    if i.source != f.base:
        raise DomainMismatchError("pointwise_lan: la base de F no es el dominio de i")
    value = LanValue(e, coend_set(_lan_mixed(f, i, e)))
    logger.debug(f"Lan({e!r}): {value.size} clases")
    return value


def left_kan_extension(f: SetFunctor, i: FinFunctor) -> SetFunctor:
    """Lan_i F completo: E actúa por poscomposición u ↦ u;g."""
    big = i.target
    values = {e: pointwise_lan(f, i, e) for e in big.objects}
    carrier = {e: values[e].colimit.apex for e in big.objects}
    action = {}
    for g in big.arrows:
        target = values[g.tgt]
        action[g.id] = {}
        for k in carrier[g.src]:
            c, (u, x) = k
            action[g.id][k] = target.class_of(c, big.compose(u, g.id), x)
    logger.info(f"🧭 Lan_i F: tamaños {[len(carrier[e]) for e in big.objects]}")
    return SetFunctor(big, carrier, action)


def lan_unit(f: SetFunctor, i: FinFunctor, c) -> dict:
    """Componente en c de la unidad F -> (Lan_i F)∘i: x ↦ [(c, 1, x)]."""
    e = i.objects[c]
    value = pointwise_lan(f, i, e)
    ident = i.target.identity(e)
    return {x: value.class_of(c, ident, x) for x in f.carrier[c]}


def comma_category(i: FinFunctor, e) -> FinCategory:
    """(i ↓ e): objetos (c, u: i c -> e); una flecha (w, u') va de (c, i(w);u') a (c', u')."""
    c, big = i.source, i.target
    objects = tuple((a, u) for a in c.objects for u in big.hom(i.objects[a], e))
    arrows = []
    for w in c.arrows:
        for u2 in big.hom(i.objects[w.tgt], e):
            u1 = big.compose(i.arrows[w.id], u2)
            arrows.append(Arrow((w.id, u2), (w.src, u1), (w.tgt, u2)))
    comp = {}
    for a1 in arrows:
        for a2 in arrows:
            if a1.tgt == a2.src:
                (w1, _), (w2, u3) = a1.id, a2.id
                comp[(a1.id, a2.id)] = (c.compose(w1, w2), u3)
    identities = {(a, u): (c.identity(a), u) for a, u in objects}
    return FinCategory(objects, tuple(arrows), identities, comp)


def comma_colimit_oracle(f: SetFunctor, i: FinFunctor, e) -> frozenset:
    """Partición de los triples (c, u, x) vía el colímite sobre la categoría coma."""
    comma = comma_category(i, e)
    projected = SetFunctor(
        comma,
        {(a, u): f.carrier[a] for a, u in comma.objects},
        {arrow.id: dict(f.action[arrow.id[0]]) for arrow in comma.arrows},
    )
    partition = functor_colimit_oracle(projected)
    return frozenset(
        frozenset((a, (u, x)) for (a, u), x in block)
        for block in partition
    )


def lan_as_colimit_check(f: SetFunctor, i: FinFunctor) -> bool:
    """Lan a lo largo del funtor a la categoría de un objeto vale el colímite de F."""
    if len(i.target.objects) != 1:
        raise DomainMismatchError(
            f"lan_as_colimit_check: E tiene {len(i.target.objects)} objetos; se esperaba 1"
        )
    (star,) = i.target.objects
    return pointwise_lan(f, i, star).size == colimit_set_functor(f).size


def lan_comma_report(f: SetFunctor, i: FinFunctor) -> Report:
    """
    En cada objeto e de E compara las clases del coend con el colímite sobre
    (i ↓ e). Si E tiene un solo objeto, además contra colim F.
    """
    report = Report("lan-comma")
    for e in i.target.objects:
        report.checked += 1
        ours = pointwise_lan(f, i, e).colimit.partition()
        oracle = comma_colimit_oracle(f, i, e)
        if ours != oracle:
            report.fail(
                f"Lan({e!r}): {len(ours)} clases por coend, {len(oracle)} por la categoría coma",
                {"object": str(e), "coend": len(ours), "comma": len(oracle)},
            )
    if len(i.target.objects) == 1:
        report.checked += 1
        if not lan_as_colimit_check(f, i):
            report.fail("Lan a lo largo de C -> 1 no coincide con colim F")
    logger.info(f"{'✅' if report.ok else '⚠️'} lan_comma_report: {report.checked} objetos revisados")
    return report
