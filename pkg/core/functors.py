"""
core/functors.py — Funtores entre categorías finitas, funtores a Set y
transformaciones naturales

Un SetFunctor sobre la opuesta de una categoría es un prehaz; no hay un tipo
aparte para eso.
"""
import logging
from dataclasses import dataclass
from typing import Hashable, Iterable

from core.category import FinCategory, opposite, sort_key
from core.errors import DomainMismatchError, InvalidStructureError
from core.report import Report

logger = logging.getLogger("nervio.core")


@dataclass(frozen=True)
class FinFunctor:
    source: FinCategory
    target: FinCategory
    objects: dict            # objeto -> objeto
    arrows: dict             # flecha -> flecha

    def __call__(self, f):
        return self.arrows[f]


def check_functor(F: FinFunctor) -> Report:
    report = Report("functor")
    c, d = F.source, F.target
    for obj in c.objects:
        if obj not in F.objects or F.objects[obj] not in d.objects:
            report.fail(f"object map indefinido en {obj!r}", {"object": obj})
    for a in c.arrows:
        image = F.arrows.get(a.id)
        if image is None or image not in d._index:
            report.fail(f"arrow map indefinido en {a.id!r}", {"arrow": a.id})
            continue
        if d.src(image) != F.objects.get(a.src) or d.tgt(image) != F.objects.get(a.tgt):
            report.fail(f"src/tgt no preservados por {a.id!r} -> {image!r}", {"arrow": a.id})
    if report.violations:
        return report
    for obj in c.objects:
        if F.arrows[c.identity(obj)] != d.identity(F.objects[obj]):
            report.fail(f"identidad de {obj!r} no preservada", {"object": obj})
    for f, g in c.composable_pairs():
        report.checked += 1
        if F.arrows[c.compose(f, g)] != d.compose(F.arrows[f], F.arrows[g]):
            report.fail(f"composición ({f!r}, {g!r}) no preservada", {"pair": [f, g]})
    return report


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(c, c, {o: o for o in c.objects}, {a: a for a in c.arrow_ids()})


def compose_functors(F: FinFunctor, G: FinFunctor) -> FinFunctor:
    """F luego G."""
    if F.target != G.source:
        raise DomainMismatchError("compose_functors: target(F) != source(G)")
    return FinFunctor(
        F.source, G.target,
        {o: G.objects[F.objects[o]] for o in F.source.objects},
        {a: G.arrows[F.arrows[a]] for a in F.source.arrow_ids()},
    )


def is_fully_faithful(F: FinFunctor) -> bool:
    c, d = F.source, F.target
    for a in c.objects:
        for b in c.objects:
            images = [F.arrows[f] for f in c.hom(a, b)]
            if len(set(images)) != len(images):
                return False
            if len(images) != len(d.hom(F.objects[a], F.objects[b])):
                return False
    return True


def terminal_functor(c: FinCategory, point: FinCategory) -> FinFunctor:
    """El único funtor hacia la categoría de un objeto."""
    (star,) = point.objects
    ident = point.identity(star)
    return FinFunctor(c, point, {o: star for o in c.objects}, {a: ident for a in c.arrow_ids()})


# ─── Funtores a Set ──────────────────────────────────────────────────────

@dataclass(frozen=True)
class SetFunctor:
    base: FinCategory
    carrier: dict            # objeto -> tuple de elementos
    action: dict             # flecha -> {x: F(f)(x)}

    def apply(self, f, x):
        return self.action[f][x]

    def size(self, obj) -> int:
        return len(self.carrier[obj])

    def elements(self) -> list:
        """Unión disjunta etiquetada: [(objeto, elemento), ...]."""
        return [(o, x) for o in self.base.objects for x in self.carrier[o]]

    def without(self, obj, element) -> "SetFunctor":
        """Mayor subfuntor que evita `element` en `obj`."""
        removed = {(obj, element)}
        changed = True
        while changed:
            changed = False
            for a in self.base.arrows:
                for x in self.carrier[a.src]:
                    if (a.src, x) in removed:
                        continue
                    if (a.tgt, self.action[a.id][x]) in removed:
                        removed.add((a.src, x))
                        changed = True
        carrier = {o: tuple(x for x in xs if (o, x) not in removed) for o, xs in self.carrier.items()}
        action = {
            a.id: {x: y for x, y in self.action[a.id].items() if (a.src, x) not in removed}
            for a in self.base.arrows
        }
        return SetFunctor(self.base, carrier, action)

    def to_dict(self) -> dict:
        return {
            "kind": "set-functor",
            "base": self.base.to_dict(),
            "carrier": {str(o): [str(x) for x in xs] for o, xs in self.carrier.items()},
            "action": {
                str(f): {str(x): str(y) for x, y in sorted(m.items(), key=lambda kv: sort_key(kv[0]))}
                for f, m in self.action.items()
            },
        }


def check_functoriality(F: SetFunctor) -> Report:
    report = Report("set-functor")
    c = F.base
    for a in c.arrows:
        m = F.action.get(a.id)
        if m is None:
            report.fail(f"acción indefinida en {a.id!r}", {"arrow": a.id})
            continue
        targets = set(F.carrier[a.tgt])
        for x in F.carrier[a.src]:
            if x not in m or m[x] not in targets:
                report.fail(f"F({a.id!r}) no es una función {a.src!r} -> {a.tgt!r} en {x!r}",
                            {"arrow": a.id, "element": x})
    if report.violations:
        return report
    for obj in c.objects:
        ident = F.action[c.identity(obj)]
        for x in F.carrier[obj]:
            if ident[x] != x:
                report.fail(f"F(id_{obj}) no es la identidad en {x!r}", {"object": obj, "element": x})
    for f, g in c.composable_pairs():
        h = c.compose(f, g)
        for x in F.carrier[c.src(f)]:
            report.checked += 1
            if F.action[h][x] != F.action[g][F.action[f][x]]:
                report.fail(f"F({f!r};{g!r}) != F({g!r})∘F({f!r}) en {x!r}",
                            {"pair": [f, g], "element": x})
    return report


def require_functorial(F: SetFunctor) -> SetFunctor:
    report = check_functoriality(F)
    if not report.ok:
        raise InvalidStructureError(report.violations[0], report)
    return F


def extend_action(c: FinCategory, carrier: dict, generators: dict) -> SetFunctor:
    """
    Completa la acción a partir de las flechas generadoras usando la tabla de
    composición: F(f;g) = F(g)∘F(f). Si dos descomposiciones no coinciden la
    acción resultante no es funtorial y check_functoriality lo reporta.
    """
    action = {c.identity(o): {x: x for x in carrier[o]} for o in c.objects}
    action.update({f: dict(m) for f, m in generators.items()})
    pending = True
    while pending:
        pending = False
        for (f, g), h in c.comp.items():
            if h in action or f not in action or g not in action:
                continue
            action[h] = {x: action[g][action[f][x]] for x in carrier[c.src(f)]}
            pending = True
    missing = [a for a in c.arrow_ids() if a not in action]
    if missing:
        raise InvalidStructureError(f"extend_action: flechas no generadas {missing!r}")
    return SetFunctor(c, {o: tuple(carrier[o]) for o in c.objects}, action)


def constant_functor(c: FinCategory, elements: Iterable) -> SetFunctor:
    xs = tuple(elements)
    ident = {x: x for x in xs}
    return SetFunctor(c, {o: xs for o in c.objects}, {a: dict(ident) for a in c.arrow_ids()})


def restrict(F: SetFunctor, i: FinFunctor) -> SetFunctor:
    """Precomposición F∘i (restricción a lo largo de i)."""
    if i.target != F.base:
        raise DomainMismatchError("restrict: la base de F no es el destino de i")
    return SetFunctor(
        i.source,
        {o: F.carrier[i.objects[o]] for o in i.source.objects},
        {f: dict(F.action[i.arrows[f]]) for f in i.source.arrow_ids()},
    )


def representable(c: FinCategory, obj: Hashable, contravariant: bool = True) -> SetFunctor:
    """c(-, obj) como prehaz (SetFunctor sobre la opuesta) o c(obj, -)."""
    if contravariant:
        base = opposite(c)
        carrier = {a: c.hom(a, obj) for a in c.objects}
        # en la opuesta, f: b -> a actúa por precomposición u ↦ f;u
        action = {
            f.id: {u: c.compose(f.id, u) for u in c.hom(f.tgt, obj)}
            for f in c.arrows
        }
        return SetFunctor(base, carrier, action)
    carrier = {b: c.hom(obj, b) for b in c.objects}
    action = {f.id: {u: c.compose(u, f.id) for u in c.hom(obj, f.src)} for f in c.arrows}
    return SetFunctor(c, carrier, action)


# ─── Transformaciones naturales ──────────────────────────────────────────

@dataclass(frozen=True)
class NatTransform:
    source: SetFunctor
    target: SetFunctor
    components: dict         # objeto -> {x: α(x)}


def check_naturality(t: NatTransform) -> Report:
    report = Report("naturality")
    if t.source.base != t.target.base:
        raise DomainMismatchError("check_naturality: bases distintas")
    c = t.source.base
    for a in c.arrows:
        for x in t.source.carrier[a.src]:
            report.checked += 1
            down_right = t.components[a.tgt][t.source.action[a.id][x]]
            right_down = t.target.action[a.id][t.components[a.src][x]]
            if down_right != right_down:
                report.fail(
                    f"square {a.id!r} at {x!r}: {down_right!r} != {right_down!r}",
                    {"arrow": a.id, "element": x},
                )
    return report


def identity_transform(F: SetFunctor) -> NatTransform:
    return NatTransform(F, F, {o: {x: x for x in xs} for o, xs in F.carrier.items()})
