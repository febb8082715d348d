"""
kan/weighted.py — Colímites ponderados en categorías de prehaces y densidad

Los objetos del destino son prehaces (SetFunctor sobre una base común) y el
colímite ponderado se calcula nivel por nivel con el mismo cociente que un
colímite ordinario: en el nivel b los elementos son (c, w, x) con w ∈ W(c) y
x ∈ D(c)(b), y para u: c -> c' se identifica (c, W(u)w', x) con (c', w', D(u)x).
"""
import logging
import os
from dataclasses import dataclass, field
from typing import Optional

from core.category import FinCategory, full_subcategory, opposite, sort_key
from core.colimits import quotient
from core.errors import DomainMismatchError
from core.functors import NatTransform, SetFunctor
from freecat.graph import Graph, graph_to_presheaf, linear_quiver, presheaf_to_graph
from simplicial.delta import delta0_category, shift_id

logger = logging.getLogger("nervio.kan")

DEFAULT_BOUND = int(os.getenv("NERVIO_DEFAULT_BOUND", "3"))


@dataclass(frozen=True)
class WeightedDiagram:
    index: FinCategory
    weight: SetFunctor       # prehaz sobre index (base = opuesta)
    objects: dict            # c -> SetFunctor (prehaz sobre la base común)
    arrows: dict             # u -> NatTransform D(src u) -> D(tgt u)

    def presheaf_base(self) -> FinCategory:
        return next(iter(self.objects.values())).base


@dataclass(frozen=True)
class WeightedColimit:
    presheaf: SetFunctor
    levels: dict             # objeto de la base -> ColimitResult


def weighted_colimit(d: WeightedDiagram) -> WeightedColimit:
    c, w = d.index, d.weight
    if tuple(w.base.objects) != tuple(c.objects):
        raise DomainMismatchError("weighted_colimit: el peso no está sobre la categoría índice")
    base = d.presheaf_base()
    levels: dict = {}
    for b in base.objects:
        elements = [(a, v, x) for a in c.objects for v in w.carrier[a] for x in d.objects[a].carrier[b]]
        pairs = []
        for u in c.arrows:
            component = d.arrows[u.id].components[b]
            for v2 in w.carrier[u.tgt]:
                v1 = w.action[u.id][v2]
                for x in d.objects[u.src].carrier[b]:
                    pairs.append(((u.src, v1, x), (u.tgt, v2, component[x])))
        levels[b] = quotient(elements, pairs)
    action = {}
    for beta in base.arrows:
        result = levels[beta.tgt]
        action[beta.id] = {
            k: result.injections[(k[0], k[1], d.objects[k[0]].action[beta.id][k[2]])]
            for k in levels[beta.src].apex
        }
    presheaf = SetFunctor(base, {b: levels[b].apex for b in base.objects}, action)
    logger.debug(f"weighted_colimit: niveles {[len(levels[b].apex) for b in base.objects]}")
    return WeightedColimit(presheaf, levels)


# ─── Morfismos de prehaces ───────────────────────────────────────────────

def morphism_key(components: dict) -> tuple:
    return tuple(sorted((((o, x), y) for o, m in components.items() for x, y in m.items()), key=lambda kv: sort_key(kv[0])))


def presheaf_morphisms(p: SetFunctor, q: SetFunctor) -> list:
    """Todas las transformaciones naturales p -> q, como claves hashables."""
    base = p.base
    outgoing = {o: [a for a in base.arrows if a.src == o and not base.is_identity(a.id)] for o in base.objects}
    order = sorted(base.objects, key=lambda o: -len(outgoing[o]))
    elements = [(o, x) for o in order for x in p.carrier[o]]
    found = []
    assignment: dict = {}

    def consistent(o, x, y) -> bool:
        for a in outgoing[o]:
            image = (a.tgt, p.action[a.id][x])
            if image in assignment and assignment[image] != q.action[a.id][y]:
                return False
        for a in base.arrows:
            if a.tgt != o or base.is_identity(a.id):
                continue
            for x2 in p.carrier[a.src]:
                if p.action[a.id][x2] == x and (a.src, x2) in assignment:
                    if q.action[a.id][assignment[(a.src, x2)]] != y:
                        return False
        return True

    def extend(k: int):
        if k == len(elements):
            components: dict = {o: {} for o in base.objects}
            for (o, x), y in assignment.items():
                components[o][x] = y
            found.append(morphism_key(components))
            return
        o, x = elements[k]
        for y in q.carrier[o]:
            if consistent(o, x, y):
                assignment[(o, x)] = y
                extend(k + 1)
                del assignment[(o, x)]

    extend(0)
    return found


def apply_key(key: tuple, o, x):
    return dict(key)[(o, x)]


# ─── Sistemas de aridades y densidad ──────────────────────────────────────

@dataclass(frozen=True)
class AritySystem:
    """Un funtor i: A -> prehaces, con el rango de cada aridad para truncar."""
    index: FinCategory
    objects: dict            # a -> SetFunctor
    arrows: dict             # u -> NatTransform
    rank: dict               # a -> int

    def truncate(self, bound: int) -> "AritySystem":
        keep = [a for a in self.index.objects if self.rank[a] <= bound]
        index = full_subcategory(self.index, keep)
        return AritySystem(
            index,
            {a: self.objects[a] for a in keep},
            {u: self.arrows[u] for u in index.arrow_ids()},
            {a: self.rank[a] for a in keep},
        )


def delta0_graph_arities(N: int) -> AritySystem:
    """Δ₀ -> Graph: [n] ↦ i₀[n] y +k ↦ desplazar vértices y aristas en k."""
    index = delta0_category(N)
    objects = {str(n): graph_to_presheaf(linear_quiver(n)) for n in range(N + 1)}
    arrows = {}
    for m in range(N + 1):
        for n in range(m, N + 1):
            for k in range(n - m + 1):
                arrows[shift_id(m, n, k)] = NatTransform(
                    objects[str(m)], objects[str(n)],
                    {"V": {v: v + k for v in range(m + 1)}, "E": {e: e + k for e in range(m)}},
                )
    return AritySystem(index, objects, arrows, {str(n): n for n in range(N + 1)})


def nerve_weight(system: AritySystem, d: SetFunctor) -> SetFunctor:
    """c ↦ Hom(i c, d), con la acción por precomposición con i(u)."""
    carrier = {a: tuple(presheaf_morphisms(system.objects[a], d)) for a in system.index.objects}
    action = {}
    for u in system.index.arrows:
        transform = system.arrows[u.id]
        source = system.objects[u.src]
        action[u.id] = {}
        for phi in carrier[u.tgt]:
            table = dict(phi)
            action[u.id][phi] = morphism_key({
                o: {x: table[(o, transform.components[o][x])] for x in source.carrier[o]}
                for o in source.base.objects
            })
    return SetFunctor(opposite(system.index), carrier, action)


def diagram_of(system: AritySystem, weight: SetFunctor) -> WeightedDiagram:
    return WeightedDiagram(system.index, weight, dict(system.objects), dict(system.arrows))


@dataclass
class DensityVerdict:
    name: str
    verdict: str             # "isomorphism" | "undetermined"
    counts: dict = field(default_factory=dict)     # nivel -> [colímite, objeto]
    reason: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "counts": self.counts, "reason": self.reason}


def comparison_map(colimit: WeightedColimit, level) -> dict:
    """[(c, φ, x)] ↦ φ(x) en el nivel dado."""
    result = colimit.levels[level]
    image: dict = {}
    for (c, phi, x), k in result.injections.items():
        image.setdefault(k, set()).add(apply_key(phi, level, x))
    return image


def density_check(system: AritySystem, objects: dict, bound: Optional[int] = None) -> list:
    """
    Para cada objeto d compara el colímite de i ponderado por Hom(i -, d) con d.
    Una comparación biyectiva certifica "isomorphism"; cualquier otra cosa
    queda "undetermined" porque la cota puede ser insuficiente.
    """
    bound = DEFAULT_BOUND if bound is None else bound
    truncated = system.truncate(bound)
    verdicts = []
    for name, d in objects.items():
        colimit = weighted_colimit(diagram_of(truncated, nerve_weight(truncated, d)))
        verdict = DensityVerdict(str(name), "isomorphism")
        for level in d.base.objects:
            image = comparison_map(colimit, level)
            verdict.counts[str(level)] = [len(image), len(d.carrier[level])]
            values = [v for vs in image.values() for v in vs]
            if any(len(vs) != 1 for vs in image.values()):
                verdict.verdict, verdict.reason = "undetermined", f"comparación mal definida en {level!r}"
            elif len(set(values)) != len(values) or set(values) != set(d.carrier[level]):
                verdict.verdict = "undetermined"
                verdict.reason = verdict.reason or f"comparación no biyectiva en {level!r} con cota {bound}"
        logger.info(f"🧪 density {name}: {verdict.verdict} {verdict.counts}")
        verdicts.append(verdict)
    return verdicts


def graph_realization(x: SetFunctor, N: Optional[int] = None) -> Graph:
    """El grafo que pega las piezas filiformes de un prehaz sobre Δ₀."""
    N = len(x.carrier) - 1 if N is None else N
    system = delta0_graph_arities(N)
    colimit = weighted_colimit(diagram_of(system, x))
    g = presheaf_to_graph(colimit.presheaf)
    return Graph(
        tuple(sorted(g.vertices, key=sort_key)), tuple(sorted(g.edges, key=sort_key)), g.src, g.tgt,
    )


def colimit_levels(colimit: WeightedColimit) -> dict:
    return {str(b): r.size for b, r in colimit.levels.items()}
