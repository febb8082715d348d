"""
core/builders.py — Constructores de categorías finitas de uso frecuente
"""
import itertools
import logging

from core.category import Arrow, FinCategory, require_valid
from core.errors import InvalidStructureError

logger = logging.getLogger("nervio.core")


def identity_id(obj) -> str:
    return f"1_{obj}"


def make_category(objects, arrows: dict, compositions: dict | None = None) -> FinCategory:
    """
    Construye una categoría agregando identidades `1_X` y sus composiciones.

    arrows: id -> (src, tgt) de las flechas no identidad.
    compositions: (f, g) -> h para todo par componible de no identidades.
    """
    objects = tuple(objects)
    all_arrows = [Arrow(identity_id(o), o, o) for o in objects]
    all_arrows += [Arrow(f, s, t) for f, (s, t) in arrows.items()]
    comp = {}
    for a in all_arrows:
        comp[(identity_id(a.src), a.id)] = a.id
        comp[(a.id, identity_id(a.tgt))] = a.id
    comp.update(compositions or {})
    return FinCategory(objects, tuple(all_arrows), {o: identity_id(o) for o in objects}, comp)


def preorder_category(objects, leq) -> FinCategory:
    """Categoría delgada de la clausura reflexiva-transitiva de `leq`."""
    objects = tuple(objects)
    rel = {(a, a) for a in objects} | set(leq)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    name = {(a, b): f"{a}->{b}" for a, b in rel}
    arrows = tuple(Arrow(name[(a, b)], a, b) for a in objects for b in objects if (a, b) in rel)
    comp = {
        (name[(a, b)], name[(b, d)]): name[(a, d)]
        for (a, b) in rel for (c, d) in rel if b == c
    }
    return FinCategory(objects, arrows, {a: name[(a, a)] for a in objects}, comp)


def linear_poset(n: int) -> FinCategory:
    """La categoría i[n]: 0 -> 1 -> ... -> n con el orden usual."""
    objects = tuple(str(i) for i in range(n + 1))
    return preorder_category(objects, [(str(i), str(j)) for i in range(n + 1) for j in range(i, n + 1)])


def arrow_category() -> FinCategory:
    return linear_poset(1)


def discrete_category(objects) -> FinCategory:
    return preorder_category(objects, [])


def point_category() -> FinCategory:
    return discrete_category(["*"])


def monoid_category(elements, table: dict, unit, obj="*") -> FinCategory:
    """Monoide como categoría de un objeto. table[(x, y)] es "x luego y"."""
    arrows = tuple(Arrow(x, obj, obj) for x in elements)
    return FinCategory((obj,), arrows, {obj: unit}, dict(table))


def free_category_on_dag(vertices, edges: dict) -> FinCategory:
    """
    Categoría libre sobre un grafo acíclico: flechas = caminos.

    El camino a, b, c se llama "c∘b∘a"; las identidades son `1_X`.
    """
    vertices = tuple(vertices)
    out: dict = {v: [] for v in vertices}
    for e, (s, t) in edges.items():
        out[s].append((e, t))

    paths = []          # (nombre, src, tgt, secuencia de aristas)

    def walk(start, current, seq, seen):
        for e, t in out[current]:
            if t in seen:
                raise InvalidStructureError(f"free_category_on_dag: ciclo a través de {e!r}")
            new_seq = seq + (e,)
            paths.append((new_seq, start, t))
            walk(start, t, new_seq, seen | {t})

    for v in vertices:
        walk(v, v, (), {v})

    def name(seq):
        return "∘".join(reversed(seq))

    by_seq = {seq: name(seq) for seq, _, _ in paths}
    arrows = {name(seq): (s, t) for seq, s, t in paths}
    compositions = {}
    for (p, ps, pt), (q, qs, qt) in itertools.product(paths, repeat=2):
        if pt == qs:
            compositions[(by_seq[p], by_seq[q])] = by_seq[p + q]
    return make_category(vertices, arrows, compositions)


def finset_category(k: int) -> FinCategory:
    """Esqueleto de FinSet truncado: objetos 0..k, flechas = todas las funciones."""
    objects = tuple(str(n) for n in range(k + 1))

    def fid(n, m, values):
        return f"{n}->{m}:" + ",".join(str(v) for v in values)

    arrows = []
    table = {}
    for n in range(k + 1):
        for m in range(k + 1):
            for values in itertools.product(range(m), repeat=n):
                arrows.append(Arrow(fid(n, m, values), str(n), str(m)))
                table[fid(n, m, values)] = (n, m, values)
    comp = {}
    for f, (n, m, fv) in table.items():
        for p in range(k + 1):
            for gv in itertools.product(range(p), repeat=m):
                comp[(f, fid(m, p, gv))] = fid(n, p, tuple(gv[v] for v in fv))
    identities = {str(n): fid(n, n, tuple(range(n))) for n in range(k + 1)}
    return FinCategory(objects, tuple(arrows), identities, comp)


def finset_inclusion(k: int, l: int):
    """Inclusión plena FinSet_{≤k} -> FinSet_{≤l} (k ≤ l)."""
    from core.functors import FinFunctor

    small, big = finset_category(k), finset_category(l)
    return FinFunctor(small, big, {o: o for o in small.objects}, {a: a for a in small.arrow_ids()})


def disjoint_union(c: FinCategory, d: FinCategory, tags=("L", "R")) -> FinCategory:
    def tag(t, x):
        return f"{t}.{x}"

    objects, arrows, identities, comp = [], [], {}, {}
    for t, cat in zip(tags, (c, d)):
        objects += [tag(t, o) for o in cat.objects]
        arrows += [Arrow(tag(t, a.id), tag(t, a.src), tag(t, a.tgt)) for a in cat.arrows]
        identities.update({tag(t, o): tag(t, i) for o, i in cat.identities.items()})
        comp.update({(tag(t, f), tag(t, g)): tag(t, h) for (f, g), h in cat.comp.items()})
    return require_valid(FinCategory(tuple(objects), tuple(arrows), identities, comp))
