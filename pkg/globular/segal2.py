"""
globular/segal2.py — Nervio sobre formas de pegado y condición de Segal en dimensión 2

fpd2_category(w, h) es la categoría de Kleisli restringida a las formas de
ancho ≤ w y alturas ≤ h: una flecha P -> Q es una etiqueta de P por celdas
libres de la realización de Q. Las inclusiones globulares forman la
subcategoría pd_inclusion_category, el análogo de Δ₀.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from core.category import Arrow, FinCategory, opposite
from core.errors import DomainMismatchError, InvalidStructureError, TruncationError
from core.functors import SetFunctor
from globular.free2 import (
    PdLabeling, free2_globset, generic_labeling, labelings_of_shape, mu2_substitute, relabel, tmap2,
    unit_cell,
)
from globular.globset import GlobularSet2, pd_realize
from globular.pasting import Pd2, cell_names, enumerate_shapes, parse_shape

logger = logging.getLogger("nervio.globular")

ATOMIC_SHAPES = (Pd2(()), Pd2((0,)), Pd2((1,)))


@dataclass(frozen=True)
class ShapeCategory:
    category: FinCategory
    maps: dict               # id de flecha -> PdLabeling de Kleisli


def kleisli2_id(k: PdLabeling, q: Pd2) -> str:
    return f"{k.shape.label()}->{q.label()}|{k.label()}"


def kleisli2_compose(a: PdLabeling, b: PdLabeling) -> PdLabeling:
    """Primero a: P -> T(rQ), luego b: Q -> T Y. El resultado es P -> T Y."""
    mapping = b.label_map()

    def extend(lab: PdLabeling) -> PdLabeling:
        return mu2_substitute(relabel(lab, mapping))

    return tmap2(a, mapping.__getitem__, extend, extend)


def as_kleisli(m: PdLabeling, q: Pd2) -> PdLabeling:
    """η ∘ m para un morfismo globular m: rP -> rQ."""
    target = pd_realize(q)
    return tmap2(m, lambda v: v, lambda f: unit_cell(target, f, 1), lambda a: unit_cell(target, a, 2))


def _assemble(shapes: list, homs: dict, compose) -> ShapeCategory:
    maps, arrows = {}, []
    index = {}
    for (p, q), labs in homs.items():
        for lab in labs:
            key = kleisli2_id(lab, q)
            maps[key] = lab
            index[(p, q, lab)] = key
            arrows.append(Arrow(key, p.label(), q.label()))
    identities = {p.label(): kleisli2_id(as_kleisli(generic_labeling(p), p), p) for p in shapes}
    comp = {}
    for (p, q), first in homs.items():
        for r in shapes:
            for a in first:
                for b in homs.get((q, r), ()):
                    comp[(index[(p, q, a)], index[(q, r, b)])] = kleisli2_id(compose(a, b), r)
    return ShapeCategory(FinCategory(tuple(p.label() for p in shapes), tuple(arrows), identities, comp), maps)


@lru_cache(maxsize=8)
def fpd2(max_width: int, max_height: int) -> ShapeCategory:
    shapes = enumerate_shapes(max_width, max_height)
    free = {q: free2_globset(pd_realize(q)) for q in shapes}
    homs = {(p, q): labelings_of_shape(p, free[q]) for p in shapes for q in shapes}
    result = _assemble(shapes, homs, kleisli2_compose)
    logger.info(f"📐 fpd2({max_width},{max_height}): {len(shapes)} formas, {len(result.maps)} flechas")
    return result


@lru_cache(maxsize=8)
def pd_inclusions(max_width: int, max_height: int) -> ShapeCategory:
    shapes = enumerate_shapes(max_width, max_height)
    homs = {
        (p, q): [as_kleisli(m, q) for m in labelings_of_shape(p, pd_realize(q))]
        for p in shapes for q in shapes
    }
    return _assemble(shapes, {k: v for k, v in homs.items() if v}, kleisli2_compose)


def fpd2_category(max_width: int, max_height: int) -> FinCategory:
    return fpd2(max_width, max_height).category


def pd_inclusion_category(max_width: int, max_height: int) -> FinCategory:
    return pd_inclusions(max_width, max_height).category


def _underlying(k: PdLabeling) -> dict:
    """Un mapa de Kleisli que es inclusión: nombre -> nombre."""
    table = {}
    for name, lab in k.label_map().items():
        if not isinstance(lab, PdLabeling):
            table[name] = lab
        elif lab.size:
            table[name] = lab.cells[0][0]
        else:
            table[name] = lab.columns[0][0]
    return table


def glob_nerve(g: GlobularSet2, max_width: int, max_height: int) -> SetFunctor:
    """P ↦ morfismos rP -> G, con las inclusiones actuando por precomposición."""
    inclusions = pd_inclusions(max_width, max_height)
    shapes = enumerate_shapes(max_width, max_height)
    carrier = {p.label(): tuple(labelings_of_shape(p, g)) for p in shapes}
    action = {}
    for a in inclusions.category.arrows:
        table = _underlying(inclusions.maps[a.id])
        p = parse_shape(a.src)
        action[a.id] = {y: _precompose(p, table, y) for y in carrier[a.tgt]}
    return SetFunctor(opposite(inclusions.category), carrier, action)


def _precompose(p: Pd2, table: dict, y: PdLabeling) -> PdLabeling:
    labels = y.label_map()
    return relabel(generic_labeling(p), {name: labels[table[name]] for name in table})


def nerve2_of_free(x: GlobularSet2, max_width: int, max_height: int) -> SetFunctor:
    """El nervio de la 2-categoría libre sobre x, como prehaz en fpd2."""
    tx = free2_globset(x)
    shapes_category = fpd2(max_width, max_height)
    shapes = enumerate_shapes(max_width, max_height)
    carrier = {p.label(): tuple(labelings_of_shape(p, tx)) for p in shapes}
    action = {
        a.id: {y: kleisli2_compose(shapes_category.maps[a.id], y) for y in carrier[a.tgt]}
        for a in shapes_category.category.arrows
    }
    logger.info(f"🧱 nerve2_of_free: {[len(carrier[p.label()]) for p in shapes]}")
    return SetFunctor(opposite(shapes_category.category), carrier, action)


@dataclass
class Segal2Result:
    ok: bool
    globset: Optional[GlobularSet2] = None
    shape: Optional[str] = None
    reason: str = ""
    isomorphisms: dict = field(default_factory=dict)     # forma -> {x: etiqueta}
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "globular_set": self.globset.sizes() if self.globset is not None and self.ok else None,
            "witness": None if self.ok else {"shape": self.shape, "reason": self.reason},
            "warnings": list(self.warnings),
        }


def _inclusion_id(inclusions: ShapeCategory, p: Pd2, q: Pd2, images: dict) -> str:
    """Id de la inclusión rP -> rQ dada por la imagen de cada nombre de rP."""
    m = relabel(generic_labeling(p), images)
    return kleisli2_id(as_kleisli(m, q), q)


def _atomic_ids(inclusions: ShapeCategory, q: Pd2) -> PdLabeling:
    """Para cada celda de rQ, la inclusión de la forma atómica que la elige."""
    vertices, columns, cells = cell_names(q)
    point, arrow, cell = ATOMIC_SHAPES
    return PdLabeling(
        q,
        tuple(_inclusion_id(inclusions, point, q, {"v0": v}) for v in vertices),
        tuple(
            tuple(_inclusion_id(inclusions, arrow, q, {"v0": vertices[i], "v1": vertices[i + 1], "c0.0": f})
                  for f in column)
            for i, column in enumerate(columns)
        ),
        tuple(
            tuple(_inclusion_id(inclusions, cell, q, {
                "v0": vertices[i], "v1": vertices[i + 1],
                "c0.0": columns[i][j], "c0.1": columns[i][j + 1], "c0:0": a,
            }) for j, a in enumerate(stack))
            for i, stack in enumerate(cells)
        ),
    )


def segal2_check(x: SetFunctor) -> Segal2Result:
    """
    ¿Es x (sobre fpd2 o sólo sobre las inclusiones) el nervio de un conjunto globular?

    G se lee de las formas (), (0) y (1); luego cada forma P se compara con
    las etiquetas de P por G, elemento por elemento.
    """
    shapes = [parse_shape(o) for o in x.base.objects]
    if any(p.label() not in x.carrier for p in ATOMIC_SHAPES):
        raise TruncationError("segal2_check: la truncación debe incluir (), (0) y (1)")
    inclusions = pd_inclusions(max(p.width for p in shapes), max(max(p.heights, default=0) for p in shapes))
    missing = [a for a in inclusions.category.arrow_ids() if a not in x.action]
    if missing:
        raise DomainMismatchError(f"segal2_check: faltan inclusiones en la base, por ejemplo {missing[0]}")

    point, arrow, cell = ATOMIC_SHAPES
    ends = _atomic_ids(inclusions, arrow)
    sides = _atomic_ids(inclusions, cell)
    ones, twos = x.carrier[arrow.label()], x.carrier[cell.label()]
    try:
        g = GlobularSet2(
            tuple(x.carrier[point.label()]), tuple(ones), tuple(twos),
            {f: x.action[ends.vertices[0]][f] for f in ones},
            {f: x.action[ends.vertices[1]][f] for f in ones},
            {a: x.action[sides.columns[0][0]][a] for a in twos},
            {a: x.action[sides.columns[0][1]][a] for a in twos},
        )
    except InvalidStructureError as exc:
        return Segal2Result(False, shape=cell.label(), reason=str(exc))

    result = Segal2Result(True, globset=g)
    for p in shapes:
        ids = _atomic_ids(inclusions, p)
        images: dict = {}
        for y in x.carrier[p.label()]:
            lab = tmap2(ids, lambda u: x.action[u][y], lambda u: x.action[u][y], lambda u: x.action[u][y])
            images.setdefault(lab, []).append(y)
        expected = set(labelings_of_shape(p, g))
        doubled = [lab for lab, ys in images.items() if len(ys) > 1]
        if doubled:
            return Segal2Result(False, globset=g, shape=p.label(), reason=f"dos elementos con la misma etiqueta {doubled[0].label()}")
        lost = expected - set(images)
        if lost:
            return Segal2Result(False, globset=g, shape=p.label(), reason=f"etiqueta sin elemento: {next(iter(lost)).label()}")
        stray = set(images) - expected
        if stray:
            return Segal2Result(False, globset=g, shape=p.label(), reason=f"etiqueta que no es morfismo rP -> G: {next(iter(stray)).label()}")
        result.isomorphisms[p.label()] = {y: lab for lab, (y,) in images.items()}
    logger.info(f"✅ segal2_check: conjunto globular de tamaños {g.sizes()}")
    return result
