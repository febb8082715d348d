"""
globular/free2.py — La 2-categoría libre sobre un conjunto 2-globular

Una 2-celda libre es una forma Pd2 etiquetada: cada vértice, 1-celda y
2-celda de la realización recibe una celda del destino respetando bordes.
Las etiquetas pueden ser ellas mismas PdLabeling, así T X, T T X y T T T X
se manejan con el mismo tipo. μ pega las etiquetas internas columna por
columna; η es la forma de una sola celda.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Optional

from core.errors import DomainMismatchError, MalformedMorphismError, WidthMismatchError
from core.report import Report
from globular.globset import GlobularSet2
from globular.pasting import Pd2, cell_names

logger = logging.getLogger("nervio.globular")


@dataclass(frozen=True)
class PdLabeling:
    shape: Pd2
    vertices: tuple          # width + 1 etiquetas de 0-celdas
    columns: tuple           # por columna, las k + 1 etiquetas de sus 1-celdas (de abajo hacia arriba)
    cells: tuple             # por columna, las k etiquetas de sus 2-celdas

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "columns", tuple(tuple(c) for c in self.columns))
        object.__setattr__(self, "cells", tuple(tuple(c) for c in self.cells))
        p = self.shape
        if len(self.vertices) != p.width + 1 or len(self.columns) != p.width or len(self.cells) != p.width:
            raise MalformedMorphismError(f"PdLabeling: la forma {p.label()} no coincide con las etiquetas")
        for i, k in enumerate(p.heights):
            if len(self.columns[i]) != k + 1 or len(self.cells[i]) != k:
                raise MalformedMorphismError(f"PdLabeling: columna {i} mal etiquetada para altura {k}")

    @property
    def width(self) -> int:
        return self.shape.width

    @property
    def size(self) -> int:
        return self.shape.size

    def is_path(self) -> bool:
        return self.size == 0

    def source(self) -> "PdLabeling":
        return path_labeling(self.vertices, [column[0] for column in self.columns])

    def target(self) -> "PdLabeling":
        return path_labeling(self.vertices, [column[-1] for column in self.columns])

    def label_map(self) -> dict:
        """Nombre de celda de la realización -> etiqueta."""
        names = cell_names(self.shape)
        mapping = dict(zip(names[0], self.vertices))
        for named, labels in zip(names[1] + names[2], self.columns + self.cells):
            mapping.update(zip(named, labels))
        return mapping

    def label(self) -> str:
        if self.is_path():
            return ".".join(_text(c[0]) for c in self.columns) if self.columns else f"id({_text(self.vertices[0])})"
        parts = []
        for column, stack in zip(self.columns, self.cells):
            parts.append("/".join(_text(a) for a in stack) if stack else _text(column[0]))
        return f"{self.shape.label()}[{' | '.join(parts)}]"

    def to_dict(self) -> dict:
        return {
            "shape": list(self.shape.heights),
            "vertices": [_plain(v) for v in self.vertices],
            "columns": [[_plain(f) for f in column] for column in self.columns],
            "cells": [[_plain(a) for a in stack] for stack in self.cells],
        }


def _text(label) -> str:
    return f"⟨{label.label()}⟩" if isinstance(label, PdLabeling) else str(label)


def _plain(label):
    return label.to_dict() if isinstance(label, PdLabeling) else str(label)


def path_labeling(vertices, ones) -> PdLabeling:
    """Un camino de 1-celdas visto como forma (0, …, 0)."""
    ones = list(ones)
    return PdLabeling(Pd2((0,) * len(ones)), tuple(vertices), tuple((f,) for f in ones), tuple(() for _ in ones))


def generic_labeling(p: Pd2) -> PdLabeling:
    """La forma etiquetada por los nombres de su propia realización."""
    return PdLabeling(p, *cell_names(p))


def check_labeling(lab: PdLabeling, x: GlobularSet2) -> Report:
    report = Report("pd-labeling")
    zeros, ones, twos = set(x.cells0), set(x.cells1), set(x.cells2)
    if any(v not in zeros for v in lab.vertices):
        report.fail("vértice fuera de las 0-celdas")
        return report
    for i, (column, stack) in enumerate(zip(lab.columns, lab.cells)):
        for f in column:
            report.checked += 1
            if f not in ones or x.s1[f] != lab.vertices[i] or x.t1[f] != lab.vertices[i + 1]:
                report.fail(f"1-celda {f!r} no une los vértices de la columna {i}", {"column": i, "cell": str(f)})
        for j, a in enumerate(stack):
            report.checked += 1
            if a not in twos or x.s2[a] != column[j] or x.t2[a] != column[j + 1]:
                report.fail(f"2-celda {a!r} mal apilada en la columna {i}", {"column": i, "cell": str(a)})
    return report


# ─── Enumeración ──────────────────────────────────────────────────────────

def _stacks(x: GlobularSet2, f, max_height: int, exact: bool, over: dict) -> list:
    """Pilas verticales que empiezan en f: (1-celdas, 2-celdas)."""
    found = [] if exact and max_height > 0 else [((f,), ())]
    if max_height == 0:
        return found
    for a in over.get(f, ()):
        for column, stack in _stacks(x, x.t2[a], max_height - 1, exact, over):
            found.append(((f,) + column, (a,) + stack))
    return found


def _indices(x: GlobularSet2) -> tuple:
    out_ones, over = {}, {}
    for f in x.cells1:
        out_ones.setdefault(x.s1[f], []).append(f)
    for a in x.cells2:
        over.setdefault(x.s2[a], []).append(a)
    return out_ones, over


def labelings_of_shape(p: Pd2, x: GlobularSet2) -> list:
    """Todos los morfismos de la realización de p en x."""
    out_ones, over = _indices(x)
    found = []

    def extend(i: int, vertices: list, columns: list, cells: list):
        if i == p.width:
            found.append(PdLabeling(p, tuple(vertices), tuple(columns), tuple(cells)))
            return
        for f in out_ones.get(vertices[-1], ()):
            for column, stack in _stacks(x, f, p.heights[i], True, over):
                extend(i + 1, vertices + [x.t1[f]], columns + [column], cells + [stack])

    for v in x.cells0:
        extend(0, [v], [], [])
    return found


def _bounded(x: GlobularSet2, max_width: int, max_cells: int) -> list:
    out_ones, over = _indices(x)
    found = []

    def extend(vertices: list, columns: list, cells: list, heights: list, left: int):
        found.append(PdLabeling(Pd2(tuple(heights)), tuple(vertices), tuple(columns), tuple(cells)))
        if len(heights) == max_width:
            return
        for f in out_ones.get(vertices[-1], ()):
            for column, stack in _stacks(x, f, left, False, over):
                extend(vertices + [x.t1[f]], columns + [column], cells + [stack],
                       heights + [len(stack)], left - len(stack))

    for v in x.cells0:
        extend([v], [], [], [], max_cells)
    return found


def free2_cells(x: GlobularSet2, size_bound: int) -> list:
    """2-celdas libres de ancho ≤ size_bound y con ≤ size_bound 2-celdas."""
    found = _bounded(x, size_bound, size_bound)
    logger.debug(f"free2_cells: {len(found)} celdas con cota {size_bound}")
    return found


def _acyclic(nodes, edges) -> bool:
    indegree = {n: 0 for n in nodes}
    for _, t in edges:
        indegree[t] += 1
    ready = [n for n, d in indegree.items() if d == 0]
    seen = 0
    while ready:
        n = ready.pop()
        seen += 1
        for s, t in edges:
            if s == n:
                indegree[t] -= 1
                if indegree[t] == 0:
                    ready.append(t)
    return seen == len(indegree)


def free2_is_finite(x: GlobularSet2) -> bool:
    """T X es finito si no hay ciclos de 1-celdas ni de 2-celdas."""
    return (_acyclic(x.cells0, [(x.s1[f], x.t1[f]) for f in x.cells1])
            and _acyclic(x.cells1, [(x.s2[a], x.t2[a]) for a in x.cells2]))


def free2_all(x: GlobularSet2) -> list:
    if not free2_is_finite(x):
        raise DomainMismatchError("free2_all: el conjunto globular tiene ciclos, T X es infinito")
    return _bounded(x, len(x.cells0), len(x.cells0) * len(x.cells1))


def free2_globset(x: GlobularSet2, bound: Optional[int] = None) -> GlobularSet2:
    """T X como conjunto globular: 1-celdas = caminos, 2-celdas = formas etiquetadas."""
    twos = free2_all(x) if bound is None else free2_cells(x, bound)
    ones = [lab for lab in twos if lab.is_path()]
    return GlobularSet2(
        tuple(x.cells0), tuple(ones), tuple(twos),
        {f: f.vertices[0] for f in ones}, {f: f.vertices[-1] for f in ones},
        {a: a.source() for a in twos}, {a: a.target() for a in twos},
    )


# ─── Estructura de mónada ─────────────────────────────────────────────────

def unit_cell(x: GlobularSet2, cell, dim: int) -> PdLabeling:
    """η_X en una celda de dimensión dim."""
    if dim == 0:
        return PdLabeling(Pd2(()), (cell,), (), ())
    if dim == 1:
        return path_labeling((x.s1[cell], x.t1[cell]), [cell])
    f, g = x.s2[cell], x.t2[cell]
    return PdLabeling(Pd2((1,)), (x.s1[f], x.t1[f]), ((f, g),), ((cell,),))


def unit_labeling(lab, dim: int) -> PdLabeling:
    """η_{T X}: una celda de T X vista como forma de una sola celda."""
    if dim == 0:
        return PdLabeling(Pd2(()), (lab,), (), ())
    ends = (lab.vertices[0], lab.vertices[-1])
    if dim == 1:
        return path_labeling(ends, [lab])
    return PdLabeling(Pd2((1,)), ends, ((lab.source(), lab.target()),), ((lab,),))


def tmap2(lab: PdLabeling, f0: Callable, f1: Callable, f2: Callable) -> PdLabeling:
    """T aplicado a un morfismo dado por sus tres componentes."""
    return PdLabeling(
        lab.shape,
        tuple(f0(v) for v in lab.vertices),
        tuple(tuple(f1(f) for f in column) for column in lab.columns),
        tuple(tuple(f2(a) for a in stack) for stack in lab.cells),
    )


def relabel(lab: PdLabeling, mapping: dict) -> PdLabeling:
    get = mapping.__getitem__
    return tmap2(lab, get, get, get)


def column_block(outer: PdLabeling, i: int) -> list:
    """Las celdas libres que se pegan en la columna i, validadas contra sus bordes."""
    k = outer.shape.heights[i]
    block = [outer.columns[i][0]] if k == 0 else list(outer.cells[i])
    if not all(isinstance(b, PdLabeling) for b in block):
        raise MalformedMorphismError(f"mu2_substitute: la columna {i} no está etiquetada por celdas libres")
    if k == 0 and not block[0].is_path():
        raise MalformedMorphismError(f"mu2_substitute: la 1-celda de la columna {i} no es un camino")
    for j, b in enumerate(block if k else []):
        if b.source() != outer.columns[i][j] or b.target() != outer.columns[i][j + 1]:
            raise MalformedMorphismError(f"mu2_substitute: bordes incompatibles en la celda {j} de la columna {i}")
    widths = {b.width for b in block}
    if len(widths) != 1:
        raise WidthMismatchError(f"mu2_substitute: anchos {sorted(widths)} mezclados en la columna {i}")
    if block[0].vertices[0] != outer.vertices[i] or block[0].vertices[-1] != outer.vertices[i + 1]:
        raise MalformedMorphismError(f"mu2_substitute: la columna {i} no une sus vértices")
    return block


def mu2_substitute(outer: PdLabeling) -> PdLabeling:
    """μ: pega las formas etiquetadas de cada columna en una sola forma."""
    vertices = [outer.vertices[0]]
    heights, columns, cells = [], [], []
    for i in range(outer.width):
        block = column_block(outer, i)
        for c in range(block[0].width):
            heights.append(sum(b.shape.heights[c] for b in block))
            column = list(block[0].columns[c])
            for b in block[1:]:
                column.extend(b.columns[c][1:])
            columns.append(tuple(column))
            cells.append(tuple(a for b in block for a in b.cells[c]))
        vertices.extend(block[0].vertices[1:])
    return PdLabeling(Pd2(tuple(heights)), tuple(vertices), tuple(columns), tuple(cells))


def vertical_compose(a: PdLabeling, b: PdLabeling) -> PdLabeling:
    """a y luego b, con target(a) = source(b)."""
    if a.target() != b.source():
        raise MalformedMorphismError("vertical_compose: el destino de a no es la fuente de b")
    return PdLabeling(
        Pd2(tuple(h + k for h, k in zip(a.shape.heights, b.shape.heights))),
        a.vertices,
        tuple(ca + cb[1:] for ca, cb in zip(a.columns, b.columns)),
        tuple(sa + sb for sa, sb in zip(a.cells, b.cells)),
    )


def horizontal_compose(a: PdLabeling, b: PdLabeling) -> PdLabeling:
    if a.vertices[-1] != b.vertices[0]:
        raise MalformedMorphismError("horizontal_compose: los diagramas no comparten vértice")
    return PdLabeling(
        Pd2(a.shape.heights + b.shape.heights),
        a.vertices + b.vertices[1:],
        a.columns + b.columns,
        a.cells + b.cells,
    )


def free2_by_moves(x: GlobularSet2, bound: int) -> set:
    """Clausura de las celdas de x bajo composición vertical y horizontal, dentro de la cota."""
    def fits(lab: PdLabeling) -> bool:
        return lab.width <= bound and lab.size <= bound

    found = {unit_cell(x, v, 0) for v in x.cells0}
    found |= {c for c in (unit_cell(x, f, 1) for f in x.cells1) if fits(c)}
    found |= {c for c in (unit_cell(x, a, 2) for a in x.cells2) if fits(c)}
    frontier = set(found)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in list(found):
                for left, right in ((a, b), (b, a)):
                    candidates = []
                    if left.vertices[-1] == right.vertices[0]:
                        candidates.append(horizontal_compose(left, right))
                    if left.width == right.width and left.target() == right.source():
                        candidates.append(vertical_compose(left, right))
                    fresh.update(c for c in candidates if fits(c) and c not in found)
        found |= fresh
        frontier = fresh
    logger.debug(f"free2_by_moves: {len(found)} celdas con cota {bound}")
    return found


def monad_law_report2(x: GlobularSet2, bound: int = 3, nested: tuple = (2, 2, 1)) -> Report:
    """Leyes de unidad sobre T X (cota bound) y asociatividad sobre T T T X (cotas anidadas)."""
    report = Report("free-2-category-monad")
    for lab in free2_cells(x, bound):
        report.checked += 1
        left = mu2_substitute(tmap2(lab, lambda v: v, lambda f: unit_cell(x, f, 1), lambda a: unit_cell(x, a, 2)))
        if left != lab:
            report.fail(f"μ∘Tη ≠ id en {lab.label()}", {"cell": lab.label()})
        if mu2_substitute(unit_labeling(lab, 2)) != lab:
            report.fail(f"μ∘ηT ≠ id en {lab.label()}", {"cell": lab.label()})
    inner, middle, outer = nested
    tx = free2_globset(x, inner)
    ttx = free2_globset(tx, middle)
    for z in free2_cells(ttx, outer):
        report.checked += 1
        once = mu2_substitute(tmap2(z, lambda v: v, mu2_substitute, mu2_substitute))
        if mu2_substitute(once) != mu2_substitute(mu2_substitute(z)):
            report.fail(f"μ∘Tμ ≠ μ∘μT en {z.label()}", {"cell": z.label()})
    logger.info(f"🧱 leyes de la 2-categoría libre: {report.checked} instancias, {len(report.violations)} violaciones")
    return report
