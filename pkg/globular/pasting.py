"""
globular/pasting.py — Diagramas de pegado de dimensión 2

Un Pd2 es una fila de columnas; la columna i apila heights[i] 2-celdas.
Sustituir un diagrama en cada 2-celda sólo exige que los diagramas de una
misma columna compartan ancho: se suman alturas y se concatenan columnas.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Sequence, Union

from core.errors import InputError, WidthMismatchError

logger = logging.getLogger("nervio.globular")


@dataclass(frozen=True, order=True)
class Pd2:
    heights: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "heights", tuple(int(k) for k in self.heights))
        if any(k < 0 for k in self.heights):
            raise WidthMismatchError(f"Pd2: alturas negativas en {self.heights}")

    @property
    def width(self) -> int:
        return len(self.heights)

    @property
    def size(self) -> int:
        """Cantidad de 2-celdas."""
        return sum(self.heights)

    def label(self) -> str:
        return "(" + ",".join(str(k) for k in self.heights) + ")"

    def to_level_tree(self) -> tuple:
        """Vista de árbol de niveles: la raíz tiene una hoja-columna por cada columna."""
        return tuple(tuple(() for _ in range(k)) for k in self.heights)

    @classmethod
    def from_level_tree(cls, tree) -> "Pd2":
        return cls(tuple(len(column) for column in tree))


def parse_shape(text: str) -> Pd2:
    """"(1,2,0)" -> Pd2((1, 2, 0)); acepta también "()" y "(1)"."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise InputError(f"forma de pegado ilegible: {text!r}")
    inner = body[1:-1].strip().rstrip(",")
    if not inner:
        return Pd2(())
    try:
        return Pd2(tuple(int(k) for k in inner.split(",")))
    except ValueError:
        raise InputError(f"forma de pegado ilegible: {text!r}") from None


def enumerate_shapes(max_width: int, max_height: int) -> list:
    """Todas las formas de ancho ≤ max_width y alturas ≤ max_height, por ancho creciente."""
    return [
        Pd2(heights)
        for w in range(max_width + 1)
        for heights in itertools.product(range(max_height + 1), repeat=w)
    ]


def shapes_up_to(max_width: int, max_cells: int) -> list:
    """Formas de ancho ≤ max_width con a lo sumo max_cells 2-celdas en total."""
    return [p for p in enumerate_shapes(max_width, max_cells) if p.size <= max_cells]


def cell_names(p: Pd2) -> tuple:
    """Nombres de las celdas de la realización: (vértices, 1-celdas por columna, 2-celdas por columna)."""
    vertices = tuple(f"v{i}" for i in range(p.width + 1))
    columns = tuple(tuple(f"c{i}.{j}" for j in range(k + 1)) for i, k in enumerate(p.heights))
    cells = tuple(tuple(f"c{i}:{j}" for j in range(k)) for i, k in enumerate(p.heights))
    return vertices, columns, cells


ColumnLabel = Union[int, Sequence[Pd2]]


def pd_compose(outer: Pd2, labels: Sequence[ColumnLabel]) -> Pd2:
    """
    Sustitución en un diagrama.

    labels trae una entrada por columna de outer: la lista (de abajo hacia
    arriba) de los diagramas pegados en sus 2-celdas, o el ancho del camino
    que reemplaza a una columna sin 2-celdas.
    """
    if len(labels) != outer.width:
        raise WidthMismatchError(f"pd_compose: {outer.width} columnas y {len(labels)} etiquetas")
    heights: list = []
    for i, (k, label) in enumerate(zip(outer.heights, labels)):
        if k == 0:
            if not isinstance(label, int):
                raise WidthMismatchError(f"pd_compose: la columna {i} no tiene 2-celdas, se esperaba un ancho")
            heights.extend([0] * label)
            continue
        stack = list(label) if not isinstance(label, int) else []
        if len(stack) != k:
            raise WidthMismatchError(f"pd_compose: la columna {i} tiene {k} 2-celdas y {len(stack)} etiquetas")
        widths = {q.width for q in stack}
        if len(widths) != 1:
            raise WidthMismatchError(f"pd_compose: anchos {sorted(widths)} mezclados en la columna {i}")
        (w,) = widths
        heights.extend(sum(q.heights[c] for q in stack) for c in range(w))
    result = Pd2(tuple(heights))
    logger.debug(f"pd_compose {outer.label()} -> {result.label()}")
    return result
