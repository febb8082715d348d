"""
globular/factorize2.py — Factorización por formas de pegado

Un morfismo g: P -> T X (una forma P etiquetada por celdas libres) se parte
como P -> T F -> T X pegando las imágenes en una forma F: e manda cada celda
de P al bloque que ocupa en F y f etiqueta F con las celdas de X.
"""
import logging
from dataclasses import dataclass
from typing import Optional

from core.errors import MalformedMorphismError
from globular.free2 import (
    PdLabeling, check_labeling, column_block, free2_globset, generic_labeling, labelings_of_shape,
    mu2_substitute, relabel, tmap2,
)
from globular.globset import GlobularSet2, pd_realize
from globular.pasting import Pd2, shapes_up_to

logger = logging.getLogger("nervio.globular")


@dataclass(frozen=True)
class Factorization2:
    arity: Pd2
    middle: Pd2
    e: PdLabeling            # P -> T(realización de F), etiquetas = sub-formas de F
    f: PdLabeling            # F etiquetada por celdas de X

    def to_dict(self) -> dict:
        return {
            "arity": list(self.arity.heights),
            "middle": list(self.middle.heights),
            "e": self.e.to_dict(),
            "f": self.f.to_dict(),
        }


def split_like(g: PdLabeling, whole: PdLabeling) -> PdLabeling:
    """
    Corta `whole` (de la forma pegada de g) en los mismos bloques que g.

    split_like(g, mu2_substitute(g)) == g, y con whole genérico da la parte e.
    """
    offset = 0
    vertices, columns, cells = [whole.vertices[0]], [], []
    for i, k in enumerate(g.shape.heights):
        block = column_block(g, i)
        w = block[0].width
        base = [0] * w
        pieces = []
        for b in block:
            piece_columns, piece_cells = [], []
            for c in range(w):
                h = b.shape.heights[c]
                piece_columns.append(whole.columns[offset + c][base[c]:base[c] + h + 1])
                piece_cells.append(whole.cells[offset + c][base[c]:base[c] + h])
                base[c] += h
            pieces.append(PdLabeling(b.shape, whole.vertices[offset:offset + w + 1], piece_columns, piece_cells))
        if k == 0:
            columns.append((pieces[0],))
            cells.append(())
        else:
            columns.append(tuple(piece.source() for piece in pieces) + (pieces[-1].target(),))
            cells.append(tuple(pieces))
        offset += w
        vertices.append(whole.vertices[offset])
    return PdLabeling(g.shape, tuple(vertices), tuple(columns), tuple(cells))


def arity_factorize2(g: PdLabeling, x: Optional[GlobularSet2] = None) -> Factorization2:
    if x is not None:
        for lab in [f for column in g.columns for f in column] + [a for stack in g.cells for a in stack]:
            if not isinstance(lab, PdLabeling) or not check_labeling(lab, x).ok:
                raise MalformedMorphismError("arity_factorize2: una etiqueta no es una celda libre de X")
    glued = mu2_substitute(g)
    fact = Factorization2(g.shape, glued.shape, split_like(g, generic_labeling(glued.shape)), glued)
    logger.debug(f"arity_factorize2 {g.shape.label()} -> {glued.shape.label()}")
    return fact


def recompose2(fact: Factorization2) -> PdLabeling:
    """T f ∘ e."""
    mapping = fact.f.label_map()
    return tmap2(fact.e, mapping.__getitem__, lambda lab: relabel(lab, mapping), lambda lab: relabel(lab, mapping))


def factorizations2(g: PdLabeling, x: GlobularSet2, bound: int) -> list:
    """Búsqueda acotada de todas las factorizaciones con F de ancho y tamaño ≤ bound."""
    found = []
    for middle in shapes_up_to(bound, bound):
        labelings = labelings_of_shape(middle, x)
        if not labelings:
            continue
        inner = free2_globset(pd_realize(middle))
        for e in labelings_of_shape(g.shape, inner):
            for f in labelings:
                fact = Factorization2(g.shape, middle, e, f)
                if recompose2(fact) == g:
                    found.append(fact)
    logger.debug(f"factorizations2: {len(found)} factorizaciones con cota {bound}")
    return found
