"""
globular/globset.py — Conjuntos 2-globulares

Celdas de dimensión 0, 1 y 2 con fuente y destino. La globularidad pide
que una 2-celda vaya entre 1-celdas paralelas.
"""
import logging
from dataclasses import dataclass

from core.errors import InvalidStructureError
from core.report import Report
from globular.pasting import Pd2, cell_names

logger = logging.getLogger("nervio.globular")


@dataclass(frozen=True)
class GlobularSet2:
    cells0: tuple
    cells1: tuple
    cells2: tuple
    s1: dict
    t1: dict
    s2: dict
    t2: dict

    def __post_init__(self):
        report = check_globular(self)
        if not report.ok:
            raise InvalidStructureError(report.violations[0], report)

    def cells(self, dim: int) -> tuple:
        return (self.cells0, self.cells1, self.cells2)[dim]

    def parallel(self, a, b) -> bool:
        return self.s1[a] == self.s1[b] and self.t1[a] == self.t1[b]

    def sizes(self) -> list:
        return [len(self.cells0), len(self.cells1), len(self.cells2)]

    def to_dict(self) -> dict:
        return {
            "kind": "globular-set",
            "cells0": [str(v) for v in self.cells0],
            "cells1": [{"id": str(f), "src": str(self.s1[f]), "tgt": str(self.t1[f])} for f in self.cells1],
            "cells2": [{"id": str(a), "src": str(self.s2[a]), "tgt": str(self.t2[a])} for a in self.cells2],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GlobularSet2":
        ones, twos = data.get("cells1", []), data.get("cells2", [])
        return cls(
            tuple(data.get("cells0", [])),
            tuple(f["id"] for f in ones),
            tuple(a["id"] for a in twos),
            {f["id"]: f["src"] for f in ones},
            {f["id"]: f["tgt"] for f in ones},
            {a["id"]: a["src"] for a in twos},
            {a["id"]: a["tgt"] for a in twos},
        )


def make_globular_set(cells0, cells1: dict, cells2: dict) -> GlobularSet2:
    """cells1: {f: (x, y)}; cells2: {α: (f, g)}"""
    return GlobularSet2(
        tuple(cells0), tuple(cells1), tuple(cells2),
        {f: s for f, (s, _) in cells1.items()}, {f: t for f, (_, t) in cells1.items()},
        {a: s for a, (s, _) in cells2.items()}, {a: t for a, (_, t) in cells2.items()},
    )


def check_globular(x: GlobularSet2) -> Report:
    report = Report("globular-set")
    zeros, ones = set(x.cells0), set(x.cells1)
    for f in x.cells1:
        report.checked += 1
        if x.s1.get(f) not in zeros or x.t1.get(f) not in zeros:
            report.fail(f"1-celda {f!r} con borde fuera de las 0-celdas", {"cell": str(f)})
    for a in x.cells2:
        report.checked += 1
        s, t = x.s2.get(a), x.t2.get(a)
        if s not in ones or t not in ones:
            report.fail(f"2-celda {a!r} con borde fuera de las 1-celdas", {"cell": str(a)})
        elif x.s1[s] != x.s1[t] or x.t1[s] != x.t1[t]:
            report.fail(f"globularidad: s1∘s2 ≠ s1∘t2 o t1∘s2 ≠ t1∘t2 en {a!r}", {"cell": str(a)})
    return report


def pd_realize(p: Pd2) -> GlobularSet2:
    """El 2-grafo de una forma: m+1 vértices y, por columna, k+1 1-celdas paralelas y k 2-celdas."""
    vertices, columns, cells = cell_names(p)
    s1, t1, s2, t2 = {}, {}, {}, {}
    for i, column in enumerate(columns):
        for f in column:
            s1[f], t1[f] = vertices[i], vertices[i + 1]
        for j, a in enumerate(cells[i]):
            s2[a], t2[a] = column[j], column[j + 1]
    return GlobularSet2(
        vertices,
        tuple(f for column in columns for f in column),
        tuple(a for stack in cells for a in stack),
        s1, t1, s2, t2,
    )
