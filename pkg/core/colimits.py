"""
core/colimits.py — Colímites de diagramas finitos en Set

El colímite de F: C -> Set es el coecualizador de las dos flechas
⊔_f F(src f) ⇉ ⊔_c F(c); el cociente se calcula con union-find.
Cada clase se nombra por su representante mínimo, así la salida es
reproducible.
"""
import collections
import itertools
import logging
import os
from dataclasses import dataclass
from typing import FrozenSet, Generic, Hashable, Iterable, Tuple, TypeVar

from core.category import sort_key
from core.functors import SetFunctor
from core.report import Report

logger = logging.getLogger("nervio.core")

COCONE_TARGET = int(os.getenv("NERVIO_COCONE_TARGET", "2"))

T = TypeVar("T")


class DisjointSet(Generic[T]):
    def __init__(self):
        self.parent = {}
        self.rank = {}

    def make_set(self, e: T):
        if e in self.parent:
            return
        self.parent[e] = e
        self.rank[e] = 0

    # find with path compression
    def find(self, e: T) -> T:
        self.make_set(e)
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[e] != root:
            self.parent[e], e = root, self.parent[e]
        return root

    # union by rank
    def union(self, x: T, y: T) -> bool:
        x_root = self.find(x)
        y_root = self.find(y)
        if x_root == y_root:
            return False
        if self.rank[x_root] < self.rank[y_root]:
            x_root, y_root = y_root, x_root
        self.parent[y_root] = x_root
        if self.rank[x_root] == self.rank[y_root]:
            self.rank[x_root] += 1
        return True

    def sets(self) -> FrozenSet[FrozenSet[T]]:
        groups = collections.defaultdict(set)
        for e in self.parent:
            groups[self.find(e)].add(e)
        return frozenset(frozenset(s) for s in groups.values())

    def sorted(self) -> Tuple[Tuple[T, ...], ...]:
        """Tupla ordenada de tuplas ordenadas; el primero de cada una es el representante."""
        return tuple(sorted((tuple(sorted(s, key=sort_key)) for s in self.sets()), key=sort_key))


@dataclass(frozen=True)
class ColimitResult:
    apex: tuple              # ids de clase (representantes mínimos), ordenados
    injections: dict         # elemento etiquetado -> id de clase

    @property
    def size(self) -> int:
        return len(self.apex)

    def classes(self) -> dict:
        groups: dict = {k: [] for k in self.apex}
        for e, k in self.injections.items():
            groups[k].append(e)
        return {k: tuple(sorted(v, key=sort_key)) for k, v in groups.items()}

    def partition(self) -> frozenset:
        return frozenset(frozenset(v) for v in self.classes().values())

    def to_dict(self) -> dict:
        return {
            "apex": [str(k) for k in self.apex],
            "size": self.size,
            "classes": {str(k): [str(e) for e in v] for k, v in self.classes().items()},
        }


def quotient(elements: Iterable[Hashable], pairs: Iterable[tuple]) -> ColimitResult:
    """Cociente de `elements` por la relación de equivalencia generada por `pairs`."""
    ds: DisjointSet = DisjointSet()
    for e in elements:
        ds.make_set(e)
    merges = 0
    for x, y in pairs:
        merges += ds.union(x, y)
    injections = {}
    for group in ds.sorted():
        for e in group:
            injections[e] = group[0]
    apex = tuple(sorted(set(injections.values()), key=sort_key))
    logger.debug(f"quotient: {len(injections)} elementos, {merges} uniones, {len(apex)} clases")
    return ColimitResult(apex, injections)


def _action_pairs(F: SetFunctor):
    for a in F.base.arrows:
        for x in F.carrier[a.src]:
            yield (a.src, x), (a.tgt, F.action[a.id][x])


def colimit_set_functor(F: SetFunctor) -> ColimitResult:
    return quotient(F.elements(), _action_pairs(F))


def colimit_oracle(elements: Iterable[Hashable], pairs: Iterable[tuple]) -> frozenset:
    """Menor relación de equivalencia por clausura explícita (sin union-find)."""
    elements = list(elements)
    rel = {(e, e) for e in elements}
    for x, y in pairs:
        rel |= {(x, y), (y, x)}
    # Warshall
    for k in elements:
        for i in elements:
            if (i, k) not in rel:
                continue
            for j in elements:
                if (k, j) in rel:
                    rel.add((i, j))
    return frozenset(frozenset(y for y in elements if (x, y) in rel) for x in elements)


def functor_colimit_oracle(F: SetFunctor) -> frozenset:
    return colimit_oracle(F.elements(), _action_pairs(F))


def cocone_universality(elements, pairs, result: ColimitResult, target_size: int = COCONE_TARGET) -> Report:
    """
    Enumera toda función de los elementos a un conjunto de `target_size`
    elementos; las que respetan la relación son los co-conos. Cada co-cono
    debe factorizar de forma única por el ápice.
    """
    report = Report("cocone-universality")
    elements = list(elements)
    pairs = list(pairs)
    if set(result.injections) != set(elements):
        report.fail("las inyecciones no cubren los elementos")
        return report
    for x, y in pairs:
        if result.injections[x] != result.injections[y]:
            report.fail(f"las inyecciones no forman co-cono en ({x!r}, {y!r})", {"pair": [x, y]})
    index = {e: i for i, e in enumerate(elements)}
    for values in itertools.product(range(target_size), repeat=len(elements)):
        if any(values[index[x]] != values[index[y]] for x, y in pairs):
            continue
        report.checked += 1
        mediator: dict = {}
        for e in elements:
            k = result.injections[e]
            if mediator.setdefault(k, values[index[e]]) != values[index[e]]:
                report.fail(f"co-cono {values} no factoriza por el ápice", {"cocone": list(values)})
                break
    if set(result.injections.values()) != set(result.apex):
        report.fail("el ápice no es la imagen de las inyecciones")
    return report


def colimit_universality(F: SetFunctor, result: ColimitResult, target_size: int = COCONE_TARGET) -> Report:
    return cocone_universality(F.elements(), list(_action_pairs(F)), result, target_size)
