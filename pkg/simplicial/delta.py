"""
simplicial/delta.py — La categoría simplicial Δ sobre ordinales finitos

[n] = {0, ..., n}. Las flechas son funciones débilmente monótonas. Los
generadores son las caras δᵢ: [n] -> [n+1] (se salta i) y las
degeneraciones σᵢ: [n+1] -> [n] (repite i). Toda flecha tiene una única
forma normal δ_{i1}…δ_{ik} σ_{j1}…σ_{jh} con i1 > … > ik y j1 < … < jh.
"""
import itertools
import logging
from dataclasses import dataclass
from math import comb

from core.category import Arrow, FinCategory
from core.errors import DomainMismatchError, InvalidStructureError

logger = logging.getLogger("nervio.simplicial")


@dataclass(frozen=True)
class MonotoneMap:
    dom: int
    cod: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.dom + 1:
            raise InvalidStructureError(f"MonotoneMap: se esperaban {self.dom + 1} valores")
        if any(not 0 <= v <= self.cod for v in self.values):
            raise InvalidStructureError(f"MonotoneMap: valores fuera de [{self.cod}]")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise InvalidStructureError(f"MonotoneMap: {self.values} no es monótona")

    def __call__(self, i: int) -> int:
        return self.values[i]

    @property
    def label(self) -> str:
        return f"[{','.join(str(v) for v in self.values)}]:{self.dom}->{self.cod}"

    def is_shift(self) -> bool:
        """Pertenece a Δ₀: f(p+1) = f(p) + 1."""
        return all(b == a + 1 for a, b in zip(self.values, self.values[1:]))


@dataclass(frozen=True)
class DeltaNormalForm:
    dom: int
    cod: int
    deltas: tuple            # estrictamente decreciente
    sigmas: tuple            # estrictamente creciente

    def __post_init__(self):
        n, m = self.dom, self.cod
        if any(a <= b for a, b in zip(self.deltas, self.deltas[1:])):
            raise InvalidStructureError(f"deltas no decrecientes: {self.deltas}")
        if any(a >= b for a, b in zip(self.sigmas, self.sigmas[1:])):
            raise InvalidStructureError(f"sigmas no crecientes: {self.sigmas}")
        if self.deltas and not (m >= self.deltas[0] and self.deltas[-1] >= 0):
            raise InvalidStructureError(f"índices de cara fuera de rango: {self.deltas}")
        if self.sigmas and not (self.sigmas[0] >= 0 and self.sigmas[-1] < n):
            raise InvalidStructureError(f"índices de degeneración fuera de rango: {self.sigmas}")
        if n - len(self.sigmas) + len(self.deltas) != m:
            raise InvalidStructureError("n - h + k != m")


def identity(n: int) -> MonotoneMap:
    return MonotoneMap(n, n, tuple(range(n + 1)))


def face(n: int, i: int) -> MonotoneMap:
    """δᵢ: [n] -> [n+1], se salta i."""
    if not 0 <= i <= n + 1:
        raise DomainMismatchError(f"δ_{i} no existe sobre [{n}]")
    return MonotoneMap(n, n + 1, tuple(x if x < i else x + 1 for x in range(n + 1)))


def degeneracy(n: int, j: int) -> MonotoneMap:
    """σⱼ: [n+1] -> [n], repite j."""
    if not 0 <= j <= n:
        raise DomainMismatchError(f"σ_{j} no existe hacia [{n}]")
    return MonotoneMap(n + 1, n, tuple(x if x <= j else x - 1 for x in range(n + 2)))


def compose_monotone(f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
    """Primero f, luego g."""
    if f.cod != g.dom:
        raise DomainMismatchError(f"compose_monotone: cod(f)={f.cod} != dom(g)={g.dom}")
    return MonotoneMap(f.dom, g.cod, tuple(g.values[v] for v in f.values))


def normal_form(f: MonotoneMap) -> DeltaNormalForm:
    # degeneraciones: posiciones repetidas de izquierda a derecha
    sigmas = tuple(p for p in range(f.dom) if f.values[p] == f.values[p + 1])
    # caras: valores omitidos, de arriba hacia abajo
    image = set(f.values)
    deltas = tuple(i for i in range(f.cod, -1, -1) if i not in image)
    return DeltaNormalForm(f.dom, f.cod, deltas, sigmas)


def recompose(nf: DeltaNormalForm) -> MonotoneMap:
    """Se aplica primero σ_{jh}, …, σ_{j1} y luego δ_{ik}, …, δ_{i1}."""
    current = identity(nf.dom)
    level = nf.dom
    for j in reversed(nf.sigmas):
        current = compose_monotone(current, degeneracy(level - 1, j))
        level -= 1
    for i in reversed(nf.deltas):
        current = compose_monotone(current, face(level, i))
        level += 1
    return current


def enumerate_monotone(n: int, m: int) -> list:
    """Todas las flechas [n] -> [m]; hay binomial(n+m+1, n+1)."""
    return [MonotoneMap(n, m, vs) for vs in itertools.combinations_with_replacement(range(m + 1), n + 1)]


def monotone_count(n: int, m: int) -> int:
    return comb(n + m + 1, n + 1)


def index_valid_forms(n: int, m: int) -> list:
    """Todos los pares (deltas, sigmas) admisibles para [n] -> [m]."""
    forms = []
    for h in range(n + 1):
        k = m - n + h
        if k < 0 or k > m + 1:
            continue
        for sigmas in itertools.combinations(range(n), h):
            for deltas in itertools.combinations(range(m, -1, -1), k):
                forms.append(DeltaNormalForm(n, m, deltas, sigmas))
    return forms


def shift(m: int, n: int, k: int) -> MonotoneMap:
    """La inclusión de Δ₀ [m] -> [n], x ↦ x + k."""
    if not 0 <= k <= n - m:
        raise DomainMismatchError(f"shift +{k}: [{m}] no cabe en [{n}]")
    return MonotoneMap(m, n, tuple(x + k for x in range(m + 1)))


def shift_id(m: int, n: int, k: int) -> str:
    return f"+{k}:{m}->{n}"


def delta_category(N: int) -> FinCategory:
    """Δ truncada a los ordinales [0..N] como FinCategory (ids = MonotoneMap.label)."""
    maps = [f for n in range(N + 1) for m in range(N + 1) for f in enumerate_monotone(n, m)]
    arrows = tuple(Arrow(f.label, str(f.dom), str(f.cod)) for f in maps)
    comp = {
        (f.label, g.label): compose_monotone(f, g).label
        for f in maps for g in maps if f.cod == g.dom
    }
    identities = {str(n): identity(n).label for n in range(N + 1)}
    return FinCategory(tuple(str(n) for n in range(N + 1)), arrows, identities, comp)


def delta0_category(N: int) -> FinCategory:
    """Δ₀ truncada: sólo las inclusiones por desplazamiento."""
    shifts = [(m, n, k) for m in range(N + 1) for n in range(m, N + 1) for k in range(n - m + 1)]
    arrows = tuple(Arrow(shift_id(m, n, k), str(m), str(n)) for m, n, k in shifts)
    comp = {
        (shift_id(m, n, k), shift_id(n, p, j)): shift_id(m, p, k + j)
        for m, n, k in shifts for n2, p, j in shifts if n == n2
    }
    identities = {str(n): shift_id(n, n, 0) for n in range(N + 1)}
    return FinCategory(tuple(str(n) for n in range(N + 1)), arrows, identities, comp)
