"""
simplicial/segal.py — Condición de Segal como pullback y reconstrucción de
la categoría

Para p, q ≥ 1 con p+q ≤ N, el mapa canónico X_{p+q} -> X_p ×_{X_0} X_q
(inclusiones de los primeros p y los últimos q) debe ser biyectivo. La
fibra se toma sobre el vértice final de X_p y el inicial de X_q.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

from core.category import Arrow, FinCategory, sort_key, validate_category
from core.errors import SegalError, TruncationError
from simplicial.delta import MonotoneMap, shift
from simplicial.sset import TruncSimplicialSet, eval_simplicial, simplex_label

logger = logging.getLogger("nervio.simplicial")


@dataclass
class SegalResult:
    ok: bool
    p: Optional[int] = None
    q: Optional[int] = None
    element: object = None
    reason: str = ""
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        witness = None
        if not self.ok:
            element = self.element
            if isinstance(element, tuple) and element and isinstance(element[0], tuple):
                element = [simplex_label(e) for e in element]
            elif element is not None:
                element = simplex_label(element)
            witness = {"p": self.p, "q": self.q, "element": element, "reason": self.reason}
        return {"ok": self.ok, "witness": witness, "warnings": list(self.warnings)}


def _maxmap(p: int) -> MonotoneMap:
    return MonotoneMap(0, p, (p,))


def _minmap(q: int) -> MonotoneMap:
    return MonotoneMap(0, q, (0,))


def segal_map(x: TruncSimplicialSet, p: int, q: int) -> tuple:
    """Devuelve (mapa X_{p+q} -> pares, producto fibrado X_p ×_{X_0} X_q)."""
    first = eval_simplicial(x, shift(p, p + q, 0))
    last = eval_simplicial(x, shift(q, p + q, p))
    end = eval_simplicial(x, _maxmap(p))
    start = eval_simplicial(x, _minmap(q))
    fibre = [(u, v) for u in x.levels[p] for v in x.levels[q] if end[u] == start[v]]
    return {z: (first[z], last[z]) for z in x.levels[p + q]}, fibre


def segal_check(x: TruncSimplicialSet) -> SegalResult:
    if x.N < 2:
        logger.warning(f"⚠️ segal_check con N={x.N}: verdadero por vacuidad")
        return SegalResult(True, warnings=[f"N={x.N} < 2: no hay cuadrados que verificar"])
    for total in range(2, x.N + 1):
        for p in range(1, total):
            q = total - p
            mapping, fibre = segal_map(x, p, q)
            preimage: dict = {}
            for z in sorted(mapping, key=sort_key):
                pair = mapping[z]
                if pair in preimage:
                    logger.info(f"Segal falla en ({p},{q}): dos rellenos para {pair!r}")
                    return SegalResult(False, p, q, pair, "not injective: two fillers")
                preimage[pair] = z
            for pair in fibre:
                if pair not in preimage:
                    logger.info(f"Segal falla en ({p},{q}): {pair!r} sin relleno")
                    return SegalResult(False, p, q, pair, "not surjective: no filler")
    return SegalResult(True)


def categorify(x: TruncSimplicialSet, unverified_ok: bool = False) -> FinCategory:
    """
    Objetos = X_0, flechas = X_1 (fuente d_1, destino d_0), identidades = s_0,
    composición = d_1 del único relleno del par (f, g).
    """
    if x.N < 2 or (x.N < 3 and not unverified_ok):
        raise TruncationError(f"categorify necesita N ≥ 3 para certificar asociatividad (N={x.N})")
    result = segal_check(x)
    if not result.ok:
        raise SegalError(f"Segal falla en ({result.p},{result.q})", result.to_dict()["witness"])
    if x.N < 3:
        logger.warning("⚠️ categorify con N=2: asociatividad no verificada")

    label = simplex_label
    objects = tuple(label(a) for a in x.levels[0])
    arrows = tuple(Arrow(label(f), label(x.face(1, 1, f)), label(x.face(1, 0, f))) for f in x.levels[1])
    identities = {label(a): label(x.degeneracy(0, 0, a)) for a in x.levels[0]}
    mapping, _ = segal_map(x, 1, 1)
    comp = {(label(f), label(g)): label(x.face(2, 1, z)) for z, (f, g) in mapping.items()}
    c = FinCategory(objects, arrows, identities, comp)
    report = validate_category(c)
    if not report.ok:
        raise SegalError(f"categorify: {report.violations[0]}", report.witness)
    return c
