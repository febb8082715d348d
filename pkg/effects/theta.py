"""
effects/theta.py — La teoría de Lawvere Θ_T de una mónada finita

Objetos "0".."bound" (los ordinales [n]); una flecha [m] -> [n] es una
función [m] -> T[n], guardada como la tupla de sus m valores. La
composición es la de Kleisli: μ ∘ T g ∘ f.
"""
import itertools
import logging
from dataclasses import dataclass

from core.category import Arrow, FinCategory
from core.errors import CarrierOverflowError
from effects.monads import MAX_CARRIER, FinMonad

logger = logging.getLogger("nervio.effects")


@dataclass(frozen=True)
class ThetaCategory:
    monad: FinMonad
    bound: int
    category: FinCategory
    maps: dict                 # id -> (m, n, valores)

    def arrow_id(self, m: int, n: int, values: tuple) -> str:
        return kleisli_map_id(self.monad, m, n, values)


def kleisli_map_id(t: FinMonad, m: int, n: int, values: tuple) -> str:
    return f"{m}->{n}:[" + ", ".join(t.label(v) for v in values) + "]"


def kleisli_apply(t: FinMonad, f_values: tuple, g_values: tuple) -> tuple:
    """Primero f: [m] -> T[n], luego g: [n] -> T[p]."""
    return tuple(t.mult(t.fmap(lambda j: g_values[j], x)) for x in f_values)


def pure_map(t: FinMonad, values: tuple) -> tuple:
    """η ∘ φ para una función φ entre ordinales."""
    return tuple(t.unit(j) for j in values)


def theta(t: FinMonad, bound: int) -> ThetaCategory:
    carriers = {n: t.carrier(tuple(range(n))) for n in range(bound + 1)}
    total = sum(len(carriers[n]) ** m for m in range(bound + 1) for n in range(bound + 1))
    if total > MAX_CARRIER:
        raise CarrierOverflowError(f"Θ_{t.name} con cota {bound}: {total} flechas supera {MAX_CARRIER}")

    maps, homs = {}, {}
    for m in range(bound + 1):
        for n in range(bound + 1):
            homs[(m, n)] = []
            for values in itertools.product(carriers[n], repeat=m):
                key = kleisli_map_id(t, m, n, values)
                maps[key] = (m, n, values)
                homs[(m, n)].append((key, values))
    arrows = tuple(Arrow(key, str(m), str(n)) for key, (m, n, _) in maps.items())
    identities = {str(n): kleisli_map_id(t, n, n, pure_map(t, tuple(range(n)))) for n in range(bound + 1)}
    comp = {}
    for (m, n), first in homs.items():
        for p in range(bound + 1):
            for f, fv in first:
                for g, gv in homs[(n, p)]:
                    comp[(f, g)] = kleisli_map_id(t, m, p, kleisli_apply(t, fv, gv))
    logger.info(f"📚 Θ_{t.name} hasta [{bound}]: {len(arrows)} flechas, {len(comp)} composiciones")
    return ThetaCategory(t, bound, FinCategory(tuple(str(n) for n in range(bound + 1)), arrows, identities, comp), maps)


def theta_finitary(t: FinMonad, bound: int) -> FinCategory:
    return theta(t, bound).category
