"""
effects/linton.py — Álgebras de una mónada finita y su nervio sobre Θ_T

Un álgebra es un conjunto a con α: T a -> a que respeta η y μ. Su nervio
manda [n] a a^n; linton_check hace el camino inverso: a partir de un
prehaz sobre Θ_T, pide que [n] ↦ X[n] sea X[1]^n vía las proyecciones y
lee α de la acción de las flechas [1] -> T[k].
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional

from core.category import opposite
from core.errors import DomainMismatchError, TruncationError
from core.functors import SetFunctor
from core.report import Report
from effects.monads import FinMonad
from effects.theta import ThetaCategory, kleisli_map_id, pure_map

logger = logging.getLogger("nervio.effects")


def algebra_report(t: FinMonad, a: tuple, alpha: dict) -> Report:
    report = Report(f"algebra:{t.name}")
    for x in a:
        report.checked += 1
        if alpha.get(t.unit(x)) != x:
            report.fail(f"α∘η ≠ id en {x}", {"element": str(x)})
    for z in t.carrier(t.carrier(a)):
        try:
            flat = t.mult(z)
        except TruncationError:
            report.skipped += 1
            continue
        report.checked += 1
        if alpha[flat] != alpha[t.fmap(alpha.__getitem__, z)]:
            report.fail(f"α∘μ ≠ α∘Tα en {t.label(z)}", {"element": t.label(z)})
    return report


def algebras(t: FinMonad, a) -> list:
    """Todas las estructuras de álgebra sobre a (α queda fijo en la imagen de η)."""
    a = tuple(a)
    ta = t.carrier(a)
    forced = {t.unit(x): x for x in a}
    free = [y for y in ta if y not in forced]
    found = []
    for choice in itertools.product(a, repeat=len(free)):
        alpha = dict(forced)
        alpha.update(zip(free, choice))
        if algebra_report(t, a, alpha).ok:
            found.append(alpha)
    logger.info(f"🧩 {t.name}: {len(found)} álgebras sobre {len(a)} elementos")
    return found


def algebra_nerve(theta_cat: ThetaCategory, a, alpha: dict) -> SetFunctor:
    """[n] ↦ a^n; u: [m] -> T[n] actúa por x ↦ (α(T x (u_i)))_i."""
    t = theta_cat.monad
    a = tuple(a)
    carrier = {str(n): tuple(itertools.product(a, repeat=n)) for n in range(theta_cat.bound + 1)}
    action = {}
    for key, (m, n, values) in theta_cat.maps.items():
        action[key] = {
            x: tuple(alpha[t.fmap(lambda j: x[j], v)] for v in values)
            for x in carrier[str(n)]
        }
    return SetFunctor(opposite(theta_cat.category), carrier, action)


@dataclass
class LintonResult:
    ok: bool
    carrier: tuple = ()
    structure: dict = field(default_factory=dict)
    level: Optional[int] = None
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "carrier": [str(x) for x in self.carrier],
            "structure": {str(k): str(v) for k, v in self.structure.items()} if self.ok else None,
            "witness": None if self.ok else {"level": self.level, "reason": self.reason},
        }


def _tuples(x: SetFunctor, theta_cat: ThetaCategory, n: int) -> dict:
    """y ∈ X[n] ↦ sus n proyecciones en X[1]."""
    t = theta_cat.monad
    projections = [kleisli_map_id(t, 1, n, pure_map(t, (i,))) for i in range(n)]
    return {y: tuple(x.action[p][y] for p in projections) for y in x.carrier[str(n)]}


def linton_check(x: SetFunctor, theta_cat: ThetaCategory) -> LintonResult:
    """
    ¿Es x el nervio de un álgebra? Primero X[n] ≅ X[1]^n en cada nivel, luego
    α(τ) = X(τ)(e) con e ∈ X[k] el elemento de proyecciones (a_0, ..., a_{k-1}).
    """
    t = theta_cat.monad
    if x.base.objects != opposite(theta_cat.category).objects:
        raise DomainMismatchError("linton_check: el prehaz no está sobre este Θ_T")
    a = tuple(x.carrier["1"])
    k = len(a)

    tables, projected = {}, {}
    for n in range(theta_cat.bound + 1):
        table = projected[n] = _tuples(x, theta_cat, n)
        images = set(table.values())
        if len(images) != len(table):
            return LintonResult(False, a, level=n, reason=f"dos elementos de X[{n}] con las mismas proyecciones")
        if len(images) != k ** n:
            return LintonResult(False, a, level=n, reason=f"X[{n}] tiene {len(images)} elementos, se esperaban {k ** n}")
        tables[n] = {v: y for y, v in table.items()}
    if k > theta_cat.bound:
        raise TruncationError(f"linton_check: |X[1]| = {k} supera la cota {theta_cat.bound}")

    generic = tables[k][a]
    alpha = {}
    for tau in t.carrier(a):
        indexed = t.fmap(a.index, tau)
        alpha[tau] = x.action[kleisli_map_id(t, 1, k, (indexed,))][generic]
    law = algebra_report(t, a, alpha)
    if not law.ok:
        return LintonResult(False, a, alpha, level=k, reason=law.violations[0])

    expected = algebra_nerve(theta_cat, a, alpha)
    for key, (m, n, _) in theta_cat.maps.items():
        for y in x.carrier[str(n)]:
            image = projected[m][x.action[key][y]]
            if image != expected.action[key][projected[n][y]]:
                return LintonResult(False, a, alpha, level=m, reason=f"la acción de {key} no es la del álgebra")
    logger.info(f"✅ linton_check: álgebra de {t.name} sobre {k} elementos")
    return LintonResult(True, a, alpha)
