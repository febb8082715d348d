"""
effects/monads.py — Mónadas sobre conjuntos finitos

Una FinMonad enumera T a para un conjunto finito a (una tupla) y da η, μ y
la acción sobre funciones. Los elementos son valores hashables: tuplas
etiquetadas, frozensets o tuplas indexadas por estados.
"""
import itertools
import logging
import os
from abc import ABC, abstractmethod
from typing import Callable, Optional

from core.errors import CarrierOverflowError, TruncationError, UnknownMonadError
from core.report import Report

logger = logging.getLogger("nervio.effects")

MAX_CARRIER = int(os.getenv("NERVIO_MAX_CARRIER", "20000"))


def canonical_label(value) -> str:
    """Texto estable para cualquier elemento (los frozensets se ordenan)."""
    if isinstance(value, frozenset):
        return "{" + ",".join(sorted(canonical_label(v) for v in value)) + "}"
    if isinstance(value, tuple):
        return "(" + ",".join(canonical_label(v) for v in value) + ")"
    return str(value)


class FinMonad(ABC):
    name = "monad"

    def carrier(self, a: tuple) -> tuple:
        expected = self.count(len(a))
        if expected is not None and expected > MAX_CARRIER:
            raise CarrierOverflowError(f"{self.name}: |T a| = {expected} supera {MAX_CARRIER}")
        return tuple(self._enumerate(tuple(a)))

    @abstractmethod
    def _enumerate(self, a: tuple):
        ...

    @abstractmethod
    def unit(self, x):
        ...

    @abstractmethod
    def mult(self, tt):
        ...

    @abstractmethod
    def fmap(self, f: Callable, t):
        ...

    def count(self, n: int) -> Optional[int]:
        """|T a| para |a| = n, cuando hay fórmula."""
        return None

    def label(self, t) -> str:
        return canonical_label(t)


class PartialityMonad(FinMonad):
    """T a = a ⊔ {⊥}."""
    name = "partiality"
    BOTTOM = ("⊥",)

    def _enumerate(self, a):
        return [("ok", x) for x in a] + [self.BOTTOM]

    def unit(self, x):
        return ("ok", x)

    def mult(self, tt):
        return tt[1] if tt[0] == "ok" else self.BOTTOM

    def fmap(self, f, t):
        return ("ok", f(t[1])) if t[0] == "ok" else self.BOTTOM

    def count(self, n):
        return n + 1


class NondeterminismMonad(FinMonad):
    """T a = subconjuntos finitos de a."""
    name = "nondeterminism"

    def _enumerate(self, a):
        for k in range(len(a) + 1):
            for subset in itertools.combinations(a, k):
                yield frozenset(subset)

    def unit(self, x):
        return frozenset([x])

    def mult(self, tt):
        return frozenset(x for t in tt for x in t)

    def fmap(self, f, t):
        return frozenset(f(x) for x in t)

    def count(self, n):
        return 2 ** n


class ExceptionsMonad(FinMonad):
    """T a = a + E, con una operación nularia raise_e por cada excepción."""
    name = "exceptions"

    def __init__(self, errors=("e",)):
        self.errors = tuple(errors)

    def _enumerate(self, a):
        return [("ok", x) for x in a] + [("raise", e) for e in self.errors]

    def unit(self, x):
        return ("ok", x)

    def mult(self, tt):
        return tt[1] if tt[0] == "ok" else tt

    def fmap(self, f, t):
        return ("ok", f(t[1])) if t[0] == "ok" else t

    def count(self, n):
        return n + len(self.errors)

    def generators(self) -> dict:
        """raise_e como elemento de T ∅."""
        return {f"raise_{e}": ("raise", e) for e in self.errors}


def generalized_exceptions_carrier(a, errors) -> tuple:
    """E·(A+E) como conjunto; no se le asigna estructura de mónada."""
    return tuple((e, t) for e in errors for t in [("ok", x) for x in a] + [("raise", d) for d in errors])


def monad_law_report(t: FinMonad, sizes=(0, 1, 2)) -> Report:
    """Los dos diagramas de mónada, punto por punto, sobre conjuntos de los tamaños dados."""
    report = Report(f"monad:{t.name}")
    for n in sizes:
        a = tuple(range(n))
        try:
            ta = t.carrier(a)
        except CarrierOverflowError as exc:
            report.skipped += 1
            report.note(f"|a|={n}: {exc}")
            continue
        for x in ta:
            try:
                left, right = t.mult(t.unit(x)), t.mult(t.fmap(t.unit, x))
            except TruncationError:
                report.skipped += 1
                continue
            report.checked += 1
            if left != x:
                report.fail(f"μ∘ηT ≠ id en {t.label(x)} (|a|={n})", {"element": t.label(x), "size": n})
            if right != x:
                report.fail(f"μ∘Tη ≠ id en {t.label(x)} (|a|={n})", {"element": t.label(x), "size": n})
        try:
            ttta = t.carrier(t.carrier(ta))
        except CarrierOverflowError as exc:
            report.skipped += 1
            report.note(f"asociatividad con |a|={n} fuera de la cota: {exc}")
            continue
        for z in ttta:
            try:
                left, right = t.mult(t.fmap(t.mult, z)), t.mult(t.mult(z))
            except TruncationError:
                report.skipped += 1
                continue
            report.checked += 1
            if left != right:
                report.fail(f"μ∘Tμ ≠ μ∘μT en {t.label(z)} (|a|={n})", {"element": t.label(z), "size": n})
    logger.info(f"🧮 leyes de {t.name}: {report.checked} instancias, {len(report.violations)} violaciones")
    return report


def classic_monads(name: str, **params) -> FinMonad:
    """Mónada por nombre: partiality, nondeterminism, exceptions, state, io, output."""
    from effects.io_trees import IOMonad, OutputMonad
    from effects.state import StateMonad, Store

    if name == "partiality":
        return PartialityMonad()
    if name == "nondeterminism":
        return NondeterminismMonad()
    if name == "exceptions":
        return ExceptionsMonad(params.get("errors", ("e",)))
    if name == "state":
        return StateMonad(Store(tuple(params.get("locations", ("l",))), tuple(params.get("values", ("0", "1")))))
    if name == "io":
        return IOMonad(tuple(params.get("inputs", ("i",))), tuple(params.get("outputs", ("o",))), int(params.get("depth", 1)))
    if name == "output":
        return OutputMonad(tuple(params.get("outputs", ("o",))), int(params.get("max_length", 2)))
    raise UnknownMonadError(f"mónada desconocida: {name!r}")
