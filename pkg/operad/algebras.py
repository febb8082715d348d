"""
operad/algebras.py — Álgebras de un operad

Un álgebra da, para cada θ ∈ C(n), una función X^n -> X guardada como
tabla {tupla: valor}. La traducción a la mónada inducida permite comparar
las dos nociones de álgebra punto por punto.
"""
import itertools
import logging
from dataclasses import dataclass

from core.report import Report
from effects.linton import algebra_report
from operad.operad import InducedMonad, Operad

logger = logging.getLogger("nervio.operad")


@dataclass(frozen=True)
class OperadAlgebra:
    operad: Operad
    carrier: tuple
    actions: dict            # θ -> {xs: x}

    def act(self, theta, xs: tuple):
        return self.actions[theta][tuple(xs)]


def check_operad_algebra(alg: OperadAlgebra) -> Report:
    c = alg.operad
    report = Report("operad-algebra")
    for x in alg.carrier:
        report.checked += 1
        if alg.act(c.identity, (x,)) != x:
            report.fail(f"la identidad no fija {x}", {"element": x})
    for theta, args in c.composable():
        outer = c.compose(theta, args)
        arities = [c.arity(a) for a in args]
        for xs in itertools.product(alg.carrier, repeat=sum(arities)):
            report.checked += 1
            values, offset = [], 0
            for a, k in zip(args, arities):
                values.append(alg.act(a, xs[offset:offset + k]))
                offset += k
            if alg.act(outer, xs) != alg.act(theta, tuple(values)):
                report.fail(f"γ({theta}; {', '.join(args)}) no se respeta en {xs}",
                            {"op": theta, "args": list(args), "elements": list(xs)})
    return report


def to_monad_algebra(alg: OperadAlgebra, bound=None) -> tuple:
    """(T_C, α) con α(θ, xs) = θ̂(xs)."""
    t = InducedMonad(alg.operad, bound)
    alpha = {(theta, xs): alg.act(theta, xs) for theta, xs in t.carrier(alg.carrier)}
    return t, alpha


def monad_algebra_report(alg: OperadAlgebra, bound=None) -> Report:
    t, alpha = to_monad_algebra(alg, bound)
    return algebra_report(t, tuple(alg.carrier), alpha)


def monoid_as_algebra(c: Operad, elements, table: dict, unit) -> OperadAlgebra:
    """Un monoide (tabla binaria + unidad) como álgebra de un operad con una operación por aridad."""
    elements = tuple(elements)

    def product(xs):
        value = unit
        for x in xs:
            value = table[(value, x)]
        return value

    actions = {}
    for n in range(c.max_arity + 1):
        for theta in c.operations(n):
            actions[theta] = {xs: product(xs) for xs in itertools.product(elements, repeat=n)}
    return OperadAlgebra(c, elements, actions)


def is_monoid(elements, table: dict, unit) -> bool:
    elements = tuple(elements)
    if any(table[(unit, x)] != x or table[(x, unit)] != x for x in elements):
        return False
    return all(
        table[(table[(x, y)], z)] == table[(x, table[(y, z)])]
        for x, y, z in itertools.product(elements, repeat=3)
    )
