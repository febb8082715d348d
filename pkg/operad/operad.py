"""
operad/operad.py — Operads planos truncados en aridad N

C(n) es una tupla de nombres (únicos entre aridades) y gamma guarda
γ(θ; θ_1, ..., θ_n) para toda composición con Σ aridades ≤ N.
"""
import itertools
import logging
from dataclasses import dataclass

from core.errors import CarrierOverflowError, DomainMismatchError, InvalidStructureError, TruncationError
from core.report import Report
from effects.monads import FinMonad

logger = logging.getLogger("nervio.operad")


@dataclass(frozen=True)
class Operad:
    max_arity: int
    ops: dict                # n -> tuple de operaciones
    identity: str
    gamma: dict              # (θ, (θ_1, ..., θ_n)) -> operación

    def __post_init__(self):
        seen = set()
        for n, names in self.ops.items():
            if not 0 <= n <= self.max_arity:
                raise InvalidStructureError(f"aridad {n} fuera de 0..{self.max_arity}")
            for name in names:
                if name in seen:
                    raise InvalidStructureError(f"operación repetida: {name!r}")
                seen.add(name)
        if self.identity not in self.ops.get(1, ()):
            raise InvalidStructureError(f"la identidad {self.identity!r} no está en C(1)")

    def operations(self, n: int) -> tuple:
        return self.ops.get(n, ())

    def arity(self, theta) -> int:
        for n, names in self.ops.items():
            if theta in names:
                return n
        raise DomainMismatchError(f"operación desconocida: {theta!r}")

    def in_range(self, theta, args: tuple, bound=None) -> bool:
        limit = self.max_arity if bound is None else min(bound, self.max_arity)
        return sum(self.arity(a) for a in args) <= limit

    def compose(self, theta, args: tuple):
        args = tuple(args)
        if self.arity(theta) != len(args):
            raise DomainMismatchError(f"γ: {theta!r} tiene aridad {self.arity(theta)}, recibió {len(args)} argumentos")
        if not self.in_range(theta, args):
            raise TruncationError(f"γ({theta}; ...) cae por encima de la aridad {self.max_arity}")
        try:
            return self.gamma[(theta, args)]
        except KeyError:
            raise InvalidStructureError(f"γ({theta}; {', '.join(map(str, args))}) no está en la tabla") from None

    def composable(self) -> list:
        """Todos los (θ, argumentos) dentro de la truncación."""
        found = []
        for n, names in sorted(self.ops.items()):
            for theta in names:
                for args in self._argument_lists(n, self.max_arity):
                    found.append((theta, args))
        return found

    def _argument_lists(self, n: int, budget: int):
        if n == 0:
            yield ()
            return
        for k in range(budget + 1):
            for first in self.operations(k):
                for rest in self._argument_lists(n - 1, budget - k):
                    yield (first,) + rest

    def to_dict(self) -> dict:
        return {
            "kind": "operad",
            "max_arity": self.max_arity,
            "ops": {str(n): list(names) for n, names in sorted(self.ops.items())},
            "identity": self.identity,
            "gamma": [
                {"op": theta, "args": list(args), "result": result}
                for (theta, args), result in sorted(self.gamma.items(), key=lambda kv: (kv[0][0], kv[0][1]))
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Operad":
        return cls(
            int(data["max_arity"]),
            {int(n): tuple(names) for n, names in data["ops"].items()},
            data["identity"],
            {(e["op"], tuple(e["args"])): e["result"] for e in data["gamma"]},
        )


def build_operad(max_arity: int, ops: dict, identity: str, rule) -> Operad:
    """Llena gamma con rule(θ, args) en todas las composiciones dentro de la truncación."""
    skeleton = Operad(max_arity, ops, identity, {})
    gamma = {(theta, args): rule(theta, args) for theta, args in skeleton.composable()}
    return Operad(max_arity, ops, identity, gamma)


# ─── Ejemplos ────────────────────────────────────────────────────────────

def terminal_operad(max_arity: int) -> Operad:
    """Una operación por aridad; sus álgebras son los monoides."""
    ops = {n: (f"t{n}",) for n in range(max_arity + 1)}

    def rule(theta, args):
        return f"t{sum(int(a[1:]) for a in args)}"

    return build_operad(max_arity, ops, "t1", rule)


def semigroup_operad(max_arity: int) -> Operad:
    """Como el terminal pero sin operación nularia: semigrupos."""
    ops = {n: (f"t{n}",) for n in range(1, max_arity + 1)}
    return build_operad(max_arity, ops, "t1", lambda theta, args: f"t{sum(int(a[1:]) for a in args)}")


def sets_operad(max_arity: int = 1) -> Operad:
    """Sólo la identidad: sus álgebras son los conjuntos."""
    return build_operad(max(max_arity, 1), {1: ("id",)}, "id", lambda theta, args: "id")


def projection_operad(max_arity: int) -> Operad:
    """
    C(n) = {p{n}.i : i < n}, la i-ésima proyección. γ elige el i-ésimo
    argumento y dentro de él su propia proyección; no es simétrico.
    """
    ops = {n: tuple(f"p{n}.{i}" for i in range(n)) for n in range(1, max_arity + 1)}

    def parse(name):
        n, i = name[1:].split(".")
        return int(n), int(i)

    def rule(theta, args):
        _, i = parse(theta)
        offset = sum(parse(a)[0] for a in args[:i])
        _, j = parse(args[i])
        return f"p{sum(parse(a)[0] for a in args)}.{offset + j}"

    return build_operad(max_arity, ops, "p1.0", rule)


def perturb(c: Operad, key: tuple, result) -> Operad:
    """Copia de c con una entrada de gamma cambiada."""
    gamma = dict(c.gamma)
    gamma[key] = result
    return Operad(c.max_arity, c.ops, c.identity, gamma)


# ─── Validación ──────────────────────────────────────────────────────────

def validate_operad(c: Operad) -> Report:
    """Leyes de identidad y asociatividad de γ en todas las instancias dentro de la truncación."""
    report = Report("operad")
    for (theta, args), result in c.gamma.items():
        try:
            wrong = c.arity(result) != sum(c.arity(a) for a in args)
        except DomainMismatchError:
            wrong = True
        if wrong:
            report.fail(f"γ({theta}; {', '.join(args)}) = {result} tiene aridad incorrecta",
                        {"op": theta, "args": list(args)})
    if not report.ok:
        logger.warning("⚠️ validate_operad: tabla con aridades inválidas, no se revisa asociatividad")
        return report
    for n, names in c.ops.items():
        for theta in names:
            report.checked += 2
            if c.compose(theta, (c.identity,) * n) != theta:
                report.fail(f"γ({theta}; id, ..., id) ≠ {theta}", {"op": theta})
            if c.compose(c.identity, (theta,)) != theta:
                report.fail(f"γ(id; {theta}) ≠ {theta}", {"op": theta})

    for theta, args in c.composable():
        outer = c.compose(theta, args)
        arities = [c.arity(a) for a in args]
        for inner in c._argument_lists(sum(arities), c.max_arity):
            if not c.in_range(outer, inner):
                report.skipped += 1
                continue
            report.checked += 1
            left = c.compose(outer, inner)
            pieces, offset = [], 0
            for a, k in zip(args, arities):
                pieces.append(c.compose(a, inner[offset:offset + k]))
                offset += k
            right = c.compose(theta, tuple(pieces))
            if left != right:
                report.fail(
                    f"asociatividad: γ(γ({theta}; {', '.join(args)}); ...) = {left} ≠ {right}",
                    {"op": theta, "args": list(args), "inner": list(inner)},
                )
    logger.info(f"🧷 validate_operad: {report.checked} instancias, {len(report.violations)} violaciones")
    return report


def reverse_operad(c: Operad) -> Operad:
    """θ ∘rev (θ_1, ..., θ_n) = θ ∘ (θ_n, ..., θ_1)."""
    gamma = {(theta, args): c.gamma[(theta, tuple(reversed(args)))] for theta, args in c.gamma}
    return Operad(c.max_arity, c.ops, c.identity, gamma)


# ─── Mónada inducida ─────────────────────────────────────────────────────

class InducedMonad(FinMonad):
    """T_C x = ⊔_{n ≤ bound} C(n) × x^n; μ usa γ y falla por truncación arriba de bound."""
    name = "operad"

    def __init__(self, c: Operad, bound=None):
        self.operad = c
        self.bound = c.max_arity if bound is None else min(bound, c.max_arity)

    def _enumerate(self, a):
        for n in range(self.bound + 1):
            for theta in self.operad.operations(n):
                for xs in itertools.product(a, repeat=n):
                    yield (theta, xs)

    def unit(self, x):
        return (self.operad.identity, (x,))

    def mult(self, tt):
        theta, inner = tt
        ops = tuple(op for op, _ in inner)
        if not self.operad.in_range(theta, ops, self.bound):
            raise TruncationError(f"μ: aridad total por encima de {self.bound}")
        return (self.operad.compose(theta, ops), tuple(x for _, xs in inner for x in xs))

    def fmap(self, f, t):
        theta, xs = t
        return (theta, tuple(f(x) for x in xs))

    def count(self, n):
        return sum(len(self.operad.operations(k)) * n ** k for k in range(self.bound + 1))


def induced_monad_apply(c: Operad, x, bound=None) -> tuple:
    """La mónada inducida y su carrier sobre x."""
    if bound is not None and bound > c.max_arity:
        raise TruncationError(f"cota {bound} por encima de la aridad máxima {c.max_arity}")
    t = InducedMonad(c, bound)
    return t, t.carrier(tuple(x))


def _reverse_element(t) -> tuple:
    theta, xs = t
    return (theta, tuple(reversed(xs)))


def monad_iso_check(c: Operad, sizes=(0, 1, 2), bound=None) -> Report:
    """
    La inversión de tuplas T_C x -> T_{C^rev} x conmuta con η y μ en
    conjuntos de los tamaños dados.
    """
    t, rev = InducedMonad(c, bound), InducedMonad(reverse_operad(c), bound)
    report = Report("operad-monad-iso")
    for n in sizes:
        a = tuple(range(n))
        for x in a:
            report.checked += 1
            if _reverse_element(t.unit(x)) != rev.unit(x):
                report.fail(f"η no conmuta en {x}", {"size": n, "element": x})
        try:
            tta = t.carrier(t.carrier(a))
        except CarrierOverflowError as exc:
            report.skipped += 1
            report.note(f"|x|={n}: {exc}")
            continue
        for z in tta:
            try:
                left = _reverse_element(t.mult(z))
                right = rev.mult(rev.fmap(_reverse_element, _reverse_element(z)))
            except TruncationError:
                report.skipped += 1
                continue
            report.checked += 1
            if left != right:
                report.fail(f"μ no conmuta en {t.label(z)}", {"size": n, "element": t.label(z)})
    logger.info(f"🔁 monad_iso_check: {report.checked} instancias, {report.skipped} fuera de la truncación")
    return report
