"""
effects/store_terms.py — Términos lookup/update sobre un store global

Sintaxis de texto:
    x0                         variable
    lookup[l](t0, t1, ...)     una rama por valor del store, en orden
    update[l:=v](t)

La semántica manda cada término a una función S -> S × [n] (un elemento de
T[n] para StateMonad). Las siete leyes del store se usan como reglas de
reescritura orientadas. normalize_store_term devuelve la forma normal de esa
reescritura; canonical_normal_form, la que sólo depende de la denotación.
"""
import itertools
import logging
import os
import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from core.errors import IllFormedTermError, RewriteBudgetExceeded
from core.report import Report
from effects.state import Store

logger = logging.getLogger("nervio.effects")

REWRITE_BUDGET = int(os.getenv("NERVIO_REWRITE_BUDGET", "10000"))

LAWS = (
    "annihilation",
    "interaction-lookup-lookup",
    "interaction-update-update",
    "interaction-update-lookup",
    "commutation-lookup-lookup",
    "commutation-update-update",
    "commutation-update-lookup",
)
CONSTANT_LOOKUP = "constant-lookup"


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Lookup:
    loc: str
    branches: tuple


@dataclass(frozen=True)
class Update:
    loc: str
    value: str
    body: "StoreTerm"


StoreTerm = Union[Var, Lookup, Update]


def term_depth(t: StoreTerm) -> int:
    if isinstance(t, Var):
        return 0
    if isinstance(t, Update):
        return 1 + term_depth(t.body)
    return 1 + max(term_depth(b) for b in t.branches)


def max_variable(t: StoreTerm) -> int:
    if isinstance(t, Var):
        return t.index
    if isinstance(t, Update):
        return max_variable(t.body)
    return max(max_variable(b) for b in t.branches)


def check_term(t: StoreTerm, store: Store, n: int) -> None:
    """Lanza IllFormedTermError si t sale de la firma del store o de las n variables."""
    if isinstance(t, Var):
        if not 0 <= t.index < n:
            raise IllFormedTermError(f"variable x{t.index} fuera de rango (n={n})")
        return
    if t.loc not in store.locations:
        raise IllFormedTermError(f"localidad desconocida: {t.loc!r}")
    if isinstance(t, Update):
        if t.value not in store.values:
            raise IllFormedTermError(f"valor desconocido: {t.value!r}")
        check_term(t.body, store, n)
        return
    if len(t.branches) != len(store.values):
        raise IllFormedTermError(
            f"lookup[{t.loc}] con {len(t.branches)} ramas; el store tiene {len(store.values)} valores"
        )
    for b in t.branches:
        check_term(b, store, n)


# ─── Texto ───────────────────────────────────────────────────────────────

def format_store_term(t: StoreTerm) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Update):
        return f"update[{t.loc}:={t.value}]({format_store_term(t.body)})"
    return f"lookup[{t.loc}](" + ", ".join(format_store_term(b) for b in t.branches) + ")"


_NAME = re.compile(r"[^\s\[\](),:=]+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise IllFormedTermError(f"posición {self.pos}: {message}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, token: str):
        self.skip()
        if not self.text.startswith(token, self.pos):
            self.fail(f"se esperaba {token!r}")
        self.pos += len(token)

    def name(self) -> str:
        self.skip()
        match = _NAME.match(self.text, self.pos)
        if not match:
            self.fail("se esperaba un nombre")
        self.pos = match.end()
        return match.group(0)

    def term(self) -> StoreTerm:
        word = self.name()
        if word == "lookup":
            self.expect("[")
            loc = self.name()
            self.expect("]")
            self.expect("(")
            branches = [self.term()]
            self.skip()
            while self.text.startswith(",", self.pos):
                self.pos += 1
                branches.append(self.term())
                self.skip()
            self.expect(")")
            return Lookup(loc, tuple(branches))
        if word == "update":
            self.expect("[")
            loc = self.name()
            self.expect(":=")
            value = self.name()
            self.expect("]")
            self.expect("(")
            body = self.term()
            self.expect(")")
            return Update(loc, value, body)
        if re.fullmatch(r"x\d+", word):
            return Var(int(word[1:]))
        self.fail(f"término desconocido {word!r}")


def parse_store_term(text: str) -> StoreTerm:
    parser = _Parser(text)
    t = parser.term()
    parser.skip()
    if parser.pos != len(text):
        parser.fail("texto sobrante")
    return t


# ─── Semántica ───────────────────────────────────────────────────────────

def _run(t: StoreTerm, store: Store, state: tuple) -> tuple:
    while True:
        if isinstance(t, Var):
            return state, t.index
        if isinstance(t, Update):
            state = store.write(state, t.loc, t.value)
            t = t.body
        else:
            t = t.branches[store.values.index(store.read(state, t.loc))]


def denote_store_term(t: StoreTerm, store: Store, n: int) -> tuple:
    """⟦t⟧ como elemento de T[n] de la mónada de estado: una fila (s', i) por estado."""
    check_term(t, store, n)
    return tuple(_run(t, store, s) for s in store.states())


def canonical_store_term(f: tuple, store: Store, n: int) -> StoreTerm:
    """
    Árbol de decisión completo: lee todas las localidades en orden y, en cada
    hoja, escribe el estado final (la última localidad queda más afuera).
    """
    states = store.states()
    if len(f) != len(states):
        raise IllFormedTermError("canonical_store_term: la función no está indexada por los estados")

    def leaf(state: tuple) -> StoreTerm:
        final, i = f[states.index(state)]
        if not 0 <= i < n:
            raise IllFormedTermError(f"canonical_store_term: variable x{i} fuera de rango (n={n})")
        body: StoreTerm = Var(i)
        for loc, value in zip(store.locations, final):
            body = Update(loc, value, body)
        return body

    def tree(read: tuple) -> StoreTerm:
        if len(read) == len(store.locations):
            return leaf(read)
        loc = store.locations[len(read)]
        return Lookup(loc, tuple(tree(read + (v,)) for v in store.values))

    return tree(())


# ─── Reescritura ─────────────────────────────────────────────────────────

@dataclass
class RewriteResult:
    term: StoreTerm
    trace: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"term": format_store_term(self.term), "trace": list(self.trace), "steps": len(self.trace)}


def _root_step(t: StoreTerm, store: Store, collapse: bool) -> Optional[tuple]:
    order = store.locations.index
    if isinstance(t, Lookup):
        for j, b in enumerate(t.branches):
            if isinstance(b, Lookup) and b.loc == t.loc:
                branches = t.branches[:j] + (b.branches[j],) + t.branches[j + 1:]
                return Lookup(t.loc, branches), LAWS[1]
        bodies = {b.body for b in t.branches if isinstance(b, Update)}
        if len(bodies) == 1 and all(
            isinstance(b, Update) and b.loc == t.loc and b.value == v
            for b, v in zip(t.branches, store.values)
        ):
            return next(iter(bodies)), LAWS[0]
        inner = {b.loc for b in t.branches if isinstance(b, Lookup)}
        if (len(inner) == 1 and all(isinstance(b, Lookup) for b in t.branches)
                and order(next(iter(inner))) < order(t.loc)):
            other = next(iter(inner))
            swapped = tuple(
                Lookup(t.loc, tuple(b.branches[w] for b in t.branches))
                for w in range(len(store.values))
            )
            return Lookup(other, swapped), LAWS[4]
        if collapse and len(set(t.branches)) == 1:
            return t.branches[0], CONSTANT_LOOKUP
        return None
    if isinstance(t, Update):
        body = t.body
        if isinstance(body, Update) and body.loc == t.loc:
            return body, LAWS[2]
        if isinstance(body, Lookup) and body.loc == t.loc:
            return Update(t.loc, t.value, body.branches[store.values.index(t.value)]), LAWS[3]
        if isinstance(body, Lookup):
            return Lookup(body.loc, tuple(Update(t.loc, t.value, b) for b in body.branches)), LAWS[6]
        if isinstance(body, Update) and order(body.loc) > order(t.loc):
            return Update(body.loc, body.value, Update(t.loc, t.value, body.body)), LAWS[5]
    return None


def _rewrite(t: StoreTerm, store: Store, trace: list, budget: int, collapse: bool) -> StoreTerm:
    if isinstance(t, Lookup):
        t = Lookup(t.loc, tuple(_rewrite(b, store, trace, budget, collapse) for b in t.branches))
    elif isinstance(t, Update):
        t = Update(t.loc, t.value, _rewrite(t.body, store, trace, budget, collapse))
    step = _root_step(t, store, collapse)
    if step is None:
        return t
    t, law = step
    trace.append(law)
    if len(trace) > budget:
        raise RewriteBudgetExceeded(f"reescritura: más de {budget} pasos")
    return _rewrite(t, store, trace, budget, collapse)


def rewrite_store_term(t: StoreTerm, store: Store, budget: int = REWRITE_BUDGET,
                       collapse: bool = False) -> RewriteResult:
    """
    Leyes 1–4 como reducciones; 5–7 ordenan operaciones independientes:
    lookups con la localidad menor afuera, updates con la mayor afuera y
    los lookups por encima de los updates de otra localidad.
    """
    check_term(t, store, max_variable(t) + 1)
    trace: list = []
    result = _rewrite(t, store, trace, budget, collapse)
    if len(trace) > budget // 2:
        logger.warning(f"⚠️ reescritura cerca del presupuesto: {len(trace)}/{budget} pasos")
    return RewriteResult(result, trace)


def normalize_store_term(t: StoreTerm, store: Store, n: Optional[int] = None,
                         budget: int = REWRITE_BUDGET) -> StoreTerm:
    """
    Forma normal de reescritura: las siete leyes orientadas más
    lookup(t, ..., t) -> t, hasta que ninguna aplica.

    El sistema no es completo. Dos casos quedan sin resolver:
    una escritura redundante dentro de la rama que ya leyó ese valor
    (lookup[l](update[l:=0](x0), x0) no baja a x0) y lookups de distinta
    localidad anidados de forma no uniforme, que sólo se ordenan si todas
    las ramas leen la misma localidad. Para decidir equivalencia usar
    canonical_normal_form.
    """
    if n is not None:
        check_term(t, store, n)
    result = rewrite_store_term(t, store, budget, collapse=True)
    logger.debug(f"normalize: {len(result.trace)} pasos")
    return result.term


def canonical_normal_form(t: StoreTerm, store: Store, n: Optional[int] = None,
                          budget: int = REWRITE_BUDGET) -> StoreTerm:
    """El árbol de decisión de ⟦t⟧ reducido con las mismas reglas; sólo depende de la denotación."""
    n = max_variable(t) + 1 if n is None else n
    tree = canonical_store_term(denote_store_term(t, store, n), store, n)
    return rewrite_store_term(tree, store, budget, collapse=True).term


@dataclass(frozen=True)
class NormalForms:
    term: StoreTerm
    normal: StoreTerm          # por reescritura
    canonical: StoreTerm       # por denotación
    trace: tuple
    sound: bool                # ⟦normal⟧ = ⟦term⟧

    @property
    def matches_canonical(self) -> bool:
        return self.normal == self.canonical

    def to_dict(self) -> dict:
        return {
            "term": format_store_term(self.term),
            "normal": format_store_term(self.normal),
            "canonical": format_store_term(self.canonical),
            "matches_canonical": self.matches_canonical,
            "sound": self.sound,
            "trace": list(self.trace),
        }


def store_normal_forms(t: StoreTerm, store: Store, n: Optional[int] = None,
                       budget: int = REWRITE_BUDGET) -> NormalForms:
    n = max_variable(t) + 1 if n is None else n
    check_term(t, store, n)
    rewritten = rewrite_store_term(t, store, budget, collapse=True)
    canonical = canonical_normal_form(t, store, n, budget)
    sound = denote_store_term(rewritten.term, store, n) == denote_store_term(t, store, n)
    if rewritten.term != canonical:
        logger.debug(f"reescritura incompleta: {format_store_term(rewritten.term)} vs {format_store_term(canonical)}")
    return NormalForms(t, rewritten.term, canonical, tuple(rewritten.trace), sound)


# ─── Leyes como instancias ───────────────────────────────────────────────

def enumerate_terms(store: Store, n: int, depth: int) -> list:
    """Todos los términos de profundidad ≤ depth."""
    terms: list = [Var(i) for i in range(n)]
    for _ in range(depth):
        previous = list(terms)
        grown = [Var(i) for i in range(n)]
        for loc in store.locations:
            for branches in itertools.product(previous, repeat=len(store.values)):
                grown.append(Lookup(loc, branches))
            for v in store.values:
                grown.extend(Update(loc, v, b) for b in previous)
        terms = list(dict.fromkeys(grown))
    return terms


def law_instances(store: Store, n: int, depth: int = 1) -> Iterator[tuple]:
    """
    (ley, izquierda, derecha) para las siete leyes. Las familias con un
    subtérmino por valor o por par de valores usan términos de profundidad
    depth y depth - 1 respectivamente.
    """
    values = store.values
    k = len(values)
    pool = enumerate_terms(store, n, depth)
    small = enumerate_terms(store, n, max(depth - 1, 0))
    locs = store.locations
    pairs = [(a, b) for a in locs for b in locs if a != b]

    for loc in locs:
        for t in pool:
            yield LAWS[0], Lookup(loc, tuple(Update(loc, v, t) for v in values)), t
        for family in itertools.product(small, repeat=k * k):
            grid = [family[i * k:(i + 1) * k] for i in range(k)]
            lhs = Lookup(loc, tuple(Lookup(loc, tuple(row)) for row in grid))
            yield LAWS[1], lhs, Lookup(loc, tuple(grid[i][i] for i in range(k)))
        for v, w in itertools.product(values, repeat=2):
            for t in pool:
                yield LAWS[2], Update(loc, v, Update(loc, w, t)), Update(loc, w, t)
        for v in values:
            for family in itertools.product(small, repeat=k):
                yield LAWS[3], Update(loc, v, Lookup(loc, family)), Update(loc, v, family[values.index(v)])
    for loc, other in pairs:
        for family in itertools.product(small, repeat=k * k):
            grid = [family[i * k:(i + 1) * k] for i in range(k)]
            lhs = Lookup(loc, tuple(Lookup(other, tuple(row)) for row in grid))
            rhs = Lookup(other, tuple(Lookup(loc, tuple(grid[v][w] for v in range(k))) for w in range(k)))
            yield LAWS[4], lhs, rhs
        for v, w in itertools.product(values, repeat=2):
            for t in pool:
                yield LAWS[5], Update(loc, v, Update(other, w, t)), Update(other, w, Update(loc, v, t))
        for v in values:
            for family in itertools.product(small, repeat=k):
                yield (LAWS[6], Update(loc, v, Lookup(other, family)),
                       Lookup(other, tuple(Update(loc, v, b) for b in family)))


def law_soundness_report(store: Store, n: int, depth: int = 1) -> Report:
    """Cada instancia de cada ley tiene ambos lados con la misma denotación."""
    report = Report("store-laws")
    per_law: dict = {}
    for law, lhs, rhs in law_instances(store, n, depth):
        report.checked += 1
        per_law[law] = per_law.get(law, 0) + 1
        if denote_store_term(lhs, store, n) != denote_store_term(rhs, store, n):
            report.fail(
                f"{law}: {format_store_term(lhs)} ≠ {format_store_term(rhs)}",
                {"law": law, "lhs": format_store_term(lhs), "rhs": format_store_term(rhs)},
            )
    for law in LAWS:
        report.note(f"{law}: {per_law.get(law, 0)} instancias")
    logger.info(f"🧪 leyes del store: {report.checked} instancias, {len(report.violations)} violaciones")
    return report


def same_denotation(a: StoreTerm, b: StoreTerm, store: Store, n: int) -> bool:
    return denote_store_term(a, store, n) == denote_store_term(b, store, n)
