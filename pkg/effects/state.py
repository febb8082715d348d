"""
effects/state.py — Mónada de estado sobre un store finito

Un store es un conjunto de localidades L y de valores V; los estados son
S = V^L. Un elemento de T a es una función S -> S × a, guardada como tupla
indexada por los estados en orden.
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

from core.errors import DomainMismatchError
from effects.monads import FinMonad
from freecat.arity import ZigzagResult, ZigzagVerdict

logger = logging.getLogger("nervio.effects")


@dataclass(frozen=True)
class Store:
    locations: tuple
    values: tuple

    def states(self) -> tuple:
        return tuple(itertools.product(self.values, repeat=len(self.locations)))

    def index(self, state: tuple) -> int:
        return self.states().index(state)

    def read(self, state: tuple, loc) -> str:
        return state[self.locations.index(loc)]

    def write(self, state: tuple, loc, value) -> tuple:
        i = self.locations.index(loc)
        return state[:i] + (value,) + state[i + 1:]

    def to_dict(self) -> dict:
        return {"locations": list(self.locations), "values": list(self.values)}


class StateMonad(FinMonad):
    name = "state"

    def __init__(self, store: Store):
        self.store = store
        self.states = store.states()
        self._position = {s: i for i, s in enumerate(self.states)}

    def _enumerate(self, a):
        pairs = [(s, x) for s in self.states for x in a]
        return itertools.product(pairs, repeat=len(self.states))

    def unit(self, x):
        return tuple((s, x) for s in self.states)

    def mult(self, tt):
        result = []
        for s1, t in tt:
            result.append(t[self._position[s1]])
        return tuple(result)

    def fmap(self, f, t):
        return tuple((s, f(x)) for s, x in t)

    def count(self, n):
        return (len(self.states) * n) ** len(self.states)

    def run(self, t, state):
        """Ejecuta t desde un estado: (estado final, valor)."""
        return t[self._position[state]]


def build_state_monad(store: Store, a) -> tuple:
    """La mónada de estado del store y su carrier sobre a."""
    t = StateMonad(store)
    return t, t.carrier(tuple(a))


# ─── Factorización por aridad en la categoría de Kleisli ─────────────────

@dataclass(frozen=True)
class StateFactorization:
    n: int
    p: int
    e: tuple          # [n] -> T[p]
    f: tuple          # [p] -> a

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "e": [[list(pair) for pair in t] for t in self.e],
            "f": list(self.f),
        }


def recompose_state(t: StateMonad, fact: StateFactorization) -> tuple:
    """(S × f) ∘ e."""
    return tuple(t.fmap(lambda j: fact.f[j], row) for row in fact.e)


def state_factorize(h, store: Store) -> StateFactorization:
    """
    h: [n] -> T a, como tupla de elementos de T a.

    La aridad intermedia es la imagen de h en a (enumerada por primera
    aparición) y f es la inclusión de esa imagen.
    """
    t = StateMonad(store)
    for row in h:
        if len(row) != len(t.states):
            raise DomainMismatchError("state_factorize: una fila no está indexada por los estados del store")
    image = []
    for row in h:
        for _, x in row:
            if x not in image:
                image.append(x)
    e = tuple(tuple((s1, image.index(x)) for s1, x in row) for row in h)
    fact = StateFactorization(len(h), len(image), e, tuple(image))
    logger.debug(f"state_factorize: n={fact.n} -> p={fact.p}")
    return fact


def state_factorizations(h, store: Store, a, max_p: int) -> list:
    """Todas las (e, f) con p ≤ max_p cuya recomposición es h."""
    t = StateMonad(store)
    found = []
    for p in range(max_p + 1):
        for f in itertools.product(tuple(a), repeat=p):
            rows = []
            for row in h:
                choices = [[(s1, j) for j in range(p) if f[j] == x] for s1, x in row]
                rows.append(list(itertools.product(*choices)))
            for e in itertools.product(*rows):
                fact = StateFactorization(len(h), p, tuple(e), f)
                if recompose_state(t, fact) == tuple(h):
                    found.append(fact)
    return found


def state_mediators(t: StateMonad, a: StateFactorization, b: StateFactorization) -> list:
    """Funciones u: [p_a] -> [p_b] con T(u) ∘ e_a = e_b y f_b ∘ u = f_a."""
    found = []
    for u in itertools.product(range(b.p), repeat=a.p):
        if any(b.f[u[j]] != a.f[j] for j in range(a.p)):
            continue
        if tuple(t.fmap(lambda j: u[j], row) for row in a.e) == b.e:
            found.append(u)
    return found


def state_zigzag_related(a: StateFactorization, b: StateFactorization, store: Store, bound: Optional[int] = None) -> ZigzagResult:
    """Búsqueda en anchura de una cadena de mediadores entre dos factorizaciones de la misma h."""
    t = StateMonad(store)
    bound = max(a.p, b.p, a.n * len(t.states)) if bound is None else bound
    target = recompose_state(t, a)
    if recompose_state(t, b) != target:
        return ZigzagResult(ZigzagVerdict.NO_WITHIN_BOUND, bound, note="las factorizaciones no factorizan la misma flecha")
    if a == b:
        return ZigzagResult(ZigzagVerdict.YES, bound, note="reflexividad")
    for u in state_mediators(t, a, b):
        return ZigzagResult(ZigzagVerdict.YES_BY_DIRECT_MEDIATOR, bound, [str(u)], "a -> b")
    for u in state_mediators(t, b, a):
        return ZigzagResult(ZigzagVerdict.YES_BY_DIRECT_MEDIATOR, bound, [str(u)], "b -> a")

    values = []
    for fact in (a, b):
        for x in fact.f:
            if x not in values:
                values.append(x)
    nodes = state_factorizations(target, store, values, bound)
    for extra in (a, b):
        if extra not in nodes:
            nodes.append(extra)
    start, goal = nodes.index(a), nodes.index(b)
    previous = {start: None}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        if i == goal:
            break
        for j, other in enumerate(nodes):
            if j in previous:
                continue
            step = state_mediators(t, nodes[i], other) or state_mediators(t, other, nodes[i])
            if step:
                previous[j] = (i, str(step[0]))
                queue.append(j)
    if goal not in previous:
        logger.info(f"state_zigzag_related: sin cadena con aridad media ≤ {bound}")
        return ZigzagResult(ZigzagVerdict.NO_WITHIN_BOUND, bound)
    chain = []
    j = goal
    while previous[j] is not None:
        j, label = previous[j]
        chain.append(label)
    return ZigzagResult(ZigzagVerdict.YES, bound, list(reversed(chain)), f"cadena de {len(chain)} pasos")
