"""
freecat/arity.py — Aridades Δ₀ para la mónada de categoría libre

Una flecha i₀[n] -> TG es una sucesión de n caminos encadenados en G.
arity_factorize la parte como i₀[n] -> T i₀[p] -> TG con p mínimo: la
cuenta de aristas de cada camino da los cortes de la aridad del medio.
"""
import enum
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from core.category import Arrow, FinCategory
from core.errors import MalformedMorphismError
from freecat.graph import Graph, GraphMorphism, linear_quiver
from freecat.paths import Path, free_paths, mu_flatten, paths_of_length, tmap
from simplicial.delta import MonotoneMap

logger = logging.getLogger("nervio.freecat")


@dataclass(frozen=True)
class KleisliArrow:
    """Morfismo i₀[n] -> TG: imagen de cada vértice y camino de cada arista."""
    n: int
    target: Graph
    vertices: tuple
    paths: tuple

    def __post_init__(self):
        if len(self.vertices) != self.n + 1 or len(self.paths) != self.n:
            raise MalformedMorphismError(f"KleisliArrow: se esperaban {self.n + 1} vértices y {self.n} caminos")
        g = self.target
        for k, p in enumerate(self.paths):
            if p.start != self.vertices[k] or p.end != self.vertices[k + 1]:
                raise MalformedMorphismError(f"KleisliArrow: el camino {k} no une {self.vertices[k]!r} y {self.vertices[k + 1]!r}")
            current = p.start
            for e in p.edges:
                if e not in g.src or g.src[e] != current:
                    raise MalformedMorphismError(f"KleisliArrow: la arista {e!r} no encadena en el camino {k}")
                current = g.tgt[e]
            if current != p.end:
                raise MalformedMorphismError(f"KleisliArrow: el camino {k} no termina en {p.end!r}")

    @classmethod
    def from_paths(cls, target: Graph, start, edge_lists) -> "KleisliArrow":
        vertices, paths = [start], []
        for edges in edge_lists:
            current = vertices[-1]
            end = current
            for e in edges:
                end = target.tgt[e]
            paths.append(Path(current, tuple(edges), end))
            vertices.append(end)
        return cls(len(paths), target, tuple(vertices), tuple(paths))

    def label(self) -> str:
        return f"{self.n}:" + ",".join(p.label() for p in self.paths) if self.paths else f"0:{self.vertices[0]}"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "vertices": [str(v) for v in self.vertices],
            "paths": [[str(e) for e in p.edges] for p in self.paths],
        }


def morphism_as_kleisli(f: GraphMorphism, n: int) -> KleisliArrow:
    """η∘f para f: i₀[n] -> G."""
    return KleisliArrow(
        n, f.target,
        tuple(f.vertices[k] for k in range(n + 1)),
        tuple(Path(f.vertices[k], (f.edges[k],), f.vertices[k + 1]) for k in range(n)),
    )


def path_as_morphism(g: Graph, p: Path) -> GraphMorphism:
    """Un camino de longitud p es lo mismo que un morfismo i₀[p] -> G."""
    vertices = [p.start]
    for e in p.edges:
        vertices.append(g.tgt[e])
    return GraphMorphism(linear_quiver(len(p)), g, dict(enumerate(vertices)), dict(enumerate(p.edges)))


def kleisli_extend(b: KleisliArrow, p: Path) -> Path:
    """μ∘T(b) sobre un camino de i₀[m]."""
    outer = Path(b.vertices[p.start], tuple(b.paths[e] for e in p.edges), b.vertices[p.end])
    return mu_flatten(outer)


def kleisli_compose(a: KleisliArrow, b: KleisliArrow) -> KleisliArrow:
    """Primero a: i₀[l] -> T i₀[m], luego b: i₀[m] -> TG."""
    if len(a.target.vertices) != b.n + 1:
        raise MalformedMorphismError(f"kleisli_compose: el destino de a no es i₀[{b.n}]")
    return KleisliArrow(
        a.n, b.target,
        tuple(b.vertices[v] for v in a.vertices),
        tuple(kleisli_extend(b, p) for p in a.paths),
    )


def kleisli_hom(n: int, g: Graph, maxlen: int) -> list:
    """Flechas i₀[n] -> TG con caminos de longitud ≤ maxlen."""
    by_start: dict = {}
    for p in free_paths(g, maxlen):
        by_start.setdefault(p.start, []).append(p)
    arrows = []

    def extend(k: int, vertices: list, paths: list):
        if k == n:
            arrows.append(KleisliArrow(n, g, tuple(vertices), tuple(paths)))
            return
        for p in by_start.get(vertices[-1], []):
            extend(k + 1, vertices + [p.end], paths + [p])

    for v in g.vertices:
        extend(0, [v], [])
    return arrows


def kleisli_arity_hom(m: int, n: int, maxlen: Optional[int] = None) -> list:
    """Θ_T([m], [n]): T i₀[n] es finito, así que la cota se ignora."""
    return kleisli_hom(m, linear_quiver(n), n)


def to_monotone(a: KleisliArrow) -> MonotoneMap:
    n = len(a.target.vertices) - 1
    return MonotoneMap(a.n, n, tuple(a.vertices))


def theta_free_category(N: int) -> FinCategory:
    """Θ_T truncada a [0..N]; la composición es la de Kleisli."""
    homs = {(m, n): kleisli_arity_hom(m, n) for m in range(N + 1) for n in range(N + 1)}
    arrows = tuple(Arrow(f"θ{m}->{n}|{a.label()}", str(m), str(n)) for (m, n), hs in homs.items() for a in hs)
    ids = {}
    for (m, n), hs in homs.items():
        for a in hs:
            ids[(m, n, a.vertices)] = f"θ{m}->{n}|{a.label()}"
    comp = {}
    for (l, m), left in homs.items():
        for n in range(N + 1):
            for a in left:
                for b in homs[(m, n)]:
                    c = kleisli_compose(a, b)
                    comp[(ids[(l, m, a.vertices)], ids[(m, n, b.vertices)])] = ids[(l, n, c.vertices)]
    identities = {}
    for n in range(N + 1):
        identities[str(n)] = ids[(n, n, tuple(range(n + 1)))]
    return FinCategory(tuple(str(n) for n in range(N + 1)), arrows, identities, comp)


# ─── Factorización ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ArityFactorization:
    n: int
    p: int
    e: KleisliArrow          # i₀[n] -> T i₀[p]
    f: GraphMorphism         # i₀[p] -> G

    def middle_path(self) -> Path:
        f = self.f
        return Path(f.vertices[0], tuple(f.edges[k] for k in range(self.p)), f.vertices[self.p])

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "e": {"vertices": list(self.e.vertices), "paths": [list(q.edges) for q in self.e.paths]},
            "f": {"vertices": [str(self.f.vertices[k]) for k in range(self.p + 1)],
                  "edges": [str(self.f.edges[k]) for k in range(self.p)]},
        }


def recompose(fact: ArityFactorization) -> KleisliArrow:
    """e luego T f."""
    f = fact.f
    return KleisliArrow(
        fact.n, f.target,
        tuple(f.vertices[v] for v in fact.e.vertices),
        tuple(tmap(f, q) for q in fact.e.paths),
    )


def arity_factorize(arrow: KleisliArrow) -> ArityFactorization:
    """
    q_k = largo del camino k; e manda el vértice k a q_0 + … + q_{k-1} y la
    arista k al subcamino correspondiente; f recorre la concatenación.
    """
    offsets = [0]
    for q in arrow.paths:
        offsets.append(offsets[-1] + len(q))
    p = offsets[-1]
    middle = linear_quiver(p)
    e = KleisliArrow(
        arrow.n, middle, tuple(offsets),
        tuple(Path(a, tuple(range(a, b)), b) for a, b in zip(offsets, offsets[1:])),
    )
    whole = mu_flatten(Path(arrow.vertices[0], arrow.paths, arrow.vertices[-1]))
    fact = ArityFactorization(arrow.n, p, e, path_as_morphism(arrow.target, whole))
    logger.debug(f"arity_factorize: n={arrow.n} -> p={p} cortes={offsets}")
    return fact


def all_factorizations(arrow: KleisliArrow, max_p: int) -> list:
    """Búsqueda exhaustiva acotada: todo (e, f) con p ≤ max_p cuya recomposición es `arrow`."""
    g = arrow.target
    found = []
    for p in range(max_p + 1):
        for e in kleisli_arity_hom(arrow.n, p):
            for q in paths_of_length(g, p):
                fact = ArityFactorization(arrow.n, p, e, path_as_morphism(g, q))
                if recompose(fact) == arrow:
                    found.append(fact)
    return found


# ─── Equivalencia en zig-zag ─────────────────────────────────────────────

class ZigzagVerdict(enum.Enum):
    YES = "yes"
    YES_BY_DIRECT_MEDIATOR = "yes-by-direct-mediator"
    NO_WITHIN_BOUND = "no-within-bound"


@dataclass
class ZigzagResult:
    verdict: ZigzagVerdict
    bound: int
    chain: list = field(default_factory=list)      # mediadores como MonotoneMap.label
    note: str = ""

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "bound": self.bound, "chain": list(self.chain), "note": self.note}


def mediators(a: ArityFactorization, b: ArityFactorization) -> list:
    """u: i₀[p_a] -> T i₀[p_b] con e_a;u = e_b y u;f_b = f_a."""
    fa = morphism_as_kleisli(a.f, a.p)
    fb = morphism_as_kleisli(b.f, b.p)
    found = []
    for u in kleisli_arity_hom(a.p, b.p):
        if kleisli_compose(a.e, u) == b.e and kleisli_compose(u, fb) == fa:
            found.append(u)
    return found


def restrict_to_edge(fact: ArityFactorization, k: int) -> ArityFactorization:
    """La factorización restringida a la arista k del dominio (dominio [1])."""
    e = fact.e
    return ArityFactorization(1, fact.p, KleisliArrow(1, e.target, e.vertices[k:k + 2], (e.paths[k],)), fact.f)


def _fast_path(a: ArityFactorization, b: ArityFactorization, bound: int) -> bool:
    if a.n < 2:
        return False
    return all(
        zigzag_equivalent(restrict_to_edge(a, k), restrict_to_edge(b, k), bound).verdict is not ZigzagVerdict.NO_WITHIN_BOUND
        for k in range(a.n)
    )


def zigzag_equivalent(a: ArityFactorization, b: ArityFactorization, bound: Optional[int] = None,
                      fast_path: bool = False) -> ZigzagResult:
    bound = max(a.p, b.p) + 2 if bound is None else bound
    target = recompose(a)
    if recompose(b) != target:
        return ZigzagResult(ZigzagVerdict.NO_WITHIN_BOUND, bound, note="las factorizaciones no factorizan la misma flecha")
    if a == b:
        return ZigzagResult(ZigzagVerdict.YES, bound, note="reflexividad")
    if fast_path and _fast_path(a, b, bound):
        return ZigzagResult(ZigzagVerdict.YES, bound, note="atajo de dominio [1]")
    for u in mediators(a, b):
        return ZigzagResult(ZigzagVerdict.YES_BY_DIRECT_MEDIATOR, bound, [to_monotone(u).label], "a -> b")
    for u in mediators(b, a):
        return ZigzagResult(ZigzagVerdict.YES_BY_DIRECT_MEDIATOR, bound, [to_monotone(u).label], "b -> a")

    # búsqueda en anchura sobre factorizaciones con p ≤ bound
    nodes = all_factorizations(target, bound)
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
            step = mediators(nodes[i], other) or mediators(other, nodes[i])
            if step:
                previous[j] = (i, to_monotone(step[0]).label)
                queue.append(j)
    if goal not in previous:
        logger.info(f"zigzag: sin cadena con aridad media ≤ {bound}")
        return ZigzagResult(ZigzagVerdict.NO_WITHIN_BOUND, bound)
    chain = []
    j = goal
    while previous[j] is not None:
        j, label = previous[j]
        chain.append(label)
    return ZigzagResult(ZigzagVerdict.YES, bound, list(reversed(chain)), f"cadena de {len(chain)} pasos")
