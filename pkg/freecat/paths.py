"""
freecat/paths.py — La mónada de categoría libre T sobre grafos

TG tiene los mismos vértices que G y por aristas los caminos finitos de G
(incluido el camino vacío de cada vértice). TG es infinito si G tiene
ciclos, así que nunca se materializa: las operaciones reciben caminos
explícitos y las enumeraciones llevan una cota de longitud.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Generic, Hashable, TypeVar

from core.category import Arrow, FinCategory, sort_key
from core.errors import MalformedMorphismError
from core.report import Report
from freecat.graph import Graph, GraphMorphism, underlying_graph

logger = logging.getLogger("nervio.freecat")

E = TypeVar("E")


@dataclass(frozen=True)
class Path(Generic[E]):
    """Un camino de `start` a `end`. Las aristas pueden ser a su vez caminos (TTG)."""
    start: Hashable
    edges: tuple
    end: Hashable

    def __len__(self) -> int:
        return len(self.edges)

    def label(self) -> str:
        if not self.edges:
            return f"id({self.start})"
        return ".".join(e.label() if isinstance(e, Path) else str(e) for e in self.edges)


def identity_path(v) -> Path:
    return Path(v, (), v)


def make_path(g: Graph, start, edges) -> Path:
    edges = tuple(edges)
    current = start
    if start not in set(g.vertices):
        raise MalformedMorphismError(f"make_path: vértice desconocido {start!r}")
    for e in edges:
        if e not in g.src or g.src[e] != current:
            raise MalformedMorphismError(f"make_path: {e!r} no sale de {current!r}")
        current = g.tgt[e]
    return Path(start, edges, current)


def path_vertices(g: Graph, p: Path) -> tuple:
    return (p.start,) + tuple(g.tgt[e] for e in p.edges)


def free_paths(g: Graph, maxlen: int) -> list:
    """Todos los caminos de longitud ≤ maxlen, los vacíos primero."""
    paths = [identity_path(v) for v in g.vertices]
    frontier = list(paths)
    for _ in range(maxlen):
        frontier = [Path(p.start, p.edges + (e,), g.tgt[e]) for p in frontier for e in g.out_edges(p.end)]
        paths.extend(frontier)
    return paths


def paths_of_length(g: Graph, n: int) -> list:
    return [p for p in free_paths(g, n) if len(p) == n]


# ─── Estructura de mónada ─────────────────────────────────────────────────

def eta(g: Graph, e) -> Path:
    """η_G: la arista e como camino de longitud 1."""
    return Path(g.src[e], (e,), g.tgt[e])


def eta_path(p: Path) -> Path:
    """η_{TG}: el camino p como camino de caminos de longitud 1."""
    return Path(p.start, (p,), p.end)


def t_eta(g: Graph, p: Path) -> Path:
    """Tη: cada arista de p pasa a ser un camino de longitud 1."""
    return Path(p.start, tuple(eta(g, e) for e in p.edges), p.end)


def mu_flatten(outer: Path) -> Path:
    """μ: concatena un camino de caminos."""
    current = outer.start
    edges: tuple = ()
    for inner in outer.edges:
        if inner.start != current:
            raise MalformedMorphismError(f"mu_flatten: {inner.label()} empieza en {inner.start!r}, se esperaba {current!r}")
        edges += inner.edges
        current = inner.end
    if current != outer.end:
        raise MalformedMorphismError(f"mu_flatten: el camino termina en {current!r}, no en {outer.end!r}")
    return Path(outer.start, edges, outer.end)


def tmap(phi: GraphMorphism, p: Path) -> Path:
    """T sobre morfismos: imagen arista por arista."""
    return Path(phi.vertices[p.start], tuple(phi.edges[e] for e in p.edges), phi.vertices[p.end])


def t_apply(f: Callable, p: Path) -> Path:
    """T sobre una función de aristas (por ejemplo μ o una evaluación)."""
    images = tuple(f(e) for e in p.edges)
    return Path(p.start, images, p.end)


def splittings(p: Path, g: Graph) -> list:
    """Todas las formas de cortar p en trozos consecutivos no vacíos (caminos de caminos)."""
    n = len(p)
    vertices = path_vertices(g, p)
    result = []
    for r in range(n):
        for cuts in itertools.combinations(range(1, n), r):
            bounds = (0,) + cuts + (n,)
            chunks = tuple(Path(vertices[a], p.edges[a:b], vertices[b]) for a, b in zip(bounds, bounds[1:]))
            result.append(Path(p.start, chunks, p.end))
    if n == 0:
        result.append(Path(p.start, (), p.end))
    return result


def monad_law_report(g: Graph, maxlen: int = 4) -> Report:
    """Unidad a ambos lados y asociatividad de μ sobre todos los caminos acotados."""
    report = Report("free-category-monad")
    for p in free_paths(g, maxlen):
        report.checked += 1
        if mu_flatten(t_eta(g, p)) != p:
            report.fail(f"μ∘Tη != 1 en {p.label()}", {"path": p.label()})
        if mu_flatten(eta_path(p)) != p:
            report.fail(f"μ∘η_T != 1 en {p.label()}", {"path": p.label()})
        for outer in splittings(p, g):
            for nested in splittings(outer, _chunk_graph(outer)):
                report.checked += 1
                left = mu_flatten(mu_flatten(nested))
                right = mu_flatten(t_apply(mu_flatten, nested))
                if left != right:
                    report.fail(f"μ no asociativa en {p.label()}", {"path": p.label()})
    return report


def _chunk_graph(outer: Path) -> Graph:
    """Grafo auxiliar cuyas aristas son los trozos de `outer` (para volver a cortarlo)."""
    chunks = outer.edges
    vertices = tuple(dict.fromkeys([outer.start] + [c.end for c in chunks]))
    return Graph(vertices, chunks, {c: c.start for c in chunks}, {c: c.end for c in chunks})


# ─── Álgebras: categorías como T-álgebras ─────────────────────────────────

def eval_path(c: FinCategory, p: Path):
    """La evaluación TG -> G de una categoría: compone el camino."""
    if not p.edges:
        return c.identity(p.start)
    return c.compose_path(p.edges)


def algebra_report(c: FinCategory, maxlen: int = 4) -> Report:
    """Los dos diagramas de álgebra para eval_path sobre caminos de longitud ≤ maxlen."""
    report = Report("path-algebra")
    g = underlying_graph(c)
    for e in g.edges:
        report.checked += 1
        if eval_path(c, eta(g, e)) != e:
            report.fail(f"eval∘η != 1 en {e!r}", {"edge": e})
    for p in free_paths(g, maxlen):
        for outer in splittings(p, g):
            report.checked += 1
            flat = eval_path(c, mu_flatten(outer))
            stepwise = eval_path(c, t_apply(lambda q: eval_path(c, q), outer))
            if flat != stepwise:
                report.fail(f"eval∘μ != eval∘T(eval) en {outer.label()}", {"path": p.label()})
    return report


def category_from_algebra(g: Graph, evaluate: Callable[[Path], Hashable]) -> FinCategory:
    """
    Reconstruye la categoría de una T-álgebra sobre g: identidades = evaluación
    de los caminos vacíos, composición = evaluación de los caminos de longitud 2.
    """
    identities = {v: evaluate(identity_path(v)) for v in g.vertices}
    comp = {}
    for e in g.edges:
        for f in g.out_edges(g.tgt[e]):
            comp[(e, f)] = evaluate(Path(g.src[e], (e, f), g.tgt[f]))
    arrows = tuple(Arrow(e, g.src[e], g.tgt[e]) for e in sorted(g.edges, key=sort_key))
    return FinCategory(tuple(g.vertices), arrows, identities, comp)
