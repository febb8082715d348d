"""
freecat/graph.py — Grafos dirigidos como prehaces sobre 𝔾

𝔾 tiene dos objetos V y E y dos flechas s, t: V -> E. Un grafo es un
prehaz sobre 𝔾: en la opuesta s y t actúan E -> V como fuente y destino.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, Optional

from core.builders import make_category
from core.category import FinCategory, opposite, sort_key
from core.errors import InvalidStructureError, MalformedMorphismError
from core.functors import NatTransform, SetFunctor

logger = logging.getLogger("nervio.freecat")


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple
    src: dict
    tgt: dict

    def __post_init__(self):
        vs = set(self.vertices)
        for e in self.edges:
            if self.src.get(e) not in vs or self.tgt.get(e) not in vs:
                raise InvalidStructureError(f"Graph: arista {e!r} con extremo indefinido")

    def out_edges(self, v) -> tuple:
        return tuple(e for e in self.edges if self.src[e] == v)

    def to_dict(self) -> dict:
        return {
            "kind": "graph",
            "vertices": [str(v) for v in self.vertices],
            "edges": [{"id": str(e), "src": str(self.src[e]), "tgt": str(self.tgt[e])} for e in self.edges],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        edges = data.get("edges", [])
        return cls(
            tuple(data["vertices"]),
            tuple(e["id"] for e in edges),
            {e["id"]: e["src"] for e in edges},
            {e["id"]: e["tgt"] for e in edges},
        )


def make_graph(vertices, edges: dict) -> Graph:
    """edges: {id: (src, tgt)}"""
    return Graph(tuple(vertices), tuple(edges), {e: s for e, (s, _) in edges.items()},
                 {e: t for e, (_, t) in edges.items()})


def linear_quiver(n: int) -> Graph:
    """i₀[n]: vértices 0..n y la arista k va de k a k+1."""
    return Graph(tuple(range(n + 1)), tuple(range(n)), {k: k for k in range(n)}, {k: k + 1 for k in range(n)})


# ─── Morfismos ────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class GraphMorphism:
    source: Graph
    target: Graph
    vertices: dict
    edges: dict

    def __post_init__(self):
        g, h = self.source, self.target
        for e in g.edges:
            image = self.edges.get(e)
            if image not in h.src:
                raise MalformedMorphismError(f"GraphMorphism: arista {e!r} sin imagen")
            if h.src[image] != self.vertices.get(g.src[e]) or h.tgt[image] != self.vertices.get(g.tgt[e]):
                raise MalformedMorphismError(f"GraphMorphism: {e!r} -> {image!r} no respeta src/tgt")
        if any(self.vertices.get(v) not in set(h.vertices) for v in g.vertices):
            raise MalformedMorphismError("GraphMorphism: vértice sin imagen")

    def key(self) -> tuple:
        return (tuple(sorted(self.vertices.items(), key=sort_key)),
                tuple(sorted(self.edges.items(), key=sort_key)))


def graph_morphisms(g: Graph, h: Graph) -> Iterator[GraphMorphism]:
    """Todos los morfismos g -> h: se eligen aristas primero y los vértices quedan forzados."""
    edges = list(g.edges)
    isolated = [v for v in g.vertices if not any(g.src[e] == v or g.tgt[e] == v for e in edges)]

    def extend_edges(k: int, vmap: dict, emap: dict):
        if k == len(edges):
            yield from extend_isolated(0, vmap, emap)
            return
        e = edges[k]
        s, t = g.src[e], g.tgt[e]
        for image in h.edges:
            hs, ht = h.src[image], h.tgt[image]
            if vmap.get(s, hs) != hs:
                continue
            new_vmap = dict(vmap)
            new_vmap[s] = hs
            if new_vmap.get(t, ht) != ht:
                continue
            new_vmap[t] = ht
            emap[e] = image
            yield from extend_edges(k + 1, new_vmap, emap)
            del emap[e]

    def extend_isolated(k: int, vmap: dict, emap: dict):
        if k == len(isolated):
            yield GraphMorphism(g, h, dict(vmap), dict(emap))
            return
        for w in h.vertices:
            vmap[isolated[k]] = w
            yield from extend_isolated(k + 1, vmap, emap)
            del vmap[isolated[k]]

    yield from extend_edges(0, {}, {})


def graphs_isomorphic(g: Graph, h: Graph) -> Optional[GraphMorphism]:
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    for phi in graph_morphisms(g, h):
        if len(set(phi.vertices.values())) == len(g.vertices) and len(set(phi.edges.values())) == len(g.edges):
            return phi
    return None


# ─── Grafos como prehaces ─────────────────────────────────────────────────

def globe_category() -> FinCategory:
    """𝔾: V ⇉ E con s, t."""
    return make_category(("V", "E"), {"s": ("V", "E"), "t": ("V", "E")})


GRAPH_BASE = opposite(globe_category())


def graph_to_presheaf(g: Graph) -> SetFunctor:
    return SetFunctor(
        GRAPH_BASE,
        {"V": tuple(g.vertices), "E": tuple(g.edges)},
        {
            "1_V": {v: v for v in g.vertices},
            "1_E": {e: e for e in g.edges},
            "s": dict(g.src),
            "t": dict(g.tgt),
        },
    )


def presheaf_to_graph(p: SetFunctor) -> Graph:
    return Graph(tuple(p.carrier["V"]), tuple(p.carrier["E"]), dict(p.action["s"]), dict(p.action["t"]))


def morphism_to_transform(phi: GraphMorphism) -> NatTransform:
    return NatTransform(
        graph_to_presheaf(phi.source), graph_to_presheaf(phi.target),
        {"V": dict(phi.vertices), "E": dict(phi.edges)},
    )


def underlying_graph(c: FinCategory) -> Graph:
    """Vértices = objetos, aristas = todas las flechas (identidades incluidas)."""
    return Graph(tuple(c.objects), c.arrow_ids(), {a.id: a.src for a in c.arrows}, {a.id: a.tgt for a in c.arrows})
