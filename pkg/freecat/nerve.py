"""
freecat/nerve.py — Nervio de un grafo sobre Δ₀ y la forma representable de Segal

El nivel n de graph_nerve(G) son los caminos de largo exactamente n
(vértices en el nivel 0, tuplas de aristas desde el nivel 1). Una
inclusión +k: [m] -> [n] actúa eligiendo el subcamino que empieza en k.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

from core.category import opposite, sort_key
from core.functors import SetFunctor
from freecat.graph import Graph
from freecat.paths import paths_of_length
from simplicial.delta import delta0_category, shift_id

logger = logging.getLogger("nervio.freecat")


def _subpath(src: dict, tgt: dict, z, n: int, m: int, k: int):
    if n == 0:
        return z
    if m == 0:
        return src[z[0]] if k == 0 else tgt[z[k - 1]]
    return z[k:k + m]


def graph_nerve(g: Graph, N: int) -> SetFunctor:
    base = opposite(delta0_category(N))
    carrier = {"0": tuple(g.vertices)}
    for n in range(1, N + 1):
        carrier[str(n)] = tuple(p.edges for p in paths_of_length(g, n))
    action = {}
    for m in range(N + 1):
        for n in range(m, N + 1):
            for k in range(n - m + 1):
                action[shift_id(m, n, k)] = {z: _subpath(g.src, g.tgt, z, n, m, k) for z in carrier[str(n)]}
    return SetFunctor(base, carrier, action)


@dataclass
class RepresentabilityResult:
    ok: bool
    graph: Optional[Graph] = None
    level: Optional[int] = None
    reason: str = ""
    isomorphisms: dict = field(default_factory=dict)   # nivel -> {x: camino}
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "graph": self.graph.to_dict() if self.graph is not None and self.ok else None,
            "witness": None if self.ok else {"level": self.level, "reason": self.reason},
            "warnings": list(self.warnings),
        }


def segal_representability_check(x: SetFunctor) -> RepresentabilityResult:
    """
    Arma el grafo candidato con los niveles 0 y 1 y las dos inclusiones
    [0] -> [1]; luego verifica que cada nivel n sea biyectivo con los caminos
    de largo n vía sus n aristas consecutivas.
    """
    N = len(x.carrier) - 1
    g = Graph(
        tuple(x.carrier["0"]),
        tuple(x.carrier["1"]) if N >= 1 else (),
        dict(x.action.get(shift_id(0, 1, 0), {})),
        dict(x.action.get(shift_id(0, 1, 1), {})),
    )
    result = RepresentabilityResult(True, g)
    if N < 2:
        result.warnings.append(f"N={N} < 2: sólo se leen los niveles 0 y 1")
    for n in range(2, N + 1):
        paths = {p.edges for p in paths_of_length(g, n)}
        spine = {z: tuple(x.action[shift_id(1, n, k)][z] for k in range(n)) for z in x.carrier[str(n)]}
        images = set(spine.values())
        if len(images) != len(spine):
            return RepresentabilityResult(False, level=n, reason="dos elementos con el mismo camino")
        missing = sorted(paths - images, key=sort_key)
        if missing:
            return RepresentabilityResult(False, level=n, reason=f"camino sin elemento: {missing[0]!r}")
        if images - paths:
            return RepresentabilityResult(False, level=n, reason="elemento cuyo borde no es un camino")
        result.isomorphisms[n] = spine
    logger.info(f"🔗 representable: {len(g.vertices)} vértices, {len(g.edges)} aristas, N={N}")
    return result
