"""
core/category.py — Categorías finitas explícitas

Una FinCategory es una lista de objetos, una lista de flechas con fuente y
destino, una identidad por objeto y una tabla de composición total sobre los
pares componibles. La composición va en orden diagramático: comp[(f, g)]
es "primero f, luego g".
"""
import logging
import os
from dataclasses import dataclass, field
from typing import Hashable, Iterator, Optional

from core.errors import DomainMismatchError, InvalidStructureError
from core.report import Report

logger = logging.getLogger("nervio.core")

ISO_SEARCH_LIMIT = int(os.getenv("NERVIO_ISO_SEARCH_LIMIT", "200000"))


def sort_key(value) -> tuple:
    """Clave estable para ordenar ids heterogéneos (str, int, tuplas)."""
    if isinstance(value, tuple):
        return (2, tuple(sort_key(v) for v in value))
    if isinstance(value, int):
        return (0, value, "")
    return (1, 0, str(value))


@dataclass(frozen=True)
class Arrow:
    id: Hashable
    src: Hashable
    tgt: Hashable


@dataclass(frozen=True)
class FinCategory:
    objects: tuple
    arrows: tuple                      # tuple[Arrow, ...]
    identities: dict                   # objeto -> id de flecha
    comp: dict                         # (f, g) -> f;g
    _index: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for a in self.arrows:
            if a.id in index:
                raise InvalidStructureError(f"arrow id repetido: {a.id!r}")
            index[a.id] = a
        object.__setattr__(self, "_index", index)

    # ─── Acceso ───────────────────────────────────────────────────────────

    def arrow(self, f) -> Arrow:
        try:
            return self._index[f]
        except KeyError:
            raise DomainMismatchError(f"flecha desconocida: {f!r}") from None

    def src(self, f):
        return self.arrow(f).src

    def tgt(self, f):
        return self.arrow(f).tgt

    def arrow_ids(self) -> tuple:
        return tuple(a.id for a in self.arrows)

    def identity(self, obj):
        return self.identities[obj]

    def is_identity(self, f) -> bool:
        a = self.arrow(f)
        return a.src == a.tgt and self.identities.get(a.src) == f

    def hom(self, a, b) -> tuple:
        return tuple(x.id for x in self.arrows if x.src == a and x.tgt == b)

    def compose(self, f, g):
        """f luego g."""
        if self.tgt(f) != self.src(g):
            raise DomainMismatchError(f"{f!r} y {g!r} no son componibles")
        try:
            return self.comp[(f, g)]
        except KeyError:
            raise DomainMismatchError(f"composición no definida para ({f!r}, {g!r})") from None

    def compose_path(self, arrows: tuple, start=None):
        """Compone una secuencia de flechas; la secuencia vacía es la identidad de `start`."""
        if not arrows:
            return self.identity(start)
        result = arrows[0]
        for g in arrows[1:]:
            result = self.compose(result, g)
        return result

    def composable_pairs(self) -> Iterator[tuple]:
        for f in self.arrows:
            for g in self.arrows:
                if f.tgt == g.src:
                    yield f.id, g.id

    def composable_triples(self) -> Iterator[tuple]:
        for f, g in self.composable_pairs():
            for h in self.arrows:
                if h.src == self.tgt(g):
                    yield f, g, h.id

    def to_dict(self) -> dict:
        comp: dict = {}
        for (f, g), h in sorted(self.comp.items(), key=lambda kv: sort_key(kv[0])):
            comp.setdefault(str(f), {})[str(g)] = str(h)
        return {
            "kind": "category",
            "objects": [str(o) for o in self.objects],
            "arrows": [{"id": str(a.id), "src": str(a.src), "tgt": str(a.tgt)} for a in self.arrows],
            "identities": {str(o): str(i) for o, i in self.identities.items()},
            "comp": comp,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FinCategory":
        comp = {(f, g): h for f, row in data.get("comp", {}).items() for g, h in row.items()}
        return cls(
            objects=tuple(data["objects"]),
            arrows=tuple(Arrow(a["id"], a["src"], a["tgt"]) for a in data["arrows"]),
            identities=dict(data["identities"]),
            comp=comp,
        )


# ─── Validación ──────────────────────────────────────────────────────────

def validate_category(c: FinCategory) -> Report:
    """Lista cada instancia violada de los axiomas de categoría."""
    report = Report("category")
    objects = set(c.objects)
    for a in c.arrows:
        if a.src not in objects or a.tgt not in objects:
            report.fail(f"arrow {a.id!r}: endpoint fuera de objects", {"arrow": a.id})

    for obj in c.objects:
        i = c.identities.get(obj)
        if i is None or i not in c._index:
            report.fail(f"identity: objeto {obj!r} sin identidad", {"object": obj})
            continue
        if c.src(i) != obj or c.tgt(i) != obj:
            report.fail(f"identity: {i!r} no es endo-flecha de {obj!r}", {"object": obj})
    if report.violations:
        return report

    pairs = set(c.composable_pairs())
    for key in c.comp:
        if key not in pairs:
            report.fail(f"comp: definida sobre par no componible {key!r}", {"pair": list(key)})
    for f, g in sorted(pairs, key=sort_key):
        report.checked += 1
        h = c.comp.get((f, g))
        if h is None:
            report.fail(f"comp: falta ({f!r}, {g!r})", {"pair": [f, g]})
        elif h not in c._index:
            report.fail(f"comp: ({f!r}, {g!r}) -> {h!r} no es flecha", {"pair": [f, g]})
        elif c.src(h) != c.src(f) or c.tgt(h) != c.tgt(g):
            report.fail(f"comp: ({f!r}, {g!r}) -> {h!r} con fuente/destino incorrectos", {"pair": [f, g]})
    if report.violations:
        return report

    for a in c.arrows:
        left = c.comp[(c.identity(a.src), a.id)]
        right = c.comp[(a.id, c.identity(a.tgt))]
        if left != a.id:
            report.fail(f"left unit: id;{a.id!r} = {left!r}", {"arrow": a.id})
        if right != a.id:
            report.fail(f"right unit: {a.id!r};id = {right!r}", {"arrow": a.id})

    for f, g, h in c.composable_triples():
        report.checked += 1
        lhs = c.comp[(c.comp[(f, g)], h)]
        rhs = c.comp[(f, c.comp[(g, h)])]
        if lhs != rhs:
            report.fail(
                f"associativity: ({f!r}, {g!r}, {h!r}) gives {lhs!r} != {rhs!r}",
                {"triple": [f, g, h]},
            )
    return report


def require_valid(c: FinCategory) -> FinCategory:
    report = validate_category(c)
    if not report.ok:
        raise InvalidStructureError(report.violations[0], report)
    return c


def opposite(c: FinCategory) -> FinCategory:
    """Misma data con fuente/destino intercambiados y composición invertida."""
    return FinCategory(
        objects=c.objects,
        arrows=tuple(Arrow(a.id, a.tgt, a.src) for a in c.arrows),
        identities=dict(c.identities),
        comp={(g, f): h for (f, g), h in c.comp.items()},
    )


def full_subcategory(c: FinCategory, objects) -> FinCategory:
    keep = [o for o in c.objects if o in set(objects)]
    arrows = tuple(a for a in c.arrows if a.src in keep and a.tgt in keep)
    ids = {a.id for a in arrows}
    return FinCategory(
        tuple(keep), arrows, {o: c.identity(o) for o in keep},
        {(f, g): h for (f, g), h in c.comp.items() if f in ids and g in ids},
    )


def indecomposable_arrows(c: FinCategory) -> tuple:
    """Flechas no identidad que no son composición de dos no identidades."""
    composites = {
        h for (f, g), h in c.comp.items()
        if not c.is_identity(f) and not c.is_identity(g)
    }
    return tuple(a.id for a in c.arrows if not c.is_identity(a.id) and a.id not in composites)


# ─── Isomorfismos ────────────────────────────────────────────────────────

def _hom_profile(c: FinCategory, obj) -> tuple:
    outs = sorted(len(c.hom(obj, b)) for b in c.objects)
    ins = sorted(len(c.hom(a, obj)) for a in c.objects)
    return len(c.hom(obj, obj)), tuple(outs), tuple(ins)


def _object_bijections(c: FinCategory, d: FinCategory) -> Iterator[dict]:
    profile_d = {b: _hom_profile(d, b) for b in d.objects}
    candidates = {a: [b for b in d.objects if profile_d[b] == _hom_profile(c, a)] for a in c.objects}
    order = sorted(c.objects, key=lambda a: len(candidates[a]))

    def extend(k: int, mapping: dict, used: set):
        if k == len(order):
            yield dict(mapping)
            return
        a = order[k]
        for b in candidates[a]:
            if b in used:
                continue
            if any(len(c.hom(a, x)) != len(d.hom(b, mapping[x])) or
                   len(c.hom(x, a)) != len(d.hom(mapping[x], b)) for x in mapping):
                continue
            mapping[a] = b
            used.add(b)
            yield from extend(k + 1, mapping, used)
            used.discard(b)
            del mapping[a]

    yield from extend(0, {}, set())


def _arrow_bijection(c: FinCategory, d: FinCategory, objmap: dict, budget: list) -> Optional[dict]:
    mapping = {c.identity(o): d.identity(objmap[o]) for o in c.objects}
    rest = [a.id for a in c.arrows if a.id not in mapping]
    used = set(mapping.values())
    # flecha -> pares (x, y, x;y) donde aparece como factor o como composición
    touching: dict = {a.id: [] for a in c.arrows}
    for (x, y), h in c.comp.items():
        for k in {x, y, h}:
            touching.setdefault(k, []).append((x, y, h))

    def consistent(f) -> bool:
        for x, y, h in touching[f]:
            if x in mapping and y in mapping and h in mapping:
                if d.comp.get((mapping[x], mapping[y])) != mapping[h]:
                    return False
        return True

    def extend(k: int) -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            return False
        if k == len(rest):
            return True
        f = rest[k]
        for g in d.hom(objmap[c.src(f)], objmap[c.tgt(f)]):
            if g in used:
                continue
            mapping[f] = g
            used.add(g)
            if consistent(f) and extend(k + 1):
                return True
            used.discard(g)
            del mapping[f]
        return False

    return dict(mapping) if extend(0) else None


def find_isomorphism(c: FinCategory, d: FinCategory):
    """Busca por backtracking un isomorfismo c ≅ d. Devuelve FinFunctor o None."""
    from core.functors import FinFunctor

    if len(c.objects) != len(d.objects) or len(c.arrows) != len(d.arrows):
        return None
    budget = [ISO_SEARCH_LIMIT]
    for objmap in _object_bijections(c, d):
        arrowmap = _arrow_bijection(c, d, objmap, budget)
        if arrowmap is not None:
            return FinFunctor(c, d, objmap, arrowmap)
        if budget[0] < 0:
            logger.warning(f"⚠️ find_isomorphism agotó el límite de búsqueda ({ISO_SEARCH_LIMIT})")
            return None
    return None


def isomorphic(c: FinCategory, d: FinCategory) -> bool:
    return find_isomorphism(c, d) is not None


