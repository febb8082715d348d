"""
simplicial/sset.py — Conjuntos simpliciales truncados

Niveles 0..N con caras d_i: X_n -> X_{n-1} (acción de δᵢ: [n-1] -> [n]) y
degeneraciones s_j: X_n -> X_{n+1} (acción de σⱼ: [n+1] -> [n]).
"""
import itertools
import logging
from dataclasses import dataclass

from core.category import sort_key
from core.errors import InvalidStructureError, TruncationError
from core.functors import SetFunctor
from core.report import Report
from simplicial.delta import MonotoneMap, delta0_category, normal_form, shift, shift_id

logger = logging.getLogger("nervio.simplicial")


@dataclass(frozen=True)
class TruncSimplicialSet:
    N: int
    levels: dict             # n -> tuple de simplices
    faces: dict              # (n, i) -> {x ∈ X_n: d_i x ∈ X_{n-1}}
    degeneracies: dict       # (n, j) -> {x ∈ X_n: s_j x ∈ X_{n+1}}

    def face(self, n: int, i: int, x):
        return self.faces[(n, i)][x]

    def degeneracy(self, n: int, j: int, x):
        return self.degeneracies[(n, j)][x]

    def sizes(self) -> list:
        return [len(self.levels[n]) for n in range(self.N + 1)]

    def without(self, n: int, x) -> "TruncSimplicialSet":
        """Quita `x` de X_n y todo simplex superior que lo tenga como cara."""
        for (m, j), s in self.degeneracies.items():
            if m + 1 == n and x in s.values():
                raise InvalidStructureError(f"{x!r} es degenerado; no puede quitarse")
        removed = {n: {x}}
        for level in range(n + 1, self.N + 1):
            removed[level] = {
                z for z in self.levels[level]
                if any(self.faces[(level, i)][z] in removed[level - 1] for i in range(level + 1))
            }
        levels = {m: tuple(z for z in xs if z not in removed.get(m, set())) for m, xs in self.levels.items()}
        keep = {m: set(xs) for m, xs in levels.items()}
        faces = {k: {z: y for z, y in v.items() if z in keep[k[0]]} for k, v in self.faces.items()}
        degs = {k: {z: y for z, y in v.items() if z in keep[k[0]]} for k, v in self.degeneracies.items()}
        return TruncSimplicialSet(self.N, levels, faces, degs)

    def with_duplicate(self, x, copy) -> "TruncSimplicialSet":
        """Agrega al nivel N una copia de `x` con las mismas caras."""
        N = self.N
        if x not in self.levels[N]:
            raise InvalidStructureError(f"{x!r} no está en el nivel superior {N}")
        levels = dict(self.levels)
        levels[N] = self.levels[N] + (copy,)
        faces = dict(self.faces)
        for i in range(N + 1):
            faces[(N, i)] = {**self.faces[(N, i)], copy: self.faces[(N, i)][x]}
        return TruncSimplicialSet(N, levels, faces, dict(self.degeneracies))


def check_identities(x: TruncSimplicialSet) -> Report:
    """Las tres familias de identidades simpliciales dentro de la truncación."""
    report = Report("simplicial-identities")
    d, s = x.face, x.degeneracy
    for n in range(2, x.N + 1):
        for j in range(1, n + 1):
            for i in range(j):
                for z in x.levels[n]:
                    report.checked += 1
                    if d(n - 1, i, d(n, j, z)) != d(n - 1, j - 1, d(n, i, z)):
                        report.fail(f"δδ identity fails: d{i} d{j} != d{j - 1} d{i} at level {n} on {z!r}",
                                    {"identity": "δδ", "level": n, "element": z})
    for n in range(0, x.N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                for z in x.levels[n]:
                    report.checked += 1
                    if s(n + 1, i, s(n, j, z)) != s(n + 1, j + 1, s(n, i, z)):
                        report.fail(f"σσ identity fails: s{i} s{j} != s{j + 1} s{i} at level {n} on {z!r}",
                                    {"identity": "σσ", "level": n, "element": z})
    for n in range(0, x.N):
        for j in range(n + 1):
            for i in range(n + 2):
                for z in x.levels[n]:
                    report.checked += 1
                    lhs = d(n + 1, i, s(n, j, z))
                    if i < j:
                        rhs, name = s(n - 1, j - 1, d(n, i, z)), f"s{j - 1} d{i}"
                    elif i in (j, j + 1):
                        rhs, name = z, "id"
                    else:
                        rhs, name = s(n - 1, j, d(n, i - 1, z)), f"s{j} d{i - 1}"
                    if lhs != rhs:
                        report.fail(f"σδ identity fails: d{i} s{j} != {name} at level {n} on {z!r}",
                                    {"identity": "σδ", "level": n, "element": z})
    return report


def check_simplicial_set(x: TruncSimplicialSet) -> Report:
    report = Report("simplicial-set")
    for n in range(1, x.N + 1):
        for i in range(n + 1):
            m = x.faces.get((n, i), {})
            lower = set(x.levels[n - 1])
            for z in x.levels[n]:
                if z not in m or m[z] not in lower:
                    report.fail(f"face d{i} indefinida en {z!r} (nivel {n})", {"level": n, "element": z})
    for n in range(x.N):
        for j in range(n + 1):
            m = x.degeneracies.get((n, j), {})
            upper = set(x.levels[n + 1])
            for z in x.levels[n]:
                if z not in m or m[z] not in upper:
                    report.fail(f"degeneracy s{j} indefinida en {z!r} (nivel {n})", {"level": n, "element": z})
    if report.violations:
        return report
    return report.merge(check_identities(x))


def eval_simplicial(x: TruncSimplicialSet, f: MonotoneMap) -> dict:
    """
    X(f): X_cod -> X_dom vía la forma normal de f: primero las caras
    d_{i1}, …, d_{ik} y luego las degeneraciones s_{j1}, …, s_{jh}.
    """
    if f.dom > x.N or f.cod > x.N:
        raise TruncationError(f"eval_simplicial: {f.label} supera la truncación N={x.N}")
    nf = normal_form(f)
    result = {}
    for z in x.levels[f.cod]:
        level, y = f.cod, z
        for i in nf.deltas:
            y = x.face(level, i, y)
            level -= 1
        for j in nf.sigmas:
            y = x.degeneracy(level, j, y)
            level += 1
        result[z] = y
    return result


def degenerate_simplices(x: TruncSimplicialSet, n: int) -> set:
    if n == 0:
        return set()
    return {x.degeneracy(n - 1, j, z) for j in range(n) for z in x.levels[n - 1]}


def nondegenerate_simplices(x: TruncSimplicialSet, n: int) -> tuple:
    degenerate = degenerate_simplices(x, n)
    return tuple(z for z in x.levels[n] if z not in degenerate)


def degenerate_count_inclusion_exclusion(x: TruncSimplicialSet, n: int) -> int:
    """|⋃ im s_j| por inclusión-exclusión sobre las imágenes de las degeneraciones."""
    if n == 0:
        return 0
    images = [{x.degeneracy(n - 1, j, z) for z in x.levels[n - 1]} for j in range(n)]
    total = 0
    for r in range(1, n + 1):
        for subset in itertools.combinations(images, r):
            total += (-1) ** (r + 1) * len(set.intersection(*subset))
    return total


def restrict_along_delta0(x: TruncSimplicialSet) -> SetFunctor:
    """l*X: la restricción de X a Δ₀ como SetFunctor sobre Δ₀(N)^op."""
    from core.category import opposite

    base = opposite(delta0_category(x.N))
    carrier = {str(n): x.levels[n] for n in range(x.N + 1)}
    action = {}
    for m in range(x.N + 1):
        for n in range(m, x.N + 1):
            for k in range(n - m + 1):
                action[shift_id(m, n, k)] = eval_simplicial(x, shift(m, n, k))
    return SetFunctor(base, carrier, action)


def simplex_label(z) -> str:
    if isinstance(z, tuple):
        return "|".join(simplex_label(v) for v in z) if z else "()"
    return str(z)


def to_dict(x: TruncSimplicialSet) -> dict:
    return {
        "kind": "simplicial",
        "N": x.N,
        "levels": {str(n): [simplex_label(z) for z in x.levels[n]] for n in range(x.N + 1)},
        "faces": {
            str(n): {str(i): {simplex_label(z): simplex_label(y)
                              for z, y in sorted(x.faces[(n, i)].items(), key=lambda kv: sort_key(kv[0]))}
                     for i in range(n + 1)}
            for n in range(1, x.N + 1)
        },
        "degeneracies": {
            str(n): {str(j): {simplex_label(z): simplex_label(y)
                              for z, y in sorted(x.degeneracies[(n, j)].items(), key=lambda kv: sort_key(kv[0]))}
                     for j in range(n + 1)}
            for n in range(x.N)
        },
    }


def from_dict(data: dict) -> TruncSimplicialSet:
    N = int(data["N"])
    levels = {n: tuple(data["levels"][str(n)]) for n in range(N + 1)}
    faces = {(int(n), int(i)): dict(m) for n, row in data.get("faces", {}).items() for i, m in row.items()}
    degs = {(int(n), int(j)): dict(m) for n, row in data.get("degeneracies", {}).items() for j, m in row.items()}
    return TruncSimplicialSet(N, levels, faces, degs)
