"""
simplicial/nerve.py — Nervio de una categoría finita

Nivel 0: objetos. Nivel n ≥ 1: n-tuplas componibles (f1, …, fn).
d_0 descarta f1, d_n descarta fn y las caras interiores componen f_i;f_{i+1}.
s_j inserta la identidad del vértice j.
"""
import logging

from core.category import FinCategory, indecomposable_arrows, require_valid
from simplicial.sset import TruncSimplicialSet, nondegenerate_simplices

logger = logging.getLogger("nervio.simplicial")


def composable_tuples(c: FinCategory, n: int) -> tuple:
    if n == 0:
        return tuple(c.objects)
    tuples = [(a.id,) for a in c.arrows]
    for _ in range(n - 1):
        tuples = [t + (g.id,) for t in tuples for g in c.arrows if c.tgt(t[-1]) == g.src]
    return tuple(tuples)


def _vertex(c: FinCategory, z: tuple, i: int):
    return c.src(z[0]) if i == 0 else c.tgt(z[i - 1])


def _face(c: FinCategory, n: int, i: int, z):
    if n == 1:
        (f,) = z
        return c.tgt(f) if i == 0 else c.src(f)
    if i == 0:
        return z[1:]
    if i == n:
        return z[:-1]
    return z[:i - 1] + (c.compose(z[i - 1], z[i]),) + z[i + 1:]


def _degeneracy(c: FinCategory, n: int, j: int, z):
    if n == 0:
        return (c.identity(z),)
    ident = c.identity(_vertex(c, z, j))
    return z[:j] + (ident,) + z[j:]


def nerve(c: FinCategory, N: int) -> TruncSimplicialSet:
    require_valid(c)
    levels = {n: composable_tuples(c, n) for n in range(N + 1)}
    faces = {
        (n, i): {z: _face(c, n, i, z) for z in levels[n]}
        for n in range(1, N + 1) for i in range(n + 1)
    }
    degeneracies = {
        (n, j): {z: _degeneracy(c, n, j, z) for z in levels[n]}
        for n in range(N) for j in range(n + 1)
    }
    logger.info(f"🔺 nerve: niveles {[len(levels[n]) for n in range(N + 1)]}")
    return TruncSimplicialSet(N, levels, faces, degeneracies)


def spine_simplices(c: FinCategory, n: int) -> tuple:
    """n-simplices cuyas flechas son todas indecomponibles (el "esqueleto" generador)."""
    generators = set(indecomposable_arrows(c))
    if n == 0:
        return tuple(c.objects)
    return tuple(z for z in composable_tuples(c, n) if all(f in generators for f in z))


def nerve_summary(c: FinCategory, N: int) -> dict:
    x = nerve(c, N)
    return {
        "levels": {str(n): len(x.levels[n]) for n in range(N + 1)},
        "nondegenerate": {str(n): len(nondegenerate_simplices(x, n)) for n in range(N + 1)},
        "spine": {str(n): len(spine_simplices(c, n)) for n in range(N + 1)},
    }
