"""
effects/io_trees.py — Entrada/salida interactiva como árboles finitos

Un árbol es Ret(valor), Out(o, hijo) o In(hijos), con un hijo por entrada.
La mónada corta los árboles por profundidad; μ injerta árboles en las hojas.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Union

from core.errors import DomainMismatchError
from effects.monads import FinMonad, canonical_label

logger = logging.getLogger("nervio.effects")


@dataclass(frozen=True)
class Ret:
    value: object


@dataclass(frozen=True)
class Out:
    symbol: object
    child: "IOTree"


@dataclass(frozen=True)
class In:
    children: tuple


IOTree = Union[Ret, Out, In]


def tree_depth(t: IOTree) -> int:
    if isinstance(t, Ret):
        return 0
    if isinstance(t, Out):
        return 1 + tree_depth(t.child)
    return 1 + max((tree_depth(c) for c in t.children), default=0)


def graft(t: IOTree, k: Callable[[object], IOTree]) -> IOTree:
    """Sustituye cada hoja Ret(x) por k(x)."""
    if isinstance(t, Ret):
        return k(t.value)
    if isinstance(t, Out):
        return Out(t.symbol, graft(t.child, k))
    return In(tuple(graft(c, k) for c in t.children))


def io_graft(outer: IOTree) -> IOTree:
    """μ: un árbol cuyas hojas son árboles."""
    def inner(x):
        if not isinstance(x, (Ret, Out, In)):
            raise DomainMismatchError(f"io_graft: la hoja {x!r} no es un árbol")
        return x
    return graft(outer, inner)


def tree_map(f: Callable, t: IOTree) -> IOTree:
    return graft(t, lambda x: Ret(f(x)))


def read_tree(inputs) -> IOTree:
    """read: I -> 1, el árbol que devuelve la entrada leída."""
    return In(tuple(Ret(i) for i in inputs))


def write_tree(symbol) -> IOTree:
    """write: 1 -> O."""
    return Out(symbol, Ret(()))


def io_to_output(t: IOTree) -> tuple:
    """Un árbol sin entradas como (palabra de salida, valor)."""
    word = []
    while isinstance(t, Out):
        word.append(t.symbol)
        t = t.child
    if isinstance(t, In):
        raise DomainMismatchError("io_to_output: el árbol lee entradas")
    return tuple(word), t.value


def tree_label(t: IOTree) -> str:
    if isinstance(t, Ret):
        return f"ret({canonical_label(t.value)})"
    if isinstance(t, Out):
        return f"out({t.symbol},{tree_label(t.child)})"
    return "in(" + ",".join(tree_label(c) for c in t.children) + ")"


class IOMonad(FinMonad):
    """Árboles de profundidad ≤ depth; μ puede superar la cota, el resultado igual se compara."""
    name = "io"

    def __init__(self, inputs=("i",), outputs=("o",), depth: int = 1):
        self.inputs = tuple(inputs)
        self.outputs = tuple(outputs)
        self.depth = depth

    def _trees(self, a: tuple, depth: int) -> list:
        trees = [Ret(x) for x in a]
        if depth == 0:
            return trees
        smaller = self._trees(a, depth - 1)
        trees += [Out(o, c) for o in self.outputs for c in smaller]
        if self.inputs:
            trees += [In(cs) for cs in itertools.product(smaller, repeat=len(self.inputs))]
        return trees

    def _enumerate(self, a):
        return self._trees(a, self.depth)

    def unit(self, x):
        return Ret(x)

    def mult(self, tt):
        return io_graft(tt)

    def fmap(self, f, t):
        return tree_map(f, t)

    def count(self, n):
        c = n
        for _ in range(self.depth):
            c = n + len(self.outputs) * c + (c ** len(self.inputs) if self.inputs else 0)
        return c

    def label(self, t):
        return tree_label(t)


def input_monad(inputs, depth: int = 1) -> IOMonad:
    """Sólo lecturas."""
    return IOMonad(inputs, (), depth)


class OutputMonad(FinMonad):
    """T a = O* × a, con palabras de longitud ≤ max_length."""
    name = "output"

    def __init__(self, outputs=("o",), max_length: int = 2):
        self.outputs = tuple(outputs)
        self.max_length = max_length

    def _enumerate(self, a):
        for k in range(self.max_length + 1):
            for word in itertools.product(self.outputs, repeat=k):
                for x in a:
                    yield (word, x)

    def unit(self, x):
        return ((), x)

    def mult(self, tt):
        word, (inner, x) = tt
        return (word + inner, x)

    def fmap(self, f, t):
        return (t[0], f(t[1]))

    def count(self, n):
        return n * sum(len(self.outputs) ** k for k in range(self.max_length + 1))
