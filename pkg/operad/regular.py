"""
operad/regular.py — Ecuaciones y regularidad fuerte

Una ecuación es fuertemente regular cuando ambos lados listan las mismas
variables, sin repetir, en el mismo orden. Sintaxis aceptada:

    x·(y·z) = (x·y)·z        x*1 = x        (x^y)^z = x^(y*z)        x⁻¹·x = 1

Precedencia de menor a mayor: `+`, `·`/`*`, `^` (asocia a la derecha),
`⁻¹` postfijo. Los dígitos son constantes.
"""
import logging
import re
from dataclasses import dataclass
from typing import Union

from core.errors import IllFormedTermError

logger = logging.getLogger("nervio.operad")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_CONST = re.compile(r"\d+")
_TIMES = ("·", "*")
_INVERSE = ("⁻¹", "^-1")


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Apply:
    symbol: str
    args: tuple = ()


Term = Union[Variable, Apply]


@dataclass(frozen=True)
class EquationTree:
    left: Term
    right: Term

    def to_dict(self) -> dict:
        return {
            "left": format_term(self.left),
            "right": format_term(self.right),
            "variables": [variables(self.left), variables(self.right)],
        }


def variables(t: Term) -> list:
    """Variables en orden de lectura, con repeticiones."""
    if isinstance(t, Variable):
        return [t.name]
    found = []
    for arg in t.args:
        found.extend(variables(arg))
    return found


def format_term(t: Term) -> str:
    if isinstance(t, Variable):
        return t.name
    if not t.args:
        return t.symbol
    if t.symbol == "⁻¹":
        return f"({format_term(t.args[0])})⁻¹"
    left, right = t.args
    return f"({format_term(left)}{t.symbol}{format_term(right)})"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise IllFormedTermError(f"posición {self.pos}: {message}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, *tokens) -> str:
        self.skip()
        for token in tokens:
            if self.text.startswith(token, self.pos):
                return token
        return ""

    def take(self, *tokens) -> str:
        token = self.peek(*tokens)
        self.pos += len(token)
        return token

    def sum(self) -> Term:
        t = self.product()
        while self.take("+"):
            t = Apply("+", (t, self.product()))
        return t

    def product(self) -> Term:
        t = self.power()
        while self.take(*_TIMES):
            t = Apply("·", (t, self.power()))
        return t

    def power(self) -> Term:
        base = self.postfix()
        if self.peek("^") and not self.peek(*_INVERSE):
            self.take("^")
            return Apply("^", (base, self.power()))
        return base

    def postfix(self) -> Term:
        t = self.atom()
        while self.take(*_INVERSE):
            t = Apply("⁻¹", (t,))
        return t

    def atom(self) -> Term:
        if self.take("("):
            t = self.sum()
            if not self.take(")"):
                self.fail("se esperaba ')'")
            return t
        self.skip()
        match = _IDENT.match(self.text, self.pos) or _CONST.match(self.text, self.pos)
        if not match:
            self.fail("se esperaba una variable, una constante o '('")
        self.pos = match.end()
        word = match.group(0)
        return Apply(word) if word.isdigit() else Variable(word)


def parse_equation(text: str) -> EquationTree:
    if text.count("=") != 1:
        raise IllFormedTermError("una ecuación lleva exactamente un '='")
    parser = _Parser(text)
    left = parser.sum()
    if not parser.take("="):
        parser.fail("se esperaba '='")
    right = parser.sum()
    parser.skip()
    if parser.pos != len(text):
        parser.fail("texto sobrante")
    return EquationTree(left, right)


def strongly_regular(eq: EquationTree) -> bool:
    left, right = variables(eq.left), variables(eq.right)
    regular = left == right and len(set(left)) == len(left)
    logger.debug(f"regularidad: {left} / {right} -> {regular}")
    return regular
