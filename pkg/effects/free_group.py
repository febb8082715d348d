"""
effects/free_group.py — Palabras de la mónada del grupo libre

Una palabra es una sucesión de letras (generador, ±1). Los generadores
pueden ser a su vez palabras, lo que da T T S; el texto usa corchetes:
    [a][b]⁻¹             palabra de T S
    [[a][b]⁻¹][[c]]⁻¹     palabra de T T S
"""
import logging
from dataclasses import dataclass
from typing import Callable

from core.errors import InputError

logger = logging.getLogger("nervio.effects")

INVERSE_MARKS = ("⁻¹", "^-1")


@dataclass(frozen=True)
class GroupWord:
    letters: tuple = ()           # (generador, 1 | -1)

    @property
    def depth(self) -> int:
        """Niveles de corchetes."""
        inner = [g.depth for g, _ in self.letters if isinstance(g, GroupWord)]
        return 1 + max(inner, default=0)

    def __len__(self) -> int:
        return len(self.letters)

    def label(self) -> str:
        return format_word(self)


def inverse(w: GroupWord) -> GroupWord:
    return GroupWord(tuple((g, -s) for g, s in reversed(w.letters)))


def reduce_word(w: GroupWord) -> GroupWord:
    """Cancela x·x⁻¹ y x⁻¹·x con una pila."""
    stack: list = []
    for g, s in w.letters:
        if stack and stack[-1] == (g, -s):
            stack.pop()
        else:
            stack.append((g, s))
    return GroupWord(tuple(stack))


def eta_word(x) -> GroupWord:
    return GroupWord(((x, 1),))


def free_group_mu(w: GroupWord) -> GroupWord:
    """Quita los corchetes externos distribuyendo la inversión y reduce."""
    letters = []
    for inner, s in w.letters:
        if not isinstance(inner, GroupWord):
            raise InputError(f"free_group_mu: la letra {inner!r} no es una palabra")
        letters.extend((inner if s == 1 else inverse(inner)).letters)
    return reduce_word(GroupWord(tuple(letters)))


def tmap_word(f: Callable, w: GroupWord) -> GroupWord:
    return reduce_word(GroupWord(tuple((f(g), s) for g, s in w.letters)))


def format_word(w: GroupWord) -> str:
    parts = []
    for g, s in w.letters:
        inner = format_word(g) if isinstance(g, GroupWord) else str(g)
        parts.append(f"[{inner}]" + ("⁻¹" if s == -1 else ""))
    return "".join(parts)


def parse_word(text: str) -> GroupWord:
    """Lee una palabra con corchetes anidados; los corchetes deben cerrar."""
    word, pos = _parse_letters(text, 0)
    if pos != len(text):
        raise InputError(f"corchete sin abrir o texto sobrante en {pos}", "word")
    return word


def _parse_letters(text: str, pos: int) -> tuple:
    letters = []
    while pos < len(text) and text[pos] != "]":
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "[":
            raise InputError(f"se esperaba '[' en {pos}", "word")
        pos += 1
        if pos < len(text) and text[pos] == "[":
            gen, pos = _parse_letters(text, pos)
        else:
            end = pos
            while end < len(text) and text[end] not in "[]":
                end += 1
            gen = text[pos:end].strip()
            if not gen:
                raise InputError(f"generador vacío en {pos}", "word")
            pos = end
        if pos >= len(text) or text[pos] != "]":
            raise InputError(f"corchete sin cerrar en {pos}", "word")
        pos += 1
        sign = 1
        for mark in INVERSE_MARKS:
            if text.startswith(mark, pos):
                sign, pos = -1, pos + len(mark)
                break
        letters.append((gen, sign))
    return GroupWord(tuple(letters)), pos
