"""Group words over the generators S_i and X_i(t)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable


@dataclass(frozen=True, order=True)
class Gen:
    kind: str  # "S" or "X"
    node: int
    t: Any = None  # canonical ring value for X generators

    def name(self, R=None, A=None) -> str:
        label = A.nodes[self.node] if A is not None else str(self.node + 1)
        if self.kind == "S":
            return f"S{label}"
        val = R.fmt(self.t) if R is not None else str(self.t)
        return f"X{label}_{val}"


Letter = tuple  # (Gen, +1 | -1)
Word = tuple  # tuple of letters


def reduce(word: Iterable[Letter]) -> Word:
    """Free reduction."""
    out: list = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def mul(*words: Iterable[Letter]) -> Word:
    return reduce(x for w in words for x in w)


def inverse(word: Iterable[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(tuple(word)))


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x y x^-1 y^-1."""
    return mul(x, y, inverse(x), inverse(y))


def conj(w: Word, x: Word) -> Word:
    """w x w^-1."""
    return mul(w, x, inverse(w))


def S(i: int, e: int = 1) -> Word:
    return ((Gen("S", i), e),)


def X(i: int, t, e: int = 1) -> Word:
    return ((Gen("X", i, t), e),)


def Sw(*nodes: int) -> Word:
    """S_{n1} S_{n2} ... as a word."""
    return tuple((Gen("S", i), 1) for i in nodes)


def nodes_of(word: Word) -> tuple[int, ...]:
    return tuple(sorted({g.node for g, _ in word}))


def generators_of(word: Word) -> set:
    return {g for g, _ in word}


def substitute(word: Word, images: dict) -> Word:
    """Replace each generator g by the word images(g) (a callable or dict)."""
    f = images if callable(images) else images.__getitem__
    out = []
    for g, e in word:
        img = f(g)
        out.extend(img if e == 1 else inverse(img))
    return reduce(out)


def s_tilde(R, i: int, r) -> Word:
    """X_i(r) S_i X_i(1/r) S_i^-1 X_i(r)."""
    return mul(X(i, r), S(i), X(i, R.inv(r)), S(i, -1), X(i, r))


def h_tilde(R, i: int, r) -> Word:
    return mul(s_tilde(R, i, r), s_tilde(R, i, R.neg(R.one())))


def fmt_word(word: Word, R=None, A=None) -> str:
    if not word:
        return "1"
    parts = []
    for g, e in word:
        n = g.name(R, A)
        parts.append(n if e == 1 else f"{n}^-1")
    return " ".join(parts)
