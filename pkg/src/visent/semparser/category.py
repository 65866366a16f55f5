"""CCG categories: atoms S, N, NP and forward/backward slashes."""

from __future__ import annotations

from dataclasses import dataclass

from .lam import E, T, arrow

ATOMS = ("S", "N", "NP")


class CategorySyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Atomic:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Slash:
    result: object
    direction: str      # "/" looks right, "\\" looks left
    argument: object

    def __str__(self):
        def wrap(c):
            return f"({c})" if isinstance(c, Slash) else str(c)
        return f"{wrap(self.result)}{self.direction}{wrap(self.argument)}"


Category = Atomic | Slash
S, N, NP = Atomic("S"), Atomic("N"), Atomic("NP")


def fwd(result, argument) -> Slash:
    return Slash(result, "/", argument)


def bwd(result, argument) -> Slash:
    return Slash(result, "\\", argument)


def parse_category(text: str):
    """Parse ``X/Y``, ``X\\Y`` with parentheses; slashes associate to the left."""
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()/\\":
            toks.append(ch)
            i += 1
        else:
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            if j == i:
                raise CategorySyntaxError(f"unexpected {ch!r} in {text!r}")
            toks.append(text[i:j])
            i = j
    pos = 0

    def primary():
        nonlocal pos
        if pos >= len(toks):
            raise CategorySyntaxError(f"unexpected end of {text!r}")
        tok = toks[pos]
        pos += 1
        if tok == "(":
            c = expr()
            if pos >= len(toks) or toks[pos] != ")":
                raise CategorySyntaxError(f"unbalanced parentheses in {text!r}")
            pos += 1
            return c
        if tok not in ATOMS:
            raise CategorySyntaxError(f"unknown atomic category {tok!r}")
        return Atomic(tok)

    def expr():
        nonlocal pos
        c = primary()
        while pos < len(toks) and toks[pos] in "/\\":
            d = toks[pos]
            pos += 1
            c = Slash(c, d, primary())
        return c

    out = expr()
    if pos != len(toks):
        raise CategorySyntaxError(f"trailing input in {text!r}")
    return out


def semantic_type(c):
    """S -> t, N -> e->t, NP -> (e->t)->t, X|Y -> type(Y)->type(X)."""
    if isinstance(c, Atomic):
        if c.name == "S":
            return T
        if c.name == "N":
            return arrow(E, T)
        return arrow(arrow(E, T), T)
    return arrow(semantic_type(c.argument), semantic_type(c.result))


def forward_apply(left, right):
    if isinstance(left, Slash) and left.direction == "/" and left.argument == right:
        return left.result
    return None


def backward_apply(left, right):
    if isinstance(right, Slash) and right.direction == "\\" and right.argument == left:
        return right.result
    return None
