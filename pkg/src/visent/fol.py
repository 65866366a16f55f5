"""First-order logic with equality: terms, formulas, syntax and polarity.

The language is function-free.  Names matching ``d<digits>`` or
``sk<digits>`` are constants, everything else is a variable.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

CONSTANT_RE = re.compile(r"(?:d|sk)\d+\Z")


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ArityError(ValueError):
    pass


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


Term = Union[Var, Const]


def is_constant_name(name: str) -> bool:
    return bool(CONSTANT_RE.match(name))


def make_term(name: str) -> Term:
    if not name:
        raise ValueError("empty term name")
    return Const(name) if is_constant_name(name) else Var(name)


# ------------------------------------------------------------- formulas

class Formula:
    __slots__ = ()

    def __str__(self):
        return print_formula(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    pred: str
    args: tuple

    def __post_init__(self):
        if len(self.args) not in (1, 2):
            raise ArityError(f"{self.pred}: predicates take 1 or 2 arguments")
        object.__setattr__(
            self, "args",
            tuple(a if isinstance(a, (Var, Const)) else make_term(a) for a in self.args))

    def __repr__(self):
        return f"Atom({self.pred!r}, {', '.join(map(str, self.args))})"


@dataclass(frozen=True, repr=False)
class Eq(Formula):
    lhs: Term
    rhs: Term

    def __post_init__(self):
        for side in ("lhs", "rhs"):
            t = getattr(self, side)
            if isinstance(t, str):
                object.__setattr__(self, side, make_term(t))

    def __repr__(self):
        return f"Eq({self.lhs}, {self.rhs})"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    body: Formula

    def __repr__(self):
        return f"Not({self.body!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Implies({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Forall(Formula):
    var: str
    body: Formula

    def __repr__(self):
        return f"Forall({self.var}, {self.body!r})"


@dataclass(frozen=True, repr=False)
class Exists(Formula):
    var: str
    body: Formula

    def __repr__(self):
        return f"Exists({self.var}, {self.body!r})"


Binary = (And, Or, Implies)
Quantifier = (Forall, Exists)


def atom(pred: str, *args) -> Atom:
    return Atom(pred, tuple(args))


def neq(a, b) -> Not:
    return Not(Eq(a, b))


def conj(formulas: Iterable[Formula]) -> Formula:
    """Right-nested conjunction; raises on an empty sequence."""
    fs = list(formulas)
    if not fs:
        raise ValueError("empty conjunction")
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def disj(formulas: Iterable[Formula]) -> Formula:
    fs = list(formulas)
    if not fs:
        raise ValueError("empty disjunction")
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


def iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


def conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, Binary):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, Quantifier):
        yield from subformulas(f.body)


# ---------------------------------------------------------- inspection

def free_vars(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {t.name for t in f.args if isinstance(t, Var)}
    if isinstance(f, Eq):
        return {t.name for t in (f.lhs, f.rhs) if isinstance(t, Var)}
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, Binary):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Quantifier):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def is_closed(f: Formula) -> bool:
    return not free_vars(f)


def constants(f: Formula) -> set[str]:
    out = set()
    for g in subformulas(f):
        if isinstance(g, Atom):
            out.update(t.name for t in g.args if isinstance(t, Const))
        elif isinstance(g, Eq):
            out.update(t.name for t in (g.lhs, g.rhs) if isinstance(t, Const))
    return out


def signature(*formulas: Formula, table: dict | None = None) -> dict[str, int]:
    """Predicate name -> arity, built in order of first use.

    A predicate used with two different arities raises ArityError.
    """
    table = {} if table is None else table
    for f in formulas:
        for g in subformulas(f):
            if isinstance(g, Atom):
                known = table.setdefault(g.pred, len(g.args))
                if known != len(g.args):
                    raise ArityError(
                        f"predicate {g.pred!r} used with arity {known} and {len(g.args)}")
    return table


def _bound_names(f: Formula) -> set[str]:
    return {g.var for g in subformulas(f) if isinstance(g, Quantifier)}


def fresh_name(base: str, avoid: set[str]) -> str:
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


# -------------------------------------------------------- substitution

def substitute(f: Formula, var: str, t: Term) -> Formula:
    """Replace free occurrences of ``var`` by ``t``, renaming binders that would capture ``t``."""
    if isinstance(t, str):
        t = make_term(t)

    def sub_term(u):
        return t if isinstance(u, Var) and u.name == var else u

    if isinstance(f, Atom):
        return Atom(f.pred, tuple(sub_term(a) for a in f.args))
    if isinstance(f, Eq):
        return Eq(sub_term(f.lhs), sub_term(f.rhs))
    if isinstance(f, Not):
        return Not(substitute(f.body, var, t))
    if isinstance(f, Binary):
        return type(f)(substitute(f.left, var, t), substitute(f.right, var, t))
    if isinstance(f, Quantifier):
        if f.var == var:
            return f
        if var not in free_vars(f.body):
            return f
        if isinstance(t, Var) and t.name == f.var:
            new = fresh_name(f.var, free_vars(f.body) | {t.name, var})
            body = substitute(f.body, f.var, Var(new))
            return type(f)(new, substitute(body, var, t))
        return type(f)(f.var, substitute(f.body, var, t))
    raise TypeError(f"not a formula: {f!r}")


def alpha_equivalent(f: Formula, g: Formula) -> bool:
    def term_eq(a, b, env_f, env_g):
        if isinstance(a, Const) or isinstance(b, Const):
            return a == b
        ia, ib = env_f.get(a.name), env_g.get(b.name)
        if ia is None and ib is None:
            return a.name == b.name
        return ia == ib

    def go(f, g, env_f, env_g, depth):
        if type(f) is not type(g):
            return False
        if isinstance(f, Atom):
            return (f.pred == g.pred and len(f.args) == len(g.args)
                    and all(term_eq(a, b, env_f, env_g) for a, b in zip(f.args, g.args)))
        if isinstance(f, Eq):
            return (term_eq(f.lhs, g.lhs, env_f, env_g)
                    and term_eq(f.rhs, g.rhs, env_f, env_g))
        if isinstance(f, Not):
            return go(f.body, g.body, env_f, env_g, depth)
        if isinstance(f, Binary):
            return (go(f.left, g.left, env_f, env_g, depth)
                    and go(f.right, g.right, env_f, env_g, depth))
        return go(f.body, g.body, {**env_f, f.var: depth}, {**env_g, g.var: depth}, depth + 1)

    return go(f, g, {}, {}, 0)


_CANON = ["x", "y", "z", "u", "v", "w"]


def canonical_names():
    yield from _CANON
    i = 1
    while True:
        for base in _CANON:
            yield f"{base}{i}"
        i += 1


def rename_bound(f: Formula) -> Formula:
    """Give every binder a distinct readable name (x, y, z, u, ...) in preorder."""
    names = canonical_names()
    taken = free_vars(f)

    def next_name():
        for n in names:
            if n not in taken:
                return n

    def go(f, env):
        if isinstance(f, Atom):
            return Atom(f.pred, tuple(Var(env.get(a.name, a.name)) if isinstance(a, Var) else a
                                      for a in f.args))
        if isinstance(f, Eq):
            l, r = (Var(env.get(t.name, t.name)) if isinstance(t, Var) else t
                    for t in (f.lhs, f.rhs))
            return Eq(l, r)
        if isinstance(f, Not):
            return Not(go(f.body, env))
        if isinstance(f, Binary):
            return type(f)(go(f.left, env), go(f.right, env))
        new = next_name()
        return type(f)(new, go(f.body, {**env, f.var: new}))

    return go(f, {})


# ------------------------------------------------------------- polarity

class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


P, N = Polarity.POSITIVE, Polarity.NEGATIVE


def push_negation(f: Formula) -> Formula:
    """One De Morgan / quantifier-duality step applied to the body of ``Not``."""
    if isinstance(f, Not):
        return f.body
    if isinstance(f, And):
        return Or(Not(f.left), Not(f.right))
    if isinstance(f, Or):
        return And(Not(f.left), Not(f.right))
    if isinstance(f, Implies):
        return And(f.left, Not(f.right))
    if isinstance(f, Forall):
        return Exists(f.var, Not(f.body))
    if isinstance(f, Exists):
        return Forall(f.var, Not(f.body))
    raise TypeError(f"cannot push negation into {f!r}")


def polarity(f: Formula) -> Polarity:
    """Classify a formula as positive or negative.

    Atoms are positive and negated atoms negative; an equation is positive
    with or without negation.  Conjunctions and disjunctions are positive
    only if both sides are.  ``A -> B`` is positive only if ``A`` is negative
    and ``B`` positive.  Quantifiers inherit the polarity of their body.
    Negation over a compound formula is pushed one step inward first.
    """
    if isinstance(f, (Atom, Eq)):
        return P
    if isinstance(f, Not):
        if isinstance(f.body, Atom):
            return N
        if isinstance(f.body, Eq):
            return P
        return polarity(push_negation(f.body))
    if isinstance(f, (And, Or)):
        return P if polarity(f.left) is P and polarity(f.right) is P else N
    if isinstance(f, Implies):
        return P if polarity(f.left) is N and polarity(f.right) is P else N
    if isinstance(f, Quantifier):
        return polarity(f.body)
    raise TypeError(f"not a formula: {f!r}")


# --------------------------------------------------------------- syntax

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>->|!=|[()&|\-=.,])
""", re.VERBOSE)


def _lex(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        if not m.group("ws"):
            out.append((m.group(), pos))
        pos = m.end()
    out.append(("<eof>", len(text)))
    return out


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def error(self, msg):
        raise FormulaSyntaxError(msg, _byte_offset(self.text, self.toks[self.i][1]))

    def take(self, expected=None):
        tok = self.peek()
        if expected is not None and tok != expected:
            self.error(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def ident(self):
        tok = self.peek()
        if not (tok[0].isalpha() or tok[0] == "_") or tok in ("exists", "forall"):
            self.error(f"expected identifier, found {tok!r}")
        return self.take()

    def formula(self):
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def disjunction(self):
        left = self.conjunction()
        if self.peek() == "|":
            self.take()
            return Or(left, self.disjunction())
        return left

    def conjunction(self):
        left = self.unary()
        if self.peek() == "&":
            self.take()
            return And(left, self.conjunction())
        return left

    def unary(self):
        tok = self.peek()
        if tok == "-":
            self.take()
            return Not(self.unary())
        if tok in ("exists", "forall"):
            self.take()
            var = self.ident()
            if is_constant_name(var):
                self.error(f"cannot quantify over constant {var!r}")
            self.take(".")
            body = self.formula()
            return (Exists if tok == "exists" else Forall)(var, body)
        return self.primary()

    def primary(self):
        if self.peek() == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        name = self.ident()
        if self.peek() == "(":
            self.take()
            args = [make_term(self.ident())]
            while self.peek() == ",":
                self.take()
                args.append(make_term(self.ident()))
            self.take(")")
            if len(args) > 2:
                self.error(f"predicate {name!r} has more than two arguments")
            return Atom(name, tuple(args))
        op = self.peek()
        if op not in ("=", "!="):
            self.error(f"expected '(', '=' or '!=' after {name!r}, found {op!r}")
        self.take()
        eq = Eq(make_term(name), make_term(self.ident()))
        return eq if op == "=" else Not(eq)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.peek() != "<eof>":
        p.error(f"trailing input {p.peek()!r}")
    signature(f)
    return f


_LEVEL = {Implies: 1, Or: 2, And: 3}
_OPS = {Implies: "->", Or: "|", And: "&"}


def _level(f):
    if isinstance(f, Quantifier):
        return 0
    if isinstance(f, Binary):
        return _LEVEL[type(f)]
    if isinstance(f, Not) and not isinstance(f.body, Eq):
        return 4
    return 5


def print_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f"{f.pred}({','.join(t.name for t in f.args)})"
    if isinstance(f, Eq):
        return f"{f.lhs} = {f.rhs}"
    if isinstance(f, Not):
        if isinstance(f.body, Eq):
            return f"{f.body.lhs} != {f.body.rhs}"
        inner = print_formula(f.body)
        return "-" + (inner if _level(f.body) >= 4 else f"({inner})")
    if isinstance(f, Binary):
        lv = _LEVEL[type(f)]
        left, right = print_formula(f.left), print_formula(f.right)
        if _level(f.left) <= lv:
            left = f"({left})"
        if _level(f.right) < lv or isinstance(f.right, Quantifier):
            right = f"({right})"
        return f"{left} {_OPS[type(f)]} {right}"
    if isinstance(f, Quantifier):
        kw = "exists" if isinstance(f, Exists) else "forall"
        body = print_formula(f.body)
        if isinstance(f.body, Binary):
            body = f"({body})"
        return f"{kw} {f.var}. {body}"
    raise TypeError(f"not a formula: {f!r}")
