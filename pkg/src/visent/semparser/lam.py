"""Typed lambda terms with embedded FOL term formers.

Concrete syntax (used in lexicon files)::

    \\P. \\Q. exists x. (P(x) & Q(x))

``f(a, b)`` is curried application when ``f`` is bound by a lambda, and an
atomic predicate otherwise.  ``true`` is a unit for conjunction and is
simplified away when a term is converted to a formula.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .. import fol
from ..fol import is_constant_name


class LambdaSyntaxError(ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class LambdaTypeError(TypeError):
    pass


class Term:
    __slots__ = ()

    def __str__(self):
        return show(self)

    def __call__(self, *args):
        out = self
        for a in args:
            out = App(out, a)
        return out


@dataclass(frozen=True, repr=False)
class LVar(Term):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True, repr=False)
class LConst(Term):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True, repr=False)
class Lam(Term):
    var: str
    body: Term

    def __repr__(self):
        return show(self)


@dataclass(frozen=True, repr=False)
class App(Term):
    fn: Term
    arg: Term

    def __repr__(self):
        return show(self)


@dataclass(frozen=True, repr=False)
class LPred(Term):
    pred: str
    args: tuple

    def __repr__(self):
        return show(self)


@dataclass(frozen=True, repr=False)
class LEq(Term):
    lhs: Term
    rhs: Term

    def __repr__(self):
        return show(self)


@dataclass(frozen=True, repr=False)
class LNot(Term):
    body: Term

    def __repr__(self):
        return show(self)


@dataclass(frozen=True, repr=False)
class LBin(Term):
    op: str             # "&", "|" or "->"
    left: Term
    right: Term

    def __repr__(self):
        return show(self)


@dataclass(frozen=True, repr=False)
class LQuant(Term):
    q: str              # "forall" or "exists"
    var: str
    body: Term

    def __repr__(self):
        return show(self)


@dataclass(frozen=True, repr=False)
class LTrue(Term):
    def __repr__(self):
        return "true"


TRUE = LTrue()
_BINDERS = (Lam, LQuant)


def children(t: Term) -> tuple:
    if isinstance(t, (LVar, LConst, LTrue)):
        return ()
    if isinstance(t, _BINDERS):
        return (t.body,)
    if isinstance(t, App):
        return (t.fn, t.arg)
    if isinstance(t, LPred):
        return t.args
    if isinstance(t, LEq):
        return (t.lhs, t.rhs)
    if isinstance(t, LNot):
        return (t.body,)
    if isinstance(t, LBin):
        return (t.left, t.right)
    raise TypeError(f"not a lambda term: {t!r}")


def rebuild(t: Term, kids) -> Term:
    if isinstance(t, Lam):
        return Lam(t.var, kids[0])
    if isinstance(t, LQuant):
        return LQuant(t.q, t.var, kids[0])
    if isinstance(t, App):
        return App(*kids)
    if isinstance(t, LPred):
        return LPred(t.pred, tuple(kids))
    if isinstance(t, LEq):
        return LEq(*kids)
    if isinstance(t, LNot):
        return LNot(kids[0])
    if isinstance(t, LBin):
        return LBin(t.op, *kids)
    return t


def free_vars(t: Term) -> frozenset:
    if isinstance(t, LVar):
        return frozenset([t.name])
    if isinstance(t, _BINDERS):
        return free_vars(t.body) - {t.var}
    out = frozenset()
    for c in children(t):
        out |= free_vars(c)
    return out


def _fresh(base: str, avoid) -> str:
    name = base.rstrip("'") + "'"
    while name in avoid:
        name += "'"
    return name


def subst(t: Term, var: str, value: Term) -> Term:
    """Capture-avoiding ``t[var := value]``."""
    if isinstance(t, LVar):
        return value if t.name == var else t
    if isinstance(t, _BINDERS):
        if t.var == var or var not in free_vars(t.body):
            return t
        fv = free_vars(value)
        if t.var in fv:
            new = _fresh(t.var, fv | free_vars(t.body) | {var})
            body = subst(subst(t.body, t.var, LVar(new)), var, value)
            return Lam(new, body) if isinstance(t, Lam) else LQuant(t.q, new, body)
        return rebuild(t, [subst(t.body, var, value)])
    kids = children(t)
    if not kids:
        return t
    return rebuild(t, [subst(c, var, value) for c in kids])


# ------------------------------------------------------------ reduction

def reduce_step(t: Term):
    """One leftmost-outermost beta step, or None if ``t`` is normal."""
    if isinstance(t, App) and isinstance(t.fn, Lam):
        return subst(t.fn.body, t.fn.var, t.arg)
    kids = children(t)
    for i, c in enumerate(kids):
        r = reduce_step(c)
        if r is not None:
            new = list(kids)
            new[i] = r
            return rebuild(t, new)
    return None


def normalize(t: Term, strategy: str = "applicative", max_steps: int = 100_000) -> Term:
    """Beta-normal form.  ``strategy`` is "normal" (leftmost-outermost) or "applicative"."""
    if strategy == "normal":
        for _ in range(max_steps):
            r = reduce_step(t)
            if r is None:
                return t
            t = r
        raise RuntimeError("beta-normalization did not terminate within the step limit")
    if strategy != "applicative":
        raise ValueError(f"unknown strategy {strategy!r}")
    return _nf(t)


def _nf(t: Term) -> Term:
    if isinstance(t, App):
        fn = _nf(t.fn)
        arg = _nf(t.arg)
        if isinstance(fn, Lam):
            return _nf(subst(fn.body, fn.var, arg))
        return App(fn, arg)
    kids = children(t)
    if not kids:
        return t
    return rebuild(t, [_nf(c) for c in kids])


def alpha_key(t: Term, env=None, depth=0) -> str:
    """A string equal for exactly the alpha-equivalent terms."""
    env = env or {}
    if isinstance(t, LVar):
        return f"#{depth - env[t.name]}" if t.name in env else t.name
    if isinstance(t, LConst):
        return t.name
    if isinstance(t, LTrue):
        return "true"
    if isinstance(t, Lam):
        return f"(\\.{alpha_key(t.body, {**env, t.var: depth + 1}, depth + 1)})"
    if isinstance(t, LQuant):
        return f"({t.q}.{alpha_key(t.body, {**env, t.var: depth + 1}, depth + 1)})"
    if isinstance(t, App):
        return f"@({alpha_key(t.fn, env, depth)},{alpha_key(t.arg, env, depth)})"
    if isinstance(t, LPred):
        return f"{t.pred}[{','.join(alpha_key(a, env, depth) for a in t.args)}]"
    if isinstance(t, LEq):
        return f"=({alpha_key(t.lhs, env, depth)},{alpha_key(t.rhs, env, depth)})"
    if isinstance(t, LNot):
        return f"-({alpha_key(t.body, env, depth)})"
    return f"{t.op}({alpha_key(t.left, env, depth)},{alpha_key(t.right, env, depth)})"


def alpha_equivalent(a: Term, b: Term) -> bool:
    return alpha_key(a) == alpha_key(b)


# ---------------------------------------------------------------- types
#
# Types: "e", "t", ("->", dom, cod) or TVar.

@dataclass(frozen=True)
class TVar:
    n: int


E, T = "e", "t"


def arrow(a, b):
    return ("->", a, b)


def show_type(ty) -> str:
    if isinstance(ty, TVar):
        return f"'a{ty.n}"
    if isinstance(ty, str):
        return ty
    dom = show_type(ty[1])
    if isinstance(ty[1], tuple):
        dom = f"({dom})"
    return f"{dom}->{show_type(ty[2])}"


class _Unifier:
    def __init__(self):
        self.subst = {}
        self.counter = itertools.count()

    def fresh(self):
        return TVar(next(self.counter))

    def find(self, ty):
        while isinstance(ty, TVar) and ty in self.subst:
            ty = self.subst[ty]
        return ty

    def resolve(self, ty):
        ty = self.find(ty)
        if isinstance(ty, tuple):
            return arrow(self.resolve(ty[1]), self.resolve(ty[2]))
        return ty

    def occurs(self, v, ty):
        ty = self.find(ty)
        if ty == v:
            return True
        return isinstance(ty, tuple) and (self.occurs(v, ty[1]) or self.occurs(v, ty[2]))

    def unify(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if isinstance(a, TVar):
            if self.occurs(a, b):
                raise LambdaTypeError("infinite type")
            self.subst[a] = b
            return
        if isinstance(b, TVar):
            self.unify(b, a)
            return
        if isinstance(a, tuple) and isinstance(b, tuple):
            self.unify(a[1], b[1])
            self.unify(a[2], b[2])
            return
        raise LambdaTypeError(f"cannot unify {show_type(a)} with {show_type(b)}")


def infer_type(t: Term, expected=None):
    """Principal simple type of ``t`` (type variables for unconstrained parts)."""
    u = _Unifier()
    env = {}

    def go(t, env):
        if isinstance(t, LVar):
            if t.name not in env:
                env[t.name] = u.fresh()
            return env[t.name]
        if isinstance(t, LConst):
            return E
        if isinstance(t, LTrue):
            return T
        if isinstance(t, Lam):
            a = u.fresh()
            body = go(t.body, {**env, t.var: a})
            return arrow(a, body)
        if isinstance(t, App):
            f = go(t.fn, env)
            a = go(t.arg, env)
            r = u.fresh()
            u.unify(f, arrow(a, r))
            return r
        if isinstance(t, LPred):
            for arg in t.args:
                u.unify(go(arg, env), E)
            return T
        if isinstance(t, LEq):
            u.unify(go(t.lhs, env), E)
            u.unify(go(t.rhs, env), E)
            return T
        if isinstance(t, LNot):
            u.unify(go(t.body, env), T)
            return T
        if isinstance(t, LBin):
            u.unify(go(t.left, env), T)
            u.unify(go(t.right, env), T)
            return T
        if isinstance(t, LQuant):
            u.unify(go(t.body, {**env, t.var: E}), T)
            return T
        raise TypeError(f"not a lambda term: {t!r}")

    ty = go(t, env)
    if expected is not None:
        u.unify(ty, expected)
    return u.resolve(ty)


def check_type(t: Term, expected) -> None:
    infer_type(t, expected)


# ------------------------------------------------------------ formulas

def to_formula(t: Term) -> fol.Formula:
    """Convert a beta-normal proposition to a Formula, dropping ``true`` units."""
    out = _to_formula(t)
    if out is True:
        raise LambdaTypeError("term reduces to a bare 'true'")
    return out


def _fterm(t):
    if isinstance(t, LVar):
        return fol.make_term(t.name)
    if isinstance(t, LConst):
        return fol.Const(t.name)
    raise LambdaTypeError(f"not an individual term: {show(t)}")


def _to_formula(t):
    if isinstance(t, LTrue):
        return True
    if isinstance(t, LPred):
        return fol.Atom(t.pred, tuple(_fterm(a) for a in t.args))
    if isinstance(t, LEq):
        return fol.Eq(_fterm(t.lhs), _fterm(t.rhs))
    if isinstance(t, LNot):
        body = _to_formula(t.body)
        if body is True:
            raise LambdaTypeError("negation of 'true' is outside the formula language")
        return fol.Not(body)
    if isinstance(t, LBin):
        a, b = _to_formula(t.left), _to_formula(t.right)
        if t.op == "&":
            if a is True:
                return b
            if b is True:
                return a
            return fol.And(a, b)
        if t.op == "|":
            if a is True or b is True:
                return True
            return fol.Or(a, b)
        if b is True:
            return True
        if a is True:
            return b
        return fol.Implies(a, b)
    if isinstance(t, LQuant):
        body = _to_formula(t.body)
        if body is True:
            return True
        return (fol.Exists if t.q == "exists" else fol.Forall)(t.var, body)
    raise LambdaTypeError(f"not a proposition in normal form: {show(t)}")


def from_formula(f: fol.Formula) -> Term:
    if isinstance(f, fol.Atom):
        return LPred(f.pred, tuple(_from_term(a) for a in f.args))
    if isinstance(f, fol.Eq):
        return LEq(_from_term(f.lhs), _from_term(f.rhs))
    if isinstance(f, fol.Not):
        return LNot(from_formula(f.body))
    if isinstance(f, fol.Binary):
        op = {fol.And: "&", fol.Or: "|", fol.Implies: "->"}[type(f)]
        return LBin(op, from_formula(f.left), from_formula(f.right))
    q = "exists" if isinstance(f, fol.Exists) else "forall"
    return LQuant(q, f.var, from_formula(f.body))


def _from_term(t):
    return LConst(t.name) if isinstance(t, fol.Const) else LVar(t.name)


# --------------------------------------------------------------- syntax

_TOKEN_RE = re.compile(r"\s+|(?P<tok>[A-Za-z_][A-Za-z0-9_']*|->|!=|[\\()&|\-=.,])")


def _lex(text):
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise LambdaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.group("tok"):
            out.append((m.group("tok"), pos))
        pos = m.end()
    out.append(("<eof>", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _lex(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def error(self, msg):
        raise LambdaSyntaxError(msg, self.toks[self.i][1])

    def take(self, expected=None):
        tok = self.peek()
        if expected is not None and tok != expected:
            self.error(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def ident(self):
        tok = self.peek()
        if not (tok[0].isalpha() or tok[0] == "_") or tok in ("exists", "forall", "true"):
            self.error(f"expected identifier, found {tok!r}")
        return self.take()

    def binder_name(self):
        name = self.ident()
        if is_constant_name(name):
            self.error(f"cannot bind constant name {name!r}")
        return name

    def term(self, bound):
        if self.peek() == "\\":
            self.take()
            v = self.binder_name()
            self.take(".")
            return Lam(v, self.term(bound | {v}))
        return self.imp(bound)

    def imp(self, bound):
        left = self.disj(bound)
        if self.peek() == "->":
            self.take()
            return LBin("->", left, self.imp(bound))
        return left

    def disj(self, bound):
        left = self.conj(bound)
        if self.peek() == "|":
            self.take()
            return LBin("|", left, self.disj(bound))
        return left

    def conj(self, bound):
        left = self.unary(bound)
        if self.peek() == "&":
            self.take()
            return LBin("&", left, self.conj(bound))
        return left

    def unary(self, bound):
        tok = self.peek()
        if tok == "-":
            self.take()
            return LNot(self.unary(bound))
        if tok in ("exists", "forall"):
            self.take()
            v = self.binder_name()
            self.take(".")
            return LQuant(tok, v, self.term(bound | {v}))
        if tok == "\\":
            return self.term(bound)
        left = self.postfix(bound)
        if self.peek() in ("=", "!="):
            op = self.take()
            eq = LEq(left, self.postfix(bound))
            return eq if op == "=" else LNot(eq)
        return left

    def args(self, bound):
        self.take("(")
        out = [self.term(bound)]
        while self.peek() == ",":
            self.take()
            out.append(self.term(bound))
        self.take(")")
        return out

    def postfix(self, bound):
        tok = self.peek()
        if tok == "(":
            self.take()
            head = self.term(bound)
            self.take(")")
        elif tok == "true":
            self.take()
            return TRUE
        else:
            name = self.ident()
            if self.peek() == "(" and name not in bound:
                args = self.args(bound)
                if len(args) > 2:
                    self.error(f"predicate {name!r} takes at most two arguments")
                return LPred(name, tuple(args))
            head = LConst(name) if is_constant_name(name) else LVar(name)
        while self.peek() == "(":
            for a in self.args(bound):
                head = App(head, a)
        return head


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term(frozenset())
    if p.peek() != "<eof>":
        p.error(f"trailing input {p.peek()!r}")
    return t


_PREC = {"->": 1, "|": 2, "&": 3}


def _level(t):
    if isinstance(t, (Lam, LQuant)):
        return 0
    if isinstance(t, LBin):
        return _PREC[t.op]
    if isinstance(t, LNot) and not isinstance(t.body, LEq):
        return 4
    return 5


def show(t: Term) -> str:
    if isinstance(t, (LVar, LConst)):
        return t.name
    if isinstance(t, LTrue):
        return "true"
    if isinstance(t, Lam):
        return f"\\{t.var}. {show(t.body)}"
    if isinstance(t, LQuant):
        body = show(t.body)
        if isinstance(t.body, LBin):
            body = f"({body})"
        return f"{t.q} {t.var}. {body}"
    if isinstance(t, App):
        fn, args = t, []
        while isinstance(fn, App):
            args.append(fn.arg)
            fn = fn.fn
        head = show(fn)
        if not isinstance(fn, LVar):
            head = f"({head})"
        return f"{head}({', '.join(show(a) for a in reversed(args))})"
    if isinstance(t, LPred):
        return f"{t.pred}({','.join(show(a) for a in t.args)})"
    if isinstance(t, LEq):
        return f"{show(t.lhs)} = {show(t.rhs)}"
    if isinstance(t, LNot):
        if isinstance(t.body, LEq):
            return f"{show(t.body.lhs)} != {show(t.body.rhs)}"
        inner = show(t.body)
        return "-" + (inner if _level(t.body) >= 4 else f"({inner})")
    lv = _PREC[t.op]
    left, right = show(t.left), show(t.right)
    if _level(t.left) <= lv:
        left = f"({left})"
    if _level(t.right) < lv or _level(t.right) == 0:
        right = f"({right})"
    return f"{left} {t.op} {right}"
