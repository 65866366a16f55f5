"""Refutation prover for function-free FOL with equality.

``premises |- goal`` is decided by clausifying ``premises & -goal`` over the
finite set of constants (grounding), adding ground equality axioms and
running DPLL on the result.  Existentials that sit under universals are
Skolemized to functions whose ground instances are only generated one level
deep; a verdict produced under that cut is flagged ``exact=False``.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass, field

from .fol import (And, Atom, Eq, Exists, Forall, Formula, Implies, Not, Or, Var,
                  constants, free_vars, signature)
from .structure import Structure
from .translator import TranslationMode, build_bundle

DEFAULT_MAX_SECONDS = 10.0
DEFAULT_MAX_DECISIONS = 10 ** 7

# product size above which a disjunction gets a definitional literal
_DISTRIBUTE_LIMIT = 8


class ProverError(ValueError):
    pass


class Status(enum.Enum):
    ENTAILED = "entailed"
    NOT_ENTAILED = "not_entailed"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class Budget:
    max_decisions: int = DEFAULT_MAX_DECISIONS
    max_seconds: float = DEFAULT_MAX_SECONDS


@dataclass
class Verdict:
    status: Status
    clauses: int = 0
    atoms: int = 0
    decisions: int = 0
    elapsed: float = 0.0
    universe: tuple = ()
    exact: bool = True
    model: tuple = ()
    mode: TranslationMode | None = None

    @property
    def entailed(self) -> bool:
        return self.status is Status.ENTAILED

    def stats(self) -> dict:
        return {"clauses": self.clauses, "atoms": self.atoms, "decisions": self.decisions,
                "elapsed": self.elapsed, "universe": len(self.universe), "exact": self.exact}


# ---------------------------------------------------------------- NNF/Skolem
#
# Internal node shapes:
#   ("lit", positive, pred, terms)   pred "=" for equations
#   ("and", a, b) / ("or", a, b) / ("all", var, body)
# Terms: ("v", name) | ("c", name) | ("f", fname, args)


class _Skolemizer:
    def __init__(self, reserved, allow_functions):
        self.reserved = set(reserved)
        self.allow_functions = allow_functions
        self.counter = itertools.count(1)
        self.skolem_constants = []
        self.functions = {}
        self.var_counter = itertools.count()

    def fresh_constant(self):
        while True:
            name = f"sk{next(self.counter)}"
            if name not in self.reserved:
                self.reserved.add(name)
                return name

    def term(self, t, sub):
        if isinstance(t, Var):
            if t.name not in sub:
                raise ProverError(f"free variable {t.name!r}")
            return sub[t.name]
        return ("c", t.name)

    def run(self, f, neg, univ, sub):
        if isinstance(f, Atom):
            return ("lit", not neg, f.pred, tuple(self.term(t, sub) for t in f.args))
        if isinstance(f, Eq):
            return ("lit", not neg, "=", (self.term(f.lhs, sub), self.term(f.rhs, sub)))
        if isinstance(f, Not):
            return self.run(f.body, not neg, univ, sub)
        if isinstance(f, (And, Or)):
            op = "and" if isinstance(f, And) != neg else "or"
            return (op, self.run(f.left, neg, univ, sub), self.run(f.right, neg, univ, sub))
        if isinstance(f, Implies):
            if neg:
                return ("and", self.run(f.left, False, univ, sub), self.run(f.right, True, univ, sub))
            return ("or", self.run(f.left, True, univ, sub), self.run(f.right, False, univ, sub))
        if isinstance(f, (Forall, Exists)):
            universal = isinstance(f, Forall) != neg
            if universal:
                name = f"_v{next(self.var_counter)}"
                return ("all", name, self.run(f.body, neg, univ + (name,),
                                              {**sub, f.var: ("v", name)}))
            deps = []
            for v in free_vars(f.body) - {f.var}:
                deps.extend(_term_vars(sub[v]))
            deps = tuple(u for u in univ if u in deps)
            if not deps:
                sk = self.fresh_constant()
                self.skolem_constants.append(sk)
                witness = ("c", sk)
            else:
                if not self.allow_functions:
                    raise ProverError("existential under a universal needs a Skolem function")
                fname = f"skf{len(self.functions) + 1}"
                self.functions[fname] = len(deps)
                witness = ("f", fname, tuple(("v", u) for u in deps))
            return self.run(f.body, neg, univ, {**sub, f.var: witness})
        raise TypeError(f"not a formula: {f!r}")


def _term_vars(t):
    if t[0] == "v":
        return [t[1]]
    if t[0] == "f":
        return [v for a in t[2] for v in _term_vars(a)]
    return []


# ------------------------------------------------------------------ grounding

@dataclass
class ClauseSet:
    """Ground clauses over integer literals plus the atom table they index."""
    clauses: list
    atoms: list                      # atom text, index = variable - 1
    universe: tuple
    skolem_constants: tuple = ()
    truncated: bool = False
    aux: int = 0
    _index: dict = field(default_factory=dict, repr=False)

    def atom_text(self, lit: int) -> str:
        text = self.atoms[abs(lit) - 1]
        return text if lit > 0 else "-" + text

    def pretty(self) -> list:
        return [sorted(self.atom_text(l) for l in c) for c in self.clauses]

    def has_unit(self, text: str) -> bool:
        return any(len(c) == 1 and self.atom_text(c[0]) == text for c in self.clauses)


class _Grounder:
    def __init__(self, base, skolem_map):
        self.base = set(base)
        self.skolem_map = skolem_map
        self.index = {}
        self.atoms = []
        self.truncated = False
        self.aux = 0

    def var(self, text):
        v = self.index.get(text)
        if v is None:
            self.atoms.append(text)
            v = self.index[text] = len(self.atoms)
        return v

    def new_aux(self):
        self.aux += 1
        return self.var(f"~def{self.aux}")

    def term(self, t, env):
        kind = t[0]
        if kind == "c":
            return t[1]
        if kind == "v":
            return env[t[1]]
        args = []
        for a in t[2]:
            g = self.term(a, env)
            if g is None or g not in self.base:
                self.truncated = True
                return None
            args.append(g)
        return self.skolem_map[(t[1], tuple(args))]

    def literal(self, pred, args, positive):
        if pred == "=":
            a, b = sorted(args)
            text = f"{a}={b}"
        else:
            text = f"{pred}({','.join(args)})"
        v = self.var(text)
        return v if positive else -v

    def ground(self, node, env, universe):
        kind = node[0]
        if kind == "lit":
            args = [self.term(t, env) for t in node[3]]
            if any(a is None for a in args):
                return None
            return self.literal(node[2], args, node[1])
        if kind == "and":
            parts = [g for g in (self.ground(node[1], env, universe),
                                 self.ground(node[2], env, universe)) if g is not None]
            if not parts:
                return None
            return parts[0] if len(parts) == 1 else ("and", parts)
        if kind == "or":
            a = self.ground(node[1], env, universe)
            b = self.ground(node[2], env, universe)
            if a is None or b is None:
                return None
            return ("or", [a, b])
        # dropping an out-of-bound instance of a universal only weakens it
        parts = [g for u in universe
                 if (g := self.ground(node[2], {**env, node[1]: u}, universe)) is not None]
        if not parts:
            return None
        return parts[0] if len(parts) == 1 else ("and", parts)

    def cnf(self, g):
        if isinstance(g, int):
            return [(g,)]
        if g[0] == "and":
            return [c for part in g[1] for c in self.cnf(part)]
        acc = [()]
        for part in g[1]:
            cc = self.cnf(part)
            if len(cc) > 1 and len(acc) * len(cc) > _DISTRIBUTE_LIMIT:
                cc = self.define(cc)
            if len(acc) > 1 and len(acc) * len(cc) > _DISTRIBUTE_LIMIT:
                acc = self.define(acc)
            acc = [a + c for a in acc for c in cc]
        return acc

    def define(self, clauses):
        # one-directional definition suffices: the formula is in NNF
        d = self.new_aux()
        self.pending.extend((-d,) + c for c in clauses)
        return [(d,)]


def _equality_axioms(g: _Grounder, universe, sig):
    out = []
    for c in universe:
        out.append((g.literal("=", (c, c), True),))
    for a, b, c in itertools.combinations(universe, 3):
        for x, mid, y in ((a, b, c), (b, a, c), (a, c, b)):
            out.append((-g.literal("=", (x, mid), True), -g.literal("=", (mid, y), True),
                        g.literal("=", (x, y), True)))
    for pred, arity in sig.items():
        for a, b in itertools.combinations(universe, 2):
            eq = -g.literal("=", (a, b), True)
            if arity == 1:
                out.append((eq, -g.literal(pred, (a,), True), g.literal(pred, (b,), True)))
                out.append((eq, -g.literal(pred, (b,), True), g.literal(pred, (a,), True)))
                continue
            for c in universe:
                for x, y in ((a, b), (b, a)):
                    out.append((eq, -g.literal(pred, (x, c), True), g.literal(pred, (y, c), True)))
                    out.append((eq, -g.literal(pred, (c, x), True), g.literal(pred, (c, y), True)))
    return out


def clausify(premises, goal: Formula, allow_skolem_functions: bool = True) -> ClauseSet:
    """Ground clause set for ``premises & -goal``."""
    premises = list(premises)
    formulas = premises + [Not(goal)]
    for f in formulas:
        fv = free_vars(f)
        if fv:
            raise ProverError(f"formula has free variables {sorted(fv)}: {f}")
    sig = signature(*formulas)
    names = set().union(*(constants(f) for f in formulas))
    sk = _Skolemizer(names, allow_skolem_functions)
    nodes = [sk.run(f, False, (), {}) for f in formulas]

    base = sorted(names) + sk.skolem_constants
    if not base:
        base = [sk.fresh_constant()]
    skolem_map = {}
    for fname, arity in sk.functions.items():
        for args in itertools.product(base, repeat=arity):
            skolem_map[(fname, args)] = sk.fresh_constant()
    universe = tuple(base) + tuple(skolem_map.values())

    g = _Grounder(base, skolem_map)
    g.pending = []
    clauses = []
    for node in nodes:
        ground = g.ground(node, {}, universe)
        if ground is not None:
            clauses.extend(g.cnf(ground))
    clauses.extend(g.pending)
    clauses.extend(_equality_axioms(g, universe, sig))

    seen = set()
    unique = []
    for c in clauses:
        lits = frozenset(c)
        if any(-l in lits for l in lits) or lits in seen:
            continue
        seen.add(lits)
        unique.append(sorted(lits, key=abs))
    return ClauseSet(unique, g.atoms, universe, tuple(sk.skolem_constants),
                     g.truncated, g.aux, dict(g.index))


# ------------------------------------------------------------------- DPLL

class _BudgetTrip(Exception):
    pass


class _DPLL:
    """Chronological-backtracking DPLL with two watched literals.

    Variables are decided in the given order, false first.  Pure literals
    are fixed once at the root.
    """

    def __init__(self, nvars, clauses, order):
        self.nvars = nvars
        self.value = [0] * (nvars + 1)
        self.trail = []
        self.qhead = 0
        self.watches = {}
        self.clauses = []
        self.units = []
        self.empty = False
        self.order = order
        self.decisions = 0
        for c in clauses:
            if not c:
                self.empty = True
            elif len(c) == 1:
                self.units.append(c[0])
            else:
                c = list(c)
                idx = len(self.clauses)
                self.clauses.append(c)
                self.watches.setdefault(c[0], []).append(idx)
                self.watches.setdefault(c[1], []).append(idx)
        self.all_clauses = clauses

    def lit_value(self, lit):
        v = self.value[abs(lit)]
        return v if lit > 0 else -v

    def assign(self, lit):
        self.value[abs(lit)] = 1 if lit > 0 else -1
        self.trail.append(lit)

    def enqueue(self, lit):
        val = self.lit_value(lit)
        if val == -1:
            return False
        if val == 0:
            self.assign(lit)
        return True

    def propagate(self):
        value = self.value
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            false_lit = -p
            ws = self.watches.get(false_lit)
            if not ws:
                continue
            keep = []
            conflict = False
            for n, ci in enumerate(ws):
                if conflict:
                    keep.extend(ws[n:])
                    break
                c = self.clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                fv = value[abs(first)] if first > 0 else -value[abs(first)]
                if fv == 1:
                    keep.append(ci)
                    continue
                for k in range(2, len(c)):
                    lit = c[k]
                    lv = value[abs(lit)] if lit > 0 else -value[abs(lit)]
                    if lv != -1:
                        c[1], c[k] = lit, false_lit
                        self.watches.setdefault(lit, []).append(ci)
                        break
                else:
                    keep.append(ci)
                    if fv == -1:
                        conflict = True
                    else:
                        self.assign(first)
            self.watches[false_lit] = keep
            if conflict:
                return False
        return True

    def pure_literals(self):
        while True:
            seen = set()
            for c in self.all_clauses:
                if any(self.lit_value(l) == 1 for l in c):
                    continue
                seen.update(l for l in c if self.lit_value(l) == 0)
            pure = [l for l in seen if -l not in seen]
            if not pure:
                return True
            for l in pure:
                self.assign(l)
            if not self.propagate():
                return False

    def solve(self, max_decisions, deadline):
        if self.empty:
            return False
        for u in self.units:
            if not self.enqueue(u):
                return False
        if not self.propagate() or not self.pure_literals():
            return False
        levels = []   # (trail position, decision literal, flipped)
        cursor = 0
        while True:
            if not self.propagate():
                while True:
                    if not levels:
                        return False
                    pos, lit, flipped = levels.pop()
                    for l in self.trail[pos:]:
                        self.value[abs(l)] = 0
                    del self.trail[pos:]
                    self.qhead = pos
                    cursor = 0
                    if not flipped:
                        levels.append((pos, -lit, True))
                        self.assign(-lit)
                        break
                continue
            while cursor < len(self.order) and self.value[self.order[cursor]] != 0:
                cursor += 1
            if cursor == len(self.order):
                return True
            self.decisions += 1
            if self.decisions > max_decisions or time.monotonic() > deadline:
                raise _BudgetTrip
            var = self.order[cursor]
            levels.append((len(self.trail), -var, False))
            self.assign(-var)


def prove(premises, goal: Formula, budget: Budget | None = None,
          allow_skolem_functions: bool = True) -> Verdict:
    budget = budget or Budget()
    start = time.monotonic()
    deadline = start + budget.max_seconds
    cs = clausify(premises, goal, allow_skolem_functions)
    nvars = len(cs.atoms)
    order = sorted(range(1, nvars + 1), key=lambda v: cs.atoms[v - 1])
    base = dict(clauses=len(cs.clauses), atoms=nvars, universe=cs.universe, exact=not cs.truncated)
    if time.monotonic() > deadline:
        return Verdict(Status.BUDGET_EXCEEDED, elapsed=time.monotonic() - start, **base)
    solver = _DPLL(nvars, cs.clauses, order)
    try:
        sat = solver.solve(budget.max_decisions, deadline)
    except _BudgetTrip:
        return Verdict(Status.BUDGET_EXCEEDED, decisions=solver.decisions,
                       elapsed=time.monotonic() - start, **base)
    elapsed = time.monotonic() - start
    if not sat:
        # refutation found in a subset of instances: exact regardless of the cut
        base["exact"] = True
        return Verdict(Status.ENTAILED, decisions=solver.decisions, elapsed=elapsed, **base)
    model = tuple(sorted(cs.atoms[v - 1] for v in range(1, nvars + 1)
                         if solver.value[v] == 1 and not cs.atoms[v - 1].startswith("~")))
    return Verdict(Status.NOT_ENTAILED, decisions=solver.decisions, elapsed=elapsed,
                   model=model, **base)


def entails(s: Structure, query: Formula, mode: TranslationMode = TranslationMode.HYBRID,
            budget: Budget | None = None, una: bool = True) -> Verdict:
    free = free_vars(query)
    if free:
        raise ProverError(f"query has free variables {sorted(free)}")
    bundle = build_bundle(s, query, mode, una=una)
    verdict = prove(bundle.premises(), query, budget)
    verdict.mode = bundle.mode
    return verdict
