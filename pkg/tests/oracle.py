"""Independent reference implementations used as test oracles.

Formulas are compiled to Python source and evaluated with ``eval``, so
nothing here shares code with the library's evaluator or prover.
"""

from itertools import product

from visent.fol import And, Atom, Const, Eq, Exists, Forall, Implies, Not, Or, Var


def _py(name):
    return "v_" + name.replace("'", "_q")


def _term(t):
    return _py(t.name) if isinstance(t, Var) else f"C[{t.name!r}]"


def source(f):
    if isinstance(f, Atom):
        args = [_term(t) for t in f.args]
        if len(args) == 1:
            return f"({args[0]} in I1({f.pred!r}))"
        return f"(({args[0]}, {args[1]}) in I2({f.pred!r}))"
    if isinstance(f, Eq):
        return f"({_term(f.lhs)} == {_term(f.rhs)})"
    if isinstance(f, Not):
        return f"(not {source(f.body)})"
    if isinstance(f, And):
        return f"({source(f.left)} and {source(f.right)})"
    if isinstance(f, Or):
        return f"({source(f.left)} or {source(f.right)})"
    if isinstance(f, Implies):
        return f"((not {source(f.left)}) or {source(f.right)})"
    if isinstance(f, Forall):
        return f"all({source(f.body)} for {_py(f.var)} in D)"
    if isinstance(f, Exists):
        return f"any({source(f.body)} for {_py(f.var)} in D)"
    raise TypeError(f)


def compile_formula(f):
    """Closed formula -> python function of (D, I1, I2, C)."""
    return eval(f"lambda D, I1, I2, C: {source(f)}")


def brute_satisfies(s, f) -> bool:
    ext1 = {p: set(es) for p, es in s.unary.items()}
    ext1["entity"] = set(s.domain)
    ext2 = {r: set(ps) for r, ps in s.binary.items()}
    consts = {e: e for e in s.domain}
    return compile_formula(f)(list(s.domain), lambda p: ext1.get(p, ()),
                              lambda r: ext2.get(r, ()), consts)


# ------------------------------------------------------- model enumeration

def herbrand_bound(formulas) -> int:
    """Constants plus existentials that Skolemize to constants.

    Returns -1 when some existential sits under a universal (a Skolem
    function would be needed).  Each item is (formula, positive?).
    """
    names = set()
    count = 0

    def walk(f, pos, under_forall):
        nonlocal count
        if isinstance(f, (Atom, Eq)):
            for t in (f.args if isinstance(f, Atom) else (f.lhs, f.rhs)):
                if isinstance(t, Const):
                    names.add(t.name)
            return True
        if isinstance(f, Not):
            return walk(f.body, not pos, under_forall)
        if isinstance(f, (And, Or)):
            return walk(f.left, pos, under_forall) and walk(f.right, pos, under_forall)
        if isinstance(f, Implies):
            return walk(f.left, not pos, under_forall) and walk(f.right, pos, under_forall)
        existential = isinstance(f, Exists) == pos
        if existential:
            if under_forall:
                return False
            count += 1
            return walk(f.body, pos, under_forall)
        return walk(f.body, pos, True)

    for f, pos in formulas:
        if not walk(f, pos, False):
            return -1
    return max(1, len(names) + count)


def signature_of(formulas):
    preds = {}
    consts = set()

    def walk(f):
        if isinstance(f, Atom):
            preds[f.pred] = len(f.args)
        if isinstance(f, (Atom, Eq)):
            for t in (f.args if isinstance(f, Atom) else (f.lhs, f.rhs)):
                if isinstance(t, Const):
                    consts.add(t.name)
            return
        for part in (getattr(f, "body", None), getattr(f, "left", None), getattr(f, "right", None)):
            if part is not None:
                walk(part)

    for f in formulas:
        walk(f)
    return preds, sorted(consts)


def _subsets(items):
    for bits in product((False, True), repeat=len(items)):
        yield frozenset(x for x, b in zip(items, bits) if b)


def countermodel(premises, goal, max_size):
    """Search all structures with 1..max_size elements for a model of the
    premises that falsifies the goal.  Returns the first one found or None."""
    preds, consts = signature_of([*premises, goal])
    checks = [compile_formula(p) for p in premises]
    target = compile_formula(goal)
    unary = sorted(p for p, a in preds.items() if a == 1)
    binary = sorted(p for p, a in preds.items() if a == 2)
    for m in range(1, max_size + 1):
        dom = list(range(m))
        pairs = [(a, b) for a in dom for b in dom]
        for cvals in product(dom, repeat=len(consts)):
            # constants name a prefix-closed set of elements; others are symmetric
            seen = -1
            canonical = True
            for v in cvals:
                if v > seen + 1:
                    canonical = False
                    break
                seen = max(seen, v)
            if not canonical:
                continue
            C = dict(zip(consts, cvals))
            for uext in product(*[list(_subsets(dom)) for _ in unary]):
                U = dict(zip(unary, uext))
                for bext in product(*[list(_subsets(pairs)) for _ in binary]):
                    B = dict(zip(binary, bext))
                    args = (dom, lambda p: U.get(p, ()), lambda r: B.get(r, ()), C)
                    if all(c(*args) for c in checks) and not target(*args):
                        return m, C, U, B
    return None


# ------------------------------------------------------ random instances

_VARS = ["x", "y", "z"]
_CONSTS = ["d1", "d2"]


def random_formula(rng, depth, bound=()):
    """Closed-by-construction random formula over p, q (unary), r (binary), d1, d2."""
    if depth == 0 or rng.random() < 0.25:
        def term():
            if bound and rng.random() < 0.75:
                return Var(rng.choice(bound))
            return Const(rng.choice(_CONSTS))
        kind = rng.random()
        if kind < 0.65:
            return Atom(rng.choice(["p", "q"]), (term(),))
        if kind < 0.85:
            return Atom("r", (term(), term()))
        return Eq(term(), term())
    op = rng.choice(["not", "and", "or", "implies", "forall", "exists", "exists"])
    if op == "not":
        return Not(random_formula(rng, depth - 1, bound))
    if op in ("forall", "exists"):
        v = rng.choice(_VARS)
        body = random_formula(rng, depth - 1, tuple(dict.fromkeys((*bound, v))))
        return (Forall if op == "forall" else Exists)(v, body)
    left = random_formula(rng, depth - 1, bound)
    right = random_formula(rng, depth - 1, bound)
    return {"and": And, "or": Or, "implies": Implies}[op](left, right)


def random_instance(rng, max_universe=4, max_universe_binary=3):
    """Premises and goal whose refutation needs only Skolem constants."""
    while True:
        premises = [random_formula(rng, 3) for _ in range(rng.randint(1, 2))]
        goal = random_formula(rng, 3)
        roll = rng.random()
        if roll < 0.2:
            goal = Or(premises[0], goal)
        elif roll < 0.35:
            goal = Implies(goal, premises[-1])
        elif roll < 0.45 and isinstance(premises[0], And):
            goal = premises[0].left
        bound = herbrand_bound([(p, True) for p in premises] + [(goal, False)])
        if bound < 0:
            continue
        preds, _ = signature_of([*premises, goal])
        limit = max_universe_binary if "r" in preds else max_universe
        if bound <= limit:
            return premises, goal, bound
