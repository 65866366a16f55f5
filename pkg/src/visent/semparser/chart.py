"""CKY chart parsing with forward and backward application."""

from __future__ import annotations

import re
from itertools import combinations

from .. import fol
from .category import S, backward_apply, forward_apply
from .lam import (App, LBin, LEq, LNot, LPred, LQuant, LVar, Lam, Term,
                  alpha_key, normalize, to_formula)
from .lexicon import Lexicon, default_lexicon, lemma_candidates

MAX_NUMERAL = 5

_CONTRACTIONS = [
    (r"\baren't\b", "are not"), (r"\bisn't\b", "is not"), (r"\bdoesn't\b", "does not"),
    (r"\bdon't\b", "do not"), (r"\bcan't\b", "can not"), (r"\bwon't\b", "will not"),
]


class ParseError(ValueError):
    pass


class AmbiguityError(ParseError):
    def __init__(self, sentence, readings):
        lines = "\n  ".join(map(str, readings))
        super().__init__(f"{sentence!r} has {len(readings)} readings:\n  {lines}")
        self.readings = readings


def tokenize(sentence: str, lexicon: Lexicon | None = None) -> list[str]:
    """Lowercase, expand n't, drop punctuation, join multiword lexicon items with '_'.

    Only exact surface matches are joined here; inflected multiword items
    ("walking on") are found as spans by the chart.
    """
    lexicon = lexicon if lexicon is not None else default_lexicon()
    text = sentence.lower()
    for pat, rep in _CONTRACTIONS:
        text = re.sub(pat, rep, text)
    words = re.findall(r"[a-z0-9]+", text.replace("'", ""))
    keys = lexicon.multiword_keys()
    out = []
    i = 0
    while i < len(words):
        for key in keys:
            span = words[i:i + len(key)]
            if tuple(span) == key:
                out.append("_".join(span))
                i += len(key)
                break
        else:
            out.append(words[i])
            i += 1
    return out


# ---------------------------------------------------------------- numerals

def _numeral_vars(n):
    return [f"x{i}" for i in range(1, n + 1)]


def numeral_determiner(n: int) -> Term:
    """``\\P. \\Q. exists x1..xn. (P(x1) & .. & P(xn) & distinct & Q(x1) & .. & Q(xn))``."""
    if not 1 <= n <= MAX_NUMERAL:
        raise ValueError(f"numeral {n} outside the supported range 1..{MAX_NUMERAL}")
    xs = _numeral_vars(n)
    parts = [App(LVar("P"), LVar(x)) for x in xs]
    parts += [LNot(LEq(LVar(a), LVar(b))) for a, b in combinations(xs, 2)]
    parts += [App(LVar("Q"), LVar(x)) for x in xs]
    body = parts[-1]
    for p in reversed(parts[:-1]):
        body = LBin("&", p, body)
    for x in reversed(xs):
        body = LQuant("exists", x, body)
    return Lam("P", Lam("Q", body))


def numeral_semantics(n: int, noun: str) -> Term:
    """Noun phrase meaning ``\\Q. ...`` for "n <noun>s"."""
    return normalize(App(numeral_determiner(n), Lam("x", LPred(noun, (LVar("x"),)))))


# ----------------------------------------------------------- normalization

def _flatten(f: fol.Formula) -> fol.Formula:
    """Right-associate conjunctions/disjunctions and hoist existentials
    out of the conjunctive body of an enclosing existential."""
    if isinstance(f, (fol.Atom, fol.Eq)):
        return f
    if isinstance(f, fol.Not):
        return fol.Not(_flatten(f.body))
    if isinstance(f, fol.And):
        return fol.conj(_flatten(c) for c in _collect(f, fol.And))
    if isinstance(f, fol.Or):
        return fol.disj(_flatten(c) for c in _collect(f, fol.Or))
    if isinstance(f, fol.Implies):
        return fol.Implies(_flatten(f.left), _flatten(f.right))
    body = _flatten(f.body)
    if isinstance(f, fol.Forall):
        return fol.Forall(f.var, body)
    hoisted = []
    while True:
        parts = fol.conjuncts(body)
        idx = next((i for i, p in enumerate(parts) if isinstance(p, fol.Exists)), None)
        if idx is None or len(parts) == 1:
            break
        inner = parts[idx]
        hoisted.append(inner.var)
        body = fol.conj(parts[:idx] + fol.conjuncts(inner.body) + parts[idx + 1:])
    for v in reversed(hoisted):
        body = fol.Exists(v, body)
    return fol.Exists(f.var, body)


def _collect(f, kind):
    if isinstance(f, kind):
        return _collect(f.left, kind) + _collect(f.right, kind)
    return [f]


def term_to_formula(t: Term) -> fol.Formula:
    """Beta-normal proposition -> readable closed formula.

    Binders are renamed apart before existentials are hoisted so hoisting
    never captures, then renamed canonically (x, y, z, ...).
    """
    f = fol.rename_bound(to_formula(t))
    return fol.rename_bound(_flatten(f))


# ----------------------------------------------------------------- parser

class ChartItem:
    __slots__ = ("category", "semantics", "left", "right", "entry")

    def __init__(self, category, semantics, left=None, right=None, entry=None):
        self.category = category
        self.semantics = semantics
        self.left = left
        self.right = right
        self.entry = entry

    def key(self):
        return (self.category, alpha_key(self.semantics))

    def tree(self, indent=0) -> str:
        pad = "  " * indent
        head = f"{pad}{self.category}: {self.semantics}"
        if self.entry is not None:
            return f"{head}  <- {self.entry.surface}"
        return "\n".join([head, self.left.tree(indent + 1), self.right.tree(indent + 1)])


def _seed(cell, entries):
    for e in entries:
        item = ChartItem(e.category, e.semantics, entry=e)
        cell.setdefault(item.key(), item)


def chart(tokens, lexicon: Lexicon):
    n = len(tokens)
    cells = {}
    for i, tok in enumerate(tokens):
        entries = lexicon.lookup(tok)
        if not entries:
            raise ParseError(f"no lexicon entry for {tok!r}")
        cells[i, i + 1] = {}
        _seed(cells[i, i + 1], entries)
    # inflected multiword items span several tokens
    for key in lexicon.multiword_keys():
        for i in range(0, n - len(key) + 1):
            span = tokens[i:i + len(key)]
            if all(k in lemma_candidates(w) for k, w in zip(key, span)):
                _seed(cells.setdefault((i, i + len(key)), {}), lexicon.lookup("_".join(key)))
    for width in range(2, n + 1):
        for i in range(0, n - width + 1):
            j = i + width
            cell = cells.get((i, j), {})
            for k in range(i + 1, j):
                for a in cells[i, k].values():
                    for b in cells[k, j].values():
                        cat = forward_apply(a.category, b.category)
                        if cat is not None:
                            item = ChartItem(cat, normalize(App(a.semantics, b.semantics)), a, b)
                            cell.setdefault(item.key(), item)
                        cat = backward_apply(a.category, b.category)
                        if cat is not None:
                            item = ChartItem(cat, normalize(App(b.semantics, a.semantics)), a, b)
                            cell.setdefault(item.key(), item)
            cells[i, j] = cell
    return cells


def derivations(tokens, lexicon: Lexicon) -> list[ChartItem]:
    if not tokens:
        return []
    cells = chart(tokens, lexicon)
    return [it for it in cells[0, len(tokens)].values() if it.category == S]


def parse_tokens(tokens, lexicon: Lexicon | None = None) -> fol.Formula:
    lexicon = lexicon if lexicon is not None else default_lexicon()
    items = derivations(tokens, lexicon)
    sentence = " ".join(tokens)
    if not items:
        raise ParseError(f"no S derivation for {sentence!r}")
    readings = []
    for it in items:
        f = term_to_formula(it.semantics)
        if not any(fol.alpha_equivalent(f, r) for r in readings):
            readings.append(f)
    if len(readings) > 1:
        raise AmbiguityError(sentence, readings)
    f = readings[0]
    if not fol.is_closed(f):
        raise ParseError(f"{sentence!r} produced an open formula {f}")
    fol.signature(f)
    return f


def parse(sentence, lexicon: Lexicon | None = None) -> fol.Formula:
    """Sentence (string or token list) -> closed formula."""
    lexicon = lexicon if lexicon is not None else default_lexicon()
    tokens = tokenize(sentence, lexicon) if isinstance(sentence, str) else list(sentence)
    return parse_tokens(tokens, lexicon)
