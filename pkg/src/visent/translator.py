"""Structure -> formula compilation: simple, circumscriptive and hybrid."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .fol import (Atom, Const, Eq, Forall, Formula, Not, Polarity, Var, conj, disj,
                  iff, neq, polarity, signature)
from .structure import ENTITY, Structure


class TranslationMode(enum.Enum):
    SIMPLE = "simple"
    COMPLEX = "complex"
    HYBRID = "hybrid"


@dataclass(frozen=True)
class AxiomBundle:
    core: Formula
    unique_names: tuple = ()
    domain_closure: Formula | None = None
    mode: TranslationMode = TranslationMode.SIMPLE

    def premises(self) -> list:
        out = [self.core]
        if self.domain_closure is not None:
            out.append(self.domain_closure)
        out.extend(self.unique_names)
        return out


def translate_simple(s: Structure) -> Formula:
    facts = [Atom(ENTITY, (Const(d),)) for d in s.domain]
    facts += [Atom(p, (Const(e),)) for p, e in s.unary_facts() if p != ENTITY]
    facts += [Atom(r, (Const(a), Const(b))) for r, a, b in s.binary_facts()]
    return conj(facts)


def _closure_unary(pred: str, members) -> Formula:
    x = Var("x")
    if not members:
        return Forall("x", Not(Atom(pred, (x,))))
    return Forall("x", iff(Atom(pred, (x,)), disj(Eq(x, Const(d)) for d in members)))


def _closure_binary(rel: str, pairs) -> Formula:
    x, y = Var("x"), Var("y")
    body = Atom(rel, (x, y))
    if not pairs:
        return Forall("x", Forall("y", Not(body)))
    cases = disj(Eq(x, Const(a)) & Eq(y, Const(b)) for a, b in pairs)
    return Forall("x", Forall("y", iff(body, cases)))


def domain_closure(s: Structure) -> Formula:
    return _closure_unary(ENTITY, s.domain)


def _predicate_order(s: Structure):
    """Predicates in order of first fact, empty extensions last by name."""
    unary = list(dict.fromkeys(p for p, _ in s.unary_facts()))
    unary += sorted(p for p in s.unary if p not in unary)
    binary = list(dict.fromkeys(r for r, _, _ in s.binary_facts()))
    binary += sorted(r for r in s.binary if r not in binary)
    return [p for p in unary if p != ENTITY], binary


def translate_complex(s: Structure, extra: Mapping[str, int] | None = None,
                      include_domain: bool = True) -> Formula:
    """Closed-world translation.

    ``extra`` is a predicate -> arity table; predicates in it that the
    structure does not mention get an empty-extension axiom.
    """
    return conj(_complex_parts(s, extra, include_domain))


def _complex_parts(s, extra, include_domain):
    index = {e: i for i, e in enumerate(s.domain)}
    unary, binary = _predicate_order(s)
    parts = [_closure_unary(p, sorted(s.unary[p], key=index.get)) for p in unary]
    parts += [_closure_binary(r, sorted(s.binary[r], key=lambda pr: (index[pr[0]], index[pr[1]])))
              for r in binary]
    for p, arity in (extra or {}).items():
        if p == ENTITY or p in s.unary or p in s.binary:
            continue
        parts.append(_closure_unary(p, ()) if arity == 1 else _closure_binary(p, ()))
    if include_domain:
        parts.append(domain_closure(s))
    return parts


def unique_name_axioms(s: Structure) -> tuple:
    return tuple(neq(Const(a), Const(b)) for a, b in combinations(s.domain, 2))


def resolve_mode(mode: TranslationMode, target: Formula) -> TranslationMode:
    if mode is not TranslationMode.HYBRID:
        return mode
    return TranslationMode.SIMPLE if polarity(target) is Polarity.POSITIVE else TranslationMode.COMPLEX


def build_bundle(s: Structure, target: Formula, mode: TranslationMode = TranslationMode.HYBRID,
                 una: bool = True, include_domain: bool = True) -> AxiomBundle:
    resolved = resolve_mode(mode, target)
    names = unique_name_axioms(s) if una else ()
    if resolved is TranslationMode.SIMPLE:
        return AxiomBundle(translate_simple(s), names, None, resolved)
    parts = _complex_parts(s, signature(target), include_domain=False)
    core = conj(parts) if parts else _closure_unary(ENTITY, s.domain)
    closure = domain_closure(s) if include_domain and parts else None
    return AxiomBundle(core, names, closure, resolved)


def translate_hybrid(s: Structure, target: Formula, una: bool = True) -> AxiomBundle:
    return build_bundle(s, target, TranslationMode.HYBRID, una)
