"""Extending a structure with facts read off caption formulas.

Only existential-conjunctive captions are used.  A caption variable is
bound to an existing entity when its noun/attribute predicates that the
structure already knows pick out exactly one entity; it gets a fresh entity
when they pick out none.  Any ambiguity skips the whole caption.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fol import Atom, Const, Exists, Formula, Var, conjuncts
from .structure import Structure, next_entity_id


@dataclass
class CaptionReport:
    caption: str
    status: str                 # "added" or "skipped"
    reason: str = ""
    binding: dict = field(default_factory=dict)
    fresh: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"caption": self.caption, "status": self.status, "reason": self.reason,
                "binding": self.binding, "fresh": self.fresh}


def _prefix(f: Formula):
    vars_ = []
    while isinstance(f, Exists):
        vars_.append(f.var)
        f = f.body
    return vars_, f


def is_existential_conjunctive(f: Formula) -> bool:
    _, matrix = _prefix(f)
    return all(isinstance(c, Atom) for c in conjuncts(matrix))


def extend(s: Structure, captions, report: list | None = None) -> Structure:
    """Return ``s`` extended with the facts of each caption formula, in order.

    ``captions`` holds formulas or ``(label, formula)`` pairs.  One
    CaptionReport per caption is appended to ``report`` when given.
    """
    domain = list(s.domain)
    unary = {p: set(es) for p, es in s.unary.items()}
    binary = {r: set(ps) for r, ps in s.binary.items()}
    for item in captions:
        label, f = item if isinstance(item, tuple) else (str(item), item)
        rep = _extend_one(f, label, domain, unary, binary)
        if report is not None:
            report.append(rep)
    return Structure(tuple(domain), unary, binary)


def _skip(label, reason):
    return CaptionReport(label, "skipped", reason)


def _extend_one(f, label, domain, unary, binary):
    if not is_existential_conjunctive(f):
        return _skip(label, "not existential-conjunctive")
    variables, matrix = _prefix(f)
    atoms = conjuncts(matrix)
    if any(isinstance(t, Var) and t.name not in variables for a in atoms for t in a.args):
        return _skip(label, "free variable")
    if len(set(variables)) != len(variables):
        return _skip(label, "repeated quantified variable")
    for a in atoms:
        if len(a.args) == 1 and a.pred in binary or len(a.args) == 2 and a.pred in unary:
            return _skip(label, f"predicate {a.pred!r} used with a different arity")

    missing = sorted({t.name for a in atoms for t in a.args
                      if isinstance(t, Const) and t.name not in domain})
    if missing:
        return _skip(label, f"constants not in the image: {missing}")

    nouns = {v: [a.pred for a in atoms if len(a.args) == 1 and a.args[0] == Var(v)]
             for v in variables}
    binding, fresh = {}, []
    for v in variables:
        preds = nouns[v]
        if not preds:
            return _skip(label, f"variable {v} has no unary predicate to identify it")
        anchors = [p for p in preds if p in unary]
        if anchors:
            candidates = set(domain)
            for p in anchors:
                candidates &= unary[p]
        else:
            candidates = set()
        if len(candidates) > 1:
            return _skip(label, f"co-reference of {v} is ambiguous: {sorted(candidates)}")
        if candidates:
            binding[v] = candidates.pop()
        else:
            binding[v] = None
    same = [(a, b) for i, a in enumerate(variables) for b in variables[i + 1:]
            if sorted(nouns[a]) == sorted(nouns[b])
            or binding[a] is not None and binding[a] == binding[b]]
    if same:
        a, b = same[0]
        return _skip(label, f"variables {a} and {b} share their anchors")

    for v in variables:
        if binding[v] is None:
            new = next_entity_id(Structure(tuple(domain)))
            domain.append(new)
            binding[v] = new
            fresh.append(new)

    def ent(t):
        return binding[t.name] if isinstance(t, Var) else t.name

    for a in atoms:
        args = tuple(ent(t) for t in a.args)
        if len(args) == 1:
            unary.setdefault(a.pred, set()).add(args[0])
        else:
            binary.setdefault(a.pred, set()).add(args)
    return CaptionReport(label, "added", binding=dict(binding), fresh=fresh)


def caption_formulas(sentences, lexicon=None, report: list | None = None):
    """Parse caption sentences; parse failures are reported and dropped."""
    from .semparser import ParseError, parse

    out = []
    for sent in sentences:
        try:
            out.append((sent, parse(sent, lexicon)))
        except ParseError as exc:
            if report is not None:
                report.append(_skip(sent, f"parse failure: {exc}"))
    return out


def extend_with_sentences(s: Structure, sentences, lexicon=None,
                          report: list | None = None) -> Structure:
    """Parse and apply captions one at a time so the report follows input order."""
    for sent in sentences:
        parsed = caption_formulas([sent], lexicon, report)
        s = extend(s, parsed, report)
    return s
