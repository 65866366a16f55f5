"""Finite FOL structures, scene graphs and direct model checking."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .fol import (And, Atom, Eq, Exists, Forall, Formula, Implies, Not, Or,
                  Var, constants, free_vars)

ENTITY = "entity"


class StructureError(ValueError):
    """Invalid structure or scene graph; ``pointer`` is a JSON pointer when known."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer}: {message}" if pointer else message)
        self.pointer = pointer


@dataclass(frozen=True, eq=False)
class Structure:
    """A pair (domain, interpretation) over unary and binary predicates.

    ``unary`` maps a predicate to a frozenset of entities and ``binary`` maps
    a relation to a frozenset of ordered pairs.  The domain keeps insertion
    order.
    """

    domain: tuple
    unary: Mapping[str, frozenset] = field(default_factory=dict)
    binary: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "unary",
                           {p: frozenset(es) for p, es in self.unary.items()})
        object.__setattr__(self, "binary",
                           {r: frozenset(tuple(pr) for pr in prs)
                            for r, prs in self.binary.items()})
        self.validate()

    def validate(self):
        if len(set(self.domain)) != len(self.domain):
            raise StructureError("duplicate entity in domain", "/domain")
        members = set(self.domain)
        for p, es in self.unary.items():
            for e in es:
                if e not in members:
                    raise StructureError(f"entity {e!r} not in domain", f"/unary/{p}")
        for r, prs in self.binary.items():
            if r in self.unary:
                raise StructureError(f"{r!r} is both unary and binary", f"/binary/{r}")
            for pr in prs:
                if len(pr) != 2:
                    raise StructureError(f"pair {pr!r} is not binary", f"/binary/{r}")
                for e in pr:
                    if e not in members:
                        raise StructureError(f"entity {e!r} not in domain", f"/binary/{r}")

    def __eq__(self, other):
        if not isinstance(other, Structure):
            return NotImplemented
        return (self.domain == other.domain and self.unary == other.unary
                and self.binary == other.binary)

    def __hash__(self):
        return hash(self.domain)

    def __repr__(self):
        return f"Structure(domain={list(self.domain)}, unary={_sorted(self.unary)}, binary={_sorted(self.binary)})"

    def extension(self, pred: str, arity: int = 1) -> frozenset:
        """Extension of ``pred``; unknown predicates are empty, ``entity`` defaults to the domain."""
        if arity == 1:
            if pred == ENTITY and pred not in self.unary:
                return frozenset(self.domain)
            return self.unary.get(pred, frozenset())
        return self.binary.get(pred, frozenset())

    def unary_facts(self) -> list:
        """(predicate, entity) pairs ordered by domain position, then predicate name."""
        index = {e: i for i, e in enumerate(self.domain)}
        facts = [(p, e) for p, es in self.unary.items() for e in es]
        return sorted(facts, key=lambda pe: (index[pe[1]], pe[0]))

    def binary_facts(self) -> list:
        index = {e: i for i, e in enumerate(self.domain)}
        facts = [(r, a, b) for r, prs in self.binary.items() for a, b in prs]
        return sorted(facts, key=lambda f: (index[f[1]], index[f[2]], f[0]))

    def issubstructure(self, other: "Structure") -> bool:
        return (set(self.domain) <= set(other.domain)
                and all(es <= other.unary.get(p, frozenset()) for p, es in self.unary.items())
                and all(prs <= other.binary.get(r, frozenset()) for r, prs in self.binary.items()))


def _sorted(m):
    return {k: sorted(v) for k, v in sorted(m.items())}


# ---------------------------------------------------------- scene graphs

@dataclass(frozen=True)
class SceneObject:
    id: str
    category: str
    attributes: tuple = ()


@dataclass(frozen=True)
class SceneRelation:
    subject: str
    predicate: str
    object: str


@dataclass(frozen=True)
class SceneGraph:
    objects: tuple
    relations: tuple = ()
    image_id: str = ""


def scene_graph_to_structure(g: SceneGraph) -> Structure:
    ids = []
    unary: dict[str, set] = {}
    for i, obj in enumerate(g.objects):
        if obj.id in ids:
            raise StructureError(f"duplicate object id {obj.id!r}", f"/objects/{i}/id")
        ids.append(obj.id)
        for p in (obj.category, *obj.attributes):
            unary.setdefault(p, set()).add(obj.id)
    binary: dict[str, set] = {}
    for i, rel in enumerate(g.relations):
        for end in ("subject", "object"):
            if getattr(rel, end) not in ids:
                raise StructureError(f"undeclared id {getattr(rel, end)!r}", f"/relations/{i}/{end}")
        binary.setdefault(rel.predicate, set()).add((rel.subject, rel.object))
    return Structure(tuple(ids), unary, binary)


def structure_to_scene_graph(s: Structure, category_of: Mapping[str, str],
                             image_id: str = "") -> SceneGraph:
    objects = []
    for e in s.domain:
        cat = category_of.get(e)
        if cat is None:
            raise StructureError(f"no category designated for {e!r}")
        if e not in s.unary.get(cat, ()):
            raise StructureError(f"{e!r} is not in the extension of its category {cat!r}")
        attrs = tuple(p for p, x in s.unary_facts() if x == e and p != cat)
        objects.append(SceneObject(e, cat, attrs))
    relations = tuple(SceneRelation(a, r, b) for r, a, b in s.binary_facts())
    return SceneGraph(tuple(objects), relations, image_id)


# ------------------------------------------------------------------ JSON

def _expect(cond, msg, pointer):
    if not cond:
        raise StructureError(msg, pointer)


def structure_from_json(data) -> Structure:
    """Accepts either the scene-graph schema or the FOL-structure schema."""
    _expect(isinstance(data, dict), "top level must be an object", "")
    if "objects" in data:
        objs = data["objects"]
        _expect(isinstance(objs, list), "must be a list", "/objects")
        objects = []
        for i, o in enumerate(objs):
            _expect(isinstance(o, dict), "must be an object", f"/objects/{i}")
            for key in ("id", "category"):
                _expect(isinstance(o.get(key), str) and o.get(key),
                        "must be a nonempty string", f"/objects/{i}/{key}")
            attrs = o.get("attributes", [])
            _expect(isinstance(attrs, list) and all(isinstance(a, str) for a in attrs),
                    "must be a list of strings", f"/objects/{i}/attributes")
            objects.append(SceneObject(o["id"], o["category"], tuple(attrs)))
        rels = data.get("relations", [])
        _expect(isinstance(rels, list), "must be a list", "/relations")
        relations = []
        for i, r in enumerate(rels):
            _expect(isinstance(r, dict), "must be an object", f"/relations/{i}")
            for key in ("subject", "predicate", "object"):
                _expect(isinstance(r.get(key), str), "must be a string", f"/relations/{i}/{key}")
            relations.append(SceneRelation(r["subject"], r["predicate"], r["object"]))
        return scene_graph_to_structure(
            SceneGraph(tuple(objects), tuple(relations), data.get("image_id", "")))
    _expect("domain" in data, "missing 'domain' or 'objects'", "")
    dom = data["domain"]
    _expect(isinstance(dom, list) and all(isinstance(e, str) for e in dom),
            "must be a list of strings", "/domain")
    unary = data.get("unary", {})
    binary = data.get("binary", {})
    _expect(isinstance(unary, dict), "must be an object", "/unary")
    _expect(isinstance(binary, dict), "must be an object", "/binary")
    for p, es in unary.items():
        _expect(isinstance(es, list), "must be a list", f"/unary/{p}")
    for r, prs in binary.items():
        _expect(isinstance(prs, list) and all(isinstance(pr, list) and len(pr) == 2 for pr in prs),
                "must be a list of pairs", f"/binary/{r}")
    return Structure(tuple(dom), unary, binary)


def structure_to_json(s: Structure) -> dict:
    index = {e: i for i, e in enumerate(s.domain)}
    return {
        "domain": list(s.domain),
        "unary": {p: sorted(es, key=index.get) for p, es in s.unary.items()},
        "binary": {r: [list(pr) for pr in sorted(prs, key=lambda pr: (index[pr[0]], index[pr[1]]))]
                   for r, prs in s.binary.items()},
    }


def load_structure(path) -> Structure:
    with open(path, encoding="utf-8") as fh:
        return structure_from_json(json.load(fh))


def save_structure(s: Structure, path):
    Path(path).write_text(json.dumps(structure_to_json(s), indent=2) + "\n", encoding="utf-8")


# ------------------------------------------------------------ evaluation

def satisfies(s: Structure, f: Formula) -> bool:
    """Tarskian truth of a closed formula in ``s``; quantifiers range over the domain."""
    fv = free_vars(f)
    if fv:
        raise StructureError(f"formula has free variables {sorted(fv)}")
    missing = constants(f) - set(s.domain)
    if missing:
        raise StructureError(f"constants not in domain: {sorted(missing)}")
    return _eval(s, f, {})


def _val(t, env):
    return env[t.name] if isinstance(t, Var) else t.name


def _eval(s: Structure, f: Formula, env: dict) -> bool:
    if isinstance(f, Atom):
        args = tuple(_val(t, env) for t in f.args)
        if len(args) == 1:
            return args[0] in s.extension(f.pred, 1)
        return args in s.extension(f.pred, 2)
    if isinstance(f, Eq):
        return _val(f.lhs, env) == _val(f.rhs, env)
    if isinstance(f, Not):
        return not _eval(s, f.body, env)
    if isinstance(f, And):
        return _eval(s, f.left, env) and _eval(s, f.right, env)
    if isinstance(f, Or):
        return _eval(s, f.left, env) or _eval(s, f.right, env)
    if isinstance(f, Implies):
        return not _eval(s, f.left, env) or _eval(s, f.right, env)
    if isinstance(f, Forall):
        return all(_eval(s, f.body, {**env, f.var: e}) for e in s.domain)
    if isinstance(f, Exists):
        return any(_eval(s, f.body, {**env, f.var: e}) for e in s.domain)
    raise TypeError(f"not a formula: {f!r}")


_DIGITS = re.compile(r"d(\d+)\Z")


def next_entity_id(s: Structure, taken: Iterable[str] = ()) -> str:
    """Next ``d<k>`` after the largest numbered entity."""
    nums = [int(m.group(1)) for e in (*s.domain, *taken) if (m := _DIGITS.match(e))]
    return f"d{max(nums, default=0) + 1}"
