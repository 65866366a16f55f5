"""Image retrieval by entailment, per-phenomenon F1 and fixture corpora."""

from __future__ import annotations

import json
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .captions import extend_with_sentences
from .fol import Formula
from .prover import Budget, Status, entails
from .structure import Structure, load_structure, satisfies
from .translator import TranslationMode

log = logging.getLogger(__name__)

PHENOMENA = ("Con", "Num", "Q", "Rel", "Neg", "Spa-Rel", "Gen-Rel")


@dataclass
class QueryRecord:
    sentence: str
    phenomena: tuple
    gold: frozenset = frozenset()
    formula: Formula | None = None

    def __post_init__(self):
        self.phenomena = tuple(self.phenomena)
        self.gold = frozenset(self.gold)
        if not self.phenomena:
            raise ValueError(f"query {self.sentence!r} has no phenomenon tags")
        unknown = set(self.phenomena) - set(PHENOMENA)
        if unknown:
            raise ValueError(f"unknown phenomenon tags {sorted(unknown)}")

    def to_json(self) -> dict:
        return {"sentence": self.sentence, "phenomena": list(self.phenomena),
                "gold": sorted(self.gold)}


@dataclass
class Corpus:
    images: dict
    captions: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.images)

    def ids(self):
        return sorted(self.images)

    def with_captions(self, lexicon=None, report: dict | None = None) -> "Corpus":
        images = {}
        for iid in self.ids():
            caps = self.captions.get(iid, [])
            rep = []
            images[iid] = extend_with_sentences(self.images[iid], caps, lexicon, rep) if caps \
                else self.images[iid]
            if report is not None and rep:
                report[iid] = rep
        return Corpus(images, dict(self.captions))


def load_corpus(directory) -> Corpus:
    """``<id>.json`` structures plus optional ``<id>.captions.txt`` files."""
    directory = Path(directory)
    images, captions = {}, {}
    for path in sorted(directory.glob("*.json")):
        iid = path.stem
        images[iid] = load_structure(path)
        cap = directory / f"{iid}.captions.txt"
        if cap.exists():
            captions[iid] = [l.strip() for l in cap.read_text(encoding="utf-8").splitlines()
                             if l.strip() and not l.startswith("#")]
    return Corpus(images, captions)


def load_queries(path) -> list[QueryRecord]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            d = json.loads(line)
            try:
                out.append(QueryRecord(d["sentence"], d["phenomena"], d.get("gold", [])))
            except (KeyError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return out


def save_queries(queries, path):
    with open(path, "w", encoding="utf-8") as fh:
        for q in queries:
            fh.write(json.dumps(q.to_json()) + "\n")


# ---------------------------------------------------------------- scoring

def precision_recall_f1(retrieved, gold) -> tuple[float, float, float]:
    """Empty retrieved set has precision 1, empty gold set recall 1."""
    retrieved, gold = set(retrieved), set(gold)
    tp = len(retrieved & gold)
    p = tp / len(retrieved) if retrieved else 1.0
    r = tp / len(gold) if gold else 1.0
    f = 0.0 if p + r == 0 else 2 * p * r / (p + r)
    return p, r, f


@dataclass
class QueryResult:
    query: QueryRecord
    retrieved: frozenset
    timeouts: tuple = ()
    error: str = ""
    precision: float = 0.0
    recall: float = 0.0
    f1: float = 0.0

    def to_json(self) -> dict:
        return {**self.query.to_json(), "retrieved": sorted(self.retrieved),
                "timeouts": list(self.timeouts), "error": self.error,
                "precision": self.precision, "recall": self.recall, "f1": self.f1}


@dataclass
class Metrics:
    mode: TranslationMode
    queries: list
    phenomena: dict          # tag -> macro F1
    counts: dict             # tag -> number of queries

    def to_json(self) -> dict:
        return {"mode": self.mode.value, "phenomena": self.phenomena, "counts": self.counts,
                "queries": [q.to_json() for q in self.queries],
                "timeouts": sum(len(q.timeouts) for q in self.queries)}

    def table(self) -> str:
        lines = [f"{'phenomenon':<10} {'#':>4} {'F1':>7}"]
        for tag in PHENOMENA:
            if tag in self.phenomena:
                lines.append(f"{tag:<10} {self.counts[tag]:>4} {100 * self.phenomena[tag]:>7.2f}")
        return "\n".join(lines)


def macro_f1(results) -> tuple[dict, dict]:
    sums, counts = {}, {}
    for r in results:
        for tag in r.query.phenomena:
            sums[tag] = sums.get(tag, 0.0) + r.f1
            counts[tag] = counts.get(tag, 0) + 1
    return {t: sums[t] / counts[t] for t in sums}, counts


# -------------------------------------------------------------- retrieval

def _check(args):
    iid, structure, formula, mode, budget, una = args
    return iid, entails(structure, formula, mode, budget, una=una).status


def query_formula(query: QueryRecord, lexicon=None) -> Formula:
    if query.formula is None:
        from .semparser import parse
        query.formula = parse(query.sentence, lexicon)
    return query.formula


def run_query(corpus: Corpus, query: QueryRecord, mode=TranslationMode.HYBRID,
              budget: Budget | None = None, lexicon=None, workers: int = 1,
              una: bool = True) -> QueryResult:
    from .semparser import ParseError

    try:
        formula = query_formula(query, lexicon)
    except ParseError as exc:
        log.warning("parse failure for %r: %s", query.sentence, exc)
        res = QueryResult(query, frozenset(), error=str(exc))
    else:
        jobs = [(iid, corpus.images[iid], formula, mode, budget, una) for iid in corpus.ids()]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                statuses = dict(pool.map(_check, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
        else:
            statuses = dict(map(_check, jobs))
        retrieved = frozenset(i for i, st in statuses.items() if st is Status.ENTAILED)
        timeouts = tuple(sorted(i for i, st in statuses.items() if st is Status.BUDGET_EXCEEDED))
        res = QueryResult(query, retrieved, timeouts)
    res.precision, res.recall, res.f1 = precision_recall_f1(res.retrieved, query.gold)
    return res


def retrieve(corpus: Corpus, query: QueryRecord, mode=TranslationMode.HYBRID,
             budget: Budget | None = None, **kwargs) -> set:
    """Ids of images that entail the query; budget trips count as not retrieved."""
    return set(run_query(corpus, query, mode, budget, **kwargs).retrieved)


def evaluate(corpus: Corpus, queries, mode=TranslationMode.HYBRID,
             budget: Budget | None = None, **kwargs) -> Metrics:
    ids = set(corpus.images)
    for q in queries:
        if not q.gold <= ids:
            log.warning("gold of %r names images outside the corpus: %s",
                        q.sentence, sorted(q.gold - ids))
    results = [run_query(corpus, q, mode, budget, **kwargs) for q in queries]
    per_tag, counts = macro_f1(results)
    return Metrics(mode, results, per_tag, counts)


# --------------------------------------------------------------- fixtures

OBJECTS = {
    "man": "men", "woman": "women", "cat": "cats", "dog": "dogs", "hat": "hats",
    "tree": "trees", "umbrella": "umbrellas", "car": "cars", "cup": "cups", "bus": "buses",
}
ATTRIBUTES = ["red", "white", "black", "green", "tall", "colorful", "brown"]
# predicate -> (3rd person singular phrase, progressive phrase)
RELATIONS = {
    "wear": ("wears", "wearing"),
    "hold": ("holds", "holding"),
    "next_to": ("is next to", "next to"),
    "on": ("is on", "on"),
}

TEMPLATES = [
    ("There is a {a1} {a2} {o1}.", ("Con",)),
    ("There are at least {n} {p1}.", ("Num",)),
    ("All {p1} are {a1}.", ("Q",)),
    ("A {o1} {r3} a {o2}.", ("Rel",)),
    ("No {o1} is {a1}.", ("Neg",)),
    ("All {p1} are {a1} or {a2}.", ("Con", "Q")),
    ("Every {o1} is not {rp} a {o2}.", ("Q", "Rel", "Neg")),
]


def random_structure(rng: random.Random, max_entities: int = 6,
                     objects=None, attributes=None, relations=None) -> Structure:
    objects = list(objects or OBJECTS)
    attributes = list(attributes or ATTRIBUTES)
    relations = list(relations or RELATIONS)
    n = rng.randint(1, max_entities)
    dom = tuple(f"d{i}" for i in range(1, n + 1))
    unary, binary = {}, {}
    for d in dom:
        unary.setdefault(rng.choice(objects), set()).add(d)
        for a in rng.sample(attributes, rng.choice([0, 1, 1, 2])):
            unary.setdefault(a, set()).add(d)
    for a in dom:
        for b in dom:
            if a != b and rng.random() < 0.15:
                binary.setdefault(rng.choice(relations), set()).add((a, b))
    return Structure(dom, unary, binary)


def instantiate(template: str, rng: random.Random, objects=None) -> str:
    objs = list(objects or OBJECTS)
    o1, o2 = rng.sample(objs, 2)
    a1, a2 = rng.sample(ATTRIBUTES, 2)
    rel = rng.choice(list(RELATIONS))
    return template.format(o1=o1, o2=o2, p1=OBJECTS[o1], a1=a1, a2=a2,
                           n=rng.choice(["two", "three"]), r3=RELATIONS[rel][0],
                           rp=RELATIONS[rel][1])


def generate_fixture_corpus(seed: int, size: int, per_template: int = 2,
                            max_entities: int = 6):
    """Deterministic random corpus and template queries with oracle gold labels."""
    if size < 1:
        raise ValueError("size must be at least 1")
    from .semparser import default_lexicon, parse

    rng = random.Random(seed)
    images = {f"img{i:04d}": random_structure(rng, max_entities) for i in range(size)}
    corpus = Corpus(images)
    lexicon = default_lexicon()
    queries, seen = [], set()
    for template, tags in TEMPLATES:
        made = 0
        while made < per_template:
            sentence = instantiate(template, rng)
            if sentence in seen:
                continue
            seen.add(sentence)
            formula = parse(sentence, lexicon)
            gold = {iid for iid, s in images.items() if satisfies(s, formula)}
            queries.append(QueryRecord(sentence, tags, gold, formula))
            made += 1
    return corpus, queries


def write_corpus(corpus: Corpus, directory):
    from .structure import save_structure

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for iid in corpus.ids():
        save_structure(corpus.images[iid], directory / f"{iid}.json")
        if corpus.captions.get(iid):
            (directory / f"{iid}.captions.txt").write_text(
                "\n".join(corpus.captions[iid]) + "\n", encoding="utf-8")
