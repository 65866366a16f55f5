"""Lexicon files and morphological lookup.

File format: UTF-8 TSV with columns ``surface``, ``category``, ``lambda``.
Blank lines and lines starting with ``#`` are ignored.  Multiword surfaces
are written with spaces (``at least``) and tokenized to ``at_least``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .category import parse_category, semantic_type
from .lam import LambdaTypeError, Term, check_type, parse_term, show


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class LexEntry:
    surface: str            # underscore-joined key, e.g. "at_least"
    category: object
    semantics: Term

    def to_tsv(self) -> str:
        return f"{self.surface.replace('_', ' ')}\t{self.category}\t{show(self.semantics)}"


IRREGULAR = {
    "men": "man", "women": "woman", "people": "person", "children": "child",
    "feet": "foot", "teeth": "tooth", "mice": "mouse", "geese": "goose",
    "has": "have", "having": "have", "had": "have", "does": "do",
}

VOWELS = set("aeiou")


def lemma_candidates(word: str) -> list[str]:
    """The word itself first, then plural/progressive/3sg reductions."""
    if "_" in word:
        head, rest = word.split("_", 1)
        return [f"{h}_{rest}" for h in lemma_candidates(head)]
    out = [word]
    if word in IRREGULAR:
        out.append(IRREGULAR[word])
    if word.endswith("ies") and len(word) > 4:
        out.append(word[:-3] + "y")
    if word.endswith("ves") and len(word) > 4:
        out.append(word[:-3] + "f")
    if word.endswith("es") and len(word) > 3:
        out.append(word[:-2])
    if word.endswith("s") and not word.endswith("ss") and len(word) > 2:
        out.append(word[:-1])
    if word.endswith("ing") and len(word) > 4:
        stem = word[:-3]
        out.append(stem)
        out.append(stem + "e")
        if len(stem) > 2 and stem[-1] == stem[-2] and stem[-1] not in VOWELS:
            out.append(stem[:-1])
    return list(dict.fromkeys(out))


class Lexicon:
    def __init__(self, entries=()):
        self.entries: dict[str, list[LexEntry]] = {}
        for e in entries:
            self.add(e)

    def add(self, entry: LexEntry):
        bucket = self.entries.setdefault(entry.surface, [])
        if entry not in bucket:
            bucket.append(entry)

    def add_line(self, surface: str, category: str, semantics: str, where: str = ""):
        try:
            cat = parse_category(category)
            sem = parse_term(semantics)
            check_type(sem, semantic_type(cat))
        except (ValueError, LambdaTypeError) as exc:
            raise LexiconError(f"{where}{surface!r}: {exc}") from exc
        self.add(LexEntry("_".join(surface.lower().split()), cat, sem))

    def __contains__(self, word):
        return word in self.entries

    def __len__(self):
        return sum(len(v) for v in self.entries.values())

    def multiword_keys(self) -> list[tuple]:
        return sorted((tuple(k.split("_")) for k in self.entries if "_" in k),
                      key=len, reverse=True)

    def lookup(self, token: str) -> list[LexEntry]:
        """Entries for the first candidate lemma present in the lexicon."""
        for cand in lemma_candidates(token):
            if cand in self.entries:
                return list(self.entries[cand])
        return []

    def copy(self) -> "Lexicon":
        out = Lexicon()
        for k, v in self.entries.items():
            out.entries[k] = list(v)
        return out

    def extend_vocabulary(self, nouns=(), attributes=(), relations=()):
        """Add open-class words using the standard templates."""
        for n in nouns:
            for line in noun_lines(n):
                self.add_line(*line)
        for a in attributes:
            for line in attribute_lines(a):
                self.add_line(*line)
        for r in relations:
            for line in relation_lines(r):
                self.add_line(*line)
        return self

    def to_tsv(self) -> str:
        return "\n".join(e.to_tsv() for v in self.entries.values() for e in v) + "\n"


def load_lexicon(path) -> Lexicon:
    text = Path(path).read_text(encoding="utf-8")
    return lexicon_from_tsv(text, str(path))


def lexicon_from_tsv(text: str, name: str = "<lexicon>") -> Lexicon:
    lex = Lexicon()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cols = raw.split("\t")
        if len(cols) != 3:
            raise LexiconError(f"{name}:{lineno}: expected 3 tab-separated columns")
        lex.add_line(cols[0].strip(), cols[1].strip(), cols[2].strip(), f"{name}:{lineno}: ")
    return lex


@lru_cache(maxsize=1)
def _default() -> Lexicon:
    text = resources.files("visent").joinpath("data/lexicon.tsv").read_text(encoding="utf-8")
    return lexicon_from_tsv(text, "lexicon.tsv")


def default_lexicon() -> Lexicon:
    return _default().copy()


# ------------------------------------------------------------ templates

def predicate_name(surface: str) -> str:
    return "_".join(surface.lower().split())


def noun_lines(noun: str):
    p = predicate_name(noun)
    yield noun, "N", f"\\x. {p}(x)"


def attribute_lines(attr: str):
    p = predicate_name(attr)
    yield attr, "S\\NP", f"\\Q. Q(\\x. {p}(x))"
    yield attr, "N/N", f"\\P. \\x. ({p}(x) & P(x))"


def relation_lines(rel: str):
    p = predicate_name(rel)
    yield rel, "(S\\NP)/NP", f"\\O. \\S. S(\\x. O(\\y. {p}(x,y)))"
    yield rel, "(S\\NP)/N", f"\\P. \\S. S(\\x. exists y. (P(y) & {p}(x,y)))"
    yield rel, "(N\\N)/NP", f"\\O. \\P. \\x. (P(x) & O(\\y. {p}(x,y)))"
