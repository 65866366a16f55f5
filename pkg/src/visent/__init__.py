"""Entailment between scene structures and English queries via first-order logic."""

from .captions import CaptionReport, extend, extend_with_sentences
from .fol import (ArityError, Formula, FormulaSyntaxError, Polarity, alpha_equivalent,
                  parse_formula, polarity, print_formula)
from .prover import Budget, ProverError, Status, Verdict, clausify, entails, prove
from .retrieval import (Corpus, Metrics, QueryRecord, evaluate, generate_fixture_corpus,
                        load_corpus, load_queries, retrieve)
from .semparser import AmbiguityError, ParseError, default_lexicon, load_lexicon, parse
from .structure import (SceneGraph, Structure, StructureError, load_structure, satisfies,
                        scene_graph_to_structure)
from .translator import (AxiomBundle, TranslationMode, build_bundle, translate_complex,
                         translate_hybrid, translate_simple)

__version__ = "0.1.0"
