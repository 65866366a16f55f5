"""Compositional semantic parsing of the query fragment into FOL."""

from .category import NP, N, S, Atomic, Slash, parse_category, semantic_type
from .chart import (AmbiguityError, ParseError, derivations, numeral_determiner,
                    numeral_semantics, parse, parse_tokens, term_to_formula, tokenize)
from .lam import (App, Lam, LambdaSyntaxError, LambdaTypeError, Term, alpha_equivalent,
                  infer_type, normalize, parse_term, to_formula)
from .lexicon import (LexEntry, Lexicon, LexiconError, default_lexicon, lemma_candidates,
                      load_lexicon)
