"""Command-line entry points: translate, parse, extend-captions, prove, retrieve, evaluate."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import fol
from .captions import extend_with_sentences
from .prover import DEFAULT_MAX_SECONDS, Budget, ProverError, Status, entails
from .retrieval import evaluate, load_corpus, load_queries
from .semparser import ParseError, default_lexicon, load_lexicon, parse
from .structure import StructureError, load_structure, save_structure, structure_to_json
from .translator import (TranslationMode, translate_complex, translate_simple,
                         unique_name_axioms)

EXIT_CODES = {Status.ENTAILED: 0, Status.NOT_ENTAILED: 1, Status.BUDGET_EXCEEDED: 2}
EXIT_ERROR = 3
MODES = [m.value for m in TranslationMode]


def _lexicon(path):
    return load_lexicon(path) if path else default_lexicon()


def cmd_translate(args):
    s = load_structure(args.structure)
    core = translate_simple(s) if args.mode is TranslationMode.SIMPLE else translate_complex(s)
    print(core)
    if not args.no_una:
        for f in unique_name_axioms(s):
            print(f)
    return 0


def cmd_parse(args):
    print(parse(args.sentence, _lexicon(args.lexicon)))
    return 0


def cmd_extend(args):
    s = load_structure(args.structure)
    with open(args.captions, encoding="utf-8") as fh:
        sentences = [l.strip() for l in fh if l.strip() and not l.startswith("#")]
    report = []
    out = extend_with_sentences(s, sentences, _lexicon(args.lexicon), report)
    for rep in report:
        if rep.status == "skipped":
            print(json.dumps(rep.to_json()), file=sys.stderr)
    if args.out:
        save_structure(out, args.out)
    else:
        print(json.dumps(structure_to_json(out), indent=2))
    return 0


def cmd_prove(args):
    s = load_structure(args.structure)
    if args.query.startswith("@"):
        query = fol.parse_formula(args.query[1:])
    else:
        query = parse(args.query, _lexicon(args.lexicon))
    budget = Budget(max_seconds=args.max_seconds)
    verdict = entails(s, query, args.mode, budget, una=not args.no_una)
    print(f"{verdict.status.value}\t{query}")
    if args.verbose:
        print(json.dumps({"mode": verdict.mode.value, **verdict.stats()}), file=sys.stderr)
    return EXIT_CODES[verdict.status]


def _run_retrieval(args):
    corpus = load_corpus(args.corpus)
    if args.use_captions:
        skipped = {}
        corpus = corpus.with_captions(_lexicon(args.lexicon), skipped)
        for iid, reps in skipped.items():
            for rep in reps:
                if rep.status == "skipped":
                    print(json.dumps({"image": iid, **rep.to_json()}), file=sys.stderr)
    queries = load_queries(args.queries)
    budget = Budget(max_seconds=args.max_seconds)
    metrics = evaluate(corpus, queries, args.mode, budget, lexicon=_lexicon(args.lexicon),
                       workers=args.workers)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(metrics.to_json(), fh, indent=2)
    return metrics


def cmd_retrieve(args):
    metrics = _run_retrieval(args)
    for r in metrics.queries:
        print(f"{r.query.sentence}\t{' '.join(sorted(r.retrieved))}")
    return 0


def cmd_evaluate(args):
    metrics = _run_retrieval(args)
    print(f"mode: {metrics.mode.value}")
    print(metrics.table())
    timeouts = sum(len(r.timeouts) for r in metrics.queries)
    failures = sum(1 for r in metrics.queries if r.error)
    print(f"timeouts: {timeouts}  parse failures: {failures}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="visent", description=__doc__)
    p.add_argument("--log-level", default="WARNING")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("translate", help="print the translation of a structure")
    t.add_argument("--mode", choices=["simple", "complex"], default="simple")
    t.add_argument("--structure", required=True)
    t.add_argument("--no-una", action="store_true")
    t.set_defaults(func=cmd_translate)

    q = sub.add_parser("parse", help="parse a sentence to a formula")
    q.add_argument("--lexicon")
    q.add_argument("--sentence", required=True)
    q.set_defaults(func=cmd_parse)

    e = sub.add_parser("extend-captions", help="add caption facts to a structure")
    e.add_argument("--structure", required=True)
    e.add_argument("--captions", required=True)
    e.add_argument("--lexicon")
    e.add_argument("--out")
    e.set_defaults(func=cmd_extend)

    v = sub.add_parser("prove", help="decide whether a structure entails a query")
    v.add_argument("--structure", required=True)
    v.add_argument("--query", required=True, help="a sentence, or @formula")
    v.add_argument("--mode", choices=MODES, default="hybrid")
    v.add_argument("--max-seconds", type=float, default=DEFAULT_MAX_SECONDS)
    v.add_argument("--lexicon")
    v.add_argument("--no-una", action="store_true")
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_prove)

    for name, func, text in [("retrieve", cmd_retrieve, "retrieve images for each query"),
                             ("evaluate", cmd_evaluate, "retrieve and print per-phenomenon F1")]:
        r = sub.add_parser(name, help=text)
        r.add_argument("--corpus", required=True)
        r.add_argument("--queries", required=True)
        r.add_argument("--mode", choices=MODES, default="hybrid")
        r.add_argument("--use-captions", action="store_true")
        r.add_argument("--workers", type=int, default=1)
        r.add_argument("--max-seconds", type=float, default=DEFAULT_MAX_SECONDS)
        r.add_argument("--lexicon")
        r.add_argument("--report")
        r.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.mode = TranslationMode(args.mode) if hasattr(args, "mode") else None
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (StructureError, ParseError, ProverError, fol.FormulaSyntaxError, fol.ArityError,
            OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
