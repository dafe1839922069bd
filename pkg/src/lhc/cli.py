"""Command-line driver: `lhc ingest|analyze|query|hypothesis|evaluate|serve`.

Exit codes: 0 success, 2 I/O failure, 3 format error, 4 precondition
violation, 5 internal error. All output is deterministic for fixed inputs
and configuration (pass --no-timestamps where feedback logging is involved).
"""

import argparse
import json
import sys
from pathlib import Path

from . import service as service_mod
from .clinical import ingest_clinical, read_clinical_csv
from .config import load_config
from .engine import analyze, report_json
from .errors import (
    EmptyLabel,
    EmptySets,
    EmptySnapshot,
    InvalidWeight,
    LhcError,
    MalformedHypothesis,
    NoMatch,
    ParseError,
    RankTooLarge,
    UnknownStatement,
    UnknownTerm,
)
from .evaluate import evaluate_against_gold
from .hypothesis import parse_hypothesis, score_hypothesis
from .search import derived_similarity_index, search
from .service import statement_doc
from .store import SourceCategory, SourceId, Store, TermKind
from .textmine import (
    CorpusDocument,
    DictionaryMatcher,
    cooccurrences_to_statements,
    extract_cooccurrences,
    read_verb_lexicon,
    relation_label_pass,
)

EXIT_OK = 0
EXIT_IO = 2
EXIT_FORMAT = 3
EXIT_PRECONDITION = 4
EXIT_INTERNAL = 5

_PRECONDITION_ERRORS = (
    EmptySnapshot,
    NoMatch,
    UnknownTerm,
    UnknownStatement,
    InvalidWeight,
    EmptyLabel,
    EmptySets,
    MalformedHypothesis,
    RankTooLarge,
    ValueError,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lhc", description=__doc__.splitlines()[0])
    parser.add_argument("--store", help="store directory (or LHC_STORE)")
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--no-timestamps", action="store_true", help="suppress timestamps for reproducible output")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="load a source file/directory into the store")
    p_ingest.add_argument("kind", choices=["clinical", "corpus", "linked"])
    p_ingest.add_argument("path")
    p_ingest.add_argument("--provenance", help="source id (defaults to the file/directory name)")
    p_ingest.add_argument("--dictionary", help="term table CSV (id,label,synonyms) for corpus matching")
    p_ingest.add_argument("--verbs", help="verb lexicon CSV (verb,predicate_label) for relation labeling")
    p_ingest.add_argument("--window", type=int, help="co-occurrence window in sentences")
    p_ingest.add_argument("--sidecar", help="weight/provenance sidecar CSV for linked import")

    p_analyze = sub.add_parser("analyze", help="derive similarity/clusters/taxonomy/rules")
    p_analyze.add_argument("--report", help="report path (default: <store>/report.json)")
    for flag in ("theta-sim", "tau-tax", "theta-emit", "minsup", "minconf"):
        p_analyze.add_argument(f"--{flag}", type=float, dest=flag.replace("-", "_"))
    p_analyze.add_argument("--top-pairs", type=int, dest="top_pairs")

    p_query = sub.add_parser("query", help="free-text search")
    p_query.add_argument("text")
    p_query.add_argument("--limit", type=int, default=10)

    p_hyp = sub.add_parser("hypothesis", help="score a hypothesis expression (JSON)")
    p_hyp.add_argument("expr")
    p_hyp.add_argument("--theta-sim", type=float, dest="theta_sim")

    p_eval = sub.add_parser("evaluate", help="generalized precision/recall vs a gold standard")
    p_eval.add_argument("--system", required=True, help="statement-csv of system output")
    p_eval.add_argument("--gold", required=True, help="statement-csv gold standard")
    p_eval.add_argument("--theta-match", type=float, dest="theta_match")

    p_serve = sub.add_parser("serve", help="run the HTTP/JSON service")
    p_serve.add_argument("--port", type=int)
    p_serve.add_argument("--host", default="127.0.0.1")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        flag_values = {
            "store_path": args.store,
            "no_timestamps": args.no_timestamps or None,
        }
        for name in (
            "theta_sim",
            "tau_tax",
            "theta_emit",
            "minsup",
            "minconf",
            "theta_match",
            "window",
            "port",
            "top_pairs",
        ):
            flag_values[name] = getattr(args, name, None)
        config = load_config(flag_values, args.config)
        return _run(args, config)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FORMAT
    except (FileNotFoundError, NotADirectoryError, PermissionError, IsADirectoryError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as err:
        # must precede the precondition catch: JSONDecodeError is a ValueError
        print(f"error: bad JSON: {err}", file=sys.stderr)
        return EXIT_FORMAT
    except _PRECONDITION_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PRECONDITION
    except LhcError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO


def _open_store(config) -> Store:
    if not config.store_path:
        raise ValueError("no store path (use --store or LHC_STORE)")
    return Store(config.store_path)


def _run(args, config) -> int:
    if args.command == "ingest":
        return _cmd_ingest(args, config)
    if args.command == "analyze":
        return _cmd_analyze(args, config)
    if args.command == "query":
        return _cmd_query(args, config)
    if args.command == "hypothesis":
        return _cmd_hypothesis(args, config)
    if args.command == "evaluate":
        return _cmd_evaluate(args, config)
    if args.command == "serve":
        return _cmd_serve(args, config)
    raise ValueError(f"unknown command {args.command!r}")


def _cmd_ingest(args, config) -> int:
    path = Path(args.path)
    if not path.exists():
        raise FileNotFoundError(f"input not found: {path}")
    store = _open_store(config)
    try:
        if args.kind == "clinical":
            prov = SourceId(args.provenance or f"clin:{path.name}", SourceCategory.CLINICAL)
            with open(path, encoding="utf-8", newline="") as f:
                observations, errors = ingest_clinical(read_clinical_csv(f), store, prov)
            n_statements = sum(len(o.facets) for o in observations)
            print(f"{n_statements} statements from {len(observations)} observations")
            if errors:
                print(f"{len(errors)} malformed rows skipped")
                for err in errors:
                    print(f"  {err}", file=sys.stderr)
        elif args.kind == "corpus":
            count = _ingest_corpus(args, config, store, path)
            print(f"{count} statements from corpus {path.name}")
        else:  # linked
            prov_id = args.provenance or path.name
            sidecar = open(args.sidecar, encoding="utf-8", newline="") if args.sidecar else None
            try:
                with open(path, encoding="utf-8") as f:
                    count = store.import_ntriples(f, sidecar, default_provenance=prov_id)
            finally:
                if sidecar:
                    sidecar.close()
            print(f"{count} statements")
    finally:
        store.close()
    return EXIT_OK


def _ingest_corpus(args, config, store: Store, path: Path) -> int:
    if path.is_dir():
        doc_paths = sorted(path.glob("*.txt"))
    else:
        doc_paths = [path]
    docs = [CorpusDocument(p.name, p.read_text(encoding="utf-8")) for p in doc_paths]
    if args.dictionary:
        _load_dictionary(store, args.dictionary)
    terms = [t for t in store.terms() if t.kind in (TermKind.ENTITY, TermKind.LITERAL)]
    matcher = DictionaryMatcher(terms)
    prov = SourceId(args.provenance or f"corpus:{path.name}", SourceCategory.CORPUS)
    counts = extract_cooccurrences(docs, matcher, window=config.window)
    statements = cooccurrences_to_statements(counts, store, prov)
    if args.verbs:
        with open(args.verbs, encoding="utf-8", newline="") as f:
            lexicon = read_verb_lexicon(f)
        statements += relation_label_pass(docs, matcher, lexicon, store, prov)
    return len(statements)


def _load_dictionary(store: Store, path: str):
    with open(path, encoding="utf-8", newline="") as f:
        store.import_terms_csv(f)


def _cmd_analyze(args, config) -> int:
    store = _open_store(config)
    try:
        result = analyze(
            store,
            theta_sim=config.theta_sim,
            tau_tax=config.tau_tax,
            theta_emit=config.theta_emit,
            minsup=config.minsup,
            minconf=config.minconf,
            top_pairs=config.top_pairs,
        )
        report = report_json(result)
        report_path = Path(args.report) if args.report else Path(config.store_path) / "report.json"
        report_path.write_text(report + "\n", encoding="utf-8")
        for family in ("similarity", "cluster", "taxonomy", "rule"):
            print(f"{family}: {result.materialized[family]} statements")
        print(f"report: {report_path}")
    finally:
        store.close()
    return EXIT_OK


def _cmd_query(args, config) -> int:
    store = _open_store(config)
    try:
        results = search(store.take_snapshot(), args.text, args.limit)
    finally:
        store.close()
    docs = [
        statement_doc(r.statement, {"relevance": r.relevance, "match_terms": sorted(r.match_terms)})
        for r in results
    ]
    print(json.dumps(docs, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_hypothesis(args, config) -> int:
    expr = json.loads(args.expr)
    parsed = parse_hypothesis(expr)
    store = _open_store(config)
    try:
        score, evidence = score_hypothesis(store.take_snapshot(), parsed, config.theta_sim)
    finally:
        store.close()
    doc = {
        "plausibility": score,
        "evidence": [statement_doc(r.statement, {"relevance": r.relevance}) for r in evidence],
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK


def _read_triples_csv(path: str):
    with open(path, encoding="utf-8", newline="") as f:
        scratch = Store()
        scratch.import_csv(f)
        return [st.triple for st in scratch.statements()]


def _cmd_evaluate(args, config) -> int:
    system = _read_triples_csv(args.system)
    gold = _read_triples_csv(args.gold)
    sims = {}
    if config.store_path:
        store = _open_store(config)
        try:
            sims = derived_similarity_index(store.take_snapshot())
        finally:
            store.close()
    precision, recall = evaluate_against_gold(system, gold, config.theta_match, sims)
    print(json.dumps({"precision": precision, "recall": recall}, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_serve(args, config) -> int:
    store = _open_store(config)
    port = config.port if args.port is None else args.port
    server = service_mod.LhcServer(store, config, host=args.host, port=port, verbose=True)
    print(f"serving on {server.server_address[0]}:{server.server_address[1]}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
        store.close()
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
