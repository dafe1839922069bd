"""HTTP/JSON query service over a statement store.

Every response is the envelope {"ok": bool, "data": ..., "error": ...}.
Reads run on a per-request snapshot; feedback writes go through the
store's serialized write path, so concurrent requests never corrupt it.

Endpoints:
  GET  /health
  GET  /search?q=...&limit=N
  GET  /term/{id}
  GET  /term/{id}/neighborhood?radius=R&limit=N
  POST /hypothesis   {"expr": ...}
  POST /feedback     {"s","p","o","prov","direction"}
  GET  /concepts | /taxonomy | /rules
  POST /evaluate     {"system": [[s,p,o],...], "gold": [...], "theta_match": x}
"""

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, unquote, urlparse

from . import evaluate as evaluate_mod
from . import hypothesis as hypothesis_mod
from . import search as search_mod
from .config import RunConfig
from .errors import (
    EmptySets,
    LhcError,
    MalformedHypothesis,
    NoMatch,
    UnknownStatement,
    UnknownTerm,
)
from .normalize import slug
from .store import Store

_CLIENT_ERRORS = (NoMatch, UnknownTerm, UnknownStatement, MalformedHypothesis, EmptySets, ValueError)


def statement_doc(st, extra=None):
    doc = {
        "s": st.subject,
        "p": st.predicate,
        "o": st.object,
        "prov": st.provenance,
        "weight": st.weight,
    }
    if extra:
        doc.update(extra)
    return doc


class LhcRequestHandler(BaseHTTPRequestHandler):
    server_version = "lhc"
    protocol_version = "HTTP/1.1"

    def log_message(self, format, *args):  # noqa: A002 - stdlib signature
        if self.server.verbose:
            super().log_message(format, *args)

    # ------------------------------------------------------------ plumbing

    def _send(self, status: int, payload: dict):
        body = json.dumps(payload, sort_keys=True).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _ok(self, data):
        self._send(200, {"ok": True, "data": data, "error": None})

    def _fail(self, status: int, message: str):
        self._send(status, {"ok": False, "data": None, "error": message})

    def _body_json(self):
        length = int(self.headers.get("Content-Length", 0))
        if length <= 0:
            raise ValueError("missing request body")
        raw = self.rfile.read(length)
        return json.loads(raw.decode("utf-8"))

    def _dispatch(self, handler, *args):
        try:
            handler(*args)
        except _CLIENT_ERRORS as err:
            status = 404 if isinstance(err, (UnknownTerm, UnknownStatement, NoMatch)) else 400
            self._fail(status, str(err))
        except json.JSONDecodeError as err:
            self._fail(400, f"bad JSON: {err}")
        except LhcError as err:
            self._fail(400, str(err))
        except Exception as err:  # noqa: BLE001 - report, don't crash the thread
            self._fail(500, f"internal error: {err}")

    # ------------------------------------------------------------- routing

    def do_GET(self):  # noqa: N802 - stdlib naming
        url = urlparse(self.path)
        parts = [unquote(p) for p in url.path.split("/") if p]
        query = parse_qs(url.query)
        if parts == ["health"]:
            self._dispatch(self._health)
        elif parts == ["search"]:
            self._dispatch(self._search, query)
        elif len(parts) == 2 and parts[0] == "term":
            self._dispatch(self._term, parts[1])
        elif len(parts) == 3 and parts[0] == "term" and parts[2] == "neighborhood":
            self._dispatch(self._neighborhood, parts[1], query)
        elif parts == ["concepts"]:
            self._dispatch(self._concepts)
        elif parts == ["taxonomy"]:
            self._dispatch(self._taxonomy)
        elif parts == ["rules"]:
            self._dispatch(self._rules)
        else:
            self._fail(404, f"no such resource: {url.path}")

    def do_POST(self):  # noqa: N802 - stdlib naming
        url = urlparse(self.path)
        parts = [unquote(p) for p in url.path.split("/") if p]
        if parts == ["hypothesis"]:
            self._dispatch(self._hypothesis)
        elif parts == ["feedback"]:
            self._dispatch(self._feedback)
        elif parts == ["evaluate"]:
            self._dispatch(self._evaluate)
        else:
            self._fail(404, f"no such resource: {url.path}")

    # ------------------------------------------------------------ handlers

    @property
    def store(self) -> Store:
        return self.server.store

    @property
    def config(self) -> RunConfig:
        return self.server.config

    def _health(self):
        snap = self.store.take_snapshot()
        self._ok({"statements": snap.statement_count, "terms": len(list(snap.terms()))})

    def _search(self, query):
        q = query.get("q", [""])[0]
        limit = int(query.get("limit", ["10"])[0])
        snap = self.store.take_snapshot()
        results = search_mod.search(snap, q, limit)
        self._ok(
            [
                statement_doc(
                    r.statement,
                    {"relevance": r.relevance, "match_terms": sorted(r.match_terms)},
                )
                for r in results
            ]
        )

    def _term(self, term_id):
        snap = self.store.take_snapshot()
        term = snap.term(term_id)
        incident = len(snap.query(s=term_id)) + len(snap.query(o=term_id))
        self._ok(
            {
                "id": term.id,
                "label": term.label,
                "synonyms": sorted(term.synonyms),
                "kind": term.kind.value,
                "statements": incident,
            }
        )

    def _neighborhood(self, term_id, query):
        radius = int(query.get("radius", ["1"])[0])
        limit = int(query.get("limit", ["50"])[0])
        snap = self.store.take_snapshot()
        term_ids, statements = search_mod.neighborhood(snap, term_id, radius, limit)
        terms = [
            {"id": t, "label": snap.term(t).label, "kind": snap.term(t).kind.value}
            for t in term_ids
        ]
        edges = [
            statement_doc(
                st,
                {
                    "predicate_label": snap.term(st.predicate).label,
                    "derived": st.provenance.startswith("derived:"),
                },
            )
            for st in statements
        ]
        self._ok({"terms": terms, "statements": edges})

    def _hypothesis(self):
        body = self._body_json()
        expr = body.get("expr")
        if expr is None:
            raise MalformedHypothesis("body needs an 'expr' field")
        parsed = hypothesis_mod.parse_hypothesis(expr)
        snap = self.store.take_snapshot()
        score, evidence = hypothesis_mod.score_hypothesis(snap, parsed, self.config.theta_sim)
        self._ok(
            {
                "plausibility": score,
                "evidence": [
                    statement_doc(r.statement, {"relevance": r.relevance}) for r in evidence
                ],
            }
        )

    def _feedback(self):
        body = self._body_json()
        for field in ("s", "p", "o", "prov", "direction"):
            if field not in body:
                raise ValueError(f"feedback body needs {field!r}")
        key = (body["s"], body["p"], body["o"], body["prov"])
        timestamp = "0" if self.config.no_timestamps else None
        weight = search_mod.apply_feedback(
            self.store, key, body["direction"], self.config.alpha, timestamp
        )
        self._ok({"s": key[0], "p": key[1], "o": key[2], "prov": key[3], "weight": weight})

    def _concepts(self):
        snap = self.store.take_snapshot()
        clusters = {}
        for st in snap.query(p=_tid("memberOf")):
            if st.provenance != "derived:cluster":
                continue
            clusters.setdefault(st.object, []).append(st.subject)
        self._ok(
            [
                {"id": cid, "label": snap.term(cid).label, "members": sorted(members)}
                for cid, members in sorted(clusters.items())
            ]
        )

    def _taxonomy(self):
        snap = self.store.take_snapshot()
        edges = [
            {"child": st.subject, "parent": st.object, "inclusion": st.weight}
            for st in snap.query(p=_tid("subClusterOf"))
            if st.provenance == "derived:taxonomy"
        ]
        self._ok(edges)

    def _rules(self):
        snap = self.store.take_snapshot()
        hubs = {}
        for st in snap.statements():
            if st.provenance != "derived:rule":
                continue
            doc = hubs.setdefault(st.subject, {"antecedent": [], "consequent": None, "confidence": None})
            if st.predicate == _tid("hasAntecedentFeature"):
                doc["antecedent"].append(snap.term(st.object).label)
            elif st.predicate == _tid("hasConsequentFeature"):
                doc["consequent"] = snap.term(st.object).label
            elif st.predicate == _tid("hasConfidence"):
                doc["confidence"] = float(snap.term(st.object).label)
        for doc in hubs.values():
            doc["antecedent"].sort()
        self._ok([{"id": hub, **doc} for hub, doc in sorted(hubs.items())])

    def _evaluate(self):
        body = self._body_json()
        system = body.get("system")
        gold = body.get("gold")
        theta = float(body.get("theta_match", self.config.theta_match))
        if not isinstance(system, list) or not isinstance(gold, list):
            raise ValueError("evaluate body needs 'system' and 'gold' arrays")
        snap = self.store.take_snapshot()
        sims = search_mod.derived_similarity_index(snap)
        precision, recall = evaluate_mod.evaluate_against_gold(
            [tuple(t) for t in system], [tuple(t) for t in gold], theta, sims
        )
        self._ok({"precision": precision, "recall": recall})


def _tid(label: str) -> str:
    return "t:" + slug(label)


class LhcServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, store: Store, config: RunConfig, host="127.0.0.1", port=None, verbose=False):
        self.store = store
        self.config = config
        self.verbose = verbose
        super().__init__((host, port if port is not None else config.port), LhcRequestHandler)


def serve(store: Store, config: RunConfig, host="127.0.0.1", verbose=True) -> LhcServer:
    """Bind and return the server; caller runs serve_forever()."""
    server = LhcServer(store, config, host=host, verbose=verbose)
    return server


def start_background(store: Store, config: RunConfig, host="127.0.0.1", port=0):
    """Server on an ephemeral port in a daemon thread (tests, UI dev)."""
    server = LhcServer(store, config, host=host, port=port, verbose=False)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, thread
