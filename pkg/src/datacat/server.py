"""HTTP service exposing browsing, annotation, querying and reports.

Fragments never reach a server inside a request target, so selectors
travel in the ``sel`` query parameter while canonical IRIs keep their
``#`` form; the server translates between the two.  All /api/* routes
speak JSON; /report, /vocab and the shell at ``/`` return HTML.

Error contract: every failure returns ``{"error": {"code", "message"}}``
with a stable machine code:

    404 UnknownResource          unregistered IRI
    400 SyntaxError              malformed selector fragment
    400 BoundsError              zero index, inverted range, '*' start
    400 OutOfBounds              selector starts beyond the resource
    400 SelectorKindMismatch     line selector on a table or vice versa
    400 MalformedTriple          RDF model violation (e.g. literal subject)
    400 ParseError               bad term, triple or query text
    400 UnboundSelectedVariable  selected query variable not in any pattern
    400 NotATable                table-only operation on a text resource
"""

from __future__ import annotations

import html
import math
from pathlib import Path

from fastapi import Body, FastAPI, Request
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .deeplink import (
    clamp_line_selector,
    clamp_table_selector,
    col_to_letters,
    parse_fragment,
    serialize,
)
from .errors import (
    DatacatError,
    MalformedTripleError,
    NotATableError,
    ParseError,
    UnknownResourceError,
)
from .graphstore import (
    Iri,
    Triple,
    TriplePattern,
    TripleStore,
    Variable,
    parse_term,
    save_graph,
    term_to_ntriples,
    triple_sort_key,
)
from .profiler import DEFAULT_HISTOGRAM_CAP, profile_table_to_triples
from .querytext import parse_query
from .reportgen import default_template, render_report
from .resources import ResourceRegistry, TableResource, TextResource
from .vocab import VOCAB_TERMS, Vocabulary

PAGE_SIZE = 50

CODE_STATUS = {
    "UnknownResource": 404,
    "SyntaxError": 400,
    "BoundsError": 400,
    "OutOfBounds": 400,
    "SelectorKindMismatch": 400,
    "MalformedTriple": 400,
    "ParseError": 400,
    "UnboundSelectedVariable": 400,
    "NotATable": 400,
}


def _page_window(page: int | None, anchor: int, total: int) -> tuple[int, int, int, int]:
    """Clamp paging: returns (page, page_count, start, end) over 1..total."""
    count = max(1, math.ceil(total / PAGE_SIZE))
    if page is None:
        page = max(1, math.ceil(anchor / PAGE_SIZE))
    page = min(max(1, page), count)
    start = (page - 1) * PAGE_SIZE + 1
    end = min(total, page * PAGE_SIZE)
    return page, count, start, end


def _table_view(table: TableResource, sel_text: str | None, page: int | None) -> dict:
    selection = None
    anchor = 1
    if sel_text is not None:
        selector = parse_fragment(sel_text)
        r1, c1, r2, c2 = clamp_table_selector(selector, table.row_count, table.col_count)
        canonical = serialize(selector)
        selection = {
            "sel": canonical,
            "iri": f"{table.base_iri}#{canonical}",
            "bounds": {"startRow": r1, "startCol": c1, "endRow": r2, "endCol": c2},
        }
        anchor = r1
    page, count, start, end = _page_window(page, anchor, table.row_count)
    base = table.base_iri
    cells = [
        [
            {"value": table.cell(r, c), "iri": f"{base}#cell={r},{c}"}
            for c in range(1, table.col_count + 1)
        ]
        for r in range(start, end + 1)
    ]
    column_headers = [
        {
            "label": col_to_letters(c),
            "iri": f"{base}#col={c}",
            "header": table.cell(1, c) if table.header_row else None,
        }
        for c in range(1, table.col_count + 1)
    ]
    row_headers = [{"label": str(r), "iri": f"{base}#row={r}"} for r in range(start, end + 1)]
    return {
        "iri": base,
        "kind": "table",
        "name": table.name,
        "rows": table.row_count,
        "cols": table.col_count,
        "headerRow": table.header_row,
        "page": {"number": page, "size": PAGE_SIZE, "count": count, "startRow": start, "endRow": end},
        "selection": selection,
        "columnHeaders": column_headers,
        "rowHeaders": row_headers,
        "cells": cells,
    }


def _text_view(text: TextResource, sel_text: str | None, page: int | None) -> dict:
    selection = None
    anchor = 1
    if sel_text is not None:
        selector = parse_fragment(sel_text)
        l1, l2 = clamp_line_selector(selector, text.line_count)
        canonical = serialize(selector)
        selection = {
            "sel": canonical,
            "iri": f"{text.base_iri}#{canonical}",
            "bounds": {"startLine": l1, "endLine": l2},
        }
        anchor = l1
    page, count, start, end = _page_window(page, anchor, text.line_count)
    items = [
        {"number": n, "value": text.lines[n - 1], "iri": f"{text.base_iri}#line={n}"}
        for n in range(start, end + 1)
    ]
    return {
        "iri": text.base_iri,
        "kind": "text",
        "name": text.name,
        "lines": text.line_count,
        "page": {"number": page, "size": PAGE_SIZE, "count": count, "startLine": start, "endLine": end},
        "selection": selection,
        "items": items,
    }


def _resource_summary(resource) -> dict:
    if resource.kind == "table":
        return {
            "iri": resource.base_iri,
            "kind": "table",
            "name": resource.name,
            "rows": resource.row_count,
            "cols": resource.col_count,
        }
    return {
        "iri": resource.base_iri,
        "kind": "text",
        "name": resource.name,
        "lines": resource.line_count,
    }


def _vocab_page(vocab: Vocabulary) -> str:
    rows = "\n".join(
        f'<tr id="{name}"><td><code>du:{name}</code></td><td>{kind}</td>'
        f"<td>{html.escape(doc)}</td></tr>"
        for name, kind, doc in VOCAB_TERMS
    )
    return f"""<!DOCTYPE html>
<html lang="en"><head><meta charset="utf-8"><title>Catalog vocabulary</title>
<style>body {{ font-family: system-ui, sans-serif; margin: 2rem auto; max-width: 50rem; }}
table {{ border-collapse: collapse; }} td, th {{ border: 1px solid #ccc; padding: .4rem .7rem; text-align: left; }}</style>
</head><body>
<h1>Catalog vocabulary</h1>
<p>Namespace: <code>{html.escape(vocab.namespace)}</code> (prefix <code>du:</code>)</p>
<table><tr><th>Term</th><th>Kind</th><th>Meaning</th></tr>
{rows}
</table></body></html>
"""


def _shell_page(registry: ResourceRegistry) -> str:
    items = []
    for res in registry.resources():
        iri = html.escape(res.base_iri, quote=True)
        label = html.escape(res.name)
        extra = ""
        if res.kind == "table":
            extra = f' — <a href="/report?iri={iri}">report</a>'
        items.append(
            f'<li><code>{html.escape(res.base_iri)}</code> '
            f'(<a href="/api/resource?iri={iri}">{label}</a>{extra})</li>'
        )
    listing = "\n".join(items) or "<li>no resources registered</li>"
    return f"""<!DOCTYPE html>
<html lang="en"><head><meta charset="utf-8"><title>Data catalog</title>
<style>body {{ font-family: system-ui, sans-serif; margin: 2rem auto; max-width: 50rem; }}</style>
</head><body>
<h1>Data catalog</h1>
<p>The browser UI is not installed; the JSON API is fully available under <code>/api/</code>.</p>
<ul>
{listing}
</ul>
<p>See also the <a href="/vocab">vocabulary reference</a>.</p>
</body></html>
"""


def _split_iri(iri: str, sel: str | None) -> tuple[str, str | None]:
    """Allow clients to pass a full deep link; the sel parameter wins."""
    base, _, fragment = iri.partition("#")
    if sel is None and fragment:
        return base, fragment
    return base, sel


def create_app(
    registry: ResourceRegistry,
    store: TripleStore,
    graph_path: Path | str | None = None,
    histogram_cap: int = DEFAULT_HISTOGRAM_CAP,
    ui_dir: Path | str | None = None,
) -> FastAPI:
    """Wire the registry and store into the HTTP application."""
    vocab = Vocabulary(registry.origin)
    app = FastAPI(title="datacat", docs_url=None, redoc_url=None)

    def persist() -> None:
        if graph_path is not None:
            save_graph(store, graph_path)

    @app.exception_handler(DatacatError)
    def on_datacat_error(request: Request, exc: DatacatError) -> JSONResponse:
        return JSONResponse(
            status_code=CODE_STATUS.get(exc.code, 500),
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    def lookup(iri: str):
        resource = registry.lookup(iri)
        if resource is None:
            raise UnknownResourceError(f"no resource registered for {iri!r}")
        return resource

    @app.get("/api/resources")
    def list_resources() -> dict:
        return {"resources": [_resource_summary(r) for r in registry.resources()]}

    @app.get("/api/resource")
    def resource_view(iri: str, sel: str | None = None, page: int | None = None) -> dict:
        base, sel = _split_iri(iri, sel)
        resource = lookup(base)
        if resource.kind == "table":
            return _table_view(resource, sel, page)
        return _text_view(resource, sel, page)

    @app.post("/api/triples")
    def add_triple(payload: dict = Body(...)) -> JSONResponse:
        for key in ("subject", "predicate", "object"):
            if not isinstance(payload.get(key), str):
                raise MalformedTripleError(f"triple body needs a string {key!r} field")
        triple = Triple(
            parse_term(payload["subject"]),
            parse_term(payload["predicate"]),
            parse_term(payload["object"]),
        )
        inserted = store.insert(triple)
        if inserted:
            persist()
        return JSONResponse(
            status_code=201 if inserted else 200,
            content={
                "inserted": inserted,
                "triple": {
                    "subject": term_to_ntriples(triple.subject),
                    "predicate": term_to_ntriples(triple.predicate),
                    "object": term_to_ntriples(triple.object),
                },
            },
        )

    @app.get("/api/triples")
    def list_triples(subject: str) -> dict:
        if subject.startswith(("<", "_:", '"')):
            term = parse_term(subject)
        else:
            term = Iri(subject)
        matches = store.match_pattern(TriplePattern(term, Variable("p"), Variable("o")))
        matches.sort(key=triple_sort_key)
        return {
            "subject": term_to_ntriples(term),
            "triples": [
                {
                    "subject": term_to_ntriples(t.subject),
                    "predicate": term_to_ntriples(t.predicate),
                    "object": term_to_ntriples(t.object),
                }
                for t in matches
            ],
        }

    @app.post("/api/query")
    def run_query(payload: dict = Body(...)) -> dict:
        if not isinstance(payload.get("query"), str):
            raise ParseError("query body needs a string 'query' field")
        query = parse_query(payload["query"], vocab.prefixes)
        rows = store.query(query)
        return {
            "vars": list(query.variables),
            "bindings": [
                {name: term_to_ntriples(term) for name, term in row.items()} for row in rows
            ],
        }

    @app.post("/api/profile")
    def profile_resource(iri: str) -> dict:
        base, _ = _split_iri(iri, None)
        resource = lookup(base)
        if resource.kind != "table":
            raise NotATableError(f"{base!r} is a text resource; only tables can be profiled")
        triples = profile_table_to_triples(resource, vocab, histogram_cap=histogram_cap)
        added = store.insert_all(triples)
        if added:
            persist()
        return {"iri": base, "columns": resource.col_count, "triplesAdded": added}

    @app.get("/report", response_class=HTMLResponse)
    def report(iri: str) -> str:
        base, _ = _split_iri(iri, None)
        resource = lookup(base)
        if resource.kind != "table":
            raise NotATableError(f"{base!r} is a text resource; reports cover tables")
        return render_report(store, resource, default_template(), vocab)

    @app.get("/vocab", response_class=HTMLResponse)
    def vocabulary_reference() -> str:
        return _vocab_page(vocab)

    ui = Path(ui_dir) if ui_dir is not None else None
    if ui is not None and (ui / "index.html").is_file():
        app.mount("/", StaticFiles(directory=ui, html=True), name="ui")
    else:

        @app.get("/", response_class=HTMLResponse)
        def shell() -> str:
            return _shell_page(registry)

    return app
