"""HTML reports rendered from the graph through a tiny template language.

A template is HTML text with embedded query placeholders:

    {{query: <BGP text> |order: -?v:num |limit: N | <body> |empty: <fallback>}}

The query runs against the store; the body renders once per result row
with ``{var}`` interpolation (``order:``, ``limit:`` and ``|empty:``
are optional).  Interpolated values are HTML-escaped in body text but
substituted verbatim inside nested query text, so an outer binding can
ground an inner pattern (written ``<{c}>``).  ``{var:bar}`` renders a
text bar of block characters proportional to the variable's numeric
value relative to the other rows of the same placeholder.

Rendering is deterministic: query results come back in the store's
canonical order, and sorting directives are stable.
"""

from __future__ import annotations

import html
import re
from dataclasses import dataclass, field
from typing import Union

from .errors import TemplateSyntaxError
from .graphstore import BindingSet, BlankNode, Iri, Literal, TripleStore, term_to_ntriples
from .querytext import parse_query
from .resources import TableResource
from .vocab import Vocabulary

BAR_CHAR = "▇"
BAR_MAX_BLOCKS = 20

TABLE_CONTEXT_NAMES = frozenset({"table.iri", "table.name", "table.rows", "table.cols"})

_VAR_TOKEN_RE = re.compile(r"\{([A-Za-z_][A-Za-z0-9_.]*)(:bar)?\}")
_ORDER_RE = re.compile(r"^\s*order:\s*(-)?\?([A-Za-z_][A-Za-z0-9_]*)(:num)?\s*$")
_LIMIT_RE = re.compile(r"^\s*limit:\s*([0-9]+)\s*$")
_SELECT_VARS_RE = re.compile(r"\?([A-Za-z_][A-Za-z0-9_]*)")


@dataclass(frozen=True)
class _Placeholder:
    query_text: str
    body: tuple
    fallback: tuple
    order_var: str | None = None
    order_desc: bool = False
    order_numeric: bool = False
    limit: int | None = None
    selected: tuple[str, ...] = ()


_Node = Union[str, _Placeholder]


def _split_top_level(text: str, sep: str = "|") -> list[str]:
    """Split on a separator, ignoring separators inside nested {{ }}."""
    parts = []
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        if text.startswith("{{", i):
            depth += 1
            i += 2
        elif text.startswith("}}", i):
            depth -= 1
            i += 2
        elif depth == 0 and text[i] == sep:
            parts.append(text[start:i])
            start = i + 1
            i += 1
        else:
            i += 1
    parts.append(text[start:])
    return parts


def _find_close(text: str, start: int) -> int:
    """Index of the '}}' closing the '{{' at start, honoring nesting."""
    depth = 0
    i = start
    while i < len(text):
        if text.startswith("{{", i):
            depth += 1
            i += 2
        elif text.startswith("}}", i):
            depth -= 1
            if depth == 0:
                return i
            i += 2
        else:
            i += 1
    raise TemplateSyntaxError("unterminated placeholder: missing '}}'")


def _selected_vars(query_text: str) -> tuple[str, ...]:
    m = re.search(r"\bwhere\b", query_text, re.IGNORECASE)
    head = query_text[: m.start()] if m else query_text
    return tuple(_SELECT_VARS_RE.findall(head))


def _parse_nodes(text: str, scope: frozenset[str]) -> tuple[_Node, ...]:
    nodes: list[_Node] = []
    pos = 0
    while True:
        start = text.find("{{query:", pos)
        if start < 0:
            nodes.append(text[pos:])
            break
        nodes.append(text[pos:start])
        end = _find_close(text, start)
        inner = text[start + len("{{query:") : end]
        nodes.append(_parse_placeholder(inner, scope))
        pos = end + 2
    for node in nodes:
        if isinstance(node, str):
            _check_tokens(node, scope)
    return tuple(node for node in nodes if node != "")


def _check_tokens(text: str, scope: frozenset[str]) -> None:
    for m in _VAR_TOKEN_RE.finditer(text):
        if m.group(1) not in scope:
            raise TemplateSyntaxError(f"placeholder references unknown variable {{{m.group(1)}}}")


def _parse_placeholder(inner: str, scope: frozenset[str]) -> _Placeholder:
    segments = _split_top_level(inner)
    if len(segments) < 2:
        raise TemplateSyntaxError("placeholder needs '{{query: <query> | <body>}}'")
    query_text = segments[0]
    _check_tokens(query_text, scope)
    selected = _selected_vars(query_text)
    inner_scope = scope | set(selected)

    order_var: str | None = None
    order_desc = False
    order_numeric = False
    limit: int | None = None
    rest = segments[1:]
    while rest:
        m = _ORDER_RE.match(rest[0])
        if m:
            order_desc = m.group(1) == "-"
            order_var = m.group(2)
            order_numeric = m.group(3) is not None
            if order_var not in selected:
                raise TemplateSyntaxError(f"order: variable ?{order_var} is not selected")
            rest = rest[1:]
            continue
        m = _LIMIT_RE.match(rest[0])
        if m:
            limit = int(m.group(1))
            rest = rest[1:]
            continue
        break
    if not rest:
        raise TemplateSyntaxError("placeholder has directives but no body")

    fallback_text: str | None = None
    if rest and rest[-1].lstrip().startswith("empty:"):
        stripped = rest[-1].lstrip()
        fallback_text = stripped[len("empty:") :]
        rest = rest[:-1]
    if not rest:
        raise TemplateSyntaxError("placeholder has an empty: fallback but no body")
    body_text = "|".join(rest)

    return _Placeholder(
        query_text=query_text,
        body=_parse_nodes(body_text, inner_scope),
        fallback=_parse_nodes(fallback_text, scope) if fallback_text is not None else (),
        order_var=order_var,
        order_desc=order_desc,
        order_numeric=order_numeric,
        limit=limit,
        selected=selected,
    )


@dataclass(frozen=True)
class ReportTemplate:
    """A named template; the body text is its serialized form."""

    name: str
    body: str
    context_names: frozenset[str] = field(default=TABLE_CONTEXT_NAMES, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", _parse_nodes(self.body, self.context_names))

    def to_text(self) -> str:
        return self.body

    @classmethod
    def from_text(cls, name: str, text: str) -> "ReportTemplate":
        return cls(name=name, body=text)


def _display(value) -> str:
    if isinstance(value, Iri):
        return value.value
    if isinstance(value, Literal):
        return value.lexical
    if isinstance(value, BlankNode):
        return "_:" + value.label
    return str(value)


def _numeric(term) -> float | None:
    if isinstance(term, Literal):
        try:
            return float(term.lexical)
        except ValueError:
            return None
    return None


class _Renderer:
    def __init__(self, store: TripleStore, prefixes: dict[str, str]):
        self.store = store
        self.prefixes = prefixes

    def render(self, nodes: tuple[_Node, ...], env: dict, bar_max: dict[str, float]) -> str:
        out = []
        for node in nodes:
            if isinstance(node, str):
                out.append(self._substitute(node, env, bar_max, escape=True))
            else:
                out.append(self._render_placeholder(node, env, bar_max))
        return "".join(out)

    def _substitute(self, text: str, env: dict, bar_max: dict[str, float], escape: bool) -> str:
        def repl(m: re.Match) -> str:
            name, bar = m.group(1), m.group(2)
            value = env[name]
            if bar:
                return self._bar(value, bar_max.get(name, 0.0))
            rendered = _display(value)
            return html.escape(rendered, quote=True) if escape else rendered

        return _VAR_TOKEN_RE.sub(repl, text)

    @staticmethod
    def _bar(value, peak: float) -> str:
        number = _numeric(value)
        if number is None or number <= 0 or peak <= 0:
            return ""
        return BAR_CHAR * max(1, round(number / peak * BAR_MAX_BLOCKS))

    def _render_placeholder(self, ph: _Placeholder, env: dict, bar_max: dict[str, float]) -> str:
        query_text = self._substitute(ph.query_text, env, bar_max, escape=False)
        rows = self.store.query(parse_query(query_text, self.prefixes))
        if ph.order_var is not None:
            rows = self._order(rows, ph)
        if ph.limit is not None:
            rows = rows[: ph.limit]
        if not rows:
            return self.render(ph.fallback, env, bar_max)
        peaks = dict(bar_max)
        for name in ph.selected:
            numbers = [n for n in (_numeric(row.get(name)) for row in rows) if n is not None]
            if numbers:
                peaks[name] = max(numbers)
        out = []
        for row in rows:
            row_env = dict(env)
            row_env.update(row)
            out.append(self.render(ph.body, row_env, peaks))
        return "".join(out)

    @staticmethod
    def _order(rows: list[BindingSet], ph: _Placeholder) -> list[BindingSet]:
        def key(row: BindingSet):
            term = row[ph.order_var]
            if ph.order_numeric:
                number = _numeric(term)
                return float("inf") if number is None else number
            return term_to_ntriples(term)

        return sorted(rows, key=key, reverse=ph.order_desc)


def render_report(
    store: TripleStore,
    table: TableResource,
    template: ReportTemplate,
    vocab: Vocabulary | None = None,
) -> str:
    """Render a template against the store for one table resource."""
    vocab = vocab or Vocabulary()
    env = {
        "table.iri": table.base_iri,
        "table.name": table.name,
        "table.rows": str(table.row_count),
        "table.cols": str(table.col_count),
    }
    renderer = _Renderer(store, vocab.prefixes)
    with store.reading():
        return renderer.render(template.nodes, env, {})


DEFAULT_TEMPLATE_BODY = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>Report: {table.name}</title>
<style>
body { font-family: Georgia, 'Times New Roman', serif; margin: 2rem auto; max-width: 56rem; padding: 0 1rem; color: #1c1c1c; }
h1 { border-bottom: 3px double #999; padding-bottom: 0.4rem; }
p.resource { color: #444; }
code { background: #f3f3f0; padding: 0.1rem 0.3rem; }
section.column { margin: 1.6rem 0; padding: 0.8rem 1.2rem; border: 1px solid #d8d8d2; }
section.column h2 { font-size: 1.05rem; margin: 0.2rem 0 0.8rem 0; word-break: break-all; }
section.column h2 a { color: #14507a; text-decoration: none; }
span.header { color: #666; font-weight: normal; }
table.stats, table.hist { border-collapse: collapse; margin: 0.4rem 0 0.8rem 0; }
table.stats th { text-align: left; padding: 0.15rem 1.2rem 0.15rem 0; font-weight: normal; color: #555; }
table.stats td { padding: 0.15rem 0; }
table.hist td { padding: 0.1rem 0.8rem 0.1rem 0; }
td.value { max-width: 22rem; overflow-wrap: anywhere; }
td.count { text-align: right; color: #555; }
td.chart { color: #3a74a3; white-space: nowrap; }
h3 { font-size: 0.95rem; margin: 1rem 0 0.2rem 0; }
section.empty { margin: 2rem 0; padding: 1rem; background: #f7f7f2; color: #555; }
</style>
</head>
<body>
<h1>Data report</h1>
<p class="resource">Resource <code>{table.iri}</code> &mdash; {table.rows} rows &times; {table.cols} columns</p>
{{query: SELECT ?c WHERE { ?c du:ofResource <{table.iri}> . ?c rdf:type du:Column } |
<section class="column">
<h2><a href="{c}" title="Open this column in the data browser">{c}</a>{{query: SELECT ?label WHERE { <{c}> rdfs:label ?label } | <span class="header"> ({label})</span> |empty:}}</h2>
<table class="stats">
{{query: SELECT ?total ?distinct ?blank ?empty WHERE { <{c}> du:totalCount ?total . <{c}> du:distinctCount ?distinct . <{c}> du:blankCount ?blank . <{c}> du:emptyCount ?empty } |
<tr><th>total values</th><td>{total}</td></tr>
<tr><th>distinct values</th><td>{distinct}</td></tr>
<tr><th>blank values</th><td>{blank}</td></tr>
<tr><th>empty values</th><td>{empty}</td></tr>}}
{{query: SELECT ?min ?avg ?sd ?max WHERE { <{c}> du:minLength ?min . <{c}> du:avgLength ?avg . <{c}> du:stdDevLength ?sd . <{c}> du:maxLength ?max } |
<tr><th>value length</th><td>min {min}, avg {avg}, stddev {sd}, max {max}</td></tr>
|empty: <tr><th>value length</th><td>no values</td></tr>}}
</table>
<h3>Most frequent values</h3>
<table class="hist">
{{query: SELECT ?f ?v WHERE { <{c}> du:histogramEntry ?e . ?e du:frequency ?f . ?e du:value ?v } |order: -?f:num |limit: 10 |
<tr><td class="value">{v}</td><td class="count">{f}</td><td class="chart">{f:bar}</td></tr>}}
</table>
</section>
|empty: <section class="empty">No analyses recorded for this resource.</section>}}
</body>
</html>
"""


def default_template() -> ReportTemplate:
    """The built-in report: resource summary, per-column statistics and
    a top-10 histogram for each profiled column."""
    return ReportTemplate(name="default", body=DEFAULT_TEMPLATE_BODY)
