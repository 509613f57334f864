"""Text form of basic graph pattern queries.

    SELECT ?c WHERE { ?c du:distinctCount "1"^^xsd:integer }

Terms use N-Triples syntax (IRIs in angle brackets, quoted literals
with optional ``^^datatype`` or ``@lang``); prefixed names expand
through a prefix map with ``rdf:``, ``rdfs:``, ``xsd:`` and ``du:``
available by default.  Patterns are separated by ``.``; the trailing
dot is optional.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .graphstore import (
    BGPQuery,
    Iri,
    Literal,
    MalformedTripleError,
    PatternTerm,
    TriplePattern,
    Variable,
    _Scanner,
)
from .vocab import Vocabulary

_PREFIXED_RE = re.compile(r"([A-Za-z][A-Za-z0-9_\-]*):([A-Za-z_][A-Za-z0-9_\-.]*)")
_VAR_TOKEN_RE = re.compile(r"\?([A-Za-z_][A-Za-z0-9_]*)")

_DEFAULT_PREFIXES = Vocabulary().prefixes


class _QueryScanner(_Scanner):
    """Extends the term scanner with variables and prefixed names."""

    def __init__(self, text: str, prefixes: dict[str, str]):
        super().__init__(text)
        self.prefixes = prefixes

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def expand(self, prefix: str, local: str) -> Iri:
        namespace = self.prefixes.get(prefix)
        if namespace is None:
            raise self.error(f"unknown prefix {prefix!r}")
        try:
            return Iri(namespace + local)
        except MalformedTripleError as exc:
            raise ParseError(str(exc)) from exc

    def scan_pattern_term(self) -> PatternTerm:
        ch = self.peek()
        if ch == "?":
            m = _VAR_TOKEN_RE.match(self.text, self.pos)
            if not m:
                raise self.error("bad variable name")
            self.pos = m.end()
            return Variable(m.group(1))
        if ch == "<" or self.text.startswith("_:", self.pos):
            return self.scan_term()
        if ch == '"':
            return self.scan_literal()
        m = _PREFIXED_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return self.expand(m.group(1), m.group(2))
        raise self.error(f"expected a term or variable, found {self.text[self.pos:self.pos + 12]!r}")

    def scan_literal(self) -> Literal:
        lexical = self.scan_quoted()
        try:
            if self.peek() == "@":
                return Literal(lexical, lang=self.scan_lang_tag())
            if self.text.startswith("^^", self.pos):
                self.pos += 2
                if self.peek() == "<":
                    return Literal(lexical, self.scan_iri().value)
                m = _PREFIXED_RE.match(self.text, self.pos)
                if not m:
                    raise self.error("bad datatype after '^^'")
                self.pos = m.end()
                return Literal(lexical, self.expand(m.group(1), m.group(2)).value)
            return Literal(lexical)
        except MalformedTripleError as exc:
            raise ParseError(str(exc)) from exc


def parse_query(text: str, prefixes: dict[str, str] | None = None) -> BGPQuery:
    """Parse query text into a BGPQuery; raises ParseError when malformed."""
    scanner = _QueryScanner(text, prefixes if prefixes is not None else _DEFAULT_PREFIXES)
    scanner.skip_ws()
    if not re.match(r"select\b", scanner.text[scanner.pos:], re.IGNORECASE):
        raise scanner.error("query must start with SELECT")
    scanner.pos += len("select")

    variables: list[str] = []
    while True:
        scanner.skip_ws()
        if scanner.peek() != "?":
            break
        m = _VAR_TOKEN_RE.match(scanner.text, scanner.pos)
        if not m:
            raise scanner.error("bad variable name in SELECT list")
        variables.append(m.group(1))
        scanner.pos = m.end()
    if not variables:
        raise scanner.error("SELECT list needs at least one ?variable")

    if not re.match(r"where\b", scanner.text[scanner.pos:], re.IGNORECASE):
        raise scanner.error("expected WHERE after the SELECT list")
    scanner.pos += len("where")
    scanner.skip_ws()
    if scanner.peek() != "{":
        raise scanner.error("expected '{' after WHERE")
    scanner.pos += 1

    patterns: list[TriplePattern] = []
    while True:
        scanner.skip_ws()
        if scanner.peek() == "}":
            scanner.pos += 1
            break
        if scanner.at_end():
            raise scanner.error("unterminated pattern group, expected '}'")
        subject = scanner.scan_pattern_term()
        scanner.skip_ws()
        predicate = scanner.scan_pattern_term()
        scanner.skip_ws()
        obj = scanner.scan_pattern_term()
        patterns.append(TriplePattern(subject, predicate, obj))
        scanner.skip_ws()
        if scanner.peek() == ".":
            scanner.pos += 1
        elif scanner.peek() != "}":
            raise scanner.error("expected '.' or '}' after a pattern")

    scanner.skip_ws()
    if not scanner.at_end():
        raise scanner.error("trailing characters after '}'")
    return BGPQuery(tuple(variables), tuple(patterns))
