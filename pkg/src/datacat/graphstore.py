"""Embedded RDF triple store with set semantics.

Terms are IRIs, literals (typed or language-tagged) and blank nodes.
The store keeps per-position indexes so ground-position pattern matching
stays sublinear, answers basic-graph-pattern queries by natural join,
and round-trips through sorted, byte-deterministic N-Triples.

Concurrency contract: many concurrent readers or one writer.  Readers
take a shared lock for the duration of a call, so every query sees a
consistent snapshot.
"""

from __future__ import annotations

import re
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Union

from .errors import (
    MalformedTripleError,
    ParseError,
    UnboundSelectedVariableError,
)
from .vocab import RDF_LANG_STRING, XSD_STRING

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_BLANK_LABEL_RE = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_.\-]*$")
_LANG_RE = re.compile(r"^[A-Za-z]+(-[A-Za-z0-9]+)*$")
_VAR_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI."""

    value: str

    def __post_init__(self):
        if not _SCHEME_RE.match(self.value):
            raise MalformedTripleError(f"IRI must be absolute (have a scheme): {self.value!r}")


@dataclass(frozen=True, slots=True)
class Literal:
    """A literal with lexical form, datatype IRI, and optional language tag.

    Plain literals get the string datatype; a language tag forces the
    language-string datatype.  Tags are lowercased on construction so
    equality matches RDF's case-insensitive tag comparison.
    """

    lexical: str
    datatype: str = XSD_STRING
    lang: str | None = None

    def __post_init__(self):
        if self.lang is not None:
            if not _LANG_RE.match(self.lang):
                raise MalformedTripleError(f"bad language tag: {self.lang!r}")
            object.__setattr__(self, "lang", self.lang.lower())
            if self.datatype not in (XSD_STRING, RDF_LANG_STRING):
                raise MalformedTripleError(
                    f"language-tagged literal cannot have datatype {self.datatype!r}"
                )
            object.__setattr__(self, "datatype", RDF_LANG_STRING)
        elif self.datatype == RDF_LANG_STRING:
            raise MalformedTripleError("language-string literal requires a language tag")
        elif not _SCHEME_RE.match(self.datatype):
            raise MalformedTripleError(f"datatype must be an absolute IRI: {self.datatype!r}")


@dataclass(frozen=True, slots=True)
class BlankNode:
    """A blank node with a local label."""

    label: str

    def __post_init__(self):
        if not _BLANK_LABEL_RE.match(self.label) or self.label.endswith("."):
            raise MalformedTripleError(f"bad blank node label: {self.label!r}")


Term = Union[Iri, Literal, BlankNode]


@dataclass(frozen=True, slots=True)
class Triple:
    """A subject-predicate-object statement."""

    subject: Union[Iri, BlankNode]
    predicate: Iri
    object: Term

    def __post_init__(self):
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise MalformedTripleError("triple subject must be an IRI or blank node")
        if not isinstance(self.predicate, Iri):
            raise MalformedTripleError("triple predicate must be an IRI")
        if not isinstance(self.object, (Iri, Literal, BlankNode)):
            raise MalformedTripleError("triple object must be an RDF term")


@dataclass(frozen=True, slots=True)
class Variable:
    """A query variable, written ``?name`` in query text."""

    name: str

    def __post_init__(self):
        if not _VAR_RE.match(self.name):
            raise MalformedTripleError(f"bad variable name: {self.name!r}")


PatternTerm = Union[Iri, Literal, BlankNode, Variable]


@dataclass(frozen=True, slots=True)
class TriplePattern:
    """A triple with variables allowed in any position."""

    subject: PatternTerm
    predicate: PatternTerm
    object: PatternTerm

    def positions(self) -> tuple[PatternTerm, PatternTerm, PatternTerm]:
        return (self.subject, self.predicate, self.object)

    def variables(self) -> set[str]:
        return {p.name for p in self.positions() if isinstance(p, Variable)}


@dataclass(frozen=True, slots=True)
class BGPQuery:
    """Selected variables plus an ordered list of patterns to join."""

    variables: tuple[str, ...]
    patterns: tuple[TriplePattern, ...]


BindingSet = dict[str, Term]


# ---------------------------------------------------------------------------
# N-Triples serialization

_LITERAL_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r"}
_IRI_FORBIDDEN = set('<>"{}|^`\\') | {chr(c) for c in range(0x21)}


def _escape_literal(text: str) -> str:
    return "".join(_LITERAL_ESCAPES.get(ch, ch) for ch in text)


def _escape_iri(text: str) -> str:
    out = []
    for ch in text:
        if ch in _IRI_FORBIDDEN:
            cp = ord(ch)
            out.append(f"\\u{cp:04X}" if cp <= 0xFFFF else f"\\U{cp:08X}")
        else:
            out.append(ch)
    return "".join(out)


def term_to_ntriples(term: Term) -> str:
    """The N-Triples text of one term (string datatype left implicit)."""
    if isinstance(term, Iri):
        return f"<{_escape_iri(term.value)}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        quoted = f'"{_escape_literal(term.lexical)}"'
        if term.lang is not None:
            return f"{quoted}@{term.lang}"
        if term.datatype != XSD_STRING:
            return f"{quoted}^^<{_escape_iri(term.datatype)}>"
        return quoted
    raise TypeError(f"not an RDF term: {term!r}")


def triple_to_ntriples(triple: Triple) -> str:
    return (
        f"{term_to_ntriples(triple.subject)} {term_to_ntriples(triple.predicate)} "
        f"{term_to_ntriples(triple.object)} ."
    )


def triple_sort_key(triple: Triple) -> tuple[str, str, str]:
    """Export order: serialized subject, then predicate, then object."""
    return (
        term_to_ntriples(triple.subject),
        term_to_ntriples(triple.predicate),
        term_to_ntriples(triple.object),
    )


# ---------------------------------------------------------------------------
# N-Triples / term parsing

_UCHAR_RE = re.compile(r"\\u([0-9A-Fa-f]{4})|\\U([0-9A-Fa-f]{8})")
_ECHARS = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def _unescape_iri(raw: str, line: int | None) -> str:
    def repl(m: re.Match) -> str:
        return chr(int(m.group(1) or m.group(2), 16))

    if "\\" in raw:
        rest = _UCHAR_RE.sub(repl, raw)
        if "\\" in rest:
            raise ParseError(f"bad escape in IRI: {raw!r}", line)
        raw = rest
    for ch in raw:
        if ch in _IRI_FORBIDDEN:
            raise ParseError(f"character {ch!r} not allowed in IRI: {raw!r}", line)
    return raw


class _Scanner:
    """Cursor over one line (or one standalone term) of N-Triples text."""

    def __init__(self, text: str, line: int | None = None):
        self.text = text
        self.pos = 0
        self.line = line

    def error(self, message: str) -> ParseError:
        return ParseError(f"{message} (at offset {self.pos})", self.line)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def scan_term(self) -> Term:
        ch = self.peek()
        if ch == "<":
            return self.scan_iri()
        if ch == '"':
            return self.scan_literal()
        if self.text.startswith("_:", self.pos):
            return self.scan_blank()
        raise self.error(f"expected an RDF term, found {self.text[self.pos:self.pos + 10]!r}")

    def scan_iri(self) -> Iri:
        end = self.text.find(">", self.pos + 1)
        if end < 0:
            raise self.error("unterminated IRI")
        raw = self.text[self.pos + 1 : end]
        self.pos = end + 1
        value = _unescape_iri(raw, self.line)
        try:
            return Iri(value)
        except MalformedTripleError as exc:
            raise ParseError(str(exc), self.line) from exc

    def scan_blank(self) -> BlankNode:
        m = re.compile(r"_:([A-Za-z0-9_][A-Za-z0-9_.\-]*)").match(self.text, self.pos)
        if not m:
            raise self.error("bad blank node label")
        self.pos = m.end()
        try:
            return BlankNode(m.group(1))
        except MalformedTripleError as exc:
            raise ParseError(str(exc), self.line) from exc

    def scan_quoted(self) -> str:
        """Consume a double-quoted string, returning the unescaped text."""
        chars = []
        i = self.pos + 1
        text = self.text
        while True:
            if i >= len(text):
                raise self.error("unterminated literal")
            ch = text[i]
            if ch == '"':
                i += 1
                break
            if ch == "\\":
                if i + 1 >= len(text):
                    raise self.error("dangling escape in literal")
                nxt = text[i + 1]
                if nxt in _ECHARS:
                    chars.append(_ECHARS[nxt])
                    i += 2
                    continue
                m = _UCHAR_RE.match(text, i)
                if not m:
                    raise self.error(f"bad escape \\{nxt} in literal")
                chars.append(chr(int(m.group(1) or m.group(2), 16)))
                i = m.end()
                continue
            chars.append(ch)
            i += 1
        self.pos = i
        return "".join(chars)

    def scan_lang_tag(self) -> str:
        m = re.compile(r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)").match(self.text, self.pos)
        if not m:
            raise self.error("bad language tag")
        self.pos = m.end()
        return m.group(1)

    def scan_literal(self) -> Literal:
        lexical = self.scan_quoted()
        try:
            if self.peek() == "@":
                return Literal(lexical, lang=self.scan_lang_tag())
            if self.text.startswith("^^", self.pos):
                self.pos += 2
                if self.peek() != "<":
                    raise self.error("datatype must be an IRI in angle brackets")
                return Literal(lexical, self.scan_iri().value)
            return Literal(lexical)
        except MalformedTripleError as exc:
            raise ParseError(str(exc), self.line) from exc


def parse_term(text: str) -> Term:
    """Parse exactly one term in N-Triples syntax."""
    scanner = _Scanner(text.strip())
    term = scanner.scan_term()
    scanner.skip_ws()
    if not scanner.at_end():
        raise scanner.error("trailing characters after term")
    return term


def _parse_line(line: str, lineno: int) -> Triple:
    scanner = _Scanner(line, lineno)
    parts = []
    for _ in range(3):
        scanner.skip_ws()
        parts.append(scanner.scan_term())
    scanner.skip_ws()
    if scanner.peek() != ".":
        raise scanner.error("expected '.' after object")
    scanner.pos += 1
    scanner.skip_ws()
    if not scanner.at_end():
        raise scanner.error("trailing characters after '.'")
    subject, predicate, obj = parts
    try:
        return Triple(subject, predicate, obj)
    except MalformedTripleError as exc:
        raise ParseError(str(exc), lineno) from exc


def parse_ntriples(data: bytes | str) -> list[Triple]:
    """Parse an N-Triples document (blank lines and # comments allowed)."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8: {exc}") from exc
    triples = []
    for lineno, raw in enumerate(data.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        triples.append(_parse_line(line, lineno))
    return triples


# ---------------------------------------------------------------------------
# The store

class _RWLock:
    """Reader-preference readers/writer lock (reentrant for readers)."""

    def __init__(self):
        self._cond = threading.Condition()
        self._readers = 0
        self._writer = False

    @contextmanager
    def reading(self):
        with self._cond:
            while self._writer:
                self._cond.wait()
            self._readers += 1
        try:
            yield
        finally:
            with self._cond:
                self._readers -= 1
                if self._readers == 0:
                    self._cond.notify_all()

    @contextmanager
    def writing(self):
        with self._cond:
            while self._writer or self._readers:
                self._cond.wait()
            self._writer = True
        try:
            yield
        finally:
            with self._cond:
                self._writer = False
                self._cond.notify_all()


def _unify(pattern: TriplePattern, triple: Triple, binding: BindingSet) -> BindingSet | None:
    """Extend a binding so the pattern equals the triple, or return None."""
    result = binding
    for pos, term in zip(pattern.positions(), (triple.subject, triple.predicate, triple.object)):
        if isinstance(pos, Variable):
            bound = result.get(pos.name)
            if bound is None:
                if result is binding:
                    result = dict(binding)
                result[pos.name] = term
            elif bound != term:
                return None
        elif pos != term:
            return None
    return result if result is not binding else dict(binding)


class TripleStore:
    """An in-memory set of triples with per-position indexes."""

    def __init__(self):
        self._triples: set[Triple] = set()
        self._by_subject: dict[Term, set[Triple]] = {}
        self._by_predicate: dict[Term, set[Triple]] = {}
        self._by_object: dict[Term, set[Triple]] = {}
        self._lock = _RWLock()

    def __len__(self) -> int:
        with self._lock.reading():
            return len(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        with self._lock.reading():
            return triple in self._triples

    def reading(self):
        """Shared-lock context for multi-call read consistency."""
        return self._lock.reading()

    def triples(self) -> list[Triple]:
        with self._lock.reading():
            return list(self._triples)

    def insert(self, triple: Triple) -> bool:
        """Add a triple; False if it was already present (set semantics)."""
        if not isinstance(triple, Triple):
            raise MalformedTripleError(f"not a triple: {triple!r}")
        with self._lock.writing():
            if triple in self._triples:
                return False
            self._triples.add(triple)
            self._by_subject.setdefault(triple.subject, set()).add(triple)
            self._by_predicate.setdefault(triple.predicate, set()).add(triple)
            self._by_object.setdefault(triple.object, set()).add(triple)
            return True

    def insert_all(self, triples: Iterable[Triple]) -> int:
        """Insert many triples; returns how many were actually new."""
        return sum(1 for t in triples if self.insert(t))

    def remove(self, triple: Triple) -> bool:
        """Drop a triple; False if it was not present."""
        with self._lock.writing():
            if triple not in self._triples:
                return False
            self._triples.discard(triple)
            for index, key in (
                (self._by_subject, triple.subject),
                (self._by_predicate, triple.predicate),
                (self._by_object, triple.object),
            ):
                bucket = index.get(key)
                if bucket is not None:
                    bucket.discard(triple)
                    if not bucket:
                        del index[key]
            return True

    def _candidates(self, pattern: TriplePattern) -> set[Triple] | None:
        """Smallest index bucket among ground positions; None means scan all."""
        best: set[Triple] | None = None
        for index, pos in (
            (self._by_subject, pattern.subject),
            (self._by_predicate, pattern.predicate),
            (self._by_object, pattern.object),
        ):
            if isinstance(pos, Variable):
                continue
            bucket = index.get(pos, set())
            if best is None or len(bucket) < len(best):
                best = bucket
        return best

    def _match_locked(self, pattern: TriplePattern, binding: BindingSet) -> list[BindingSet]:
        if binding:
            # Ground already-bound variables so the indexes can narrow the scan.
            pattern = TriplePattern(
                *(
                    binding.get(p.name, p) if isinstance(p, Variable) else p
                    for p in pattern.positions()
                )
            )
        candidates = self._candidates(pattern)
        if candidates is None:
            candidates = self._triples
        out = []
        for triple in candidates:
            extended = _unify(pattern, triple, binding)
            if extended is not None:
                out.append(extended)
        return out

    def match_pattern(self, pattern: TriplePattern) -> list[Triple]:
        """All triples unifying with the pattern, each exactly once."""
        with self._lock.reading():
            candidates = self._candidates(pattern)
            if candidates is None:
                candidates = self._triples
            return [t for t in candidates if _unify(pattern, t, {}) is not None]

    def query(self, query: BGPQuery) -> list[BindingSet]:
        """Join the patterns, project to the selected variables, dedupe.

        Result order is deterministic: rows sort by the N-Triples text of
        their bound terms, in selected-variable order.
        """
        pattern_vars: set[str] = set()
        for pattern in query.patterns:
            pattern_vars |= pattern.variables()
        if not query.variables:
            raise UnboundSelectedVariableError("query selects no variables")
        for name in query.variables:
            if name not in pattern_vars:
                raise UnboundSelectedVariableError(
                    f"selected variable ?{name} does not occur in any pattern"
                )

        with self._lock.reading():
            bindings: list[BindingSet] = [{}]
            for pattern in query.patterns:
                grounded = []
                for binding in bindings:
                    grounded.extend(self._match_locked(pattern, binding))
                bindings = grounded
                if not bindings:
                    break

        rows = {tuple(b[name] for name in query.variables) for b in bindings}
        ordered = sorted(rows, key=lambda row: tuple(term_to_ntriples(t) for t in row))
        return [dict(zip(query.variables, row)) for row in ordered]

    # -- persistence --------------------------------------------------------

    def export_ntriples(self) -> bytes:
        """Sorted UTF-8 N-Triples; byte-identical for equal triple sets."""
        with self._lock.reading():
            ordered = sorted(self._triples, key=triple_sort_key)
        return "".join(triple_to_ntriples(t) + "\n" for t in ordered).encode("utf-8")

    def import_ntriples(self, data: bytes | str) -> int:
        """Parse and add an N-Triples document; returns triples added.

        Parsing happens before any mutation, so a ParseError leaves the
        store untouched.
        """
        return self.insert_all(parse_ntriples(data))


def load_graph(path: Path | str) -> TripleStore:
    """Read an N-Triples file into a fresh store (empty if file is absent)."""
    store = TripleStore()
    path = Path(path)
    if path.exists():
        store.import_ntriples(path.read_bytes())
    return store


def save_graph(store: TripleStore, path: Path | str) -> None:
    """Write the store to an N-Triples file atomically."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(store.export_ntriples())
    tmp.replace(path)
