"""Exception hierarchy for the catalog.

Every exception type carries a stable machine ``code`` so that HTTP
responses and CLI diagnostics can identify failures without parsing
human-readable messages.
"""

from __future__ import annotations


class DatacatError(Exception):
    """Base class for all catalog errors."""

    code = "Error"


class FragmentSyntaxError(DatacatError):
    """Fragment text does not match the selector grammar."""

    code = "SyntaxError"


class SelectorBoundsError(DatacatError):
    """Selector indices are invalid: zero, inverted range, or '*' as a start."""

    code = "BoundsError"


class SelectorKindMismatchError(DatacatError):
    """A line selector was applied to a table, or a table selector to text."""

    code = "SelectorKindMismatch"


class OutOfBoundsError(DatacatError):
    """Selector start lies beyond the resource's extent."""

    code = "OutOfBounds"


class UnknownResourceError(DatacatError):
    """No resource is registered under the given IRI."""

    code = "UnknownResource"


class EncodingError(DatacatError):
    """Input bytes are not valid UTF-8."""

    code = "EncodingError"


class EmptyFileError(DatacatError):
    """A CSV file contained no records at all."""

    code = "EmptyFile"


class MalformedTripleError(DatacatError):
    """Term or triple violates the RDF data model (e.g. literal subject)."""

    code = "MalformedTriple"


class ParseError(DatacatError):
    """Syntactically invalid N-Triples input, term text, or query text."""

    code = "ParseError"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnboundSelectedVariableError(DatacatError):
    """A selected query variable does not occur in any pattern."""

    code = "UnboundSelectedVariable"


class TemplateSyntaxError(DatacatError):
    """Report template text is malformed or references unknown variables."""

    code = "TemplateSyntaxError"


class NotATableError(DatacatError):
    """A table-only operation was requested for a text resource."""

    code = "NotATable"
