"""Fragment identifiers that address parts of tables and text documents.

A selector picks a rectangular table region (rows, columns, cells) or a
line range in a text document.  Serialized selectors travel after ``#``
in a resource IRI, forming a deep link.  The grammar accepts exactly one
selection per fragment:

    selector  = ("row=" range) / ("col=" range) / ("cell=" cellrange)
              / ("line=" range)
    range     = int ["-" (int / "*")]
    cellrange = int "," int ["-" (int / "*") "," (int / "*")]
    int       = nonzero decimal

``*`` means "through the last row/column/line" and is only valid in an
end position.  All indices are 1-based.  ``serialize`` emits the
canonical form: single-cell/row/column/line ranges drop the redundant
end part, so ``parse_fragment(serialize(s)) == s`` for every valid
selector.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

from .errors import (
    FragmentSyntaxError,
    OutOfBoundsError,
    SelectorBoundsError,
    SelectorKindMismatchError,
    UnknownResourceError,
)

if TYPE_CHECKING:
    from .resources import ResourceRegistry, TableResource, TextResource

OPEN = "*"

Bound = Union[int, str]  # a positive int, or OPEN for "through the last"


def _check_start(value: Bound, what: str) -> None:
    if value == OPEN:
        raise SelectorBoundsError(f"'*' is not allowed as a start {what}")
    if not isinstance(value, int) or isinstance(value, bool):
        raise FragmentSyntaxError(f"{what} must be an integer, got {value!r}")
    if value < 1:
        raise SelectorBoundsError(f"{what} must be >= 1, got {value}")


def _check_end(start: int, end: Bound, what: str) -> None:
    if end == OPEN:
        return
    if not isinstance(end, int) or isinstance(end, bool):
        raise FragmentSyntaxError(f"end {what} must be an integer or '*', got {end!r}")
    if end < 1:
        raise SelectorBoundsError(f"end {what} must be >= 1, got {end}")
    if end < start:
        raise SelectorBoundsError(f"{what} range is inverted: {start}-{end}")


@dataclass(frozen=True, slots=True)
class RowRange:
    """Rows ``start..end`` across all columns."""

    start: int
    end: Bound

    def __post_init__(self):
        _check_start(self.start, "row")
        _check_end(self.start, self.end, "row")


@dataclass(frozen=True, slots=True)
class ColRange:
    """Columns ``start..end`` across all rows."""

    start: int
    end: Bound

    def __post_init__(self):
        _check_start(self.start, "column")
        _check_end(self.start, self.end, "column")


@dataclass(frozen=True, slots=True)
class CellRange:
    """The rectangle from (start_row, start_col) to (end_row, end_col)."""

    start_row: int
    start_col: int
    end_row: Bound
    end_col: Bound

    def __post_init__(self):
        _check_start(self.start_row, "row")
        _check_start(self.start_col, "column")
        _check_end(self.start_row, self.end_row, "row")
        _check_end(self.start_col, self.end_col, "column")


@dataclass(frozen=True, slots=True)
class LineRange:
    """Lines ``start..end`` of a text document."""

    start: int
    end: Bound

    def __post_init__(self):
        _check_start(self.start, "line")
        _check_end(self.start, self.end, "line")


Selector = Union[RowRange, ColRange, CellRange, LineRange]

_RANGE_RE = re.compile(r"([0-9]+|\*)(?:-([0-9]+|\*))?")
_CELL_RE = re.compile(r"([0-9]+|\*),([0-9]+|\*)(?:-([0-9]+|\*),([0-9]+|\*))?")

_RANGE_KINDS = {"row": RowRange, "col": ColRange, "line": LineRange}


def _bound(token: str) -> Bound:
    if token == OPEN:
        return OPEN
    value = int(token)
    if value == 0:
        raise SelectorBoundsError("index 0 is not a valid position (indices are 1-based)")
    return value


def parse_fragment(text: str) -> Selector:
    """Parse fragment text (without the leading ``#``) into a selector.

    Raises FragmentSyntaxError for token-level problems and
    SelectorBoundsError for structurally invalid indices (zero, inverted
    ranges, ``*`` in a start position).
    """
    if ";" in text:
        raise FragmentSyntaxError("multi-selection fragments are not supported")
    keyword, sep, rest = text.partition("=")
    if not sep:
        raise FragmentSyntaxError(f"fragment must look like 'row=...', got {text!r}")

    if keyword == "cell":
        m = _CELL_RE.fullmatch(rest)
        if not m:
            raise FragmentSyntaxError(f"bad cell selector: {rest!r}")
        sr, sc, er, ec = m.groups()
        start_row, start_col = _bound(sr), _bound(sc)
        if er is None:
            return CellRange(start_row, start_col, start_row, start_col)
        return CellRange(start_row, start_col, _bound(er), _bound(ec))

    cls = _RANGE_KINDS.get(keyword)
    if cls is None:
        raise FragmentSyntaxError(f"unknown selector keyword: {keyword!r}")
    m = _RANGE_RE.fullmatch(rest)
    if not m:
        raise FragmentSyntaxError(f"bad {keyword} selector: {rest!r}")
    start_tok, end_tok = m.groups()
    start = _bound(start_tok)
    if end_tok is None:
        return cls(start, start)
    return cls(start, _bound(end_tok))


def serialize(sel: Selector) -> str:
    """Canonical fragment text for a selector (inverse of parse_fragment)."""
    if isinstance(sel, CellRange):
        if sel.end_row == sel.start_row and sel.end_col == sel.start_col:
            return f"cell={sel.start_row},{sel.start_col}"
        return f"cell={sel.start_row},{sel.start_col}-{sel.end_row},{sel.end_col}"
    if isinstance(sel, RowRange):
        keyword = "row"
    elif isinstance(sel, ColRange):
        keyword = "col"
    elif isinstance(sel, LineRange):
        keyword = "line"
    else:
        raise TypeError(f"not a selector: {sel!r}")
    if sel.end == sel.start:
        return f"{keyword}={sel.start}"
    return f"{keyword}={sel.start}-{sel.end}"


_A1_RE = re.compile(r"([A-Za-z]+)([0-9]+)")


def a1_to_cell(label: str) -> tuple[int, int]:
    """Decode a spreadsheet-style cell label into (row, col).

    Column letters decode base-26 with A=1 (so H -> 8, AA -> 27); row
    digits decode as written.  Accepted at input boundaries only;
    canonical IRIs stay numeric.
    """
    m = _A1_RE.fullmatch(label)
    if not m:
        raise FragmentSyntaxError(f"not an A1-style cell label: {label!r}")
    letters, digits = m.groups()
    col = 0
    for ch in letters.upper():
        col = col * 26 + (ord(ch) - 64)
    row = int(digits)
    if row == 0:
        raise FragmentSyntaxError("row 0 is not a valid A1 label row")
    return row, col


def col_to_letters(col: int) -> str:
    """Spreadsheet letters for a 1-based column index (1 -> A, 27 -> AA)."""
    if col < 1:
        raise ValueError(f"column index must be >= 1, got {col}")
    letters = []
    while col:
        col, rem = divmod(col - 1, 26)
        letters.append(chr(65 + rem))
    return "".join(reversed(letters))


@dataclass(frozen=True, slots=True)
class DeepLink:
    """A base resource IRI optionally refined by a selector."""

    base_iri: str
    selector: Selector | None = None

    @property
    def iri(self) -> str:
        if self.selector is None:
            return self.base_iri
        return self.base_iri + "#" + serialize(self.selector)


def parse_deep_link(iri: str) -> DeepLink:
    """Split an IRI into its base and parsed fragment selector."""
    base, sep, fragment = iri.partition("#")
    if not sep:
        return DeepLink(base)
    return DeepLink(base, parse_fragment(fragment))


@dataclass(frozen=True, slots=True)
class TableRegion:
    """A concrete rectangle within a table, all bounds resolved."""

    resource: "TableResource"
    start_row: int
    start_col: int
    end_row: int
    end_col: int


@dataclass(frozen=True, slots=True)
class TextRegion:
    """A concrete line range within a text document."""

    resource: "TextResource"
    start_line: int
    end_line: int


ResolvedRegion = Union[TableRegion, TextRegion]


def clamp_table_selector(
    sel: Selector | None, row_count: int, col_count: int
) -> tuple[int, int, int, int]:
    """Resolve a table selector to absolute bounds, clamping open ends.

    Numeric ends beyond the table extent clamp like ``*`` so links stay
    usable when a table shrinks; starts beyond the extent are errors.
    """
    if sel is None:
        return 1, 1, row_count, col_count
    if isinstance(sel, LineRange):
        raise SelectorKindMismatchError("line selectors do not apply to tables")
    if isinstance(sel, RowRange):
        if sel.start > row_count:
            raise OutOfBoundsError(f"row {sel.start} is beyond the last row ({row_count})")
        end = row_count if sel.end == OPEN else min(sel.end, row_count)
        return sel.start, 1, end, col_count
    if isinstance(sel, ColRange):
        if sel.start > col_count:
            raise OutOfBoundsError(f"column {sel.start} is beyond the last column ({col_count})")
        end = col_count if sel.end == OPEN else min(sel.end, col_count)
        return 1, sel.start, row_count, end
    if isinstance(sel, CellRange):
        if sel.start_row > row_count:
            raise OutOfBoundsError(f"row {sel.start_row} is beyond the last row ({row_count})")
        if sel.start_col > col_count:
            raise OutOfBoundsError(
                f"column {sel.start_col} is beyond the last column ({col_count})"
            )
        end_row = row_count if sel.end_row == OPEN else min(sel.end_row, row_count)
        end_col = col_count if sel.end_col == OPEN else min(sel.end_col, col_count)
        return sel.start_row, sel.start_col, end_row, end_col
    raise TypeError(f"not a selector: {sel!r}")


def clamp_line_selector(sel: Selector | None, line_count: int) -> tuple[int, int]:
    """Resolve a line selector to absolute bounds, clamping the open end."""
    if sel is None:
        return 1, line_count
    if not isinstance(sel, LineRange):
        raise SelectorKindMismatchError("only line selectors apply to text documents")
    if sel.start > line_count:
        raise OutOfBoundsError(f"line {sel.start} is beyond the last line ({line_count})")
    end = line_count if sel.end == OPEN else min(sel.end, line_count)
    return sel.start, end


def resolve(link: DeepLink, registry: "ResourceRegistry") -> ResolvedRegion:
    """Look up a deep link's resource and turn its selector into bounds.

    A link without a selector resolves to the whole resource.
    """
    resource = registry.lookup(link.base_iri)
    if resource is None:
        raise UnknownResourceError(f"no resource registered for {link.base_iri!r}")
    if resource.kind == "table":
        r1, c1, r2, c2 = clamp_table_selector(
            link.selector, resource.row_count, resource.col_count
        )
        return TableRegion(resource, r1, c1, r2, c2)
    l1, l2 = clamp_line_selector(link.selector, resource.line_count)
    return TextRegion(resource, l1, l2)
