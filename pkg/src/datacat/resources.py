"""Immutable in-memory resources loaded from disk, keyed by stable IRIs.

Tables come from CSV files (RFC 4180 quoting, configurable delimiter),
documentation from plain-text files.  Short CSV records are padded so
the grid is always rectangular, and row 1 stays addressable even when
it is a header.  Base IRIs are a deterministic function of the file's
path relative to the registry's root directory.
"""

from __future__ import annotations

import csv
import io
import threading
from dataclasses import dataclass, field
from pathlib import Path, PurePosixPath
from typing import Iterator, Union
from urllib.parse import quote

from .deeplink import Selector, clamp_table_selector
from .errors import EmptyFileError, EncodingError
from .vocab import DEFAULT_ORIGIN

TEXT_SUFFIXES = {".txt", ".text", ".md", ".rst", ".log"}


@dataclass(frozen=True)
class CsvConfig:
    """How CSV files are read; one configuration applies per run."""

    delimiter: str = ","
    header_row: bool = True

    def __post_init__(self):
        if len(self.delimiter) != 1:
            raise ValueError(f"delimiter must be a single character, got {self.delimiter!r}")


@dataclass(frozen=True)
class TableResource:
    """A rectangular grid of strings with a stable base IRI (1-based)."""

    base_iri: str
    source_path: Path
    cells: tuple[tuple[str, ...], ...]
    header_row: bool = True

    kind = "table"

    @property
    def row_count(self) -> int:
        return len(self.cells)

    @property
    def col_count(self) -> int:
        return len(self.cells[0])

    @property
    def name(self) -> str:
        return self.source_path.name

    def cell(self, row: int, col: int) -> str:
        """Value at 1-based (row, col)."""
        return self.cells[row - 1][col - 1]


@dataclass(frozen=True)
class TextResource:
    """An ordered list of terminator-free lines with a stable base IRI."""

    base_iri: str
    source_path: Path
    lines: tuple[str, ...]

    kind = "text"

    @property
    def line_count(self) -> int:
        return len(self.lines)

    @property
    def name(self) -> str:
        return self.source_path.name


Resource = Union[TableResource, TextResource]


def _read_utf8(path: Path) -> str:
    data = path.read_bytes()
    try:
        # utf-8-sig strips an optional BOM and is plain UTF-8 otherwise
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"{path}: not valid UTF-8 ({exc})") from exc


def load_csv(path: Path | str, config: CsvConfig | None = None, *, base_iri: str | None = None) -> TableResource:
    """Load a CSV file into an immutable rectangular table.

    Ragged records are padded with empty strings to the longest record's
    length.  Raises FileNotFoundError, EncodingError, or EmptyFileError.
    """
    path = Path(path)
    config = config or CsvConfig()
    text = _read_utf8(path)
    records = list(csv.reader(io.StringIO(text, newline=""), delimiter=config.delimiter))
    if not records:
        raise EmptyFileError(f"{path}: CSV file has no records")
    width = max(1, max(len(record) for record in records))
    cells = tuple(tuple(record) + ("",) * (width - len(record)) for record in records)
    if base_iri is None:
        base_iri = default_base_iri(path)
    return TableResource(
        base_iri=base_iri, source_path=path, cells=cells, header_row=config.header_row
    )


def load_text(path: Path | str, *, base_iri: str | None = None) -> TextResource:
    """Load a plain-text file; a trailing newline adds no final empty line."""
    path = Path(path)
    lines = tuple(_read_utf8(path).splitlines())
    if base_iri is None:
        base_iri = default_base_iri(path)
    return TextResource(base_iri=base_iri, source_path=path, lines=lines)


def default_base_iri(path: Path, root: Path | None = None, origin: str = DEFAULT_ORIGIN) -> str:
    """Base IRI for a file: origin + /res/ + percent-encoded relative path."""
    path = Path(path)
    root = Path(root) if root is not None else path.parent
    rel = PurePosixPath(path.relative_to(root))
    return origin.rstrip("/") + "/res/" + quote(str(rel), safe="/")


@dataclass(frozen=True)
class CellGrid:
    """A sub-rectangle of a table together with its absolute coordinates."""

    start_row: int
    start_col: int
    end_row: int
    end_col: int
    cells: tuple[tuple[str, ...], ...]


def get_region(table: TableResource, sel: Selector) -> CellGrid:
    """Extract the sub-rectangle a row/col/cell selector addresses.

    Open ends clamp to the table extent.  Raises OutOfBoundsError if the
    selector starts beyond the table, SelectorKindMismatchError for line
    selectors.
    """
    r1, c1, r2, c2 = clamp_table_selector(sel, table.row_count, table.col_count)
    rows = tuple(table.cells[r][c1 - 1 : c2] for r in range(r1 - 1, r2))
    return CellGrid(r1, c1, r2, c2, rows)


class ResourceRegistry:
    """Maps base IRIs to loaded resources under one root directory.

    Resources are immutable, so lookups need no locking; registrations
    are serialized.
    """

    def __init__(
        self,
        root: Path | str,
        origin: str = DEFAULT_ORIGIN,
        csv_config: CsvConfig | None = None,
    ):
        self.root = Path(root).resolve()
        self.origin = origin.rstrip("/")
        self.csv_config = csv_config or CsvConfig()
        self._by_iri: dict[str, Resource] = {}
        self._lock = threading.Lock()

    def base_iri_for(self, path: Path | str) -> str:
        """The deterministic IRI a file under the root gets when loaded."""
        resolved = Path(path).resolve()
        return default_base_iri(resolved, self.root, self.origin)

    def register_file(self, path: Path | str) -> Resource:
        """Load one file (CSV as a table, anything else as text)."""
        path = Path(path).resolve()
        iri = self.base_iri_for(path)
        if path.suffix.lower() == ".csv":
            resource: Resource = load_csv(path, self.csv_config, base_iri=iri)
        else:
            resource = load_text(path, base_iri=iri)
        with self._lock:
            self._by_iri[iri] = resource
        return resource

    def scan(self) -> list[Resource]:
        """Load every CSV and text file under the root, in sorted order."""
        loaded = []
        for path in sorted(self.root.rglob("*")):
            if not path.is_file() or path.name.startswith("."):
                continue
            suffix = path.suffix.lower()
            if suffix == ".csv" or suffix in TEXT_SUFFIXES:
                loaded.append(self.register_file(path))
        return loaded

    def lookup(self, iri: str) -> Resource | None:
        return self._by_iri.get(iri)

    def resources(self) -> list[Resource]:
        return sorted(self._by_iri.values(), key=lambda r: r.base_iri)

    def __len__(self) -> int:
        return len(self._by_iri)
