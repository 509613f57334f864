"""Per-column statistics, materialized as RDF statements about deep links.

For each column the profiler counts total, distinct, blank (whitespace-
only) and empty values, computes length statistics (min, average,
population standard deviation, max, in unicode code points), and builds
a value-frequency histogram.  Every number becomes a triple whose
subject is the column's deep-link IRI, so the results are queryable and
every statement points back into the data.
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .deeplink import ColRange, DeepLink
from .errors import OutOfBoundsError
from .graphstore import BlankNode, Iri, Literal, Triple
from .resources import TableResource
from .vocab import RDF_TYPE, RDFS_LABEL, XSD_DECIMAL, XSD_INTEGER, Vocabulary

DEFAULT_HISTOGRAM_CAP = 1000


@dataclass(frozen=True, slots=True)
class HistogramEntry:
    """One value-frequency bucket; value None marks the folded overflow."""

    value: str | None
    frequency: int


@dataclass(frozen=True)
class ColumnProfile:
    """The statistics bundle for one column.

    Length statistics are None for columns with no data values; the
    histogram covers every distinct value up to the cap, with the
    remainder folded into a final overflow entry.
    """

    column_link: DeepLink
    total_count: int
    distinct_count: int
    blank_count: int
    empty_count: int
    min_length: int | None
    max_length: int | None
    avg_length: float | None
    std_dev_length: float | None
    histogram: tuple[HistogramEntry, ...]
    header: str | None = None


def histogram(values: Iterable[str], cap: int = DEFAULT_HISTOGRAM_CAP) -> list[HistogramEntry]:
    """Frequency table: one entry per distinct value, most frequent first.

    Ties break on the value ascending.  Beyond ``cap`` entries, the rest
    fold into one overflow entry carrying the remaining count, so the
    frequencies always sum to the number of input values.
    """
    if cap < 1:
        raise ValueError(f"histogram cap must be >= 1, got {cap}")
    counts = Counter(values)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    entries = [HistogramEntry(value, freq) for value, freq in ranked[:cap]]
    if len(ranked) > cap:
        entries.append(HistogramEntry(None, sum(freq for _, freq in ranked[cap:])))
    return entries


def column_values(table: TableResource, col: int) -> list[str]:
    """The data values of a column: row 1 is skipped when it is a header."""
    if not 1 <= col <= table.col_count:
        raise OutOfBoundsError(f"column {col} is beyond the last column ({table.col_count})")
    first = 1 if table.header_row else 0
    return [row[col - 1] for row in table.cells[first:]]


def profile_column(
    table: TableResource, col: int, *, histogram_cap: int = DEFAULT_HISTOGRAM_CAP
) -> ColumnProfile:
    """Profile one column (1-based index) of a table."""
    values = column_values(table, col)
    empty = blank = 0
    length_sum = 0
    length_sq_sum = 0
    min_len: int | None = None
    max_len: int | None = None
    for value in values:
        n = len(value)
        if n == 0:
            empty += 1
        elif value.isspace():
            blank += 1
        length_sum += n
        length_sq_sum += n * n
        if min_len is None or n < min_len:
            min_len = n
        if max_len is None or n > max_len:
            max_len = n

    total = len(values)
    if total:
        avg = length_sum / total
        # exact integer numerator keeps the variance non-negative
        variance = (total * length_sq_sum - length_sum * length_sum) / (total * total)
        std_dev = math.sqrt(variance)
    else:
        avg = std_dev = None

    return ColumnProfile(
        column_link=DeepLink(table.base_iri, ColRange(col, col)),
        total_count=total,
        distinct_count=len(set(values)),
        blank_count=blank,
        empty_count=empty,
        min_length=min_len,
        max_length=max_len,
        avg_length=avg,
        std_dev_length=std_dev,
        histogram=tuple(histogram(values, histogram_cap)),
        header=table.cell(1, col) if table.header_row else None,
    )


def profile_table(
    table: TableResource, *, histogram_cap: int = DEFAULT_HISTOGRAM_CAP
) -> list[ColumnProfile]:
    """Profile every column, in column order."""
    return [
        profile_column(table, col, histogram_cap=histogram_cap)
        for col in range(1, table.col_count + 1)
    ]


def _integer(value: int) -> Literal:
    return Literal(str(value), XSD_INTEGER)


def _decimal(value: float) -> Literal:
    return Literal(f"{value:.6f}", XSD_DECIMAL)


def _entry_node(column_iri: str, entry: HistogramEntry) -> BlankNode:
    # Content-derived label: re-profiling unchanged data mints identical
    # blank nodes, so set semantics deduplicate the whole batch.
    marker = "\x01overflow" if entry.value is None else entry.value
    digest = hashlib.sha1((column_iri + "\x00" + marker).encode("utf-8")).hexdigest()
    return BlankNode("h" + digest[:20])


def profile_to_triples(profile: ColumnProfile, vocab: Vocabulary | None = None) -> list[Triple]:
    """Materialize a profile as RDF statements about the column's deep link.

    Count statistics are always present; length statistics are omitted
    for empty columns.  Histogram buckets become blank nodes carrying the
    value (or the overflow marker IRI) and its frequency.
    """
    vocab = vocab or Vocabulary()
    col = Iri(profile.column_link.iri)
    base = Iri(profile.column_link.base_iri)
    triples = [
        Triple(col, Iri(RDF_TYPE), Iri(vocab.column_class)),
        Triple(col, Iri(vocab.of_resource), base),
        Triple(col, Iri(vocab.total_count), _integer(profile.total_count)),
        Triple(col, Iri(vocab.distinct_count), _integer(profile.distinct_count)),
        Triple(col, Iri(vocab.blank_count), _integer(profile.blank_count)),
        Triple(col, Iri(vocab.empty_count), _integer(profile.empty_count)),
    ]
    if profile.header is not None:
        triples.append(Triple(col, Iri(RDFS_LABEL), Literal(profile.header)))
    if profile.total_count:
        triples.extend(
            (
                Triple(col, Iri(vocab.min_length), _integer(profile.min_length)),
                Triple(col, Iri(vocab.max_length), _integer(profile.max_length)),
                Triple(col, Iri(vocab.avg_length), _decimal(profile.avg_length)),
                Triple(col, Iri(vocab.std_dev_length), _decimal(profile.std_dev_length)),
            )
        )
    for entry in profile.histogram:
        node = _entry_node(col.value, entry)
        value_term = Iri(vocab.other_values) if entry.value is None else Literal(entry.value)
        triples.append(Triple(col, Iri(vocab.histogram_entry), node))
        triples.append(Triple(node, Iri(vocab.value), value_term))
        triples.append(Triple(node, Iri(vocab.frequency), _integer(entry.frequency)))
    return triples


def profile_table_to_triples(
    table: TableResource,
    vocab: Vocabulary | None = None,
    *,
    histogram_cap: int = DEFAULT_HISTOGRAM_CAP,
) -> list[Triple]:
    """Profile every column and collect all resulting statements."""
    triples: list[Triple] = []
    for profile in profile_table(table, histogram_cap=histogram_cap):
        triples.extend(profile_to_triples(profile, vocab))
    return triples
