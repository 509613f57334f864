"""IRI namespaces: standard RDF vocabularies plus the catalog's own terms.

The catalog vocabulary lives under ``<origin>/vocab#`` so its terms are
dereferenceable on the very server that emits them.
"""

from __future__ import annotations

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

RDF_TYPE = RDF_NS + "type"
RDF_LANG_STRING = RDF_NS + "langString"
RDFS_LABEL = RDFS_NS + "label"
RDFS_SEE_ALSO = RDFS_NS + "seeAlso"
RDFS_COMMENT = RDFS_NS + "comment"
XSD_STRING = XSD_NS + "string"
XSD_INTEGER = XSD_NS + "integer"
XSD_DECIMAL = XSD_NS + "decimal"

DEFAULT_ORIGIN = "http://localhost:8080"

# name, kind, description -- drives the generated /vocab reference page
VOCAB_TERMS = [
    ("Column", "class", "A profiled table column, identified by its deep link."),
    ("ofResource", "property", "Links a column to the resource it belongs to."),
    ("totalCount", "property", "Number of data values in the column."),
    ("distinctCount", "property", "Number of distinct raw values."),
    ("blankCount", "property", "Number of whitespace-only (nonzero-length) values."),
    ("emptyCount", "property", "Number of zero-length values."),
    ("minLength", "property", "Shortest value length, in code points."),
    ("maxLength", "property", "Longest value length, in code points."),
    ("avgLength", "property", "Mean value length, in code points."),
    ("stdDevLength", "property", "Population standard deviation of value lengths."),
    ("histogramEntry", "property", "Links a column to one value-frequency bucket."),
    ("value", "property", "The raw value of a histogram bucket."),
    ("frequency", "property", "How often a histogram bucket's value occurs."),
    ("OtherValues", "individual", "Marker for the folded bucket of values beyond the histogram cap."),
]


class Vocabulary:
    """Catalog vocabulary terms, rooted at an HTTP origin."""

    def __init__(self, origin: str = DEFAULT_ORIGIN):
        self.origin = origin.rstrip("/")
        self.namespace = self.origin + "/vocab#"
        ns = self.namespace
        self.column_class = ns + "Column"
        self.of_resource = ns + "ofResource"
        self.total_count = ns + "totalCount"
        self.distinct_count = ns + "distinctCount"
        self.blank_count = ns + "blankCount"
        self.empty_count = ns + "emptyCount"
        self.min_length = ns + "minLength"
        self.max_length = ns + "maxLength"
        self.avg_length = ns + "avgLength"
        self.std_dev_length = ns + "stdDevLength"
        self.histogram_entry = ns + "histogramEntry"
        self.value = ns + "value"
        self.frequency = ns + "frequency"
        self.other_values = ns + "OtherValues"

    @property
    def prefixes(self) -> dict[str, str]:
        """Prefix map for query text: rdf:, rdfs:, xsd: and du:."""
        return {
            "rdf": RDF_NS,
            "rdfs": RDFS_NS,
            "xsd": XSD_NS,
            "du": self.namespace,
        }

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and other.origin == self.origin

    def __repr__(self) -> str:
        return f"Vocabulary({self.origin!r})"
