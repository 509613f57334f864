"""datacat: a self-hosted semantic catalog for tabular data.

Tables and documentation files become addressable down to single cells
and lines via deep-link IRIs; column statistics, user annotations and
cross-references live in an embedded RDF store that answers basic graph
pattern queries and renders deep-link-anchored HTML reports.
"""

from .deeplink import (
    CellRange,
    ColRange,
    DeepLink,
    LineRange,
    RowRange,
    a1_to_cell,
    parse_deep_link,
    parse_fragment,
    resolve,
    serialize,
)
from .graphstore import (
    BGPQuery,
    BlankNode,
    Iri,
    Literal,
    Triple,
    TriplePattern,
    TripleStore,
    Variable,
    load_graph,
    parse_term,
    save_graph,
)
from .profiler import ColumnProfile, histogram, profile_column, profile_table, profile_to_triples
from .querytext import parse_query
from .reportgen import ReportTemplate, default_template, render_report
from .resources import (
    CellGrid,
    CsvConfig,
    ResourceRegistry,
    TableResource,
    TextResource,
    get_region,
    load_csv,
    load_text,
)
from .vocab import DEFAULT_ORIGIN, Vocabulary

__version__ = "0.1.0"
