"""Command-line entry point: serve, batch-profile, query, import/export.

Exit codes: 0 on success, 1 on usage errors (bad arguments, malformed
query text), 2 on data errors (missing files, bad encodings, broken
N-Triples input).
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from .errors import DatacatError, ParseError
from .graphstore import load_graph, save_graph, term_to_ntriples
from .profiler import DEFAULT_HISTOGRAM_CAP, profile_table_to_triples
from .querytext import parse_query
from .resources import CsvConfig, ResourceRegistry
from .vocab import DEFAULT_ORIGIN, Vocabulary

DEFAULT_GRAPH = "graph.nt"


def _origin(port: int | None = None) -> str:
    env = os.environ.get("DATACAT_ORIGIN")
    if env:
        return env
    if port is not None:
        return f"http://localhost:{port}"
    return DEFAULT_ORIGIN


@click.group()
def cli():
    """A semantic catalog for tabular data and its documentation."""


@cli.command()
@click.option("--root", envvar="DATACAT_ROOT", default=".", show_default=True,
              type=click.Path(file_okay=False), help="Directory of CSV and text files to serve.")
@click.option("--port", envvar="DATACAT_PORT", default=8080, show_default=True, type=int)
@click.option("--graph", envvar="DATACAT_GRAPH", default=None,
              type=click.Path(dir_okay=False), help="N-Triples file for the graph "
              "(written through on every change). Defaults to <root>/graph.nt.")
@click.option("--delimiter", default=",", show_default=True, help="CSV field delimiter.")
@click.option("--no-header", is_flag=True, help="Treat CSV row 1 as data, not a header.")
@click.option("--histogram-cap", default=DEFAULT_HISTOGRAM_CAP, show_default=True, type=int)
@click.option("--ui", "ui_dir", default=None, type=click.Path(file_okay=False),
              help="Directory with the built browser UI (defaults to ./frontend/dist if present).")
def serve(root, port, graph, delimiter, no_header, histogram_cap, ui_dir):
    """Serve the catalog over HTTP."""
    import uvicorn

    from .server import create_app

    root = Path(root)
    graph_path = Path(graph) if graph else root / DEFAULT_GRAPH
    registry = ResourceRegistry(
        root, origin=_origin(port), csv_config=CsvConfig(delimiter, not no_header)
    )
    loaded = registry.scan()
    store = load_graph(graph_path)
    if ui_dir is None and Path("frontend/dist/index.html").is_file():
        ui_dir = "frontend/dist"
    app = create_app(registry, store, graph_path=graph_path,
                     histogram_cap=histogram_cap, ui_dir=ui_dir)
    click.echo(f"serving {len(loaded)} resources from {root} on port {port}", err=True)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")


@cli.command()
@click.argument("files", nargs=-1, required=True, type=click.Path(dir_okay=False))
@click.option("--root", envvar="DATACAT_ROOT", default=".", show_default=True,
              type=click.Path(file_okay=False))
@click.option("--graph", envvar="DATACAT_GRAPH", default=DEFAULT_GRAPH, show_default=True,
              type=click.Path(dir_okay=False))
@click.option("--delimiter", default=",", show_default=True)
@click.option("--no-header", is_flag=True)
@click.option("--histogram-cap", default=DEFAULT_HISTOGRAM_CAP, show_default=True, type=int)
def profile(files, root, graph, delimiter, no_header, histogram_cap):
    """Profile CSV files and add the resulting statements to the graph."""
    registry = ResourceRegistry(root, origin=_origin(), csv_config=CsvConfig(delimiter, not no_header))
    vocab = Vocabulary(registry.origin)
    store = load_graph(graph)
    for name in files:
        path = Path(name)
        if path.suffix.lower() != ".csv":
            raise click.UsageError(f"{name}: only CSV files can be profiled")
        try:
            path.resolve().relative_to(registry.root)
        except ValueError:
            raise click.UsageError(f"{name}: file lies outside the root directory {registry.root}")
        table = registry.register_file(path)
        added = store.insert_all(
            profile_table_to_triples(table, vocab, histogram_cap=histogram_cap)
        )
        click.echo(f"{name}: {table.col_count} columns, {added} triples added")
    save_graph(store, graph)


@cli.command()
@click.argument("querytext")
@click.option("--graph", envvar="DATACAT_GRAPH", default=DEFAULT_GRAPH, show_default=True,
              type=click.Path(dir_okay=False))
def query(querytext, graph):
    """Run a basic-graph-pattern query; bindings print as TSV."""
    vocab = Vocabulary(_origin())
    try:
        parsed = parse_query(querytext, vocab.prefixes)
    except ParseError as exc:
        raise click.UsageError(f"bad query: {exc}") from exc
    store = load_graph(graph)
    rows = store.query(parsed)
    click.echo("\t".join(f"?{name}" for name in parsed.variables))
    for row in rows:
        click.echo("\t".join(term_to_ntriples(row[name]) for name in parsed.variables))


@cli.command()
@click.argument("graph", type=click.Path(dir_okay=False))
@click.option("-o", "--output", default=None, type=click.Path(dir_okay=False),
              help="Destination file (stdout when omitted).")
def export(graph, output):
    """Write the graph as sorted N-Triples."""
    if not Path(graph).exists():
        raise FileNotFoundError(f"graph file not found: {graph}")
    data = load_graph(graph).export_ntriples()
    if output:
        Path(output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)


@cli.command("import")
@click.argument("graph", type=click.Path(dir_okay=False))
@click.argument("input_file", type=click.Path(dir_okay=False))
def import_(graph, input_file):
    """Add triples from an N-Triples file into the graph."""
    source = Path(input_file)
    if not source.exists():
        raise FileNotFoundError(f"input file not found: {input_file}")
    store = load_graph(graph)
    added = store.import_ntriples(source.read_bytes())
    save_graph(store, graph)
    click.echo(f"{added} triples added")


def main(argv: list[str] | None = None) -> int:
    """Run the CLI; returns the process exit code."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except (DatacatError, FileNotFoundError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
