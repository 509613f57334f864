"""Acceptance suite: each test is one release criterion at its stated
tolerance and prints one ACCEPTANCE PASS/FAIL line (visible with -s).

Run with:  pytest tests/test_acceptance.py -v -s
"""

from __future__ import annotations

import math
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from datacat.deeplink import OPEN, CellRange, ColRange, LineRange, RowRange, parse_fragment, serialize
from datacat.errors import FragmentSyntaxError, SelectorBoundsError
from datacat.graphstore import TripleStore
from datacat.profiler import profile_column, profile_table_to_triples
from datacat.querytext import parse_query
from datacat.reportgen import default_template, render_report
from datacat.resources import ResourceRegistry, TableResource
from datacat.server import create_app
from datacat.vocab import Vocabulary

from conftest import CONSTANT_COLUMNS, write_fixture_tree
from oracles import histogram_oracle, nested_loop_join, profile_oracle
from test_graphstore import _random_store_and_query
from test_server import ERROR_CASES

GOLDEN = Path(__file__).parent / "golden" / "report_fixture.html"


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE FAIL  {name}")
        raise
    print(f"\nACCEPTANCE PASS  {name}")


# ---------------------------------------------------------------------------
# 1. fragment grammar


def _random_selector(rng: random.Random):
    def end(start):
        return OPEN if rng.random() < 0.25 else rng.randint(start, start + 10_000)

    kind = rng.randrange(4)
    if kind == 0:
        s = rng.randint(1, 10_000)
        return RowRange(s, s if rng.random() < 0.3 else end(s))
    if kind == 1:
        s = rng.randint(1, 10_000)
        return ColRange(s, s if rng.random() < 0.3 else end(s))
    if kind == 2:
        s = rng.randint(1, 10_000)
        return LineRange(s, s if rng.random() < 0.3 else end(s))
    sr, sc = rng.randint(1, 10_000), rng.randint(1, 10_000)
    if rng.random() < 0.3:
        return CellRange(sr, sc, sr, sc)
    return CellRange(sr, sc, end(sr), end(sc))


def curated_invalid_fragments() -> list[str]:
    """Exactly 200 deterministic invalid selector strings."""
    samples = [
        "", "row", "col", "cell", "line", "=", "=1", "1", "1-2", "x=1",
        "selector", "row-1", "cell:1,1", "row=1;row=2", "cell=1,1;cell=2,2",
        "row=1-2;line=3", "Row=1", "ROW=2", "CELL=1,1", "Line=3", "COL=4",
        "rows=1", "column=2", "cells=1,1", "lines=1", "celll=1,1",
        " row=1", "row =1", "row= 1", "row=1 ", "row=1\n", "row=1\t",
        "cell=1,2,3", "cell=1", "cell=1,", "cell=,1", "cell=1,2-3",
        "cell=1,2-3,", "cell=1,2-,3", "cell=1-2", "cell=1,2-3,4-5,6",
        "row=١", "cell=１,2", "row=0x1", "row=1e2",
    ]
    for kw in ("row", "col", "line"):
        samples += [
            f"{kw}=", f"{kw}=-", f"{kw}=1-", f"{kw}=-1", f"{kw}=1--2",
            f"{kw}=1-2-3", f"{kw}=1,2", f"{kw}=a", f"{kw}=1a", f"{kw}=a1",
            f"{kw}=1.5", f"{kw}=+1", f"{kw}=1-b", f"{kw}==1", f"{kw}=1=2",
            f"{kw}=0", f"{kw}=00", f"{kw}=*", f"{kw}=*-2", f"{kw}=*-*",
        ]
    samples += [
        "cell=0,1", "cell=1,0", "cell=0,0", "cell=*,1", "cell=1,*",
        "cell=*,*", "cell=5,1-2,1", "cell=1,5-1,2", "cell=1,1-0,1",
        "cell=1,1-1,0", "row=5-2", "col=9-3", "line=10-2",
    ]
    i = 2
    while len(samples) < 200:
        samples.append(f"row={i + 1}-{i}")
        i += 1
    assert len(samples) == len(set(samples)) == 200
    return samples


def test_fragment_grammar_round_trip_and_rejection():
    with criterion("fragment grammar: 10,000 round trips + 200 invalid strings, < 5 s"):
        started = time.perf_counter()
        rng = random.Random(74111)
        for _ in range(10_000):
            selector = _random_selector(rng)
            assert parse_fragment(serialize(selector)) == selector
        for text in curated_invalid_fragments():
            with pytest.raises((FragmentSyntaxError, SelectorBoundsError)):
                parse_fragment(text)
        elapsed = time.perf_counter() - started
        assert elapsed < 5.0, f"took {elapsed:.2f}s"


# ---------------------------------------------------------------------------
# 2. profiler oracle equivalence


_ALPHABET = [
    "", " ", "  ", "\t", " ", "a", "b", "c", "ab", "ok", "n/a", "NULL",
    "über", "naïve", "\U0001F600", "x" * 25, "0", "1", "2", "3.14", "-7",
]


def _random_table(rng: random.Random, rows: int, cols: int) -> TableResource:
    weights = [rng.random() * 3 for _ in _ALPHABET]
    grid = [tuple(f"h{c}" for c in range(cols))]
    for _ in range(rows):
        grid.append(tuple(rng.choices(_ALPHABET, weights)[0] for _ in range(cols)))
    return TableResource(
        base_iri="http://localhost:8080/res/rand.csv",
        source_path=Path("rand.csv"),
        cells=tuple(grid),
        header_row=True,
    )


def test_profiler_matches_brute_force_oracle():
    with criterion("profiler: 100 random tables vs brute-force oracle, < 60 s"):
        started = time.perf_counter()
        rng = random.Random(90210)
        shapes = [(10_000, 8), (2_000, 50), (1, 50), (10_000, 1)]
        shapes += [(rng.randint(1, 600), rng.randint(1, 12)) for _ in range(84)]
        shapes += [(rng.randint(600, 3000), rng.randint(4, 25)) for _ in range(12)]
        assert len(shapes) == 100

        for rows, cols in shapes:
            table = _random_table(rng, rows, cols)
            col = rng.randint(1, cols)
            for probe in {1, col, cols}:
                profile = profile_column(table, probe, histogram_cap=50)
                values = [table.cells[r][probe - 1] for r in range(1, rows + 1)]
                expected = profile_oracle(values)
                assert profile.total_count == expected["total_count"] == rows
                assert profile.distinct_count == expected["distinct_count"]
                assert profile.empty_count == expected["empty_count"]
                assert profile.blank_count == expected["blank_count"]
                assert profile.min_length == expected["min_length"]
                assert profile.max_length == expected["max_length"]
                assert math.isclose(profile.avg_length, expected["avg_length"], rel_tol=1e-9)
                assert math.isclose(
                    profile.std_dev_length,
                    expected["std_dev_length"],
                    rel_tol=1e-9,
                    abs_tol=1e-12,
                )
                assert [(e.value, e.frequency) for e in profile.histogram] == histogram_oracle(
                    values, 50
                )
        elapsed = time.perf_counter() - started
        assert elapsed < 60.0, f"took {elapsed:.2f}s"


# ---------------------------------------------------------------------------
# 3. the motivating query


def test_single_distinct_value_query_reproduction(tmp_path):
    with criterion("query reproduction: exactly the 2 constant columns come back"):
        write_fixture_tree(tmp_path)
        registry = ResourceRegistry(tmp_path)
        registry.scan()
        vocab = Vocabulary(registry.origin)
        store = TripleStore()
        for resource in registry.resources():
            if resource.kind == "table":
                store.insert_all(profile_table_to_triples(resource, vocab))
        query = parse_query(
            'SELECT ?c WHERE {?c du:distinctCount "1"^^xsd:integer}', vocab.prefixes
        )
        got = {row["c"].value for row in store.query(query)}
        expected = {
            registry.base_iri_for(tmp_path / name) + f"#col={col}"
            for name, col in CONSTANT_COLUMNS
        }
        assert len(expected) == 2
        assert got == expected


# ---------------------------------------------------------------------------
# 4. BGP engine vs nested-loop oracle


def test_bgp_engine_equals_nested_loop_oracle():
    with criterion("BGP engine: 500 random stores vs nested-loop join, < 30 s"):
        started = time.perf_counter()
        rng = random.Random(3517)
        for index in range(500):
            store, query = _random_store_and_query(
                rng, max_triples=1000 if index % 10 == 0 else 250
            )
            assert len(store) <= 1000 and len(query.patterns) <= 4
            got = {tuple(row[v] for v in query.variables) for row in store.query(query)}
            assert got == nested_loop_join(store.triples(), query)
        elapsed = time.perf_counter() - started
        assert elapsed < 30.0, f"took {elapsed:.2f}s"


# ---------------------------------------------------------------------------
# 5. persistence


def test_persistence_round_trip_and_cross_process_determinism(tmp_path):
    with criterion("persistence: export/import identity + byte-identical across processes"):
        rng = random.Random(60601)
        for _ in range(25):
            store, _ = _random_store_and_query(rng)
            restored = TripleStore()
            restored.import_ntriples(store.export_ntriples())
            assert set(restored.triples()) == set(store.triples())
            assert restored.export_ntriples() == store.export_ntriples()

        exports = []
        for run in ("one", "two"):
            workdir = tmp_path / run
            workdir.mkdir()
            write_fixture_tree(workdir)
            for command in (
                ["profile", "f1.csv", "f2.csv", "f3.csv", "--graph", "g.nt"],
                ["export", "g.nt", "-o", "out.nt"],
            ):
                result = subprocess.run(
                    [sys.executable, "-m", "datacat", *command],
                    cwd=workdir,
                    capture_output=True,
                    text=True,
                )
                assert result.returncode == 0, result.stderr
            exports.append((workdir / "out.nt").read_bytes())
        assert exports[0] == exports[1]
        assert exports[0]


# ---------------------------------------------------------------------------
# 6. report anchors + golden file


def test_report_anchor_completeness_and_golden_bytes(tmp_path):
    with criterion("report: #col= anchors equal profiled columns + golden bytes"):
        import re

        write_fixture_tree(tmp_path)
        registry = ResourceRegistry(tmp_path)
        registry.scan()
        vocab = Vocabulary(registry.origin)
        store = TripleStore()
        for resource in registry.resources():
            if resource.kind == "table":
                store.insert_all(profile_table_to_triples(resource, vocab))
        table = registry.lookup(registry.base_iri_for(tmp_path / "f2.csv"))
        html = render_report(store, table, default_template(), vocab)

        anchors = set(re.findall(r'href="([^"]*#col=[0-9]+)"', html))
        profiled = {
            t.subject.value
            for t in store.triples()
            if t.predicate.value == vocab.total_count
            and t.subject.value.startswith(table.base_iri + "#col=")
        }
        assert anchors == profiled == {table.base_iri + f"#col={c}" for c in (1, 2, 3)}
        assert html.encode("utf-8") == GOLDEN.read_bytes()


# ---------------------------------------------------------------------------
# 7. HTTP error contract


def test_http_error_contract(tmp_path):
    with criterion("HTTP contract: every documented error returns its status + code"):
        write_fixture_tree(tmp_path)
        registry = ResourceRegistry(tmp_path)
        registry.scan()
        client = TestClient(create_app(registry, TripleStore()))
        fillers = {
            "{f1}": registry.base_iri_for(tmp_path / "f1.csv"),
            "{txt}": registry.base_iri_for(tmp_path / "notes.txt"),
        }
        assert len(ERROR_CASES) >= 18
        for method, path, params, body, status, code in ERROR_CASES:
            if params:
                params = {k: fillers.get(v, v) for k, v in params.items()}
            response = client.request(method, path, params=params, json=body)
            assert response.status_code == status, (method, path, params, response.text)
            assert response.json()["error"]["code"] == code
