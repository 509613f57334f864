"""Shared fixtures: a data root with three CSV files of which exactly two
columns (f1's status, f2's code) hold a single distinct value."""

from __future__ import annotations

from pathlib import Path

import pytest

from datacat.graphstore import TripleStore
from datacat.profiler import profile_table_to_triples
from datacat.resources import ResourceRegistry
from datacat.vocab import Vocabulary

FIXTURE_FILES = {
    "f1.csv": "id,status\n1,ok\n2,ok\n3,ok\n",
    "f2.csv": "name,code,val\nx,A,1\ny,A,1\nz,A,2\n",
    "f3.csv": "a,b\n1,3\n2,\n",
    "notes.txt": "first line about f1\nsecond line\nthird line\n",
}

CONSTANT_COLUMNS = {("f1.csv", 2), ("f2.csv", 2)}


def write_fixture_tree(root: Path) -> None:
    for name, content in FIXTURE_FILES.items():
        (root / name).write_text(content, encoding="utf-8")


@pytest.fixture
def fixture_root(tmp_path: Path) -> Path:
    write_fixture_tree(tmp_path)
    return tmp_path


@pytest.fixture
def registry(fixture_root: Path) -> ResourceRegistry:
    reg = ResourceRegistry(fixture_root)
    reg.scan()
    return reg


@pytest.fixture
def vocab(registry: ResourceRegistry) -> Vocabulary:
    return Vocabulary(registry.origin)


@pytest.fixture
def profiled_store(registry: ResourceRegistry, vocab: Vocabulary) -> TripleStore:
    store = TripleStore()
    for resource in registry.resources():
        if resource.kind == "table":
            store.insert_all(profile_table_to_triples(resource, vocab))
    return store
