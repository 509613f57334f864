"""Terms, triples, pattern matching, the BGP engine, and N-Triples I/O."""

from __future__ import annotations

import random
import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from datacat.errors import (
    MalformedTripleError,
    ParseError,
    UnboundSelectedVariableError,
)
from datacat.graphstore import (
    BGPQuery,
    BlankNode,
    Iri,
    Literal,
    Triple,
    TriplePattern,
    TripleStore,
    Variable,
    parse_ntriples,
    parse_term,
    term_to_ntriples,
    triple_to_ntriples,
)
from datacat.profiler import profile_table_to_triples
from datacat.vocab import RDF_LANG_STRING, XSD_INTEGER, XSD_STRING, Vocabulary

from oracles import graphs_isomorphic, nested_loop_join

EX = "http://example.org/"


def iri(name):
    return Iri(EX + name)


def lit(text, datatype=None):
    return Literal(text, datatype) if datatype else Literal(text)


class TestTerms:
    def test_plain_literal_gets_string_datatype(self):
        assert Literal("a").datatype == XSD_STRING

    def test_language_tag_forces_langstring_and_lowercases(self):
        term = Literal("Auto", lang="DE")
        assert term.datatype == RDF_LANG_STRING
        assert term.lang == "de"

    def test_langstring_without_tag_rejected(self):
        with pytest.raises(MalformedTripleError):
            Literal("x", RDF_LANG_STRING)

    def test_relative_iri_rejected(self):
        with pytest.raises(MalformedTripleError):
            Iri("no-scheme/path")

    def test_literal_subject_rejected(self):
        with pytest.raises(MalformedTripleError):
            Triple(lit("x"), iri("p"), iri("o"))

    def test_blank_predicate_rejected(self):
        with pytest.raises(MalformedTripleError):
            Triple(iri("s"), BlankNode("b"), iri("o"))


class TestInsertRemove:
    def test_duplicate_insert_returns_false(self):
        store = TripleStore()
        t = Triple(iri("col"), iri("distinctCount"), lit("1", XSD_INTEGER))
        assert store.insert(t) is True
        assert store.insert(t) is False
        assert len(store) == 1

    def test_dbpedia_style_annotation(self):
        store = TripleStore()
        t = Triple(
            iri("f.csv#col=8"),
            Iri("http://www.w3.org/2000/01/rdf-schema#seeAlso"),
            Iri("http://dbpedia.org/resource/Car"),
        )
        assert store.insert(t) is True
        assert t in store

    def test_remove_absent_returns_false(self):
        store = TripleStore()
        assert store.remove(Triple(iri("s"), iri("p"), iri("o"))) is False

    def test_insert_then_remove_is_net_zero(self):
        store = TripleStore()
        t = Triple(iri("s"), iri("p"), lit("v"))
        before = len(store)
        store.insert(t)
        assert store.remove(t) is True
        assert len(store) == before

    def test_removed_triple_no_longer_matches(self):
        store = TripleStore()
        t = Triple(iri("s"), iri("p"), lit("v"))
        store.insert(t)
        store.remove(t)
        assert store.match_pattern(TriplePattern(Variable("s"), iri("p"), Variable("o"))) == []


class TestMatchPattern:
    def test_matches_empty_count_triples_of_two_profiled_columns(self, registry, vocab):
        # oracle: linear scan of the store for the predicate
        store = TripleStore()
        table = registry.lookup(registry.base_iri_for(registry.root / "f1.csv"))
        store.insert_all(profile_table_to_triples(table, vocab))
        pattern = TriplePattern(Variable("s"), Iri(vocab.empty_count), Variable("o"))
        expected = [t for t in store.triples() if t.predicate.value == vocab.empty_count]
        got = store.match_pattern(pattern)
        assert len(got) == 2
        assert sorted(got, key=triple_to_ntriples) == sorted(expected, key=triple_to_ntriples)

    def test_fully_ground_pattern(self):
        store = TripleStore()
        t = Triple(iri("s"), iri("p"), lit("v"))
        store.insert(t)
        assert store.match_pattern(TriplePattern(t.subject, t.predicate, t.object)) == [t]

    def test_no_matches_is_empty(self):
        store = TripleStore()
        store.insert(Triple(iri("s"), iri("p"), lit("v")))
        assert store.match_pattern(TriplePattern(Variable("x"), iri("q"), Variable("y"))) == []

    def test_repeated_variable_requires_equal_terms(self):
        store = TripleStore()
        store.insert(Triple(iri("a"), iri("p"), iri("a")))
        store.insert(Triple(iri("a"), iri("p"), iri("b")))
        matches = store.match_pattern(TriplePattern(Variable("x"), iri("p"), Variable("x")))
        assert matches == [Triple(iri("a"), iri("p"), iri("a"))]


class TestQuery:
    def _store(self):
        store = TripleStore()
        rdf_type = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
        for n, empties in (("c1", "0"), ("c2", "3")):
            store.insert(Triple(iri(n), rdf_type, iri("Column")))
            store.insert(Triple(iri(n), iri("emptyCount"), lit(empties, XSD_INTEGER)))
        store.insert(Triple(iri("c1"), iri("distinctCount"), lit("1", XSD_INTEGER)))
        return store

    def test_single_pattern_query(self):
        store = self._store()
        query = BGPQuery(
            ("c",),
            (TriplePattern(Variable("c"), iri("distinctCount"), lit("1", XSD_INTEGER)),),
        )
        assert store.query(query) == [{"c": iri("c1")}]

    def test_empty_pattern_list_raises(self):
        with pytest.raises(UnboundSelectedVariableError):
            self._store().query(BGPQuery(("c",), ()))

    def test_unbound_selected_variable(self):
        query = BGPQuery(("nope",), (TriplePattern(Variable("c"), iri("p"), Variable("o")),))
        with pytest.raises(UnboundSelectedVariableError):
            self._store().query(query)

    def test_join_matches_nested_loop_oracle(self):
        store = self._store()
        rdf_type = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
        query = BGPQuery(
            ("c", "n"),
            (
                TriplePattern(Variable("c"), rdf_type, iri("Column")),
                TriplePattern(Variable("c"), iri("emptyCount"), Variable("n")),
            ),
        )
        got = {tuple(row[v] for v in query.variables) for row in store.query(query)}
        assert got == nested_loop_join(store.triples(), query)
        assert got == {(iri("c1"), lit("0", XSD_INTEGER)), (iri("c2"), lit("3", XSD_INTEGER))}

    def test_deterministic_order(self):
        store = self._store()
        query = BGPQuery(("s", "o"), (TriplePattern(Variable("s"), iri("emptyCount"), Variable("o")),))
        rows = store.query(query)
        keys = [tuple(term_to_ntriples(row[v]) for v in query.variables) for row in rows]
        assert keys == sorted(keys)

    def test_projection_dedupes(self):
        store = TripleStore()
        store.insert(Triple(iri("s"), iri("p"), lit("a")))
        store.insert(Triple(iri("s"), iri("p"), lit("b")))
        query = BGPQuery(("x",), (TriplePattern(Variable("x"), iri("p"), Variable("o")),))
        assert store.query(query) == [{"x": iri("s")}]


def _random_store_and_query(rng: random.Random, max_triples: int = 120):
    scale = max(2, max_triples // 20)
    subjects = [iri(f"s{i}") for i in range(rng.randint(2, scale))] + [
        BlankNode(f"b{i}") for i in range(2)
    ]
    predicates = [iri(f"p{i}") for i in range(rng.randint(1, 4))]
    objects = subjects + [lit(str(i)) for i in range(4)] + [lit(str(i), XSD_INTEGER) for i in range(3)]
    store = TripleStore()
    for _ in range(rng.randint(1, max_triples)):
        store.insert(
            Triple(rng.choice(subjects), rng.choice(predicates), rng.choice(objects))
        )
    triples = store.triples()
    names = ["a", "b", "c", "d"]
    patterns = []
    for _ in range(rng.randint(1, 4)):
        base = rng.choice(triples)
        positions = [base.subject, base.predicate, base.object]
        for idx in range(3):
            if rng.random() < 0.45:
                positions[idx] = Variable(rng.choice(names))
        patterns.append(TriplePattern(*positions))
    in_patterns = sorted({v for p in patterns for v in p.variables()})
    if not in_patterns:
        patterns[0] = TriplePattern(Variable("a"), patterns[0].predicate, patterns[0].object)
        in_patterns = ["a"]
    selected = tuple(rng.sample(in_patterns, rng.randint(1, len(in_patterns))))
    return store, BGPQuery(selected, tuple(patterns))


class TestQueryOracleProperty:
    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_engine_equals_nested_loop_join(self, seed):
        rng = random.Random(seed)
        store, query = _random_store_and_query(rng)
        got = {tuple(row[v] for v in query.variables) for row in store.query(query)}
        assert got == nested_loop_join(store.triples(), query)


_term_strategy = st.one_of(
    st.integers(0, 5).map(lambda i: iri(f"s{i}")),
    st.integers(0, 3).map(lambda i: BlankNode(f"b{i}")),
)
_triple_strategy = st.tuples(
    _term_strategy,
    st.integers(0, 3).map(lambda i: iri(f"p{i}")),
    st.one_of(_term_strategy, st.text(max_size=4).map(Literal)),
).map(lambda spo: Triple(*spo))


class TestSetSemantics:
    @settings(max_examples=50)
    @given(st.lists(_triple_strategy, max_size=40), st.randoms())
    def test_order_and_duplication_do_not_matter(self, triples, rng):
        store_a = TripleStore()
        store_a.insert_all(triples)
        shuffled = triples * 2
        rng.shuffle(shuffled)
        store_b = TripleStore()
        store_b.insert_all(shuffled)
        assert set(store_a.triples()) == set(store_b.triples())
        assert store_a.export_ntriples() == store_b.export_ntriples()


class TestNTriples:
    def test_empty_store_exports_empty_bytes(self):
        assert TripleStore().export_ntriples() == b""

    def test_round_trip_identity(self, profiled_store):
        restored = TripleStore()
        restored.import_ntriples(profiled_store.export_ntriples())
        assert set(restored.triples()) == set(profiled_store.triples())

    def test_bad_line_reports_line_number(self):
        store = TripleStore()
        with pytest.raises(ParseError) as excinfo:
            store.import_ntriples(b"bad line\n")
        assert "line 1" in str(excinfo.value)
        assert len(store) == 0

    def test_error_line_number_counts_comments(self):
        data = b"# comment\n<http://a/> <http://b/> <http://c/> .\nnonsense .\n"
        with pytest.raises(ParseError) as excinfo:
            parse_ntriples(data)
        assert "line 3" in str(excinfo.value)

    def test_export_is_sorted_and_newline_terminated(self, profiled_store):
        data = profiled_store.export_ntriples()
        lines = data.decode("utf-8").splitlines()
        assert lines == sorted(lines)
        assert data.endswith(b".\n")

    def test_escapes_round_trip(self):
        store = TripleStore()
        tricky = 'quote " backslash \\ newline \n tab \t end'
        store.insert(Triple(iri("s"), iri("p"), Literal(tricky)))
        store.insert(Triple(iri("s"), iri("p"), Literal("hëllo", lang="en-GB")))
        restored = TripleStore()
        restored.import_ntriples(store.export_ntriples())
        assert set(restored.triples()) == set(store.triples())

    def test_export_determinism_for_equal_sets(self):
        triples = [
            Triple(iri("s1"), iri("p"), lit("x")),
            Triple(iri("s0"), iri("p"), lit("y", XSD_INTEGER)),
            Triple(BlankNode("n1"), iri("q"), iri("s0")),
        ]
        store_a, store_b = TripleStore(), TripleStore()
        store_a.insert_all(triples)
        store_b.insert_all(reversed(triples))
        assert store_a.export_ntriples() == store_b.export_ntriples()

    def test_blank_labels_survive_up_to_isomorphism(self):
        store = TripleStore()
        store.insert(Triple(BlankNode("x"), iri("p"), lit("1")))
        store.insert(Triple(BlankNode("y"), iri("p"), lit("2")))
        store.insert(Triple(iri("s"), iri("q"), BlankNode("x")))
        restored = TripleStore()
        restored.import_ntriples(store.export_ntriples())
        assert graphs_isomorphic(store.triples(), restored.triples())
        # and a relabeled variant is still isomorphic
        relabeled = [
            Triple(BlankNode("u"), iri("p"), lit("1")),
            Triple(BlankNode("v"), iri("p"), lit("2")),
            Triple(iri("s"), iri("q"), BlankNode("u")),
        ]
        assert graphs_isomorphic(store.triples(), relabeled)
        not_iso = relabeled[:2] + [Triple(iri("s"), iri("q"), BlankNode("v"))]
        assert not graphs_isomorphic(store.triples(), not_iso)

    def test_string_datatype_stays_implicit(self):
        line = triple_to_ntriples(Triple(iri("s"), iri("p"), Literal("v")))
        assert line == f"<{EX}s> <{EX}p> \"v\" ."
        (parsed,) = parse_ntriples(line)
        assert parsed.object == Literal("v", XSD_STRING)


class TestParseTerm:
    def test_iri(self):
        assert parse_term("<http://a/b>") == Iri("http://a/b")

    def test_typed_literal(self):
        assert parse_term('"1"^^<http://www.w3.org/2001/XMLSchema#integer>') == lit("1", XSD_INTEGER)

    def test_lang_literal(self):
        assert parse_term('"Auto"@de') == Literal("Auto", lang="de")

    def test_blank(self):
        assert parse_term("_:b1") == BlankNode("b1")

    @pytest.mark.parametrize("text", ["", "<http://a", '"open', "plainword", "_:", '"x"^^string',
                                      "<http://a/> extra"])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_term(text)


class TestConcurrency:
    def test_parallel_readers_and_writers_stay_consistent(self):
        store = TripleStore()
        errors = []

        def writer(start):
            try:
                for i in range(start, start + 50):
                    store.insert(Triple(iri(f"s{i}"), iri("p"), lit(str(i))))
            except Exception as exc:  # pragma: no cover - failure path
                errors.append(exc)

        def reader():
            try:
                for _ in range(50):
                    store.query(
                        BGPQuery(("s",), (TriplePattern(Variable("s"), iri("p"), Variable("o")),))
                    )
                    store.export_ntriples()
            except Exception as exc:  # pragma: no cover - failure path
                errors.append(exc)

        threads = [threading.Thread(target=writer, args=(n * 50,)) for n in range(3)]
        threads += [threading.Thread(target=reader) for _ in range(3)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        assert len(store) == 150
