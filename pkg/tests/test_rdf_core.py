import rdflib
import pytest
from hypothesis import given, settings

from entrylod.errors import BlankNodeRejected, MalformedIri, MalformedLiteral, NTriplesSyntaxError
from entrylod.rdf import (
    DEFAULT, DEFAULT_PREFIXES, RDF_TYPE, RDFS_LABEL, Graph, Iri, Literal, PrefixMap, add, curie,
    match, parse_ntriples, serialize_ntriples, serialize_turtle,
)
from excerpts import EXCERPTS, PLACEHOLDER
from helpers import ours, to_rdflib
from strategies import graphs, triples

S = Iri("a:s")
P = Iri("a:p")
O = Iri("a:o")


# ---------------------------------------------------------------- terms

@pytest.mark.parametrize("bad", ["", "no-scheme", "http://a b", "http://a<b", 'http://a"b', "http://a>"])
def test_iri_rejects_malformed(bad):
    with pytest.raises(MalformedIri):
        Iri(bad)


def test_literal_lang_and_datatype_exclusive():
    with pytest.raises(MalformedLiteral):
        Literal("x", "it", "http://www.w3.org/2001/XMLSchema#string")


def test_add_literal_with_lang_and_datatype_is_malformed():
    g = Graph()
    with pytest.raises(MalformedLiteral):
        add(g, (S, P, ("Fotografia", "it", "http://www.w3.org/2001/XMLSchema#string")))
    assert len(g) == 0


@pytest.mark.parametrize("tag", ["IT", "i", "toolongtag", "it_IT"])
def test_bad_language_tags(tag):
    with pytest.raises(MalformedLiteral):
        Literal("x", tag)


# ---------------------------------------------------------------- graph

def test_add_singleton_and_duplicate():
    g = Graph()
    add(g, (S, P, O))
    assert len(g) == 1
    add(g, (S, P, O))
    assert len(g) == 1


def test_discard_keeps_indexes_consistent():
    g = Graph([(S, P, O), (S, P, Literal("x"))])
    g.discard((S, P, O))
    assert len(g) == 1
    assert match(g, None, None, O) == set()
    assert match(g, S, None, None) == {(S, P, Literal("x"))}


@settings(max_examples=100, deadline=None)
@given(triples)
def test_set_semantics(t):
    g = Graph()
    add(g, t)
    n = len(g)
    add(g, t)
    assert len(g) == n == 1


@settings(max_examples=60, deadline=None)
@given(graphs(200))
def test_match_equals_brute_force(g):
    everything = list(g)
    probe = everything[:3] + [(S, P, O)]
    for s0, p0, o0 in probe:
        for s in (None, s0):
            for p in (None, p0):
                for o in (None, o0):
                    want = {t for t in everything
                            if (s is None or t[0] == s) and (p is None or t[1] == p) and (o is None or t[2] == o)}
                    assert match(g, s, p, o) == want


def test_match_all_wildcards_is_whole_graph():
    g = Graph([(S, P, O), (O, P, S)])
    assert match(g) == set(g)


def test_match_photo_work_level_excerpt():
    # the work-level excerpt gives :photo-72486 six distinct predicates
    # (two of them rdf:type objects, so seven triples)
    ex = rdflib.Graph().parse(EXCERPTS, format="turtle")
    photo = rdflib.URIRef(PLACEHOLDER + "photo-72486")
    g = Graph((Iri(str(s)), Iri(str(p)), Iri(str(o))) for s, p, o in ex.triples((photo, None, None)))
    found = match(g, Iri(str(photo)))
    assert len({p for _, p, _ in found}) == 6
    assert len(found) == 7


# ---------------------------------------------------------------- prefixes

def test_default_prefix_bundle():
    assert [p for p, _ in DEFAULT_PREFIXES] == [
        "crm", "fentry", "oaentry", "fabio", "frbr", "pro", "scor", "hico", "cito", "prov",
        "tv", "foaf", "rdfs", "rdf", "owl"]
    assert curie("rdf:type") == RDF_TYPE
    assert DEFAULT.shrink(RDFS_LABEL) == ("rdfs", "label")


def test_prefix_rebind_replaces():
    pm = PrefixMap([("ex", "http://a/")])
    pm.bind("ex", "http://b/")
    assert pm["ex"] == "http://b/" and len(pm) == 1


# ---------------------------------------------------------------- N-Triples

def test_empty_graph_serializes_to_nothing():
    assert serialize_ntriples(Graph()) == b""


def test_italian_label_line():
    label = 'Fotografia "Alinari, Fratelli , Perugia, Collegio del Cambio"'
    g = Graph([(Iri("https://w3id.org/zericatalog/photo/59972"), RDFS_LABEL, Literal(label, "it"))])
    out = serialize_ntriples(g).decode("utf-8")
    assert out.endswith('"Fotografia \\"Alinari, Fratelli , Perugia, Collegio del Cambio\\""@it .\n')


def test_parse_single_triple():
    g = parse_ntriples(b"<a:s> <a:p> <a:o> .\n")
    assert set(g) == {(S, P, O)}


@pytest.mark.parametrize("line", ["_:b0 <a:p> <a:o> .", "<a:s> <a:p> _:b1 ."])
def test_blank_nodes_rejected(line):
    with pytest.raises(BlankNodeRejected):
        parse_ntriples(line)


@pytest.mark.parametrize("line", ["<a:s> <a:p> <a:o>", "<a:s> <a:p> .", '<a:s> <a:p> "x" . junk', "<a:s <a:p> <a:o> ."])
def test_syntax_errors_carry_line(line):
    with pytest.raises(NTriplesSyntaxError) as exc:
        parse_ntriples("# comment\n" + line)
    assert exc.value.line == 2


def test_ntriples_sorted_bytewise():
    g = Graph([(Iri("a:b"), P, O), (Iri("a:a"), P, O), (Iri("a:B"), P, O)])
    lines = serialize_ntriples(g).splitlines()
    assert lines == sorted(lines)


@settings(max_examples=200, deadline=None)
@given(graphs(200))
def test_ntriples_round_trip(g):
    data = serialize_ntriples(g)
    assert parse_ntriples(data) == g
    assert serialize_ntriples(g) == data


@settings(max_examples=60, deadline=None)
@given(graphs(60))
def test_ntriples_matches_rdflib(g):
    assert to_rdflib(serialize_ntriples(g), "nt") == ours(g)


# ---------------------------------------------------------------- Turtle

def test_empty_turtle_is_prefix_block():
    text = serialize_turtle(Graph()).decode()
    assert all(line.startswith("@prefix") for line in text.splitlines())
    assert len(text.splitlines()) == len(DEFAULT_PREFIXES)


def test_turtle_describes_four_objects(corpus_graph):
    from entrylod.iri import DEFAULT_BASE
    entry = Iri(DEFAULT_BASE + "fentry/72486")
    sub = Graph(corpus_graph.match(entry, None, None))
    text = serialize_turtle(sub).decode()
    line = next(ln for ln in text.splitlines() if "fentry:describes" in ln)
    assert line.count(" , ") == 3


@settings(max_examples=200, deadline=None)
@given(graphs(200))
def test_turtle_and_ntriples_agree(g):
    assert to_rdflib(serialize_turtle(g), "turtle") == ours(g)


def test_turtle_deterministic(corpus_graph):
    assert serialize_turtle(corpus_graph) == serialize_turtle(corpus_graph.copy())
