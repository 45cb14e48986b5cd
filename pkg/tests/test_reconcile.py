"""Snapshot loading, match scoring and link emission."""

import io
import os

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entrylod import _purepy
from entrylod.errors import SnapshotError
from entrylod.iri import DEFAULT_BASE
from entrylod.mapping.registry import T
from entrylod.rdf import Graph, Iri, Literal
from entrylod.reconcile import (
    COLUMNS, AuthorityRecord, date_compatibility, load_snapshot, local_entities, name_similarity,
    reconcile, review_tsv, score_all, score_match,
)

from helpers import AUTHORITIES, local_entity_graph

HEAD = "\t".join(COLUMNS) + "\n"
GOLD_SNAPSHOT = os.path.join(AUTHORITIES, "gold-snapshot.tsv")


def row(*cols):
    cols = list(cols) + [""] * (len(COLUMNS) - len(cols))
    return "\t".join(cols) + "\n"


def person(rid, name, birth=None, death=None, aliases=()):
    return AuthorityRecord(rid, "person", name, tuple(aliases), birth, death,
                           {"viaf": "http://viaf.org/viaf/%s" % rid})


# --------------------------------------------------------------- snapshots

def test_gold_snapshot_loads():
    snap = load_snapshot(GOLD_SNAPSHOT)
    assert len(snap) == 20
    a01 = snap[0]
    assert a01.id == "A01" and a01.aliases == ("Brogi, Giacomo",)
    assert (a01.birth_year, a01.death_year) == (1822, 1881)
    assert a01.external == {"viaf": "http://viaf.org/viaf/900001",
                            "ulan": "http://vocab.getty.edu/ulan/500001"}


def test_snapshot_sources_agree():
    with open(GOLD_SNAPSHOT, "rb") as fh:
        data = fh.read()
    assert load_snapshot(data) == load_snapshot(data.decode()) == load_snapshot(io.BytesIO(data))


def test_full_iris_are_kept():
    snap = load_snapshot(HEAD + row("x", "place", "Bologna", "", "", "", "", "", "",
                                    "https://www.geonames.org/3181928/"))
    assert snap[0].external["geonames"] == "https://www.geonames.org/3181928/"


@pytest.mark.parametrize("text,code", [
    ("id\tkind\n" + row("x", "person", "A"), "bad-header"),
    (HEAD + row("x", "person", "A") + row("x", "person", "B"), "duplicate-id"),
    (HEAD + row("x", "building", "A"), "bad-kind"),
    (HEAD + row("x", "person", ""), "bad-row"),
    (HEAD + row("x", "person", "A", "", "about 1500"), "bad-year"),
    (HEAD + row("x", "person", "A", "", "1600", "1500"), "bad-year"),
])
def test_snapshot_errors(text, code):
    with pytest.raises(SnapshotError) as exc:
        load_snapshot(text)
    assert exc.value.code == code


# ----------------------------------------------------------------- scoring

def test_exact_name_and_dates_score_one():
    assert score_match("Giacomo Brogi", (1822, 1881), person("a", "Giacomo Brogi", 1822, 1881)) == 1.0


def test_contradictory_dates_cost_the_date_weight():
    assert score_match("Giacomo Brogi", (1700, 1750),
                       person("a", "Giacomo Brogi", 1822, 1881)) == pytest.approx(0.8)


def test_token_order_does_not_matter():
    # oracle: the same Jaro-Winkler on the token-sorted slugs
    want = _purepy.jaro_winkler("brogi-giacomo", "brogi-giacomo")
    assert want == 1.0
    assert name_similarity("Brogi, Giacomo", "Giacomo Brogi") == want


def test_name_similarity_matches_kernel_oracle():
    assert name_similarity("Bellini", "Bellino") == pytest.approx(_purepy.jaro_winkler("bellini", "bellino"))


@pytest.mark.parametrize("local,auth,want", [
    (None, (1, 2), 1.0),
    ((1450, 1500), (None, None), 1.0),
    ((1450, 1500), (1490, 1550), 1.0),
    ((1450, 1500), (1501, 1550), 0.0),
    ((1450, None), (1300, 1400), 0.0),
    ((None, 1460), (1455, None), 1.0),
])
def test_date_compatibility(local, auth, want):
    assert date_compatibility(local, person("a", "x", *auth)) == want


def test_empty_local_name_is_rejected():
    with pytest.raises(ValueError):
        score_match("  ", None, person("a", "x"))


def _one_entity(name):
    node = Iri(DEFAULT_BASE + "person/probe")
    g = Graph()
    g.add((node, T("rdf:type"), T("crm:E21_Person")))
    g.add((node, T("rdfs:label"), Literal(name, "it")))
    return g, node


def test_two_equal_rows_are_ambiguous():
    g, node = _one_entity("Jacopo Bassano")
    snap = [person("x1", "Jacopo Bassano"), person("x2", "Jacopo Bassano")]
    (cand,) = score_all(g, snap)
    assert cand.status == "ambiguous"
    assert cand.score == cand.runner_up_score == 1.0
    links, review = reconcile(g, snap)
    assert len(links) == 0 and review == [cand]


def test_two_rows_below_one_are_ambiguous():
    g, _ = _one_entity("Jacopo Bassano")
    snap = [person("x1", "Jacopo Bassan"), person("x2", "Jacopo Basano")]
    (cand,) = score_all(g, snap)
    assert 0.85 <= cand.runner_up_score <= cand.score < 1.0
    assert cand.score - cand.runner_up_score < 0.05
    assert cand.status == "ambiguous"
    assert len(reconcile(g, snap)[0]) == 0


def test_kind_must_agree():
    g, _ = _one_entity("Bologna")
    snap = load_snapshot(HEAD + row("b", "place", "Bologna", "", "", "", "", "", "", "3181928"))
    assert score_all(g, snap) == []


def test_resolver_adds_candidates():
    g, node = _one_entity("Federico Zeri")
    calls = []

    def resolver(name, kind):
        calls.append((name, kind))
        return [person("r1", "Federico Zeri", 1921, 1998)]

    links, review = reconcile(g, [], resolver=resolver)
    assert calls and calls[0] == ("Federico Zeri", "person")
    assert set(links) == {(node, T("rdfs:seeAlso"), Iri("http://viaf.org/viaf/r1"))}


# ---------------------------------------------------------------- gold set

def test_gold_set():
    g, gold = local_entity_graph()
    snap = load_snapshot(GOLD_SNAPSHOT)
    links, review = reconcile(g, snap)
    by_id = {r.id: r for r in snap}
    in_review = {c.local for c in review}
    linked = {}
    for s, _, o in links:
        linked.setdefault(str(s), set()).add(str(o))
    for local, want in gold.items():
        if want == "REVIEW":
            assert local in in_review and local not in linked
        elif want == "NONE":
            assert local not in in_review and local not in linked
        else:
            assert linked[local] == set(by_id[want].external.values())


def test_aat_polyptych_link(corpus_graph):
    from helpers import OBJECT_TYPES
    from entrylod.batch import convert_records, merged
    from entrylod.records import read_records
    g = merged(convert_records(read_records(OBJECT_TYPES)))
    links, review = reconcile(g, load_snapshot(os.path.join(AUTHORITIES, "aat.tsv")))
    assert (Iri(DEFAULT_BASE + "term/polyptych"), T("rdfs:seeAlso"),
            Iri("http://vocab.getty.edu/aat/300178235")) in links
    assert review == []


def test_review_tsv():
    g, _ = _one_entity("Jacopo Bassano")
    _, review = reconcile(g, [person("x1", "Jacopo Bassano"), person("x2", "Jacopo Bassano")])
    lines = review_tsv(review).splitlines()
    assert lines[0].split("\t") == ["local", "authority", "score", "runner_up", "runner_up_score"]
    assert lines[1].split("\t")[1:] == ["x1", "1.0000", "x2", "1.0000"]


# -------------------------------------------------------------- invariants

names = st.sampled_from(["Giacomo Brogi", "Brogi Giacomo", "Leonardo", "Leonardo da Vinci",
                         "Giovanni Bellini", "Gentile Bellini", "Jacopo Bassano", "Zeri"])
years = st.one_of(st.none(), st.integers(1300, 1900))


@st.composite
def snapshots(draw):
    out = []
    for i in range(draw(st.integers(1, 6))):
        b = draw(years)
        d = draw(st.one_of(st.none(), st.integers(b or 1300, (b or 1300) + 90)))
        out.append(person("p%d" % i, draw(names), b, d))
    return out


@settings(max_examples=60, deadline=None)
@given(names, years, snapshots(), st.floats(0.81, 1.0), st.floats(0.0, 0.2))
def test_reconcile_invariants(name, birth, snap, threshold, margin):
    g, node = _one_entity(name)
    if birth is not None:
        ev, span = Iri(node + "/birth"), Iri(DEFAULT_BASE + "timespan/%d" % birth)
        g.add((node, T("crm:P98i_was_born"), ev))
        g.add((ev, T("crm:P4_has_time_span"), span))
        g.add((span, T("crm:P82a_begin_of_the_begin"), Literal(str(birth))))
    links, review = reconcile(g, snap, threshold, margin)
    by_iri = {}
    for r in snap:
        for iri in r.external.values():
            by_iri.setdefault(iri, []).append(r)
    # only rdfs:seeAlso, one authority per entity, never across a date contradiction
    assert {p for _, p, _ in links} <= {T("rdfs:seeAlso")}
    targets = {o for _, _, o in links}
    assert len(targets) <= 1
    for o in targets:
        (r,) = by_iri[str(o)]
        assert date_compatibility((birth, None) if birth else None, r) == 1.0
    assert not (targets and review)
    for c in score_all(g, snap, threshold, margin):
        if c.status == "accepted":
            assert c.score >= threshold and c.score - c.runner_up_score >= margin


def test_local_entities_pick_up_labels(corpus_graph):
    found = local_entities(corpus_graph)
    kind, labels = found[Iri(DEFAULT_BASE + "place/florence")]
    assert kind == "place" and "Firenze" in labels
