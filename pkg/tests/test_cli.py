"""Command line: outputs, exit statuses and end-to-end determinism."""

import os
import subprocess
import sys

import pytest

from entrylod.cli import main
from entrylod.iri import DEFAULT_BASE
from entrylod.mapping.registry import T
from entrylod.rdf import Graph, Iri, read_ntriples
from entrylod.store import parse_patterns, results_tsv

from helpers import AUTHORITIES, CORPUS, OBJECT_TYPES, fixture
from strategies import brute_force


def N(path):
    return Iri(DEFAULT_BASE + path)


@pytest.fixture(scope="module")
def merged_nt(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli") / "all.nt"
    assert main(["convert", "--input", CORPUS, "--merge", "--format", "ntriples", "--out", str(out)]) == 0
    return out


def test_convert_per_entry_files(tmp_path, capsys):
    assert main(["convert", "--input", CORPUS, "--out", str(tmp_path)]) == 0
    assert sorted(os.listdir(tmp_path)) == ["fentry-72486.ttl", "oaentry-15429.ttl", "oaentry-43677.ttl"]
    assert "converted 3 of 3 records, 3 file(s) written" in capsys.readouterr().out


def test_convert_is_byte_deterministic(tmp_path):
    for d in ("a", "b"):
        assert main(["convert", "--input", CORPUS, "--format", "ntriples", "--out", str(tmp_path / d)]) == 0
    for name in os.listdir(tmp_path / "a"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_merge_equals_union(tmp_path, merged_nt):
    assert main(["convert", "--input", CORPUS, "--format", "ntriples", "--out", str(tmp_path)]) == 0
    union = Graph()
    for name in os.listdir(tmp_path):
        read_ntriples(str(tmp_path / name), union)
    assert set(read_ntriples(str(merged_nt))) == set(union)


def test_custody_triples_in_72486(tmp_path):
    assert main(["convert", "--input", fixture("corpus", "f-72486.rec"), "--format", "ntriples",
                 "--out", str(tmp_path)]) == 0
    g = read_ntriples(str(tmp_path / "fentry-72486.nt"))
    custody = N("photo/72486/positive/item/custody/1")
    assert (custody, T("rdf:type"), T("crm:E10_Transfer_of_Custody")) in g
    assert (custody, T("crm:P30_transferred_custody_of"), N("photo/72486/positive/item")) in g


def test_convert_warnings_go_to_stderr(tmp_path, capsys):
    assert main(["convert", "--input", OBJECT_TYPES, "--merge", "--out", str(tmp_path / "x.ttl")]) == 0
    err = capsys.readouterr().err
    assert "missing-mandatory" in err


def test_convert_failures(tmp_path, capsys):
    assert main(["convert", "--input", str(tmp_path / "nope"), "--out", str(tmp_path)]) == 2
    bad = tmp_path / "bad.rec"
    bad.write_text("TSK: F\nnot a field line\n", encoding="utf-8")
    assert main(["convert", "--input", str(bad), "--out", str(tmp_path / "o")]) == 2
    err = capsys.readouterr().err
    assert "bad.rec" in err
    dim = tmp_path / "dim.rec"
    dim.write_text("TSK: OA\nID: 1\n[MAN]\nMISA: tall\nMISU: mm\n[/MAN]\n", encoding="utf-8")
    assert main(["convert", "--input", str(dim), "--out", str(tmp_path / "o2")]) == 2
    assert main(["convert", "--input", CORPUS, "--out", str(tmp_path), "--jobs", "0"]) == 2


def test_validate_clean(tmp_path, merged_nt, capsys):
    report = tmp_path / "r.tsv"
    assert main(["validate", "--graph", str(merged_nt), "--report", str(report)]) == 0
    assert report.read_text() == ""
    assert "graph passes all rules" in capsys.readouterr().out


def test_validate_violations(tmp_path, capsys):
    report = tmp_path / "r.tsv"
    path = fixture("violations", "v10-place-cycle.nt")
    assert main(["validate", "--graph", path, "--report", str(report)]) == 1
    assert [ln.split("\t")[0] for ln in report.read_text().splitlines()] == ["V10"]


def test_validate_bad_graph(tmp_path):
    bad = tmp_path / "bad.nt"
    bad.write_text("_:b <urn:x:p> <urn:x:o> .\n", encoding="utf-8")
    assert main(["validate", "--graph", str(bad)]) == 2
    assert main(["validate", "--graph", str(tmp_path / "missing.nt")]) == 2


def test_reconcile(tmp_path, capsys):
    ill = tmp_path / "ill.nt"
    assert main(["convert", "--input", OBJECT_TYPES, "--merge", "--format", "ntriples", "--out", str(ill)]) == 0
    capsys.readouterr()
    links, review = tmp_path / "links.nt", tmp_path / "review.tsv"
    assert main(["reconcile", "--graph", str(ill), "--authorities", os.path.join(AUTHORITIES, "aat.tsv"),
                 "--out", str(links), "--review", str(review)]) == 0
    assert "accepted 1 entities, 1 links, 0 for review" in capsys.readouterr().out
    assert links.read_text() == ("<%sterm/polyptych> <http://www.w3.org/2000/01/rdf-schema#seeAlso> "
                                 "<http://vocab.getty.edu/aat/300178235> .\n" % DEFAULT_BASE)
    assert review.read_text().startswith("local\tauthority")


def test_reconcile_matches_module(tmp_path, capsys):
    from helpers import local_entity_graph
    from entrylod.rdf import write_ntriples
    from entrylod.reconcile import load_snapshot, reconcile
    g, _ = local_entity_graph()
    src = tmp_path / "local.nt"
    write_ntriples(g, str(src))
    snap = os.path.join(AUTHORITIES, "gold-snapshot.tsv")
    links, review = reconcile(g, load_snapshot(snap))
    out = tmp_path / "links.nt"
    assert main(["reconcile", "--graph", str(src), "--authorities", snap, "--out", str(out),
                 "--review", str(tmp_path / "r.tsv")]) == 0
    assert set(read_ntriples(str(out))) == set(links)
    accepted = len({s for s, _, _ in links})
    assert ("accepted %d entities, %d links, %d for review" % (accepted, len(links), len(review))
            in capsys.readouterr().out)


def test_reconcile_bad_snapshot(tmp_path, merged_nt):
    snap = tmp_path / "s.tsv"
    snap.write_text("id\tname\n", encoding="utf-8")
    assert main(["reconcile", "--graph", str(merged_nt), "--authorities", str(snap),
                 "--out", str(tmp_path / "l.nt")]) == 2


def test_stats(merged_nt, capsys):
    assert main(["stats", "--graph", str(merged_nt)]) == 0
    out = capsys.readouterr().out
    n = len(read_ntriples(str(merged_nt)))
    assert out.splitlines()[0] == "triples\t%d" % n


def test_query_matches_oracle(tmp_path, merged_nt, capsys):
    bgp = tmp_path / "q.bgp"
    bgp.write_text("?e fentry:describes ?w .\n?w rdf:type fabio:ArtisticWork .\n", encoding="utf-8")
    assert main(["query", "--graph", str(merged_nt), "--bgp", str(bgp)]) == 0
    q = parse_patterns(bgp.read_text())
    want = brute_force(read_ntriples(str(merged_nt)), q)
    want.sort(key=lambda b: tuple(b[v] for v in q.variables))
    assert capsys.readouterr().out == results_tsv(q, want)


def test_query_syntax_error(tmp_path, merged_nt, capsys):
    bgp = tmp_path / "q.bgp"
    bgp.write_text("?e fentry:describes\n", encoding="utf-8")
    assert main(["query", "--graph", str(merged_nt), "--bgp", str(bgp)]) == 2
    assert "q.bgp" in capsys.readouterr().err


def test_usage_errors_exit_2(capsys):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["stats"]) == 2
    assert main(["--help"]) == 0


def test_module_entry_point(tmp_path):
    out = tmp_path / "x.nt"
    proc = subprocess.run([sys.executable, "-m", "entrylod", "convert", "--input", CORPUS, "--merge",
                           "--format", "ntriples", "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    proc = subprocess.run([sys.executable, "-m", "entrylod", "validate", "--graph", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0


def test_pipeline_is_byte_deterministic(tmp_path, capsys):
    def run(d):
        d.mkdir()
        nt = d / "all.nt"
        assert main(["convert", "--input", CORPUS, "--input", OBJECT_TYPES, "--merge",
                     "--format", "ntriples", "--out", str(nt)]) == 0
        assert main(["validate", "--graph", str(nt), "--report", str(d / "report.tsv")]) == 0
        assert main(["reconcile", "--graph", str(nt), "--authorities",
                     os.path.join(AUTHORITIES, "aat.tsv"), "--authorities",
                     os.path.join(AUTHORITIES, "gold-snapshot.tsv"),
                     "--out", str(d / "links.nt"), "--review", str(d / "review.tsv")]) == 0
        capsys.readouterr()
        assert main(["stats", "--graph", str(nt), "--graph", str(d / "links.nt")]) == 0
        (d / "stats.txt").write_text(capsys.readouterr().out, encoding="utf-8")
        return {p.name: p.read_bytes() for p in sorted(d.iterdir())}
    assert run(tmp_path / "one") == run(tmp_path / "two")
