"""Small builders shared by several test modules."""

import csv
import os

import rdflib

from entrylod.iri import DEFAULT_BASE
from entrylod.mapping.registry import T
from entrylod.rdf import XSD_GYEAR, Graph, Iri, Literal

HERE = os.path.dirname(__file__)
FIXTURES = os.path.join(HERE, "fixtures")
CORPUS = os.path.join(FIXTURES, "corpus")
OBJECT_TYPES = os.path.join(FIXTURES, "object-types.rec")
AUTHORITIES = os.path.join(FIXTURES, "authorities")


def fixture(*parts):
    return os.path.join(FIXTURES, *parts)


def read_tsv(path):
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh if ln.strip() and not ln.startswith("#")]
    return list(csv.DictReader(lines, delimiter="\t"))


def local_entity_graph(path=None, base=DEFAULT_BASE):
    """Graph of labelled local entities from gold-local.tsv; returns (graph, gold)."""
    path = path or os.path.join(AUTHORITIES, "gold-local.tsv")
    g = Graph()
    gold = {}
    for row in read_tsv(path):
        node = Iri(base + row["path"])
        g.add((node, T("rdf:type"), T(row["class"])))
        g.add((node, T("rdfs:label"), Literal(row["label_it"], "it")))
        if row["label_en"]:
            g.add((node, T("rdfs:label"), Literal(row["label_en"], "en")))
        for prop, event, year, bound in (
            ("crm:P98i_was_born", "birth", row["birth"], "crm:P82a_begin_of_the_begin"),
            ("crm:P100i_died_in", "death", row["death"], "crm:P82b_end_of_the_end"),
        ):
            if year:
                ev = Iri(node + "/" + event)
                span = Iri(base + "timespan/" + year)
                g.add((node, T(prop), ev))
                g.add((ev, T("crm:P4_has_time_span"), span))
                g.add((span, T(bound), Literal(year, datatype=XSD_GYEAR)))
        gold[str(node)] = row["gold"]
    return g, gold


# names that slugify alike but are different keys, so the IRI policy
# has to hand out -2, -3 ... suffixes in record order
COLLIDING = ["Rossi, Mario", "Rossi Mario", "ROSSI  mario", "Rossì, Mario", "Rossi-Mario"]
PLACES = ["Sant'Anna", "Sant Anna", "Bologna", "Firenze", "Santanna"]


def synthetic_records(n, seed=0):
    """Text of ``n`` F/OA records with colliding agent and place names."""
    import random
    rnd = random.Random(seed)
    out = []
    for i in range(n):
        rid = str(100000 + i)
        who = rnd.choice(COLLIDING)
        where = rnd.choice(PLACES)
        if i % 3 == 2:
            out.append("TSK: OA\nID: %s\nNCTR: 08\nNCTN: %s\nLIR: C\nSGTI: Opera %d\nOGTD: dipinto\n"
                       "DTS: 15%02d\nLRCL: %s\n[AUT]\nAUTN: %s\nAUTM: bibliografia\n[/AUT]\n"
                       "[ITM]\nLDCN: %s\nLDCF: Italia\n[/ITM]\n"
                       % (rid, rid.zfill(8), i, i % 100, where, who, where))
        else:
            out.append("TSK: F\nID: %s\nNCTR: 08\nNCTN: %s\nLIR: C\nSGTI: Foto %d\nOGTD: positivo\n"
                       "DTS: 19%02d\nLRCL: %s\n[AUT]\nAUTN: %s\n[/AUT]\n"
                       "[ROL]\nROLN: %s\nROLR: fotografo\n[/ROL]\n"
                       "[MAN]\nMANT: positivo\nMISA: %d\nMISL: %d\nMISU: mm\n[/MAN]\n"
                       "[ITM]\nINVN: %s\nLDCN: %s\n[/ITM]\n"
                       % (rid, rid.zfill(8), i, i % 100, where, who, rnd.choice(COLLIDING),
                          100 + i % 50, 200 + i % 70, rid, where))
    return "%%\n".join(out)


def replicated_corpus(n):
    """``n`` records cloned from the fixture corpus with fresh ids."""
    from entrylod.records import read_records
    base = []
    for name in sorted(os.listdir(CORPUS)):
        with open(os.path.join(CORPUS, name), encoding="utf-8") as fh:
            base.append(fh.read())
    out = []
    for i in range(n):
        text = base[i % len(base)]
        new = str(200000 + i)
        lines = []
        for ln in text.splitlines():
            if ln.startswith("ID: ") or ln.startswith("NCTN: "):
                ln = ln.split(":")[0] + ": " + (new if ln.startswith("ID") else new.zfill(8))
            elif ln.startswith("OAID: "):
                ln = "OAID: 9%s" % new
            elif ln.startswith("OAEN: "):
                ln = "OAEN: 8%s" % new
            lines.append(ln)
        out.append("\n".join(lines) + "\n")
    return "%%\n".join(out)


# rdflib as an independent parser: both sides become plain tuples
def to_rdflib(data, fmt):
    g = rdflib.Graph().parse(data=data.decode("utf-8"), format=fmt)
    return {tuple(_norm(x) for x in t) for t in g}


def _norm(node):
    if isinstance(node, rdflib.Literal):
        return ("L", str(node), node.language, str(node.datatype) if node.datatype else None)
    return ("I", str(node))


def ours(g):
    out = set()
    for t in g:
        row = []
        for x in t:
            if isinstance(x, Literal):
                dt = x.datatype
                row.append(("L", x.lexical, x.language, str(dt) if dt else None))
            else:
                row.append(("I", str(x)))
        out.add(tuple(row))
    return out
