"""Command line front end.

    entrylod convert   --input DIR|FILE --out DIR|FILE [--merge] [--format turtle|ntriples]
    entrylod validate  --graph FILE [--report TSV]
    entrylod reconcile --graph FILE --authorities TSV --out NT --review TSV
    entrylod stats     --graph FILE
    entrylod query     --graph FILE --bgp FILE

Exit status: 0 success, 1 validation violations, 2 operational error.
"""

import argparse
import os
import sys

from . import __version__
from .batch import convert_records, load_records, merged
from .errors import EntryLodError
from .iri import DEFAULT_BASE
from .mapping.table import MappingTable, Vocabulary
from .rdf.graph import Graph
from .rdf.ntriples import read_ntriples, serialize_ntriples
from .rdf.turtle import serialize_turtle
from .reconcile import load_snapshot, reconcile, review_tsv
from .store import TripleStore, evaluate, parse_patterns, results_tsv, stats
from .validate import validate

OK, VIOLATIONS, FAILURE = 0, 1, 2


class Fail(Exception):
    """Operational failure; the message goes to stderr and the exit status is 2."""


def _err(msg):
    sys.stderr.write("entrylod: %s\n" % msg)


def _write(path, data):
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(data)


def _serialize(graph, fmt):
    return serialize_turtle(graph) if fmt == "turtle" else serialize_ntriples(graph)


def _read_graphs(paths):
    g = Graph()
    for p in paths:
        if not os.path.isfile(p):
            raise Fail("%s: no such file" % p)
        try:
            read_ntriples(p, g)
        except EntryLodError as exc:
            raise Fail("%s: %s" % (p, exc)) from None
    return g


def _read_text(path):
    with open(path, "rb") as fh:
        return fh.read().decode("utf-8")


def cmd_convert(args):
    for p in args.input:
        if not os.path.exists(p):
            raise Fail("%s: no such file or directory" % p)
    try:
        table = MappingTable.parse(args.mapping) if args.mapping else MappingTable.default()
        vocab = Vocabulary.parse(args.vocabulary) if args.vocabulary else Vocabulary.default()
        records = load_records(args.input)
    except (OSError, EntryLodError) as exc:
        raise Fail(str(exc)) from None
    results = convert_records(records, table, vocab, base=args.base, jobs=args.jobs,
                              strict_roles=args.strict_roles)
    status = OK
    for r in results:
        for w in r.warnings:
            sys.stderr.write(w.format() + "\n")
        if r.error:
            _err("%s %s: %s" % (r.kind, r.id, r.error))
            status = FAILURE
    ext = ".ttl" if args.format == "turtle" else ".nt"
    if args.merge:
        _write(args.out, _serialize(merged(results), args.format))
        written = 1
    else:
        written = 0
        for r in results:
            if r.graph is not None:
                _write(os.path.join(args.out, r.name + ext), _serialize(r.graph, args.format))
                written += 1
    ok = sum(1 for r in results if r.graph is not None)
    print("converted %d of %d records, %d file(s) written" % (ok, len(results), written))
    return status


def cmd_validate(args):
    g = _read_graphs(args.graph)
    report = validate(g, base=args.base)
    if args.report:
        _write(args.report, report.to_tsv().encode("utf-8"))
    sys.stdout.write(report.to_text())
    return OK if report.ok else VIOLATIONS


def cmd_reconcile(args):
    g = _read_graphs(args.graph)
    try:
        snapshot = []
        for path in args.authorities:
            snapshot.extend(load_snapshot(path))
    except (OSError, EntryLodError) as exc:
        raise Fail(str(exc)) from None
    links, review = reconcile(g, snapshot, threshold=args.min_score, margin=args.margin)
    _write(args.out, serialize_ntriples(links))
    if args.review:
        _write(args.review, review_tsv(review).encode("utf-8"))
    accepted = len({s for s, _, _ in links})
    print("accepted %d entities, %d links, %d for review" % (accepted, len(links), len(review)))
    return OK


def cmd_stats(args):
    st = stats(TripleStore(_read_graphs(args.graph)))
    sys.stdout.write(st.to_text())
    return OK


def cmd_query(args):
    store = TripleStore(_read_graphs(args.graph))
    try:
        query = parse_patterns(_read_text(args.bgp))
    except (OSError, EntryLodError) as exc:
        raise Fail("%s: %s" % (args.bgp, exc)) from None
    sys.stdout.write(results_tsv(query, evaluate(store, query)))
    return OK


def build_parser():
    parser = argparse.ArgumentParser(prog="entrylod",
                                     description="Convert F and OA catalogue records to linked data.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert record files to RDF")
    p.add_argument("--input", required=True, action="append", help="record file or directory (repeatable)")
    p.add_argument("--mapping", help="mapping table TSV (default: the shipped table)")
    p.add_argument("--vocabulary", help="vocabulary TSV (default: the shipped one)")
    p.add_argument("--base", default=DEFAULT_BASE, help="base IRI for minted resources")
    p.add_argument("--out", required=True, help="output directory, or output file with --merge")
    p.add_argument("--format", choices=("turtle", "ntriples"), default="turtle")
    p.add_argument("--merge", action="store_true", help="write one merged file")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--strict-roles", action="store_true", help="unknown role names are errors")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("validate", help="check a graph against the structural rules")
    p.add_argument("--graph", required=True, action="append", help="N-Triples file (repeatable)")
    p.add_argument("--report", help="write violations as TSV")
    p.add_argument("--base", default=DEFAULT_BASE)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("reconcile", help="link local entities to authority records")
    p.add_argument("--graph", required=True, action="append")
    p.add_argument("--authorities", required=True, action="append", help="snapshot TSV (repeatable)")
    p.add_argument("--min-score", type=float, default=0.85)
    p.add_argument("--margin", type=float, default=0.05)
    p.add_argument("--out", required=True, help="N-Triples file for rdfs:seeAlso links")
    p.add_argument("--review", help="TSV of ambiguous matches")
    p.set_defaults(func=cmd_reconcile)

    p = sub.add_parser("stats", help="dataset statistics")
    p.add_argument("--graph", required=True, action="append")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("query", help="evaluate a basic graph pattern file")
    p.add_argument("--graph", required=True, action="append")
    p.add_argument("--bgp", required=True, help="pattern file")
    p.set_defaults(func=cmd_query)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0) and FAILURE
    if getattr(args, "jobs", 1) < 1:
        _err("--jobs must be at least 1")
        return FAILURE
    try:
        return args.func(args)
    except Fail as exc:
        _err(str(exc))
        return FAILURE
    except OSError as exc:
        _err(str(exc))
        return FAILURE


if __name__ == "__main__":
    sys.exit(main())
