"""Turtle writer (output only)."""

import re

from .graph import RDF_TYPE
from .namespaces import PrefixMap
from .terms import Iri, Literal, sort_key, term_n3

_LOCAL_RE = re.compile(r"[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?\Z")


def _qname(iri, prefixes):
    split = prefixes.shrink(iri)
    if split is None:
        return None
    prefix, local = split
    if local == "" or _LOCAL_RE.match(local):
        return "%s:%s" % (prefix, local)
    return None


def _render(term, prefixes):
    if type(term) is Iri:
        return _qname(term, prefixes) or term_n3(term)
    if term.datatype is not None:
        dt = _qname(term.datatype, prefixes) or term_n3(term.datatype)
        return term_n3(Literal(term.lexical)) + "^^" + dt
    return term_n3(term)


def serialize_turtle(graph, prefixes=None):
    """Deterministic Turtle bytes.

    All prefix declarations come first, then one block per subject;
    subjects, predicates and objects are each sorted bytewise on their
    N-Triples form.  IRIs that cannot be written as a prefixed name are
    written in full.
    """
    if prefixes is None:
        prefixes = graph.prefixes if graph.prefixes is not None else PrefixMap.default()
    out = []
    for prefix, ns in prefixes:
        out.append("@prefix %s: %s .\n" % (prefix, term_n3(ns)))
    by_subject = {}
    for s, p, o in graph:
        by_subject.setdefault(s, {}).setdefault(p, []).append(o)
    for s in sorted(by_subject, key=sort_key):
        out.append("\n")
        out.append(_render(s, prefixes))
        preds = by_subject[s]
        chunks = []
        for p in sorted(preds, key=sort_key):
            verb = "a" if p == RDF_TYPE else _render(p, prefixes)
            objs = " , ".join(_render(o, prefixes) for o in sorted(preds[p], key=sort_key))
            chunks.append("%s %s" % (verb, objs))
        out.append(" " + " ;\n    ".join(chunks) + " .\n")
    return "".join(out).encode("utf-8")


def write_turtle(graph, path, prefixes=None):
    with open(path, "wb") as fh:
        fh.write(serialize_turtle(graph, prefixes))
