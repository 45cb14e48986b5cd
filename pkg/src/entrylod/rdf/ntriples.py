"""N-Triples reader and canonical writer."""

import io

from ..errors import BlankNodeRejected, MalformedIri, MalformedLiteral, NTriplesSyntaxError
from ..kernels import parse_line
from .graph import Graph
from .terms import Iri, Literal, term_n3


def triple_line(triple):
    s, p, o = triple
    return "%s %s %s .\n" % (term_n3(s), term_n3(p), term_n3(o))


def serialize_ntriples(graph):
    """Canonical N-Triples bytes: one line per triple, lines sorted bytewise."""
    lines = sorted(triple_line(t).encode("utf-8") for t in graph)
    return b"".join(lines)


def write_ntriples(graph, path):
    with open(path, "wb") as fh:
        fh.write(serialize_ntriples(graph))


def _lines(data):
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    if isinstance(data, str):
        return io.StringIO(data)
    return data


def iter_ntriples(data):
    """Yield triples from N-Triples text, bytes, or an iterable of lines."""
    for lineno, line in enumerate(_lines(data), 1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        line = line.rstrip("\r\n")
        try:
            parsed = parse_line(line)
            if parsed is None:
                continue
            s, p, is_lit, o, lang, dt = parsed
            if is_lit:
                obj = Literal(o, lang.lower() if lang else None, dt)
            else:
                obj = Iri(o)
            yield Iri(s), Iri(p), obj
        except BlankNodeRejected as exc:
            raise BlankNodeRejected(str(exc), line=lineno) from None
        except (NTriplesSyntaxError, MalformedIri, MalformedLiteral) as exc:
            raise NTriplesSyntaxError(str(exc), line=lineno) from None


def parse_ntriples(data, graph=None):
    """Parse N-Triples into a (new or given) Graph; duplicate lines collapse."""
    g = Graph() if graph is None else graph
    for t in iter_ntriples(data):
        g.add(t)
    return g


def read_ntriples(path, graph=None):
    with open(path, "rb") as fh:
        return parse_ntriples(fh, graph)
