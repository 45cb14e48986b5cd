"""In-memory triple store with basic graph pattern (BGP) queries.

The store keeps SPO, POS and OSP indexes (those of the underlying
Graph) and answers conjunctions of triple patterns.  Patterns run in
ascending order of estimated cardinality, ties in input order; the
estimate is the size of the most-bound index prefix for the pattern's
constants.
"""

import re
from dataclasses import dataclass, field
from typing import Dict

from .errors import NTriplesSyntaxError, QuerySyntaxError
from .kernels import parse_line
from .rdf.graph import RDF_TYPE, Graph
from .rdf.namespaces import DEFAULT
from .rdf.terms import Iri, Literal, sort_key, term_n3

VAR_RE = re.compile(r"\?[a-z][a-z0-9]*\Z")
RDFS_SEE_ALSO = Iri("http://www.w3.org/2000/01/rdf-schema#seeAlso")

# rdfs:seeAlso buckets, matched on the target IRI
LINK_BUCKETS = (
    ("viaf", "viaf.org/"),
    ("ulan", "vocab.getty.edu/ulan/"),
    ("aat", "vocab.getty.edu/aat/"),
    ("geonames", "geonames.org/"),
    ("wikidata", "wikidata.org/"),
    ("dbpedia", "dbpedia.org/"),
)


class Var(str):
    """A named variable; the name keeps its leading '?'."""

    __slots__ = ()

    def __new__(cls, name):
        if not VAR_RE.match(name):
            raise QuerySyntaxError("bad variable name %r" % name)
        return str.__new__(cls, name)

    def __repr__(self):
        return "Var(%s)" % str.__repr__(self)


def is_var(term):
    return type(term) is Var


class BgpQuery:
    def __init__(self, patterns):
        patterns = [tuple(p) for p in patterns]
        if not patterns:
            raise QuerySyntaxError("a query needs at least one pattern")
        for p in patterns:
            if len(p) != 3:
                raise QuerySyntaxError("pattern %r does not have three terms" % (p,))
            for term in p:
                if type(term) not in (Var, Iri, Literal):
                    raise QuerySyntaxError("pattern term %r is not a variable, IRI or literal" % (term,))
        self.patterns = patterns

    @property
    def variables(self):
        """Variables in order of first appearance."""
        out = []
        for p in self.patterns:
            for t in p:
                if is_var(t) and t not in out:
                    out.append(t)
        return out

    def __repr__(self):
        return "BgpQuery(%r)" % (self.patterns,)


_TOKEN = re.compile(
    r'\s*(<[^>]*>'
    r'|\?[^\s]+'
    r'|"(?:[^"\\]|\\.)*"(?:@[A-Za-z0-9\-]+|\^\^<[^>]*>)?'
    r'|[A-Za-z][\w\-]*:[^\s]*)'
)


def _term(token, prefixes):
    if token.startswith("?"):
        return Var(token)
    if token.startswith("<") or token.startswith('"'):
        # reuse the N-Triples reader for escapes, language tags and datatypes
        try:
            parsed = parse_line("<urn:x:s> <urn:x:p> %s ." % token)
        except (NTriplesSyntaxError, ValueError) as exc:
            raise QuerySyntaxError("bad term %s: %s" % (token, exc)) from None
        _, _, is_lit, o, lang, dt = parsed
        if is_lit:
            return Literal(o, lang.lower() if lang else None, dt)
        return Iri(o)
    try:
        return prefixes.expand(token)
    except KeyError:
        raise QuerySyntaxError("unknown prefix in %s" % token) from None


def parse_patterns(text, prefixes=DEFAULT):
    """Pattern file: one pattern per line, three terms, '#' comments.

    Terms are ``<iri>``, ``?var``, ``"literal"`` (with optional @lang or
    ^^<datatype>) or a prefixed name from the default bundle.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    patterns = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        if body.endswith(" ."):
            body = body[:-2].rstrip()
        terms = []
        pos = 0
        while pos < len(body):
            m = _TOKEN.match(body, pos)
            if m is None:
                raise QuerySyntaxError("line %d: cannot read a term at %r" % (lineno, body[pos:]))
            try:
                terms.append(_term(m.group(1), prefixes))
            except QuerySyntaxError as exc:
                raise QuerySyntaxError("line %d: %s" % (lineno, exc)) from None
            pos = m.end()
            while pos < len(body) and body[pos].isspace():
                pos += 1
        if len(terms) != 3:
            raise QuerySyntaxError("line %d: expected 3 terms, got %d" % (lineno, len(terms)))
        patterns.append(tuple(terms))
    return BgpQuery(patterns)


class TripleStore:
    """Single-writer bulk load, then read-only queries."""

    def __init__(self, graph=None):
        self.triples = Graph()
        if graph is not None:
            self.triples.update(graph)

    def __len__(self):
        return len(self.triples)

    def __contains__(self, triple):
        return triple in self.triples

    def bulk_load(self, *graphs):
        for g in graphs:
            self.triples.update(g)
        return self

    # index access, mostly for agreement checks
    def lookup(self, triple, index):
        s, p, o = triple
        g = self.triples
        if index == "spo":
            return o in g._spo.get(s, {}).get(p, ())
        if index == "pos":
            return s in g._pos.get(p, {}).get(o, ())
        if index == "osp":
            return p in g._osp.get(o, {}).get(s, ())
        raise ValueError("unknown index %r" % index)

    def estimate(self, s=None, p=None, o=None):
        """Size of the most-bound index prefix for the bound positions."""
        g = self.triples
        if s is not None and p is not None and o is not None:
            return 1 if (s, p, o) in g else 0
        if s is not None and p is not None:
            return len(g._spo.get(s, {}).get(p, ()))
        if p is not None and o is not None:
            return len(g._pos.get(p, {}).get(o, ()))
        if o is not None and s is not None:
            return len(g._osp.get(o, {}).get(s, ()))
        if s is not None:
            return sum(len(v) for v in g._spo.get(s, {}).values())
        if p is not None:
            return sum(len(v) for v in g._pos.get(p, {}).values())
        if o is not None:
            return sum(len(v) for v in g._osp.get(o, {}).values())
        return len(g)

    def plan(self, query):
        """Pattern indexes in evaluation order."""
        costs = []
        for i, pat in enumerate(query.patterns):
            consts = [None if is_var(t) else t for t in pat]
            costs.append((self.estimate(*consts), i))
        return [i for _, i in sorted(costs)]

    def _extend(self, pattern, binding):
        bound = [binding.get(t) if is_var(t) else t for t in pattern]
        for triple in self.triples.match(*bound):
            new = dict(binding)
            ok = True
            for term, value in zip(pattern, triple):
                if is_var(term):
                    have = new.get(term)
                    if have is None:
                        new[term] = value
                    elif have != value:
                        ok = False   # repeated variable inside one pattern
                        break
            if ok:
                yield new

    def evaluate(self, query):
        """All solutions as dicts, sorted by their value tuples."""
        if not isinstance(query, BgpQuery):
            query = BgpQuery(query)
        solutions = [{}]
        for i in self.plan(query):
            pattern = query.patterns[i]
            nxt = []
            for b in solutions:
                nxt.extend(self._extend(pattern, b))
            solutions = nxt
            if not solutions:
                return []
        names = query.variables
        solutions.sort(key=lambda b: tuple(sort_key(b[v]) for v in names))
        return solutions


def evaluate(store, query):
    return store.evaluate(query)


def bulk_load(store, *graphs):
    return store.bulk_load(*graphs)


def results_tsv(query, solutions):
    """TSV with one column per variable (header without the '?')."""
    names = query.variables
    lines = ["\t".join(v[1:] for v in names)]
    for b in solutions:
        lines.append("\t".join(term_n3(b[v]) for v in names))
    return "\n".join(lines) + "\n"


@dataclass
class Stats:
    triples: int = 0
    typed_entities: int = 0
    classes: Dict[str, int] = field(default_factory=dict)
    links: Dict[str, int] = field(default_factory=lambda: {name: 0 for name, _ in LINK_BUCKETS})

    def to_text(self):
        out = ["triples\t%d" % self.triples, "typed_entities\t%d" % self.typed_entities]
        for name, _ in LINK_BUCKETS:
            out.append("links_%s\t%d" % (name, self.links.get(name, 0)))
        for cls in sorted(self.classes):
            out.append("class\t%s\t%d" % (cls, self.classes[cls]))
        return "\n".join(out) + "\n"


def link_bucket(iri):
    for name, needle in LINK_BUCKETS:
        if needle in iri:
            return name
    return None


def stats(store):
    g = store.triples if isinstance(store, TripleStore) else store
    st = Stats(triples=len(g))
    typed = set()
    for s, _, cls in g.match(None, RDF_TYPE, None):
        typed.add(s)
        st.classes[str(cls)] = st.classes.get(str(cls), 0) + 1
    st.typed_entities = len(typed)
    for _, _, o in g.match(None, RDFS_SEE_ALSO, None):
        if type(o) is Iri:
            b = link_bucket(o)
            if b:
                st.links[b] += 1
    return st
