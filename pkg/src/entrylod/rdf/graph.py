"""Indexed set of triples."""

from .namespaces import PrefixMap
from .terms import Iri, Literal, as_term, sort_key

RDF_TYPE = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
RDFS_LABEL = Iri("http://www.w3.org/2000/01/rdf-schema#label")


def _check(triple):
    s, p, o = triple
    if type(s) is not Iri:
        s = Iri(s)
    if type(p) is not Iri:
        p = Iri(p)
    if type(o) is not Iri and type(o) is not Literal:
        o = as_term(o)
    return s, p, o


class Graph:
    """A set of triples with subject, predicate and object indexes.

    ``add`` is idempotent.  Builders mutate a graph from one thread; once
    handed over, a graph is treated as read-only.
    """

    def __init__(self, triples=(), prefixes=None):
        self._spo = {}
        self._pos = {}
        self._osp = {}
        self._len = 0
        self.prefixes = prefixes if prefixes is not None else PrefixMap.default()
        for t in triples:
            self.add(t)

    def add(self, triple):
        s, p, o = _check(triple)
        objs = self._spo.setdefault(s, {}).setdefault(p, set())
        if o in objs:
            return self
        objs.add(o)
        self._pos.setdefault(p, {}).setdefault(o, set()).add(s)
        self._osp.setdefault(o, {}).setdefault(s, set()).add(p)
        self._len += 1
        return self

    def update(self, triples):
        for t in triples:
            self.add(t)
        return self

    __iadd__ = update

    def discard(self, triple):
        s, p, o = triple
        objs = self._spo.get(s, {}).get(p)
        if not objs or o not in objs:
            return self
        objs.discard(o)
        if not objs:
            del self._spo[s][p]
            if not self._spo[s]:
                del self._spo[s]
        subs = self._pos[p][o]
        subs.discard(s)
        if not subs:
            del self._pos[p][o]
            if not self._pos[p]:
                del self._pos[p]
        preds = self._osp[o][s]
        preds.discard(p)
        if not preds:
            del self._osp[o][s]
            if not self._osp[o]:
                del self._osp[o]
        self._len -= 1
        return self

    def __len__(self):
        return self._len

    def __iter__(self):
        for s, po in self._spo.items():
            for p, objs in po.items():
                for o in objs:
                    yield s, p, o

    def __contains__(self, triple):
        s, p, o = triple
        return o in self._spo.get(s, {}).get(p, ())

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return len(self) == len(other) and all(t in other for t in self)

    def __repr__(self):
        return "<Graph with %d triples>" % self._len

    def copy(self):
        g = Graph(prefixes=self.prefixes.copy())
        g.update(self)
        return g

    def __or__(self, other):
        g = self.copy()
        g.update(other)
        return g

    def match(self, s=None, p=None, o=None):
        """Yield the triples agreeing with every bound position."""
        if s is not None:
            po = self._spo.get(s)
            if not po:
                return
            if p is not None:
                objs = po.get(p, ())
                if o is not None:
                    if o in objs:
                        yield s, p, o
                    return
                for obj in objs:
                    yield s, p, obj
                return
            if o is not None:
                for pred in self._osp.get(o, {}).get(s, ()):
                    yield s, pred, o
                return
            for pred, objs in po.items():
                for obj in objs:
                    yield s, pred, obj
            return
        if p is not None:
            os_ = self._pos.get(p)
            if not os_:
                return
            if o is not None:
                for subj in os_.get(o, ()):
                    yield subj, p, o
                return
            for obj, subs in os_.items():
                for subj in subs:
                    yield subj, p, obj
            return
        if o is not None:
            for subj, preds in self._osp.get(o, {}).items():
                for pred in preds:
                    yield subj, pred, o
            return
        yield from self

    def objects(self, s, p):
        return set(self._spo.get(s, {}).get(p, ()))

    def subjects(self, p, o):
        return set(self._pos.get(p, {}).get(o, ()))

    def value(self, s, p):
        """One object of (s, p), smallest by sort order, or None."""
        objs = self._spo.get(s, {}).get(p)
        if not objs:
            return None
        return min(objs, key=sort_key)

    def types(self, s):
        return self.objects(s, RDF_TYPE)

    def instances(self, cls):
        return self.subjects(RDF_TYPE, cls)

    def subject_set(self):
        return set(self._spo)

    def predicate_set(self):
        return set(self._pos)

    def object_set(self):
        return set(self._osp)

    def nodes(self):
        """All IRIs in subject or object position."""
        out = set(self._spo)
        out.update(o for o in self._osp if type(o) is Iri)
        return out


def add(graph, triple):
    return graph.add(triple)


def match(graph, s=None, p=None, o=None):
    return set(graph.match(s, p, o))
