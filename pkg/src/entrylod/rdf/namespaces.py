"""Prefix management and the default prefix bundle."""

from .terms import Iri

XSD = "http://www.w3.org/2001/XMLSchema#"
XSD_STRING = Iri(XSD + "string")
XSD_GYEAR = Iri(XSD + "gYear")

DEFAULT_PREFIXES = (
    ("crm", "http://www.cidoc-crm.org/cidoc-crm/"),
    ("fentry", "http://www.essepuntato.it/2014/03/fentry/"),
    ("oaentry", "http://purl.org/emmedi/oaentry/"),
    ("fabio", "http://purl.org/spar/fabio/"),
    ("frbr", "http://purl.org/spar/frbr/"),
    ("pro", "http://purl.org/spar/pro/"),
    ("scor", "http://purl.org/spar/scoro/"),
    ("hico", "http://purl.org/emmedi/hico/"),
    ("cito", "http://purl.org/spar/cito/"),
    ("prov", "http://www.w3.org/ns/prov#"),
    ("tv", "http://www.essepuntato.it/2012/04/tvc/"),
    ("foaf", "http://xmlns.com/foaf/0.1/"),
    ("rdfs", "http://www.w3.org/2000/01/rdf-schema#"),
    ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
    ("owl", "http://www.w3.org/2002/07/owl#"),
)


class PrefixMap:
    """Ordered prefix -> namespace bindings.

    A prefix maps to exactly one namespace; rebinding a prefix replaces it
    in place.
    """

    def __init__(self, entries=()):
        self._entries = {}
        for prefix, ns in entries:
            self.bind(prefix, ns)

    @classmethod
    def default(cls, **extra):
        pm = cls(DEFAULT_PREFIXES)
        for prefix, ns in extra.items():
            pm.bind(prefix, ns)
        return pm

    def bind(self, prefix, namespace):
        if prefix and not prefix.replace("-", "").replace("_", "").isalnum():
            raise ValueError("bad prefix %r" % prefix)
        self._entries[prefix] = Iri(namespace)

    def __getitem__(self, prefix):
        return self._entries[prefix]

    def __contains__(self, prefix):
        return prefix in self._entries

    def __iter__(self):
        return iter(self._entries.items())

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        return isinstance(other, PrefixMap) and list(self) == list(other)

    def copy(self):
        return PrefixMap(self)

    def expand(self, curie):
        """``crm:E22_Man-Made_Object`` -> full IRI."""
        prefix, sep, local = curie.partition(":")
        if not sep or prefix not in self._entries:
            raise KeyError("cannot expand %r" % curie)
        return Iri(self._entries[prefix] + local)

    def shrink(self, iri):
        """Best (longest namespace) prefix split of ``iri`` or None."""
        best = None
        for prefix, ns in self._entries.items():
            if iri.startswith(ns) and (best is None or len(ns) > len(best[1])):
                best = (prefix, ns)
        if best is None:
            return None
        return best[0], iri[len(best[1]):]


DEFAULT = PrefixMap.default()


def curie(text):
    """Expand a CURIE against the default bundle."""
    return DEFAULT.expand(text)
