"""Deterministic IRI minting.

Every entity gets ``base + kind + "/" + slug``; derived nodes append a
facet path (``/shot``, ``/role/1``, ``/positive/item``).  Two distinct
keys that normalize to the same slug are told apart with ``-2``, ``-3``
in the order they were first minted.

Parallel runs give each worker a fresh policy from ``fork()`` and feed
the worker journals back through ``adopt()`` in record order; the
returned rename map makes the outcome identical to a sequential run.
"""

import re
import threading
import unicodedata

from .errors import IriPolicyError
from .rdf.terms import Iri

DEFAULT_BASE = "https://w3id.org/zericatalog/"

KINDS = (
    "fentry", "oaentry", "photo", "artwork", "person", "group", "place",
    "event", "term", "timespan", "collection", "document",
)

_NON_ALNUM = re.compile(r"[^a-z0-9]+")
_FACET_RE = re.compile(r"[a-z0-9]+(?:-[a-z0-9]+)*(?:/[a-z0-9]+(?:-[a-z0-9]+)*)*\Z")
_WS = re.compile(r"\s+")


def slugify(name):
    """NFKD, drop combining marks, lowercase, collapse non-alphanumerics to '-'."""
    if name is None:
        raise IriPolicyError("empty-key", "cannot slugify None")
    text = unicodedata.normalize("NFKD", str(name))
    text = "".join(ch for ch in text if not unicodedata.combining(ch))
    text = text.lower()
    # NFKD leaves some non-ASCII letters alone (ø, ł, ß); they fall out here
    text = text.encode("ascii", "ignore").decode("ascii")
    slug = _NON_ALNUM.sub("-", text).strip("-")
    if not slug:
        raise IriPolicyError("empty-after-normalization", "nothing left of %r after normalization" % name)
    return slug


def facet(*parts):
    """Join facet parts into a sub path, slugifying free-text parts."""
    out = []
    for part in parts:
        part = str(part)
        out.append(part if _FACET_RE.match(part) else slugify(part))
    return "/".join(out)


class IriPolicy:
    def __init__(self, base=DEFAULT_BASE):
        base = str(base)
        if not base.endswith("/"):
            raise IriPolicyError("bad-base", "base IRI must end with '/': %r" % base)
        Iri(base)
        self.base = base
        self._lock = threading.Lock()
        self._owners = {}   # (kind, normalized key) -> slug
        self._used = {}     # kind -> set of slugs handed out
        self.journal = []   # (kind, key, slug) for every first mint, in order

    def __repr__(self):
        return "IriPolicy(%r)" % self.base

    @staticmethod
    def _norm_key(key):
        if key is None:
            raise IriPolicyError("empty-key", "key is empty")
        key = _WS.sub(" ", str(key)).strip()
        if not key:
            raise IriPolicyError("empty-key", "key is empty")
        return key

    def slug_for(self, kind, key):
        if kind not in KINDS:
            raise IriPolicyError("unknown-kind", "unknown entity kind %r" % (kind,))
        key = self._norm_key(key)
        owner = (kind, key)
        with self._lock:
            slug = self._owners.get(owner)
            if slug is not None:
                return slug
            base_slug = slugify(key)
            used = self._used.setdefault(kind, set())
            slug = base_slug
            n = 2
            while slug in used:
                slug = "%s-%d" % (base_slug, n)
                n += 1
            used.add(slug)
            self._owners[owner] = slug
            self.journal.append((kind, key, slug))
            return slug

    def mint(self, kind, key, sub=None):
        slug = self.slug_for(kind, key)
        path = "%s/%s" % (kind, slug)
        if sub:
            sub = str(sub)
            if not _FACET_RE.match(sub):
                raise IriPolicyError("bad-facet", "facet %r is not a lowercase path" % sub)
            path += "/" + sub
        return Iri(self.base + path)

    def owns(self, iri):
        return str(iri).startswith(self.base)

    def fork(self):
        """A fresh policy with the same base, for one worker."""
        return IriPolicy(self.base)

    def adopt(self, journal):
        """Replay a worker journal; return {worker 'kind/slug': final 'kind/slug'}."""
        renames = {}
        for kind, key, worker_slug in journal:
            final = self.slug_for(kind, key)
            if final != worker_slug:
                renames["%s/%s" % (kind, worker_slug)] = "%s/%s" % (kind, final)
        return renames

    def rename_iri(self, iri, renames):
        if not renames or not iri.startswith(self.base):
            return iri
        rest = iri[len(self.base):]
        parts = rest.split("/", 2)
        if len(parts) < 2:
            return iri
        head = parts[0] + "/" + parts[1]
        new = renames.get(head)
        if new is None:
            return iri
        tail = "/" + parts[2] if len(parts) == 3 else ""
        return Iri(self.base + new + tail)

    def rename_graph(self, graph, renames):
        """Apply an adopt() rename map to every IRI of a worker graph."""
        if not renames:
            return graph
        from .rdf.graph import Graph
        out = Graph(prefixes=graph.prefixes)
        for s, p, o in graph:
            if type(o) is Iri:
                o = self.rename_iri(o, renames)
            out.add((self.rename_iri(s, renames), p, o))
        return out


def mint(policy, kind, key, sub=None):
    return policy.mint(kind, key, sub)
