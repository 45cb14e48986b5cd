"""entrylod: F and OA catalogue records to linked open data.

Records go through the mapping engine to an RDF graph, which can then be
validated, reconciled against authority snapshots, loaded into the
in-memory store and queried.
"""

__version__ = "0.1.0"

from .iri import DEFAULT_BASE, IriPolicy, slugify
from .kernels import BACKEND
from .mapping import MappingTable, Vocabulary, convert_entry
from .rdf import Graph, Iri, Literal, parse_ntriples, serialize_ntriples, serialize_turtle
from .reconcile import load_snapshot, reconcile
from .records import parse_records, read_records
from .store import BgpQuery, TripleStore, parse_patterns, stats
from .validate import validate

__all__ = [
    "BACKEND", "BgpQuery", "DEFAULT_BASE", "Graph", "Iri", "IriPolicy", "Literal",
    "MappingTable", "TripleStore", "Vocabulary", "convert_entry", "load_snapshot",
    "parse_ntriples", "parse_patterns", "parse_records", "read_records", "reconcile",
    "serialize_ntriples", "serialize_turtle", "slugify", "stats", "validate",
]
