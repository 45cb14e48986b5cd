from .graph import RDF_TYPE, RDFS_LABEL, Graph, add, match
from .namespaces import DEFAULT, DEFAULT_PREFIXES, XSD_GYEAR, XSD_STRING, PrefixMap, curie
from .ntriples import iter_ntriples, parse_ntriples, read_ntriples, serialize_ntriples, write_ntriples
from .terms import Iri, Literal, sort_key, term_n3
from .turtle import serialize_turtle, write_turtle

__all__ = [
    "DEFAULT", "DEFAULT_PREFIXES", "Graph", "Iri", "Literal", "PrefixMap",
    "RDFS_LABEL", "RDF_TYPE", "XSD_GYEAR", "XSD_STRING", "add", "curie",
    "iter_ntriples", "match", "parse_ntriples", "read_ntriples",
    "serialize_ntriples", "serialize_turtle", "sort_key", "term_n3",
    "write_ntriples", "write_turtle",
]
