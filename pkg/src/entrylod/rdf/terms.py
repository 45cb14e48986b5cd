"""IRIs, literals and triples.

IRIs are ``str`` subclasses and literals are 3-tuples, so triples stay
plain hashable tuples.  There are no blank nodes.
"""

import re
from collections import namedtuple

from ..errors import MalformedIri, MalformedLiteral
from ..kernels import escape_iri, escape_literal

_IRI_RE = re.compile(r'[A-Za-z][A-Za-z0-9+.\-]*:[^\s<>"]*\Z')
_LANG_RE = re.compile(r"[a-z]{2,8}(-[a-z0-9]{1,8})*\Z")


class Iri(str):
    """An absolute IRI."""

    __slots__ = ()

    def __new__(cls, value):
        if type(value) is cls:
            return value
        if not isinstance(value, str) or not _IRI_RE.match(value):
            raise MalformedIri("not an absolute IRI: %r" % (value,))
        return str.__new__(cls, value)

    def __repr__(self):
        return "Iri(%s)" % str.__repr__(self)

    def n3(self):
        return "<" + escape_iri(self) + ">"


class Literal(namedtuple("_Literal", "lexical language datatype")):
    """A literal; ``language`` and ``datatype`` are mutually exclusive."""

    __slots__ = ()

    def __new__(cls, lexical, language=None, datatype=None):
        if not isinstance(lexical, str):
            raise MalformedLiteral("lexical form must be a string")
        if language is not None:
            if datatype is not None:
                raise MalformedLiteral("literal %r has both a language and a datatype" % lexical)
            if not _LANG_RE.match(language):
                raise MalformedLiteral("bad language tag %r" % language)
        elif datatype is not None:
            datatype = Iri(datatype)
        return super().__new__(cls, lexical, language, datatype)

    def n3(self):
        body = '"' + escape_literal(self.lexical) + '"'
        if self.language is not None:
            return body + "@" + self.language
        if self.datatype is not None:
            return body + "^^<" + escape_iri(self.datatype) + ">"
        return body


def term_n3(term):
    """N-Triples form of an IRI or literal."""
    if type(term) is Iri:
        return "<" + escape_iri(term) + ">"
    return term.n3()


def as_term(value):
    """Coerce an object-position value: Literal stays, anything else must be an IRI."""
    if isinstance(value, Literal):
        return value
    if isinstance(value, tuple):
        return Literal(*value)
    return Iri(value)


def sort_key(term):
    """Bytewise sort key shared by both serializers."""
    return term_n3(term).encode("utf-8")
