"""Exception hierarchy.

Every error carries a short ``code`` string (``malformed-iri``,
``unclosed-group`` ...) so callers and the CLI can report failures in a
stable, machine-readable way.
"""


class EntryLodError(Exception):
    code = "error"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class MalformedIri(EntryLodError, ValueError):
    code = "malformed-iri"


class MalformedLiteral(EntryLodError, ValueError):
    code = "malformed-literal"


class NTriplesSyntaxError(EntryLodError, ValueError):
    code = "syntax-error"

    def __init__(self, message, line=None, code=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message, code)
        self.line = line


class BlankNodeRejected(NTriplesSyntaxError):
    code = "blank-node-rejected"


class RecordSyntaxError(EntryLodError, ValueError):
    """Raised by the record parser; ``code`` is one of missing-TSK,
    missing-ID, unclosed-group, bad-field-syntax, duplicate-id."""

    def __init__(self, code, message, line=None, source=None):
        where = ""
        if source:
            where += "%s:" % source
        if line is not None:
            where += "%d:" % line
        super().__init__(("%s %s" % (where, message)).strip(), code)
        self.line = line
        self.source = source


class IriPolicyError(EntryLodError, ValueError):
    """``code``: unknown-kind, empty-key, empty-after-normalization, bad-facet, bad-base."""

    def __init__(self, code, message):
        super().__init__(message, code)


class MappingError(EntryLodError):
    """A builder could not map part of a record."""

    def __init__(self, code, message, record_id=None):
        if record_id is not None:
            message = "record %s: %s" % (record_id, message)
        super().__init__(message, code)
        self.record_id = record_id


class TableError(EntryLodError, ValueError):
    code = "bad-table"


class SnapshotError(EntryLodError, ValueError):
    code = "bad-snapshot"


class QuerySyntaxError(EntryLodError, ValueError):
    code = "bad-query"
