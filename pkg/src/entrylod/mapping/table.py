"""Mapping table and bilingual vocabulary, both tab-separated files.

Mapping table columns: kind, code, level, predicate, object_kind, mandatory.
``object_kind`` is one of literal, lang-literal-it, typed-term, slug-iri
(handled generically by apply_field_table) or pattern (the code is read
by one of the pattern builders; the predicate column names the main
property it produces).

Vocabulary columns: category, it, en, curie.  Lookups are on the
Italian form, case-insensitive; the English form names IRIs and gives
the @en label.
"""

import csv
import io
from dataclasses import dataclass
from importlib import resources

from ..errors import TableError
from ..records import CODE_RE
from .registry import REGISTRY

LEVELS = ("entry", "work", "expression", "manifestation", "item")
OBJECT_KINDS = ("literal", "lang-literal-it", "typed-term", "slug-iri", "pattern")
_TRUE = {"yes", "true", "1", "y"}
_FALSE = {"no", "false", "0", "n", ""}


@dataclass(frozen=True)
class MappingRow:
    kind: str
    code: str
    level: str
    predicate: str
    object_kind: str
    mandatory: bool


def _text(source):
    if hasattr(source, "read"):
        data = source.read()
    elif isinstance(source, (bytes, bytearray)):
        data = source
    else:
        with open(source, "rb") as fh:
            data = fh.read()
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    return data


def _rows(text):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return list(csv.reader(lines, delimiter="\t"))


class MappingTable:
    def __init__(self, rows=()):
        self.rows = {}
        for row in rows:
            self.add(row)

    def add(self, row):
        key = (row.kind, row.code)
        if key in self.rows:
            raise TableError("duplicate row for %s %s" % key)
        if row.kind not in ("F", "OA"):
            raise TableError("bad kind %r for %s" % (row.kind, row.code))
        if not CODE_RE.match(row.code):
            raise TableError("bad field code %r" % row.code)
        if row.level not in LEVELS:
            raise TableError("bad level %r for %s" % (row.level, row.code))
        if row.object_kind not in OBJECT_KINDS:
            raise TableError("bad object kind %r for %s" % (row.object_kind, row.code))
        if row.predicate not in REGISTRY:
            raise TableError("predicate %s (row %s %s) is not a registered term"
                             % (row.predicate, row.kind, row.code))
        self.rows[key] = row

    @classmethod
    def parse(cls, source):
        rows = _rows(_text(source))
        if not rows:
            raise TableError("mapping table is empty")
        header = [h.strip() for h in rows[0]]
        want = ["kind", "code", "level", "predicate", "object_kind", "mandatory"]
        if header != want:
            raise TableError("mapping table header must be %s, got %s" % ("\t".join(want), "\t".join(header)))
        table = cls()
        for n, cols in enumerate(rows[1:], 2):
            if len(cols) != 6:
                raise TableError("row %d: expected 6 columns, got %d" % (n, len(cols)))
            kind, code, level, pred, okind, mand = (c.strip() for c in cols)
            if mand.lower() in _TRUE:
                mandatory = True
            elif mand.lower() in _FALSE:
                mandatory = False
            else:
                raise TableError("row %d: bad mandatory flag %r" % (n, mand))
            table.add(MappingRow(kind, code, level, pred, okind, mandatory))
        return table

    @classmethod
    def default(cls):
        return cls.parse(resources.files("entrylod.data").joinpath("mapping.tsv").read_bytes())

    def get(self, kind, code):
        return self.rows.get((kind, code))

    def knows(self, kind, code):
        return (kind, code) in self.rows

    def mandatory_codes(self, kind):
        return sorted(r.code for r in self.rows.values() if r.kind == kind and r.mandatory)

    def generic_rows(self, kind):
        """Rows handled by apply_field_table, in file order."""
        return [r for r in self.rows.values() if r.kind == kind and r.object_kind != "pattern"]

    def __len__(self):
        return len(self.rows)

    def dump(self):
        out = io.StringIO()
        out.write("kind\tcode\tlevel\tpredicate\tobject_kind\tmandatory\n")
        for r in self.rows.values():
            out.write("\t".join([r.kind, r.code, r.level, r.predicate, r.object_kind,
                                 "yes" if r.mandatory else "no"]) + "\n")
        return out.getvalue()


@dataclass(frozen=True)
class VocabEntry:
    category: str
    it: str
    en: str
    curie: str = ""


class Vocabulary:
    """Italian -> English translations plus role/influence/format lookups."""

    def __init__(self, entries=()):
        self._by_it = {}
        self._by_cat = {}
        for e in entries:
            self.add(e)

    def add(self, entry):
        key = entry.it.casefold()
        if entry.curie and entry.curie not in REGISTRY:
            raise TableError("vocabulary curie %s is not a registered term" % entry.curie)
        self._by_it.setdefault(key, entry)
        self._by_cat.setdefault((entry.category, key), entry)

    @classmethod
    def parse(cls, source):
        rows = _rows(_text(source))
        if not rows:
            return cls()
        header = [h.strip() for h in rows[0]]
        if header[:3] != ["category", "it", "en"]:
            raise TableError("vocabulary header must start with category, it, en")
        vocab = cls()
        for n, cols in enumerate(rows[1:], 2):
            cols = [c.strip() for c in cols] + [""] * (4 - len(cols))
            if not cols[1] or not cols[2]:
                raise TableError("vocabulary row %d: empty it/en" % n)
            vocab.add(VocabEntry(cols[0], cols[1], cols[2], cols[3]))
        return vocab

    @classmethod
    def default(cls):
        return cls.parse(resources.files("entrylod.data").joinpath("vocabulary.tsv").read_bytes())

    def lookup(self, text, category=None):
        key = text.strip().casefold()
        if category is not None:
            return self._by_cat.get((category, key))
        return self._by_it.get(key)

    def en(self, text):
        """English form or None when there is no translation."""
        e = self.lookup(text)
        return e.en if e else None

    def __len__(self):
        return len(self._by_it)
