"""Catalog entry records: parsing, dumping and table conformance checks.

File syntax::

    # comment
    TSK: F
    ID: 72486
    NCTN: 00072486
    [AUT]
    AUTN: Brogi, Giacomo
    [/AUT]
    %%
    TSK: OA
    ...

``%%`` separates records.  ``[CODE]`` ... ``[/CODE]`` delimits one
repetition of a paragraph; paragraphs do not nest.  Repeating a field
line gives a multi-valued field, in order.
"""

import re
from dataclasses import dataclass, field
from typing import List

from .errors import RecordSyntaxError

CODE_RE = re.compile(r"[A-Z][A-Z0-9]{2,5}\Z")
_FIELD_RE = re.compile(r"([A-Za-z][A-Za-z0-9]*)\s*:(.*)\Z")
_OPEN_RE = re.compile(r"\[([A-Z][A-Z0-9]{2,5})\]\Z")
_CLOSE_RE = re.compile(r"\[/([A-Z][A-Z0-9]{2,5})\]\Z")

KINDS = ("F", "OA")


@dataclass(frozen=True)
class FieldOccurrence:
    code: str
    value: str
    line: int = field(default=0, compare=False)


class Block(list):
    """One paragraph repetition: a list of FieldOccurrence with lookups."""

    def get(self, code, default=None):
        for occ in self:
            if occ.code == code:
                return occ.value
        return default

    def values(self, code):
        return [occ.value for occ in self if occ.code == code]

    def codes(self):
        return [occ.code for occ in self]


@dataclass
class FieldGroup:
    code: str
    repetitions: List[Block] = field(default_factory=list)


@dataclass
class EntryRecord:
    kind: str
    id: str
    fields: List[FieldOccurrence] = field(default_factory=list)
    groups: List[FieldGroup] = field(default_factory=list)
    source: str = field(default="", compare=False)
    line: int = field(default=0, compare=False)

    def get(self, code, default=None):
        for occ in self.fields:
            if occ.code == code:
                return occ.value
        return default

    def values(self, code):
        return [occ.value for occ in self.fields if occ.code == code]

    def blocks(self, code):
        for group in self.groups:
            if group.code == code:
                return group.repetitions
        return []

    def all_codes(self):
        """Every field code used, at top level or inside a paragraph."""
        codes = [occ.code for occ in self.fields]
        for group in self.groups:
            codes.append(group.code)
            for rep in group.repetitions:
                codes.extend(rep.codes())
        return codes


def _finish(state, source):
    if state["open"] is not None:
        code, line = state["open"]
        raise RecordSyntaxError("unclosed-group", "paragraph [%s] is never closed" % code, line, source)
    if not state["seen"]:
        return None
    start = state["start"]
    if state["kind"] is None:
        raise RecordSyntaxError("missing-TSK", "record has no TSK line", start, source)
    if state["id"] is None:
        raise RecordSyntaxError("missing-ID", "record has no ID line", start, source)
    groups = [FieldGroup(code, reps) for code, reps in state["groups"].items()]
    return EntryRecord(state["kind"], state["id"], state["fields"], groups, source, start)


def _new_state():
    return {"kind": None, "id": None, "fields": [], "groups": {}, "open": None,
            "current": None, "seen": False, "start": 0}


def parse_records(data, source=""):
    """Parse record text (str, bytes or iterable of lines) into EntryRecords."""
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    if isinstance(data, str):
        data = data.splitlines()
    records = []
    ids = set()
    state = _new_state()
    for lineno, raw in enumerate(data, 1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "%%":
            rec = _finish(state, source)
            if rec is not None:
                if rec.id in ids:
                    raise RecordSyntaxError("duplicate-id", "record id %s repeated" % rec.id, rec.line, source)
                ids.add(rec.id)
                records.append(rec)
            state = _new_state()
            continue
        if not state["seen"]:
            state["seen"] = True
            state["start"] = lineno
        m = _OPEN_RE.match(line)
        if m:
            if state["open"] is not None:
                raise RecordSyntaxError("bad-field-syntax", "paragraph [%s] opened inside [%s]"
                                        % (m.group(1), state["open"][0]), lineno, source)
            state["open"] = (m.group(1), lineno)
            state["current"] = Block()
            continue
        m = _CLOSE_RE.match(line)
        if m:
            if state["open"] is None or state["open"][0] != m.group(1):
                raise RecordSyntaxError("unclosed-group", "unexpected [/%s]" % m.group(1), lineno, source)
            if not state["current"]:
                raise RecordSyntaxError("bad-field-syntax", "empty paragraph [%s]" % m.group(1), lineno, source)
            state["groups"].setdefault(m.group(1), []).append(state["current"])
            state["open"] = state["current"] = None
            continue
        m = _FIELD_RE.match(line)
        if not m:
            raise RecordSyntaxError("bad-field-syntax", "cannot parse line %r" % line, lineno, source)
        code, value = m.group(1), m.group(2).strip()
        if not CODE_RE.match(code) and code not in ("ID",):
            raise RecordSyntaxError("bad-field-syntax", "bad field code %r" % code, lineno, source)
        if not value:
            raise RecordSyntaxError("bad-field-syntax", "field %s has an empty value" % code, lineno, source)
        if code in ("TSK", "ID"):
            if state["open"] is not None:
                raise RecordSyntaxError("bad-field-syntax", "%s inside a paragraph" % code, lineno, source)
            key = "kind" if code == "TSK" else "id"
            if state[key] is not None:
                raise RecordSyntaxError("bad-field-syntax", "second %s line" % code, lineno, source)
            if code == "TSK" and value not in KINDS:
                raise RecordSyntaxError("bad-field-syntax", "TSK must be F or OA, got %r" % value, lineno, source)
            if code == "ID" and not value.isdigit():
                raise RecordSyntaxError("bad-field-syntax", "ID must be numeric, got %r" % value, lineno, source)
            state[key] = value
            continue
        occ = FieldOccurrence(code, value, lineno)
        if state["open"] is not None:
            state["current"].append(occ)
        else:
            state["fields"].append(occ)
    rec = _finish(state, source)
    if rec is not None:
        if rec.id in ids:
            raise RecordSyntaxError("duplicate-id", "record id %s repeated" % rec.id, rec.line, source)
        records.append(rec)
    return records


def read_records(path):
    with open(path, "rb") as fh:
        return parse_records(fh.read(), source=str(path))


def dump_records(records):
    """Write records back in the same syntax (debug dump; round-trips)."""
    out = []
    for i, rec in enumerate(records):
        if i:
            out.append("%%")
        out.append("TSK: %s" % rec.kind)
        out.append("ID: %s" % rec.id)
        for occ in rec.fields:
            out.append("%s: %s" % (occ.code, occ.value))
        for group in rec.groups:
            for rep in group.repetitions:
                out.append("[%s]" % group.code)
                for occ in rep:
                    out.append("%s: %s" % (occ.code, occ.value))
                out.append("[/%s]" % group.code)
    return "\n".join(out) + ("\n" if out else "")


@dataclass(frozen=True)
class Warning:
    record_id: str
    code: str
    kind: str
    message: str

    def format(self):
        return "WARN %s %s %s: %s" % (self.record_id, self.code, self.kind, self.message)


def check_record(record, table):
    """Warn about field codes missing from the mapping table and about
    mandatory codes the record lacks.  Never raises."""
    warnings = []
    used = set()
    for code in record.all_codes():
        if code in used:
            continue
        used.add(code)
        if not table.knows(record.kind, code):
            warnings.append(Warning(record.id, code, "unknown-code",
                                    "field not in the %s mapping table" % record.kind))
    for code in table.mandatory_codes(record.kind):
        if code not in used:
            warnings.append(Warning(record.id, code, "missing-mandatory",
                                    "mandatory field absent"))
    return warnings
