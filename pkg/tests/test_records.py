import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entrylod.errors import RecordSyntaxError
from entrylod.mapping import MappingTable
from entrylod.records import (
    Block, EntryRecord, FieldGroup, FieldOccurrence, check_record, dump_records, parse_records,
    read_records,
)
from helpers import CORPUS, OBJECT_TYPES
import os

TABLE = MappingTable.default()


def test_minimal_f_record():
    recs = parse_records(b"TSK: F\nID: 72486\nOGTD: positivo\n")
    assert len(recs) == 1
    assert recs[0].kind == "F" and recs[0].id == "72486"
    assert recs[0].get("OGTD") == "positivo"


def test_repeated_group_is_one_fieldgroup():
    recs = parse_records("TSK: F\nID: 1\n[AUT]\nAUTN: A\n[/AUT]\n[AUT]\nAUTN: B\n[/AUT]\n")
    (group,) = recs[0].groups
    assert group.code == "AUT"
    assert [b.get("AUTN") for b in group.repetitions] == ["A", "B"]


def test_object_type_fields():
    recs = read_records(OBJECT_TYPES)
    rec = recs[0]
    assert (rec.kind, rec.id) == ("OA", "47172")
    assert rec.fields == [FieldOccurrence("OGTD", "dipinto"), FieldOccurrence("OGTT", "polittico")]


def test_multivalued_field_order_kept():
    rec = parse_records("TSK: F\nID: 1\nINC: a\nINC: b\nINC: c\n")[0]
    assert rec.values("INC") == ["a", "b", "c"]


def test_records_separated_and_comments_skipped():
    recs = parse_records("# c\nTSK: F\nID: 1\n%%\n\n# c\nTSK: OA\nID: 2\n%%\n")
    assert [(r.kind, r.id) for r in recs] == [("F", "1"), ("OA", "2")]


@pytest.mark.parametrize("text,code", [
    ("ID: 1\nOGTD: x\n", "missing-TSK"),
    ("TSK: F\nOGTD: x\n", "missing-ID"),
    ("TSK: F\nID: 1\n[AUT]\nAUTN: x\n", "unclosed-group"),
    ("TSK: F\nID: 1\n[/AUT]\n", "unclosed-group"),
    ("TSK: F\nID: 1\n%%\nTSK: F\nID: 1\n", "duplicate-id"),
    ("TSK: F\nID: 1\n[AUT]\n[ROL]\n", "bad-field-syntax"),
    ("TSK: F\nID: 1\n[AUT]\n[/AUT]\n", "bad-field-syntax"),
    ("TSK: F\nID: 1\nogtd: x\n", "bad-field-syntax"),
    ("TSK: F\nID: 1\nOGTD:\n", "bad-field-syntax"),
    ("TSK: X\nID: 1\n", "bad-field-syntax"),
    ("TSK: F\nID: abc\n", "bad-field-syntax"),
    ("TSK: F\nTSK: F\nID: 1\n", "bad-field-syntax"),
    ("TSK: F\nID: 1\n[AUT]\nID: 2\n[/AUT]\n", "bad-field-syntax"),
    ("TSK: F\nID: 1\njust text\n", "bad-field-syntax"),
])
def test_syntax_errors(text, code):
    with pytest.raises(RecordSyntaxError) as exc:
        parse_records(text, source="x.rec")
    assert exc.value.code == code
    assert str(exc.value).startswith("x.rec:")


def test_error_reports_line():
    with pytest.raises(RecordSyntaxError) as exc:
        parse_records("TSK: F\nID: 1\nOGTD: x\nbad\n")
    assert exc.value.line == 4


def test_check_missing_mandatory():
    rec = parse_records("TSK: F\nID: 1\nNCTR: 08\nLIR: C\nOGTD: positivo\n")[0]
    warnings = check_record(rec, TABLE)
    assert [(w.code, w.kind) for w in warnings] == [("NCTN", "missing-mandatory")]


def test_check_unknown_code():
    rec = parse_records("TSK: F\nID: 1\nNCTR: 08\nNCTN: 1\nLIR: C\nOGTD: positivo\nZZZZ: x\n")[0]
    warnings = check_record(rec, TABLE)
    assert [(w.code, w.kind) for w in warnings] == [("ZZZZ", "unknown-code")]
    assert warnings[0].format() == "WARN 1 ZZZZ unknown-code: field not in the F mapping table"


@pytest.mark.parametrize("name", sorted(os.listdir(CORPUS)))
def test_corpus_fixtures_conform(name):
    for rec in read_records(os.path.join(CORPUS, name)):
        assert check_record(rec, TABLE) == []


# ---------------------------------------------------------------- properties

codes = st.from_regex(r"[A-Z][A-Z0-9]{2,5}", fullmatch=True).filter(lambda c: c not in ("TSK",))
values = st.text(alphabet=st.characters(blacklist_categories=("Cs", "Cc", "Zl", "Zp")), min_size=1, max_size=20) \
    .map(str.strip).filter(lambda v: v and not v.startswith("#") and v != "%%")
occurrences = st.builds(FieldOccurrence, codes, values)
blocks = st.lists(occurrences, min_size=1, max_size=4).map(Block)


@st.composite
def records(draw, rid):
    group_codes = draw(st.lists(codes, unique=True, max_size=3))
    groups = [FieldGroup(c, draw(st.lists(blocks, min_size=1, max_size=3))) for c in group_codes]
    return EntryRecord(draw(st.sampled_from(["F", "OA"])), str(rid), draw(st.lists(occurrences, max_size=6)), groups)


@st.composite
def record_lists(draw):
    n = draw(st.integers(1, 4))
    return [draw(records(i + 1)) for i in range(n)]


@settings(max_examples=150, deadline=None)
@given(record_lists())
def test_dump_parse_round_trip(recs):
    again = parse_records(dump_records(recs))
    assert again == recs
    assert parse_records(dump_records(again)) == again


@settings(max_examples=50, deadline=None)
@given(codes, codes)
def test_groups_never_nest(a, b):
    with pytest.raises(RecordSyntaxError):
        parse_records("TSK: F\nID: 1\n[%s]\n[%s]\nX%s: v\n[/%s]\n[/%s]\n" % (a, b, a[:3], b, a))
