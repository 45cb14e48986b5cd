"""Record -> RDF conversion.

``EntryMapper`` holds the per-record layout (entry, subject works, shot,
manifestations, items) and the pattern builders.  The module-level
functions named after each step return the fragment that step alone
produces; ``convert_entry`` runs them all in order and merges them.

Node layout for F record 72486 that portrays artwork 47172::

    fentry/72486                      the entry (E31, fentry:FEntry)
    fentry/72486/expression           its text (fabio:MetadataDocument)
    photo/72486                       photograph work
    photo/72486/shot                  the shot (frbr expression)
    photo/72486/creation              E65 creation of work and shot
    photo/72486/positive              a manifestation, one per [MAN]
    photo/72486/positive/item         an item, one per [ITM]
    artwork/47172, artwork/47172/item the portrayed work of art

Italian source values name the IRIs through their English translation
when the vocabulary has one.
"""

import re

from ..errors import MappingError
from ..iri import IriPolicy, facet, slugify
from ..rdf.graph import Graph
from ..rdf.namespaces import XSD_GYEAR
from ..rdf.terms import Iri, Literal
from ..records import Warning
from .registry import RANGES, REGISTRY, ROLE_FAMILY, T
from .table import Vocabulary

RDF_TYPE = T("rdf:type")
LABEL = T("rdfs:label")

ID_FIELDS = {
    "ID": "identificativo scheda",
    "NCTR": "codice regione",
    "NCTN": "numero catalogo generale",
    "LIR": "livello di catalogazione",
    "INVN": "numero di inventario",
}

# entry-level cataloguing fields -> (role, default agent kind)
ENTRY_ROLE_FIELDS = (
    ("ESC", "ente catalogatore", "ente"),
    ("ECP", "ente competente", "ente"),
    ("FUR", "funzionario responsabile", "persona"),
)

TARGET_WORDS = {
    "scheda": "entry", "entry": "entry",
    "opera": "work", "work": "work",
    "scatto": "shot", "shot": "shot", "expression": "shot",
    "manifestazione": "manifestation", "manifestation": "manifestation",
    "esemplare": "item", "item": "item",
}

GROUP_WORDS = {"ente", "gruppo", "group", "organization", "organisation"}
YES = {"si", "sì", "yes", "true", "1", "s", "y"}
MOVE_WORDS = {"spostamento", "move", "trasferimento fisico"}
CUSTODY_WORDS = {"custodia", "custody", "passaggio di custodia"}

_NUM = re.compile(r"\d+(?:[.,]\d+)?\Z")
_Y = r"(\d{3,4})"
_SPANS = (
    (re.compile(r"\s*%s\s*\Z" % _Y), lambda m: (m.group(1), m.group(1))),
    (re.compile(r"\s*%s\s*[-/]\s*%s\s*\Z" % (_Y, _Y)), lambda m: (m.group(1), m.group(2))),
    (re.compile(r"\s*(\d{4})-\d{2}-\d{2}\s*\Z"), lambda m: (m.group(1), m.group(1))),
    (re.compile(r"\s*(\d{4})\s*-\s*\Z"), lambda m: (m.group(1), None)),
)
_YEAR = re.compile(r"\d{4}")

PREFERRED = "attribuzione preferita Zeri"


def parse_span(raw):
    """Year bounds of a date string, or None when it is not plain years.

    "1926-1932" -> ("1926", "1932"); "1989" -> ("1989", "1989");
    "2012-11-04" -> ("2012", "2012"); "2016-" -> ("2016", None).
    """
    for rx, fn in _SPANS:
        m = rx.match(raw)
        if m:
            start, end = fn(m)
            if end is not None and int(start) > int(end):
                return None
            return start.zfill(4), end.zfill(4) if end else None
    return None


def _yes(value):
    return value is not None and value.strip().casefold() in YES


class EntryMapper:
    def __init__(self, record, table, policy, vocabulary=None, warnings=None, strict_roles=False):
        self.record = record
        self.table = table
        self.policy = policy
        self.vocab = vocabulary if vocabulary is not None else Vocabulary.default()
        self.warnings = warnings if warnings is not None else []
        self.strict_roles = strict_roles
        self.g = Graph()
        self._counters = {}
        self._layout()

    # ---------------------------------------------------------------- basics

    def fail(self, code, message):
        raise MappingError(code, message, self.record.id)

    def warn(self, code, kind, message):
        self.warnings.append(Warning(self.record.id, code, kind, message))

    def add(self, s, p, o):
        if isinstance(p, str) and not isinstance(p, Iri):
            p = T(p)
        self.g.add((s, p, o))

    def a(self, node, *classes):
        for c in classes:
            self.g.add((node, RDF_TYPE, T(c)))

    def label(self, node, it, en=None):
        self.g.add((node, LABEL, Literal(it, "it")))
        if en:
            self.g.add((node, LABEL, Literal(en, "en")))

    def next_n(self, node, what):
        key = (node, what)
        n = self._counters.get(key, 0) + 1
        self._counters[key] = n
        return n

    def en(self, value):
        return self.vocab.en(value)

    def key_for(self, value):
        return self.en(value) or value

    # ------------------------------------------------------------- resources

    def term(self, value, cls="crm:E55_Type"):
        en = self.en(value)
        node = self.policy.mint("term", (en or value).casefold())
        self.a(node, cls)
        self.label(node, value, en)
        return node

    def place(self, value):
        en = self.en(value)
        node = self.policy.mint("place", en or value)
        self.a(node, "crm:E53_Place")
        self.label(node, value, en)
        return node

    def agent(self, name, kind=None, default="persona"):
        kind = (kind or default).strip().casefold()
        en = self.en(name)
        if kind in GROUP_WORDS:
            node = self.policy.mint("group", en or name)
            self.a(node, "crm:E74_Group", "foaf:Agent")
        else:
            node = self.policy.mint("person", en or name)
            self.a(node, "crm:E21_Person", "foaf:Agent")
        self.label(node, name, en)
        return node

    def timespan(self, raw):
        node = self.policy.mint("timespan", raw)
        self.a(node, "crm:E52_Time-Span")
        self.label(node, raw)
        self.add(node, "crm:P3_has_note", Literal(raw))
        span = parse_span(raw)
        if span:
            start, end = span
            self.add(node, "crm:P82a_begin_of_the_begin", Literal(start, datatype=XSD_GYEAR))
            if end:
                self.add(node, "crm:P82b_end_of_the_end", Literal(end, datatype=XSD_GYEAR))
        return node

    def role_term(self, value):
        """pro:withRole object for a role string; unknown roles become local pro:Role terms."""
        entry = self.vocab.lookup(value, "role")
        if entry is not None and entry.curie:
            iri = T(entry.curie)
            self.a(iri, ROLE_FAMILY.get(entry.curie, "pro:Role"))
            return iri, entry.curie
        if value in REGISTRY and value in ROLE_FAMILY:
            self.a(T(value), ROLE_FAMILY[value])
            return T(value), value
        if self.strict_roles:
            self.fail("unknown-role", "role %r is not in the role vocabulary" % value)
        self.warn("ROLR", "unknown-role", "role %r minted as a local pro:Role" % value)
        return self.term(value, "pro:Role"), None

    # ---------------------------------------------------------------- layout

    def _layout(self):
        r = self.record
        pol = self.policy
        self.is_f = r.kind == "F"
        ek = "fentry" if self.is_f else "oaentry"
        self.entry = pol.mint(ek, r.id)
        self.expression = pol.mint(ek, r.id, "expression")
        self.title = r.get("SGTI")
        self.cataloguer = None
        if self.is_f:
            self.work = pol.mint("photo", r.id)
            self.shot = pol.mint("photo", r.id, "shot")
            oaid = r.get("OAID")
            self.artwork = pol.mint("artwork", oaid) if oaid else None
        else:
            self.work = pol.mint("artwork", r.get("OAID") or r.id)
            self.shot = None
            self.artwork = self.work
        self.artwork_item = pol.mint("artwork", self._artwork_key(), "item") if self.artwork else None

        # manifestations: one per [MAN] block, facet named after the format
        self.manifestations = []
        seen = set()
        for block in r.blocks("MAN"):
            self._add_manifestation(block.get("MANT"), block, seen)
        needs_manifestation = bool(r.blocks("ITM")) or any(
            row.level in ("manifestation", "item") and r.values(row.code)
            for row in self.table.generic_rows(r.kind))
        if self.is_f:
            needs_manifestation = needs_manifestation or bool(r.blocks("TRC") or r.blocks("MST"))
        if not self.manifestations and needs_manifestation and (self.is_f or r.blocks("MAN")):
            fmt = r.get("OGTD") if self.is_f else None
            if fmt and self.vocab.lookup(fmt, "format") is None:
                fmt = None
            self._add_manifestation(fmt, None, seen)

        # items: [ITM] blocks attach to the manifestation named by ITMM, else the first
        self.items = []
        if self.is_f:
            for block in r.blocks("ITM"):
                m = self._manifestation_for(block.get("ITMM"))
                self._add_item(m, block)
            for m in self.manifestations:
                if not m["items"]:
                    self._add_item(m, None)
        else:
            blocks = r.blocks("ITM") or [None]
            for block in blocks:
                m = self._manifestation_for(block.get("ITMM") if block else None) if self.manifestations else None
                self._add_item(m, block)

    def _artwork_key(self):
        r = self.record
        return r.get("OAID") or r.id

    def _add_manifestation(self, fmt, block, seen):
        entry = self.vocab.lookup(fmt, "format") if fmt else None
        if fmt:
            base = facet(self.key_for(fmt).casefold())
        else:
            base = "manifestation"
        name = base
        n = 2
        while name in seen:
            name = "%s-%d" % (base, n)
            n += 1
        seen.add(name)
        digital = bool(entry and entry.curie == "fabio:DigitalManifestation")
        if self.is_f:
            iri = self.policy.mint("photo", self.record.id, name)
        else:
            iri = self.policy.mint("artwork", self._artwork_key(), name)
        self.manifestations.append({"iri": iri, "format": fmt, "block": block,
                                    "digital": digital, "items": []})

    def _manifestation_for(self, ref):
        if ref:
            want = facet(self.key_for(ref).casefold())
            for m in self.manifestations:
                if m["iri"].rsplit("/", 1)[1] == want or (m["format"] or "").casefold() == ref.casefold():
                    return m
            self.fail("unknown-manifestation", "ITMM %r names no [MAN] block" % ref)
        return self.manifestations[0]

    def _add_item(self, m, block):
        if self.is_f:
            n = len(m["items"]) + 1
            sub = m["iri"].rsplit("/", 1)[1] + ("/item" if n == 1 else "/item-%d" % n)
            iri = self.policy.mint("photo", self.record.id, sub)
        else:
            n = len(self.items) + 1
            iri = self.policy.mint("artwork", self._artwork_key(), "item" if n == 1 else "item-%d" % n)
        item = {"iri": iri, "block": block, "manifestation": m,
                "digital": bool(m and m["digital"])}
        if m is not None:
            m["items"].append(item)
        self.items.append(item)
        return item

    # node lookup by FRBR level name, used by roles and the field table
    def level_node(self, level):
        if level == "entry":
            return self.entry
        if level == "work":
            return self.work
        if level in ("expression", "shot"):
            return self.shot
        if level == "manifestation":
            return self.manifestations[0]["iri"] if self.manifestations else None
        if level == "item":
            if self.is_f:
                return self.items[0]["iri"] if self.items else None
            return self.items[0]["iri"]
        raise ValueError(level)

    @property
    def first_item(self):
        return self.items[0] if self.items else None

    # --------------------------------------------------------- label helpers

    def _subject_text(self):
        return ('"%s"' % self.title) if self.title else self.record.id

    def work_label(self):
        if self.is_f:
            return "Fotografia %s" % self._subject_text()
        return "Opera %s" % self._subject_text()

    def _of_work(self):
        if self.is_f:
            return "della fotografia %s" % self._subject_text()
        return "dell'opera %s" % self._subject_text()

    def entry_label(self):
        return "Scheda %s %s" % (self.record.kind, self.record.id)

    # ------------------------------------------------------------ identifiers

    def identifier(self, holder, code, value, assignment=True):
        n = self.next_n(holder, "identifier")
        node = Iri("%s/identifier/%d" % (holder, n))
        self.a(node, "crm:E42_Identifier")
        self.label(node, "%s %s" % (code, value))
        self.add(node, "crm:P3_has_note", Literal(value))
        self.add(node, "crm:P2_has_type", self.term(ID_FIELDS[code]))
        self.add(holder, "crm:P1_is_identified_by", node)
        if assignment:
            asg = Iri(node + "/assignment")
            self.a(asg, "crm:E13_Attribute_Assignment")
            self.label(asg, "Assegnazione %s %s" % (code, value))
            self.add(asg, "crm:P141_assigned", node)
            self.add(asg, "crm:P140_assigned_attribute_to", holder)
            self.add(holder, "crm:P140i_was_attributed_by", asg)
        return node

    # ------------------------------------------------------------- skeleton

    def build_entry_skeleton(self):
        r = self.record
        e = self.entry
        if self.is_f:
            self.a(e, "fentry:FEntry", "crm:E31_Document")
        else:
            self.a(e, "oaentry:OAEntry", "fabio:Work", "crm:E31_Document")
        self.label(e, self.entry_label())
        self.a(self.expression, "fabio:MetadataDocument", "fabio:Expression")
        self.label(self.expression, "Testo della scheda %s %s" % (r.kind, r.id))
        self.add(e, "frbr:realization", self.expression)
        self.add(self.expression, "frbr:realizationOf", e)

        self.identifier(e, "ID", r.id, assignment=False)
        for occ in r.fields:
            if occ.code in ("NCTR", "NCTN", "LIR"):
                self.identifier(e, occ.code, occ.value)

        describes = "fentry:describes" if self.is_f else "oaentry:describes"
        subjects = [self.work]
        if self.is_f:
            subjects += [it["iri"] for it in self.items]
            if self.artwork:
                subjects += [self.artwork, self.artwork_item]
        else:
            subjects += [m["iri"] for m in self.manifestations]
            subjects += [it["iri"] for it in self.items]
        for s in subjects:
            self.add(e, describes, s)
        self.add(e, "crm:P70_documents", self.work)
        if self.is_f and self.artwork:
            self.add(e, "crm:P70_documents", self.artwork)
        self._subject_nodes()

        for oaen in r.values("OAEN"):
            other = self.policy.mint("oaentry", oaen)
            self.a(other, "oaentry:OAEntry", "fabio:Work", "crm:E31_Document")
            self.label(other, "Scheda OA %s" % oaen)
            self.add(e, "crm:P67_refers_to", other)

        cmp_blocks = r.blocks("CMP")
        if cmp_blocks:
            creation = Iri(e + "/creation")
            self.a(creation, "crm:E65_Creation")
            self.label(creation, "Redazione della scheda %s %s" % (r.kind, r.id))
            self.add(creation, "crm:P94_has_created", e)
            self.add(e, "crm:P94i_was_created_by", creation)
            dated = False
            for block in cmp_blocks:
                name = block.get("CMPN")
                if not name:
                    self.fail("dangling-actor", "[CMP] block without CMPN")
                who = self.agent(name)
                if self.cataloguer is None:
                    self.cataloguer = who
                self.add(creation, "crm:P14_carried_out_by", who)
                when = block.get("CMPD")
                span = self.timespan(when) if when else None
                if span is not None and not dated:
                    self.add(creation, "crm:P4_has_time_span", span)
                    dated = True
                self.role_in_time(who, block.get("CMPR") or "catalogatore", e, span)
        for code, role, kind in ENTRY_ROLE_FIELDS:
            for value in r.values(code):
                self.role_in_time(self.agent(value, default=kind), role, e, None)
        return self.g

    def _subject_nodes(self):
        """Types and labels of the described works and items."""
        if self.is_f:
            self.a(self.work, "fentry:Photograph", "crm:E28_Conceptual_Object")
            self.label(self.work, self.work_label())
        if self.artwork:
            self.a(self.artwork, "fabio:ArtisticWork", "crm:E28_Conceptual_Object")
            self.label(self.artwork, "Opera %s" % self._subject_text())
            self.a(self.artwork_item, "fabio:AnalogItem", "crm:E22_Man-Made_Object")
            self.label(self.artwork_item, "Esemplare dell'opera %s" % self._subject_text())
            self.add(self.artwork, "fabio:hasPortrayal", self.artwork_item)
        for m in self.manifestations:
            self.a(m["iri"], "fabio:DigitalManifestation" if m["digital"] else "fabio:AnalogManifestation",
                   "crm:E22_Man-Made_Object")
            fmt = m["format"]
            name = fmt[:1].upper() + fmt[1:] if fmt else "Manifestazione"
            self.label(m["iri"], "%s %s" % (name, self._of_work()))
        for it in self.items:
            if it["iri"] == self.artwork_item:
                continue
            self.a(it["iri"], "fabio:DigitalItem" if it["digital"] else "fabio:AnalogItem",
                   "crm:E22_Man-Made_Object")
            m = it["manifestation"]
            where = (m["format"] or "manifestazione") if m else "opera"
            self.label(it["iri"], "Esemplare (%s) %s" % (where, self._of_work()))

    # ----------------------------------------------------------------- work

    def map_work_level(self):
        r = self.record
        w = self.work
        self._subject_nodes()
        creation_data = r.blocks("AUT") or r.get("DTS") or r.get("LRCL") or r.get("LRCE")
        if self.is_f or creation_data:
            c = Iri(w + "/creation")
            self.creation = c
            self.a(c, "crm:E65_Creation")
            self.label(c, "Creazione %s" % self._of_work())
            self.add(c, "crm:P94_has_created", w)
            self.add(w, "crm:P94i_was_created_by", c)
            if self.shot is not None:
                self.add(c, "crm:P94_has_created", self.shot)
                self.add(self.shot, "crm:P94i_was_created_by", c)
            for block in r.blocks("AUT"):
                self._authorship(c, block)
            if r.get("DTS"):
                self.add(c, "crm:P4_has_time_span", self.timespan(r.get("DTS")))
            for value in r.values("LRCL"):
                self.add(c, "crm:P7_took_place_at", self.place(value))
            for value in r.values("LRCE"):
                ev = self.policy.mint("event", self.key_for(value))
                self.a(ev, "crm:E4_Period", "crm:E5_Event")
                self.label(ev, value, self.en(value))
                self.add(c, "crm:P10_falls_within", ev)

        for block in r.blocks("TIT"):
            text = block.get("TITN")
            if not text:
                self.fail("bad-title", "[TIT] block without TITN")
            n = self.next_n(w, "title")
            t = Iri("%s/title/%d" % (w, n))
            self.a(t, "crm:E35_Title")
            self.label(t, text)
            self.add(w, "crm:P102_has_title", t)
            if block.get("TITT"):
                self.add(t, "crm:P2_has_type", self.term(block.get("TITT")))

        chain = r.values("INC")
        prev = w
        for i, value in enumerate(chain):
            coll = self.policy.mint("collection", self.key_for(value))
            if coll == prev:
                continue
            if i == len(chain) - 1:
                self.a(coll, "fabio:WorkCollection", "crm:E90_Symbolic_Object")
            else:
                self.a(coll, "fabio:Work", "crm:E90_Symbolic_Object")
            self.label(coll, value, self.en(value))
            self.add(prev, "crm:P106i_forms_part_of", coll)
            self.add(coll, "crm:P106_is_composed_of", prev)
            prev = coll

        for value in r.values("BIB"):
            doc = self.policy.mint("document", value)
            self.a(doc, "crm:E31_Document")
            self.label(doc, value)
            self.add(w, "crm:P70i_is_documented_in", doc)
            self.add(doc, "crm:P70_documents", w)

        if self.is_f and self.artwork_item is not None:
            self.add(w, "frbr:subject", self.artwork_item)
        return self.g

    def _authorship(self, creation, block):
        name = block.get("AUTN")
        if not name:
            self.fail("dangling-actor", "[AUT] block without AUTN")
        who = self.agent(name, block.get("AUTK"))
        self.add(creation, "crm:P14_carried_out_by", who)
        life = block.get("AUTA")
        if life:
            span = parse_span(life)
            if span is None:
                self.warn("AUTA", "bad-date", "cannot read life dates %r" % life)
            else:
                start, end = span
                birth = Iri(who + "/birth")
                self.a(birth, "crm:E67_Birth")
                self.label(birth, "Nascita di %s" % name)
                self.add(who, "crm:P98i_was_born", birth)
                self.add(birth, "crm:P4_has_time_span", self.timespan(start.lstrip("0") or "0"))
                if end and end != start:
                    death = Iri(who + "/death")
                    self.a(death, "crm:E69_Death")
                    self.label(death, "Morte di %s" % name)
                    self.add(who, "crm:P100i_died_in", death)
                    self.add(death, "crm:P4_has_time_span", self.timespan(end.lstrip("0") or "0"))
        for grp in block.values("AUTS"):
            self.add(who, "crm:P107i_is_current_or_former_member_of", self.agent(grp, "ente"))
        criteria = block.values("AUTM")
        if criteria:
            types = ["attribuzione di autore"]
            if _yes(block.get("AUTP")):
                types.append(PREFERRED)
            self.interpretation_act(creation, types, criteria, self.cataloguer)
        elif block.get("AUTP"):
            self.fail("missing-criterion", "AUTP without any AUTM criterion")

    # ------------------------------------------------------------ expression

    def map_expression_level(self):
        if not self.is_f:
            return self.g
        s = self.shot
        self.a(s, "fentry:Shot")
        self.label(s, "Scatto (immagine) %s" % self._of_work())
        self.add(s, "frbr:realizationOf", self.work)
        self.add(self.work, "frbr:realization", s)
        c = Iri(self.work + "/creation")
        self.add(c, "crm:P94_has_created", s)
        self.add(s, "crm:P94i_was_created_by", c)
        for m in self.manifestations:
            self.add(s, "frbr:embodiment", m["iri"])
        return self.g

    # --------------------------------------------------------- manifestation

    def map_manifestation_level(self):
        self._subject_nodes()
        for m in self.manifestations:
            node = m["iri"]
            if not self.is_f:
                self.add(self.work, "fabio:hasManifestation", node)
            if m["format"]:
                self.add(node, "crm:P2_has_type", self.term(m["format"]))
            block = m["block"]
            if block is None:
                continue
            for v in block.values("MTC"):
                self.add(node, "crm:P45_consists_of", self.term(v, "crm:E57_Material"))
            for v in block.values("MTX"):
                self.add(node, "crm:P56_bears_feature", self.term(v, "crm:E26_Physical_Feature"))
            dims = [("altezza", block.get("MISA")), ("larghezza", block.get("MISL")),
                    ("profondita", block.get("MISP"))]
            dims = [(k, v) for k, v in dims if v]
            if dims:
                unit = block.get("MISU") or "mm"
                meas = Iri(node + "/measurement")
                self.a(meas, "crm:E16_Measurement")
                self.label(meas, "Misure %s" % self.manifestation_phrase(m))
                self.add(node, "crm:P39i_was_measured_by", meas)
                unit_node = self.term(unit, "crm:E58_Measurement_Unit")
                for kind_it, value in dims:
                    if not _NUM.match(value):
                        self.fail("bad-dimension", "measure %r is not a number" % value)
                    kind_en = self.key_for(kind_it)
                    slug = slugify("%s %s%s" % (kind_en, value.replace(",", "."), unit))
                    dim = Iri("%s/%s" % (meas, slug))
                    self.a(dim, "crm:E54_Dimension")
                    self.label(dim, "%s %s %s" % (kind_it.capitalize(), value, unit))
                    self.add(dim, "crm:P2_has_type", self.term(kind_it))
                    self.add(dim, "crm:P90_has_value", Literal(value.replace(",", ".")))
                    self.add(dim, "crm:P91_has_unit", unit_node)
                    self.add(meas, "crm:P40_observed_dimension", dim)
        return self.g

    def manifestation_phrase(self, m):
        fmt = m["format"] or "manifestazione"
        return "(%s) %s" % (fmt, self._of_work())

    # ------------------------------------------------------------------ item

    def map_item_level(self):
        r = self.record
        self._subject_nodes()
        keeper_present = bool(r.get("KPN")) or any(
            it["block"] is not None and it["block"].get("KPN") for it in self.items)
        for it in self.items:
            node = it["iri"]
            m = it["manifestation"]
            if m is not None:
                self.add(m["iri"], "frbr:exemplar", node)
                self.add(node, "frbr:exemplarOf", m["iri"])
            if self.is_f and self.artwork_item is not None:
                self.add(node, "crm:P62_depicts", self.artwork_item)
            block = it["block"]
            if block is None:
                continue
            if block.get("ITMN"):
                self.add(node, "crm:P57_has_number_of_parts", Literal(block.get("ITMN")))
            for v in block.values("INVN"):
                self.identifier(node, "INVN", v)
            if block.get("STCC") or block.get("STCS"):
                cond = Iri(node + "/condition")
                state = Iri(cond + "/state")
                self.a(cond, "crm:E14_Condition_Assessment")
                self.label(cond, "Valutazione dello stato di conservazione")
                self.a(state, "crm:E3_Condition_State")
                self.label(state, "Stato di conservazione: %s" % (block.get("STCC") or block.get("STCS")))
                self.add(node, "crm:P34i_was_assessed_by", cond)
                self.add(cond, "crm:P35_has_identified", state)
                if block.get("STCC"):
                    self.add(state, "crm:P2_has_type", self.term(block.get("STCC")))
                for note in block.values("STCS"):
                    self.add(state, "crm:P3_has_note", Literal(note))
            self._location(node, block)
            self._keeper_owner(node, block)
            for v in block.values("ISRC"):
                self.add(node, "crm:P56_bears_feature", self.term(v, "crm:E26_Physical_Feature"))

        first = self.first_item
        if first is not None:
            node = first["iri"]
            for block in r.blocks("TRC"):
                self._transfer(node, block, keeper_present)
            for block in r.blocks("MST"):
                self._exhibition(node, block)
        return self.g

    def _location(self, node, block):
        name = block.get("LDCN")
        if not name:
            return
        chain = [name] + block.values("LDCF")
        places = []
        for v in chain:
            p = self.place(v)
            if p in places:
                self.fail("cyclic-place-chain", "place %r is declared inside itself" % v)
            places.append(p)
        self.add(node, "crm:P55_has_current_location", places[0])
        for inner, outer in zip(places, places[1:]):
            self.add(inner, "crm:P89_falls_within", outer)

    def _keeper_owner(self, node, block):
        kpn = block.get("KPN")
        if kpn:
            keeper = self.agent(kpn, default="ente")
            self.add(node, "crm:P50_has_current_keeper", keeper)
            if block.get("KPL"):
                self.add(keeper, "crm:P74_has_current_or_former_residence", self.place(block.get("KPL")))
            if block.get("KPA"):
                addr = Iri(keeper + "/address")
                self.a(addr, "crm:E45_Address")
                self.label(addr, block.get("KPA"))
                self.add(keeper, "crm:P76_has_contact_point", addr)
        owner_name = block.get("CDGS")
        if owner_name:
            owner = self.agent(owner_name, default="ente")
            self.add(node, "crm:P52_has_current_owner", owner)
            if block.get("ACQT") or block.get("ACQD"):
                n = self.next_n(node, "acquisition")
                acq = Iri("%s/acquisition/%d" % (node, n))
                self.a(acq, "crm:E8_Acquisition")
                self.label(acq, "Acquisizione da parte di %s" % owner_name)
                self.add(owner, "crm:P22i_acquired_title_through", acq)
                self.add(acq, "crm:P22_transferred_title_to", owner)
                self.add(acq, "crm:P24_transferred_title_of", node)
                if block.get("ACQT"):
                    self.add(acq, "crm:P2_has_type", self.term(block.get("ACQT")))
                if block.get("ACQD"):
                    self.add(acq, "crm:P4_has_time_span", self.timespan(block.get("ACQD")))
        elif block.get("ACQT") or block.get("ACQD"):
            self.warn("ACQT", "no-owner", "acquisition given without an owner (CDGS); ignored")

    def _transfer(self, node, block, keeper_present):
        kind = (block.get("TRCK") or "").strip().casefold()
        if kind in MOVE_WORDS:
            move = True
        elif kind in CUSTODY_WORDS:
            move = False
        elif kind:
            self.fail("bad-transfer-kind", "TRCK %r is neither custodia nor spostamento" % kind)
        else:
            move = not keeper_present
        n = self.next_n(node, "custody")
        ev = Iri("%s/custody/%d" % (node, n))
        src, dst, when = block.get("TRCF"), block.get("TRCT"), block.get("TRCD")
        if move:
            self.a(ev, "crm:E9_Move")
            self.label(ev, "Spostamento %d" % n)
            self.add(ev, "crm:P25_moved", node)
            if src:
                self.add(ev, "crm:P27_moved_from", self.place(src))
            if dst:
                self.add(ev, "crm:P26_moved_to", self.place(dst))
        else:
            if not src and not dst:
                self.fail("bad-transfer", "custody transfer without TRCF or TRCT")
            self.a(ev, "crm:E10_Transfer_of_Custody")
            self.label(ev, "Passaggio di custodia %d" % n)
            if src:
                self.add(ev, "crm:P28_custody_surrendered_by", self.agent(src, default="ente"))
            if dst:
                self.add(ev, "crm:P29_custody_received_by", self.agent(dst, default="ente"))
            self.add(ev, "crm:P30_transferred_custody_of", node)
            self.add(node, "crm:P30i_custody_transferred_through", ev)
        if when:
            self.add(ev, "crm:P4_has_time_span", self.timespan(when))

    def _exhibition(self, node, block):
        title = block.get("MSTT")
        where = block.get("MSTL")
        when = block.get("MSTD")
        year = _YEAR.search(when).group(0) if when and _YEAR.search(when) else None
        if where or year:
            parts = ["exhibition"]
            if where:
                parts.append(self.key_for(where))
            if year:
                parts.append(year)
            key = " ".join(parts)
        elif title:
            key = "exhibition " + title
        else:
            self.fail("bad-exhibition", "[MST] block needs MSTT, MSTL or MSTD")
        ev = self.policy.mint("event", key)
        self.a(ev, "crm:E5_Event")
        self.label(ev, title or "Mostra %s" % " ".join(x for x in (where, when) if x))
        self.add(node, "crm:P12i_was_present_at", ev)
        self.add(ev, "crm:P12_occurred_in_the_presence_of", node)
        if where:
            self.add(ev, "crm:P7_took_place_at", self.place(where))
        if when:
            self.add(ev, "crm:P4_has_time_span", self.timespan(when))
        if title:
            t = Iri(ev + "/title/1")
            self.a(t, "crm:E41_Appellation")
            self.label(t, title)
            self.add(ev, "crm:P1_is_identified_by", t)

    # ----------------------------------------------------------------- roles

    def role_in_time(self, agent, role, target, time=None, role_name=None):
        """pro:RoleInTime node binding agent, role, target and optional time."""
        if isinstance(role, Iri):
            role_iri = role
        else:
            role_iri, _ = self.role_term(role)
            role_name = role_name or role
        n = self.next_n(target, "role")
        node = Iri("%s/role/%d" % (target, n))
        self.a(node, "pro:RoleInTime")
        self.add(node, "pro:withRole", role_iri)
        self.add(node, "pro:relatesTo", target)
        self.add(node, "pro:isHeldBy", agent)
        self.add(agent, "pro:holdsRoleInTime", node)
        if time is not None:
            self.add(node, "tv:atTime", time)
        role_name = role_name or role_iri.rsplit("/", 1)[-1]
        agent_name = self.g.value(agent, LABEL)
        agent_name = agent_name.lexical if agent_name is not None else agent.rsplit("/", 1)[-1]
        self.label(node, "%s come %s" % (agent_name, role_name))
        return node

    def _role_target(self, role_curie, explicit):
        if explicit:
            level = TARGET_WORDS.get(explicit.strip().casefold())
            if level is None:
                self.fail("bad-role-target", "ROLT %r is not a known level" % explicit)
        elif role_curie == "scor:photographer":
            level = "shot"
        elif role_curie == "pro:publisher":
            level = "manifestation"
        elif role_curie in ROLE_FAMILY and ROLE_FAMILY[role_curie] == "oaentry:CataloguingRole":
            level = "entry"
        else:
            level = "work"
        node = self.level_node(level)
        if node is None:
            node = self.work
        return node

    def map_roles(self):
        for block in self.record.blocks("ROL"):
            name = block.get("ROLN")
            if not name:
                self.fail("dangling-actor", "[ROL] block without ROLN")
            role = block.get("ROLR")
            if not role:
                self.fail("unknown-role", "[ROL] block without ROLR")
            who = self.agent(name, block.get("ROLK"))
            role_iri, curie = self.role_term(role)
            target = self._role_target(curie, block.get("ROLT"))
            when = self.timespan(block.get("ROLD")) if block.get("ROLD") else None
            node = self.role_in_time(who, role_iri, target, when, role_name=role)
            criteria = block.values("ROLM")
            if criteria:
                types = block.values("ROLI") or ["attribuzione di ruolo"]
                if _yes(block.get("ROLP")):
                    types = types + [PREFERRED]
                evidence = None
                if block.get("ROLE"):
                    evidence = self._evidence(block.get("ROLE"))
                by = self.agent(block.get("ROLC")) if block.get("ROLC") else self.cataloguer
                self.interpretation_act(node, types, criteria, by, evidence)
            elif block.get("ROLI") or block.get("ROLP") or block.get("ROLE"):
                self.fail("missing-criterion", "interpretation fields without any ROLM criterion")
        return self.g

    def _evidence(self, part):
        """A named part of the first item (the verso, a stamp ...) cited as evidence."""
        holder = self.first_item["iri"] if self.first_item else self.work
        node = Iri("%s/%s" % (holder, facet(self.key_for(part).casefold())))
        self.a(node, "crm:E26_Physical_Feature")
        self.label(node, part, self.en(part))
        self.add(node, "crm:P46i_forms_part_of", holder)
        return node

    # ------------------------------------------------------- interpretations

    def interpretation_act(self, attributed, types, criteria, agent=None, evidence=None):
        if not types:
            self.fail("missing-type", "interpretation act on %s without a type" % attributed)
        if not criteria:
            self.fail("missing-criterion", "interpretation act on %s without a criterion" % attributed)
        n = self.next_n(attributed, "interpretation")
        act = Iri("%s/interpretation/%d" % (attributed, n))
        self.a(act, "hico:InterpretationAct")
        self.add(attributed, "prov:wasGeneratedBy", act)
        names = []
        for t in types:
            if isinstance(t, Iri):
                node = t
            elif t in REGISTRY:
                node = T(t)
            else:
                node = self.term(t, "hico:InterpretationType")
            self.a(node, "hico:InterpretationType")
            self.add(act, "hico:hasInterpretationType", node)
            names.append(t if not isinstance(t, Iri) else t.rsplit("/", 1)[-1])
        for c in criteria:
            node = c if isinstance(c, Iri) else self.term(c, "hico:InterpretationCriterion")
            self.add(act, "hico:hasInterpretationCriterion", node)
        self.add(act, "hico:isExtractedFrom", self.expression)
        self.a(self.expression, "fabio:MetadataDocument")
        if agent is not None:
            self.add(act, "prov:wasAssociatedWith", agent)
        if evidence is not None:
            self.add(act, "cito:citesAsEvidence", evidence)
        self.label(act, "Atto interpretativo (%s)" % ", ".join(names))
        return act

    def map_interpretations(self):
        # authorship and role acts are built with their blocks; nothing is
        # left over at this step but the method keeps the pipeline order explicit
        return self.g

    # ------------------------------------------------------------- influence

    def influence(self, former, derived, kind, attribution=None):
        if kind not in REGISTRY or kind not in _INFLUENCE:
            self.fail("unknown-influence-kind", "%r is not a registered influence class" % kind)
        n = self.next_n(derived, "influence")
        node = Iri("%s/influence/%d" % (derived, n))
        self.a(node, kind, "prov:Influence")
        self.add(node, "oaentry:hasFormerWork", former)
        self.add(node, "prov:entity", former)
        self.add(node, "oaentry:hasConceived", derived)
        self.add(derived, "oaentry:isConveivedByMeansOf", node)
        self.label(node, "Influenza (%s) tra opere" % kind.split(":")[1].lower())
        if attribution is not None:
            criteria, preferred, agent = attribution
            types = ["oaentry:influence-between-works-attribution"]
            if preferred:
                types.append(PREFERRED)
            self.interpretation_act(node, types, criteria, agent)
        return node

    def map_influence(self):
        for block in self.record.blocks("ROF"):
            status = block.get("ROFF")
            if not status:
                self.fail("unknown-influence-kind", "[ROF] block without ROFF")
            entry = self.vocab.lookup(status, "influence")
            if entry is None or not entry.curie:
                self.fail("unknown-influence-kind", "status %r has no influence class" % status)
            orig = block.get("ROFO")
            if not orig:
                self.fail("missing-former-work", "[ROF] block without ROFO")
            former = self.policy.mint("artwork", self.key_for(orig))
            self.a(former, "fabio:ArtisticWork", "crm:E28_Conceptual_Object")
            if former != self.work:
                self.label(former, orig, self.en(orig))
            criteria = block.values("ROFM")
            attribution = None
            if criteria:
                by = self.agent(block.get("ROFC")) if block.get("ROFC") else self.cataloguer
                attribution = (criteria, _yes(block.get("ROFP")), by)
            elif block.get("ROFP"):
                self.fail("missing-criterion", "ROFP without any ROFM criterion")
            self.influence(former, self.work, entry.curie, attribution)
        return self.g

    # ----------------------------------------------------------- field table

    def apply_field_table(self):
        r = self.record
        for row in self.table.generic_rows(r.kind):
            values = r.values(row.code)
            if not values:
                continue
            node = self.level_node(row.level)
            if node is None:
                continue
            pred = T(row.predicate)
            if row.object_kind == "literal":
                for v in values:
                    self.add(node, pred, Literal(v))
            elif row.object_kind == "lang-literal-it":
                translations = r.values(row.code + "EN")
                for i, v in enumerate(values):
                    self.add(node, pred, Literal(v, "it"))
                    if i < len(translations):
                        self.add(node, pred, Literal(translations[i], "en"))
            elif row.object_kind == "typed-term":
                cls = RANGES.get(row.predicate, "crm:E55_Type")
                for v in values:
                    self.add(node, pred, self.term(v, cls))
            elif row.object_kind == "slug-iri":
                for v in values:
                    self.add(node, pred, self.term(v, "crm:E55_Type"))
        return self.g

    # --------------------------------------------------------------- driver

    def convert(self):
        self.build_entry_skeleton()
        self.map_work_level()
        self.map_expression_level()
        self.map_manifestation_level()
        self.map_item_level()
        self.map_roles()
        self.map_interpretations()
        self.map_influence()
        self.apply_field_table()
        return self.g


_INFLUENCE = {"oaentry:Cartoon", "oaentry:Copy", "oaentry:Derivation", "oaentry:Drawing"}


def _mapper(record, table, policy, vocabulary=None, warnings=None, **kw):
    if table is None:
        from .table import MappingTable
        table = MappingTable.default()
    if policy is None:
        policy = IriPolicy()
    return EntryMapper(record, table, policy, vocabulary, warnings, **kw)


def convert_entry(record, table, policy, vocabulary=None, warnings=None, strict_roles=False):
    """Full graph for one record (all builders, in pipeline order)."""
    return _mapper(record, table, policy, vocabulary, warnings, strict_roles=strict_roles).convert()


def build_entry_skeleton(record, policy, table=None, vocabulary=None):
    return _mapper(record, table, policy, vocabulary).build_entry_skeleton()


def map_work_level(record, policy, table=None, vocabulary=None):
    return _mapper(record, table, policy, vocabulary).map_work_level()


def map_expression_level(record, policy, table=None, vocabulary=None):
    return _mapper(record, table, policy, vocabulary).map_expression_level()


def map_manifestation_level(record, policy, table=None, vocabulary=None):
    return _mapper(record, table, policy, vocabulary).map_manifestation_level()


def map_item_level(record, policy, table=None, vocabulary=None):
    return _mapper(record, table, policy, vocabulary).map_item_level()


def build_role_in_time(record, agent, role, target, time=None, policy=None, table=None,
                       vocabulary=None, strict_roles=False, warnings=None):
    """RoleInTime fragment.  ``agent``/``target``/``time`` are IRIs; ``role``
    is a vocabulary string, a registered curie or an IRI."""
    m = _mapper(record, table, policy, vocabulary, warnings, strict_roles=strict_roles)
    if isinstance(role, str) and not isinstance(role, Iri) and role in REGISTRY:
        m.a(T(role), ROLE_FAMILY.get(role, "pro:Role"))
        role = T(role)
    m.role_in_time(Iri(agent), role, Iri(target), Iri(time) if time else None)
    return m.g


def build_interpretation_act(record, attributed, types, criteria, agent=None, evidence=None,
                             policy=None, table=None, vocabulary=None):
    m = _mapper(record, table, policy, vocabulary)
    m.interpretation_act(Iri(attributed), list(types), list(criteria),
                         Iri(agent) if agent else None, Iri(evidence) if evidence else None)
    return m.g


def build_influence(record, former, derived, kind, policy=None, attribution=None,
                    table=None, vocabulary=None):
    """Influence fragment; ``attribution`` is (criteria, preferred, agent) or None."""
    m = _mapper(record, table, policy, vocabulary)
    m.influence(Iri(former), Iri(derived), kind, attribution)
    return m.g


def apply_field_table(record, table, policy, vocabulary=None):
    return _mapper(record, table, policy, vocabulary).apply_field_table()
