"""Structural rules over a converted graph.

Closed world: a missing triple counts as missing.  Rules are plain
functions over the graph; each yields (rule, node, message).
"""

from dataclasses import dataclass, field
from typing import List

from .iri import DEFAULT_BASE
from .mapping.registry import INFLUENCE_KINDS, T
from .rdf.terms import Iri

RDF_TYPE = T("rdf:type")
LABEL = T("rdfs:label")

PREFERRED_SLUG = "term/zeri-preferred-attribution"


@dataclass(frozen=True, order=True)
class Violation:
    rule: str
    node: str
    message: str


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)
    warnings: List[Violation] = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def counts(self):
        out = {}
        for v in self.violations:
            out[v.rule] = out.get(v.rule, 0) + 1
        return out

    def rules(self):
        return sorted(self.counts())

    def to_tsv(self):
        return "".join("%s\t%s\t%s\n" % (v.rule, v.node, v.message) for v in self.violations)

    def to_text(self):
        if self.ok:
            lines = ["graph passes all rules"]
        else:
            lines = ["%d violation(s)" % len(self.violations)]
            lines += ["  %s: %d" % kv for kv in sorted(self.counts().items())]
            lines += ["%s %s %s" % (v.rule, v.node, v.message) for v in self.violations]
        lines += ["warning %s %s %s" % (w.rule, w.node, w.message) for w in self.warnings]
        return "\n".join(lines) + "\n"


def _count(g, s, p):
    return len(g.objects(s, p))


def _typed_any(g, node, classes):
    types = g.types(node)
    return any(c in types for c in classes)


def _cycles(edges):
    """Strongly connected components with more than one node (Tarjan, iterative)."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    out = []
    counter = 0
    for root in sorted(edges):
        if root in index:
            continue
        work = [(root, iter(sorted(edges.get(root, ()))))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(sorted(edges.get(nxt, ())))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.append(x)
                    if x == node:
                        break
                if len(comp) > 1:
                    out.append(sorted(comp))
    return out


def v01(g, ctx):
    for e in sorted(g.instances(T("fentry:FEntry"))):
        if not g.objects(e, T("fentry:describes")):
            yield "V01", e, "F entry describes nothing"


def v02(g, ctx):
    photo = T("fentry:Photograph")
    for s in sorted(g.instances(T("fentry:Shot"))):
        works = g.objects(s, T("frbr:realizationOf"))
        if len(works) != 1:
            yield "V02", s, "shot realizes %d works (want 1)" % len(works)
        elif photo not in g.types(next(iter(works))):
            yield "V02", s, "shot realizes something that is not a fentry:Photograph"


def v03(g, ctx):
    for r in sorted(g.instances(T("pro:RoleInTime"))):
        n_role = _count(g, r, T("pro:withRole"))
        n_ctx = _count(g, r, T("pro:relatesTo"))
        holders = g.objects(r, T("pro:isHeldBy")) | g.subjects(T("pro:holdsRoleInTime"), r)
        problems = []
        if n_role != 1:
            problems.append("%d pro:withRole" % n_role)
        if n_ctx != 1:
            problems.append("%d pro:relatesTo" % n_ctx)
        if not holders:
            problems.append("no holder")
        if problems:
            yield "V03", r, "role in time has " + ", ".join(problems)


def v04(g, ctx):
    for act in sorted(g.instances(T("hico:InterpretationAct"))):
        problems = []
        if not g.objects(act, T("hico:hasInterpretationType")):
            problems.append("no interpretation type")
        if not g.objects(act, T("hico:hasInterpretationCriterion")):
            problems.append("no interpretation criterion")
        n = _count(g, act, T("hico:isExtractedFrom"))
        if n != 1:
            problems.append("%d isExtractedFrom" % n)
        if problems:
            yield "V04", act, "interpretation act has " + ", ".join(problems)


def v05(g, ctx):
    shot = [T("fentry:Shot")]
    manif = [T("fabio:AnalogManifestation"), T("fabio:DigitalManifestation")]
    for r in sorted(g.instances(T("pro:RoleInTime"))):
        roles = g.objects(r, T("pro:withRole"))
        for target in sorted(g.objects(r, T("pro:relatesTo"))):
            if T("scor:photographer") in roles and not _typed_any(g, target, shot):
                yield "V05", r, "photographer role relates to a node that is not a shot"
            if T("pro:publisher") in roles and not _typed_any(g, target, manif):
                yield "V05", r, "publisher role relates to a node that is not a manifestation"


def v06(g, ctx):
    ok = [T("fabio:MetadataDocument"), T("fabio:Expression")]
    targets = {o for _, _, o in g.match(None, T("hico:isExtractedFrom"), None)}
    for t in sorted(targets):
        if type(t) is not Iri or not _typed_any(g, t, ok):
            yield "V06", t, "isExtractedFrom target is not a metadata document"


def v07(g, ctx):
    preferred = ctx["preferred"]
    has_type = T("hico:hasInterpretationType")
    per_node = {}
    for s, _, act in g.match(None, T("prov:wasGeneratedBy"), None):
        if preferred in g.objects(act, has_type):
            per_node.setdefault(s, set()).add(act)
    for s in sorted(per_node):
        if len(per_node[s]) > 1:
            yield "V07", s, "%d preferred attributions (want at most 1)" % len(per_node[s])


def _influences(g):
    nodes = set(g.instances(T("prov:Influence")))
    for k in INFLUENCE_KINDS:
        nodes |= g.instances(T(k))
    nodes.update(s for s, _, _ in g.match(None, T("oaentry:hasFormerWork"), None))
    return sorted(nodes)


def v08(g, ctx):
    for inf in _influences(g):
        n_former = _count(g, inf, T("oaentry:hasFormerWork"))
        n_conc = _count(g, inf, T("oaentry:hasConceived"))
        if n_former != 1 or n_conc < 1:
            yield "V08", inf, "influence has %d hasFormerWork and %d hasConceived" % (n_former, n_conc)


def v09(g, ctx):
    edges = {}
    for inf in _influences(g):
        formers = g.objects(inf, T("oaentry:hasFormerWork"))
        conceived = g.objects(inf, T("oaentry:hasConceived"))
        if formers & conceived:
            yield "V09", inf, "influence whose former work is also the conceived work"
        for f in formers:
            for c in conceived:
                if f != c:
                    edges.setdefault(f, set()).add(c)
    for comp in _cycles(edges):
        yield "V09", comp[0], "hasFormerWork cycle through %d works" % len(comp)


def v10(g, ctx):
    edges = {}
    p89 = T("crm:P89_falls_within")
    for s, _, o in g.match(None, p89, None):
        if s == o:
            yield "V10", s, "place falls within itself"
        else:
            edges.setdefault(s, set()).add(o)
    for comp in _cycles(edges):
        yield "V10", comp[0], "P89_falls_within cycle through %d places" % len(comp)


def v11(g, ctx):
    for ev in sorted(g.instances(T("crm:E10_Transfer_of_Custody"))):
        parties = _count(g, ev, T("crm:P28_custody_surrendered_by")) + _count(g, ev, T("crm:P29_custody_received_by"))
        n_obj = _count(g, ev, T("crm:P30_transferred_custody_of"))
        if parties < 1 or n_obj != 1:
            yield "V11", ev, "custody transfer with %d parties and %d objects" % (parties, n_obj)


def v12(g, ctx):
    base = ctx["base"]
    for node in sorted(n for n in g.nodes() if n.startswith(base)):
        if not any(type(o) is not Iri and o.language == "it" for o in g.objects(node, LABEL)):
            yield "V12", node, "minted resource without an Italian label"


RULES = (v01, v02, v03, v04, v05, v06, v07, v08, v09, v10, v11, v12)


def w01(g, ctx):
    art = T("fabio:ArtisticWork")
    oa = T("oaentry:OAEntry")
    for e in sorted(g.instances(T("fentry:FEntry"))):
        if any(art in g.types(w) for w in g.objects(e, T("fentry:describes"))):
            if not any(oa in g.types(x) for x in g.objects(e, T("crm:P67_refers_to"))):
                yield "W01", e, "F entry portrays a work of art but refers to no OA entry"


def validate(graph, base=DEFAULT_BASE):
    """Run every rule; the report is sorted by rule id then node IRI."""
    ctx = {"base": base, "preferred": Iri(base + PREFERRED_SLUG)}
    found = set()
    for rule in RULES:
        for rid, node, msg in rule(graph, ctx):
            found.add(Violation(rid, str(node), msg))
    warnings = sorted({Violation(r, str(n), m) for r, n, m in w01(graph, ctx)})
    return ValidationReport(sorted(found), warnings)


def read_report_tsv(text):
    out = []
    for line in text.splitlines():
        if line.strip():
            rule, node, msg = line.split("\t", 2)
            out.append(Violation(rule, node, msg))
    return out


__all__ = ["RULES", "ValidationReport", "Violation", "read_report_tsv", "validate"]
