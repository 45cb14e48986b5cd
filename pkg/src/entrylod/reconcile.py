"""Offline reconciliation of local agents, places and terms against
authority snapshots (tab-separated exports of VIAF/ULAN/AAT/GeoNames ...).

score = 0.8 * name similarity + 0.2 * date compatibility

Name similarity is Jaro-Winkler on slugified names, also tried with the
name tokens sorted so that "Brogi, Giacomo" meets "Giacomo Brogi".
A local entity is linked to its best authority row when the score
reaches ``threshold`` and beats the runner-up by at least ``margin``;
when only the margin fails the pair goes to review instead.
"""

import csv
import io
import re
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .errors import IriPolicyError, SnapshotError
from .iri import slugify
from .kernels import jaro_winkler
from .mapping.registry import T
from .rdf.graph import Graph
from .rdf.terms import Iri

NAME_WEIGHT = 0.8
DATE_WEIGHT = 0.2

TARGETS = ("viaf", "ulan", "wikidata", "geonames", "aat", "dbpedia")
COLUMNS = ("id", "kind", "preferred_name", "aliases", "birth_year", "death_year") + TARGETS
KINDS = ("person", "place", "term")

# bare identifiers in a snapshot column are expanded with these templates
TEMPLATES = {
    "viaf": "http://viaf.org/viaf/%s",
    "ulan": "http://vocab.getty.edu/ulan/%s",
    "aat": "http://vocab.getty.edu/aat/%s",
    "wikidata": "http://www.wikidata.org/entity/%s",
    "geonames": "http://sws.geonames.org/%s/",
    "dbpedia": "http://dbpedia.org/resource/%s",
}

LOCAL_CLASSES = {
    "person": ("crm:E21_Person", "crm:E74_Group"),
    "place": ("crm:E53_Place",),
    "term": ("crm:E55_Type", "crm:E57_Material", "crm:E26_Physical_Feature", "crm:E58_Measurement_Unit"),
}

_SCHEME = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")


@dataclass(frozen=True)
class AuthorityRecord:
    id: str
    kind: str
    preferred_name: str
    aliases: Tuple[str, ...] = ()
    birth_year: Optional[int] = None
    death_year: Optional[int] = None
    external: Dict[str, str] = field(default_factory=dict, hash=False, compare=False)

    def names(self):
        return (self.preferred_name,) + tuple(self.aliases)


@dataclass(frozen=True)
class MatchCandidate:
    local: str
    authority: str
    score: float
    status: str
    runner_up: Optional[str] = None
    runner_up_score: float = 0.0


def _year(value, row_id, column):
    value = value.strip()
    if not value:
        return None
    if not re.fullmatch(r"-?\d{1,4}", value):
        raise SnapshotError("row %s: %s %r is not a year" % (row_id, column, value), "bad-year")
    return int(value)


def _external(target, value):
    value = value.strip()
    if not value:
        return None
    if not _SCHEME.match(value):
        value = TEMPLATES[target] % value
    return str(Iri(value))


def load_snapshot(source):
    """Parse a snapshot TSV (path, bytes, str or file object)."""
    if hasattr(source, "read"):
        data = source.read()
    elif isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    elif isinstance(source, str) and "\t" in source:
        data = source
    else:
        with open(source, "rb") as fh:
            data = fh.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    reader = csv.reader(io.StringIO(data), delimiter="\t")
    rows = [r for r in reader if r and any(c.strip() for c in r) and not r[0].startswith("#")]
    if not rows:
        return []
    header = tuple(c.strip() for c in rows[0])
    if header != COLUMNS:
        raise SnapshotError("snapshot header must be: %s" % " ".join(COLUMNS), "bad-header")
    out = []
    seen = set()
    for cols in rows[1:]:
        cols = [c.strip() for c in cols] + [""] * (len(COLUMNS) - len(cols))
        rec = dict(zip(COLUMNS, cols))
        rid = rec["id"]
        if not rid:
            raise SnapshotError("row without id", "bad-row")
        if rid in seen:
            raise SnapshotError("authority id %s repeated" % rid, "duplicate-id")
        seen.add(rid)
        if rec["kind"] not in KINDS:
            raise SnapshotError("row %s: kind %r not one of %s" % (rid, rec["kind"], ", ".join(KINDS)), "bad-kind")
        if not rec["preferred_name"]:
            raise SnapshotError("row %s: empty preferred_name" % rid, "bad-row")
        birth = _year(rec["birth_year"], rid, "birth_year")
        death = _year(rec["death_year"], rid, "death_year")
        if birth is not None and death is not None and birth > death:
            raise SnapshotError("row %s: birth %d after death %d" % (rid, birth, death), "bad-year")
        aliases = tuple(a.strip() for a in rec["aliases"].split("|") if a.strip())
        external = {}
        for t in TARGETS:
            iri = _external(t, rec[t])
            if iri:
                external[t] = iri
        out.append(AuthorityRecord(rid, rec["kind"], rec["preferred_name"], aliases, birth, death, external))
    return out


def _slug(name):
    try:
        return slugify(name)
    except IriPolicyError:
        return ""


def name_similarity(a, b):
    """Jaro-Winkler of the slugs, or of their sorted tokens when that is higher."""
    sa, sb = _slug(a), _slug(b)
    if not sa or not sb:
        return 0.0
    direct = jaro_winkler(sa, sb)
    if direct == 1.0:
        return 1.0
    ta = "-".join(sorted(sa.split("-")))
    tb = "-".join(sorted(sb.split("-")))
    return max(direct, jaro_winkler(ta, tb))


def date_compatibility(local_years, auth):
    """1 when the life spans overlap or either side has no dates, else 0."""
    if not local_years:
        return 1.0
    lb, ld = local_years
    ab, ad = auth.birth_year, auth.death_year
    if (lb is None and ld is None) or (ab is None and ad is None):
        return 1.0
    lo1 = lb if lb is not None else float("-inf")
    hi1 = ld if ld is not None else float("inf")
    lo2 = ab if ab is not None else float("-inf")
    hi2 = ad if ad is not None else float("inf")
    return 1.0 if lo1 <= hi2 and lo2 <= hi1 else 0.0


def score_match(local_name, local_years, auth):
    names = [local_name] if isinstance(local_name, str) else list(local_name)
    if not names or not all(n.strip() for n in names):
        raise ValueError("local name must be nonempty")
    sim = max(name_similarity(n, a) for n in names for a in auth.names())
    return NAME_WEIGHT * sim + DATE_WEIGHT * date_compatibility(local_years, auth)


def _gyear(g, node, prop):
    lit = g.value(node, T(prop))
    if lit is None or type(lit) is Iri:
        return None
    try:
        return int(lit.lexical)
    except ValueError:
        return None


def local_years(g, node):
    """(birth, death) years from P98i/P100i events, None where unknown."""
    birth = death = None
    ev = g.value(node, T("crm:P98i_was_born"))
    if ev is not None:
        span = g.value(ev, T("crm:P4_has_time_span"))
        if span is not None:
            birth = _gyear(g, span, "crm:P82a_begin_of_the_begin")
    ev = g.value(node, T("crm:P100i_died_in"))
    if ev is not None:
        span = g.value(ev, T("crm:P4_has_time_span"))
        if span is not None:
            death = _gyear(g, span, "crm:P82b_end_of_the_end") or _gyear(g, span, "crm:P82a_begin_of_the_begin")
    if birth is None and death is None:
        return None
    return birth, death


def local_entities(g):
    """{iri: (kind, [label strings])} for every reconcilable local node."""
    out = {}
    label = T("rdfs:label")
    for kind, classes in LOCAL_CLASSES.items():
        for c in classes:
            for node in g.instances(T(c)):
                names = sorted({o.lexical for o in g.objects(node, label) if type(o) is not Iri})
                if names and node not in out:
                    out[node] = (kind, names)
    return out


def score_all(graph, snapshot, threshold=0.85, margin=0.05, resolver=None):
    """One MatchCandidate per local entity with at least one same-kind authority row."""
    by_kind = {}
    for rec in snapshot:
        by_kind.setdefault(rec.kind, []).append(rec)
    results = []
    for node, (kind, names) in sorted(local_entities(graph).items()):
        pool = list(by_kind.get(kind, ()))
        if resolver is not None:
            known = {r.id for r in pool}
            for name in names:
                for rec in resolver(name, kind) or ():
                    if rec.kind == kind and rec.id not in known:
                        known.add(rec.id)
                        pool.append(rec)
        if not pool:
            continue
        years = local_years(graph, node) if kind == "person" else None
        scored = sorted(((score_match(names, years, rec), rec.id) for rec in pool),
                        key=lambda x: (-x[0], x[1]))
        best, best_id = scored[0]
        runner, runner_id = scored[1] if len(scored) > 1 else (0.0, None)
        if best >= threshold and best - runner >= margin:
            status = "accepted"
        elif best >= threshold:
            status = "ambiguous"
        else:
            status = "rejected"
        results.append(MatchCandidate(str(node), best_id, best, status, runner_id, runner))
    return results


def reconcile(graph, snapshot, threshold=0.85, margin=0.05, resolver=None):
    """Return (links graph, review list).  Links are rdfs:seeAlso to every
    external IRI of each accepted authority row."""
    by_id = {r.id: r for r in snapshot}
    see_also = T("rdfs:seeAlso")
    links = Graph()
    review = []
    for cand in score_all(graph, snapshot, threshold, margin, resolver):
        if cand.status == "accepted":
            rec = by_id.get(cand.authority)
            if rec is None and resolver is not None:
                rec = next((r for r in resolver_cache(resolver, graph, cand) if r.id == cand.authority), None)
            for target in TARGETS:
                if rec is not None and target in rec.external:
                    links.add((Iri(cand.local), see_also, Iri(rec.external[target])))
        elif cand.status == "ambiguous":
            review.append(cand)
    return links, review


def resolver_cache(resolver, graph, cand):
    kind, names = local_entities(graph)[Iri(cand.local)]
    out = []
    for name in names:
        out.extend(resolver(name, kind) or ())
    return out


def review_tsv(review):
    lines = ["local\tauthority\tscore\trunner_up\trunner_up_score\n"]
    for c in review:
        lines.append("%s\t%s\t%.4f\t%s\t%.4f\n" % (c.local, c.authority, c.score,
                                                   c.runner_up or "", c.runner_up_score))
    return "".join(lines)
