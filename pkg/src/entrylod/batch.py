"""Batch conversion of many records, optionally across worker processes.

Each worker converts a contiguous chunk of records with its own
IriPolicy.  The parent replays the worker journals in chunk order and
renames worker IRIs where a slug came out differently, so the result is
the same as converting every record in one process.
"""

import gc
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

from .errors import EntryLodError, RecordSyntaxError
from .iri import DEFAULT_BASE, IriPolicy
from .mapping.convert import convert_entry
from .mapping.table import MappingTable, Vocabulary
from .rdf.graph import Graph
from .records import check_record, read_records


@dataclass
class Converted:
    kind: str
    id: str
    graph: Optional[Graph]
    warnings: List = field(default_factory=list)
    error: Optional[str] = None

    @property
    def name(self):
        return "%s-%s" % ("fentry" if self.kind == "F" else "oaentry", self.id)


def collect_inputs(paths):
    """Expand directories to their sorted ``*.rec`` files."""
    out = []
    for p in paths:
        p = str(p)
        if os.path.isdir(p):
            out.extend(os.path.join(p, n) for n in sorted(os.listdir(p)) if n.endswith(".rec"))
        else:
            out.append(p)
    return out


def load_records(paths):
    """Read every record; (kind, id) must be unique across all files."""
    records = []
    seen = {}
    for path in collect_inputs(paths):
        for rec in read_records(path):
            key = (rec.kind, rec.id)
            if key in seen:
                raise RecordSyntaxError("duplicate-id", "record %s %s already read from %s"
                                        % (rec.kind, rec.id, seen[key]), rec.line, path)
            seen[key] = path
            records.append(rec)
    return records


class _NoCycleCollection:
    """Pause the cyclic GC while graphs are built.

    Graph indexes are dicts and sets of strings and tuples, which never form
    cycles, but millions of fresh containers keep triggering full collections
    that rescan everything built so far.
    """

    def __enter__(self):
        self.was_enabled = gc.isenabled()
        gc.disable()

    def __exit__(self, *exc):
        if self.was_enabled:
            gc.enable()


def _convert_chunk(records, table, vocabulary, policy, strict_roles=False):
    with _NoCycleCollection():
        return _convert_each(records, table, vocabulary, policy, strict_roles)


def _convert_each(records, table, vocabulary, policy, strict_roles):
    out = []
    for rec in records:
        warnings = check_record(rec, table)
        try:
            g = convert_entry(rec, table, policy, vocabulary, warnings, strict_roles=strict_roles)
            out.append(Converted(rec.kind, rec.id, g, warnings))
        except EntryLodError as exc:
            out.append(Converted(rec.kind, rec.id, None, warnings, "%s: %s" % (exc.code, exc)))
    return out


def _worker(args):
    records, table, vocabulary, base, strict_roles = args
    policy = IriPolicy(base)
    results = _convert_chunk(records, table, vocabulary, policy, strict_roles)
    packed = []
    for r in results:
        triples = list(r.graph) if r.graph is not None else None
        packed.append((r.kind, r.id, triples, r.warnings, r.error))
    return packed, policy.journal


def _chunks(items, n):
    size, extra = divmod(len(items), n)
    out = []
    start = 0
    for i in range(n):
        end = start + size + (1 if i < extra else 0)
        if end > start:
            out.append(items[start:end])
        start = end
    return out


def convert_records(records, table=None, vocabulary=None, base=DEFAULT_BASE, jobs=1,
                    strict_roles=False, policy=None):
    """Convert records in order; returns a list of Converted."""
    table = table if table is not None else MappingTable.default()
    vocabulary = vocabulary if vocabulary is not None else Vocabulary.default()
    policy = policy if policy is not None else IriPolicy(base)
    records = list(records)
    jobs = max(1, int(jobs))
    if jobs == 1 or len(records) < 2:
        return _convert_chunk(records, table, vocabulary, policy, strict_roles)
    chunks = _chunks(records, min(jobs, len(records)))
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(_worker, [(c, table, vocabulary, policy.base, strict_roles) for c in chunks]))
    results = []
    with _NoCycleCollection():
        for packed, journal in parts:
            renames = policy.adopt(journal)
            for kind, rid, triples, warnings, error in packed:
                g = None
                if triples is not None:
                    g = policy.rename_graph(Graph(triples), renames)
                results.append(Converted(kind, rid, g, warnings, error))
    return results


def merged(results):
    g = Graph()
    for r in results:
        if r.graph is not None:
            g.update(r.graph)
    return g
