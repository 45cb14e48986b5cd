"""Compare the pure-Python kernels with the compiled ones.

    python benchmarks/bench_kernels.py [--repeat 5] [--records 300]

Prints one line per kernel with the best-of-N time for each backend and
the speedup, then the same for a full N-Triples parse and serialize of a
converted batch with each backend patched in.
"""

import argparse
import os
import random
import string
import sys
import timeit

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(HERE, "..", "tests"))

from entrylod import _purepy  # noqa: E402

try:
    from entrylod import _speedups
except ImportError:
    _speedups = None


def _names(n, rnd):
    words = ["brogi", "giacomo", "verrocchio", "andrea", "leonardo", "vinci", "bellini", "zeri",
             "federico", "michelangelo", "buonarroti", "bassano", "jacopo"]
    return ["-".join(rnd.sample(words, rnd.randint(1, 3))) for _ in range(n)]


def _texts(n, rnd):
    alphabet = string.ascii_letters + " àèéìòù\"\\\n\t'"
    return ["".join(rnd.choice(alphabet) for _ in range(rnd.randint(5, 60))) for _ in range(n)]


def workloads(rnd):
    from entrylod.rdf import Literal, serialize_ntriples
    names = _names(400, rnd)
    pairs = [(names[i], names[-i - 1]) for i in range(len(names))]
    texts = _texts(2000, rnd)
    iris = ["https://w3id.org/zericatalog/person/%s" % n for n in names]
    from entrylod.rdf import Graph, Iri
    g = Graph()
    for i, t in enumerate(texts):
        g.add((Iri(iris[i % len(iris)]), Iri("http://www.w3.org/2000/01/rdf-schema#label"), Literal(t, "it")))
    lines = serialize_ntriples(g).decode("utf-8").splitlines()
    return {
        "jaro_winkler": lambda mod: [mod.jaro_winkler(a, b) for a, b in pairs],
        "escape_literal": lambda mod: [mod.escape_literal(t) for t in texts],
        "escape_iri": lambda mod: [mod.escape_iri(i) for i in iris],
        "parse_line": lambda mod: [mod.parse_line(ln) for ln in lines],
    }


def _patched(mod, fn):
    """Run fn with every user of the kernels pointed at mod."""
    import entrylod.rdf.ntriples as nt
    import entrylod.rdf.terms as terms
    saved = []
    for target in (nt, terms):
        for name in ("escape_iri", "escape_literal", "parse_line"):
            if hasattr(target, name):
                saved.append((target, name, getattr(target, name)))
                setattr(target, name, getattr(mod, name))
    try:
        return fn()
    finally:
        for target, name, value in saved:
            setattr(target, name, value)


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--records", type=int, default=300)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    if _speedups is None:
        print("compiled extension not built; run: pip install -e . --no-build-isolation")
        return 1
    rnd = random.Random(args.seed)

    print("%-16s %12s %12s %8s" % ("kernel", "python (ms)", "cython (ms)", "speedup"))
    for name, work in workloads(rnd).items():
        assert work(_purepy) == work(_speedups), name
        tp = best(lambda: work(_purepy), args.repeat)
        tc = best(lambda: work(_speedups), args.repeat)
        print("%-16s %12.2f %12.2f %7.1fx" % (name, tp * 1e3, tc * 1e3, tp / tc))

    from helpers import replicated_corpus
    from entrylod.batch import convert_records, merged
    from entrylod.records import parse_records
    from entrylod.rdf import parse_ntriples, serialize_ntriples
    g = merged(convert_records(parse_records(replicated_corpus(args.records))))
    data = serialize_ntriples(g)

    def roundtrip():
        return serialize_ntriples(parse_ntriples(data))

    tp = best(lambda: _patched(_purepy, roundtrip), args.repeat)
    tc = best(lambda: _patched(_speedups, roundtrip), args.repeat)
    print("%-16s %12.2f %12.2f %7.1fx   (%d triples)" % ("nt round trip", tp * 1e3, tc * 1e3, tp / tc, len(g)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
