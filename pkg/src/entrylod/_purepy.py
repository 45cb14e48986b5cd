"""Pure-Python versions of the hot kernels.

``_speedups.pyx`` implements the same functions; ``entrylod.kernels``
picks whichever is importable.  Both must agree exactly, which the test
suite checks on random input.
"""

from .errors import BlankNodeRejected, NTriplesSyntaxError

_LITERAL_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
    "\b": "\\b",
    "\f": "\\f",
}

_UNESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_IRI_FORBIDDEN = set('<>"{}|^`\\')


def escape_literal(s):
    out = []
    for ch in s:
        rep = _LITERAL_ESCAPES.get(ch)
        if rep is not None:
            out.append(rep)
        else:
            cp = ord(ch)
            if cp < 0x20 or cp == 0x7F:
                out.append("\\u%04X" % cp)
            else:
                out.append(ch)
    return "".join(out)


def escape_iri(s):
    out = []
    for ch in s:
        cp = ord(ch)
        if cp <= 0x20 or ch in _IRI_FORBIDDEN:
            out.append("\\u%04X" % cp)
        else:
            out.append(ch)
    return "".join(out)


def _hex(text, pos, width):
    chunk = text[pos:pos + width]
    if len(chunk) != width or any(c not in "0123456789abcdefABCDEF" for c in chunk):
        raise NTriplesSyntaxError("bad \\u escape")
    cp = int(chunk, 16)
    if cp > 0x10FFFF or 0xD800 <= cp <= 0xDFFF:
        raise NTriplesSyntaxError("escape outside the Unicode scalar range")
    return chr(cp)


def _read_iri(line, i, n):
    # line[i] == '<'
    i += 1
    out = []
    while i < n:
        ch = line[i]
        if ch == ">":
            return "".join(out), i + 1
        if ch == "\\":
            if i + 1 >= n:
                break
            kind = line[i + 1]
            if kind == "u":
                out.append(_hex(line, i + 2, 4))
                i += 6
            elif kind == "U":
                out.append(_hex(line, i + 2, 8))
                i += 10
            else:
                raise NTriplesSyntaxError("bad escape in IRI")
            continue
        if ord(ch) <= 0x20 or ch in '<"{}|^`':
            raise NTriplesSyntaxError("illegal character %r in IRI" % ch)
        out.append(ch)
        i += 1
    raise NTriplesSyntaxError("unterminated IRI")


def _read_string(line, i, n):
    # line[i] == '"'
    i += 1
    out = []
    while i < n:
        ch = line[i]
        if ch == '"':
            return "".join(out), i + 1
        if ch == "\\":
            if i + 1 >= n:
                break
            kind = line[i + 1]
            if kind == "u":
                out.append(_hex(line, i + 2, 4))
                i += 6
            elif kind == "U":
                out.append(_hex(line, i + 2, 8))
                i += 10
            elif kind in _UNESCAPES:
                out.append(_UNESCAPES[kind])
                i += 2
            else:
                raise NTriplesSyntaxError("bad escape in literal")
            continue
        if ch == "\n" or ch == "\r":
            raise NTriplesSyntaxError("raw line break in literal")
        out.append(ch)
        i += 1
    raise NTriplesSyntaxError("unterminated literal")


def _skip_ws(line, i, n):
    while i < n and line[i] in " \t":
        i += 1
    return i


def _read_subject_or_predicate(line, i, n, what):
    if i >= n:
        raise NTriplesSyntaxError("missing %s" % what)
    if line.startswith("_:", i):
        raise BlankNodeRejected("blank node in %s position" % what)
    if line[i] != "<":
        raise NTriplesSyntaxError("expected IRI as %s" % what)
    return _read_iri(line, i, n)


def parse_line(line):
    """Parse one N-Triples line.

    Returns None for blank and comment lines, otherwise a tuple
    ``(subject, predicate, object_is_literal, object, language, datatype)``
    of raw strings (language/datatype are None when absent).
    """
    n = len(line)
    i = _skip_ws(line, 0, n)
    if i >= n or line[i] == "#":
        return None
    s, i = _read_subject_or_predicate(line, i, n, "subject")
    i = _skip_ws(line, i, n)
    p, i = _read_subject_or_predicate(line, i, n, "predicate")
    i = _skip_ws(line, i, n)
    if i >= n:
        raise NTriplesSyntaxError("missing object")
    lang = dt = None
    ch = line[i]
    if ch == "<":
        o, i = _read_iri(line, i, n)
        is_lit = False
    elif ch == '"':
        o, i = _read_string(line, i, n)
        is_lit = True
        if i < n and line[i] == "@":
            j = i + 1
            while j < n and (line[j].isascii() and (line[j].isalnum() or line[j] == "-")):
                j += 1
            lang = line[i + 1:j]
            if not lang:
                raise NTriplesSyntaxError("empty language tag")
            i = j
        elif line.startswith("^^", i):
            if i + 2 >= n or line[i + 2] != "<":
                raise NTriplesSyntaxError("expected datatype IRI")
            dt, i = _read_iri(line, i + 2, n)
    elif line.startswith("_:", i):
        raise BlankNodeRejected("blank node in object position")
    else:
        raise NTriplesSyntaxError("expected IRI or literal as object")
    i = _skip_ws(line, i, n)
    if i >= n or line[i] != ".":
        raise NTriplesSyntaxError("missing terminating '.'")
    i = _skip_ws(line, i + 1, n)
    if i < n and line[i] != "#":
        raise NTriplesSyntaxError("trailing content after '.'")
    return s, p, is_lit, o, lang, dt


def jaro_winkler(a, b, prefix_scale=0.1, max_prefix=4):
    """Jaro-Winkler similarity in [0, 1]."""
    if a == b:
        return 1.0
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return 0.0
    window = max(max(la, lb) // 2 - 1, 0)
    a_flags = [False] * la
    b_flags = [False] * lb
    matches = 0
    for i in range(la):
        lo = max(0, i - window)
        hi = min(i + window + 1, lb)
        ca = a[i]
        for j in range(lo, hi):
            if not b_flags[j] and b[j] == ca:
                a_flags[i] = b_flags[j] = True
                matches += 1
                break
    if matches == 0:
        return 0.0
    transpositions = 0
    k = 0
    for i in range(la):
        if a_flags[i]:
            while not b_flags[k]:
                k += 1
            if a[i] != b[k]:
                transpositions += 1
            k += 1
    m = float(matches)
    jaro = (m / la + m / lb + (m - transpositions / 2) / m) / 3.0
    prefix = 0
    for i in range(min(max_prefix, la, lb)):
        if a[i] != b[i]:
            break
        prefix += 1
    return jaro + prefix * prefix_scale * (1.0 - jaro)
