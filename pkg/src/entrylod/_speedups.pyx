# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_purepy``; same signatures, same results."""

from libc.stdlib cimport malloc, free

from .errors import BlankNodeRejected, NTriplesSyntaxError


cdef inline str _exact(object x):
    # typed str arguments refuse subclasses such as Iri; take a plain copy
    if type(x) is str:
        return <str>x
    if not isinstance(x, str):
        raise TypeError("expected str, got %s" % type(x).__name__)
    return str.__str__(x)


cdef inline bint _iri_forbidden(Py_UCS4 ch):
    return (ch <= 0x20 or ch == u'<' or ch == u'>' or ch == u'"' or ch == u'{'
            or ch == u'}' or ch == u'|' or ch == u'^' or ch == u'`' or ch == u'\\')


def escape_literal(s_):
    cdef str s = _exact(s_)
    cdef Py_ssize_t i, n = len(s)
    cdef Py_UCS4 ch
    cdef bint clean = True
    for i in range(n):
        ch = s[i]
        if ch < 0x20 or ch == 0x7F or ch == u'"' or ch == u'\\':
            clean = False
            break
    if clean:
        return s
    out = []
    for i in range(n):
        ch = s[i]
        if ch == u'\\':
            out.append(u"\\\\")
        elif ch == u'"':
            out.append(u'\\"')
        elif ch == u'\n':
            out.append(u"\\n")
        elif ch == u'\r':
            out.append(u"\\r")
        elif ch == u'\t':
            out.append(u"\\t")
        elif ch == u'\b':
            out.append(u"\\b")
        elif ch == u'\f':
            out.append(u"\\f")
        elif ch < 0x20 or ch == 0x7F:
            out.append(u"\\u%04X" % <long>ch)
        else:
            out.append(ch)
    return u"".join(out)


def escape_iri(s_):
    cdef str s = _exact(s_)
    cdef Py_ssize_t i, n = len(s)
    cdef Py_UCS4 ch
    cdef bint clean = True
    for i in range(n):
        if _iri_forbidden(s[i]):
            clean = False
            break
    if clean:
        return s
    out = []
    for i in range(n):
        ch = s[i]
        if _iri_forbidden(ch):
            out.append(u"\\u%04X" % <long>ch)
        else:
            out.append(ch)
    return u"".join(out)


cdef inline int _hexval(Py_UCS4 c):
    if u'0' <= c <= u'9':
        return <int>c - 48
    if u'a' <= c <= u'f':
        return <int>c - 87
    if u'A' <= c <= u'F':
        return <int>c - 55
    return -1


cdef Py_UCS4 _hex(str text, Py_ssize_t pos, int width, Py_ssize_t n) except? 0xFFFFFFFF:
    cdef long cp = 0
    cdef int k, v
    if pos + width > n:
        raise NTriplesSyntaxError("bad \\u escape")
    for k in range(width):
        v = _hexval(text[pos + k])
        if v < 0:
            raise NTriplesSyntaxError("bad \\u escape")
        cp = cp * 16 + v
    if cp > 0x10FFFF or (0xD800 <= cp <= 0xDFFF):
        raise NTriplesSyntaxError("escape outside the Unicode scalar range")
    return <Py_UCS4>cp


cdef tuple _read_iri(str line, Py_ssize_t i, Py_ssize_t n):
    cdef Py_UCS4 ch, kind
    cdef Py_ssize_t start
    i += 1
    start = i
    # fast path: no escapes
    while i < n:
        ch = line[i]
        if ch == u'>':
            return line[start:i], i + 1
        if ch == u'\\':
            break
        if ch <= 0x20 or ch == u'<' or ch == u'"' or ch == u'{' or ch == u'}' or ch == u'|' or ch == u'^' or ch == u'`':
            raise NTriplesSyntaxError("illegal character %r in IRI" % ch)
        i += 1
    out = [line[start:i]]
    while i < n:
        ch = line[i]
        if ch == u'>':
            return u"".join(out), i + 1
        if ch == u'\\':
            if i + 1 >= n:
                break
            kind = line[i + 1]
            if kind == u'u':
                out.append(_hex(line, i + 2, 4, n))
                i += 6
            elif kind == u'U':
                out.append(_hex(line, i + 2, 8, n))
                i += 10
            else:
                raise NTriplesSyntaxError("bad escape in IRI")
            continue
        if ch <= 0x20 or ch == u'<' or ch == u'"' or ch == u'{' or ch == u'}' or ch == u'|' or ch == u'^' or ch == u'`':
            raise NTriplesSyntaxError("illegal character %r in IRI" % ch)
        out.append(ch)
        i += 1
    raise NTriplesSyntaxError("unterminated IRI")


cdef tuple _read_string(str line, Py_ssize_t i, Py_ssize_t n):
    cdef Py_UCS4 ch, kind
    cdef Py_ssize_t start
    i += 1
    start = i
    while i < n:
        ch = line[i]
        if ch == u'"':
            return line[start:i], i + 1
        if ch == u'\\':
            break
        if ch == u'\n' or ch == u'\r':
            raise NTriplesSyntaxError("raw line break in literal")
        i += 1
    out = [line[start:i]]
    while i < n:
        ch = line[i]
        if ch == u'"':
            return u"".join(out), i + 1
        if ch == u'\\':
            if i + 1 >= n:
                break
            kind = line[i + 1]
            if kind == u'u':
                out.append(_hex(line, i + 2, 4, n))
                i += 6
                continue
            if kind == u'U':
                out.append(_hex(line, i + 2, 8, n))
                i += 10
                continue
            if kind == u't':
                out.append(u"\t")
            elif kind == u'b':
                out.append(u"\b")
            elif kind == u'n':
                out.append(u"\n")
            elif kind == u'r':
                out.append(u"\r")
            elif kind == u'f':
                out.append(u"\f")
            elif kind == u'"':
                out.append(u'"')
            elif kind == u"'":
                out.append(u"'")
            elif kind == u'\\':
                out.append(u"\\")
            else:
                raise NTriplesSyntaxError("bad escape in literal")
            i += 2
            continue
        if ch == u'\n' or ch == u'\r':
            raise NTriplesSyntaxError("raw line break in literal")
        out.append(ch)
        i += 1
    raise NTriplesSyntaxError("unterminated literal")


cdef inline Py_ssize_t _skip_ws(str line, Py_ssize_t i, Py_ssize_t n):
    cdef Py_UCS4 ch
    while i < n:
        ch = line[i]
        if ch != u' ' and ch != u'\t':
            break
        i += 1
    return i


cdef tuple _read_sp(str line, Py_ssize_t i, Py_ssize_t n, str what):
    if i >= n:
        raise NTriplesSyntaxError("missing %s" % what)
    if line[i] == u'_' and i + 1 < n and line[i + 1] == u':':
        raise BlankNodeRejected("blank node in %s position" % what)
    if line[i] != u'<':
        raise NTriplesSyntaxError("expected IRI as %s" % what)
    return _read_iri(line, i, n)


cdef inline bint _lang_char(Py_UCS4 c):
    return (u'a' <= c <= u'z') or (u'A' <= c <= u'Z') or (u'0' <= c <= u'9') or c == u'-'


def parse_line(line_):
    cdef str line = _exact(line_)
    cdef Py_ssize_t n = len(line)
    cdef Py_ssize_t i, j
    cdef Py_UCS4 ch
    i = _skip_ws(line, 0, n)
    if i >= n or line[i] == u'#':
        return None
    s, i = _read_sp(line, i, n, "subject")
    i = _skip_ws(line, i, n)
    p, i = _read_sp(line, i, n, "predicate")
    i = _skip_ws(line, i, n)
    if i >= n:
        raise NTriplesSyntaxError("missing object")
    lang = None
    dt = None
    ch = line[i]
    if ch == u'<':
        o, i = _read_iri(line, i, n)
        is_lit = False
    elif ch == u'"':
        o, i = _read_string(line, i, n)
        is_lit = True
        if i < n and line[i] == u'@':
            j = i + 1
            while j < n and _lang_char(line[j]):
                j += 1
            lang = line[i + 1:j]
            if not lang:
                raise NTriplesSyntaxError("empty language tag")
            i = j
        elif i + 1 < n and line[i] == u'^' and line[i + 1] == u'^':
            if i + 2 >= n or line[i + 2] != u'<':
                raise NTriplesSyntaxError("expected datatype IRI")
            dt, i = _read_iri(line, i + 2, n)
    elif ch == u'_' and i + 1 < n and line[i + 1] == u':':
        raise BlankNodeRejected("blank node in object position")
    else:
        raise NTriplesSyntaxError("expected IRI or literal as object")
    i = _skip_ws(line, i, n)
    if i >= n or line[i] != u'.':
        raise NTriplesSyntaxError("missing terminating '.'")
    i = _skip_ws(line, i + 1, n)
    if i < n and line[i] != u'#':
        raise NTriplesSyntaxError("trailing content after '.'")
    return s, p, is_lit, o, lang, dt


def jaro_winkler(a_, b_, double prefix_scale=0.1, int max_prefix=4):
    cdef str a = _exact(a_)
    cdef str b = _exact(b_)
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t window, i, j, lo, hi, k
    cdef long matches = 0, transpositions = 0
    cdef int prefix = 0
    cdef double m, jaro
    cdef char *a_flags
    cdef char *b_flags
    cdef Py_UCS4 ca
    if a == b:
        return 1.0
    if la == 0 or lb == 0:
        return 0.0
    window = (la if la > lb else lb) // 2 - 1
    if window < 0:
        window = 0
    a_flags = <char *>malloc(la)
    b_flags = <char *>malloc(lb)
    if a_flags == NULL or b_flags == NULL:
        free(a_flags)
        free(b_flags)
        raise MemoryError()
    try:
        for i in range(la):
            a_flags[i] = 0
        for j in range(lb):
            b_flags[j] = 0
        for i in range(la):
            lo = i - window
            if lo < 0:
                lo = 0
            hi = i + window + 1
            if hi > lb:
                hi = lb
            ca = a[i]
            for j in range(lo, hi):
                if not b_flags[j] and b[j] == ca:
                    a_flags[i] = 1
                    b_flags[j] = 1
                    matches += 1
                    break
        if matches == 0:
            return 0.0
        k = 0
        for i in range(la):
            if a_flags[i]:
                while not b_flags[k]:
                    k += 1
                if a[i] != b[k]:
                    transpositions += 1
                k += 1
    finally:
        free(a_flags)
        free(b_flags)
    m = <double>matches
    jaro = (m / la + m / lb + (m - transpositions / 2.0) / m) / 3.0
    for i in range(min(max_prefix, min(la, lb))):
        if a[i] != b[i]:
            break
        prefix += 1
    return jaro + prefix * prefix_scale * (1.0 - jaro)
