"""Kernel selection: the compiled extension when it was built, else pure Python.

``BACKEND`` reports which one is active ("cython" or "python").
"""

try:
    from ._speedups import escape_iri, escape_literal, jaro_winkler, parse_line
    BACKEND = "cython"
except ImportError:  # extension not built
    from ._purepy import escape_iri, escape_literal, jaro_winkler, parse_line
    BACKEND = "python"

__all__ = ["BACKEND", "escape_iri", "escape_literal", "jaro_winkler", "parse_line"]
