"""k-graphs, Kumjian-Pask algebras and pure infiniteness checks.

Load a graph with ``KGraph.load(path)`` or ``KGraph.from_text(text)``; build
algebra elements with ``g.element("a a^* + b b^*")``.
"""

from ._kpinf import (
    ConsistencyError,
    Element,
    Error,
    KGraph,
    ParseError,
    PreconditionError,
    VerificationError,
)

__all__ = [
    "ConsistencyError",
    "Element",
    "Error",
    "KGraph",
    "ParseError",
    "PreconditionError",
    "VerificationError",
]
