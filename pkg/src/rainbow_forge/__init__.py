"""Rainbow independent sets, induced paths and cycles, with checkable certificates.

Graphs are immutable bitset adjacency rows (:class:`Graph`).  Every search
returns a certificate that :func:`validate` re-checks against the graph.
"""

from .graph import Graph, ProperColoring, validate

__all__ = ["Graph", "ProperColoring", "validate"]
__version__ = "0.1.0"
