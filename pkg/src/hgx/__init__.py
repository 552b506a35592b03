"""Hypergraph Turan numbers under a bounded matching number.

Invariants, extremal constructions, closed-form bounds and an exact
branch-and-bound Turan solver for small uniform hypergraphs.
"""

from hgx.hypercore import (
    Embedding,
    Hypergraph,
    canonical_form,
    delete_vertices,
    is_free,
    is_subhypergraph,
    is_weakly_independent,
    isomorphic,
    link,
    read_hg,
    validate,
    write_hg,
)

__version__ = "0.1.0"

__all__ = [
    "Embedding",
    "Hypergraph",
    "canonical_form",
    "delete_vertices",
    "is_free",
    "is_subhypergraph",
    "is_weakly_independent",
    "isomorphic",
    "link",
    "read_hg",
    "validate",
    "write_hg",
]
