"""Davenport-Schinzel sequence toolkit.

Data model and predicates (:mod:`dsseq.core`), proof-shaped decompositions
(:mod:`dsseq.decompositions`), the Ackermann hierarchy and tower arithmetic
(:mod:`dsseq.ackermann`), extremal lower-bound constructions
(:mod:`dsseq.constructions`), recurrence-constant families
(:mod:`dsseq.bounds`), formations (:mod:`dsseq.formations`), exact
brute-force oracles (:mod:`dsseq.oracles`), and a CLI (:mod:`dsseq.cli`).
"""

from .core import (
    AdsParameters,
    BlockedSequence,
    Sequence,
    canonicalize,
    contains_pattern,
    is_ds,
    is_r_sparse,
    max_alternation,
    remove_adjacent_repeats,
    seq,
)

__all__ = [
    "AdsParameters",
    "BlockedSequence",
    "Sequence",
    "canonicalize",
    "contains_pattern",
    "is_ds",
    "is_r_sparse",
    "max_alternation",
    "remove_adjacent_repeats",
    "seq",
]

__version__ = "0.1.0"
