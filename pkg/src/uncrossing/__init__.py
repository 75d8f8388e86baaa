"""Uncrossing posets of planar wire diagrams and their lexicographic shellings."""

from .labels import TOP_LABEL, Label, compare_labels
from .posets import (
    FinitePoset,
    NotComparableError,
    NotGradedError,
    TooManyChainsError,
    find_isomorphism,
    reduced_euler_characteristic,
)
from .reporting import Check, Report
from .wires import (
    NoncrossingSet,
    NotCrossingError,
    NotNormalizedError,
    NotTwiceError,
    UncrossMode,
    WireWord,
    WordError,
    crossing_number,
    crossing_pairs,
    enumerate_words,
    fully_crossed_word,
    noncrossing_set,
    parse_word,
    pi_of,
    render_word,
    start_set,
    uncross,
)

__all__ = [
    "TOP_LABEL",
    "Label",
    "compare_labels",
    "FinitePoset",
    "NotComparableError",
    "NotGradedError",
    "TooManyChainsError",
    "find_isomorphism",
    "reduced_euler_characteristic",
    "Check",
    "Report",
    "NoncrossingSet",
    "NotCrossingError",
    "NotNormalizedError",
    "NotTwiceError",
    "UncrossMode",
    "WireWord",
    "WordError",
    "crossing_number",
    "crossing_pairs",
    "enumerate_words",
    "fully_crossed_word",
    "noncrossing_set",
    "parse_word",
    "pi_of",
    "render_word",
    "start_set",
    "uncross",
]

__version__ = "0.1.0"
