"""The uncrossing order on wire diagrams, with an adjoined minimum.

Diagrams on ``n`` wires are ordered by uncrossing: ``u`` is covered by ``v``
when a single smoothing of one crossing of ``v`` produces ``u`` with exactly
one crossing fewer.  A unique minimum sits below the crossingless diagrams.
The whole order has ``1 + (2n-1)!!`` elements; rank of a diagram is one more
than its crossing number.

Covers are found by trying both smoothings of every crossing and keeping the
ones that drop the crossing number by exactly one.  The pattern rule in
:func:`dual_covers_by_pattern_rule` predicts the same set from the
noncrossing pair data alone and is kept as an independently checkable route.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

from .labels import TOP_LABEL, Label
from .posets import FinitePoset
from .wires import (
    WireWord,
    cover_uncrossings,
    crossing_number,
    enumerate_words,
    fully_crossed_word,
    noncrossing_set,
    render_word,
    uncross,
    UncrossMode,
)


class TooLargeError(RuntimeError):
    """Generating the poset would exceed the configured element limit."""


class _Bottom:
    """The adjoined minimum; prints as a bottom symbol."""

    _instance: "_Bottom | None" = None

    def __new__(cls) -> "_Bottom":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "⊥"

    def __str__(self) -> str:
        return "⊥"


#: The unique minimum adjoined below the crossingless diagrams.
BOTTOM = _Bottom()

PosetElement = WireWord | _Bottom


def double_factorial_odd(n: int) -> int:
    """(2n-1)!! = (2n)! / (n! 2^n), the number of diagrams on n wires."""
    out = 1
    for k in range(1, 2 * n, 2):
        out *= k
    return out


def dual_covers(word: WireWord) -> list[tuple[PosetElement, Label]]:
    """Covers directly above ``word`` in the dual order, with labels.

    A diagram with crossings is covered by its single-uncrossing results;
    a crossingless diagram is covered only by the adjoined dual maximum,
    with the terminal label.
    """
    if crossing_number(word) == 0:
        return [(BOTTOM, TOP_LABEL)]
    return list(cover_uncrossings(word))


def dual_covers_by_pattern_rule(word: WireWord) -> list[tuple[WireWord, Label]]:
    """Predict the covers above ``word`` in the dual order from patterns alone.

    A label ``(k, m)`` is admitted when wires k and m cross and no wire l in
    the checked range crosses both of them: for ``k < m`` the range is the
    names strictly between, for ``k > m`` the names outside ``[m, k]``.  The
    admitted label dictates the smoothing; no crossing counts are consulted.
    """
    ns = noncrossing_set(word)
    noncross = set(ns.n1) | set(ns.n2)
    n = word.n

    def crosses(a: int, b: int) -> bool:
        return (a, b) not in noncross and (b, a) not in noncross

    out: list[tuple[WireWord, Label]] = []
    for k in range(1, n + 1):
        for m in range(1, n + 1):
            if k == m:
                continue
            if not crosses(k, m):
                continue
            if k < m:
                between = range(k + 1, m)
            else:
                between = [l for l in range(1, n + 1) if l < m or l > k]
            if any(crosses(k, l) and crosses(m, l) for l in between):
                continue
            if k < m:
                new_word, label = uncross(word, k, m, UncrossMode.SWAP_SECOND)
            else:
                new_word, label = uncross(word, m, k, UncrossMode.MOVE_TO_START)
            out.append((new_word, label))
    out.sort(key=lambda item: item[1].sort_key())
    return out


@dataclass
class UncrossingPoset:
    """The uncrossing order on ``n`` wires, bottom element adjoined.

    ``covers`` are (lower, upper) index pairs into ``elements`` in the primal
    orientation (more crossings above); the bottom has index 0.
    """

    n: int
    elements: tuple[PosetElement, ...]
    covers: tuple[tuple[int, int], ...]
    labels: dict[tuple[int, int], Label]

    @classmethod
    def generate(cls, n: int, limit: int = 10_000_000) -> "UncrossingPoset":
        """Enumerate all diagrams on ``n`` wires and their cover relations."""
        if n < 2:
            raise ValueError("need n >= 2, got %d" % n)
        count = 1 + double_factorial_odd(n)
        if count > limit:
            raise TooLargeError(
                "poset on %d wires has %d elements, over the limit %d"
                % (n, count, limit)
            )
        words = enumerate_words(n)
        elements: tuple[PosetElement, ...] = (BOTTOM, *words)
        index = {w: k + 1 for k, w in enumerate(words)}
        covers: list[tuple[int, int]] = []
        labels: dict[tuple[int, int], Label] = {}
        for w in words:
            hi = index[w]
            for target, label in dual_covers(w):
                lo = 0 if target is BOTTOM else index[target]
                covers.append((lo, hi))
                labels[(lo, hi)] = label
        covers.sort()
        return cls(n, elements, tuple(covers), labels)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def words(self) -> tuple[WireWord, ...]:
        return self.elements[1:]

    def rank(self, el: PosetElement) -> int:
        if el is BOTTOM:
            return 0
        return crossing_number(el) + 1

    def top(self) -> WireWord:
        return fully_crossed_word(self.n)

    def atoms(self) -> list[WireWord]:
        return [w for w in self.words if crossing_number(w) == 0]

    def coatoms(self) -> list[WireWord]:
        full = comb(self.n, 2)
        return [w for w in self.words if crossing_number(w) == full - 1]

    def rank_profile(self) -> tuple[int, ...]:
        profile = [0] * (comb(self.n, 2) + 2)
        for el in self.elements:
            profile[self.rank(el)] += 1
        return tuple(profile)

    def as_finite_poset(self, dual: bool = False) -> FinitePoset:
        """A generic poset view, labels carried on the covers.

        The primal orientation puts the fully crossed diagram on top; the
        dual orientation reverses all covers, so the adjoined minimum becomes
        the maximum that terminal labels point into.
        """
        name = "uncrossing-%d" % self.n
        if dual:
            cover_pairs = [
                (self.elements[hi], self.elements[lo]) for lo, hi in self.covers
            ]
            labels = {
                (self.elements[hi], self.elements[lo]): lab
                for (lo, hi), lab in self.labels.items()
            }
            name += "*"
        else:
            cover_pairs = [
                (self.elements[lo], self.elements[hi]) for lo, hi in self.covers
            ]
            labels = {
                (self.elements[lo], self.elements[hi]): lab
                for (lo, hi), lab in self.labels.items()
            }
        return FinitePoset(self.elements, cover_pairs, labels, name=name)

    # -- exports -------------------------------------------------------------

    def _element_text(self, el: PosetElement) -> str | None:
        return None if el is BOTTOM else render_word(el)

    def to_json(self, dual: bool = False) -> str:
        covers = [
            [hi, lo, str(self.labels[(lo, hi)])] if dual else
            [lo, hi, str(self.labels[(lo, hi)])]
            for lo, hi in self.covers
        ]
        covers.sort()
        obj = {
            "n": self.n,
            "elements": [self._element_text(el) for el in self.elements],
            "covers": covers,
        }
        return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)

    def to_dot(self, dual: bool = False) -> str:
        lines = ["digraph uncrossing_%d%s {" % (self.n, "_dual" if dual else "")]
        lines.append("  rankdir=BT;")
        for idx, el in enumerate(self.elements):
            text = "⊥" if el is BOTTOM else render_word(el)
            lines.append('  n%d [label="%s"];' % (idx, text))
        for lo, hi in self.covers:
            a, b = (hi, lo) if dual else (lo, hi)
            lines.append('  n%d -> n%d [label="%s"];' % (a, b, self.labels[(lo, hi)]))
        lines.append("}")
        return "\n".join(lines) + "\n"
