"""Wire diagrams encoded as normalized words.

A diagram of ``n`` wires pairs up ``2n`` marked points on the boundary of a
disk.  Reading the wire names clockwise from a fixed basepoint yields a word
in which every name ``1..n`` occurs exactly twice; wires are named in order
of first appearance, which makes the word canonical and the encoding a
bijection onto such normalized words.  The first occurrence of a name is the
wire's start endpoint, the second its finish endpoint.

Two wires ``i < j`` relate in exactly one of three ways, visible as the
pattern of their four letters: ``i,j,i,j`` (they cross), ``i,j,j,i`` (nested)
or ``i,i,j,j`` (side by side).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

from .labels import Label

if TYPE_CHECKING:  # pragma: no cover
    from .bruhat import Permutation


class WordError(ValueError):
    """The given letters do not form a valid normalized word."""


class NotTwiceError(WordError):
    """Some wire name does not occur exactly twice."""


class NotNormalizedError(WordError):
    """First occurrences are not in increasing wire-name order."""


class NotCrossingError(ValueError):
    """The requested pair of wires does not cross."""


class UncrossMode(Enum):
    """The two local smoothings of a crossing between wires ``i < j``."""

    #: Exchange the two finish endpoints; names are unaffected.
    SWAP_SECOND = "swap-second"
    #: Move i's finish endpoint into j's start slot, then rename wires so
    #: first occurrences ascend again.
    MOVE_TO_START = "move-to-start"


@dataclass(frozen=True)
class WireWord:
    """A normalized word: every name in ``1..n`` twice, starts ascending."""

    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        letters = self.letters
        if len(letters) % 2 != 0 or not letters:
            raise NotTwiceError("word length must be a positive even number")
        n = len(letters) // 2
        counts = [0] * (n + 1)
        for x in letters:
            if not 1 <= x <= n:
                raise NotTwiceError("letter %r outside 1..%d" % (x, n))
            counts[x] += 1
        if any(c != 2 for c in counts[1:]):
            bad = next(x for x in range(1, n + 1) if counts[x] != 2)
            raise NotTwiceError("wire %d occurs %d times, not twice" % (bad, counts[bad]))
        seen = 0
        for x in letters:
            if x > seen:
                if x != seen + 1:
                    raise NotNormalizedError(
                        "wire %d starts before wire %d" % (x, seen + 1)
                    )
                seen += 1

    @property
    def n(self) -> int:
        return len(self.letters) // 2

    def __str__(self) -> str:
        return render_word(self)

    def __lt__(self, other: "WireWord") -> bool:
        return self.letters < other.letters


def parse_word(text: str | Iterable[int]) -> WireWord:
    """Build a validated :class:`WireWord` from text or a letter sequence.

    Bare digit strings serve for up to nine wires; larger alphabets use
    comma- or space-separated decimal names.

    >>> parse_word("123123").n
    3
    >>> parse_word("1,2,3,1,2,3") == parse_word("123123")
    True
    >>> parse_word("213213")
    Traceback (most recent call last):
        ...
    uncrossing.wires.NotNormalizedError: wire 2 starts before wire 1
    >>> parse_word("1213")
    Traceback (most recent call last):
        ...
    uncrossing.wires.NotTwiceError: wire 2 occurs 1 times, not twice
    """
    if isinstance(text, str):
        stripped = text.strip()
        if any(sep in stripped for sep in ",; "):
            parts = stripped.replace(";", ",").replace(" ", ",").split(",")
            letters = tuple(int(p) for p in parts if p)
        else:
            letters = tuple(int(ch) for ch in stripped)
    else:
        letters = tuple(int(x) for x in text)
    return WireWord(letters)


def render_word(word: WireWord) -> str:
    """Serialize a word: bare digits for n <= 9, else comma separated."""
    if word.n <= 9:
        return "".join(str(x) for x in word.letters)
    return ",".join(str(x) for x in word.letters)


def word_to_json(word: WireWord) -> dict:
    return {"n": word.n, "word": list(word.letters)}


def word_from_json(obj: dict) -> WireWord:
    word = WireWord(tuple(int(x) for x in obj["word"]))
    if word.n != int(obj["n"]):
        raise WordError("declared n=%s does not match word" % obj["n"])
    return word


def occurrence_positions(word: WireWord) -> dict[int, tuple[int, int]]:
    """Map each wire to the 0-based positions of its two endpoints."""
    first: dict[int, int] = {}
    second: dict[int, int] = {}
    for pos, x in enumerate(word.letters):
        if x in first:
            second[x] = pos
        else:
            first[x] = pos
    return {w: (first[w], second[w]) for w in first}


def crossing_pairs(word: WireWord) -> frozenset[tuple[int, int]]:
    """All pairs ``(i, j)`` with ``i < j`` whose wires cross.

    >>> sorted(crossing_pairs(parse_word("123123")))
    [(1, 2), (1, 3), (2, 3)]
    >>> crossing_pairs(parse_word("112233"))
    frozenset()
    """
    occ = occurrence_positions(word)
    out = set()
    for i, j in combinations(range(1, word.n + 1), 2):
        fi, si = occ[i]
        fj, sj = occ[j]
        if fi < fj < si < sj:
            out.add((i, j))
    return frozenset(out)


def crossing_number(word: WireWord) -> int:
    return len(crossing_pairs(word))


@dataclass(frozen=True)
class NoncrossingSet:
    """Ordered pairs of noncrossing wires, split by pattern.

    ``n1`` holds ``(i, j)`` with ``i < j`` when the word nests ``i,j,j,i``;
    ``n2`` holds ``(j, i)`` with ``j > i`` when the word reads ``i,i,j,j``.
    """

    n1: frozenset[tuple[int, int]]
    n2: frozenset[tuple[int, int]]

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return self.n1 | self.n2

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self.n1 or pair in self.n2


def noncrossing_set(word: WireWord) -> NoncrossingSet:
    """Classify every noncrossing pair of wires by its pattern.

    >>> ns = noncrossing_set(parse_word("123321"))
    >>> sorted(ns.n1), sorted(ns.n2)
    ([(1, 2), (1, 3), (2, 3)], [])
    >>> ns = noncrossing_set(parse_word("112233"))
    >>> sorted(ns.n1), sorted(ns.n2)
    ([], [(2, 1), (3, 1), (3, 2)])
    """
    occ = occurrence_positions(word)
    n1 = set()
    n2 = set()
    for i, j in combinations(range(1, word.n + 1), 2):
        fi, si = occ[i]
        fj, sj = occ[j]
        if fj < sj < si:
            n1.add((i, j))
        elif si < fj:
            n2.add((j, i))
    return NoncrossingSet(frozenset(n1), frozenset(n2))


def start_set(word: WireWord) -> tuple[int, ...]:
    """The 1-based positions of first occurrences, in increasing order.

    >>> start_set(parse_word("12331244"))
    (1, 2, 3, 7)
    >>> start_set(parse_word("11223344"))
    (1, 3, 5, 7)
    """
    occ = occurrence_positions(word)
    return tuple(sorted(occ[w][0] + 1 for w in occ))


def pi_of(word: WireWord) -> "Permutation":
    """The permutation read off the finish endpoints, left to right.

    >>> str(pi_of(parse_word("123213")))
    '213'
    >>> str(pi_of(parse_word("123321")))
    '321'
    """
    from .bruhat import Permutation

    seen: set[int] = set()
    one_line = []
    for x in word.letters:
        if x in seen:
            one_line.append(x)
        else:
            seen.add(x)
    return Permutation(tuple(one_line))


def uncross(
    word: WireWord, i: int, j: int, mode: UncrossMode
) -> tuple[WireWord, Label]:
    """Smooth the crossing of wires ``i < j`` and return the labeled result.

    The label names the wires as they are called in ``word`` itself, the more
    crossed side of the cover.

    >>> w, lab = uncross(parse_word("123123"), 1, 2, UncrossMode.SWAP_SECOND)
    >>> str(w), str(lab)
    ('123213', '(1,2)')
    >>> w, lab = uncross(parse_word("123123"), 1, 3, UncrossMode.MOVE_TO_START)
    >>> str(w), str(lab)
    ('121323', '(3,1)')
    """
    new_word, label, _ = uncross_with_renaming(word, i, j, mode)
    return new_word, label


def uncross_with_renaming(
    word: WireWord, i: int, j: int, mode: UncrossMode
) -> tuple[WireWord, Label, dict[int, int]]:
    """Like :func:`uncross` but also return the wire renaming old -> new."""
    if not 1 <= i < j <= word.n:
        raise ValueError("need wire names 1 <= i < j <= n, got (%r, %r)" % (i, j))
    occ = occurrence_positions(word)
    fi, si = occ[i]
    fj, sj = occ[j]
    if not fi < fj < si < sj:
        raise NotCrossingError("wires %d and %d do not cross in %s" % (i, j, word))
    letters = list(word.letters)
    identity = {w: w for w in range(1, word.n + 1)}
    if mode is UncrossMode.SWAP_SECOND:
        letters[si], letters[sj] = letters[sj], letters[si]
        return WireWord(tuple(letters)), Label((i, j)), identity
    letters[fj], letters[si] = letters[si], letters[fj]
    order: list[int] = []
    seen: set[int] = set()
    for x in letters:
        if x not in seen:
            seen.add(x)
            order.append(x)
    renaming = {old: pos + 1 for pos, old in enumerate(order)}
    renamed = tuple(renaming[x] for x in letters)
    return WireWord(renamed), Label((j, i)), renaming


def all_uncrossings(
    word: WireWord,
) -> Iterator[tuple[tuple[int, int], UncrossMode, WireWord, Label]]:
    """Both smoothings of every crossing pair, in label order."""
    results = []
    for i, j in sorted(crossing_pairs(word)):
        for mode in (UncrossMode.SWAP_SECOND, UncrossMode.MOVE_TO_START):
            new_word, label = uncross(word, i, j, mode)
            results.append(((i, j), mode, new_word, label))
    results.sort(key=lambda item: item[3].sort_key())
    return iter(results)


def cover_uncrossings(word: WireWord) -> list[tuple[WireWord, Label]]:
    """Uncrossings that drop the crossing number by exactly one.

    These are the covers directly below ``word`` in the primal order, read
    as covers directly above it in the dual order.
    """
    target = crossing_number(word) - 1
    out = [
        (new_word, label)
        for _, _, new_word, label in all_uncrossings(word)
        if crossing_number(new_word) == target
    ]
    return out


def enumerate_words(n: int) -> list[WireWord]:
    """All normalized words on ``n`` wires, sorted; there are (2n-1)!! many.

    >>> [str(w) for w in enumerate_words(2)]
    ['1122', '1212', '1221']
    """
    if n < 1:
        raise ValueError("need n >= 1")
    size = 2 * n
    letters = [0] * size
    out: list[WireWord] = []

    def fill(next_name: int) -> None:
        try:
            p = letters.index(0)
        except ValueError:
            out.append(WireWord(tuple(letters)))
            return
        letters[p] = next_name
        for q in range(p + 1, size):
            if letters[q] == 0:
                letters[q] = next_name
                fill(next_name + 1)
                letters[q] = 0
        letters[p] = 0

    fill(1)
    out.sort(key=lambda w: w.letters)
    return out


def fully_crossed_word(n: int) -> WireWord:
    """The word ``12..n12..n`` in which all wires cross pairwise."""
    return WireWord(tuple(range(1, n + 1)) * 2)
