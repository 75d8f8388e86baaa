"""Type A Bruhat order with its reflection-order edge labeling.

Permutations are written in one-line notation on ``1..m``.  Covers go up by
swapping two positions whose values are in order and separated only by
values outside their range; equivalently, by any transposition raising the
inversion count by exactly one.  Each cover ``u < v`` is labeled by the
reflection ``v u^-1``, the pair of values exchanged, and those labels in
lexicographic order give Dyer's EL-labeling of every Bruhat interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .labels import Label
from .posets import FinitePoset
from .reporting import Report
from .shelling import verify_el


class StartSetMismatchError(ValueError):
    """The two diagrams have different start sets."""


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``1..m`` in one-line notation.

    >>> Permutation((2, 1, 3)).length()
    1
    >>> str(Permutation((2, 1, 3)))
    '213'
    """

    one_line: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.one_line) != list(range(1, len(self.one_line) + 1)):
            raise ValueError("not a permutation of 1..m: %r" % (self.one_line,))

    @property
    def size(self) -> int:
        return len(self.one_line)

    def value_at(self, position: int) -> int:
        return self.one_line[position - 1]

    def inversion_pairs(self) -> frozenset[tuple[int, int]]:
        """Position pairs (i, j) with i < j and values out of order."""
        line = self.one_line
        return frozenset(
            (i + 1, j + 1)
            for i, j in combinations(range(len(line)), 2)
            if line[i] > line[j]
        )

    def length(self) -> int:
        return len(self.inversion_pairs())

    def swap_positions(self, i: int, k: int) -> "Permutation":
        line = list(self.one_line)
        line[i - 1], line[k - 1] = line[k - 1], line[i - 1]
        return Permutation(tuple(line))

    def __str__(self) -> str:
        if self.size <= 9:
            return "".join(str(v) for v in self.one_line)
        return ",".join(str(v) for v in self.one_line)

    def __lt__(self, other: "Permutation") -> bool:
        return self.one_line < other.one_line


def parse_permutation(text: str) -> Permutation:
    text = text.strip()
    if "," in text or " " in text:
        parts = text.replace(" ", ",").split(",")
        return Permutation(tuple(int(p) for p in parts if p))
    return Permutation(tuple(int(ch) for ch in text))


def identity_permutation(m: int) -> Permutation:
    return Permutation(tuple(range(1, m + 1)))


def longest_permutation(m: int) -> Permutation:
    return Permutation(tuple(range(m, 0, -1)))


def bruhat_covers_up(pi: Permutation) -> list[tuple[Permutation, tuple[int, int]]]:
    """Covers above ``pi``, each with the swapped position pair (i, k).

    Positions i < k qualify when their values ascend and every value strictly
    between them in position lies outside the value range (pi(i), pi(k)).

    >>> [(str(p), t) for p, t in bruhat_covers_up(Permutation((1, 2, 3)))]
    [('213', (1, 2)), ('132', (2, 3))]
    >>> [(str(p), t) for p, t in bruhat_covers_up(Permutation((2, 1, 3)))]
    [('231', (2, 3)), ('312', (1, 3))]
    """
    line = pi.one_line
    m = pi.size
    out = []
    for i in range(1, m):
        for k in range(i + 1, m + 1):
            lo, hi = line[i - 1], line[k - 1]
            if lo > hi:
                continue
            if all(not lo < line[j - 1] < hi for j in range(i + 1, k)):
                out.append((pi.swap_positions(i, k), (i, k)))
    out.sort(key=lambda item: item[0].one_line)
    return out


def bruhat_covers_up_by_length(
    pi: Permutation,
) -> list[tuple[Permutation, tuple[int, int]]]:
    """Oracle route: all position swaps that raise the inversion count by one."""
    target = pi.length() + 1
    out = []
    for i in range(1, pi.size):
        for k in range(i + 1, pi.size + 1):
            tau = pi.swap_positions(i, k)
            if tau.length() == target:
                out.append((tau, (i, k)))
    out.sort(key=lambda item: item[0].one_line)
    return out


def reflection_compare(s: tuple[int, int], t: tuple[int, int]) -> int:
    """Lexicographic comparison of transpositions (i, j) with i < j."""
    return (s > t) - (s < t)


def cover_reflection(u: Permutation, v: Permutation) -> tuple[int, int]:
    """The reflection v u^-1 of a cover: the value pair the cover exchanges.

    >>> cover_reflection(Permutation((2, 1, 3)), Permutation((2, 3, 1)))
    (1, 3)
    """
    diff = [p for p in range(1, u.size + 1) if u.one_line[p - 1] != v.one_line[p - 1]]
    if len(diff) != 2:
        raise ValueError("%s and %s do not differ by one transposition" % (u, v))
    i, k = diff
    if v.one_line[i - 1] != u.one_line[k - 1] or v.one_line[k - 1] != u.one_line[i - 1]:
        raise ValueError("%s and %s do not differ by one transposition" % (u, v))
    a, b = u.one_line[i - 1], u.one_line[k - 1]
    return (a, b) if a < b else (b, a)


def symmetric_group_poset(m: int) -> FinitePoset:
    """Bruhat order on all of S_m, covers labeled by their reflections.

    Reflection labels are wrapped as ascending label pairs, so the standard
    label order restricts to the lexicographic reflection order.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    elements = sorted(
        (Permutation(p) for p in permutations(range(1, m + 1))),
        key=lambda pi: (pi.length(), pi.one_line),
    )
    covers = []
    labels = {}
    for pi in elements:
        for tau, _ in bruhat_covers_up(pi):
            covers.append((pi, tau))
            labels[(pi, tau)] = Label(cover_reflection(pi, tau))
    return FinitePoset(elements, covers, labels, name="bruhat-S%d" % m)


def verify_dyer_el(m: int, *, workers: int = 1) -> Report:
    """Exhaustively check the reflection-order EL property on S_m intervals.

    >>> verify_dyer_el(3).ok
    True
    """
    if m > 5:
        raise ValueError("exhaustive interval check is supported up to S_5")
    report = verify_el(symmetric_group_poset(m), workers=workers)
    report.subject = "bruhat-S%d" % m
    return report


def verify_bruhat_map(
    P,
    d1,
    d2,
    *,
    dual_poset: FinitePoset | None = None,
    bruhat: FinitePoset | None = None,
) -> Report:
    """Check the start-set-preserving interval isomorphism onto Bruhat order.

    The map sends a diagram to the permutation of its finish endpoints.  On
    an interval of the dual order with constant start set it must be a poset
    isomorphism onto the Bruhat interval between the endpoint images, and
    every cover label must equal the reflection label of its image.
    """
    from .wires import pi_of, start_set

    report = Report("bruhat-map[%s,%s]" % (d1, d2))
    if start_set(d1) != start_set(d2):
        raise StartSetMismatchError(
            "start sets differ: %s vs %s" % (start_set(d1), start_set(d2))
        )
    D = dual_poset if dual_poset is not None else P.as_finite_poset(dual=True)
    if not D.le(d1, d2):
        raise ValueError("%s is not below %s in the dual order" % (d1, d2))
    B = bruhat if bruhat is not None else symmetric_group_poset(P.n)

    members = D.interval_elements(d1, d2)
    phi = {d: pi_of(d) for d in members}
    lo, hi = phi[d1], phi[d2]
    bruhat_members = set(B.interval_elements(lo, hi))

    injective = len(set(phi.values())) == len(members)
    onto = set(phi.values()) == bruhat_members
    report.add(
        "bijection",
        injective and onto,
        witness={
            "interval_size": len(members),
            "bruhat_interval_size": len(bruhat_members),
        },
    )

    member_set = set(members)
    cover_fail = []
    label_fail = []
    for x in members:
        images = {phi[y] for y in D.upper_covers(x) if y in member_set}
        expected = {tau for tau, _ in bruhat_covers_up(phi[x]) if tau in bruhat_members}
        if images != expected:
            cover_fail.append(str(x))
            continue
        for y in D.upper_covers(x):
            if y not in member_set:
                continue
            lam = D.label(x, y)
            if lam.pair != cover_reflection(phi[x], phi[y]):
                label_fail.append(
                    {
                        "cover": [str(x), str(y)],
                        "label": str(lam),
                        "reflection": str(cover_reflection(phi[x], phi[y])),
                    }
                )
    report.add("covers-match", not cover_fail, witness=cover_fail[:10] or None)
    report.add("labels-match", not label_fail, witness=label_fail[:10] or None)
    return report
