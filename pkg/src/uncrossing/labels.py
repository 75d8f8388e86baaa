"""Cover labels for dual uncrossing orders, and their total order.

A cover of the dual order is labeled either by an ordered pair of wire names
or by the terminal label (printed ``L``) that sits on every cover into the
adjoined maximum.  Ascending pairs ``(a, b)`` with ``a < b`` come from swaps
of second endpoints and are ordered lexicographically.  Descending pairs come
from moves into a start slot and are ordered by decreasing second coordinate,
then decreasing first coordinate, so ``(n, n-1)`` is the smallest of them and
``(2, 1)`` the largest.  The terminal label separates the two families.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Label:
    """A cover label: an ordered pair of wire names, or the terminal label.

    ``pair is None`` encodes the terminal label.

    >>> Label((1, 2)) < Label((1, 3)) < TOP_LABEL < Label((3, 2)) < Label((2, 1))
    True
    >>> sorted(map(str, [Label((2, 1)), TOP_LABEL, Label((1, 2))]))
    ['(1,2)', '(2,1)', 'L']
    """

    pair: tuple[int, int] | None = None

    @property
    def is_terminal(self) -> bool:
        return self.pair is None

    @property
    def is_ascending(self) -> bool:
        return self.pair is not None and self.pair[0] < self.pair[1]

    @property
    def is_descending(self) -> bool:
        return self.pair is not None and self.pair[0] > self.pair[1]

    def sort_key(self) -> tuple[int, ...]:
        if self.pair is None:
            return (1,)
        a, b = self.pair
        if a < b:
            return (0, a, b)
        return (2, -b, -a)

    def __lt__(self, other: "Label") -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "Label") -> bool:
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other: "Label") -> bool:
        return self.sort_key() > other.sort_key()

    def __ge__(self, other: "Label") -> bool:
        return self.sort_key() >= other.sort_key()

    def __str__(self) -> str:
        if self.pair is None:
            return "L"
        return "(%d,%d)" % self.pair

    @classmethod
    def parse(cls, text: str) -> "Label":
        """Inverse of ``str``; accepts ``"L"`` or ``"(a,b)"``.

        >>> Label.parse("(3,1)")
        Label(pair=(3, 1))
        """
        text = text.strip()
        if text == "L":
            return TOP_LABEL
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError("not a label: %r" % text)
        a, b = (int(part) for part in text[1:-1].split(","))
        return cls((a, b))


#: The label on every cover into the adjoined maximum of the dual order.
TOP_LABEL = Label(None)


def compare_labels(x: Label, y: Label) -> int:
    """Three-way comparison in the label order: -1, 0 or +1.

    >>> compare_labels(Label((1, 3)), TOP_LABEL)
    -1
    >>> compare_labels(Label((3, 2)), Label((2, 1)))
    -1
    """
    kx, ky = x.sort_key(), y.sort_key()
    return (kx > ky) - (kx < ky)
