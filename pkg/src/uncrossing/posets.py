"""Generic finite poset machinery.

A :class:`FinitePoset` is stored by its Hasse diagram: an element list plus
cover pairs, optionally carrying a label on each cover.  The order relation
is the reflexive-transitive closure, cached as per-element bitmasks.  On top
of that sit rank/gradedness, intervals, duals, the Mobius function, the
Eulerian and thin tests, the CW-poset verdict, chain enumeration, and a
small backtracking isomorphism search.
"""

from __future__ import annotations

from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence

from .reporting import Report


class NotComparableError(ValueError):
    """The two elements are not related in the order."""


class NotGradedError(ValueError):
    """The poset has no rank function compatible with its covers."""


class TooManyChainsError(RuntimeError):
    """Chain enumeration would exceed the configured limit."""


class FinitePoset:
    """An immutable finite poset given by elements and cover relations."""

    def __init__(
        self,
        elements: Sequence[Hashable],
        covers: Iterable[tuple[Hashable, Hashable]],
        labels: dict[tuple[Hashable, Hashable], Any] | None = None,
        name: str = "poset",
    ):
        self.elements: tuple = tuple(elements)
        self.name = name
        self._index: dict = {}
        for pos, el in enumerate(self.elements):
            if el in self._index:
                raise ValueError("duplicate element %r" % (el,))
            self._index[el] = pos
        n = len(self.elements)
        up: list[list[int]] = [[] for _ in range(n)]
        down: list[list[int]] = [[] for _ in range(n)]
        cover_set = set()
        for lo, hi in covers:
            ilo, ihi = self._i(lo), self._i(hi)
            if ilo == ihi:
                raise ValueError("self-cover at %r" % (lo,))
            if (ilo, ihi) in cover_set:
                continue
            cover_set.add((ilo, ihi))
            up[ilo].append(ihi)
            down[ihi].append(ilo)
        self._up = tuple(tuple(sorted(js)) for js in up)
        self._down = tuple(tuple(sorted(js)) for js in down)
        self._cover_set = frozenset(cover_set)
        self._labels: dict[tuple[int, int], Any] = {}
        if labels:
            for (lo, hi), lab in labels.items():
                edge = (self._i(lo), self._i(hi))
                if edge not in cover_set:
                    raise ValueError("label on non-cover (%r, %r)" % (lo, hi))
                self._labels[edge] = lab
        self._topo = self._topological_order()
        self._up_masks: list[int] | None = None
        self._down_masks: list[int] | None = None
        self._ranks: tuple[int, ...] | None = None
        self._graded: bool | None = None
        self._mobius_rows: dict[int, dict[int, int]] = {}

    # -- basic structure ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __contains__(self, el: Hashable) -> bool:
        return el in self._index

    def _i(self, el: Hashable) -> int:
        try:
            return self._index[el]
        except KeyError:
            raise ValueError("%r is not an element of %s" % (el, self.name)) from None

    def _topological_order(self) -> tuple[int, ...]:
        n = len(self.elements)
        indeg = [len(self._down[i]) for i in range(n)]
        ready = sorted(i for i in range(n) if indeg[i] == 0)
        order: list[int] = []
        import heapq

        heap = list(ready)
        heapq.heapify(heap)
        while heap:
            i = heapq.heappop(heap)
            order.append(i)
            for j in self._up[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(heap, j)
        if len(order) != n:
            raise ValueError("cover relation contains a cycle")
        return tuple(order)

    def upper_covers(self, el: Hashable) -> tuple:
        return tuple(self.elements[j] for j in self._up[self._i(el)])

    def lower_covers(self, el: Hashable) -> tuple:
        return tuple(self.elements[j] for j in self._down[self._i(el)])

    def covers(self) -> list[tuple[Hashable, Hashable]]:
        """All cover pairs (lower, upper), sorted by index."""
        return [
            (self.elements[i], self.elements[j])
            for i, j in sorted(self._cover_set)
        ]

    def is_cover(self, lo: Hashable, hi: Hashable) -> bool:
        return (self._i(lo), self._i(hi)) in self._cover_set

    def label(self, lo: Hashable, hi: Hashable) -> Any:
        edge = (self._i(lo), self._i(hi))
        if edge not in self._labels:
            raise ValueError("no label on cover (%r, %r)" % (lo, hi))
        return self._labels[edge]

    @property
    def has_labels(self) -> bool:
        return bool(self._labels) and len(self._labels) == len(self._cover_set)

    # -- order relation -----------------------------------------------------

    def _masks(self) -> tuple[list[int], list[int]]:
        if self._up_masks is None:
            n = len(self.elements)
            up_masks = [0] * n
            for i in reversed(self._topo):
                m = 1 << i
                for j in self._up[i]:
                    m |= up_masks[j]
                up_masks[i] = m
            down_masks = [0] * n
            for i in self._topo:
                m = 1 << i
                for j in self._down[i]:
                    m |= down_masks[j]
                down_masks[i] = m
            self._up_masks = up_masks
            self._down_masks = down_masks
        return self._up_masks, self._down_masks

    def le(self, a: Hashable, b: Hashable) -> bool:
        up_masks, _ = self._masks()
        return bool(up_masks[self._i(a)] >> self._i(b) & 1)

    def lt(self, a: Hashable, b: Hashable) -> bool:
        return a != b and self.le(a, b)

    def comparable(self, a: Hashable, b: Hashable) -> bool:
        return self.le(a, b) or self.le(b, a)

    def comparable_pairs(self) -> Iterator[tuple[Hashable, Hashable]]:
        """All pairs (u, v) with u < v, in index order."""
        up_masks, _ = self._masks()
        n = len(self.elements)
        for i in range(n):
            mask = up_masks[i] & ~(1 << i)
            while mask:
                low = mask & -mask
                j = low.bit_length() - 1
                yield (self.elements[i], self.elements[j])
                mask ^= low

    def _interval_mask(self, iu: int, iv: int) -> int:
        up_masks, down_masks = self._masks()
        return up_masks[iu] & down_masks[iv]

    def interval_elements(self, u: Hashable, v: Hashable) -> list:
        """Elements of the closed interval [u, v], in index order."""
        iu, iv = self._i(u), self._i(v)
        if not self.le(u, v):
            raise NotComparableError("%r is not below %r" % (u, v))
        mask = self._interval_mask(iu, iv)
        out = []
        while mask:
            low = mask & -mask
            out.append(self.elements[low.bit_length() - 1])
            mask ^= low
        return out

    def interval(self, u: Hashable, v: Hashable) -> "FinitePoset":
        """The closed interval [u, v] as a poset, labels restricted."""
        members = self.interval_elements(u, v)
        member_set = set(members)
        covers = []
        labels = {}
        for lo in members:
            for hi in self.upper_covers(lo):
                if hi in member_set:
                    covers.append((lo, hi))
                    edge = (self._i(lo), self._i(hi))
                    if edge in self._labels:
                        labels[(lo, hi)] = self._labels[edge]
        return FinitePoset(
            members, covers, labels or None, name="%s[%s,%s]" % (self.name, u, v)
        )

    def dual(self) -> "FinitePoset":
        """The same elements with all covers reversed; labels carried over."""
        covers = [
            (self.elements[j], self.elements[i]) for i, j in sorted(self._cover_set)
        ]
        labels = {
            (self.elements[j], self.elements[i]): lab
            for (i, j), lab in self._labels.items()
        }
        return FinitePoset(self.elements, covers, labels or None, name=self.name + "*")

    def bottom(self) -> Hashable | None:
        mins = [el for el in self.elements if not self.lower_covers(el)]
        return mins[0] if len(mins) == 1 else None

    def top(self) -> Hashable | None:
        maxs = [el for el in self.elements if not self.upper_covers(el)]
        return maxs[0] if len(maxs) == 1 else None

    def minimal_elements(self) -> list:
        return [el for el in self.elements if not self.lower_covers(el)]

    def maximal_elements(self) -> list:
        return [el for el in self.elements if not self.upper_covers(el)]

    # -- rank ---------------------------------------------------------------

    def _grade(self) -> None:
        if self._ranks is not None:
            return
        n = len(self.elements)
        ranks = [0] * n
        for i in self._topo:
            if self._down[i]:
                ranks[i] = max(ranks[j] for j in self._down[i]) + 1
        graded = all(ranks[j] == ranks[i] + 1 for i, j in self._cover_set)
        self._ranks = tuple(ranks)
        self._graded = graded

    def is_graded(self) -> bool:
        """True when longest-path rank raises by exactly one on every cover."""
        self._grade()
        return bool(self._graded)

    def rank_of(self, el: Hashable) -> int:
        self._grade()
        if not self._graded:
            raise NotGradedError(self.name)
        return self._ranks[self._i(el)]

    def rank_profile(self) -> tuple[int, ...]:
        """Element counts per rank, bottom rank first."""
        self._grade()
        if not self._graded:
            raise NotGradedError(self.name)
        top = max(self._ranks) if self._ranks else 0
        profile = [0] * (top + 1)
        for r in self._ranks:
            profile[r] += 1
        return tuple(profile)

    # -- Mobius function and consequences ------------------------------------

    def _mobius_row(self, iu: int) -> dict[int, int]:
        row = self._mobius_rows.get(iu)
        if row is not None:
            return row
        up_masks, down_masks = self._masks()
        upset = up_masks[iu]
        row = {}
        for iz in self._topo:
            if not upset >> iz & 1:
                continue
            if iz == iu:
                row[iz] = 1
                continue
            below = down_masks[iz] & upset & ~(1 << iz)
            total = 0
            while below:
                low = below & -below
                total += row[low.bit_length() - 1]
                below ^= low
            row[iz] = -total
        self._mobius_rows[iu] = row
        return row

    def mobius(self, u: Hashable, v: Hashable) -> int:
        """The Mobius function mu(u, v) of the order.

        >>> chain = FinitePoset("abc", [("a", "b"), ("b", "c")])
        >>> chain.mobius("a", "a"), chain.mobius("a", "b"), chain.mobius("a", "c")
        (1, -1, 0)
        """
        if not self.le(u, v):
            raise NotComparableError("%r is not below %r" % (u, v))
        return self._mobius_row(self._i(u))[self._i(v)]

    def is_eulerian(self) -> Report:
        """Check mu(u, v) == (-1)^rank on every closed interval."""
        if not self.is_graded():
            raise NotGradedError(self.name)
        report = Report(self.name)
        bad = []
        for u, v in self.comparable_pairs():
            r = self.rank_of(v) - self.rank_of(u)
            mu = self.mobius(u, v)
            if mu != (-1) ** r:
                bad.append({"interval": [str(u), str(v)], "mobius": mu, "rank": r})
        report.add("eulerian", not bad, witness=bad[:20] or None)
        return report

    def is_thin(self) -> Report:
        """Check that every rank-2 closed interval has exactly 4 elements."""
        if not self.is_graded():
            raise NotGradedError(self.name)
        report = Report(self.name)
        bad = []
        for u, v in self.comparable_pairs():
            if self.rank_of(v) - self.rank_of(u) != 2:
                continue
            size = len(self.interval_elements(u, v))
            if size != 4:
                bad.append({"interval": [str(u), str(v)], "size": size})
        report.add("thin", not bad, witness=bad[:20] or None)
        return report

    def is_cw_poset(self) -> bool:
        """Graded, bounded below, thin, and lex shellable by its labels.

        The sphere condition is certified through the shellability route: a
        graded thin poset with a minimum, at least one more element, and a
        verified chain-ascent labeling is the face poset of a regular CW
        complex.  The order complex of a poset equals that of its dual, so a
        chain-ascent labeling on either orientation certifies the shelling.
        """
        if len(self.elements) < 2 or self.bottom() is None:
            return False
        if not self.is_graded():
            return False
        if not self.is_thin().ok:
            return False
        from .shelling import verify_ec

        if verify_ec(self).ok:
            return True
        return verify_ec(self.dual()).ok

    # -- chains ---------------------------------------------------------------

    def count_saturated_chains(self, u: Hashable, v: Hashable) -> int:
        """Number of saturated chains from u to v."""
        iu, iv = self._i(u), self._i(v)
        if not self.le(u, v):
            raise NotComparableError("%r is not below %r" % (u, v))
        mask = self._interval_mask(iu, iv)
        counts = {iu: 1}
        for i in self._topo:
            if i == iu or not mask >> i & 1:
                continue
            counts[i] = sum(counts[j] for j in self._down[i] if mask >> j & 1)
        return counts[iv]

    def count_maximal_chains(self) -> int:
        counts = {}
        for i in self._topo:
            lower = self._down[i]
            counts[i] = sum(counts[j] for j in lower) if lower else 1
        return sum(counts[i] for i in range(len(self.elements)) if not self._up[i])

    def saturated_chains(
        self, u: Hashable, v: Hashable, limit: int | None = None
    ) -> list[tuple]:
        """All saturated chains from u to v as element tuples."""
        iu, iv = self._i(u), self._i(v)
        if not self.le(u, v):
            raise NotComparableError("%r is not below %r" % (u, v))
        mask = self._interval_mask(iu, iv)
        out: list[tuple] = []
        stack = [i for i in self._up[iu] if mask >> i & 1]

        def walk(i: int, acc: list[int]) -> None:
            if i == iv:
                out.append(tuple(self.elements[k] for k in acc))
                if limit is not None and len(out) > limit:
                    raise TooManyChainsError(
                        "more than %d chains from %r to %r" % (limit, u, v)
                    )
                return
            for j in self._up[i]:
                if mask >> j & 1:
                    acc.append(j)
                    walk(j, acc)
                    acc.pop()

        walk(iu, [iu])
        return out

    def maximal_chains(self, limit: int | None = None) -> list[tuple]:
        """All maximal chains, each from a minimal to a maximal element."""
        out: list[tuple] = []

        def walk(i: int, acc: list[int]) -> None:
            if not self._up[i]:
                out.append(tuple(self.elements[k] for k in acc))
                if limit is not None and len(out) > limit:
                    raise TooManyChainsError("more than %d maximal chains" % limit)
                return
            for j in self._up[i]:
                acc.append(j)
                walk(j, acc)
                acc.pop()

        for i in sorted(k for k in range(len(self.elements)) if not self._down[k]):
            walk(i, [i])
        return out

    def chain_counts_by_size(self, max_size: int | None = None) -> dict[int, int]:
        """Number of chains of each cardinality >= 1 (faces of the order complex)."""
        n = len(self.elements)
        up_masks, _ = self._masks()
        top_size = max_size or n
        # counts[i][k]: chains of size k whose least element is i
        counts = [dict() for _ in range(n)]
        for i in reversed(self._topo):
            counts[i][1] = 1
            strict_up = up_masks[i] & ~(1 << i)
            mask = strict_up
            while mask:
                low = mask & -mask
                j = low.bit_length() - 1
                mask ^= low
                for k, c in counts[j].items():
                    if k + 1 <= top_size:
                        counts[i][k + 1] = counts[i].get(k + 1, 0) + c
        totals: dict[int, int] = {}
        for i in range(n):
            for k, c in counts[i].items():
                totals[k] = totals.get(k, 0) + c
        return totals

    def __repr__(self) -> str:
        return "FinitePoset(%s: %d elements, %d covers)" % (
            self.name,
            len(self.elements),
            len(self._cover_set),
        )


def reduced_euler_characteristic(P: FinitePoset) -> int:
    """Reduced Euler characteristic of the order complex of ``P``.

    Faces of dimension k are the chains of k+1 elements; the empty face
    contributes -1.
    """
    total = -1
    for size, count in P.chain_counts_by_size().items():
        total += count if size % 2 == 1 else -count
    return total


def find_isomorphism(P: FinitePoset, Q: FinitePoset) -> dict | None:
    """A cover-preserving bijection P -> Q, or None.

    Backtracking over Hasse diagrams, pruned by iterated degree refinement.
    """
    n = len(P.elements)
    if n != len(Q.elements) or len(P._cover_set) != len(Q._cover_set):
        return None
    joint = _joint_classes(P, Q)
    if joint is None:
        return None
    pid, qid = joint
    q_pool: dict[int, set[int]] = {}
    for i, c in enumerate(qid):
        q_pool.setdefault(c, set()).add(i)
    for i, c in enumerate(pid):
        if c not in q_pool:
            return None
    class_count_p: dict[int, int] = {}
    for c in pid:
        class_count_p[c] = class_count_p.get(c, 0) + 1
    if any(len(q_pool.get(c, ())) != k for c, k in class_count_p.items()):
        return None

    # assign connectivity-first: every new element should touch mapped ones,
    # so adjacency checks prune immediately
    order: list[int] = []
    ordered = [False] * n
    adjacency = [set(P._down[i]) | set(P._up[i]) for i in range(n)]
    mapped_neighbors = [0] * n
    for _ in range(n):
        best = None
        best_key = None
        for i in range(n):
            if ordered[i]:
                continue
            key = (-mapped_neighbors[i], class_count_p[pid[i]], pid[i], i)
            if best_key is None or key < best_key:
                best, best_key = i, key
        order.append(best)
        ordered[best] = True
        for j in adjacency[best]:
            mapped_neighbors[j] += 1
    mapping = [-1] * n
    used = [False] * len(Q.elements)

    def feasible(i: int, q: int) -> bool:
        for j in P._down[i]:
            if mapping[j] != -1 and (mapping[j], q) not in Q._cover_set:
                return False
        for j in P._up[i]:
            if mapping[j] != -1 and (q, mapping[j]) not in Q._cover_set:
                return False
        mapped_down = sum(1 for j in P._down[i] if mapping[j] != -1)
        mapped_up = sum(1 for j in P._up[i] if mapping[j] != -1)
        q_down = sum(1 for j in Q._down[q] if used[j])
        q_up = sum(1 for j in Q._up[q] if used[j])
        return mapped_down == q_down and mapped_up == q_up

    def assign(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for q in sorted(q_pool[pid[i]]):
            if not used[q] and feasible(i, q):
                mapping[i] = q
                used[q] = True
                if assign(k + 1):
                    return True
                mapping[i] = -1
                used[q] = False
        return False

    if not assign(0):
        return None
    return {P.elements[i]: Q.elements[mapping[i]] for i in range(n)}


def _joint_classes(P: FinitePoset, Q: FinitePoset) -> tuple[list[int], list[int]] | None:
    """Refine both posets against a shared signature table."""
    np_, nq = len(P.elements), len(Q.elements)
    table: dict = {}

    def start(poset: FinitePoset) -> list[int]:
        return [
            table.setdefault((len(poset._down[i]), len(poset._up[i])), len(table))
            for i in range(len(poset.elements))
        ]

    pids, qids = start(P), start(Q)
    for _ in range(4):
        table2: dict = {}

        def step(poset: FinitePoset, ids: list[int]) -> list[int]:
            return [
                table2.setdefault(
                    (
                        ids[i],
                        tuple(sorted(ids[j] for j in poset._down[i])),
                        tuple(sorted(ids[j] for j in poset._up[i])),
                    ),
                    len(table2),
                )
                for i in range(len(poset.elements))
            ]

        new_p = step(P, pids)
        new_q = step(Q, qids)
        stable = len(set(new_p)) == len(set(pids)) and len(set(new_q)) == len(set(qids))
        pids, qids = new_p, new_q
        if stable:
            break
    if sorted(pids) != sorted(qids):
        return None
    return pids, qids
