"""Lexicographic chain conditions on labeled posets.

Everything here works on a :class:`FinitePoset` whose covers carry labels
from a totally ordered set.  A length-2 chain ``u < v < w`` is a topological
ascent when its label pair is strictly lexicographically least among all
length-2 chains from ``u`` to ``w``; an edge labeling is a chain-ascent
(EC) labeling when every closed interval has exactly one saturated chain
made entirely of topological ascents, necessarily the lexicographically
first chain.  The stricter EL condition asks instead for a unique weakly
ascending chain that is lexicographically first.  Both conditions are
verified by the same dynamic program over interval edges, so no chain set
is ever enumerated explicitly.

Facet shellings are checked directly: maximal chains are sorted by label
sequence and each facet must meet the union of its predecessors in a pure
codimension-one subcomplex.
"""

from __future__ import annotations

import random
from typing import Any, Callable, Hashable, Iterable, Sequence

from .posets import FinitePoset, NotComparableError, TooManyChainsError
from .reporting import Report


class NotAChainError(ValueError):
    """The given elements do not form consecutive covers."""


def _default_key(label: Any) -> Any:
    key = getattr(label, "sort_key", None)
    return key() if callable(key) else label


class ChainChecker:
    """Shared tables for chain conditions on one labeled poset.

    ``key`` maps labels to sortable values; by default a label's own
    ``sort_key`` is used, so the standard label order applies.
    """

    def __init__(self, P: FinitePoset, key: Callable[[Any], Any] | None = None):
        if not P.has_labels:
            raise ValueError("%s has no (complete) cover labeling" % P.name)
        self.P = P
        keyfn = key or _default_key
        self.edge_key: dict[tuple[int, int], Any] = {
            edge: keyfn(lab) for edge, lab in P._labels.items()
        }
        self._ascent_mid: dict[tuple[int, int], int | None] = {}
        self._ascent_known: set[tuple[int, int]] = set()
        self._suffix: dict[tuple[int, int], tuple] = {}

    # -- topological ascents -------------------------------------------------

    def _middles(self, ix: int, iz: int) -> list[int]:
        up = set(self.P._up[ix])
        return [iy for iy in self.P._down[iz] if iy in up]

    def ascent_middle(self, ix: int, iz: int) -> int | None:
        """The middle of the strictly lex-least length-2 chain, or None on a tie."""
        pair = (ix, iz)
        if pair not in self._ascent_known:
            best = None
            best_key = None
            tie = False
            for iy in self._middles(ix, iz):
                k = (self.edge_key[(ix, iy)], self.edge_key[(iy, iz)])
                if best_key is None or k < best_key:
                    best, best_key, tie = iy, k, False
                elif k == best_key:
                    tie = True
            self._ascent_mid[pair] = None if tie else best
            self._ascent_known.add(pair)
        return self._ascent_mid[pair]

    def is_topological_ascent(self, u: Hashable, v: Hashable, w: Hashable) -> bool:
        P = self.P
        iu, iv, iw = P._i(u), P._i(v), P._i(w)
        if (iu, iv) not in P._cover_set or (iv, iw) not in P._cover_set:
            raise NotAChainError("%s < %s < %s is not a saturated chain" % (u, v, w))
        return self.ascent_middle(iu, iw) == iv

    def ec_pair_ok(self, ix: int, iy: int, iz: int) -> bool:
        return self.ascent_middle(ix, iz) == iy

    def el_pair_ok(self, ix: int, iy: int, iz: int) -> bool:
        return self.edge_key[(ix, iy)] <= self.edge_key[(iy, iz)]

    # -- chain dynamic programs ----------------------------------------------

    def count_constrained_chains(
        self, u: Hashable, w: Hashable, pair_ok: Callable[[int, int, int], bool]
    ) -> tuple[int, tuple | None]:
        """Chains from u to w whose every consecutive edge pair passes ``pair_ok``.

        Returns the count and, when it is exactly one, the chain itself.
        """
        P = self.P
        iu, iw = P._i(u), P._i(w)
        if not P.le(u, w):
            raise NotComparableError("%r is not below %r" % (u, w))
        if iu == iw:
            return 1, (u,)
        mask = P._interval_mask(iu, iw)
        counts: dict[tuple[int, int], int] = {}
        for iy in P._up[iu]:
            if mask >> iy & 1:
                counts[(iu, iy)] = 1
        for iy in P._topo:
            if iy == iu or not mask >> iy & 1:
                continue
            for ix in P._down[iy]:
                edge = (ix, iy)
                c = counts.get(edge)
                if not c:
                    continue
                if iy == iw:
                    continue
                for iz in P._up[iy]:
                    if mask >> iz & 1 and pair_ok(ix, iy, iz):
                        nxt = (iy, iz)
                        counts[nxt] = counts.get(nxt, 0) + c
        total = sum(counts.get((iy, iw), 0) for iy in P._down[iw])
        if total != 1:
            return total, None
        chain = [iw]
        cur = next(iy for iy in P._down[iw] if counts.get((iy, iw), 0) == 1)
        chain.append(cur)
        while cur != iu:
            nxt_above = chain[-2]
            cur = next(
                ix
                for ix in P._down[cur]
                if counts.get((ix, cur), 0) >= 1 and pair_ok(ix, cur, nxt_above)
            )
            chain.append(cur)
        chain.reverse()
        return 1, tuple(P.elements[i] for i in chain)

    # -- lexicographically first chains ----------------------------------------

    def _suffix_to(self, ix: int, iw: int) -> tuple:
        """(label keys tuple, index chain tuple) of the lex-least chain ix -> iw."""
        memo_key = (ix, iw)
        cached = self._suffix.get(memo_key)
        if cached is not None:
            return cached
        P = self.P
        if ix == iw:
            result = ((), (iw,))
        else:
            mask = P._interval_mask(ix, iw)
            best = None
            for iy in P._up[ix]:
                if not mask >> iy & 1:
                    continue
                keys, chain = self._suffix_to(iy, iw)
                cand = ((self.edge_key[(ix, iy)],) + keys, (ix,) + chain)
                if best is None or cand[0] < best[0]:
                    best = cand
            if best is None:
                raise NotComparableError(
                    "%r is not below %r" % (P.elements[ix], P.elements[iw])
                )
            result = best
        self._suffix[memo_key] = result
        return result

    def lex_first_chain(self, u: Hashable, w: Hashable) -> tuple[tuple, tuple]:
        """The chain from u to w with lexicographically least label sequence.

        Returns (chain of elements, labels along it).
        """
        P = self.P
        iu, iw = P._i(u), P._i(w)
        if not P.le(u, w):
            raise NotComparableError("%r is not below %r" % (u, w))
        _, idx_chain = self._suffix_to(iu, iw)
        chain = tuple(P.elements[i] for i in idx_chain)
        labels = tuple(
            P._labels[(idx_chain[i], idx_chain[i + 1])]
            for i in range(len(idx_chain) - 1)
        )
        return chain, labels

    def lex_first_multiplicity(self, u: Hashable, w: Hashable) -> int:
        """How many chains from u to w realize the least label sequence."""
        P = self.P
        iu, iw = P._i(u), P._i(w)
        if iu == iw:
            return 1
        mask = P._interval_mask(iu, iw)
        counts: dict[int, int] = {iw: 1}

        def count_from(ix: int) -> int:
            if ix in counts:
                return counts[ix]
            keys, _ = self._suffix_to(ix, iw)
            total = 0
            for iy in P._up[ix]:
                if not mask >> iy & 1:
                    continue
                sub_keys, _ = self._suffix_to(iy, iw)
                if (self.edge_key[(ix, iy)],) + sub_keys == keys:
                    total += count_from(iy)
            counts[ix] = total
            return total

        return count_from(iu)

    def chain_labels(self, chain: Sequence[Hashable]) -> tuple:
        P = self.P
        idx = [P._i(el) for el in chain]
        return tuple(P._labels[(idx[i], idx[i + 1])] for i in range(len(idx) - 1))


def is_topological_ascent(
    u: Hashable, v: Hashable, w: Hashable, P: FinitePoset
) -> bool:
    """True when (label(u,v), label(v,w)) is strictly lex-least from u to w."""
    return ChainChecker(P).is_topological_ascent(u, v, w)


def lex_first_chain(
    u: Hashable, w: Hashable, P: FinitePoset, key: Callable[[Any], Any] | None = None
) -> tuple[tuple, tuple]:
    return ChainChecker(P, key).lex_first_chain(u, w)


def _sampled(items: list, sample: float | None, seed: int) -> list:
    if sample is None or sample >= 1.0:
        return items
    rng = random.Random(seed)
    return [item for item in items if rng.random() < sample]


def _select_pairs(
    P: FinitePoset,
    rank_limit: int | None,
    sample: float | None,
    seed: int,
    always: Iterable[tuple[Hashable, Hashable]] = (),
) -> list[tuple[Hashable, Hashable]]:
    pairs = list(P.comparable_pairs())
    if rank_limit is not None and P.is_graded():
        kept = [
            (u, w) for u, w in pairs if P.rank_of(w) - P.rank_of(u) <= rank_limit
        ]
        rest = [
            (u, w) for u, w in pairs if P.rank_of(w) - P.rank_of(u) > rank_limit
        ]
        kept.extend(_sampled(rest, 0.0 if sample is None else sample, seed))
        pairs = kept
    elif sample is not None:
        pairs = _sampled(pairs, sample, seed)
    forced = [pair for pair in always if pair not in set(pairs)]
    return pairs + forced


def _verify_chain_condition(
    P: FinitePoset,
    mode: str,
    *,
    key: Callable[[Any], Any] | None = None,
    rank_limit: int | None = None,
    sample: float | None = None,
    seed: int = 0,
    always: Iterable[tuple[Hashable, Hashable]] = (),
    workers: int = 1,
) -> Report:
    checker = ChainChecker(P, key)
    pair_ok = checker.ec_pair_ok if mode == "ec" else checker.el_pair_ok
    pairs = _select_pairs(P, rank_limit, sample, seed, always)
    failures: list[dict] = []
    checked = 0

    def examine(uw: tuple[Hashable, Hashable]) -> dict | None:
        u, w = uw
        count, chain = checker.count_constrained_chains(u, w, pair_ok)
        if count != 1:
            return {
                "interval": [str(u), str(w)],
                "reason": "%d %s chains" % (count, "ascent-only" if mode == "ec" else "weakly-ascending"),
            }
        _, lex_labels = checker.lex_first_chain(u, w)
        if checker.chain_labels(chain) != lex_labels:
            return {
                "interval": [str(u), str(w)],
                "reason": "unique %s chain is not lexicographically first"
                % ("ascent-only" if mode == "ec" else "weakly-ascending"),
                "chain": [str(x) for x in chain],
            }
        if checker.lex_first_multiplicity(u, w) != 1:
            return {
                "interval": [str(u), str(w)],
                "reason": "duplicate-lex-first",
            }
        return None

    from .parallel import parallel_map

    for result in parallel_map(examine, pairs, workers):
        checked += 1
        if result is not None:
            failures.append(result)

    report = Report(P.name)
    report.add(
        "ec" if mode == "ec" else "el",
        not failures,
        witness={"checked_intervals": checked, "violations": failures[:20]}
        if failures
        else {"checked_intervals": checked},
    )
    return report


def verify_ec(
    P: FinitePoset,
    *,
    key: Callable[[Any], Any] | None = None,
    rank_limit: int | None = None,
    sample: float | None = None,
    seed: int = 0,
    always: Iterable[tuple[Hashable, Hashable]] = (),
    workers: int = 1,
) -> Report:
    """Check the chain-ascent labeling condition on every selected interval.

    Every closed interval must have exactly one saturated chain made of
    topological ascents, and that chain must carry the unique least label
    sequence.  With ``rank_limit`` set, intervals of larger rank are only
    sampled (at rate ``sample``, deterministically seeded); ``always`` forces
    specific intervals into the selection.
    """
    return _verify_chain_condition(
        P,
        "ec",
        key=key,
        rank_limit=rank_limit,
        sample=sample,
        seed=seed,
        always=always,
        workers=workers,
    )


def verify_el(
    P: FinitePoset,
    *,
    key: Callable[[Any], Any] | None = None,
    rank_limit: int | None = None,
    sample: float | None = None,
    seed: int = 0,
    workers: int = 1,
) -> Report:
    """Check the stricter EL condition: unique weakly ascending, lex-first."""
    return _verify_chain_condition(
        P,
        "el",
        key=key,
        rank_limit=rank_limit,
        sample=sample,
        seed=seed,
        workers=workers,
    )


def weakly_ascending_middles(P: FinitePoset, u: Hashable, w: Hashable) -> list:
    """Middles v of rank-2 chains u < v < w with weakly ascending labels."""
    checker = ChainChecker(P)
    iu, iw = P._i(u), P._i(w)
    return [
        P.elements[iy]
        for iy in checker._middles(iu, iw)
        if checker.el_pair_ok(iu, iy, iw)
    ]


def find_ec_not_el_witnesses(P: FinitePoset) -> list[dict]:
    """Rank-2 intervals with two or more weakly ascending chains.

    On such intervals the labeling cannot be an EL-labeling even though the
    chain-ascent condition may hold.
    """
    checker = ChainChecker(P)
    out = []
    for u, w in P.comparable_pairs():
        if P.is_graded() and P.rank_of(w) - P.rank_of(u) != 2:
            continue
        iu, iw = P._i(u), P._i(w)
        middles = [
            P.elements[iy]
            for iy in checker._middles(iu, iw)
            if checker.el_pair_ok(iu, iy, iw)
        ]
        if len(middles) >= 2:
            out.append(
                {
                    "interval": [str(u), str(w)],
                    "ascending_chains": [
                        [str(P._labels[(iu, P._i(v))]), str(P._labels[(P._i(v), iw)])]
                        for v in middles
                    ],
                }
            )
    return out


# -- direct facet shelling ----------------------------------------------------


def facet_order_violations(facets: Sequence[Sequence[Hashable]]) -> list[dict]:
    """Violations of the shelling condition for the given facet order.

    For each facet after the first, the maximal intersections with earlier
    facet closures must all have exactly one vertex fewer than the facet.
    """
    vertex_sets = [frozenset(f) for f in facets]
    out = []
    for j in range(1, len(vertex_sets)):
        vj = vertex_sets[j]
        intersections = {vj & vertex_sets[i] for i in range(j)}
        maximal = [
            s
            for s in intersections
            if not any(s < t for t in intersections)
        ]
        bad = [s for s in maximal if len(s) != len(vj) - 1]
        if bad:
            out.append(
                {
                    "facet_position": j + 1,
                    "facet": [str(x) for x in facets[j]],
                    "bad_intersection_sizes": sorted(len(s) for s in bad),
                }
            )
    return out


def maximal_chains_by_label(
    P: FinitePoset, *, key: Callable[[Any], Any] | None = None, limit: int = 10**6
) -> list[tuple]:
    """All maximal chains sorted by their label sequences."""
    count = P.count_maximal_chains()
    if count > limit:
        raise TooManyChainsError(
            "%s has %d maximal chains, over the limit %d" % (P.name, count, limit)
        )
    checker = ChainChecker(P, key)
    chains = P.maximal_chains()
    keyed = []
    for chain in chains:
        labels = checker.chain_labels(chain)
        keyed.append((tuple(checker.edge_key[e] for e in _edges_of(P, chain)), chain))
    keyed.sort(key=lambda item: item[0])
    return [chain for _, chain in keyed]


def _edges_of(P: FinitePoset, chain: Sequence[Hashable]) -> list[tuple[int, int]]:
    idx = [P._i(el) for el in chain]
    return [(idx[i], idx[i + 1]) for i in range(len(idx) - 1)]


def verify_shelling_order(
    P: FinitePoset,
    *,
    key: Callable[[Any], Any] | None = None,
    limit: int = 10**6,
) -> Report:
    """Sort the order complex facets lexicographically and check the shelling.

    Facets are the maximal chains of ``P``; the induced order must satisfy
    the codimension-one intersection condition at every step.
    """
    facets = maximal_chains_by_label(P, key=key, limit=limit)
    violations = facet_order_violations(facets)
    report = Report(P.name)
    report.add(
        "shelling",
        not violations,
        witness={"facets": len(facets), "violations": violations[:10]}
        if violations
        else {"facets": len(facets)},
    )
    return report
