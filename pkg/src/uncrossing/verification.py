"""Named verification suites over uncrossing orders.

Each suite returns a :class:`Report`; the CLI and the acceptance tests run
them by name.  Exhaustive sweeps are used through four wires; where a suite
documents sampling, the sample is drawn with a fixed seed so repeated runs
are byte-identical.
"""

from __future__ import annotations

import random
from math import comb
from typing import Hashable, Iterable

from .bruhat import symmetric_group_poset, verify_bruhat_map, verify_dyer_el
from .labels import TOP_LABEL, Label
from .parallel import parallel_map
from .posets import FinitePoset
from .reporting import Report
from .shelling import (
    ChainChecker,
    find_ec_not_el_witnesses,
    verify_ec,
    verify_el,
    verify_shelling_order,
)
from .tuffley import IntervalCatalog, NoMatchFoundError, generate_tuffley, match_interval
from .uncross_poset import (
    BOTTOM,
    UncrossingPoset,
    dual_covers,
    dual_covers_by_pattern_rule,
)
from .wires import (
    UncrossMode,
    crossing_number,
    crossing_pairs,
    pi_of,
    start_set,
    uncross_with_renaming,
)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def _sampled(items: list, sample: float | None, seed: int) -> list:
    if sample is None or sample >= 1.0:
        return items
    rng = random.Random(seed)
    return [item for item in items if rng.random() < sample]


def verify_counts(P: UncrossingPoset) -> Report:
    """Element, atom and coatom counts against the closed formulas."""
    from .uncross_poset import double_factorial_odd

    report = Report("uncrossing-%d" % P.n)
    expected = 1 + double_factorial_odd(P.n)
    report.add(
        "element-count",
        len(P) == expected,
        witness={"got": len(P), "expected": expected},
    )
    report.add(
        "atom-count",
        len(P.atoms()) == catalan(P.n),
        witness={"got": len(P.atoms()), "expected": catalan(P.n)},
    )
    F = P.as_finite_poset()
    report.add("graded", F.is_graded())
    ranks_ok = all(F.rank_of(el) == P.rank(el) for el in F.elements)
    report.add("rank-is-crossings-plus-one", ranks_ok)
    return report


def verify_cover_rule(P: UncrossingPoset, workers: int = 1) -> Report:
    """Pattern-rule covers against the direct crossing-count covers."""
    report = Report("uncrossing-%d" % P.n)

    def examine(word) -> str | None:
        direct = sorted((str(x), str(l)) for x, l in dual_covers(word) if x is not BOTTOM)
        ruled = sorted((str(x), str(l)) for x, l in dual_covers_by_pattern_rule(word))
        return None if direct == ruled else str(word)

    bad = [
        witness
        for witness in parallel_map(
            examine, [w for w in P.words if crossing_number(w) > 0], workers
        )
        if witness is not None
    ]
    report.add("cover-rule-equivalence", not bad, witness=bad[:10] or None)
    return report


def verify_figure_labels(P: UncrossingPoset) -> Report:
    """Boundary labels of the dual order: bottom covers and terminal covers."""
    D = P.as_finite_poset(dual=True)
    report = Report("uncrossing-%d*" % P.n)
    dual_bottom = P.top()
    bottom_labels = sorted(
        str(D.label(dual_bottom, y)) for y in D.upper_covers(dual_bottom)
    )
    if P.n == 3:
        report.add(
            "dual-bottom-cover-labels",
            bottom_labels == ["(1,2)", "(2,3)", "(3,1)"],
            witness=bottom_labels,
        )
        report.add(
            "rank-profile",
            P.rank_profile() == (1, 5, 6, 3, 1),
            witness=list(P.rank_profile()),
        )
    top_ok = all(
        D.label(x, BOTTOM) is TOP_LABEL for x in D.lower_covers(BOTTOM)
    )
    report.add(
        "terminal-covers-labeled-L",
        top_ok and len(D.lower_covers(BOTTOM)) == catalan(P.n),
        witness={"coatom-count": len(D.lower_covers(BOTTOM))},
    )
    return report


def verify_start_sets(P: UncrossingPoset, workers: int = 1) -> Report:
    """Start-set behavior of covers, and its order consequences.

    Swapping second endpoints preserves the start set; moving into a start
    slot strictly increases it lexicographically.  Hence start sets weakly
    increase along the dual order, and saturated chains inside a start-set
    preserving interval consist of swap steps only.
    """
    report = Report("uncrossing-%d*" % P.n)
    bad_cover = []
    for (lo, hi), label in sorted(P.labels.items(), key=lambda kv: kv[0]):
        if lo == 0:
            continue
        upper = P.elements[hi]  # more crossings: dual-lower
        lower = P.elements[lo]
        s_from, s_to = start_set(upper), start_set(lower)
        if label.is_ascending:
            ok = s_from == s_to
        else:
            ok = s_from < s_to
        if not ok:
            bad_cover.append({"cover": [str(upper), str(lower)], "label": str(label)})
    report.add("cover-start-set-rule", not bad_cover, witness=bad_cover[:10] or None)

    D = P.as_finite_poset(dual=True)
    bad_pairs = []
    for u, w in D.comparable_pairs():
        if u is BOTTOM or w is BOTTOM:
            continue
        if not start_set(u) <= start_set(w):
            bad_pairs.append([str(u), str(w)])
    report.add("start-set-monotone", not bad_pairs, witness=bad_pairs[:10] or None)
    return report


def verify_crossings_vs_inversions(P: UncrossingPoset) -> Report:
    """For words starting 1..n, crossings complement the inversion count."""
    report = Report("uncrossing-%d" % P.n)
    full = comb(P.n, 2)
    prefix = tuple(range(1, P.n + 1))
    bad = []
    for w in P.words:
        if start_set(w) != prefix:
            continue
        if crossing_number(w) != full - len(pi_of(w).inversion_pairs()):
            bad.append(str(w))
    report.add("crossings-complement-inversions", not bad, witness=bad[:10] or None)
    return report


# -- lemma suites on the dual order --------------------------------------------


def _dual_cover_triples(D: FinitePoset) -> list[tuple]:
    out = []
    for v in D.elements:
        ups = D.upper_covers(v)
        if not ups:
            continue
        for u in D.lower_covers(v):
            for w in ups:
                out.append((u, v, w))
    return out


def verify_descents_topological(
    D: FinitePoset, *, sample: float | None = None, seed: int = 0
) -> Report:
    """Label descents below the dual maximum are topological descents."""
    checker = ChainChecker(D)
    top = D.top()
    triples = [t for t in _dual_cover_triples(D) if t[2] is not top]
    triples = _sampled(triples, sample, seed)
    bad = []
    for u, v, w in triples:
        if checker.edge_key[(D._i(u), D._i(v))] > checker.edge_key[(D._i(v), D._i(w))]:
            if checker.is_topological_ascent(u, v, w):
                bad.append([str(u), str(v), str(w)])
    report = Report(D.name)
    report.add(
        "descent-is-topological-descent",
        not bad,
        witness={"checked_triples": len(triples), "violations": bad[:10]}
        if bad
        else {"checked_triples": len(triples)},
    )
    return report


def verify_unique_ascent_free(
    D: FinitePoset, *, sample: float | None = None, seed: int = 0, workers: int = 1
) -> Report:
    """Exactly one chain without topological descents strictly below the top."""
    checker = ChainChecker(D)
    top = D.top()
    pairs = [
        (u, w)
        for u, w in D.comparable_pairs()
        if w is not top and u is not top
    ]
    pairs = _sampled(pairs, sample, seed)

    def examine(uw) -> dict | None:
        u, w = uw
        count, _ = checker.count_constrained_chains(u, w, checker.ec_pair_ok)
        if count != 1:
            return {"interval": [str(u), str(w)], "ascent_free_chains": count}
        return None

    bad = [r for r in parallel_map(examine, pairs, workers) if r is not None]
    report = Report(D.name)
    report.add(
        "unique-ascent-free-chain-below-top",
        not bad,
        witness={"checked_intervals": len(pairs), "violations": bad[:10]}
        if bad
        else {"checked_intervals": len(pairs)},
    )
    return report


def verify_lex_first_to_top(
    D: FinitePoset, *, sample: float | None = None, seed: int = 0
) -> Report:
    """The lex-first chain into the dual maximum has weakly ascending labels."""
    checker = ChainChecker(D)
    top = D.top()
    sources = _sampled([u for u in D.elements if u is not top], sample, seed)
    bad = []
    for u in sources:
        _, labels = checker.lex_first_chain(u, top)
        if any(labels[i] > labels[i + 1] for i in range(len(labels) - 1)):
            bad.append({"from": str(u), "labels": [str(l) for l in labels]})
    report = Report(D.name)
    report.add(
        "lex-first-chain-to-top-ascending",
        not bad,
        witness={"checked_sources": len(sources), "violations": bad[:10]}
        if bad
        else {"checked_sources": len(sources)},
    )
    return report


def verify_descending_forces_descent(
    D: FinitePoset, *, sample: float | None = None, seed: int = 0
) -> Report:
    """Chains to the dual maximum using a descending-pair label have a descent.

    Counted with a flag-carrying dynamic program: weakly ascending chains
    that use at least one descending label must not exist.
    """
    checker = ChainChecker(D)
    top = D.top()
    itop = D._i(top)
    sources = _sampled([u for u in D.elements if u is not top], sample, seed)
    bad = []
    for u in sources:
        iu = D._i(u)
        mask = D._interval_mask(iu, itop)
        counts: dict[tuple[tuple[int, int], bool], int] = {}
        for iy in D._up[iu]:
            if mask >> iy & 1:
                lab = D._labels[(iu, iy)]
                counts[((iu, iy), bool(lab.is_descending))] = 1
        for iy in D._topo:
            if iy == iu or not mask >> iy & 1 or iy == itop:
                continue
            for ix in D._down[iy]:
                for flag in (False, True):
                    c = counts.get(((ix, iy), flag), 0)
                    if not c:
                        continue
                    for iz in D._up[iy]:
                        if not mask >> iz & 1:
                            continue
                        if not checker.el_pair_ok(ix, iy, iz):
                            continue
                        lab = D._labels[(iy, iz)]
                        nxt = ((iy, iz), flag or bool(lab.is_descending))
                        counts[nxt] = counts.get(nxt, 0) + c
        offenders = sum(
            counts.get(((iy, itop), True), 0) for iy in D._down[itop]
        )
        if offenders:
            bad.append({"from": str(u), "descent_free_with_descending": offenders})
    report = Report(D.name)
    report.add(
        "descending-labels-force-descent",
        not bad,
        witness={"checked_sources": len(sources), "violations": bad[:10]}
        if bad
        else {"checked_sources": len(sources)},
    )
    return report


def verify_non_lex_first_to_top(
    D: FinitePoset, *, sample: float | None = None, seed: int = 0, workers: int = 1
) -> Report:
    """Every non-lex-first chain into the dual maximum has a topological descent."""
    checker = ChainChecker(D)
    top = D.top()
    sources = _sampled([u for u in D.elements if u is not top], sample, seed)

    def examine(u) -> dict | None:
        count, chain = checker.count_constrained_chains(u, top, checker.ec_pair_ok)
        if count != 1:
            return {"from": str(u), "ascent_only_chains": count}
        _, lex_labels = checker.lex_first_chain(u, top)
        if checker.chain_labels(chain) != lex_labels:
            return {"from": str(u), "reason": "ascent-only chain is not lex-first"}
        return None

    bad = [r for r in parallel_map(examine, sources, workers) if r is not None]
    report = Report(D.name)
    report.add(
        "non-lex-first-to-top-has-topological-descent",
        not bad,
        witness={"checked_sources": len(sources), "violations": bad[:10]}
        if bad
        else {"checked_sources": len(sources)},
    )
    return report


def verify_diamond_rule(
    P: UncrossingPoset,
    D: FinitePoset | None = None,
    *,
    sample: float | None = None,
    seed: int = 0,
) -> Report:
    """Case analysis of consecutive descending labels (k,i) then (j,i), i<j<k.

    The other chain of the diamond must carry ((j,i),(j,k)) or ((j,k),(j,i));
    the first form makes the original chain a topological ascent, the second
    a topological descent.  Steps are also required to involve exactly three
    wires once the renaming of the first move is unwound.
    """
    D = D if D is not None else P.as_finite_poset(dual=True)
    checker = ChainChecker(D)
    triples = []
    for u, v, w in _dual_cover_triples(D):
        if u is BOTTOM or v is BOTTOM or w is BOTTOM:
            continue
        lam1 = D.label(u, v)
        lam2 = D.label(v, w)
        if not (lam1.is_descending and lam2.is_descending):
            continue
        k, i1 = lam1.pair
        j, i2 = lam2.pair
        if i1 == i2 and i1 < j < k:
            triples.append((u, v, w, i1, j, k))
    triples = _sampled(triples, sample, seed)
    bad = []
    for u, v, w, i, j, k in triples:
        v2, lam1, renaming = uncross_with_renaming(u, i, k, UncrossMode.MOVE_TO_START)
        if v2 != v:
            bad.append({"chain": [str(u), str(v), str(w)], "reason": "label-move mismatch"})
            continue
        inverse = {new: old for old, new in renaming.items()}
        physical = {i, k, inverse[i], inverse[j]}
        if len(physical) != 3:
            bad.append(
                {"chain": [str(u), str(v), str(w)], "reason": "not three wires"}
            )
            continue
        middles = [
            y for y in D.upper_covers(u) if y != v and D.is_cover(y, w)
        ]
        if len(middles) != 1:
            bad.append(
                {"chain": [str(u), str(v), str(w)], "reason": "diamond not thin"}
            )
            continue
        other = middles[0]
        pair = (D.label(u, other).pair, D.label(other, w).pair)
        ascent = checker.is_topological_ascent(u, v, w)
        if pair == ((j, i), (j, k)):
            ok = ascent
        elif pair == ((j, k), (j, i)):
            ok = not ascent
        else:
            ok = False
        if not ok:
            bad.append(
                {
                    "chain": [str(u), str(v), str(w)],
                    "labels": [str(lam) for lam in ((k, i), (j, i))],
                    "other_labels": [str(x) for x in pair],
                    "ascent": ascent,
                }
            )
    report = Report(D.name)
    report.add(
        "diamond-rule",
        not bad,
        witness={"checked_diamonds": len(triples), "violations": bad[:10]}
        if bad
        else {"checked_diamonds": len(triples)},
    )
    return report


def verify_lemma_suites(
    P: UncrossingPoset,
    *,
    sample: float | None = None,
    seed: int = 0,
    workers: int = 1,
) -> Report:
    """All chain-label lemmas on the dual order, plus the EC-not-EL witness."""
    D = P.as_finite_poset(dual=True)
    report = Report(D.name)
    report.extend(verify_descents_topological(D, sample=sample, seed=seed))
    report.extend(
        verify_unique_ascent_free(D, sample=sample, seed=seed, workers=workers)
    )
    report.extend(verify_lex_first_to_top(D, sample=sample, seed=seed))
    report.extend(verify_descending_forces_descent(D, sample=sample, seed=seed))
    report.extend(
        verify_non_lex_first_to_top(D, sample=sample, seed=seed, workers=workers)
    )
    report.extend(verify_diamond_rule(P, D, sample=sample, seed=seed))
    if P.n == 3:
        witnesses = find_ec_not_el_witnesses(D)
        report.add(
            "ec-not-el-witness",
            bool(witnesses),
            witness=witnesses[:3] or None,
        )
    return report


def verify_bruhat_suite(
    P: UncrossingPoset, *, workers: int = 1
) -> Report:
    """The Bruhat map on every start-set preserving interval of the dual order."""
    D = P.as_finite_poset(dual=True)
    B = symmetric_group_poset(P.n)
    by_start: dict[tuple, list] = {}
    for w in P.words:
        by_start.setdefault(start_set(w), []).append(w)
    pairs = []
    for _, group in sorted(by_start.items()):
        for u in group:
            for v in group:
                if D.le(u, v):
                    pairs.append((u, v))

    def examine(uv) -> dict | None:
        u, v = uv
        sub = verify_bruhat_map(P, u, v, dual_poset=D, bruhat=B)
        if not sub.ok:
            return {
                "interval": [str(u), str(v)],
                "failed": [c.name for c in sub.failed()],
            }
        return None

    bad = [r for r in parallel_map(examine, pairs, workers) if r is not None]
    report = Report(D.name)
    report.add(
        "bruhat-map",
        not bad,
        witness={"checked_intervals": len(pairs), "violations": bad[:10]}
        if bad
        else {"checked_intervals": len(pairs)},
    )
    return report


def verify_tuffley_suite(
    n: int,
    *,
    scope: Iterable[int] = (2, 3, 4),
    catalog: IntervalCatalog | None = None,
    workers: int = 1,
) -> Report:
    """Match every closed interval of the forest poset and verify its labeling.

    Zero unmatched intervals is the pass condition; every pulled-back
    labeling must satisfy the chain-ascent condition.
    """
    T = generate_tuffley(n)
    catalog = catalog if catalog is not None else IntervalCatalog(scope)
    report = Report(T.name)
    pairs = [(u, u) for u in T.elements] + list(T.comparable_pairs())

    def examine(uv) -> dict | None:
        u, v = uv
        Q = T.interval(u, v)
        try:
            matched = match_interval(Q, catalog)
        except NoMatchFoundError:
            return {"interval": [str(u), str(v)], "reason": "NoMatchFound"}
        if len(matched.labeled.elements) > 1 and not verify_ec(matched.labeled).ok:
            return {"interval": [str(u), str(v)], "reason": "pulled-back labeling fails"}
        return None

    bad = [r for r in parallel_map(examine, pairs, workers) if r is not None]
    no_match = sum(1 for b in bad if b["reason"] == "NoMatchFound")
    report.add(
        "tuffley-intervals-matched",
        not bad,
        witness={
            "intervals": len(pairs),
            "no_match": no_match,
            "violations": bad[:10],
        }
        if bad
        else {"intervals": len(pairs), "no_match": 0},
    )
    return report


# -- the combined suite ---------------------------------------------------------


def run_suite(
    n: int,
    checks: Iterable[str],
    *,
    sample: float | None = None,
    seed: int = 0,
    limit: int = 10**6,
    workers: int = 1,
) -> Report:
    """Run the named checks for the order on ``n`` wires."""
    P = UncrossingPoset.generate(n)
    F = P.as_finite_poset()
    D = P.as_finite_poset(dual=True)
    wanted = list(checks)
    report = Report("uncrossing-%d" % n)
    applied_sample = sample if sample is not None else (0.1 if n >= 4 else None)
    for check in wanted:
        if check == "counts":
            report.extend(verify_counts(P))
        elif check == "figure":
            report.extend(verify_figure_labels(P))
        elif check == "cover-rule":
            report.extend(verify_cover_rule(P, workers=workers))
        elif check == "ec":
            if n <= 3:
                report.extend(verify_ec(D, workers=workers))
            else:
                report.extend(
                    verify_ec(
                        D,
                        rank_limit=5,
                        sample=applied_sample,
                        seed=seed,
                        always=[(P.top(), BOTTOM)],
                        workers=workers,
                    )
                )
        elif check == "eulerian":
            report.extend(F.is_eulerian())
        elif check == "thin":
            report.extend(F.is_thin())
        elif check == "cw":
            report.add("cw-poset", F.is_cw_poset())
        elif check == "shelling":
            report.extend(verify_shelling_order(D, limit=limit))
        elif check == "lemmas":
            report.extend(
                verify_lemma_suites(
                    P,
                    sample=applied_sample if n >= 4 else None,
                    seed=seed,
                    workers=workers,
                )
            )
        elif check == "bruhat-map":
            report.extend(verify_bruhat_suite(P, workers=workers))
        elif check == "start-sets":
            report.extend(verify_start_sets(P, workers=workers))
        elif check == "inversions":
            report.extend(verify_crossings_vs_inversions(P))
        elif check == "dyer":
            report.extend(verify_dyer_el(min(n, 5), workers=workers))
        else:
            raise ValueError("unknown check %r" % check)
    return report


ALL_CHECKS = (
    "counts",
    "figure",
    "cover-rule",
    "ec",
    "eulerian",
    "thin",
    "cw",
    "lemmas",
    "start-sets",
    "inversions",
    "bruhat-map",
)
