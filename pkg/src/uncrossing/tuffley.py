"""Forests of label-bearing trees under edge deletion and contraction.

Elements are forests whose vertices carry disjoint label sets partitioning
``1..n``; maximal elements are the leaf-labeled trees whose internal nodes
all have degree three.  Deleting an edge splits a component; contracting an
edge merges the endpoint label sets.  Unlabeled vertices of degree at most
two are unobservable and get suppressed, which is what makes the edge-free
layer biject with the set partitions of the label set.

Because suppression can swallow edges, a single deletion may fall more than
one level: the face order is the transitive closure of single moves and the
cover relations are its transitive reduction.

Every closed interval of the resulting poset is expected to be isomorphic
to an interval of a dual uncrossing order; :class:`IntervalCatalog` finds
such a match and pulls the uncrossing labels back, giving each forest
interval an explicitly shellable labeling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .posets import FinitePoset, find_isomorphism
from .reporting import Report
from .uncross_poset import BOTTOM, UncrossingPoset


class TooLargeError(RuntimeError):
    """Generating the forest poset would exceed the configured limit."""


class NoMatchFoundError(LookupError):
    """No rank-compatible uncrossing interval is isomorphic to the given one."""


@dataclass(frozen=True)
class Forest:
    """A canonical label-bearing forest.

    ``labels[v]`` is the sorted label tuple of vertex ``v`` (possibly empty
    for internal vertices of degree three or more); ``edges`` are sorted
    vertex pairs.  Instances are built through :func:`make_forest`, which
    suppresses unobservable vertices and renumbers canonically, so equal
    forests compare equal.
    """

    labels: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def label_set(self) -> frozenset[int]:
        return frozenset(x for labs in self.labels for x in labs)

    def __str__(self) -> str:
        parts = []
        adj = _adjacency(self.vertex_count, self.edges)
        seen: set[int] = set()
        for v in range(self.vertex_count):
            if v in seen:
                continue
            comp = _component(v, adj)
            seen |= comp
            verts = sorted(comp)
            tags = {
                u: ("{%s}" % ",".join(map(str, self.labels[u])))
                if self.labels[u]
                else "*"
                for u in verts
            }
            comp_edges = [e for e in self.edges if e[0] in comp]
            if comp_edges:
                parts.append(
                    " ".join("%s-%s" % (tags[a], tags[b]) for a, b in comp_edges)
                )
            else:
                parts.append(tags[verts[0]])
        return " | ".join(sorted(parts))

    def __lt__(self, other: "Forest") -> bool:
        return (self.labels, self.edges) < (other.labels, other.edges)


def _adjacency(n: int, edges) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def _component(start: int, adj: list[list[int]]) -> set[int]:
    comp = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in comp:
                comp.add(u)
                stack.append(u)
    return comp


def _suppress(labels: list[tuple[int, ...]], edges: set[tuple[int, int]]):
    """Remove unlabeled vertices of degree <= 2, splicing paths through them."""
    changed = True
    alive = set(range(len(labels)))
    while changed:
        changed = False
        adj = {v: set() for v in alive}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        for v in sorted(alive):
            if labels[v]:
                continue
            deg = len(adj[v])
            if deg > 2:
                continue
            if deg == 2:
                a, b = sorted(adj[v])
                edges.discard(tuple(sorted((v, a))))
                edges.discard(tuple(sorted((v, b))))
                edges.add(tuple(sorted((a, b))))
            elif deg == 1:
                (a,) = adj[v]
                edges.discard(tuple(sorted((v, a))))
            alive.discard(v)
            changed = True
            break
    return alive, edges


def _canonical_component(
    verts: list[int], edges: list[tuple[int, int]], labels
) -> tuple:
    """Canonical encoding plus canonical vertex order of one tree component."""
    adj = {v: [] for v in verts}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)

    # centers by leaf peeling
    if len(verts) == 1:
        centers = [verts[0]]
    else:
        deg = {v: len(adj[v]) for v in verts}
        layer = [v for v in verts if deg[v] <= 1]
        remaining = len(verts)
        current = layer
        while remaining > 2:
            nxt = []
            for v in current:
                remaining -= 1
                for u in adj[v]:
                    deg[u] -= 1
                    if deg[u] == 1:
                        nxt.append(u)
            current = nxt
        centers = sorted(current)

    def encode(v: int, parent: int | None) -> tuple:
        children = sorted(
            (encode(u, v) for u in adj[v] if u != parent)
        )
        return (tuple(labels[v]), tuple(children))

    def order(v: int, parent: int | None, out: list[int]) -> None:
        out.append(v)
        children = sorted(
            ((encode(u, v), u) for u in adj[v] if u != parent)
        )
        for _, u in children:
            order(u, v, out)

    best = None
    for root in centers:
        enc = encode(root, None)
        ordering: list[int] = []
        order(root, None, ordering)
        pos = {v: i for i, v in enumerate(ordering)}
        new_edges = tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in edges))
        new_labels = tuple(tuple(labels[v]) for v in ordering)
        cand = (enc, new_labels, new_edges)
        if best is None or cand < best:
            best = cand
    return best


def make_forest(vertex_labels, edge_list) -> Forest:
    """Canonicalize raw forest data into a :class:`Forest`.

    ``vertex_labels`` is a sequence of label collections (one per vertex),
    ``edge_list`` the vertex pairs.  Unlabeled vertices of degree <= 2 are
    suppressed first; components are then individually canonicalized and
    sorted.
    """
    labels = [tuple(sorted(set(labs))) for labs in vertex_labels]
    edges = {tuple(sorted((int(a), int(b)))) for a, b in edge_list}
    for a, b in edges:
        if a == b:
            raise ValueError("loop at vertex %d" % a)
    alive, edges = _suppress(labels, edges)
    adj = {v: set() for v in alive}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen: set[int] = set()
    encoded = []
    for v in sorted(alive):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for u in adj[x]:
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        comp_edges = [e for e in edges if e[0] in comp]
        encoded.append(
            _canonical_component(sorted(comp), comp_edges, labels)
        )
    encoded.sort()
    out_labels: list[tuple[int, ...]] = []
    out_edges: list[tuple[int, int]] = []
    for _, comp_labels, comp_edges in encoded:
        offset = len(out_labels)
        out_labels.extend(comp_labels)
        out_edges.extend((a + offset, b + offset) for a, b in comp_edges)
    return Forest(tuple(out_labels), tuple(sorted(out_edges)))


def splits(forest: Forest) -> frozenset[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All splits: for each edge, the two-sided partition of its component's labels.

    Sides are sorted tuples, the pair itself sorted, empty sides dropped by
    construction because suppressed forests have no label-free side.
    """
    adj = _adjacency(forest.vertex_count, forest.edges)
    out = set()
    for a, b in forest.edges:
        trimmed = [list(nbrs) for nbrs in adj]
        trimmed[a] = [x for x in trimmed[a] if x != b]
        trimmed[b] = [x for x in trimmed[b] if x != a]
        side_a = _component(a, trimmed)
        side_b = _component(b, trimmed)
        la = tuple(sorted(x for v in side_a for x in forest.labels[v]))
        lb = tuple(sorted(x for v in side_b for x in forest.labels[v]))
        out.add(tuple(sorted((la, lb))))
    return frozenset(out)


def label_partition(forest: Forest) -> frozenset[tuple[int, ...]]:
    """The partition of the label set into per-component label sets."""
    adj = _adjacency(forest.vertex_count, forest.edges)
    seen: set[int] = set()
    blocks = set()
    for v in range(forest.vertex_count):
        if v in seen:
            continue
        comp = _component(v, adj)
        seen |= comp
        blocks.add(tuple(sorted(x for u in comp for x in forest.labels[u])))
    return frozenset(blocks)


def trivalent_trees(n: int) -> list[Forest]:
    """Leaf-labeled trees on ``1..n`` whose internal vertices have degree 3.

    >>> [len(trivalent_trees(k)) for k in (3, 4, 5)]
    [1, 3, 15]
    """
    if n < 3:
        raise ValueError("need n >= 3")
    tripod = make_forest(
        [(), (1,), (2,), (3,)], [(0, 1), (0, 2), (0, 3)]
    )
    trees = {tripod}
    for leaf in range(4, n + 1):
        grown = set()
        for tree in trees:
            for a, b in tree.edges:
                labels = list(tree.labels) + [(), (leaf,)]
                mid = len(tree.labels)
                new_leaf = mid + 1
                edges = [e for e in tree.edges if e != (a, b)]
                edges += [(a, mid), (mid, b), (mid, new_leaf)]
                grown.add(make_forest(labels, edges))
        trees = grown
    return sorted(trees)


def forest_covers_down(forest: Forest) -> tuple[Forest, ...]:
    """Canonical results of deleting or contracting one edge, deduplicated.

    These single moves generate the face order; a move is not always a cover
    because suppression can remove further edges.
    """
    results = set()
    for a, b in forest.edges:
        remaining = [e for e in forest.edges if e != (a, b)]
        results.add(make_forest(forest.labels, remaining))
        merged = list(forest.labels)
        merged[a] = tuple(sorted(set(merged[a]) | set(merged[b])))
        rewired = [
            tuple(sorted((a if x == b else x, a if y == b else y)))
            for x, y in remaining
        ]
        merged[b] = ()
        results.add(make_forest(merged, rewired))
    return tuple(sorted(results))


def generate_tuffley(n: int, limit: int = 100_000) -> FinitePoset:
    """The face poset of forests on ``1..n``, with an adjoined minimum.

    Closure of the trivalent trees under single moves; covers are the
    transitive reduction of move reachability.

    >>> len(generate_tuffley(3).elements)
    16
    """
    if not 3 <= n <= 6:
        raise ValueError("supported for 3 <= n <= 6, got %d" % n)
    moves: dict[Forest, tuple[Forest, ...]] = {}
    frontier = list(trivalent_trees(n))
    while frontier:
        forest = frontier.pop()
        if forest in moves:
            continue
        below = forest_covers_down(forest)
        moves[forest] = below
        frontier.extend(below)
        if len(moves) > limit:
            raise TooLargeError("more than %d forests" % limit)

    descendants: dict[Forest, frozenset[Forest]] = {}

    def desc(forest: Forest) -> frozenset[Forest]:
        got = descendants.get(forest)
        if got is None:
            acc: set[Forest] = set()
            for child in moves[forest]:
                acc.add(child)
                acc |= desc(child)
            got = frozenset(acc)
            descendants[forest] = got
        return got

    covers: list[tuple[Forest | object, Forest | object]] = []
    for forest in moves:
        direct = moves[forest]
        shadowed: set[Forest] = set()
        for child in direct:
            shadowed |= desc(child)
        for child in direct:
            if child not in shadowed:
                covers.append((child, forest))
    minimal = sorted(f for f in moves if not moves[f])
    covers.extend((BOTTOM, f) for f in minimal)
    elements = [BOTTOM] + sorted(moves)
    covers.sort(key=lambda pair: (str(pair[0]), str(pair[1])))
    return FinitePoset(elements, covers, name="tuffley-%d" % n)


# -- serialization ------------------------------------------------------------


def forest_to_json(forest: Forest) -> dict:
    adj = _adjacency(forest.vertex_count, forest.edges)
    seen: set[int] = set()
    components = []
    for v in range(forest.vertex_count):
        if v in seen:
            continue
        comp = sorted(_component(v, adj))
        seen |= set(comp)
        comp_edges = [[a, b] for a, b in forest.edges if a in comp]
        labels = {
            str(u): list(forest.labels[u]) for u in comp if forest.labels[u]
        }
        components.append({"edges": comp_edges, "labels": labels})
    return {"components": components}


def forest_from_json(obj: dict) -> Forest:
    labels: dict[int, tuple[int, ...]] = {}
    edges = []
    for comp in obj["components"]:
        for a, b in comp["edges"]:
            edges.append((int(a), int(b)))
            labels.setdefault(int(a), ())
            labels.setdefault(int(b), ())
        for vertex, labs in comp["labels"].items():
            labels[int(vertex)] = tuple(int(x) for x in labs)
    if not labels:
        raise ValueError("empty forest")
    size = max(labels) + 1
    label_list = [labels.get(v, ()) for v in range(size)]
    return make_forest(label_list, edges)


def tuffley_to_dot(P: FinitePoset) -> str:
    lines = ["digraph %s {" % P.name.replace("-", "_"), "  rankdir=BT;"]
    index = {el: i for i, el in enumerate(P.elements)}
    for el, i in index.items():
        lines.append('  n%d [label="%s"];' % (i, el))
    for lo, hi in P.covers():
        lines.append("  n%d -> n%d;" % (index[lo], index[hi]))
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- matching into uncrossing orders -------------------------------------------


@dataclass
class IntervalMatch:
    """A forest interval matched onto a dual uncrossing interval."""

    wires: int
    lower: object
    upper: object
    mapping: dict
    labeled: FinitePoset


def _interval_signature(P: FinitePoset, members: list) -> tuple:
    member_set = set(members)
    topo_pos = {P.elements[idx]: pos for pos, idx in enumerate(P._topo)}
    ordered = sorted(members, key=topo_pos.__getitem__)
    depth = {}
    for el in ordered:
        below = [depth[x] for x in P.lower_covers(el) if x in member_set]
        depth[el] = max(below) + 1 if below else 0
    profile: dict[int, int] = {}
    degrees = []
    for el in ordered:
        profile[depth[el]] = profile.get(depth[el], 0) + 1
        up = sum(1 for x in P.upper_covers(el) if x in member_set)
        down = sum(1 for x in P.lower_covers(el) if x in member_set)
        degrees.append((depth[el], down, up))
    return (
        len(members),
        tuple(sorted(profile.items())),
        tuple(sorted(degrees)),
    )


class IntervalCatalog:
    """All intervals of dual uncrossing orders, bucketed for matching."""

    def __init__(self, wire_counts=(2, 3, 4), limit: int = 10_000_000):
        self.duals: dict[int, FinitePoset] = {}
        self.buckets: dict[tuple, list[tuple[int, object, object]]] = {}
        for m in wire_counts:
            D = UncrossingPoset.generate(m, limit=limit).as_finite_poset(dual=True)
            self.duals[m] = D
            for u, w in D.comparable_pairs():
                sig = _interval_signature(D, D.interval_elements(u, w))
                self.buckets.setdefault(sig, []).append((m, u, w))
        self._interval_cache: dict[tuple[int, object, object], FinitePoset] = {}

    def _interval(self, m: int, u, w) -> FinitePoset:
        key = (m, u, w)
        poset = self._interval_cache.get(key)
        if poset is None:
            poset = self.duals[m].interval(u, w)
            self._interval_cache[key] = poset
        return poset

    def match(self, Q: FinitePoset) -> IntervalMatch:
        """Find a dual uncrossing interval isomorphic to ``Q``.

        On success the uncrossing labels are pulled back through the
        isomorphism onto the covers of ``Q``.
        """
        if len(Q.elements) == 1:
            only = Q.elements[0]
            m = min(self.duals)
            D = self.duals[m]
            el = D.elements[0]
            return IntervalMatch(
                m, el, el, {only: el}, FinitePoset(Q.elements, [], name=Q.name)
            )
        sig = _interval_signature(Q, list(Q.elements))
        for m, u, w in self.buckets.get(sig, ()):
            target = self._interval(m, u, w)
            mapping = find_isomorphism(Q, target)
            if mapping is None:
                continue
            labels = {
                (lo, hi): target.label(mapping[lo], mapping[hi])
                for lo, hi in Q.covers()
            }
            labeled = FinitePoset(Q.elements, Q.covers(), labels, name=Q.name)
            return IntervalMatch(m, u, w, mapping, labeled)
        raise NoMatchFoundError(
            "no uncrossing interval matches %s (size %d)" % (Q.name, len(Q.elements))
        )


def match_interval(T_interval: FinitePoset, catalog: IntervalCatalog) -> IntervalMatch:
    """Match a forest-poset interval onto a dual uncrossing interval.

    The interval is dualized first: forests sit with trees on top, while the
    shellable labeling lives on the dual side of the uncrossing order.
    """
    return catalog.match(T_interval.dual())
