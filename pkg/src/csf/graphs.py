"""Labelled graphs on [n]: unit-interval sequences, the named graph
families, graph surgery, and acyclic orientations with sink statistics.

Vertices are 1-indexed everywhere, including in JSON, so the code can be
read against the combinatorics with no off-by-one translation.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator

from .core import SetPartition

# enumerate_acyclic_orientations refuses graphs with more edges than this;
# the backtracking prunes hard but the leaf count is not polynomial
DEFAULT_EDGE_CAP = 24

# unit-interval enumeration cap: Catalan(12) = 208012 graphs
DEFAULT_UI_VERTEX_CAP = 12


class LabelledGraph:
    """A finite simple graph with vertex set [n] and sorted edge tuple."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Iterable = ()):
        if n < 1:
            raise ValueError(f"need at least one vertex, got n={n}")
        seen = set()
        for e in edges:
            i, j = e
            if i > j:
                i, j = j, i
            if not 1 <= i < j <= n:
                raise ValueError(f"edge {tuple(e)} not a pair of distinct vertices in [1, {n}]")
            seen.add((i, j))
        self.n = n
        self.edges = tuple(sorted(seen))

    def has_edge(self, i: int, j: int) -> bool:
        if i > j:
            i, j = j, i
        return (i, j) in self.edges

    def _edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def neighbors(self, v: int) -> tuple:
        out = []
        for i, j in self.edges:
            if i == v:
                out.append(j)
            elif j == v:
                out.append(i)
        return tuple(sorted(out))

    def closed_neighbors(self, v: int) -> tuple:
        return tuple(sorted(self.neighbors(v) + (v,)))

    def components(self) -> tuple:
        """Connected components as sorted vertex tuples, sorted by minimum."""
        adjacency = {v: set() for v in range(1, self.n + 1)}
        for i, j in self.edges:
            adjacency[i].add(j)
            adjacency[j].add(i)
        unseen = set(range(1, self.n + 1))
        parts = []
        while unseen:
            start = min(unseen)
            stack, comp = [start], {start}
            unseen.discard(start)
            while stack:
                u = stack.pop()
                for v in adjacency[u]:
                    if v in unseen:
                        unseen.discard(v)
                        comp.add(v)
                        stack.append(v)
            parts.append(tuple(sorted(comp)))
        return tuple(parts)

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def __eq__(self, other):
        return (
            isinstance(other, LabelledGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"LabelledGraph({self.n}, {list(self.edges)})"


# ---------------------------------------------------------------------------
# unit-interval sequences


def from_unit_interval(*, m: Iterable | None = None, w: Iterable | None = None) -> LabelledGraph:
    """Build the labelled unit interval graph of an m- or w-sequence.

    m[i-1] is the largest label adjacent-or-equal to i, w[j-1] the
    smallest.  Exactly one keyword must be given.  Invalid sequences are
    rejected with the 1-based index of the first violated entry.
    """
    if (m is None) == (w is None):
        raise ValueError("pass exactly one of m= or w=")
    if m is not None:
        m = tuple(m)
        n = len(m)
        if n == 0:
            raise ValueError("empty sequence")
        for i in range(1, n + 1):
            if not i <= m[i - 1] <= n:
                raise ValueError(f"m[{i}]={m[i - 1]} violates {i} <= m_i <= {n}; first violation at index {i}")
            if i > 1 and m[i - 2] > m[i - 1]:
                raise ValueError(f"m[{i}]={m[i - 1]} breaks weak increase after m[{i - 1}]={m[i - 2]}; first violation at index {i}")
        edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, m[i - 1] + 1)]
        return LabelledGraph(n, edges)
    w = tuple(w)
    n = len(w)
    if n == 0:
        raise ValueError("empty sequence")
    for j in range(1, n + 1):
        if not 1 <= w[j - 1] <= j:
            raise ValueError(f"w[{j}]={w[j - 1]} violates 1 <= w_j <= {j}; first violation at index {j}")
        if j > 1 and w[j - 2] > w[j - 1]:
            raise ValueError(f"w[{j}]={w[j - 1]} breaks weak increase after w[{j - 1}]={w[j - 2]}; first violation at index {j}")
    edges = [(i, j) for j in range(1, n + 1) for i in range(w[j - 1], j)]
    return LabelledGraph(n, edges)


def is_unit_interval(g: LabelledGraph) -> bool:
    """True iff every edge ij forces all edges vw with i <= v < w <= j."""
    present = g._edge_set()
    for i, j in g.edges:
        for v in range(i, j):
            for ww in range(v + 1, j + 1):
                if (v, ww) not in present:
                    return False
    return True


def m_sequence(g: LabelledGraph) -> tuple:
    """The m-sequence of a unit interval graph; rejects other graphs."""
    if not is_unit_interval(g):
        raise ValueError("graph is not a labelled unit interval graph")
    return tuple(max((j for j in g.neighbors(i) if j > i), default=i) for i in range(1, g.n + 1))


def w_sequence(g: LabelledGraph) -> tuple:
    if not is_unit_interval(g):
        raise ValueError("graph is not a labelled unit interval graph")
    return tuple(min((i for i in g.neighbors(j) if i < j), default=j) for j in range(1, g.n + 1))


def enumerate_unit_interval_graphs(n: int, cap: int = DEFAULT_UI_VERTEX_CAP) -> Iterator[LabelledGraph]:
    """All labelled unit interval graphs on [n], one per valid m-sequence.

    Yields Catalan(n) graphs in lexicographic m-sequence order.
    """
    if not 1 <= n <= cap:
        raise ValueError(f"vertex count {n} outside [1, {cap}]")
    seq = [0] * n

    def grow(i):
        if i == n:
            yield from_unit_interval(m=seq)
            return
        low = max(i + 1, seq[i - 1] if i else 1)
        for value in range(low, n + 1):
            seq[i] = value
            yield from grow(i + 1)

    yield from grow(0)


def enumerate_labelled_graphs(n: int, connected_only: bool = False, cap: int = 6) -> Iterator[LabelledGraph]:
    """All 2^C(n,2) labelled graphs on [n] (optionally connected ones only)."""
    if not 1 <= n <= cap:
        raise ValueError(f"vertex count {n} outside [1, {cap}]")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for mask in range(1 << len(pairs)):
        g = LabelledGraph(n, [e for k, e in enumerate(pairs) if mask >> k & 1])
        if connected_only and not g.is_connected():
            continue
        yield g


# ---------------------------------------------------------------------------
# graph families


def path(d: int) -> LabelledGraph:
    if d < 1:
        raise ValueError(f"path needs d >= 1, got d={d}")
    return LabelledGraph(d, [(i, i + 1) for i in range(1, d)])


def cycle(d: int) -> LabelledGraph:
    if d < 3:
        raise ValueError(f"cycle needs d >= 3, got d={d}")
    return LabelledGraph(d, [(i, i + 1) for i in range(1, d)] + [(1, d)])


def complete(d: int) -> LabelledGraph:
    if d < 1:
        raise ValueError(f"complete graph needs d >= 1, got d={d}")
    return LabelledGraph(d, [(i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1)])


def block_cliques(pi: SetPartition) -> LabelledGraph:
    """The graph whose connected components are cliques on the blocks of pi."""
    edges = []
    for block in pi.blocks():
        edges.extend((block[a], block[b]) for a in range(len(block)) for b in range(a + 1, len(block)))
    return LabelledGraph(pi.degree, edges)


def lollipop(m: int, n: int) -> LabelledGraph:
    """Clique on [m] with a path of n further vertices hanging off vertex m."""
    if m < 1:
        raise ValueError(f"lollipop needs m >= 1, got m={m}")
    if n < 1:
        raise ValueError(f"lollipop needs n >= 1, got n={n}")
    w = [1] * m + [i - 1 for i in range(m + 1, m + n + 1)]
    return from_unit_interval(w=w)


def melting_lollipop(m: int, n: int, k: int) -> LabelledGraph:
    """Type I melt: the lollipop with edges {1,m}, ..., {k,m} removed."""
    if m < 1 or n < 1:
        raise ValueError(f"melting lollipop needs m, n >= 1, got m={m}, n={n}")
    if not 0 <= k <= m - 1:
        raise ValueError(f"melting lollipop needs 0 <= k <= m-1, got k={k}, m={m}")
    g = lollipop(m, n)
    for j in range(1, k + 1):
        g = delete_edge(g, j, m)
    return g


def melting_lollipop_ii(m: int, n: int, k: int) -> LabelledGraph:
    """Type II melt: the lollipop with edges {1,m}, ..., {1,m-k+1} removed.

    Built by gluing the path onto a reversed melting ice cream scoop; the
    tests confirm this matches the edge-deletion description.
    """
    if m < 3:
        raise ValueError(f"type II melting lollipop needs m >= 3, got m={m}")
    if n < 1:
        raise ValueError(f"type II melting lollipop needs n >= 1, got n={n}")
    if not 1 <= k <= m - 1:
        raise ValueError(f"type II melting lollipop needs 1 <= k <= m-1, got k={k}, m={m}")
    return concatenate(reverse(melting_ice_cream(m - 1, k)), path(n + 1))


def twin_peaks(n: int) -> LabelledGraph:
    """Complete graph on [n+1] minus the edge {1, n+1}."""
    if n < 2:
        raise ValueError(f"twin peaks needs n >= 2, got n={n}")
    return delete_edge(complete(n + 1), 1, n + 1)


def melting_ice_cream(n: int, k: int) -> LabelledGraph:
    """Complete graph on [n+1] minus the edges {1,n+1}, ..., {k,n+1}."""
    if n < 2:
        raise ValueError(f"melting ice cream needs n >= 2, got n={n}")
    if not 1 <= k <= n:
        raise ValueError(f"melting ice cream needs 1 <= k <= n, got k={k}, n={n}")
    g = complete(n + 1)
    for j in range(1, k + 1):
        g = delete_edge(g, j, n + 1)
    return g


def snowy_twin_peaks(n: int, k: int) -> LabelledGraph:
    """m-sequence (k+1, n, n+1, ..., n+1) on n+1 vertices."""
    if n < 3:
        raise ValueError(f"snowy twin peaks needs n >= 3, got n={n}")
    if not 1 <= k <= n - 2:
        raise ValueError(f"snowy twin peaks needs 1 <= k <= n-2, got k={k}, n={n}")
    return from_unit_interval(m=[k + 1, n] + [n + 1] * (n - 1))


def wide_melting_lollipop(m: int, n: int, k: int) -> LabelledGraph:
    """w-sequence (1,...,1, k+1, m-1, m, ...) on m+n vertices."""
    if m < 4:
        raise ValueError(f"wide melting lollipop needs m >= 4, got m={m}")
    if n < 0:
        raise ValueError(f"wide melting lollipop needs n >= 0, got n={n}")
    if not 1 <= k <= m - 2:
        raise ValueError(f"wide melting lollipop needs 1 <= k <= m-2, got k={k}, m={m}")
    w = [1] * (m - 1) + [k + 1] + [i - 2 for i in range(m + 1, m + n + 1)]
    return from_unit_interval(w=w)


def triangular_ladder(n: int) -> LabelledGraph:
    """m-sequence min(i+2, n): each vertex reaches two steps up."""
    if n < 1:
        raise ValueError(f"triangular ladder needs n >= 1, got n={n}")
    return from_unit_interval(m=[min(i + 2, n) for i in range(1, n + 1)])


def kayak_paddle(m: int, l: int, n: int) -> LabelledGraph:
    """Two cycles joined by a path with l edges (l = 0 shares a vertex)."""
    if m < 3 or n < 3:
        raise ValueError(f"kayak paddle needs m, n >= 3, got m={m}, n={n}")
    if l < 0:
        raise ValueError(f"kayak paddle needs l >= 0, got l={l}")
    g = cycle(m)
    for _ in range(l):
        g = concatenate(g, complete(2))
    return concatenate(g, cycle(n))


FAMILIES = {
    "path": (path, ("d",)),
    "cycle": (cycle, ("d",)),
    "complete": (complete, ("d",)),
    "cliques": (block_cliques, ("pi",)),
    "lollipop": (lollipop, ("m", "n")),
    "melting-lollipop": (melting_lollipop, ("m", "n", "k")),
    "gamma": (melting_lollipop_ii, ("m", "n", "k")),
    "twin-peaks": (twin_peaks, ("n",)),
    "ice-cream": (melting_ice_cream, ("n", "k")),
    "stp": (snowy_twin_peaks, ("n", "k")),
    "wl": (wide_melting_lollipop, ("m", "n", "k")),
    "tl": (triangular_ladder, ("n",)),
    "kayak": (kayak_paddle, ("m", "l", "n")),
}

FAMILY_ALIASES = {
    "melting-lollipop-ii": "gamma",
    "ml": "melting-lollipop",
    "ic": "ice-cream",
    "melting-ice-cream": "ice-cream",
    "snowy-twin-peaks": "stp",
    "wide-melting-lollipop": "wl",
    "triangular-ladder": "tl",
    "kayak-paddle": "kayak",
    "tp": "twin-peaks",
}


def family(name: str, **params) -> LabelledGraph:
    """Dispatch to a family constructor by CLI/JSON name."""
    key = FAMILY_ALIASES.get(name, name)
    if key not in FAMILIES:
        known = ", ".join(sorted(FAMILIES))
        raise ValueError(f"unknown family {name!r}; known: {known}")
    builder, wanted = FAMILIES[key]
    missing = [p for p in wanted if p not in params]
    extra = [p for p in params if p not in wanted]
    if missing or extra:
        raise ValueError(
            f"family {key!r} takes params {wanted}; missing {missing or 'none'}, unexpected {extra or 'none'}"
        )
    args = []
    for p in wanted:
        value = params[p]
        if p == "pi":
            args.append(value if isinstance(value, SetPartition) else SetPartition.parse(str(value)))
        else:
            args.append(int(value))
    return builder(*args)


# ---------------------------------------------------------------------------
# graph surgery


def relabel(g: LabelledGraph, delta: tuple) -> LabelledGraph:
    """Apply a permutation of [n] (one-line notation) to the vertex labels."""
    if sorted(delta) != list(range(1, g.n + 1)):
        raise ValueError(f"not a permutation of [{g.n}]: {delta!r}")
    return LabelledGraph(g.n, [(delta[i - 1], delta[j - 1]) for i, j in g.edges])


def reverse(g: LabelledGraph) -> LabelledGraph:
    """Relabel i to n+1-i."""
    return relabel(g, tuple(range(g.n, 0, -1)))


def disjoint_union(g: LabelledGraph, h: LabelledGraph) -> LabelledGraph:
    """g on [n], then h shifted to labels n+1, ..., n+m."""
    shift = g.n
    return LabelledGraph(
        g.n + h.n, list(g.edges) + [(i + shift, j + shift) for i, j in h.edges]
    )


def concatenate(g: LabelledGraph, h: LabelledGraph) -> LabelledGraph:
    """Identify the last vertex of g with the first vertex of h."""
    shift = g.n - 1
    return LabelledGraph(
        g.n + h.n - 1, list(g.edges) + [(i + shift, j + shift) for i, j in h.edges]
    )


def delete_edge(g: LabelledGraph, i: int, j: int) -> LabelledGraph:
    if i > j:
        i, j = j, i
    if (i, j) not in g._edge_set():
        raise ValueError(f"edge ({i},{j}) not in graph")
    return LabelledGraph(g.n, [e for e in g.edges if e != (i, j)])


def contract_to_j(g: LabelledGraph, j: int) -> LabelledGraph:
    """Identify the last vertex with j < last, keeping the label j.

    Needs the edge {j, n} present; parallel edges merge (simple result).
    """
    d = g.n
    if not 1 <= j < d:
        raise ValueError(f"need 1 <= j < {d}, got j={j}")
    if (j, d) not in g._edge_set():
        raise ValueError(f"edge ({j},{d}) not in graph")
    edges = []
    for a, b in g.edges:
        if (a, b) == (j, d):
            continue
        a2 = j if a == d else a
        b2 = j if b == d else b
        if a2 != b2:
            edges.append((a2, b2))
    return LabelledGraph(d - 1, edges)


def delete_vertex(g: LabelledGraph, v: int) -> LabelledGraph:
    """Drop v and its edges; labels above v shift down by one."""
    if not 1 <= v <= g.n:
        raise ValueError(f"vertex {v} not in [1, {g.n}]")
    if g.n == 1:
        raise ValueError("refusing to produce an empty graph")
    edges = [
        (i - (i > v), j - (j > v))
        for i, j in g.edges
        if v not in (i, j)
    ]
    return LabelledGraph(g.n - 1, edges)


# ---------------------------------------------------------------------------
# chromatic polynomial (integer deletion-contraction; used as the
# independent count of acyclic orientations and by the test oracles)


def chromatic_polynomial_at(g: LabelledGraph, x: int) -> int:
    """Value of the chromatic polynomial at an integer point."""
    memo: dict = {}

    def value(n, edges):
        if not edges:
            return x ** n
        key = (n, edges)
        if key not in memo:
            a, b = edges[0]
            rest = edges[1:]
            contracted = set()
            for u, v in rest:
                u2 = a if u == b else u
                v2 = a if v == b else v
                if u2 == v2:
                    continue
                u2 -= u2 > b
                v2 -= v2 > b
                contracted.add((u2, v2) if u2 < v2 else (v2, u2))
            memo[key] = value(n, rest) - value(n - 1, tuple(sorted(contracted)))
        return memo[key]

    return value(g.n, g.edges)


def count_acyclic_orientations(g: LabelledGraph) -> int:
    """|chromatic polynomial at -1|; independent of the enumerator."""
    return abs(chromatic_polynomial_at(g, -1))


# ---------------------------------------------------------------------------
# acyclic orientations


class AcyclicOrientation:
    """An acyclic orientation of a labelled graph.

    directed[k] orients graph.edges[k]: the pair (u, v) means u -> v.  Read
    as a poset, u comes before v when a directed path leads from u to v, so
    the sinks are exactly the maximal elements.
    """

    __slots__ = ("graph", "directed")

    def __init__(self, graph: LabelledGraph, directed: tuple):
        directed = tuple(directed)
        if len(directed) != len(graph.edges):
            raise ValueError("one direction per edge required")
        for (i, j), (u, v) in zip(graph.edges, directed):
            if {i, j} != {u, v}:
                raise ValueError(f"direction ({u},{v}) does not match edge ({i},{j})")
        # topological check: every DAG has a vertex of out-degree zero
        out = {v: set() for v in range(1, graph.n + 1)}
        indeg = {v: 0 for v in range(1, graph.n + 1)}
        for u, v in directed:
            out[u].add(v)
            indeg[v] += 1
        ready = [v for v in indeg if indeg[v] == 0]
        seen = 0
        while ready:
            u = ready.pop()
            seen += 1
            for v in out[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    ready.append(v)
        if seen != graph.n:
            raise ValueError("directions contain a directed cycle")
        self.graph = graph
        self.directed = directed

    def sinks(self) -> tuple:
        tails = {u for u, _ in self.directed}
        return tuple(v for v in range(1, self.graph.n + 1) if v not in tails)

    def is_sink(self, v: int) -> bool:
        return all(u != v for u, _ in self.directed)

    def above(self, v: int) -> frozenset:
        """Vertices reachable from v by directed paths (strictly above v)."""
        succ: dict = {u: [] for u in range(1, self.graph.n + 1)}
        for u, w in self.directed:
            succ[u].append(w)
        found: set = set()
        stack = [v]
        while stack:
            u = stack.pop()
            for w in succ[u]:
                if w not in found:
                    found.add(w)
                    stack.append(w)
        found.discard(v)
        return frozenset(found)

    def __eq__(self, other):
        return (
            isinstance(other, AcyclicOrientation)
            and self.graph == other.graph
            and self.directed == other.directed
        )

    def __hash__(self):
        return hash((self.graph, self.directed))

    def __repr__(self):
        return f"AcyclicOrientation({self.graph!r}, {list(self.directed)})"


def enumerate_acyclic_orientations(g: LabelledGraph, cap: int = DEFAULT_EDGE_CAP) -> Iterator[AcyclicOrientation]:
    """Backtrack over edges, pruning any direction that closes a cycle."""
    if len(g.edges) > cap:
        raise ValueError(f"{len(g.edges)} edges exceeds orientation cap {cap}")
    succ: dict = {v: [] for v in range(1, g.n + 1)}
    directed: list = []
    edges = g.edges

    def reaches(a, b):
        stack, seen = [a], {a}
        while stack:
            u = stack.pop()
            if u == b:
                return True
            for v in succ[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return False

    def assign(k):
        if k == len(edges):
            yield AcyclicOrientation(g, tuple(directed))
            return
        i, j = edges[k]
        if not reaches(j, i):
            succ[i].append(j)
            directed.append((i, j))
            yield from assign(k + 1)
            succ[i].pop()
            directed.pop()
        if not reaches(i, j):
            succ[j].append(i)
            directed.append((j, i))
            yield from assign(k + 1)
            succ[j].pop()
            directed.pop()

    yield from assign(0)


def sink_counts(g: LabelledGraph, cap: int = DEFAULT_EDGE_CAP) -> dict:
    """Map j to the number of acyclic orientations with exactly j sinks."""
    counts: Counter = Counter()
    for ao in enumerate_acyclic_orientations(g, cap):
        counts[len(ao.sinks())] += 1
    return dict(counts)


def sink_counts_at(g: LabelledGraph, v: int, cap: int = DEFAULT_EDGE_CAP) -> dict:
    """Map j to the number of acyclic orientations with j sinks, v among them."""
    if not 1 <= v <= g.n:
        raise ValueError(f"vertex {v} not in [1, {g.n}]")
    counts: Counter = Counter()
    for ao in enumerate_acyclic_orientations(g, cap):
        sinks = ao.sinks()
        if v in sinks:
            counts[len(sinks)] += 1
    return dict(counts)


def sink_counts_avoiding(g: LabelledGraph, v: int, cap: int = DEFAULT_EDGE_CAP) -> dict:
    """Sink counts of g - v over orientations with no sink inside N(v).

    The open neighbourhood of v must be a clique; the offending non-edge is
    named otherwise.
    """
    nbrs = g.neighbors(v)
    present = g._edge_set()
    for a in range(len(nbrs)):
        for b in range(a + 1, len(nbrs)):
            if (nbrs[a], nbrs[b]) not in present:
                raise ValueError(
                    f"neighbourhood of {v} is not a clique: missing edge ({nbrs[a]},{nbrs[b]})"
                )
    rest = delete_vertex(g, v)
    forbidden = {w - (w > v) for w in nbrs}
    counts: Counter = Counter()
    for ao in enumerate_acyclic_orientations(rest, cap):
        sinks = ao.sinks()
        if forbidden.isdisjoint(sinks):
            counts[len(sinks)] += 1
    return dict(counts)
