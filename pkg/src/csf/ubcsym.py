"""The quotient algebra where centred chromatic symmetric functions live.

Keys are (lam, b) pairs: b is the size of the block holding the
distinguished last position and lam collects the other block sizes.
Collapsing set partitions to these types is compatible with products,
induction and basis changes, so everything upstairs has a small shadow
here: the chromatic element of a graph on n vertices needs at most
one key per (partition, marked part) pair instead of one per set
partition.

Internal canonical basis is p, as upstairs.  The e-to-p columns come
from a closed product formula for complete graphs; the reverse
direction is a back-substitution along the order "b ascending, then
number of lam parts descending", which is triangular because a product
of complete-graph expansions can only shrink b or split parts of lam.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from numbers import Rational

from .core import (
    BType,
    SetPartition,
    btypes_of_degree,
    lam_factorial,
    lam_union,
    moebius,
    type_of,
)
from .graphs import (
    LabelledGraph,
    contract_to_j,
    delete_edge,
    delete_vertex,
    relabel,
)
from .ncsym import NCSymElement, Y_of, coarsenings_of
from .sym import SymElement

# number of keys per degree grows like partitions, not Bell numbers,
# but the m-basis columns still enumerate coarsenings upstairs
DEGREE_CAP = 12
M_DEGREE_CAP = 9

# the subgraph expansion walks forests of the edge list
EDGE_CAP = 36

BASES = ("e", "p", "m")

ENGINES = ("subsets", "delcon", "oracle")


def _as_key(key, degree: int) -> BType:
    if not isinstance(key, BType):
        lam, b = key
        key = BType(tuple(lam), b)
    if key.b < 1:
        raise ValueError(f"marked part must be positive, got {key.b}")
    if any(p < 1 for p in key.lam) or list(key.lam) != sorted(key.lam, reverse=True):
        raise ValueError(f"{key.lam} is not a weakly decreasing positive tuple")
    if key.degree != degree:
        raise ValueError(f"key {key} has degree {key.degree}, element has {degree}")
    return key


class UBCSymElement:
    """One homogeneous component, keyed by (lam, b) types."""

    __slots__ = ("degree", "basis", "terms")

    def __init__(self, degree: int, basis: str, terms=()):
        if basis not in BASES:
            raise ValueError(f"unsupported basis {basis!r}")
        if degree < 1:
            raise ValueError(f"degree must be positive, got {degree}")
        clean: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for key, c in items:
            key = _as_key(key, degree)
            c = Fraction(c)
            if c:
                clean[key] = clean.get(key, Fraction(0)) + c
        self.degree = degree
        self.basis = basis
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def single(cls, basis: str, key, coeff=1) -> "UBCSymElement":
        key = _as_key(key, sum(key[0]) + key[1])
        return cls(key.degree, basis, {key: Fraction(coeff)})

    def coefficient(self, key) -> Fraction:
        return self.terms.get(_as_key(key, self.degree), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list:
        """Terms ordered by b ascending, then lam lexicographically
        descending (longer first on prefix ties)."""
        d = self.degree

        def key(item):
            lam, b = item[0]
            return (b, tuple(-p for p in lam) + (0,) * (d - len(lam)))

        return sorted(self.terms.items(), key=key)

    def __add__(self, other: "UBCSymElement") -> "UBCSymElement":
        assert self.degree == other.degree and self.basis == other.basis
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return UBCSymElement(self.degree, self.basis, out)

    def __sub__(self, other: "UBCSymElement") -> "UBCSymElement":
        return self + (-1) * other

    def __neg__(self) -> "UBCSymElement":
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, Rational):
            return UBCSymElement(
                self.degree, self.basis, {k: v * other for k, v in self.terms.items()}
            )
        assert self.basis == other.basis
        if self.basis == "m":
            left = change_basis(self, "p")
            right = change_basis(other, "p")
            return change_basis(left * right, "m")
        # the marked part of the left factor becomes an ordinary part
        out: dict = {}
        for (lam, b), c in self.terms.items():
            left = lam_union(lam, (b,))
            for (mu, d), e in other.terms.items():
                key = BType(lam_union(left, mu), d)
                out[key] = out.get(key, Fraction(0)) + c * e
        return UBCSymElement(self.degree + other.degree, self.basis, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, UBCSymElement)
            and self.degree == other.degree
            and self.basis == other.basis
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return f"UBCSymElement({self.degree}, {self.basis!r}, 0)"
        bits = []
        for (lam, b), c in self.sorted_terms():
            lam_text = ",".join(map(str, lam))
            bits.append(f"{c}*{self.basis}[({lam_text});{b}]")
        return " + ".join(bits)


class SinkPolynomial:
    """Polynomial in t; for graph-derived instances the coefficient of
    t^j counts acyclic orientations with j sinks."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        clean: dict = {}
        for j, c in items:
            if j < 0:
                raise ValueError(f"negative exponent {j}")
            c = Fraction(c)
            if c:
                clean[j] = clean.get(j, Fraction(0)) + c
        self.terms = {k: v for k, v in clean.items() if v}

    def coefficient(self, j: int) -> Fraction:
        return self.terms.get(j, Fraction(0))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, SinkPolynomial) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "SinkPolynomial(0)"
        bits = []
        for j in sorted(self.terms, reverse=True):
            c = self.terms[j]
            power = "t" if j == 1 else f"t^{j}"
            if j == 0:
                bits.append(f"{c}")
            elif c == 1:
                bits.append(power)
            else:
                bits.append(f"{c}*{power}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# projection from the noncommuting-variable algebra


def proj_ubc(x: NCSymElement) -> UBCSymElement:
    """Collapse set-partition keys to their types, any basis."""
    out: dict = {}
    for pi, c in x.terms.items():
        key = type_of(pi)
        out[key] = out.get(key, Fraction(0)) + c
    return UBCSymElement(x.degree, x.basis, out)


@lru_cache(maxsize=None)
def canonical_lift(t: BType) -> SetPartition:
    """One set partition of type t: lam blocks of consecutive labels in
    decreasing size, then the marked block holding the top label."""
    blocks = []
    next_label = 1
    for part in t.lam + (t.b,):
        blocks.append(tuple(range(next_label, next_label + part)))
        next_label += part
    return SetPartition.from_blocks(blocks)


# ---------------------------------------------------------------------------
# the centred chromatic element, three ways


def _move_last(g: LabelledGraph, v: int) -> LabelledGraph:
    """Relabel so v becomes the last vertex, preserving the others' order."""
    n = g.n
    if v == n:
        return g
    delta = tuple(n if i == v else i - (i > v) for i in range(1, n + 1))
    return relabel(g, delta)


def _subset_terms(g: LabelledGraph) -> dict:
    """Signed edge-subset expansion accumulated at type granularity."""
    n = g.n
    comp = list(range(n))
    terms: dict = {}
    edges = g.edges

    def rec(k, sign):
        if k == len(edges):
            sizes = Counter(comp)
            b = sizes.pop(comp[n - 1])
            key = BType(tuple(sorted(sizes.values(), reverse=True)), b)
            terms[key] = terms.get(key, 0) + sign
            return
        i, j = edges[k]
        a, b = comp[i - 1], comp[j - 1]
        if a == b:
            return
        rec(k + 1, sign)
        changed = [idx for idx in range(n) if comp[idx] == b]
        for idx in changed:
            comp[idx] = a
        rec(k + 1, -sign)
        for idx in changed:
            comp[idx] = b

    rec(0, 1)
    return {k: v for k, v in terms.items() if v}


_DELCON: dict = {}


def _delcon_terms(g: LabelledGraph) -> dict:
    """Deletion-contraction on the last vertex, memoized on the graph.

    Contracting an edge {j, n} relabels the merged vertex to the end;
    induction then bumps b.  An isolated last vertex splits off as a
    fresh singleton marked block.
    """
    found = _DELCON.get(g)
    if found is not None:
        return found
    n = g.n
    if n == 1:
        out = {BType((), 1): 1}
    else:
        nbrs = g.neighbors(n)
        if not nbrs:
            out = {}
            for t, c in _delcon_terms(delete_vertex(g, n)).items():
                key = BType(lam_union(t.lam, (t.b,)), 1)
                out[key] = out.get(key, 0) + c
        else:
            j = nbrs[-1]
            out = dict(_delcon_terms(delete_edge(g, j, n)))
            merged = contract_to_j(g, j)
            delta = tuple(n - 1 if i == j else i - (i > j) for i in range(1, n))
            for t, c in _delcon_terms(relabel(merged, delta)).items():
                key = BType(t.lam, t.b + 1)
                out[key] = out.get(key, 0) - c
            out = {k: v for k, v in out.items() if v}
    _DELCON[g] = out
    return out


def y_centred(
    g: LabelledGraph, v: int, engine: str = "subsets", cap: int = EDGE_CAP
) -> UBCSymElement:
    """Chromatic element of g with vertex v distinguished, p-basis.

    The result only depends on the unlabelled graph and the choice of v;
    internally v is relabelled to the last position.
    """
    if not 1 <= v <= g.n:
        raise ValueError(f"vertex {v} not in [1, {g.n}]")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; pick one of {ENGINES}")
    if len(g.edges) > cap:
        raise ValueError(f"{len(g.edges)} edges exceeds expansion cap {cap}")
    moved = _move_last(g, v)
    if engine == "oracle":
        return proj_ubc(Y_of(moved))
    terms = _subset_terms(moved) if engine == "subsets" else _delcon_terms(moved)
    return UBCSymElement(g.n, "p", {t: Fraction(c) for t, c in terms.items()})


# ---------------------------------------------------------------------------
# basis changes


@lru_cache(maxsize=None)
def complete_p_terms(k: int) -> dict:
    """p-expansion of the chromatic element of the complete graph on k
    vertices, in closed form.

    The coefficient of p_(lam,b) counts, with sign, the edge subsets
    whose components induce that type: pick the marked component
    through the top vertex, distribute the rest, and weight each
    component of size s by the signed connected-subgraph count
    (-1)^(s-1) (s-1)!.
    """
    assert k >= 1
    out = {}
    for t in btypes_of_degree(k):
        lam, b = t
        signed = 1
        for s in lam + (b,):
            signed *= (-1) ** (s - 1) * factorial(s - 1)
        repeats = 1
        for m in Counter(lam).values():
            repeats *= factorial(m)
        coeff = Fraction(
            signed * comb(k - 1, b - 1) * factorial(k - b),
            lam_factorial(lam) * repeats,
        )
        assert coeff.denominator == 1
        out[t] = int(coeff)
    return out


@lru_cache(maxsize=None)
def _e_column(t: BType) -> dict:
    """p-expansion of the e-basis element of type t: the product of the
    complete-graph expansions of its parts, marked part last."""
    factors = list(t.lam) + [t.b]
    acc = dict(complete_p_terms(factors[0]))
    for k in factors[1:]:
        nxt: dict = {}
        for (lam1, b1), c1 in acc.items():
            left = lam_union(lam1, (b1,))
            for (lam2, b2), c2 in complete_p_terms(k).items():
                key = BType(lam_union(left, lam2), b2)
                nxt[key] = nxt.get(key, 0) + c1 * c2
        acc = nxt
    return acc


@lru_cache(maxsize=None)
def _solve_order(d: int) -> tuple:
    """Total order making the e-to-p matrix triangular: the column of
    e_(lam,b) only touches keys with smaller b, or equal b and more
    lam parts."""
    return tuple(
        sorted(btypes_of_degree(d), key=lambda t: (t.b, -len(t.lam), t.lam))
    )


@lru_cache(maxsize=None)
def _p_to_m_column(t: BType) -> tuple:
    lift = canonical_lift(t)
    out: dict = {}
    for sigma in coarsenings_of(lift):
        key = type_of(sigma)
        out[key] = out.get(key, 0) + 1
    return tuple(out.items())


@lru_cache(maxsize=None)
def _m_to_p_column(t: BType) -> tuple:
    lift = canonical_lift(t)
    out: dict = {}
    for sigma in coarsenings_of(lift):
        key = type_of(sigma)
        out[key] = out.get(key, 0) + moebius(lift, sigma)
    return tuple((k, v) for k, v in out.items() if v)


def change_basis(x: UBCSymElement, target: str, cap: int = DEGREE_CAP) -> UBCSymElement:
    """Exact change of basis; round trips are the identity."""
    if target not in BASES:
        raise ValueError(f"unsupported basis {target!r}")
    if target == x.basis:
        return x
    if x.degree > cap:
        raise ValueError(f"degree {x.degree} exceeds basis-change cap {cap}")
    if "m" in (target, x.basis) and x.degree > M_DEGREE_CAP:
        raise ValueError(
            f"degree {x.degree} exceeds m-basis cap {M_DEGREE_CAP}"
        )
    in_p = _to_p(x)
    if target == "p":
        return in_p
    return _p_to_e(in_p) if target == "e" else _p_to_m(in_p)


def _to_p(x: UBCSymElement) -> UBCSymElement:
    if x.basis == "p":
        return x
    out: dict = {}
    if x.basis == "e":
        for t, c in x.terms.items():
            for s, v in _e_column(t).items():
                out[s] = out.get(s, Fraction(0)) + c * v
    else:
        for t, c in x.terms.items():
            for s, v in _m_to_p_column(t):
                out[s] = out.get(s, Fraction(0)) + c * v
    return UBCSymElement(x.degree, "p", out)


def _p_to_m(x: UBCSymElement) -> UBCSymElement:
    out: dict = {}
    for t, c in x.terms.items():
        for s, v in _p_to_m_column(t):
            out[s] = out.get(s, Fraction(0)) + c * v
    return UBCSymElement(x.degree, "m", out)


def _p_to_e(x: UBCSymElement) -> UBCSymElement:
    # back-substitution, latest key of the triangular order first
    remaining = dict(x.terms)
    out: dict = {}
    for t in reversed(_solve_order(x.degree)):
        c = remaining.pop(t, None)
        if not c:
            continue
        column = _e_column(t)
        a = c / column[t]
        out[t] = a
        for s, v in column.items():
            if s == t:
                continue
            value = remaining.get(s, Fraction(0)) - a * v
            if value:
                remaining[s] = value
            else:
                remaining.pop(s, None)
    assert not remaining
    return UBCSymElement(x.degree, "e", out)


# ---------------------------------------------------------------------------
# linear maps


def induct(x: UBCSymElement) -> UBCSymElement:
    """Duplicate the last position: degree d -> d+1.

    On p-keys the new position joins the marked block.  On e-keys the
    rule splits: (1/b) e_(lam+(b),1) - (1/b) e_(lam,b+1).
    """
    if x.basis == "m":
        return change_basis(induct(change_basis(x, "p")), "m")
    out: dict = {}
    if x.basis == "p":
        for (lam, b), c in x.terms.items():
            out[BType(lam, b + 1)] = c
        return UBCSymElement(x.degree + 1, "p", out)
    for (lam, b), c in x.terms.items():
        share = c * Fraction(1, b)
        first = BType(lam_union(lam, (b,)), 1)
        second = BType(lam, b + 1)
        out[first] = out.get(first, Fraction(0)) + share
        out[second] = out.get(second, Fraction(0)) - share
    return UBCSymElement(x.degree + 1, "e", out)


def append_complete(x: UBCSymElement, n: int) -> UBCSymElement:
    """Image of x under "glue a complete graph of order n onto the last
    vertex"; sends the chromatic element of G to that of G with the
    clique attached.  e-basis in and out."""
    if n < 1:
        raise ValueError(f"appended clique order must be >= 1, got {n}")
    x = change_basis(x, "e")
    if n == 1:
        return x
    m = n - 1
    out: dict = {}
    for (lam, b), c in x.terms.items():
        for i in range(m):
            pref = c * Fraction(
                factorial(m - 1) * factorial(b - 1),
                factorial(m - i - 1) * factorial(b + i),
            )
            first = BType(lam_union(lam, (b + i,)), m - i)
            out[first] = out.get(first, Fraction(0)) + pref * (b - m + i)
            tail = m - i - 1
            second = BType(lam_union(lam, (tail,)) if tail else lam, b + i + 1)
            out[second] = out.get(second, Fraction(0)) + pref * (i + 1)
    return UBCSymElement(x.degree + m, "e", out)


def append_complete_inducted(x: UBCSymElement, n: int) -> UBCSymElement:
    """Glue a complete graph of order n onto the last vertex, keep the
    gluing vertex distinguished, then duplicate it.  Adding this to
    append_complete(x, n+1) removes the far edge of the appended
    clique, by deletion-contraction.  e-basis in and out."""
    if n < 1:
        raise ValueError(f"appended clique order must be >= 1, got {n}")
    x = change_basis(x, "e")
    out: dict = {}
    for (lam, b), c in x.terms.items():
        for i in range(n):
            pref = c * Fraction(
                factorial(n - 1) * factorial(b - 1),
                factorial(n - i - 1) * factorial(b + i),
            )
            first = BType(lam_union(lam, (b + i,)), n - i)
            out[first] = out.get(first, Fraction(0)) + pref
            tail = n - i - 1
            second = BType(lam_union(lam, (tail,)) if tail else lam, b + i + 1)
            out[second] = out.get(second, Fraction(0)) - pref
    return UBCSymElement(x.degree + n, "e", out)


@lru_cache(maxsize=None)
def _graph_p_terms(h: LabelledGraph) -> tuple:
    return tuple(Y_of(h).terms.items())


@lru_cache(maxsize=None)
def _append_column(t: BType, h: LabelledGraph) -> tuple:
    """Image of p_t under gluing h at the last position: merge the block
    structure of a lift of t with each signed component partition of a
    spanning subgraph of h, overlapping at one vertex."""
    d = t.degree
    total = d + h.n - 1
    blocks = list(canonical_lift(t).blocks())
    out: dict = {}
    for sigma, w in _graph_p_terms(h):
        parent = list(range(total))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        groups = blocks + [
            tuple(d + v - 1 for v in block) for block in sigma.blocks()
        ]
        for group in groups:
            root = find(group[0] - 1)
            for v in group[1:]:
                other = find(v - 1)
                if other != root:
                    parent[other] = root
        sizes = Counter(find(a) for a in range(total))
        b = sizes.pop(find(total - 1))
        key = BType(tuple(sorted(sizes.values(), reverse=True)), b)
        out[key] = out.get(key, Fraction(0)) + w
    return tuple((k, v) for k, v in out.items() if v)


def append_graph(x: UBCSymElement, h: LabelledGraph) -> UBCSymElement:
    """Linear map sending the chromatic element of G to that of G glued
    to h (last vertex of G identified with first vertex of h); works on
    any element via its p-expansion."""
    x = change_basis(x, "p")
    out: dict = {}
    for t, c in x.terms.items():
        for key, w in _append_column(t, h):
            out[key] = out.get(key, Fraction(0)) + c * w
    return UBCSymElement(x.degree + h.n - 1, "p", out)


# ---------------------------------------------------------------------------
# maps into ordinary symmetric functions and sink counts


def proj_sym(x: UBCSymElement) -> SymElement:
    """Forget the marking: e_(lam,b) -> lam! b! e_{lam+(b)} and
    p_(lam,b) -> p_{lam+(b)}."""
    if x.basis == "m":
        raise ValueError("convert away from the m basis first")
    out: dict = {}
    for (lam, b), c in x.terms.items():
        key = lam_union(lam, (b,))
        value = c * lam_factorial(lam) * factorial(b) if x.basis == "e" else c
        out[key] = out.get(key, Fraction(0)) + value
    return SymElement(x.degree, x.basis, out)


def theta(x: UBCSymElement) -> SymElement:
    """Delete the distinguished position: degree drops by one.

    p-rule: keep p_lam exactly when the marked block is a singleton.
    e-rule: (lam, b) -> lam! (b-1)! e_{lam+(b-1)}.
    """
    if x.basis == "m":
        x = change_basis(x, "p")
    out: dict = {}
    if x.basis == "p":
        for (lam, b), c in x.terms.items():
            if b == 1:
                out[lam] = out.get(lam, Fraction(0)) + c
    else:
        for (lam, b), c in x.terms.items():
            key = lam_union(lam, (b - 1,)) if b > 1 else lam
            out[key] = out.get(key, Fraction(0)) + c * lam_factorial(lam) * factorial(b - 1)
    return SymElement(x.degree - 1, x.basis, out)


def phi(x: UBCSymElement) -> SinkPolynomial:
    """e_(lam,b) -> lam! (b-1)! t^(len(lam)+1); on chromatic elements the
    coefficient of t^j counts acyclic orientations with j sinks, the
    distinguished vertex among them."""
    x = change_basis(x, "e")
    out: dict = {}
    for (lam, b), c in x.terms.items():
        j = len(lam) + 1
        out[j] = out.get(j, Fraction(0)) + c * lam_factorial(lam) * factorial(b - 1)
    return SinkPolynomial(out)


def sink_avoiding_from_coeffs(x: UBCSymElement) -> dict:
    """j -> sum of c * lam! over e-keys with b == 1 and len(lam) == j.

    On the chromatic element centred at v this counts acyclic
    orientations of the graph minus v, by sinks, none of which lie in
    the old neighbourhood of v.
    """
    x = change_basis(x, "e")
    out: dict = {}
    for (lam, b), c in x.terms.items():
        if b != 1:
            continue
        j = len(lam)
        out[j] = out.get(j, Fraction(0)) + c * lam_factorial(lam)
    return {j: v for j, v in out.items() if v}


def is_e_positive(x: UBCSymElement):
    """(ok, witness): witness is the most negative e-key when not ok."""
    xe = change_basis(x, "e")
    worst = None
    worst_value = Fraction(0)
    for t in _sorted_keys(xe):
        c = xe.terms[t]
        if c < worst_value:
            worst, worst_value = t, c
    return (worst is None, worst)


def _sorted_keys(x: UBCSymElement) -> list:
    return [t for t, _ in x.sorted_terms()]


# ---------------------------------------------------------------------------
# arithmetic progressions


def verify_progression(graphs, vertex="last", via: str = "y") -> bool:
    """True when the chromatic elements of the listed graphs form an
    arithmetic progression; equivalently each member is the convex
    combination ((k-j)/k) first + (j/k) last.

    vertex is "last" or an explicit common vertex; via "y" compares in
    the quotient, via "x" compares images in ordinary symmetric
    functions.
    """
    if len(graphs) < 2:
        raise ValueError(f"need at least two graphs, got {len(graphs)}")
    if via not in ("y", "x"):
        raise ValueError(f"unknown comparison {via!r}; pick 'y' or 'x'")
    n = graphs[0].n
    for g in graphs:
        if g.n != n:
            raise ValueError(
                f"vertex counts differ across the sequence: {g.n} != {n}"
            )
    elems = []
    for g in graphs:
        v = g.n if vertex == "last" else vertex
        y = y_centred(g, v)
        elems.append(proj_sym(y) if via == "x" else y)
    k = len(elems) - 1
    diff = elems[1] - elems[0]
    ok = all(elems[j + 1] - elems[j] == diff for j in range(1, k))
    convex = all(
        k * elems[j] == (k - j) * elems[0] + j * elems[k] for j in range(k + 1)
    )
    assert ok == convex
    return ok
