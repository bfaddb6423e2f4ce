"""Symmetric functions in noncommuting variables at oracle scale.

Elements are sparse maps from set partitions of [d] to exact rationals,
tagged with a basis letter (e, p or m).  The internal canonical basis is
p: products, induction and the subgraph expansion of chromatic elements
are all p-natural.  The e-to-p columns come from expanding a clique per
block, where the signed connected-subgraph count of a merged block of
size k is (-1)^(k-1) (k-1)!; coarsening and Moebius inversion give p<->m.
The reverse direction p->e is a triangular solve along block counts, so
its coefficients are genuinely rational, not integer.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _iproduct
from numbers import Rational

from .core import (
    SetPartition,
    enumerate_set_partitions,
    moebius,
    moebius_bottom,
    permute,
    slash_product,
)
from .graphs import LabelledGraph
from .sym import SymElement

# Bell(8) = 4140 keys per degree; basis changes refuse to go further
DEGREE_CAP = 8

# subgraph expansion walks up to 2^|E| edge subsets before pruning
Y_EDGE_CAP = 21

BASES = ("e", "p", "m")


class NCSymElement:
    """One homogeneous component, keyed by set partitions of [degree]."""

    __slots__ = ("degree", "basis", "terms")

    def __init__(self, degree: int, basis: str, terms=()):
        if basis not in BASES:
            raise ValueError(f"unsupported basis {basis!r}")
        if degree < 1:
            raise ValueError(f"degree must be positive, got {degree}")
        clean: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for pi, c in items:
            if pi.degree != degree:
                raise ValueError(f"key {pi} has degree {pi.degree}, element has {degree}")
            c = Fraction(c)
            if c:
                clean[pi] = clean.get(pi, Fraction(0)) + c
        self.degree = degree
        self.basis = basis
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def single(cls, basis: str, pi: SetPartition, coeff=1) -> "NCSymElement":
        return cls(pi.degree, basis, {pi: Fraction(coeff)})

    def coefficient(self, pi: SetPartition) -> Fraction:
        return self.terms.get(pi, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NCSymElement") -> "NCSymElement":
        assert self.degree == other.degree and self.basis == other.basis
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return NCSymElement(self.degree, self.basis, out)

    def __sub__(self, other: "NCSymElement") -> "NCSymElement":
        return self + (-1) * other

    def __neg__(self) -> "NCSymElement":
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, Rational):
            return NCSymElement(
                self.degree, self.basis, {k: v * other for k, v in self.terms.items()}
            )
        assert self.basis == other.basis
        if self.basis == "m":
            # the monomial basis is not multiplicative under the slash product
            left = change_basis(self, "p")
            right = change_basis(other, "p")
            return change_basis(left * right, "m")
        out: dict = {}
        for pi, c in self.terms.items():
            for sigma, e in other.terms.items():
                key = slash_product(pi, sigma)
                out[key] = out.get(key, Fraction(0)) + c * e
        return NCSymElement(self.degree + other.degree, self.basis, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, NCSymElement)
            and self.degree == other.degree
            and self.basis == other.basis
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return f"NCSymElement({self.degree}, {self.basis!r}, 0)"
        bits = [
            f"{c}*{self.basis}[{pi}]"
            for pi, c in sorted(self.terms.items(), key=lambda t: t[0].assign)
        ]
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# transition columns (cached per key / per degree)

_REFINEMENTS: dict = {}
_COARSENINGS: dict = {}
_SOLVE_ORDER: dict = {}


def refinements_of(pi: SetPartition) -> tuple:
    """All set partitions refining pi, via set partitions of each block."""
    if pi not in _REFINEMENTS:
        per_block = []
        for block in pi.blocks():
            ways = []
            for sp in enumerate_set_partitions(len(block)):
                ways.append([tuple(block[i - 1] for i in sub) for sub in sp.blocks()])
            per_block.append(ways)
        found = []
        for choice in _iproduct(*per_block):
            blocks = [b for way in choice for b in way]
            found.append(SetPartition.from_blocks(blocks))
        _REFINEMENTS[pi] = tuple(found)
    return _REFINEMENTS[pi]


def coarsenings_of(pi: SetPartition) -> tuple:
    """All set partitions coarsening pi, via set partitions of the block list."""
    if pi not in _COARSENINGS:
        blocks = pi.blocks()
        found = []
        for grouping in enumerate_set_partitions(len(blocks)):
            merged = [
                tuple(sorted(e for i in group for e in blocks[i - 1]))
                for group in grouping.blocks()
            ]
            found.append(SetPartition.from_blocks(merged))
        _COARSENINGS[pi] = tuple(found)
    return _COARSENINGS[pi]


def _solve_order(d: int) -> tuple:
    """All set partitions of [d], coarsest first (block count ascending)."""
    if d not in _SOLVE_ORDER:
        parts = sorted(enumerate_set_partitions(d), key=lambda s: (s.length, s.assign))
        _SOLVE_ORDER[d] = tuple(parts)
    return _SOLVE_ORDER[d]


def change_basis(x: NCSymElement, target: str, cap: int = DEGREE_CAP) -> NCSymElement:
    """Exact change of basis; round trips are the identity."""
    if target not in BASES:
        raise ValueError(f"unsupported basis {target!r}")
    if target == x.basis:
        return x
    if x.degree > cap:
        raise ValueError(f"degree {x.degree} exceeds basis-change cap {cap}")
    in_p = _to_p(x)
    if target == "p":
        return in_p
    return _p_to_e(in_p) if target == "e" else _p_to_m(in_p)


def _to_p(x: NCSymElement) -> NCSymElement:
    if x.basis == "p":
        return x
    out: dict = {}
    if x.basis == "e":
        for pi, c in x.terms.items():
            for sigma in refinements_of(pi):
                out[sigma] = out.get(sigma, Fraction(0)) + c * moebius_bottom(sigma)
    else:
        for pi, c in x.terms.items():
            for sigma in coarsenings_of(pi):
                out[sigma] = out.get(sigma, Fraction(0)) + c * moebius(pi, sigma)
    return NCSymElement(x.degree, "p", out)


def _p_to_m(x: NCSymElement) -> NCSymElement:
    out: dict = {}
    for pi, c in x.terms.items():
        for sigma in coarsenings_of(pi):
            out[sigma] = out.get(sigma, Fraction(0)) + c
    return NCSymElement(x.degree, "m", out)


def _p_to_e(x: NCSymElement) -> NCSymElement:
    # coarsest-first elimination: subtracting a column only touches
    # strictly finer keys, so one pass suffices
    remaining = dict(x.terms)
    out: dict = {}
    for pi in _solve_order(x.degree):
        c = remaining.get(pi)
        if not c:
            continue
        a = c / moebius_bottom(pi)
        out[pi] = a
        for sigma in refinements_of(pi):
            value = remaining.get(sigma, Fraction(0)) - a * moebius_bottom(sigma)
            if value:
                remaining[sigma] = value
            else:
                remaining.pop(sigma, None)
    assert not remaining
    return NCSymElement(x.degree, "e", out)


# ---------------------------------------------------------------------------
# operations


def act(delta: tuple, x: NCSymElement) -> NCSymElement:
    """Relabel variable positions; sends a basis element of pi to one of
    delta(pi) in every basis."""
    if len(delta) != x.degree:
        raise ValueError(f"permutation degree {len(delta)} != element degree {x.degree}")
    out: dict = {}
    for pi, c in x.terms.items():
        key = permute(delta, pi)
        out[key] = out.get(key, Fraction(0)) + c
    return NCSymElement(x.degree, x.basis, out)


def induct(x: NCSymElement) -> NCSymElement:
    """Duplicate the last variable: degree d -> d+1, the new element
    joining the block of d.  Key-level rule for the p- and m-bases."""
    return induct_j(x, x.degree)


def induct_j(x: NCSymElement, j: int) -> NCSymElement:
    """Append a copy of position j's variable (new element d+1 joins the
    block of j)."""
    if not 1 <= j <= x.degree:
        raise ValueError(f"j={j} not in [1, {x.degree}]")
    if x.basis == "e":
        return change_basis(induct_j(change_basis(x, "p"), j), "e")
    out: dict = {}
    for pi, c in x.terms.items():
        key = SetPartition(pi.assign + (pi.assign[j - 1],))
        out[key] = out.get(key, Fraction(0)) + c
    return NCSymElement(x.degree + 1, x.basis, out)


def rho(x: NCSymElement) -> SymElement:
    """Let the variables commute: e keys pick up the factor pi!, p keys
    map straight to their block-size partition."""
    if x.basis == "m":
        raise ValueError("rho is defined here on the e- and p-bases; convert first")
    out: dict = {}
    for pi, c in x.terms.items():
        lam = pi.lambda_of()
        value = c * pi.factorial() if x.basis == "e" else c
        out[lam] = out.get(lam, Fraction(0)) + value
    return SymElement(x.degree, x.basis, out)


# ---------------------------------------------------------------------------
# chromatic elements by signed subgraph expansion


def Y_of(g: LabelledGraph, cap: int = Y_EDGE_CAP) -> NCSymElement:
    """Chromatic symmetric function in noncommuting variables, p-basis.

    Signed sum over edge subsets of p of the component partition; edges
    joining an already-merged pair cancel in include/exclude pairs, so the
    recursion prunes them and leaves only forests of the processing order.
    """
    if len(g.edges) > cap:
        raise ValueError(f"{len(g.edges)} edges exceeds subgraph-expansion cap {cap}")
    n = g.n
    comp = list(range(n))
    terms: dict = {}
    edges = g.edges

    def rec(k, sign):
        if k == len(edges):
            relabel: dict = {}
            key = SetPartition(relabel.setdefault(c, len(relabel)) for c in comp)
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
    return NCSymElement(n, "p", {k: Fraction(v) for k, v in terms.items() if v})


def X_of(g: LabelledGraph, cap: int = Y_EDGE_CAP) -> SymElement:
    """Commutative chromatic symmetric function, p-basis, by the same
    signed expansion keyed by component sizes only."""
    if len(g.edges) > cap:
        raise ValueError(f"{len(g.edges)} edges exceeds subgraph-expansion cap {cap}")
    n = g.n
    comp = list(range(n))
    sizes = [1] * n
    live = set(range(n))
    terms: dict = {}
    edges = g.edges

    def rec(k, sign):
        if k == len(edges):
            key = tuple(sorted((sizes[c] for c in live), reverse=True))
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
        old_a, old_b = sizes[a], sizes[b]
        sizes[a] = old_a + old_b
        live.discard(b)
        rec(k + 1, -sign)
        sizes[a], sizes[b] = old_a, old_b
        live.add(b)
        for idx in changed:
            comp[idx] = b

    rec(0, 1)
    return SymElement(n, "p", {k: Fraction(v) for k, v in terms.items() if v})
