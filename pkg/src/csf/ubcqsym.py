"""Marked-composition quotient of the quasisymmetric layer.

Keys here are compositions of d with one distinguished part (the part
holding the last position).  The M-basis comes from projecting ordered
set partitions to their marked types; the Q-basis is its unitriangular
companion under composition refinement and is the one that makes
positivity visible: the generating function of any labelled poset
expands in it with nonnegative integer coefficients, one count per
linear extension.

That positivity is what powers the sink counts: sending the all-ones-
then-k keys to t(t-1)^(k-1) turns the poset of an acyclic orientation
into t^(number of sinks) whenever the last vertex is a sink, and into
zero otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import chain, permutations, product
from math import comb
from numbers import Rational

from .core import (
    LabelledComposition,
    MarkedComposition,
    SetComposition,
    composition_from_set,
    compositions_of,
    marked_type_of,
)
from .graphs import AcyclicOrientation
from .ubcsym import M_DEGREE_CAP, SinkPolynomial, UBCSymElement, canonical_lift
from . import ubcsym

# linear-extension enumeration is factorial in the worst case (an
# antichain on d elements has d! of them)
POSET_CAP = 10

QBASES = ("M", "Q")


def _as_marked(key, degree: int) -> MarkedComposition:
    if not isinstance(key, MarkedComposition):
        parts, marked = key
        key = MarkedComposition(tuple(parts), marked)
    if not key.parts or any(p < 1 for p in key.parts):
        raise ValueError(f"{key.parts} is not a tuple of positive parts")
    if not 0 <= key.marked < len(key.parts):
        raise ValueError(f"marked index {key.marked} outside the {len(key.parts)} parts")
    if key.degree != degree:
        raise ValueError(f"key {key} has degree {key.degree}, element has {degree}")
    return key


class UBCQSymElement:
    """One homogeneous component, keyed by marked compositions."""

    __slots__ = ("degree", "basis", "terms")

    def __init__(self, degree: int, basis: str, terms=()):
        if basis not in QBASES:
            raise ValueError(f"unsupported basis {basis!r}")
        if degree < 1:
            raise ValueError(f"degree must be positive, got {degree}")
        clean: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for key, c in items:
            key = _as_marked(key, degree)
            c = Fraction(c)
            if c:
                clean[key] = clean.get(key, Fraction(0)) + c
        self.degree = degree
        self.basis = basis
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def single(cls, basis: str, key, coeff=1) -> "UBCQSymElement":
        key = _as_marked(key, sum(key[0]))
        return cls(key.degree, basis, {key: Fraction(coeff)})

    def coefficient(self, key) -> Fraction:
        return self.terms.get(_as_marked(key, self.degree), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list:
        """Terms in lexicographic (parts, marked) order for stable output."""
        return sorted(self.terms.items())

    def __add__(self, other: "UBCQSymElement") -> "UBCQSymElement":
        assert self.degree == other.degree and self.basis == other.basis
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return UBCQSymElement(self.degree, self.basis, out)

    def __sub__(self, other: "UBCQSymElement") -> "UBCQSymElement":
        return self + (-1) * other

    def __neg__(self) -> "UBCQSymElement":
        return (-1) * self

    def __mul__(self, other):
        assert isinstance(other, Rational)
        return UBCQSymElement(
            self.degree, self.basis, {k: v * other for k, v in self.terms.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, UBCQSymElement)
            and self.degree == other.degree
            and self.basis == other.basis
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return f"UBCQSymElement({self.degree}, {self.basis!r}, 0)"
        bits = []
        for (parts, marked), c in self.sorted_terms():
            body = ",".join(
                f"^{p}" if j == marked else str(p) for j, p in enumerate(parts)
            )
            bits.append(f"{c}*{self.basis}[{body}]")
        return " + ".join(bits)


class LabelledPoset:
    """A strict partial order on [d], stored transitively closed.

    ``less`` is the full set of pairs (a, b) with a below b.  The
    constructor closes whatever relation it is given and rejects cycles.
    """

    __slots__ = ("d", "less")

    def __init__(self, d: int, relations=()):
        if d < 1:
            raise ValueError(f"element count must be positive, got {d}")
        succ: dict = {v: set() for v in range(1, d + 1)}
        for a, b in relations:
            if not (1 <= a <= d and 1 <= b <= d):
                raise ValueError(f"relation ({a},{b}) outside [1, {d}]")
            if a == b:
                raise ValueError(f"reflexive relation ({a},{b})")
            succ[a].add(b)
        closed = set()
        for a in range(1, d + 1):
            stack, seen = list(succ[a]), set(succ[a])
            while stack:
                u = stack.pop()
                for w in succ[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if a in seen:
                raise ValueError(f"cycle through {a}; not a partial order")
            closed.update((a, b) for b in seen)
        self.d = d
        self.less = frozenset(closed)

    @classmethod
    def chain(cls, d: int) -> "LabelledPoset":
        return cls(d, [(i, i + 1) for i in range(1, d)])

    @classmethod
    def antichain(cls, d: int) -> "LabelledPoset":
        return cls(d)

    def is_less(self, a: int, b: int) -> bool:
        return (a, b) in self.less

    def maximal_elements(self) -> tuple:
        lower = {a for a, _ in self.less}
        return tuple(v for v in range(1, self.d + 1) if v not in lower)

    def is_linear_extension(self, s) -> bool:
        s = tuple(s)
        if sorted(s) != list(range(1, self.d + 1)):
            return False
        position = {v: i for i, v in enumerate(s)}
        return all(position[a] < position[b] for a, b in self.less)

    def relabel(self, delta: tuple) -> "LabelledPoset":
        """Apply delta (one-line notation, delta[i-1] = image of i)."""
        if sorted(delta) != list(range(1, self.d + 1)):
            raise ValueError(f"{delta} is not a permutation of [{self.d}]")
        return LabelledPoset(
            self.d, ((delta[a - 1], delta[b - 1]) for a, b in self.less)
        )

    def __eq__(self, other):
        return (
            isinstance(other, LabelledPoset)
            and self.d == other.d
            and self.less == other.less
        )

    def __hash__(self):
        return hash((self.d, self.less))

    def __repr__(self):
        covers = sorted(
            (a, b)
            for a, b in self.less
            if not any((a, c) in self.less and (c, b) in self.less for c in range(1, self.d + 1))
        )
        return f"LabelledPoset({self.d}, {covers!r})"


def poset_of(o: AcyclicOrientation) -> LabelledPoset:
    """Read an acyclic orientation as a poset: tail below head, closed up.

    Maximal elements are exactly the sinks of the orientation.
    """
    n = o.graph.n
    return LabelledPoset(n, ((v, w) for v in range(1, n + 1) for w in o.above(v)))


def linear_extensions(p: LabelledPoset, cap: int = POSET_CAP):
    """Yield every linear extension of p once, as one-line tuples.

    Extensions come out in lexicographic order (smallest available
    element first), so the stream is deterministic.  Branches of the
    search are independent, so workers could split on the first element;
    the single-threaded order is the canonical one.
    """
    if p.d > cap:
        raise ValueError(f"{p.d} elements exceeds extension cap {cap}")
    d = p.d
    preds = {v: {a for a, b in p.less if b == v} for v in range(1, d + 1)}

    def walk(prefix, placed, remaining):
        if not remaining:
            yield prefix
            return
        for v in sorted(remaining):
            if preds[v] <= placed:
                yield from walk(
                    prefix + (v,), placed | {v}, remaining - {v}
                )

    return walk((), frozenset(), frozenset(range(1, d + 1)))


def f_expansion(p: LabelledPoset, s) -> list:
    """One fundamental term per linear extension of p.

    The reference extension s decides where the strict inequalities go:
    reading an extension w as i_1, ..., i_d, the composition alpha cuts
    after every position j where i_j comes before i_{j+1} in s.  Summing
    the resulting fundamental series over all extensions reproduces the
    generating function of p.
    """
    s = tuple(s)
    if not p.is_linear_extension(s):
        raise ValueError(f"{s} is not a linear extension of the poset")
    position = {v: i for i, v in enumerate(s)}
    out = []
    for w in linear_extensions(p):
        cuts = frozenset(
            j + 1 for j in range(p.d - 1) if position[w[j]] < position[w[j + 1]]
        )
        out.append(LabelledComposition(w, composition_from_set(cuts, p.d)))
    return out


def _reference_extension(p: LabelledPoset) -> tuple:
    """A linear extension placing exactly the elements above d after d.

    Within the two segments elements come out in topological order with
    the smallest label first, so the choice is deterministic.  Any
    extension with this separation property gives the same Q-expansion.
    """
    d = p.d
    above = frozenset(b for a, b in p.less if a == d)

    def segment(elements):
        elements = set(elements)
        placed = []
        while elements:
            ready = min(
                v
                for v in elements
                if not any((a, v) in p.less for a in elements if a != v)
            )
            placed.append(ready)
            elements.remove(ready)
        return placed

    head = segment(v for v in range(1, d + 1) if v != d and v not in above)
    return tuple(head) + (d,) + tuple(segment(above))


def q_expansion(p: LabelledPoset) -> UBCQSymElement:
    """Expand the generating function of p over the Q-basis.

    Relabel so that the reference extension lists 1, ..., q-1, d, q, ...,
    d-1; every linear extension of the relabelled poset then lands on
    exactly one marked key: its cut pattern, marked at the part holding
    d.  Coefficients are therefore nonnegative integers.
    """
    return _q_expansion_with(p, _reference_extension(p))


def _q_expansion_with(p: LabelledPoset, s: tuple) -> UBCQSymElement:
    d = p.d
    if d > POSET_CAP:
        raise ValueError(f"{d} elements exceeds extension cap {POSET_CAP}")
    assert p.is_linear_extension(s)
    above = {b for a, b in p.less if a == d}
    assert all((v in above) == (s.index(v) > s.index(d)) for v in range(1, d + 1) if v != d)
    q = s.index(d) + 1
    relabelled = {}
    for i, v in enumerate(s, start=1):
        relabelled[v] = i if i < q else (d if i == q else i - 1)
    ep = p.relabel(tuple(relabelled[v] for v in range(1, d + 1)))

    # the reference extension of ep reads 1, ..., q-1, d, q, ..., d-1
    def rank(x):
        if x == d:
            return q
        return x if x < q else x + 1

    counts: dict = {}
    for w in linear_extensions(ep):
        cuts = frozenset(j for j in range(1, d) if rank(w[j - 1]) < rank(w[j]))
        alpha = composition_from_set(cuts, d)
        spot = w.index(d)
        start, marked = 0, None
        for k, part in enumerate(alpha):
            if start <= spot < start + part:
                marked = k
                # d is the biggest label, so it heads its descending part
                assert spot == start
                break
            start += part
        key = MarkedComposition(alpha, marked)
        counts[key] = counts.get(key, 0) + 1
    return UBCQSymElement(d, "Q", counts)


# ---------------------------------------------------------------------------
# change of basis


@lru_cache(maxsize=None)
def _q_to_m_column(key: MarkedComposition) -> tuple:
    """M-keys of one Q-element: all refinements, each with coefficient 1.

    Splitting each part independently realizes the choice of which weak
    inequalities of the fundamental series become equalities.  The last
    position heads its part, so the mark follows the first piece of the
    split of the marked part.
    """
    parts, marked = key
    out = []
    for choice in product(*(list(compositions_of(part)) for part in parts)):
        refined = tuple(chain.from_iterable(choice))
        shift = sum(len(choice[j]) for j in range(marked))
        out.append(MarkedComposition(refined, shift))
    return tuple(out)


@lru_cache(maxsize=None)
def _m_in_q(key: MarkedComposition) -> tuple:
    """One M-element over the Q-basis, by unitriangular back-substitution."""
    acc = {key: Fraction(1)}
    for finer in _q_to_m_column(key):
        if finer == key:
            continue
        for qkey, c in _m_in_q(finer):
            acc[qkey] = acc.get(qkey, Fraction(0)) - c
    return tuple((k, v) for k, v in acc.items() if v)


def change_basis(x: UBCQSymElement, target: str) -> UBCQSymElement:
    if target not in QBASES:
        raise ValueError(f"unsupported basis {target!r}")
    if target == x.basis:
        return x
    out: dict = {}
    if x.basis == "Q":
        for key, c in x.terms.items():
            for mkey in _q_to_m_column(key):
                out[mkey] = out.get(mkey, Fraction(0)) + c
    else:
        for key, c in x.terms.items():
            for qkey, value in _m_in_q(key):
                out[qkey] = out.get(qkey, Fraction(0)) + c * value
    return UBCQSymElement(x.degree, target, out)


# ---------------------------------------------------------------------------
# the sink map and the embedding of the block-type quotient


def phi_q(x: UBCQSymElement) -> SinkPolynomial:
    """Send the key (1, ..., 1, k) with the last part marked to
    t(t-1)^(k-1) and every other key to zero.

    On the Q-expansion of an acyclic-orientation poset this produces t^j
    when the last vertex is one of the j sinks, and zero otherwise.
    """
    x = change_basis(x, "Q")
    out: dict = {}
    for (parts, marked), c in x.terms.items():
        if marked != len(parts) - 1 or any(p != 1 for p in parts[:-1]):
            continue
        k = parts[-1]
        for i in range(k):
            out[i + 1] = out.get(i + 1, Fraction(0)) + c * comb(k - 1, i) * (-1) ** (
                k - 1 - i
            )
    return SinkPolynomial(out)


@lru_cache(maxsize=None)
def _embed_column(t) -> tuple:
    """Marked types of all orderings of one representative's blocks."""
    blocks = canonical_lift(t).blocks()
    counts: dict = {}
    for order in permutations(range(len(blocks))):
        key = marked_type_of(SetComposition(blocks[i] for i in order))
        counts[key] = counts.get(key, 0) + 1
    return tuple(counts.items())


def embed_ubcsym(x: UBCSymElement) -> UBCQSymElement:
    """Include a block-type element into the marked-composition quotient.

    The monomial element of a set partition is the sum of the monomial
    elements of its block orderings, so each (lam, b) key spreads over
    the marked compositions rearranging lam and b, the mark tracking the
    b-block.  Arrangements that collide (equal parts swapped) stack up
    as integer multiplicities.
    """
    if x.basis != "m":
        x = ubcsym.change_basis(x, "m")
    if x.degree > M_DEGREE_CAP:
        raise ValueError(f"degree {x.degree} exceeds m-basis cap {M_DEGREE_CAP}")
    out: dict = {}
    for t, c in x.terms.items():
        for key, mult in _embed_column(t):
            out[key] = out.get(key, Fraction(0)) + c * mult
    return UBCQSymElement(x.degree, "M", out)
