"""Indexing layer: partitions, compositions, set partitions and their types.

Everything downstream (the noncommutative oracle, the quotient algebras,
the verifiers) keys its sparse elements by the immutable values defined
here.  All arithmetic is exact integer arithmetic; nothing in this module
ever touches a float.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, NamedTuple

# Bell(12) = 4213597 RGS vectors; enumeration refuses to go further so a
# typo in a degree argument fails fast instead of eating all memory.
SET_PARTITION_CAP = 12


# ---------------------------------------------------------------------------
# integer partitions and compositions, stored as plain tuples of ints


def partitions_of(d: int, max_part: int | None = None) -> Iterator[tuple]:
    """Yield the integer partitions of d as weakly decreasing tuples.

    Order is lexicographically decreasing, from (d,) down to (1,...,1).
    partitions_of(0) yields the empty tuple once.
    """
    if max_part is None or max_part > d:
        max_part = d
    if d == 0:
        yield ()
        return
    for first in range(max_part, 0, -1):
        for rest in partitions_of(d - first, first):
            yield (first,) + rest


def lam_union(lam: tuple, mu: tuple) -> tuple:
    """Merge two weakly decreasing tuples into one, re-sorting."""
    return tuple(sorted(lam + mu, reverse=True))


def lam_factorial(lam: Iterable[int]) -> int:
    """Product of the factorials of the parts."""
    return math.prod(math.factorial(part) for part in lam)


def compositions_of(d: int) -> Iterator[tuple]:
    """Yield the 2^(d-1) compositions of d >= 1, refinement-coarsest first.

    The order follows the subset order of composition_to_set: the k-th
    composition yielded has descent set = binary digits of k.
    """
    assert d >= 1
    for mask in range(1 << (d - 1)):
        subset = frozenset(i + 1 for i in range(d - 1) if mask >> i & 1)
        yield composition_from_set(subset, d)


def composition_to_set(alpha: tuple) -> frozenset:
    """Partial sums of alpha except the last: the subset of [d-1] it encodes."""
    out, total = [], 0
    for part in alpha[:-1]:
        total += part
        out.append(total)
    return frozenset(out)


def composition_from_set(subset: Iterable[int], d: int) -> tuple:
    """Inverse of composition_to_set for subsets of [d-1]."""
    cuts = sorted(subset)
    assert all(1 <= c <= d - 1 for c in cuts)
    bounds = [0] + cuts + [d]
    return tuple(bounds[i + 1] - bounds[i] for i in range(len(bounds) - 1))


# ---------------------------------------------------------------------------
# set partitions


class SetPartition:
    """A set partition of [d] in canonical form.

    Stored as a length-d vector ``assign`` where ``assign[i]`` is the block
    number of element i+1, blocks numbered 0, 1, ... by first appearance.
    That makes ``assign`` a restricted growth string, so two partitions are
    equal iff their vectors are equal, and blocks ordered by number are
    also ordered by their minimum element.
    """

    __slots__ = ("assign",)

    def __init__(self, assign: Iterable[int]):
        assign = tuple(assign)
        if not assign:
            raise ValueError("empty set partitions are not used here")
        top = 0
        for a in assign:
            if not 0 <= a <= top:
                raise ValueError(f"not numbered by first appearance: {assign!r}")
            if a == top:
                top += 1
        self.assign = assign

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "SetPartition":
        """Build from any ordering of blocks; canonicalizes."""
        blocks = [tuple(b) for b in blocks]
        elements = [e for b in blocks for e in b]
        d = len(elements)
        if sorted(elements) != list(range(1, d + 1)):
            raise ValueError(f"blocks do not partition [{d}]: {blocks!r}")
        assign = [0] * d
        for index, block in enumerate(blocks):
            for e in block:
                assign[e - 1] = index
        relabel, next_label = {}, 0
        canonical = []
        for a in assign:
            if a not in relabel:
                relabel[a] = next_label
                next_label += 1
            canonical.append(relabel[a])
        return cls(canonical)

    @classmethod
    def parse(cls, text: str) -> "SetPartition":
        """Parse "1/24/35" (single digits) or "1,10/2,11" (comma form)."""
        blocks = []
        for chunk in text.split("/"):
            chunk = chunk.strip()
            if "," in chunk:
                blocks.append([int(e) for e in chunk.split(",")])
            else:
                blocks.append([int(c) for c in chunk])
        return cls.from_blocks(blocks)

    @classmethod
    def discrete(cls, d: int) -> "SetPartition":
        return cls(range(d))

    @classmethod
    def single_block(cls, d: int) -> "SetPartition":
        return cls([0] * d)

    @property
    def degree(self) -> int:
        return len(self.assign)

    @property
    def length(self) -> int:
        return max(self.assign) + 1

    def blocks(self) -> tuple:
        out = [[] for _ in range(self.length)]
        for i, a in enumerate(self.assign):
            out[a].append(i + 1)
        return tuple(tuple(b) for b in out)

    def block_of(self, i: int) -> int:
        """Block number (0-based) of element i (1-based)."""
        return self.assign[i - 1]

    def block_containing(self, i: int) -> tuple:
        target = self.assign[i - 1]
        return tuple(j + 1 for j, a in enumerate(self.assign) if a == target)

    def block_sizes(self) -> list:
        sizes = [0] * self.length
        for a in self.assign:
            sizes[a] += 1
        return sizes

    def lambda_of(self) -> tuple:
        """Block sizes as a weakly decreasing tuple."""
        return tuple(sorted(self.block_sizes(), reverse=True))

    def factorial(self) -> int:
        return lam_factorial(self.block_sizes())

    def refines(self, other: "SetPartition") -> bool:
        """True if every block of self lies inside a block of other."""
        if self.degree != other.degree:
            return False
        image = [None] * self.length
        for mine, theirs in zip(self.assign, other.assign):
            if image[mine] is None:
                image[mine] = theirs
            elif image[mine] != theirs:
                return False
        return True

    def __le__(self, other):
        return self.refines(other)

    def __lt__(self, other):
        return self.assign != other.assign and self.refines(other)

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self.assign == other.assign

    def __hash__(self):
        return hash(self.assign)

    def __repr__(self):
        return f"SetPartition.parse({str(self)!r})"

    def __str__(self):
        sep = "" if self.degree <= 9 else ","
        return "/".join(sep.join(str(e) for e in b) for b in self.blocks())


def enumerate_set_partitions(d: int, cap: int = SET_PARTITION_CAP) -> Iterator[SetPartition]:
    """Yield every set partition of [d] once, in lexicographic vector order."""
    if not 1 <= d <= cap:
        raise ValueError(f"degree {d} outside [1, {cap}]")
    assign = [0] * d

    def grow(i, top):
        if i == d:
            yield SetPartition(assign)
            return
        for a in range(top + 1):
            assign[i] = a
            yield from grow(i + 1, max(top, a + 1))

    yield from grow(1, 1)


def slash_product(pi: SetPartition, sigma: SetPartition) -> SetPartition:
    """Place sigma's blocks after pi's, shifting sigma's elements by deg(pi)."""
    shift = pi.length
    return SetPartition(pi.assign + tuple(a + shift for a in sigma.assign))


def permute(delta: tuple, pi: SetPartition) -> SetPartition:
    """Apply delta (one-line notation, delta[i-1] = image of i) to the elements."""
    if len(delta) != pi.degree:
        raise ValueError(f"permutation degree {len(delta)} != partition degree {pi.degree}")
    assign = [0] * pi.degree
    for i, a in enumerate(pi.assign):
        assign[delta[i] - 1] = a
    relabel: dict = {}
    return SetPartition(relabel.setdefault(a, len(relabel)) for a in assign)


def moebius(sigma: SetPartition, tau: SetPartition) -> int:
    """Moebius value of the interval [sigma, tau] in the refinement lattice.

    Equals the product over blocks B of tau of (-1)^(k-1) (k-1)! where k is
    the number of sigma-blocks inside B.  Rejects pairs where sigma does
    not refine tau.
    """
    if not sigma.refines(tau):
        raise ValueError(f"{sigma} does not refine {tau}")
    inner: list = [set() for _ in range(tau.length)]
    for s, t in zip(sigma.assign, tau.assign):
        inner[t].add(s)
    value = 1
    for group in inner:
        k = len(group)
        value *= (-1) ** (k - 1) * math.factorial(k - 1)
    return value


def moebius_bottom(pi: SetPartition) -> int:
    """moebius(discrete, pi) without building the discrete partition."""
    value = 1
    for size in pi.block_sizes():
        value *= (-1) ** (size - 1) * math.factorial(size - 1)
    return value


# ---------------------------------------------------------------------------
# types: the keys of the quotient algebras


class BType(NamedTuple):
    """Key (lam, b): partition of the unmarked block sizes plus the size b >= 1
    of the block holding the last element."""

    lam: tuple
    b: int

    @property
    def degree(self) -> int:
        return sum(self.lam) + self.b


def type_of(pi: SetPartition) -> BType:
    """b = size of the block containing the last element, lam = the rest."""
    d = pi.degree
    last = pi.assign[d - 1]
    sizes = pi.block_sizes()
    b = sizes.pop(last)
    return BType(tuple(sorted(sizes, reverse=True)), b)


def btypes_of_degree(d: int) -> Iterator[BType]:
    """All BType keys of one degree: b from 1 to d, lam a partition of d - b."""
    assert d >= 1
    for b in range(1, d + 1):
        for lam in partitions_of(d - b):
            yield BType(lam, b)


class MarkedComposition(NamedTuple):
    """Key (parts, marked): a composition with one distinguished part,
    marked being its 0-based index."""

    parts: tuple
    marked: int

    @property
    def degree(self) -> int:
        return sum(self.parts)


def marked_compositions_of(d: int) -> Iterator[MarkedComposition]:
    assert d >= 1
    for alpha in compositions_of(d):
        for j in range(len(alpha)):
            yield MarkedComposition(alpha, j)


class LabelledComposition(NamedTuple):
    """A permutation delta of [d] in one-line notation paired with a
    composition alpha of d; indexes the fundamental expansion of the
    quasisymmetric layer."""

    delta: tuple
    alpha: tuple


class SetComposition:
    """An ordered set partition of [d]: disjoint nonempty blocks whose
    order matters.  Elements within a block are kept sorted."""

    __slots__ = ("blocks",)

    def __init__(self, blocks: Iterable[Iterable[int]]):
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        elements = [e for b in blocks for e in b]
        d = len(elements)
        if d == 0 or sorted(elements) != list(range(1, d + 1)):
            raise ValueError(f"blocks do not partition [{d}]: {blocks!r}")
        self.blocks = blocks

    @property
    def degree(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def length(self) -> int:
        return len(self.blocks)

    def alpha(self) -> tuple:
        """The composition of block sizes, in block order."""
        return tuple(len(b) for b in self.blocks)

    def forget(self) -> SetPartition:
        """Drop the ordering, giving the canonical underlying set partition."""
        return SetPartition.from_blocks(self.blocks)

    def block_index_of(self, i: int) -> int:
        for index, block in enumerate(self.blocks):
            if i in block:
                return index
        raise ValueError(f"{i} not in [{self.degree}]")

    def __eq__(self, other):
        return isinstance(other, SetComposition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        body = "|".join("".join(str(e) for e in b) for b in self.blocks)
        return f"SetComposition<{body}>"


def marked_type_of(phi: SetComposition) -> MarkedComposition:
    """Block sizes in order, with the block containing the last element marked."""
    return MarkedComposition(phi.alpha(), phi.block_index_of(phi.degree))


# ---------------------------------------------------------------------------
# permutations (one-line tuples; delta[i-1] is the image of i)


def inverse_perm(delta: tuple) -> tuple:
    out = [0] * len(delta)
    for i, image in enumerate(delta):
        out[image - 1] = i + 1
    return tuple(out)
