"""Tests for the indexing layer: set partitions, types, Moebius values."""

import pytest
from hypothesis import given, strategies as st

from csf.core import (
    BType,
    MarkedComposition,
    SetComposition,
    SetPartition,
    btypes_of_degree,
    composition_from_set,
    composition_to_set,
    compositions_of,
    enumerate_set_partitions,
    inverse_perm,
    lam_factorial,
    lam_union,
    marked_compositions_of,
    marked_type_of,
    moebius,
    moebius_bottom,
    partitions_of,
    permute,
    slash_product,
    type_of,
)


def bell_numbers(n):
    """Bell triangle recurrence; count oracle for the enumerator."""
    bells, row = [1], [1]
    for _ in range(n):
        new_row = [row[-1]]
        for value in row:
            new_row.append(new_row[-1] + value)
        row = new_row
        bells.append(row[0])
    return bells


@st.composite
def set_partitions(draw, max_degree=6):
    d = draw(st.integers(1, max_degree))
    labels = draw(st.lists(st.integers(0, d - 1), min_size=d, max_size=d))
    relabel = {}
    return SetPartition(relabel.setdefault(a, len(relabel)) for a in labels)


# ---------------------------------------------------------------------------
# partitions and compositions


def test_partitions_of_counts():
    # p(0)..p(10) = 1,1,2,3,5,7,11,15,22,30,42
    counts = [len(list(partitions_of(d))) for d in range(11)]
    assert counts == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_partitions_are_decreasing_and_unique():
    for d in range(8):
        parts = list(partitions_of(d))
        assert len(set(parts)) == len(parts)
        for lam in parts:
            assert sum(lam) == d
            assert all(lam[i] >= lam[i + 1] >= 1 for i in range(len(lam) - 1))


def test_lam_helpers():
    assert lam_union((3, 1), (2, 1)) == (3, 2, 1, 1)
    assert lam_union((), ()) == ()
    assert lam_factorial((3, 2, 2)) == 6 * 2 * 2
    assert lam_factorial(()) == 1


def test_compositions_of_counts_and_parts():
    for d in range(1, 9):
        comps = list(compositions_of(d))
        assert len(comps) == 2 ** (d - 1)
        assert len(set(comps)) == len(comps)
        assert all(sum(a) == d and min(a) >= 1 for a in comps)


@given(st.integers(1, 9), st.data())
def test_composition_set_roundtrip(d, data):
    subset = data.draw(st.frozensets(st.integers(1, d - 1)) if d > 1 else st.just(frozenset()))
    alpha = composition_from_set(subset, d)
    assert composition_to_set(alpha) == subset


# ---------------------------------------------------------------------------
# set partitions


def test_parse_and_str_roundtrip():
    pi = SetPartition.parse("1/24/35")
    assert pi.blocks() == ((1,), (2, 4), (3, 5))
    assert str(pi) == "1/24/35"
    big = SetPartition.parse("1,10/2,3,11/4,5,6,7,8,9")
    assert big.degree == 11
    assert SetPartition.parse(str(big)) == big
    for d in range(1, 6):
        for sp in enumerate_set_partitions(d):
            assert SetPartition.parse(str(sp)) == sp


def test_canonicalization_is_idempotent():
    for d in range(1, 7):
        for sp in enumerate_set_partitions(d):
            assert SetPartition(sp.assign) == sp
            assert SetPartition.from_blocks(sp.blocks()) == sp


def test_from_blocks_rejects_bad_input():
    with pytest.raises(ValueError):
        SetPartition.from_blocks([(1, 2), (2, 3)])
    with pytest.raises(ValueError):
        SetPartition.from_blocks([(1,), (3,)])
    with pytest.raises(ValueError):
        SetPartition([0, 2])  # skips block 1
    with pytest.raises(ValueError):
        SetPartition([])


def test_block_accessors():
    pi = SetPartition.parse("14/2/35")
    assert pi.length == 3
    assert pi.block_of(4) == 0
    assert pi.block_containing(5) == (3, 5)
    assert pi.lambda_of() == (2, 2, 1)
    assert pi.factorial() == 4


def test_refinement():
    fine = SetPartition.parse("1/24/35")
    coarse = SetPartition.parse("1/2345")
    assert fine.refines(coarse)
    assert not coarse.refines(fine)
    assert fine <= coarse and fine < coarse
    assert not SetPartition.parse("12/3").refines(SetPartition.parse("13/2"))
    assert all(sp.refines(sp) for sp in enumerate_set_partitions(4))


def test_enumeration_counts_match_bell():
    bells = bell_numbers(10)
    for d in range(1, 9):
        assert sum(1 for _ in enumerate_set_partitions(d)) == bells[d]
    assert sum(1 for _ in enumerate_set_partitions(10)) == 115975 == bells[10]


def test_enumeration_is_deterministic_and_unique():
    first = list(enumerate_set_partitions(5))
    second = list(enumerate_set_partitions(5))
    assert first == second
    assert len(set(first)) == len(first)


def test_enumeration_cap():
    with pytest.raises(ValueError):
        next(enumerate_set_partitions(13))
    with pytest.raises(ValueError):
        next(enumerate_set_partitions(0))
    # the cap is adjustable for callers who accept the cost
    assert next(enumerate_set_partitions(13, cap=13)).degree == 13


# ---------------------------------------------------------------------------
# slash product, permutation action, types


def test_slash_product_examples():
    assert slash_product(SetPartition.parse("12"), SetPartition.parse("1/2")) == SetPartition.parse("12/3/4")
    assert slash_product(SetPartition.parse("1"), SetPartition.parse("12")) == SetPartition.parse("1/23")


def test_slash_product_last_block_comes_from_second_factor():
    for pi in enumerate_set_partitions(3):
        for sigma in enumerate_set_partitions(3):
            assert type_of(slash_product(pi, sigma)).b == type_of(sigma).b


def test_type_of_examples():
    assert type_of(SetPartition.parse("1/24/35")) == BType((2, 1), 2)
    assert type_of(SetPartition.single_block(3)) == BType((), 3)
    assert type_of(SetPartition.discrete(3)) == BType((1, 1), 1)
    assert type_of(SetPartition.parse("1")) == BType((), 1)


def test_permute_examples():
    assert permute((2, 1, 3), SetPartition.parse("12/3")) == SetPartition.parse("12/3")
    assert permute((3, 2, 1), SetPartition.parse("12/3")) == SetPartition.parse("1/23")


def test_permute_degree_mismatch():
    with pytest.raises(ValueError):
        permute((1, 2), SetPartition.parse("12/3"))


@given(set_partitions(), st.data())
def test_permute_fixing_last_preserves_type(pi, data):
    d = pi.degree
    head = data.draw(st.permutations(list(range(1, d))))
    delta = tuple(head) + (d,)
    assert type_of(permute(delta, pi)) == type_of(pi)


@given(set_partitions(), st.data())
def test_permute_preserves_lambda(pi, data):
    delta = tuple(data.draw(st.permutations(list(range(1, pi.degree + 1)))))
    assert permute(delta, pi).lambda_of() == pi.lambda_of()


def test_btype_counts():
    partition_count = [len(list(partitions_of(d))) for d in range(12)]
    for d in range(1, 11):
        expected = sum(partition_count[d - b] for b in range(1, d + 1))
        types = list(btypes_of_degree(d))
        assert len(types) == expected
        assert len(set(types)) == len(types)
        assert all(t.degree == d for t in types)


# ---------------------------------------------------------------------------
# Moebius values


def comparable_pairs(d):
    parts = list(enumerate_set_partitions(d))
    return parts, [(s, t) for s in parts for t in parts if s.refines(t)]


def test_moebius_examples():
    assert moebius(SetPartition.discrete(3), SetPartition.single_block(3)) == 2
    assert moebius(SetPartition.parse("1/2"), SetPartition.parse("12")) == -1
    for d in range(1, 6):
        for sp in enumerate_set_partitions(d):
            assert moebius(sp, sp) == 1


def test_moebius_rejects_non_refinement():
    with pytest.raises(ValueError):
        moebius(SetPartition.parse("12/3"), SetPartition.parse("13/2"))


def test_moebius_bottom_agrees():
    for d in range(1, 7):
        bottom = SetPartition.discrete(d)
        for sp in enumerate_set_partitions(d):
            assert moebius_bottom(sp) == moebius(bottom, sp)


def test_moebius_matches_recursive_oracle():
    # mu(s, t) = 1 if s = t else -sum over s <= r < t of mu(s, r)
    for d in range(1, 6):
        parts, pairs = comparable_pairs(d)
        memo = {}

        def oracle(s, t):
            if s == t:
                return 1
            if (s, t) not in memo:
                memo[s, t] = -sum(
                    oracle(s, r) for r in parts if s.refines(r) and r.refines(t) and r != t
                )
            return memo[s, t]

        for s, t in pairs:
            assert moebius(s, t) == oracle(s, t)


def test_moebius_defining_identity_through_degree_six():
    for d in range(1, 7):
        parts, pairs = comparable_pairs(d)
        index = {p: i for i, p in enumerate(parts)}
        ups = {p: [r for r in parts if p.refines(r)] for p in parts}
        mu = {(index[s], index[t]): moebius(s, t) for s, t in pairs}
        for s, t in pairs:
            total = sum(mu[index[s], index[r]] for r in ups[s] if r.refines(t))
            assert total == (1 if s == t else 0), (s, t)


# ---------------------------------------------------------------------------
# set compositions and marked types


def test_set_composition_basics():
    phi = SetComposition([(1, 3), (4, 5), (2,)])
    assert phi.alpha() == (2, 2, 1)
    assert phi.forget() == SetPartition.parse("13/2/45")
    assert marked_type_of(phi) == MarkedComposition((2, 2, 1), 1)
    assert phi.block_index_of(2) == 2


def test_set_composition_order_matters():
    a = SetComposition([(1, 2), (3,)])
    b = SetComposition([(3,), (1, 2)])
    assert a != b
    assert a.forget() == b.forget()


def test_set_composition_rejects_bad_blocks():
    with pytest.raises(ValueError):
        SetComposition([(1, 2), (2, 3)])
    with pytest.raises(ValueError):
        SetComposition([])


def test_marked_compositions_count():
    # dimension of the degree-d marked layer: sum of lengths over compositions
    for d in range(1, 8):
        keys = list(marked_compositions_of(d))
        assert len(keys) == sum(len(a) for a in compositions_of(d))
        assert len(set(keys)) == len(keys)
        assert all(0 <= k.marked < len(k.parts) for k in keys)


def test_inverse_perm():
    delta = (3, 1, 4, 2)
    assert inverse_perm(delta) == (2, 4, 1, 3)
    assert inverse_perm(inverse_perm(delta)) == delta
