"""Tests for commutative symmetric functions (e/p bases, Newton transitions)."""

from fractions import Fraction
from itertools import product

import pytest

from csf.core import partitions_of
from csf.sym import SymElement


def expand_commuting(basis, lam, nvars):
    """Literal expansion into exponent-vector coefficients over nvars
    variables; faithful for degree <= nvars."""
    total = {tuple([0] * nvars): Fraction(1)}
    for part in lam:
        single = {}
        if basis == "p":
            for i in range(nvars):
                key = [0] * nvars
                key[i] = part
                single[tuple(key)] = single.get(tuple(key), 0) + 1
        else:
            for subset in product(range(2), repeat=nvars):
                if sum(subset) == part:
                    single[subset] = 1
        new = {}
        for expo, c in total.items():
            for mono, e in single.items():
                key = tuple(a + b for a, b in zip(expo, mono))
                new[key] = new.get(key, Fraction(0)) + c * e
        total = new
    return {k: v for k, v in total.items() if v}


def eval_element(x, nvars):
    out = {}
    for lam, c in x.terms.items():
        for expo, v in expand_commuting(x.basis, lam, nvars).items():
            out[expo] = out.get(expo, Fraction(0)) + c * v
    return {k: v for k, v in out.items() if v}


def test_constructor_normalizes():
    x = SymElement(3, "e", {(1, 2): 1, (3,): Fraction(1, 2)})
    assert x.coefficient((2, 1)) == 1
    assert x.coefficient([3]) == Fraction(1, 2)
    assert SymElement(2, "p", {(1, 1): 1, (2,): 0}).terms == {(1, 1): 1}
    with pytest.raises(ValueError):
        SymElement(3, "e", {(1, 1): 1})
    with pytest.raises(ValueError):
        SymElement(2, "q", {})


def test_arithmetic():
    a = SymElement(2, "p", {(2,): 1})
    b = SymElement(2, "p", {(1, 1): 2, (2,): -1})
    assert (a + b).terms == {(1, 1): 2}
    assert (a - a).is_zero()
    assert (3 * a).coefficient((2,)) == 3
    assert (a * b).degree == 4
    assert (a * b).coefficient((2, 1, 1)) == 2


def test_newton_small_cases():
    p2 = SymElement(2, "p", {(2,): 1}).converted("e")
    assert p2.terms == {(1, 1): 1, (2,): -2}
    p3 = SymElement(3, "p", {(3,): 1}).converted("e")
    assert p3.terms == {(1, 1, 1): 1, (2, 1): -3, (3,): 3}
    e2 = SymElement(2, "e", {(2,): 1}).converted("p")
    assert e2.terms == {(1, 1): Fraction(1, 2), (2,): Fraction(-1, 2)}


def test_conversion_round_trip():
    for d in range(1, 9):
        for lam in partitions_of(d):
            x = SymElement(d, "p", {lam: 1})
            assert x.converted("e").converted("p") == x
            y = SymElement(d, "e", {lam: 1})
            assert y.converted("p").converted("e") == y


def test_conversion_against_literal_expansion():
    # both bases expanded into raw exponent vectors must agree
    for d in range(1, 6):
        for lam in partitions_of(d):
            x = SymElement(d, "p", {lam: 1})
            assert eval_element(x, d) == eval_element(x.converted("e"), d)
            y = SymElement(d, "e", {lam: 1})
            assert eval_element(y, d) == eval_element(y.converted("p"), d)


def test_same_basis_conversion_is_identity():
    x = SymElement(4, "e", {(2, 2): Fraction(1, 3)})
    assert x.converted("e") is x
