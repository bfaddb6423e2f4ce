"""Commutative symmetric functions in the e- and p-bases.

Single-degree sparse elements keyed by integer partitions.  The two bases
convert through the classical recurrences
    p_n = sum_{i=1}^{n-1} (-1)^(i-1) e_i p_{n-i} + (-1)^(n-1) n e_n
    n e_n = sum_{i=1}^{n} (-1)^(i-1) p_i e_{n-i}
with per-part expansions memoized, and both bases are multiplicative
(b_lam b_mu = b_{lam union mu}).
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .core import lam_union


class SymElement:
    """A symmetric function of one degree in basis "e" or "p";
    terms maps weakly decreasing tuples to nonzero Fractions."""

    __slots__ = ("degree", "basis", "terms")

    def __init__(self, degree: int, basis: str, terms=()):
        if basis not in ("e", "p"):
            raise ValueError(f"unsupported basis {basis!r}")
        if degree < 0:
            raise ValueError(f"negative degree {degree}")
        clean: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for lam, c in items:
            lam = tuple(sorted(lam, reverse=True))
            if sum(lam) != degree or (lam and lam[-1] < 1):
                raise ValueError(f"{lam} is not a partition of {degree}")
            c = Fraction(c)
            if c:
                clean[lam] = clean.get(lam, Fraction(0)) + c
        self.degree = degree
        self.basis = basis
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def zero(cls, degree: int, basis: str = "p") -> "SymElement":
        return cls(degree, basis)

    def coefficient(self, lam) -> Fraction:
        return self.terms.get(tuple(sorted(lam, reverse=True)), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SymElement") -> "SymElement":
        assert self.degree == other.degree and self.basis == other.basis
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return SymElement(self.degree, self.basis, out)

    def __sub__(self, other: "SymElement") -> "SymElement":
        return self + (-1) * other

    def __neg__(self) -> "SymElement":
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, Rational):
            return SymElement(
                self.degree, self.basis, {k: v * other for k, v in self.terms.items()}
            )
        assert self.basis == other.basis
        out: dict = {}
        for lam, c in self.terms.items():
            for mu, e in other.terms.items():
                key = lam_union(lam, mu)
                out[key] = out.get(key, Fraction(0)) + c * e
        return SymElement(self.degree + other.degree, self.basis, out)

    __rmul__ = __mul__

    def converted(self, target: str) -> "SymElement":
        if target == self.basis:
            return self
        if target not in ("e", "p"):
            raise ValueError(f"unsupported basis {target!r}")
        table = _p_in_e if target == "e" else _e_in_p
        out: dict = {}
        for lam, c in self.terms.items():
            expansion = {(): Fraction(1)}
            for part in lam:
                expansion = _convolve(expansion, table(part))
            for key, v in expansion.items():
                out[key] = out.get(key, Fraction(0)) + c * v
        return SymElement(self.degree, target, out)

    def __eq__(self, other):
        return (
            isinstance(other, SymElement)
            and self.degree == other.degree
            and self.basis == other.basis
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.degree, self.basis, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return f"SymElement({self.degree}, {self.basis!r}, 0)"
        bits = [f"{c}*{self.basis}{list(k)}" for k, c in sorted(self.terms.items())]
        return " + ".join(bits)


def _convolve(a: dict, b: dict) -> dict:
    out: dict = {}
    for lam, c in a.items():
        for mu, e in b.items():
            key = lam_union(lam, mu)
            out[key] = out.get(key, Fraction(0)) + c * e
    return out


_P_IN_E_CACHE: dict = {}
_E_IN_P_CACHE: dict = {0: {(): Fraction(1)}}


def _p_in_e(n: int) -> dict:
    """Expansion of the degree-n power sum in the e-basis."""
    if n not in _P_IN_E_CACHE:
        total: dict = {}
        for i in range(1, n):
            sign = (-1) ** (i - 1)
            for lam, c in _p_in_e(n - i).items():
                key = lam_union(lam, (i,))
                total[key] = total.get(key, Fraction(0)) + sign * c
        total[(n,)] = total.get((n,), Fraction(0)) + Fraction((-1) ** (n - 1) * n)
        _P_IN_E_CACHE[n] = {k: v for k, v in total.items() if v}
    return _P_IN_E_CACHE[n]


def _e_in_p(n: int) -> dict:
    """Expansion of the degree-n elementary generator in the p-basis."""
    if n not in _E_IN_P_CACHE:
        total: dict = {}
        for i in range(1, n + 1):
            sign = Fraction((-1) ** (i - 1), n)
            for lam, c in _e_in_p(n - i).items():
                key = lam_union(lam, (i,))
                total[key] = total.get(key, Fraction(0)) + sign * c
        _E_IN_P_CACHE[n] = {k: v for k, v in total.items() if v}
    return _E_IN_P_CACHE[n]
