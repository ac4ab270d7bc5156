"""Exact polynomials in prevision symbols.

Table entries of compound conditionals are built from constants and unknown
previsions such as ``x + mu*(1 - x)``; products of two symbols do occur, so
values are stored as general polynomials with Fraction coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

from .errors import UnboundSymbol

Number = Union[int, Fraction]
Monomial = tuple[str, ...]


class Poly:
    """Immutable polynomial: a map from sorted symbol tuples to coefficients."""

    __slots__ = ("_terms", "_key")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean = {}
        for mono, coef in (terms or {}).items():
            coef = Fraction(coef)
            if coef:
                clean[tuple(sorted(mono))] = clean.get(tuple(sorted(mono)), 0) + coef
        self._terms = {m: c for m, c in clean.items() if c}
        self._key = tuple(sorted(self._terms.items()))

    @classmethod
    def const(cls, value: Number) -> Poly:
        return cls({(): value})

    @classmethod
    def sym(cls, name: str) -> Poly:
        return cls({(name,): 1})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    @property
    def symbols(self) -> frozenset[str]:
        return frozenset(s for mono in self._terms for s in mono)

    @property
    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    @property
    def constant(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __add__(self, other) -> Poly:
        other = as_poly(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> Poly:
        return self + (-as_poly(other))

    def __rsub__(self, other) -> Poly:
        return as_poly(other) - self

    def __mul__(self, other) -> Poly:
        other = as_poly(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(sorted(m1 + m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def subs(self, mapping: Mapping[str, object]) -> Poly:
        """Substitute symbols by numbers or polynomials."""
        if not self.symbols & mapping.keys():
            return self
        out = Poly()
        for mono, coef in self._terms.items():
            term = Poly.const(coef)
            for s in mono:
                term = term * (as_poly(mapping[s]) if s in mapping else Poly.sym(s))
            out = out + term
        return out

    def evaluate(self, bindings: Mapping[str, Number]) -> Fraction:
        total = Fraction(0)
        for mono, coef in self._terms.items():
            v = coef
            for s in mono:
                try:
                    v *= Fraction(bindings[s])
                except KeyError:
                    raise UnboundSymbol(s) from None
            total += v
        return total

    def affine_in(self, symbol: str, bindings: Mapping[str, Number]) -> tuple[Fraction, Fraction]:
        """``(a, b)`` with ``self == a + b*symbol`` once the other symbols are bound."""
        a = Fraction(0)
        b = Fraction(0)
        for mono, coef in self._terms.items():
            k = mono.count(symbol)
            if k > 1:
                raise ValueError(f"{self} is not affine in {symbol}")
            v = coef
            for s in mono:
                if s == symbol:
                    continue
                try:
                    v *= Fraction(bindings[s])
                except KeyError:
                    raise UnboundSymbol(s) from None
            if k:
                b += v
            else:
                a += v
        return a, b

    def format(self, own: str | None = None) -> str:
        """Canonical text, e.g. ``x + mu - mu*x`` (``own`` sorts last, leads products)."""
        if not self._terms:
            return "0"

        def mono_key(m: Monomial):
            return (len(m), m.count(own) if own else 0, m)

        def mono_text(m: Monomial) -> str:
            names = sorted(m, key=lambda s: (s != own, s))
            return "*".join(names)

        parts = []
        for m in sorted(self._terms, key=mono_key):
            c = self._terms[m]
            mag = abs(c)
            if not m:
                body = str(mag)
            elif mag == 1:
                body = mono_text(m)
            else:
                body = f"{mag}*{mono_text(m)}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Poly({self.format()!r})"


def as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, str):
        return Poly.sym(value)
    if isinstance(value, (int, Fraction)):
        return Poly.const(value)
    raise TypeError(f"cannot use {value!r} as a polynomial")
