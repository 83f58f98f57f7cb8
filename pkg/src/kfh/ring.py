"""Polynomials over F2 in the two knot variables U, V and in the single variable U = UV.

Coefficients are implicit: a polynomial is the set of monomials whose
coefficient is 1, so addition is symmetric difference.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

MAX_EXPONENT = 2**31 - 1


class Monomial(NamedTuple):
    u_exp: int
    v_exp: int

    @property
    def grading(self) -> tuple[int, int]:
        return (-2 * self.u_exp, -2 * self.v_exp)

    def __mul__(self, other):  # type: ignore[override]
        return Monomial(*_checked(self.u_exp + other.u_exp, self.v_exp + other.v_exp))

    def conjugate(self) -> "Monomial":
        return Monomial(self.v_exp, self.u_exp)

    def __str__(self) -> str:
        return f"U{self.u_exp}V{self.v_exp}"


ONE = Monomial(0, 0)


def _checked(u: int, v: int) -> tuple[int, int]:
    if u < 0 or v < 0:
        raise ValueError(f"negative exponent in U^{u}V^{v}")
    if u > MAX_EXPONENT or v > MAX_EXPONENT:
        raise OverflowError(f"exponent overflow in U^{u}V^{v}")
    return u, v


@dataclass(frozen=True)
class Poly:
    terms: frozenset = frozenset()

    @classmethod
    def monomial(cls, u: int = 0, v: int = 0) -> "Poly":
        return cls(frozenset([Monomial(*_checked(u, v))]))

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]]) -> "Poly":
        acc: set = set()
        for u, v in terms:
            acc ^= {Monomial(*_checked(u, v))}
        return cls(frozenset(acc))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "Poly") -> "Poly":
        acc: set = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= {a * b}
        return Poly(frozenset(acc))

    def conjugate(self) -> "Poly":
        return Poly(frozenset(m.conjugate() for m in self.terms))

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms)

    def at_one(self) -> int:
        """Value after setting U = V = 1."""
        return len(self.terms) & 1

    def constant_part(self) -> int:
        return int(ONE in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join("1" if m == ONE else str(m) for m in self.sorted_terms())

    def __repr__(self) -> str:
        return f"Poly({self})"


ZERO = Poly()
UNIT = Poly.monomial(0, 0)


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def conjugate(p: Poly) -> Poly:
    return p.conjugate()


_TERM = re.compile(r"^U(\d+)V(\d+)$")
_UTERM = re.compile(r"^U(\d+)$")


def parse_poly(text: str) -> Poly:
    """Parse ``U<i>V<j>`` terms joined by ``+``; ``1`` and ``0`` are accepted."""
    text = text.strip()
    if text == "0":
        return ZERO
    terms = []
    for tok in text.split("+"):
        tok = tok.strip()
        if tok == "1":
            terms.append((0, 0))
            continue
        m = _TERM.match(tok)
        if not m:
            raise ValueError(f"bad polynomial term {tok!r}")
        terms.append((int(m.group(1)), int(m.group(2))))
    return Poly.from_terms(terms)


@dataclass(frozen=True)
class UPoly:
    """Polynomial in U = UV over F2, stored as its set of exponents."""

    terms: frozenset = frozenset()

    @classmethod
    def power(cls, k: int) -> "UPoly":
        if k < 0:
            raise ValueError("negative U exponent")
        return cls(frozenset([k]))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "UPoly") -> "UPoly":
        return UPoly(self.terms ^ other.terms)

    def __mul__(self, other: "UPoly") -> "UPoly":
        acc: set = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= {a + b}
        return UPoly(frozenset(acc))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(f"U{k}" for k in sorted(self.terms))


def parse_upoly(text: str) -> UPoly:
    text = text.strip()
    if text == "0":
        return UPoly()
    acc: set = set()
    for tok in text.split("+"):
        tok = tok.strip()
        if tok == "1":
            acc ^= {0}
            continue
        m = _UTERM.match(tok)
        if not m:
            raise ValueError(f"bad U-polynomial term {tok!r}")
        acc ^= {int(m.group(1))}
    return UPoly(frozenset(acc))
