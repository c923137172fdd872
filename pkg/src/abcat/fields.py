"""Exact scalars over the rationals and over prime fields.

Rational scalars are stdlib :class:`fractions.Fraction` values, which are
always stored gcd-reduced with a positive denominator.  Prime-field scalars
are :class:`GFElement` residues kept in the canonical range ``[0, p)``.  Both
kinds are immutable, hashable, and support ``+ - * /``, unary minus, and
truthiness (zero is falsy), which is everything the matrix layer relies on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")
_RESIDUE_RE = re.compile(r"\d+\Z")

_MAX_PRIME = 2**31


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; the witness set covers all n < 3.3e24.
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class GFElement:
    """A residue modulo a prime, canonicalized into ``[0, p)`` on creation."""

    value: int
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % self.p)

    def _same(self, other: GFElement) -> None:
        if not isinstance(other, GFElement) or other.p != self.p:
            raise ValueError(f"mixed scalars: {self!r} and {other!r}")

    def __add__(self, other: GFElement) -> GFElement:
        self._same(other)
        return GFElement(self.value + other.value, self.p)

    def __sub__(self, other: GFElement) -> GFElement:
        self._same(other)
        return GFElement(self.value - other.value, self.p)

    def __mul__(self, other: GFElement) -> GFElement:
        self._same(other)
        return GFElement(self.value * other.value, self.p)

    def __truediv__(self, other: GFElement) -> GFElement:
        self._same(other)
        return self * other.inverse()

    def __neg__(self) -> GFElement:
        return GFElement(-self.value, self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def inverse(self) -> GFElement:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return GFElement(pow(self.value, -1, self.p), self.p)

    def __str__(self) -> str:
        return str(self.value)


Scalar = Union[Fraction, GFElement]


@dataclass(frozen=True)
class ScalarField:
    """The rationals when ``p`` is None, otherwise the prime field mod ``p``.

    The field object creates, parses, and formats scalars; arithmetic happens
    on the scalar values themselves.
    """

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None:
            if not isinstance(self.p, int) or not 2 <= self.p < _MAX_PRIME:
                raise ValueError(f"modulus must be an integer in [2, 2**31): {self.p!r}")
            if not _is_prime(self.p):
                raise ValueError(f"modulus must be prime: {self.p}")

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    @property
    def kind(self) -> str:
        return "Rationals" if self.p is None else "PrimeField"

    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else GFElement(0, self.p)

    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else GFElement(1, self.p)

    def from_int(self, n: int) -> Scalar:
        return Fraction(n) if self.p is None else GFElement(n, self.p)

    def contains(self, x: object) -> bool:
        if self.p is None:
            return isinstance(x, Fraction)
        return isinstance(x, GFElement) and x.p == self.p

    def parse(self, text: str) -> Scalar:
        """Parse one scalar literal.

        Rationals accept an optional sign, digits, and an optional ``/digits``
        denominator; the result is reduced.  Prime fields accept canonical
        residues ``0`` through ``p - 1`` only.
        """
        if self.p is None:
            if not _RATIONAL_RE.fullmatch(text):
                raise ValueError(f"not a rational literal: {text!r}")
            try:
                return Fraction(text)
            except ZeroDivisionError:
                raise ValueError(f"zero denominator: {text!r}") from None
        if not _RESIDUE_RE.fullmatch(text):
            raise ValueError(f"not a residue literal: {text!r}")
        value = int(text)
        if value >= self.p:
            raise ValueError(f"residue {value} out of range for GF({self.p})")
        return GFElement(value, self.p)

    def format(self, x: Scalar) -> str:
        if not self.contains(x):
            raise ValueError(f"scalar {x!r} does not belong to {self}")
        return str(x)

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"


RATIONALS = ScalarField()


def prime_field(p: int) -> ScalarField:
    """The field of integers mod ``p`` for a prime ``2 <= p < 2**31``."""
    return ScalarField(p)
