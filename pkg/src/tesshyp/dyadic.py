"""Exact dyadic rationals for vertex coordinates.

All vertex heights in the generated graphs are of the form k / 2^m, so float
coordinates would collide under rounding while distinct exact values exist.
Equality and hashing are value-based via a canonical (numerator, exponent)
form with the exponent as small as possible.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=False)
class Dyadic:
    """Value num / 2**exp, stored canonically (num odd or exp == 0)."""

    num: int
    exp: int

    def __post_init__(self):
        if self.exp < 0:
            raise ValueError("exponent must be non-negative")
        num, exp = self.num, self.exp
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @classmethod
    def from_int(cls, n: int) -> "Dyadic":
        return cls(n, 0)

    def __float__(self) -> float:
        return self.num / (1 << self.exp)

    def __add__(self, other):
        other = _coerce(other)
        e = max(self.exp, other.exp)
        return Dyadic(
            self.num * (1 << (e - self.exp)) + other.num * (1 << (e - other.exp)), e
        )

    def __sub__(self, other):
        other = _coerce(other)
        e = max(self.exp, other.exp)
        return Dyadic(
            self.num * (1 << (e - self.exp)) - other.num * (1 << (e - other.exp)), e
        )

    def __neg__(self):
        return Dyadic(-self.num, self.exp)

    def _cmp_key(self, other):
        other = _coerce(other)
        e = max(self.exp, other.exp)
        return self.num * (1 << (e - self.exp)), other.num * (1 << (e - other.exp))

    def __lt__(self, other):
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_key(other)
        return a >= b

    def is_integer(self) -> bool:
        return self.exp == 0

    def __repr__(self):
        if self.exp == 0:
            return f"Dyadic({self.num})"
        return f"Dyadic({self.num}/2^{self.exp})"


def _coerce(v) -> Dyadic:
    if isinstance(v, Dyadic):
        return v
    if isinstance(v, int):
        return Dyadic(v, 0)
    raise TypeError(f"cannot mix Dyadic with {type(v).__name__}")
