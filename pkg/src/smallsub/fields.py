"""Exact coefficient fields: small prime fields F_p and the rationals.

There is no floating point anywhere in this package.  Prime-field
coefficients are canonical machine residues in [0, p); rational
coefficients are `fractions.Fraction` values.  Raw coefficients flow
through the arithmetic engines as plain ints or Fractions, with the
field object supplying normalization, inversion and parsing.
"""

from __future__ import annotations

from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class CoefficientField:
    """F_p when ``p`` is a prime, the rationals when ``p`` is None."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("CoefficientField is immutable")

    @property
    def characteristic(self) -> int:
        return self.p or 0

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def coerce(self, value) -> int | Fraction:
        """Canonical form of a coefficient: residue in [0, p) or Fraction."""
        if self.p is not None:
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise ZeroDivisionError(f"denominator divisible by {self.p}")
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        if isinstance(value, Fraction):
            return value
        return Fraction(value)

    @property
    def zero(self) -> int | Fraction:
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self) -> int | Fraction:
        return 1 if self.p is not None else Fraction(1)

    def inv(self, value):
        if self.p is not None:
            return pow(value, -1, self.p)
        return 1 / value

    def neg(self, value):
        if self.p is not None:
            return -value % self.p
        return -value

    def __eq__(self, other):
        return isinstance(other, CoefficientField) and self.p == other.p

    def __hash__(self):
        return hash(("CoefficientField", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p is not None else "QQ"

    def spec(self) -> str:
        """Command-line/JSON field spec: ``p=5`` or ``Q``."""
        return f"p={self.p}" if self.p is not None else "Q"


def GF(p: int) -> CoefficientField:
    """The prime field with p elements."""
    return CoefficientField(p)


#: The field of rational numbers.
QQ = CoefficientField(None)


def parse_field_spec(text: str) -> CoefficientField:
    """Parse a field spec string: ``p=5`` or ``Q`` (case-insensitive)."""
    text = text.strip()
    if text.upper() == "Q":
        return QQ
    if text.startswith("p="):
        try:
            return GF(int(text[2:]))
        except ValueError as exc:
            raise ValueError(f"bad field spec {text!r}: {exc}") from None
    raise ValueError(f"bad field spec {text!r}: expected 'p=<prime>' or 'Q'")
