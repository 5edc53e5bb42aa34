"""Coefficient fields: exact rationals (the default) and odd prime fields.

Every computation in the package is exact; floating point is never used.
Rational coefficients are plain ``fractions.Fraction`` values.  Prime-field
coefficients are ``FpElement`` wrappers that keep values reduced mod p and
support the same operator set, so the polynomial and linear-algebra layers
stay field-agnostic.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UsageError


class FpElement:
    """An element of F_p.  Arithmetic stays reduced; division uses the
    modular inverse (p prime)."""

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        self.val = val % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise UsageError(f"mixed prime fields F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.val + o.val, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.val - o.val, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(o.val - self.val, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.val * o.val, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.val == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElement(self.val * pow(o.val, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return FpElement(-self.val, self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"{self.val}"


class RationalField:
    """The field of exact rationals."""

    name = "q"
    rational = True

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, FpElement):
            raise UsageError("cannot mix F_p coefficients into a rational polynomial")
        raise UsageError(f"cannot coerce {x!r} into the rational field")

    def parse(self, text: str):
        # accepts "3", "-3", "1/2"
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad rational literal {text!r}") from exc

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def format(self, c) -> str:
        return str(c)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """F_p for an odd prime p.  Primality is checked at construction."""

    rational = False

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise UsageError(f"{p} is not prime")
        self.p = p
        self.name = f"p:{p}"

    def coerce(self, x):
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise UsageError(f"mixed prime fields F_{self.p} and F_{x.p}")
            return x
        if isinstance(x, int):
            return FpElement(x, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise UsageError(f"denominator of {x} vanishes mod {self.p}")
            return FpElement(x.numerator, self.p) / FpElement(x.denominator, self.p)
        raise UsageError(f"cannot coerce {x!r} into F_{self.p}")

    def parse(self, text: str):
        if "/" in text:
            num, _, den = text.partition("/")
            return self.coerce(Fraction(int(num), int(den)))
        return FpElement(int(text), self.p)

    @property
    def zero(self):
        return FpElement(0, self.p)

    @property
    def one(self):
        return FpElement(1, self.p)

    def format(self, c) -> str:
        return str(c.val)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("p", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def field_from_name(name: str):
    """Parse a field name as used by the CLI: ``q`` or ``p:<prime>``."""
    if name == "q":
        return QQ
    if name.startswith("p:"):
        return PrimeField(int(name[2:]))
    raise UsageError(f"unknown field {name!r}; expected 'q' or 'p:<prime>'")
