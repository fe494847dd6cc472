"""Exact scalar fields: the rationals and prime fields GF(p), p < 2**16.

Elements of different fields never mix; Python ints are accepted as
scalars and coerced into the field of the other operand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Field",
    "FieldElement",
    "FieldMismatchError",
    "InvalidModulusError",
    "ParseError",
    "QQ",
    "GF",
    "residue_of",
]

_MAX_PRIME = 1 << 16
_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")
_INTEGER_RE = re.compile(r"^\s*[+-]?\d+\s*$")


class FieldMismatchError(TypeError):
    """Raised when elements of two different fields are combined."""


class ParseError(ValueError):
    pass


class InvalidModulusError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def residue_of(a: int, n: int) -> int:
    """Return the class of ``a`` modulo ``n`` as an integer in ``[0, n)``."""
    if n <= 0:
        raise InvalidModulusError(f"modulus must be >= 1, got {n}")
    return a % n


@dataclass(frozen=True)
class Field:
    """Field descriptor. ``p is None`` means the rationals."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise InvalidModulusError(f"{self.p!r} is not a prime")
            if self.p >= _MAX_PRIME:
                raise InvalidModulusError(f"prime {self.p} is not below 2**16")

    @property
    def kind(self) -> str:
        return "Q" if self.p is None else "Fp"

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value.field} element used as {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return FieldElement(self, self._normalize(value))

    def _normalize(self, value):
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f"cannot coerce {value!r} into {self}")
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({self.p})")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return value % self.p

    def parse(self, text: str) -> FieldElement:
        if self.p is None:
            if not _RATIONAL_RE.match(text):
                raise ParseError(f"malformed rational {text!r}")
            try:
                return FieldElement(self, Fraction(text.replace(" ", "")))
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {text!r}") from None
        if not _INTEGER_RE.match(text):
            raise ParseError(f"malformed GF({self.p}) element {text!r}")
        return FieldElement(self, int(text) % self.p)

    def elements(self):
        """All elements in increasing representative order (finite fields only)."""
        if self.p is None:
            raise ValueError("the rationals cannot be enumerated")
        return [FieldElement(self, v) for v in range(self.p)]

    def nonzero_elements(self):
        return [x for x in self.elements() if x]

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.p is None else {"kind": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, obj) -> Field:
        if not isinstance(obj, dict) or obj.get("kind") not in ("Q", "Fp"):
            raise ParseError(f"bad field descriptor {obj!r}")
        if obj["kind"] == "Q":
            return QQ
        p = obj.get("p")
        if not isinstance(p, int):
            raise ParseError(f"bad field descriptor {obj!r}")
        return cls(p)

    @classmethod
    def from_string(cls, text: str) -> Field:
        """Parse the CLI spelling: ``q`` or ``fp:P``."""
        t = text.strip().lower()
        if t in ("q", "qq"):
            return QQ
        if t.startswith("fp:"):
            try:
                return cls(int(t[3:]))
            except ValueError as exc:
                raise ParseError(f"bad field {text!r}: {exc}") from None
        raise ParseError(f"bad field {text!r}; expected 'q' or 'fp:P'")

    def __str__(self):
        return "Q" if self.p is None else f"GF({self.p})"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


class FieldElement:
    """An immutable exact scalar tagged with its field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        # value is assumed canonical: Fraction for Q, int in [0, p) for GF(p)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field} and {other.field}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field(other)
        return NotImplemented

    def _wrap(self, value) -> FieldElement:
        p = self.field.p
        return FieldElement(self.field, value if p is None else value % p)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.value + o.value)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.value - o.value)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(o.value - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.value * o.value)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def inverse(self) -> FieldElement:
        if not self.value:
            raise ZeroDivisionError(f"inverse of zero in {self.field}")
        if self.field.p is None:
            return FieldElement(self.field, 1 / self.value)
        return FieldElement(self.field, pow(self.value, -1, self.field.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot compare {self.field} and {other.field}")
            return self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def format(self) -> str:
        return str(self.value)

    __str__ = format

    def __repr__(self):
        return f"{self.field}({self.value})"
