"""Periodic algebras over the integers.

The algebra has basis ``e_a`` for every integer ``a`` and product
``e_a e_b = alpha[a % n][b % n] * e_(a + b + t)``.  Elements are finitely
supported, so no truncation is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .fields import QQ, Field, FieldElement, FieldMismatchError, residue_of

__all__ = [
    "Element",
    "StructureMatrix",
    "PeriodicAlgebra",
    "make_algebra",
    "mul_basis",
    "mul_elem",
    "balanced_product",
    "closed_form_balanced",
    "closed_form_coefficient",
    "residue_span_is_subalgebra",
    "residue_span_is_ideal",
]


class Element:
    """A finitely supported linear combination of basis vectors."""

    __slots__ = ("field", "_terms")

    def __init__(self, field: Field, terms: Mapping[int, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, FieldElement] = {}
        for index, coeff in items:
            c = field(coeff)
            acc[index] = acc[index] + c if index in acc else c
        self.field = field
        self._terms = {a: acc[a] for a in sorted(acc) if acc[a]}

    @classmethod
    def basis(cls, field: Field, index: int, coeff=1) -> Element:
        return cls(field, {index: coeff})

    @classmethod
    def zero(cls, field: Field) -> Element:
        return cls(field)

    @property
    def terms(self) -> tuple[tuple[int, FieldElement], ...]:
        return tuple(self._terms.items())

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._terms)

    def __getitem__(self, index: int) -> FieldElement:
        return self._terms.get(index, self.field.zero)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other: Element):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"cannot combine {self.field} and {other.field} elements")

    def __add__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.field, list(self._terms.items()) + list(other._terms.items()))

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __neg__(self) -> Element:
        return Element(self.field, {a: -c for a, c in self._terms.items()})

    def scale(self, c) -> Element:
        c = self.field(c)
        return Element(self.field, {a: c * v for a, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return self._terms == other._terms

    def __hash__(self):
        return hash((self.field, self.terms))

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*e[{a}]" for a, c in self._terms.items())

    def to_json(self) -> dict:
        return {"terms": [{"index": a, "coeff": c.format()} for a, c in self._terms.items()]}

    @classmethod
    def from_json(cls, field: Field, obj) -> Element:
        return cls(field, [(int(t["index"]), field.parse(str(t["coeff"]))) for t in obj["terms"]])


@dataclass(frozen=True)
class StructureMatrix:
    """The n x n table of structure constants; entry (i, j) is f(a, b) for a = i, b = j mod n."""

    field: Field
    entries: tuple[tuple[FieldElement, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n < 1:
            raise ValueError("structure matrix must be at least 1x1")
        for row in self.entries:
            if len(row) != n:
                raise ValueError("structure matrix must be square")
            for x in row:
                if not isinstance(x, FieldElement) or x.field != self.field:
                    raise FieldMismatchError(f"entry {x!r} is not in {self.field}")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> StructureMatrix:
        return cls(field, tuple(tuple(field(x) for x in row) for row in rows))

    @classmethod
    def zero(cls, field: Field, n: int) -> StructureMatrix:
        return cls.from_rows(field, [[0] * n for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        i, j = ij
        return self.entries[i][j]

    @cached_property
    def nonzero(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(bool(x) for x in row) for row in self.entries)

    @cached_property
    def flat_values(self) -> tuple:
        """Raw values (Fraction or int) in row-major order."""
        return tuple(x.value for row in self.entries for x in row)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.nonzero)

    def to_json(self) -> list[list[str]]:
        return [[x.format() for x in row] for row in self.entries]

    def __str__(self):
        return "[" + "; ".join(" ".join(x.format() for x in row) for row in self.entries) + "]"


@dataclass(frozen=True)
class PeriodicAlgebra:
    """The algebra with period ``n``, translation ``t`` and structure matrix ``alpha``."""

    field: Field
    t: int
    alpha: StructureMatrix

    def __post_init__(self):
        if self.alpha.field != self.field:
            raise FieldMismatchError("structure matrix and algebra fields differ")

    @property
    def n(self) -> int:
        return self.alpha.n

    @property
    def t_res(self) -> int:
        return residue_of(self.t, self.n)

    def coeff(self, a: int, b: int) -> FieldElement:
        n = self.n
        return self.alpha.entries[a % n][b % n]

    def basis(self, index: int, coeff=1) -> Element:
        return Element.basis(self.field, index, coeff)

    def zero(self) -> Element:
        return Element(self.field)

    def element(self, terms) -> Element:
        return Element(self.field, terms)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "period": self.n,
            "t": self.t,
            "alpha": self.alpha.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> PeriodicAlgebra:
        from .fields import ParseError

        try:
            field = Field.from_json(obj["field"])
            n = int(obj["period"])
            t = obj.get("t", 0)
            if isinstance(t, bool) or not isinstance(t, int):
                raise ParseError(f"t must be an integer, got {t!r}")
            rows = obj["alpha"]
            if len(rows) != n or any(len(r) != n for r in rows):
                raise ParseError(f"alpha must be {n}x{n}")
            alpha = StructureMatrix(field, tuple(tuple(field.parse(str(x)) for x in row) for row in rows))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed algebra JSON: {exc}") from exc
        return cls(field, t, alpha)


def make_algebra(rows: Sequence[Sequence], t: int = 0, field: Field = QQ) -> PeriodicAlgebra:
    """Convenience constructor from nested lists of ints, Fractions or strings."""
    return PeriodicAlgebra(field, t, StructureMatrix.from_rows(field, rows))


def mul_basis(alg: PeriodicAlgebra, a: int, b: int) -> Element:
    c = alg.coeff(a, b)
    if not c:
        return alg.zero()
    return Element(alg.field, {a + b + alg.t: c})


def mul_elem(alg: PeriodicAlgebra, x: Element, y: Element) -> Element:
    """Bilinear product ``x * y``; ``mul_elem(alg, z, x)`` is ``R_x(z)``."""
    for e in (x, y):
        if e.field != alg.field:
            raise FieldMismatchError(f"element over {e.field} used with algebra over {alg.field}")
    terms = []
    for a, ca in x.terms:
        for b, cb in y.terms:
            c = alg.coeff(a, b)
            if c:
                terms.append((a + b + alg.t, ca * cb * c))
    return Element(alg.field, terms)


def _check_power_of_two(indices: Sequence[int]) -> int:
    length = len(indices)
    if length == 0 or length & (length - 1):
        raise ValueError(f"need 2**r indices, got {length}")
    return length.bit_length() - 1


def balanced_product(alg: PeriodicAlgebra, indices: Sequence[int]) -> Element:
    """Fully balanced product of ``e_{a_1}, ..., e_{a_{2^r}}`` by recursive pairing."""
    _check_power_of_two(indices)

    def rec(lo: int, hi: int) -> Element:
        if hi - lo == 1:
            return alg.basis(indices[lo])
        mid = (lo + hi) // 2
        return mul_elem(alg, rec(lo, mid), rec(mid, hi))

    return rec(0, len(indices))


def closed_form_coefficient(alg: PeriodicAlgebra, indices: Sequence[int]) -> FieldElement:
    """Coefficient of the balanced product from the explicit double product of structure constants.

    Level k pairs blocks of 2**k consecutive indices; a block with index sum S
    sits at basis index S + (2**k - 1) * t.
    """
    r = _check_power_of_two(indices)
    t = alg.t
    coeff = alg.field.one
    for k in range(r):
        width = 1 << k
        shift = (width - 1) * t
        for s in range(1 << (r - k - 1)):
            base = 2 * width * s
            left = shift + sum(indices[base:base + width])
            right = shift + sum(indices[base + width:base + 2 * width])
            factor = alg.coeff(left, right)
            if not factor:
                return alg.field.zero
            coeff = coeff * factor
    return coeff


def closed_form_balanced(alg: PeriodicAlgebra, indices: Sequence[int]) -> Element:
    r = _check_power_of_two(indices)
    coeff = closed_form_coefficient(alg, indices)
    return Element(alg.field, {((1 << r) - 1) * alg.t + sum(indices): coeff})


def _check_residues(alg: PeriodicAlgebra, residues) -> frozenset[int]:
    out = frozenset(residues)
    for r in out:
        if not (isinstance(r, int) and 0 <= r < alg.n):
            raise ValueError(f"residue {r!r} outside [0, {alg.n})")
    return out


def residue_span_is_subalgebra(alg: PeriodicAlgebra, residues) -> bool:
    """Is span{e_a : a mod n in residues} closed under the product?"""
    m = _check_residues(alg, residues)
    n, s, nz = alg.n, alg.t_res, alg.alpha.nonzero
    return all((i + j + s) % n in m for i in m for j in m if nz[i][j])


def residue_span_is_ideal(alg: PeriodicAlgebra, residues) -> bool:
    """Is span{e_a : a mod n in residues} a two-sided ideal?"""
    m = _check_residues(alg, residues)
    n, s, nz = alg.n, alg.t_res, alg.alpha.nonzero
    for i in m:
        for j in range(n):
            if (nz[i][j] or nz[j][i]) and (i + j + s) % n not in m:
                return False
    return True
