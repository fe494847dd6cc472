"""Basis transformations of periodic algebras and an isomorphism search over them.

Every transform T comes with a basis map phi from the new algebra T(A) back to
A; phi is an algebra isomorphism T(A) -> A.

* shift by c:          phi(e'_a) = e_(a + c), translation becomes t + c
* residue shift by d:  phi(e'_a) = e_(a + d[a mod n]), translation unchanged
* scaling by lam:      phi(e'_a) = lam[a mod n] * e_a
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Element, PeriodicAlgebra, StructureMatrix, mul_basis
from .fields import Field, FieldElement, FieldMismatchError

__all__ = [
    "TransformError",
    "BasisTransform",
    "shift",
    "apply_residue_shift",
    "scale",
    "inflate",
    "is_inflation_of",
    "normalize_alpha00",
    "isomorphism_search",
    "check_homomorphism",
    "DEFAULT_RATIONAL_SCALINGS",
]

DEFAULT_RATIONAL_SCALINGS = (1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2))


class TransformError(ValueError):
    pass


@dataclass(frozen=True)
class BasisTransform:
    """A composition of elementary transforms, applied left to right."""

    steps: tuple[tuple, ...] = ()

    @classmethod
    def identity(cls) -> BasisTransform:
        return cls(())

    @classmethod
    def shift(cls, c: int) -> BasisTransform:
        return cls((("shift", c),))

    @classmethod
    def residue_shift(cls, d: Sequence[int]) -> BasisTransform:
        return cls((("residue_shift", tuple(d)),))

    @classmethod
    def scaling(cls, lam: Sequence[FieldElement]) -> BasisTransform:
        lam = tuple(lam)
        if any(not x for x in lam):
            raise TransformError("scaling factors must be nonzero")
        return cls((("scaling", lam),))

    def then(self, other: BasisTransform) -> BasisTransform:
        return BasisTransform(self.steps + other.steps)

    def is_identity(self) -> bool:
        for kind, arg in self.steps:
            if kind == "shift" and arg != 0:
                return False
            if kind == "residue_shift" and any(arg):
                return False
            if kind == "scaling" and any(x != 1 for x in arg):
                return False
        return True

    def apply(self, alg: PeriodicAlgebra) -> PeriodicAlgebra:
        for kind, arg in self.steps:
            if kind == "shift":
                alg = shift(alg, arg)
            elif kind == "residue_shift":
                alg = apply_residue_shift(alg, arg)
            else:
                alg = scale(alg, arg)
        return alg

    def map_element(self, x: Element, n: int) -> Element:
        """Image under phi of an element of the transformed algebra, as an element of the source."""
        for kind, arg in reversed(self.steps):
            if kind == "shift":
                x = Element(x.field, [(a + arg, c) for a, c in x.terms])
            elif kind == "residue_shift":
                x = Element(x.field, [(a + arg[a % n], c) for a, c in x.terms])
            else:
                x = Element(x.field, [(a, c * arg[a % n]) for a, c in x.terms])
        return x

    def to_json(self) -> dict:
        steps = []
        for kind, arg in self.steps:
            if kind == "shift":
                steps.append({"kind": "shift", "c": arg})
            elif kind == "residue_shift":
                steps.append({"kind": "residue_shift", "d": list(arg)})
            else:
                steps.append({"kind": "scaling", "lambda": [x.format() for x in arg]})
        return {"steps": steps}

    @classmethod
    def from_json(cls, obj, field: Field) -> BasisTransform:
        steps = []
        for st in obj["steps"]:
            if st["kind"] == "shift":
                steps.append(("shift", int(st["c"])))
            elif st["kind"] == "residue_shift":
                steps.append(("residue_shift", tuple(int(v) for v in st["d"])))
            elif st["kind"] == "scaling":
                steps.append(("scaling", tuple(field.parse(str(v)) for v in st["lambda"])))
            else:
                raise ValueError(f"unknown transform kind {st['kind']!r}")
        return cls(tuple(steps))


def _rows(field: Field, n: int, fn) -> StructureMatrix:
    return StructureMatrix(field, tuple(tuple(fn(i, j) for j in range(n)) for i in range(n)))


def shift(alg: PeriodicAlgebra, c: int) -> PeriodicAlgebra:
    """Translation t + c with alpha'[i][j] = alpha[i+c][j+c]; e'_a -> e_(a+c) is an isomorphism."""
    n, A = alg.n, alg.alpha.entries
    return PeriodicAlgebra(alg.field, alg.t + c, _rows(alg.field, n, lambda i, j: A[(i + c) % n][(j + c) % n]))


def apply_residue_shift(alg: PeriodicAlgebra, d: Sequence[int]) -> PeriodicAlgebra:
    """Move each class i by the integer offset d[i].

    The map must permute the classes, and for every pair (i, j) with a nonzero
    transformed product the offsets must satisfy d[i] + d[j] = d[(i + j + t) mod n].
    """
    n, t, A = alg.n, alg.t, alg.alpha.entries
    d = tuple(int(v) for v in d)
    if len(d) != n:
        raise TransformError(f"need {n} offsets, got {len(d)}")
    perm = [(i + d[i]) % n for i in range(n)]
    if len(set(perm)) != n:
        raise TransformError(f"offsets {d} do not permute the residue classes")
    new = _rows(alg.field, n, lambda i, j: A[perm[i]][perm[j]])
    for i in range(n):
        for j in range(n):
            if new.entries[i][j] and d[i] + d[j] != d[(i + j + t) % n]:
                raise TransformError(f"offsets {d} are inconsistent at product ({i}, {j})")
    return PeriodicAlgebra(alg.field, t, new)


def scale(alg: PeriodicAlgebra, lam: Sequence) -> PeriodicAlgebra:
    """Rescale e'_a = lam[a mod n] e_a: alpha'[i][j] = lam[i] lam[j] / lam[i+j+t] * alpha[i][j]."""
    n, s, A, field = alg.n, alg.t_res, alg.alpha.entries, alg.field
    lam = tuple(field(x) for x in lam)
    if len(lam) != n:
        raise TransformError(f"need {n} scaling factors, got {len(lam)}")
    if any(not x for x in lam):
        raise TransformError("scaling factors must be nonzero")
    return PeriodicAlgebra(
        field, alg.t, _rows(field, n, lambda i, j: lam[i] * lam[j] / lam[(i + j + s) % n] * A[i][j])
    )


def inflate(alg: PeriodicAlgebra, m: int) -> PeriodicAlgebra:
    """View an n-periodic algebra as nm-periodic: beta[nk+i][nl+j] = alpha[i][j]."""
    if m < 1:
        raise ValueError("inflation factor must be >= 1")
    n, A = alg.n, alg.alpha.entries
    return PeriodicAlgebra(alg.field, alg.t, _rows(alg.field, n * m, lambda i, j: A[i % n][j % n]))


def is_inflation_of(B: PeriodicAlgebra, n: int) -> bool:
    """Is B's matrix constant on the n x n blocks, i.e. is B already n-periodic?"""
    N = B.n
    if n < 1 or N % n:
        raise ValueError(f"{n} does not divide the period {N}")
    E = B.alpha.entries
    return all(E[i][j] == E[i % n][j % n] for i in range(N) for j in range(N))


def normalize_alpha00(alg: PeriodicAlgebra) -> tuple[PeriodicAlgebra, BasisTransform]:
    """An isomorphic algebra with alpha'[0][0] = 0, obtained by a shift."""
    if not alg.alpha.entries[0][0]:
        return alg, BasisTransform.identity()
    n = alg.n
    first = (-alg.t) % n
    for c in [first] + [c for c in range(1, n) if c != first]:
        out = shift(alg, c)
        if not out.alpha.entries[0][0]:
            return out, BasisTransform.shift(c)
    raise TransformError("no shift makes alpha[0][0] vanish")


def check_homomorphism(
    source: PeriodicAlgebra, target: PeriodicAlgebra, transform: BasisTransform, window: int
) -> bool:
    """phi(e_a e_b) == phi(e_a) phi(e_b) for all a, b in [-window, window].

    ``target`` is transform(source); phi maps target's basis into source.
    """
    from .algebra import mul_elem

    n, field = source.n, source.field
    for a in range(-window, window + 1):
        pa = transform.map_element(Element.basis(field, a), n)
        for b in range(-window, window + 1):
            pb = transform.map_element(Element.basis(field, b), n)
            left = transform.map_element(mul_basis(target, a, b), n)
            if left != mul_elem(source, pa, pb):
                return False
    return True


def _offset_order(n: int) -> list[int]:
    out = [0]
    for k in range(1, n + 1):
        out += [k, -k]
    return out


def _scaling_candidates(field: Field, rational_scalings) -> list[FieldElement]:
    if field.is_finite:
        return field.nonzero_elements()
    return [field(x) for x in rational_scalings]


def isomorphism_search(
    alg_a: PeriodicAlgebra,
    alg_b: PeriodicAlgebra,
    rational_scalings=DEFAULT_RATIONAL_SCALINGS,
) -> BasisTransform | None:
    """Find T (shift, then residue shift, then scaling) with T(alg_a) == alg_b.

    Offsets range over [-n, n] and scalings over all nonzero elements of GF(p)
    or ``rational_scalings`` over Q.  Candidates are tried in a fixed order
    (small offsets first, scaling factor 1 first) and the first hit is returned.
    None means nothing was found in this restricted group, not non-isomorphism.
    """
    if alg_a.field != alg_b.field:
        raise FieldMismatchError(f"{alg_a.field} vs {alg_b.field}")
    if alg_a.n != alg_b.n:
        raise TransformError(f"period mismatch: {alg_a.n} vs {alg_b.n}")
    n, field = alg_a.n, alg_a.field
    c = alg_b.t - alg_a.t
    shifted = shift(alg_a, c)
    target_nz = alg_b.alpha.nonzero
    lam_values = _scaling_candidates(field, rational_scalings)
    offsets = _offset_order(n)
    for d in itertools.product(offsets, repeat=n):
        perm = [(i + d[i]) % n for i in range(n)]
        if len(set(perm)) != n:
            continue
        nz = shifted.alpha.nonzero
        if any(nz[perm[i]][perm[j]] != target_nz[i][j] for i in range(n) for j in range(n)):
            continue
        try:
            moved = apply_residue_shift(shifted, d)
        except TransformError:
            continue
        lam = _solve_scaling(moved, alg_b, lam_values)
        if lam is None:
            continue
        transform = BasisTransform.shift(c).then(BasisTransform.residue_shift(d)).then(BasisTransform.scaling(lam))
        if transform.apply(alg_a) != alg_b:
            continue
        if not check_homomorphism(alg_a, alg_b, transform, 2 * n):
            continue
        return transform
    return None


def _solve_scaling(alg: PeriodicAlgebra, target: PeriodicAlgebra, values) -> tuple | None:
    """First lam (in candidate order) with scale(alg, lam) == target."""
    n, s = alg.n, alg.t_res
    A, B = alg.alpha.entries, target.alpha.entries
    pairs = [(i, j) for i in range(n) for j in range(n) if A[i][j]]
    lam: list = [None] * n

    def consistent(depth: int) -> bool:
        # every nonzero constant whose three factors are assigned must match
        for i, j in pairs:
            k = (i + j + s) % n
            if max(i, j, k) == depth and lam[k] is not None:
                if lam[i] * lam[j] / lam[k] * A[i][j] != B[i][j]:
                    return False
        return True

    def rec(depth: int):
        if depth == n:
            return tuple(lam)
        for v in values:
            lam[depth] = v
            if consistent(depth):
                found = rec(depth + 1)
                if found is not None:
                    return found
        lam[depth] = None
        return None

    return rec(0)
