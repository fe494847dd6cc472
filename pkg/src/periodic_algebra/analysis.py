"""Structural invariants of periodic algebras.

Every left-normed (or balanced) product of basis vectors is a scalar multiple
of a single basis vector, and products of full residue classes cover full
residue classes.  The lower central and derived series are therefore exact
recursions on subsets of residues.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field as dc_field

from .algebra import PeriodicAlgebra, StructureMatrix, closed_form_coefficient
from .leibniz import BudgetExceededError, is_leibniz

__all__ = [
    "UnsupportedCaseError",
    "ResidueSeries",
    "Fingerprint",
    "GenerationReport",
    "DEFAULT_TUPLE_BUDGET",
    "right_nilpotency_check",
    "cor_c1_check",
    "lower_central_series",
    "derived_series",
    "solvability_via_F1",
    "is_perfect",
    "square_residues",
    "annihilator_residues",
    "center_residues",
    "element_right_nilpotent",
    "is_lie",
    "generated_subalgebra",
    "fingerprint",
]

DEFAULT_TUPLE_BUDGET = 10**7


class UnsupportedCaseError(ValueError):
    pass


@dataclass(frozen=True)
class ResidueSeries:
    stages: tuple[frozenset[int], ...]
    terminated: bool
    index: int | None
    start: int  # numbering of stages[0]: 1 for the lower central series, 0 for the derived series

    def to_json(self) -> dict:
        return {
            "stages": [{"k": self.start + k, "residues": sorted(s)} for k, s in enumerate(self.stages)],
            "terminated": self.terminated,
            "index": self.index,
        }


def _run_series(first: frozenset[int], step, start: int) -> ResidueSeries:
    stages = [first]
    seen = {first}
    current = first
    while current:
        current = step(current)
        stages.append(current)
        if current in seen and current:
            return ResidueSeries(tuple(stages), False, None, start)
        seen.add(current)
    return ResidueSeries(tuple(stages), True, start + len(stages) - 1, start)


def lower_central_series(alg: PeriodicAlgebra) -> ResidueSeries:
    """Residue sets of L^1 = L, L^(k+1) = L^k L."""
    n, s, nz = alg.n, alg.t_res, alg.alpha.nonzero

    def step(cur):
        return frozenset((i + j + s) % n for i in cur for j in range(n) if nz[i][j])

    return _run_series(frozenset(range(n)), step, 1)


def derived_series(alg: PeriodicAlgebra) -> ResidueSeries:
    """Residue sets of L^[0] = L, L^[k+1] = L^[k] L^[k]."""
    n, s, nz = alg.n, alg.t_res, alg.alpha.nonzero

    def step(cur):
        return frozenset((i + j + s) % n for i in cur for j in cur if nz[i][j])

    return _run_series(frozenset(range(n)), step, 0)


def right_nilpotency_check(alg: PeriodicAlgebra, budget: int = DEFAULT_TUPLE_BUDGET) -> bool:
    """Chained-product criterion for right nilpotency (translation class 0 only).

    The algebra is right nilpotent iff for every start class i1 and every tail
    (i2, ..., ik) of length 1..n summing to 0 mod n, the product
    alpha[i1][i2] alpha[i1+i2][i3] ... vanishes.  Tails of length n are needed:
    a nonvanishing cycle may visit every class exactly once.
    """
    n, nz = alg.n, alg.alpha.nonzero
    if alg.t_res != 0:
        raise UnsupportedCaseError(
            "chained-product criterion needs t = 0 mod n; use lower_central_series for general t"
        )
    required = n * sum(n ** (length - 1) for length in range(1, n + 1))
    if required > budget:
        raise BudgetExceededError(required, budget, "tuples")
    for length in range(1, n + 1):
        for head in itertools.product(range(n), repeat=length - 1):
            last = (-sum(head)) % n
            tail = head + (last,)
            for start in range(n):
                pos = start
                for step in tail:
                    if not nz[pos][step]:
                        break
                    pos = (pos + step) % n
                else:
                    return False
    return True


def cor_c1_check(A: StructureMatrix) -> bool:
    """Polynomial conditions for right nilpotency of a 3-periodic Leibniz algebra."""
    if A.n != 3:
        raise ValueError(f"needs a 3x3 matrix, got {A.n}x{A.n}")
    a = A.entries
    return (
        all(not a[i][0] for i in range(3))
        and not (a[0][1] * a[1][1] * a[2][1])
        and not (a[0][2] * a[1][2] * a[2][2])
        and not (a[0][1] * a[1][2])
        and not (a[1][1] * a[2][2])
        and not (a[2][1] * a[0][2])
    )


def solvability_via_F1(alg: PeriodicAlgebra, m: int, budget: int = DEFAULT_TUPLE_BUDGET) -> bool:
    """True iff every balanced product of 2**m basis vectors vanishes.

    Structure constants only depend on residues, so residue tuples suffice; each
    coefficient comes from the closed-form double product.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    n = alg.n
    required = n ** (1 << m)
    if required > budget:
        raise BudgetExceededError(required, budget, "tuples")
    for tup in itertools.product(range(n), repeat=1 << m):
        if closed_form_coefficient(alg, tup):
            return False
    return True


def square_residues(alg: PeriodicAlgebra) -> frozenset[int]:
    """Residue classes spanning L^2."""
    n, s, nz = alg.n, alg.t_res, alg.alpha.nonzero
    return frozenset((i + j + s) % n for i in range(n) for j in range(n) if nz[i][j])


def is_perfect(alg: PeriodicAlgebra) -> bool:
    """L^2 = L: every class p is hit by some product of classes i and p - i - t."""
    n, s, nz = alg.n, alg.t_res, alg.alpha.nonzero
    return all(any(nz[i][(p - i - s) % n] for i in range(n)) for p in range(n))


def annihilator_residues(alg: PeriodicAlgebra, side: str) -> frozenset[int]:
    """Classes lying in the right (zero column) or left (zero row) annihilator."""
    n, nz = alg.n, alg.alpha.nonzero
    if side == "right":
        return frozenset(j for j in range(n) if not any(nz[i][j] for i in range(n)))
    if side == "left":
        return frozenset(i for i in range(n) if not any(nz[i]))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def center_residues(alg: PeriodicAlgebra) -> frozenset[int]:
    return annihilator_residues(alg, "left") & annihilator_residues(alg, "right")


def element_right_nilpotent(alg: PeriodicAlgebra, i: int) -> bool:
    """Is e_a (a = i mod n, i != 0) right nilpotent, i.e. does some right power vanish?

    The (n+1)-th right power has coefficient alpha[i][i] alpha[2i][i] ... alpha[ni][i];
    when gcd(i, n) = 1 these rows run over the whole column i.
    """
    n = alg.n
    if not 0 <= i < n:
        raise ValueError(f"residue {i} outside [0, {n})")
    if i == 0:
        raise UnsupportedCaseError("criterion is stated for i != 0")
    if alg.t_res != 0:
        raise UnsupportedCaseError("criterion needs t = 0 mod n")
    nz = alg.alpha.nonzero
    return not all(nz[(k * i) % n][i] for k in range(1, n + 1))


def is_lie(alg: PeriodicAlgebra) -> bool:
    """Alternating structure matrix: alpha[i][j] = -alpha[j][i] and zero diagonal."""
    A = alg.alpha.entries
    n = alg.n
    return all(not A[i][i] for i in range(n)) and all(
        A[i][j] == -A[j][i] for i in range(n) for j in range(i + 1, n)
    )


@dataclass(frozen=True)
class GenerationReport:
    start: int
    residues: frozenset[int]
    full_index_coverage: bool  # every integer index is reached
    condition_b: bool  # (alpha[i][s], alpha[s][i]) != (0, 0) for all i

    def to_json(self) -> dict:
        return {
            "start": self.start,
            "residues": sorted(self.residues),
            "full_index_coverage": self.full_index_coverage,
            "condition_b": self.condition_b,
        }


def generated_subalgebra(alg: PeriodicAlgebra, s: int) -> GenerationReport:
    """Subalgebra generated by the whole class {e_(nk+s)}.

    Generators form a full class, and products of full classes are full
    classes, so each reached class is covered completely.
    """
    if alg.t != 0:
        raise UnsupportedCaseError("generation analysis needs t = 0")
    n, nz = alg.n, alg.alpha.nonzero
    if not 0 <= s < n:
        raise ValueError(f"residue {s} outside [0, {n})")
    reached = {s}
    frontier = [s]
    while frontier:
        new = []
        for i in list(reached):
            for j in frontier:
                for a, b in ((i, j), (j, i)):
                    c = (a + b) % n
                    if nz[a][b] and c not in reached:
                        reached.add(c)
                        new.append(c)
        frontier = new
    cond_b = all(nz[i][s] or nz[s][i] for i in range(n))
    return GenerationReport(s, frozenset(reached), len(reached) == n, cond_b)


@dataclass(frozen=True)
class Fingerprint:
    is_leibniz: bool
    is_lie: bool
    is_right_nilpotent: bool
    nilpotency_index: int | None
    solvable: bool
    solvability_index: int | None
    perfect: bool
    right_annihilator_residues: frozenset[int] = dc_field(default_factory=frozenset)
    left_annihilator_residues: frozenset[int] = dc_field(default_factory=frozenset)
    center_residues: frozenset[int] = dc_field(default_factory=frozenset)
    square_residues: frozenset[int] = dc_field(default_factory=frozenset)

    def to_json(self) -> dict:
        out = asdict(self)
        for key, value in out.items():
            if isinstance(value, frozenset):
                out[key] = sorted(value)
        return out

    def invariants(self) -> dict:
        """The part of the fingerprint that isomorphisms cannot change.

        Residue sets are only meaningful up to relabelling of classes, so they
        enter through emptiness and mutual inclusions of the subspaces they span.
        """
        subspaces = {
            "center": self.center_residues,
            "left_annihilator": self.left_annihilator_residues,
            "right_annihilator": self.right_annihilator_residues,
            "square": self.square_residues,
        }
        out = {
            "is_leibniz": self.is_leibniz,
            "is_lie": self.is_lie,
            "is_right_nilpotent": self.is_right_nilpotent,
            "nilpotency_index": self.nilpotency_index,
            "solvable": self.solvable,
            "solvability_index": self.solvability_index,
            "perfect": self.perfect,
        }
        for name, res in subspaces.items():
            out[f"{name}_is_zero"] = not res
        names = list(subspaces)
        for a, b in itertools.permutations(names, 2):
            out[f"{a}_within_{b}"] = subspaces[a] <= subspaces[b]
        return out

    def invariant_diff(self, other: Fingerprint) -> dict:
        mine, theirs = self.invariants(), other.invariants()
        return {k: [mine[k], theirs[k]] for k in mine if mine[k] != theirs[k]}


def fingerprint(alg: PeriodicAlgebra) -> Fingerprint:
    lower = lower_central_series(alg)
    derived = derived_series(alg)
    return Fingerprint(
        is_leibniz=is_leibniz(alg),
        is_lie=is_lie(alg),
        is_right_nilpotent=lower.terminated,
        nilpotency_index=lower.index,
        solvable=derived.terminated,
        solvability_index=derived.index,
        perfect=is_perfect(alg),
        right_annihilator_residues=annihilator_residues(alg, "right"),
        left_annihilator_residues=annihilator_residues(alg, "left"),
        center_residues=center_residues(alg),
        square_residues=square_residues(alg),
    )
