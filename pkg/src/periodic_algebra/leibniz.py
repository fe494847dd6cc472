"""Leibniz identity checks and exhaustive enumeration of Leibniz structure matrices."""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .algebra import Element, PeriodicAlgebra, StructureMatrix, mul_elem
from .fields import Field, FieldElement

__all__ = [
    "BudgetExceededError",
    "LeibnizViolation",
    "DEFAULT_ENUMERATION_BUDGET",
    "default_enumeration_budget",
    "leibniz_residue_check",
    "is_leibniz",
    "leibniz_element_check",
    "random_element",
    "enumerate_leibniz",
]

DEFAULT_ENUMERATION_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    def __init__(self, required: int, budget: int, what: str = "candidates"):
        super().__init__(f"search needs {required} {what}, budget is {budget}")
        self.required = required
        self.budget = budget


def default_enumeration_budget() -> int:
    env = os.environ.get("PAK_BUDGET")
    if env:
        value = int(env)
        if value <= 0:
            raise ValueError("PAK_BUDGET must be positive")
        return value
    return DEFAULT_ENUMERATION_BUDGET


@dataclass(frozen=True)
class LeibnizViolation:
    i: int
    j: int
    k: int
    lhs: FieldElement
    rhs: FieldElement

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "k": self.k, "lhs": self.lhs.format(), "rhs": self.rhs.format()}


def leibniz_residue_check(alg: PeriodicAlgebra) -> list[LeibnizViolation]:
    """Check the functional equation on every residue triple; an empty list means pass.

    For a, b, c in classes i, j, k and s = t mod n the identity reads
    alpha[j][k] alpha[i][j+k+s] = alpha[i][j] alpha[i+j+s][k] - alpha[i][k] alpha[i+k+s][j].
    """
    n, s, A = alg.n, alg.t_res, alg.alpha.entries
    violations = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = A[j][k] * A[i][(j + k + s) % n]
                rhs = A[i][j] * A[(i + j + s) % n][k] - A[i][k] * A[(i + k + s) % n][j]
                if lhs != rhs:
                    violations.append(LeibnizViolation(i, j, k, lhs, rhs))
    return violations


def is_leibniz(alg: PeriodicAlgebra) -> bool:
    return not leibniz_residue_check(alg)


def leibniz_element_check(alg: PeriodicAlgebra, x: Element, y: Element, z: Element) -> Element | None:
    """Return ``(xy)z - (xz)y - x(yz)`` when nonzero, else None."""
    lhs = mul_elem(alg, x, mul_elem(alg, y, z))
    rhs = mul_elem(alg, mul_elem(alg, x, y), z) - mul_elem(alg, mul_elem(alg, x, z), y)
    diff = rhs - lhs
    return diff if diff else None


def random_element(alg: PeriodicAlgebra, rng: random.Random, window: int, max_terms: int = 4) -> Element:
    """A random element with support in [-window, window] and small nonzero coefficients."""
    field = alg.field
    size = rng.randint(1, max_terms)
    terms = []
    for _ in range(size):
        index = rng.randint(-window, window)
        if field.is_finite:
            coeff = rng.randrange(1, field.p)
        else:
            coeff = rng.choice([-3, -2, -1, 1, 2, 3])
        terms.append((index, coeff))
    return Element(field, terms)


# --- enumeration ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _triple_plan(n: int, s: int):
    """Group flattened-index sextuples of the residue identity by the last entry they read.

    Entry ``d`` of the flattened matrix is assigned at depth ``d``; a triple can be
    checked as soon as its largest entry index is assigned.
    """
    by_depth = [[] for _ in range(n * n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                six = (
                    j * n + k, i * n + (j + k + s) % n,
                    i * n + j, ((i + j + s) % n) * n + k,
                    i * n + k, ((i + k + s) % n) * n + j,
                )
                by_depth[max(six)].append(six)
    # identical sextuples are redundant
    return tuple(tuple(sorted(set(group))) for group in by_depth)


def _satisfies(values, checks, p) -> bool:
    for a, b, c, d, e, f in checks:
        if (values[a] * values[b] - values[c] * values[d] + values[e] * values[f]) % p:
            return False
    return True


def _search(n: int, s: int, p: int, prefix: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Depth-first lexicographic scan of all p**(n*n) matrices extending ``prefix``."""
    plan = _triple_plan(n, s)
    size = n * n
    values = [0] * size
    out = []
    for d, v in enumerate(prefix):
        values[d] = v
        if not _satisfies(values, plan[d], p):
            return out

    def rec(depth: int):
        if depth == size:
            out.append(tuple(values))
            return
        checks = plan[depth]
        for v in range(p):
            values[depth] = v
            if _satisfies(values, checks, p):
                rec(depth + 1)
        values[depth] = 0

    rec(len(prefix))
    return out


def _search_task(args):
    return _search(*args)


def enumerate_leibniz(
    n: int,
    t_res: int,
    field: Field,
    budget: int | None = None,
    jobs: int = 1,
) -> list[StructureMatrix]:
    """All n x n matrices over GF(p) satisfying the residue identity, in lexicographic order.

    Every one of the p**(n*n) candidates is decided; partial assignments that
    already violate an identity prune the candidates extending them.
    """
    if not field.is_finite:
        raise ValueError("enumeration needs a prime field")
    if n < 1:
        raise ValueError("period must be >= 1")
    p = field.p
    budget = default_enumeration_budget() if budget is None else budget
    required = p ** (n * n)
    if required > budget:
        raise BudgetExceededError(required, budget)
    s = t_res % n
    if jobs <= 1:
        raw = _search(n, s, p, ())
    else:
        depth = 1
        while p**depth < jobs and depth < n * n:
            depth += 1
        prefixes = list(itertools.product(range(p), repeat=depth))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_search_task, [(n, s, p, pre) for pre in prefixes])
            raw = sorted(itertools.chain.from_iterable(chunks))
    return [_matrix_from_flat(field, n, v) for v in raw]


def _matrix_from_flat(field: Field, n: int, values) -> StructureMatrix:
    return StructureMatrix(
        field, tuple(tuple(FieldElement(field, values[i * n + j]) for j in range(n)) for i in range(n))
    )


def count_candidates(n: int, field: Field) -> int:
    return field.p ** (n * n)
