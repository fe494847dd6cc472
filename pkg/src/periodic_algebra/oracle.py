"""Randomized cross-check of balanced products against their closed form."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import PeriodicAlgebra, StructureMatrix, balanced_product, closed_form_balanced
from .fields import Field

__all__ = ["OracleMismatch", "random_algebra", "oracle_balanced", "MAX_ORACLE_DEPTH"]

MAX_ORACLE_DEPTH = 3


@dataclass(frozen=True)
class OracleMismatch:
    seed: int
    trial: int
    algebra: PeriodicAlgebra
    indices: tuple[int, ...]
    direct: object
    closed_form: object

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trial": self.trial,
            "algebra": self.algebra.to_json(),
            "indices": list(self.indices),
            "balanced_product": self.direct.to_json(),
            "closed_form": self.closed_form.to_json(),
        }


def random_algebra(rng: random.Random, field: Field, n: int, t_range: int | None = None) -> PeriodicAlgebra:
    """Random structure matrix; over Q entries are small rationals, about a third of them zero."""
    t_range = 2 * n if t_range is None else t_range
    if field.is_finite:
        rows = [[rng.randrange(field.p) for _ in range(n)] for _ in range(n)]
    else:
        from fractions import Fraction

        rows = [
            [0 if rng.random() < 0.3 else Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
            for _ in range(n)
        ]
    return PeriodicAlgebra(field, rng.randint(-t_range, t_range), StructureMatrix.from_rows(field, rows))


def oracle_balanced(r: int, trials: int, seed: int, field: Field, n: int) -> OracleMismatch | None:
    """Compare recursive pairing with the closed form on ``trials`` random cases; None means all agree."""
    if r < 0 or r > MAX_ORACLE_DEPTH:
        raise ValueError(f"depth r={r} exceeds the oracle budget (r <= {MAX_ORACLE_DEPTH})")
    rng = random.Random(seed)
    for trial in range(trials):
        alg = random_algebra(rng, field, n)
        indices = tuple(rng.randint(-3 * n, 3 * n) for _ in range(1 << r))
        direct = balanced_product(alg, indices)
        closed = closed_form_balanced(alg, indices)
        if direct != closed:
            return OracleMismatch(seed, trial, alg, indices, direct, closed)
    return None
