"""Parametric families of periodic Leibniz algebras and classification by enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .algebra import PeriodicAlgebra, StructureMatrix
from .fields import QQ, Field, FieldElement
from .leibniz import enumerate_leibniz, is_leibniz

__all__ = [
    "Family",
    "FamilyMatch",
    "ClassificationReport",
    "UnsupportedFamilyTableError",
    "FAMILIES",
    "families_for",
    "family_match",
    "classification_report",
    "named_algebra",
    "NAMED_ALGEBRAS",
]


class UnsupportedFamilyTableError(ValueError):
    pass


# An entry is a linear form in the parameters: {param: integer coefficient}; {} is the constant 0.
Pattern = tuple[tuple[Mapping[str, int], ...], ...]


@dataclass(frozen=True)
class Family:
    id: str
    n: int
    t_res: int
    params: tuple[str, ...]
    pattern: Pattern
    nonzero: frozenset[str] = frozenset()

    def instantiate(self, field: Field, values: Mapping[str, object], t: int | None = None) -> PeriodicAlgebra:
        vals = {p: field(values.get(p, 0)) for p in self.params}
        rows = []
        for row in self.pattern:
            out_row = []
            for form in row:
                x = field.zero
                for p, coeff in form.items():
                    x = x + vals[p] * coeff
                out_row.append(x)
            rows.append(tuple(out_row))
        return PeriodicAlgebra(field, self.t_res if t is None else t, StructureMatrix(field, tuple(rows)))


def _pattern(text_rows) -> Pattern:
    """Parse rows like ["0", "a01", "-2*a01"] into linear forms."""
    out = []
    for row in text_rows:
        forms = []
        for cell in row:
            cell = cell.replace(" ", "")
            if cell == "0":
                forms.append({})
                continue
            sign = -1 if cell.startswith("-") else 1
            cell = cell.lstrip("+-")
            if "*" in cell:
                k, name = cell.split("*")
                coeff = sign * int(k)
            else:
                coeff, name = sign, cell
            forms.append({name: coeff})
        out.append(tuple(forms))
    return tuple(out)


def _family(fid, n, t_res, rows, nonzero=()):
    pattern = _pattern(rows)
    names = sorted({p for row in pattern for form in row for p in form})
    return Family(fid, n, t_res, tuple(names), pattern, frozenset(nonzero))


FAMILIES: tuple[Family, ...] = (
    _family("N1.zero", 1, 0, [["0"]]),
    # 2Z-periodic, t in class 0
    _family("L_t0_1", 2, 0, [["0", "0"], ["alpha10", "0"]]),
    _family("L_t0_2", 2, 0, [["0", "-alpha10"], ["alpha10", "0"]], ["alpha10"]),
    _family("L_t0_3", 2, 0, [["0", "0"], ["0", "alpha11"]], ["alpha11"]),
    # Z_2 example, both translation classes, no side conditions
    _family("ex1.F0.lower", 2, 0, [["0", "0"], ["alpha10", "0"]]),
    _family("ex1.F0.skew", 2, 0, [["0", "-alpha10"], ["alpha10", "0"]]),
    _family("ex1.F0.diag", 2, 0, [["0", "0"], ["0", "alpha11"]]),
    _family("ex1.F1.upper", 2, 1, [["0", "alpha01"], ["0", "0"]]),
    _family("ex1.F1.skew", 2, 1, [["0", "-alpha10"], ["alpha10", "0"]]),
    _family("ex1.F1.corner", 2, 1, [["alpha00", "0"], ["0", "0"]]),
    # 3Z-periodic, t in class 0
    _family("A_1", 3, 0, [["0", "0", "0"], ["alpha10", "0", "0"], ["alpha20", "0", "0"]]),
    _family("A_2", 3, 0, [["0", "0", "0"], ["0", "0", "0"], ["0", "alpha21", "0"]], ["alpha21"]),
    _family("A_3", 3, 0, [["0", "0", "0"], ["0", "0", "alpha12"], ["0", "alpha21", "0"]], ["alpha12"]),
    _family("A_4", 3, 0, [["0", "0", "alpha02"], ["alpha10", "0", "0"], ["-alpha02", "0", "0"]], ["alpha02"]),
    _family("A_5", 3, 0, [["0", "alpha01", "0"], ["-alpha01", "0", "0"], ["alpha20", "0", "0"]], ["alpha01"]),
    _family(
        "A_6", 3, 0,
        [["0", "alpha01", "alpha02"], ["-alpha01", "0", "0"], ["-alpha02", "0", "0"]],
        ["alpha01", "alpha02"],
    ),
    _family(
        "A_7", 3, 0,
        [["0", "alpha01", "-alpha01"], ["-alpha01", "0", "alpha12"], ["alpha01", "-alpha12", "0"]],
        ["alpha01", "alpha12"],
    ),
    _family("A_8", 3, 0, [["0", "0", "0"], ["0", "0", "alpha12"], ["0", "0", "alpha22"]], ["alpha22"]),
    _family(
        "A_9", 3, 0,
        [["0", "0", "-alpha20"], ["2*alpha20", "0", "0"], ["alpha20", "0", "alpha22"]],
        ["alpha20", "alpha22"],
    ),
    _family("A_10", 3, 0, [["0", "0", "0"], ["0", "alpha11", "0"], ["0", "alpha21", "0"]], ["alpha11"]),
    _family(
        "A_11", 3, 0,
        [["0", "alpha01", "0"], ["-alpha01", "alpha11", "0"], ["-2*alpha01", "0", "0"]],
        ["alpha01", "alpha11"],
    ),
)

_SAMPLE_VALUES = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-3, 2), Fraction(5))


def _validate(families) -> None:
    """Every admissible instantiation over Q must satisfy the Leibniz identity."""
    for fam in families:
        for k in range(len(_SAMPLE_VALUES)):
            for zero_free in (False, True):
                values = {}
                for idx, p in enumerate(fam.params):
                    v = _SAMPLE_VALUES[(k + idx) % len(_SAMPLE_VALUES)]
                    values[p] = 0 if zero_free and p not in fam.nonzero else v
                if not is_leibniz(fam.instantiate(QQ, values)):
                    raise AssertionError(f"family {fam.id} fails the Leibniz identity at {values}")


_validate(FAMILIES)


def families_for(n: int, t_res: int) -> list[Family]:
    out = [f for f in FAMILIES if f.n == n and f.t_res == t_res % n]
    if not out:
        raise UnsupportedFamilyTableError(f"no registered families for period {n}, translation class {t_res % n}")
    return out


@dataclass(frozen=True)
class FamilyMatch:
    family: str
    params: tuple[tuple[str, FieldElement], ...]
    strict: bool

    def to_json(self) -> dict:
        return {"family": self.family, "params": {k: v.format() for k, v in self.params}, "strict": self.strict}


def _solve_linear(field: Field, rows: list[list[FieldElement]], rhs: list[FieldElement], nvars: int):
    """Exact Gauss-Jordan elimination; returns (particular solution, free columns) or None."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][nvars] for i in range(r, len(m))):
        return None
    return m[:r], pivots


def _match_family(fam: Family, A: StructureMatrix) -> FamilyMatch | None:
    field = A.field
    names = fam.params
    rows, rhs = [], []
    for i in range(fam.n):
        for j in range(fam.n):
            form = fam.pattern[i][j]
            rows.append([field(form.get(p, 0)) for p in names])
            rhs.append(A.entries[i][j])
    solved = _solve_linear(field, rows, rhs, len(names))
    if solved is None:
        return None
    reduced, pivots = solved
    # free parameters (possible when coefficients vanish in the field) are set to
    # 1 when constrained nonzero, else 0, and substituted into the pivot rows
    values = {}
    for c, p in enumerate(names):
        if c not in pivots:
            values[p] = field.one if p in fam.nonzero else field.zero
    for row, c in zip(reduced, pivots):
        x = row[len(names)]
        for c2, p2 in enumerate(names):
            if c2 not in pivots:
                x = x - row[c2] * values[p2]
        values[names[c]] = x
    if fam.instantiate(field, values).alpha != A:
        return None
    strict = all(values[p] for p in fam.nonzero)
    return FamilyMatch(fam.id, tuple((p, values[p]) for p in names), strict)


def family_match(A: StructureMatrix, t_res: int) -> list[FamilyMatch]:
    """Every registered family (for this period and translation class) reproducing A exactly."""
    out = []
    for fam in families_for(A.n, t_res):
        m = _match_family(fam, A)
        if m is not None:
            out.append(m)
    return out


@dataclass(frozen=True)
class ClassificationReport:
    field: Field
    n: int
    t: int
    candidates: int
    solutions: tuple[tuple[StructureMatrix, tuple[FamilyMatch, ...]], ...]
    unmatched: tuple[StructureMatrix, ...]

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "t": self.t,
            "candidates": self.candidates,
            "solution_count": len(self.solutions),
            "solutions": [
                {"alpha": A.to_json(), "matches": [m.to_json() for m in matches]} for A, matches in self.solutions
            ],
            "unmatched": [A.to_json() for A in self.unmatched],
        }


def classification_report(
    n: int, t_res: int, field: Field, budget: int | None = None, jobs: int = 1
) -> ClassificationReport:
    families_for(n, t_res)
    sols = enumerate_leibniz(n, t_res, field, budget=budget, jobs=jobs)
    rows = []
    unmatched = []
    for A in sols:
        matches = tuple(family_match(A, t_res))
        rows.append((A, matches))
        if not matches:
            unmatched.append(A)
    return ClassificationReport(field, n, t_res % n, field.p ** (n * n), tuple(rows), tuple(unmatched))


# --- named algebras ---------------------------------------------------------------

# name -> (period, default t, parameter names, required-nonzero parameters, {(i, j): linear form})
NAMED_ALGEBRAS: dict[str, tuple] = {
    "L_t0_1": (2, 0, ("alpha",), (), {(1, 0): {"alpha": 1}}),
    "L_t0_2": (2, 0, (), (), {(0, 1): -1, (1, 0): 1}),
    "L_t0_3": (2, 0, (), (), {(1, 1): 1}),
    "L_t1_1": (2, 1, ("alpha",), (), {(0, 1): {"alpha": 1}}),
    "L_t1_2": (2, 1, (), (), {(0, 1): -1, (1, 0): 1}),
    "L_t1_3": (2, 1, (), (), {(0, 0): 1}),
    "L_1": (3, 0, ("alpha", "beta"), (), {(1, 0): {"alpha": 1}, (2, 0): {"beta": 1}}),
    "L_2": (3, 0, (), (), {(2, 1): 1}),
    "L_3": (3, 0, ("beta",), (), {(1, 2): 1, (2, 1): {"beta": 1}}),
    "L_4": (3, 0, ("beta",), (), {(0, 2): 1, (2, 0): -1, (1, 0): {"beta": 1}}),
    "L_5": (3, 0, ("beta",), (), {(0, 1): 1, (1, 0): -1, (2, 0): {"beta": 1}}),
    "L_6": (3, 0, ("beta",), ("beta",), {(0, 1): 1, (1, 0): -1, (0, 2): {"beta": 1}, (2, 0): {"beta": -1}}),
    "L_7": (3, 0, (), (), {(0, 1): 1, (1, 0): -1, (0, 2): -1, (2, 0): 1, (1, 2): 1, (2, 1): -1}),
    "L_8": (3, 0, ("alpha",), (), {(1, 2): {"alpha": 1}, (2, 2): 1}),
    "L_9": (3, 0, (), (), {(2, 0): 1, (0, 2): -1, (1, 0): 2, (2, 2): 1}),
    "L_10": (3, 0, ("beta",), (), {(1, 1): 1, (2, 1): {"beta": 1}}),
    "L_11": (3, 0, (), (), {(0, 1): 1, (1, 0): -1, (2, 0): -2, (1, 1): 1}),
}


def named_algebra(name: str, field: Field = QQ, t: int | None = None, **params) -> PeriodicAlgebra:
    """Construct a named algebra, e.g. ``named_algebra("L_3", beta=1)``.

    Parameters default to 1 when omitted.
    """
    try:
        n, default_t, names, nonzero, entries = NAMED_ALGEBRAS[name]
    except KeyError:
        raise KeyError(f"unknown algebra {name!r}; known: {', '.join(NAMED_ALGEBRAS)}") from None
    unknown = set(params) - set(names)
    if unknown:
        raise ValueError(f"{name} takes parameters {names}, got {sorted(unknown)}")
    vals = {p: field(params.get(p, 1)) for p in names}
    for p in nonzero:
        if not vals[p]:
            raise ValueError(f"{name} requires {p} != 0")
    rows = [[field.zero] * n for _ in range(n)]
    for (i, j), form in entries.items():
        if isinstance(form, int):
            rows[i][j] = field(form)
        else:
            x = field.zero
            for p, coeff in form.items():
                x = x + vals[p] * coeff
            rows[i][j] = x
    return PeriodicAlgebra(field, default_t if t is None else t, StructureMatrix(field, tuple(map(tuple, rows))))
