from fractions import Fraction

import pytest

from periodic_algebra import GF, QQ
from periodic_algebra.algebra import PeriodicAlgebra, StructureMatrix
from periodic_algebra.classify import (
    FAMILIES,
    UnsupportedFamilyTableError,
    classification_report,
    family_match,
    named_algebra,
)
from periodic_algebra.leibniz import is_leibniz


def M(rows, field=QQ):
    return StructureMatrix.from_rows(field, rows)


def _ids(matches, strict=None):
    return {m.family for m in matches if strict is None or m.strict == strict}


def test_match_a11_relaxed_and_strict():
    relaxed = [m for m in family_match(M([[0, 1, 0], [-1, 0, 0], [-2, 0, 0]]), 0) if m.family == "A_11"]
    assert len(relaxed) == 1 and not relaxed[0].strict
    assert dict((k, v.format()) for k, v in relaxed[0].params) == {"alpha01": "1", "alpha11": "0"}
    strict = [m for m in family_match(M([[0, 1, 0], [-1, 5, 0], [-2, 0, 0]]), 0) if m.family == "A_11"]
    assert strict[0].strict


def test_match_zero_and_a9():
    assert "A_1" in _ids(family_match(M([[0] * 3] * 3), 0))
    matches = family_match(M([[0, 0, -1], [2, 0, 0], [1, 0, 1]]), 0)
    a9 = [m for m in matches if m.family == "A_9"]
    assert a9 and a9[0].strict
    assert dict((k, v.format()) for k, v in a9[0].params) == {"alpha20": "1", "alpha22": "1"}


def test_match_over_gf2_collapses():
    # over GF(2) the A_9 coefficient 2 vanishes and -1 = 1
    matches = family_match(M([[0, 0, 1], [0, 0, 0], [1, 0, 1]], GF(2)), 0)
    assert "A_9" in _ids(matches, strict=True)


def test_no_match():
    assert family_match(M([[1, 0, 0], [0, 0, 0], [0, 0, 0]]), 0) == []
    with pytest.raises(UnsupportedFamilyTableError):
        family_match(M([[0] * 4] * 4), 0)


def test_registered_families_are_leibniz():
    samples = [Fraction(1), Fraction(-2), Fraction(3, 5)]
    for fam in FAMILIES:
        for v in samples:
            for w in samples:
                vals = {p: (v if i % 2 == 0 else w) for i, p in enumerate(fam.params)}
                assert is_leibniz(fam.instantiate(QQ, vals)), fam.id
                assert is_leibniz(fam.instantiate(GF(5), {p: 2 for p in fam.params})), fam.id


@pytest.mark.parametrize("n,t,p", [(1, 0, 2), (1, 0, 5), (2, 0, 2), (2, 1, 2), (2, 0, 3), (2, 1, 3), (3, 0, 2)])
def test_reports_have_no_unmatched(n, t, p):
    report = classification_report(n, t, GF(p))
    assert report.unmatched == ()
    assert report.candidates == p ** (n * n)
    assert all(matches for _, matches in report.solutions)


def test_report_n1_single_family():
    report = classification_report(1, 0, GF(7))
    assert len(report.solutions) == 1
    assert _ids(report.solutions[0][1]) == {"N1.zero"}


def test_report_json_layout():
    out = classification_report(2, 0, GF(2)).to_json()
    assert out["unmatched"] == []
    first = out["solutions"][0]
    assert first["alpha"] == [["0", "0"], ["0", "0"]]
    assert {"family", "params", "strict"} <= set(first["matches"][0])


def test_named_algebra_tables():
    l7 = named_algebra("L_7")
    expected = {(0, 1): 1, (1, 0): -1, (0, 2): -1, (2, 0): 1, (1, 2): 1, (2, 1): -1}
    for i in range(3):
        for j in range(3):
            assert l7.alpha.entries[i][j] == expected.get((i, j), 0)
    l2 = named_algebra("L_2")
    assert [(i, j) for i in range(3) for j in range(3) if l2.alpha.entries[i][j]] == [(2, 1)]
    assert named_algebra("L_1", alpha=0, beta=0).alpha.is_zero()
    assert named_algebra("L_t1_3").t == 1


def test_named_algebra_errors():
    with pytest.raises(KeyError):
        named_algebra("L_12")
    with pytest.raises(ValueError):
        named_algebra("L_6", beta=0)
    with pytest.raises(ValueError):
        named_algebra("L_7", gamma=1)


def test_named_algebras_fall_in_their_family():
    for k in range(1, 12):
        name = f"L_{k}"
        alg = named_algebra(name)
        assert is_leibniz(alg)
        assert f"A_{k}" in _ids(family_match(alg.alpha, 0)), name
    for name in ("L_t0_1", "L_t0_2", "L_t0_3", "L_t1_1", "L_t1_2", "L_t1_3"):
        alg = named_algebra(name)
        assert is_leibniz(alg)
        assert family_match(alg.alpha, alg.t_res)
