"""
Laurent 多项式代数测试：环运算、约化 Burau 表示、行列式、特征多项式与数值代入
"""

import numpy as np
import pytest

from app.core.errors import GeneratorIndexError, InexactDivisionError, SubstitutionError
from app.services.braid_core import concat, exponent_sum, inverse, parse_braid
from app.services.laurent_algebra import (
    ONE,
    T,
    T_INV,
    ZERO,
    BivariatePoly,
    LaurentMatrix,
    LaurentPoly,
    burau_generator,
    burau_matrix,
    char_poly,
    coefficient_stack,
    decompose,
    determinant,
    recompose,
    substitute,
    substitute_many,
)


# ---------- Laurent 多项式 ----------

def test_canonical_form_strips_zeros():
    p = LaurentPoly([0, 0, 3, 0, -1, 0], -2)
    assert p.min_exp == 0
    assert p.coeffs == (3, 0, -1)
    assert LaurentPoly([0, 0], 5) == ZERO
    assert ZERO.min_exp == 0


def test_ring_operations():
    a = ONE + T
    b = ONE - T
    assert a * b == ONE - T * T
    assert a - a == ZERO
    assert 2 * T_INV + 1 == LaurentPoly([2, 1], -1)
    assert T * T_INV == ONE
    assert (a ** 3).coeffs == (1, 3, 3, 1)


def test_negative_power_only_for_units():
    assert T ** -2 == LaurentPoly.monomial(1, -2)
    assert (-T) ** -3 == LaurentPoly.monomial(-1, -3)
    with pytest.raises(InexactDivisionError):
        (ONE + T) ** -1


def test_exact_division():
    a = LaurentPoly([1, 2, 1], -1)
    assert a.exact_div(ONE + T) == LaurentPoly([1, 1], -1)
    assert (a * T_INV).exact_div(T_INV) == a
    assert LaurentPoly([4, -6], 2).exact_div_int(2) == LaurentPoly([2, -3], 2)
    with pytest.raises(InexactDivisionError):
        a.exact_div(ONE + T + T * T)
    with pytest.raises(InexactDivisionError):
        LaurentPoly([3, 1]).exact_div_int(2)
    with pytest.raises(InexactDivisionError):
        a.exact_div(ZERO)


def test_string_form():
    assert str(LaurentPoly([-1, 2, -1], -1)) == "-t^-1+2-t"
    assert str(ZERO) == "0"
    assert str(LaurentPoly.monomial(3, 2)) == "3t^2"


def test_json_round_trip_of_single_poly():
    p = LaurentPoly([5, 0, -2], -3)
    assert p.to_json() == {"-3": 5, "-1": -2}
    assert LaurentPoly.from_json(p.to_json()) == p


def test_evaluate():
    p = LaurentPoly([-1, 2, -1], -1)
    assert p.evaluate(1) == 0
    assert p.evaluate(-1) == pytest.approx(4)
    assert LaurentPoly([1, 1]).evaluate(0) == 1
    with pytest.raises(SubstitutionError):
        p.evaluate(0)


# ---------- 约化 Burau 表示 ----------

def test_generator_matrices_for_three_strings():
    assert burau_generator(1, 1, 3) == LaurentMatrix([[-T, ZERO], [ONE, ONE]])
    assert burau_generator(2, 1, 3) == LaurentMatrix([[ONE, T], [ZERO, -T]])
    assert burau_generator(1, 1, 2) == LaurentMatrix([[-T]])
    with pytest.raises(GeneratorIndexError):
        burau_generator(3, 1, 3)


def test_burau_matrix_of_small_words():
    w = parse_braid("1 -2", 3)
    expected = LaurentMatrix([[-T, -T], [ONE, ONE - T_INV]])
    assert burau_matrix(w) == expected
    assert burau_matrix(parse_braid("", 3)) == LaurentMatrix.identity(2)
    assert burau_matrix(parse_braid("1", 2)) == LaurentMatrix([[-T]])


def test_generator_times_inverse_is_identity():
    for n in (2, 3, 4, 6):
        for i in range(1, n):
            assert burau_generator(i, 1, n) @ burau_generator(i, -1, n) == LaurentMatrix.identity(n - 1)


def test_column_operations_match_matrix_products(fuzz_corpus):
    for w in fuzz_corpus[:60]:
        product = LaurentMatrix.identity(w.strings - 1)
        for g in w.letters:
            product = product @ burau_generator(abs(g), 1 if g > 0 else -1, w.strings)
        assert burau_matrix(w) == product


def test_braid_relations_hold_exactly():
    for n in range(3, 8):
        for i in range(1, n - 1):
            lhs = parse_braid(f"{i} {i + 1} {i}", n)
            rhs = parse_braid(f"{i + 1} {i} {i + 1}", n)
            assert burau_matrix(lhs) == burau_matrix(rhs)
        for i in range(1, n):
            for k in range(i + 2, n):
                assert burau_matrix(parse_braid(f"{i} {k}", n)) == burau_matrix(parse_braid(f"{k} {i}", n))


def test_word_times_inverse_is_identity(fuzz_corpus):
    for w in fuzz_corpus:
        assert burau_matrix(concat(w, inverse(w))) == LaurentMatrix.identity(w.strings - 1)


def test_determinant_is_power_of_minus_t(fuzz_corpus):
    for w in fuzz_corpus:
        e = exponent_sum(w)
        assert determinant(burau_matrix(w)) == LaurentPoly.monomial((-1) ** abs(e), e)


def test_determinant_handles_zero_pivot():
    M = LaurentMatrix([[ZERO, ONE], [ONE, ZERO]])
    assert determinant(M) == LaurentPoly.constant(-1)
    assert determinant(LaurentMatrix([[ONE, T], [ONE, T]])) == ZERO


# ---------- 特征多项式 ----------

def test_char_poly_of_single_generator():
    chi = char_poly(burau_matrix(parse_braid("1", 3)))
    # (x + t)(x − 1)
    assert chi == BivariatePoly([-T, T - 1, ONE])
    assert chi.degree_x == 2
    assert chi.is_monic()
    assert str(chi) == "x^2+(-1+t)*x-t"


def test_char_poly_constant_term_is_signed_determinant(fuzz_corpus):
    for w in fuzz_corpus[:100]:
        M = burau_matrix(w)
        chi = char_poly(M)
        sign = -1 if M.dim % 2 else 1
        assert chi.coeffs[0] == determinant(M) * sign
        assert chi.coeffs[-1] == ONE


def test_char_poly_consistent_with_numeric_evaluation(fuzz_corpus):
    rng = np.random.default_rng(11)
    points = np.exp(2j * np.pi * rng.random(20))
    for w in fuzz_corpus:
        M = burau_matrix(w)
        chi = char_poly(M)
        for eta, B in zip(points, substitute_many(M, points)):
            numeric = np.poly(B)
            exact = chi.coefficients_at(eta)
            scale = max(1.0, float(np.max(np.abs(exact))))
            assert np.allclose(exact, numeric, rtol=0.0, atol=1e-8 * scale)


def test_bivariate_json_and_terms():
    chi = char_poly(burau_matrix(parse_braid("1", 3)))
    assert chi.terms() == {(0, 1): -1, (1, 0): -1, (1, 1): 1, (2, 0): 1}
    payload = chi.to_json()
    assert payload["degree"] == 2
    assert payload["coefficients"]["2"] == {"0": 1}


# ---------- 分解与代入 ----------

def test_decompose_recompose(fuzz_corpus):
    for w in fuzz_corpus[:100]:
        M = burau_matrix(w)
        parts = decompose(M)
        assert all(any(any(row) for row in matrix) for _, matrix in parts)
        assert recompose(parts, M.dim) == M


def test_coefficient_stack_of_identity():
    lo, stack = coefficient_stack(LaurentMatrix.identity(3))
    assert lo == 0
    assert stack.shape == (1, 3, 3)
    assert np.array_equal(stack[0], np.eye(3))


def test_substitute_golden_value():
    B = substitute(burau_matrix(parse_braid("1 -2", 3)), -1)
    assert np.allclose(B, [[1, 1], [1, 2]], rtol=0.0, atol=1e-12)


def test_substitute_is_multiplicative(fuzz_corpus):
    rng = np.random.default_rng(5)
    pairs = [(a, b) for a, b in zip(fuzz_corpus[:200], fuzz_corpus[200:400]) if a.strings == b.strings]
    for a, b in pairs[:40]:
        eta = complex(np.exp(2j * np.pi * rng.random()))
        A, B = burau_matrix(a), burau_matrix(b)
        lhs = substitute(A @ B, eta)
        rhs = substitute(A, eta) @ substitute(B, eta)
        scale = max(1.0, float(np.max(np.abs(rhs))))
        assert np.max(np.abs(lhs - rhs)) <= 1e-10 * scale


def test_substitute_rejects_zero():
    with pytest.raises(SubstitutionError):
        substitute_many(LaurentMatrix.identity(2), [1.0, 0.0])


def test_matrix_json_round_trip():
    M = burau_matrix(parse_braid("1 -2", 3))
    payload = M.to_json()
    assert payload["dim"] == 2
    assert payload["entries"][0][0] == {"1": -1}
    assert LaurentMatrix.from_json(payload) == M
