"""
谱分析测试：特征值、单位圆扫描、单位根谱与锐性检测
"""

import numpy as np
import pytest

from conftest import GOLDEN_LAMBDA

from app.core.errors import SpectralSolverError
from app.schemas import BraidWord
from app.services.braid_core import parse_braid
from app.services.cover_oracle import charpoly_distance, match_distance
from app.services.laurent_algebra import burau_matrix, substitute
from app.services.spectral import (
    eigenvalues,
    extremal_eigenvalues,
    power_iteration,
    primitive_fractions,
    sample_angles,
    scan,
    scan_maxima,
    sharpness,
    spectral_radius,
    unit_roots,
    unity_spectrum,
)


# ---------- 特征值 ----------

def test_golden_value_at_minus_one():
    B = substitute(burau_matrix(parse_braid("1 -2", 3)), -1)
    assert abs(spectral_radius(B) - GOLDEN_LAMBDA) <= 1e-9


def test_eigenvalues_of_diagonal_matrix():
    values = eigenvalues(np.diag([2.0, -3.0, 0.5j]))
    assert sorted(np.abs(values)) == pytest.approx([0.5, 2.0, 3.0])
    assert eigenvalues(np.zeros((0, 0))).size == 0


def test_eigenvalues_reject_bad_input():
    with pytest.raises(SpectralSolverError):
        eigenvalues(np.ones((2, 3)))
    with pytest.raises(SpectralSolverError):
        eigenvalues(np.array([[1.0, np.nan], [0.0, 1.0]]))


def test_eigenvalues_reproduce_determinant_and_trace():
    rng = np.random.default_rng(11)
    for _ in range(25):
        A = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        values = eigenvalues(A)
        det = np.linalg.det(A)
        assert abs(np.prod(values) - det) <= 1e-8 * abs(det)
        assert abs(values.sum() - np.trace(A)) <= 1e-10 * max(1.0, np.abs(A).sum())


def test_power_iteration_agrees_with_dense_solver():
    B = substitute(burau_matrix(parse_braid("1 -2", 3)), -1)
    assert power_iteration(B) == pytest.approx(GOLDEN_LAMBDA, abs=1e-9)
    assert power_iteration(np.zeros((2, 2))) == 0.0


# ---------- 单位根 ----------

def test_unit_roots_exact_quarter_points():
    points = unit_roots(np.arange(4), 4)
    assert points.tolist() == [1, 1j, -1, -1j]
    assert unit_roots([1], 2)[0] == -1


def test_unit_roots_are_conjugate_symmetric():
    k = 48
    js = np.arange(1, k)
    forward = unit_roots(js, k)
    backward = unit_roots(k - js, k)
    assert np.array_equal(forward, backward.conj())
    assert np.allclose(forward, np.exp(2j * np.pi * js / k), rtol=0.0, atol=1e-14)


def test_primitive_fractions():
    assert primitive_fractions(4) == [(0, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4)]
    assert len(primitive_fractions(12)) == 1 + sum(
        sum(1 for j in range(k) if np.gcd(j, k) == 1) for k in range(2, 13)
    )


def test_unity_spectrum_slots():
    w = parse_braid("1 -2", 3)
    slots = unity_spectrum(w, 4)
    assert [s.j for s in slots] == [0, 1, 2, 3]
    assert slots[2].eta == -1
    assert slots[2].radius == pytest.approx(GOLDEN_LAMBDA, abs=1e-9)
    # 特征值按模长降序
    for s in slots:
        moduli = [abs(mu) for mu in s.eigenvalues]
        assert moduli == sorted(moduli, reverse=True)
    with pytest.raises(ValueError):
        unity_spectrum(w, 0)


def test_extremal_eigenvalues_at_minus_one():
    w = parse_braid("1 -2", 3)
    found = extremal_eigenvalues(w, 2, GOLDEN_LAMBDA, 1e-6)
    assert len(found) == 1
    j, mu = found[0]
    assert j == 1
    assert mu == pytest.approx(GOLDEN_LAMBDA, abs=1e-9)


# ---------- 扫描 ----------

def test_scan_grid_and_values():
    result = scan(parse_braid("1 -2", 3), 8)
    assert result.resolution == 8
    assert result.thetas == pytest.approx(sample_angles(8).tolist())
    assert result.radii[0] == pytest.approx(1.0, abs=1e-9)
    assert result.radii[4] == pytest.approx(GOLDEN_LAMBDA, abs=1e-9)
    assert all(len(s.eigenvalues) == 2 for s in result.samples)


def test_scan_of_identity_is_constant_one():
    result = scan(BraidWord(strings=5, letters=()), 16)
    assert np.allclose(result.radii, 1.0, rtol=0.0, atol=1e-12)


def test_scan_rejects_small_resolution():
    with pytest.raises(ValueError):
        scan(parse_braid("1", 3), 1)


def test_scan_maxima_finds_peak_at_minus_one():
    result = scan(parse_braid("1 -2", 3), 64)
    maxima = scan_maxima(result, GOLDEN_LAMBDA - 1e-3)
    assert maxima == [0.5]


def test_radius_is_even_and_one_at_trivial_point(fuzz_corpus):
    resolution = 16
    for w in fuzz_corpus:
        radii = scan(w, resolution).radii
        assert abs(radii[0] - 1.0) <= 1e-8
        for j in range(1, resolution):
            assert abs(radii[j] - radii[resolution - j]) <= 1e-8


def _same_multiset(a, b) -> bool:
    scale = max(1.0, float(np.max(np.abs(a))))
    if match_distance(a, b, 1e-8 * scale) <= 1e-8 * scale:
        return True
    # 亏损特征值逐点只精确到 ε^{1/m}，改用特征多项式系数
    return charpoly_distance(a, b, scale) <= 1e-10


@pytest.mark.parametrize("name", ["beta_1", "beta_2", "beta_prime_1", "beta_prime_2"])
def test_spectrum_at_mirror_point_is_conjugate(example_word, name):
    M = burau_matrix(example_word(name))
    k = 97
    for j in (5, 17, 40):
        forward = eigenvalues(substitute(M, complex(unit_roots([j], k)[0])))
        backward = eigenvalues(substitute(M, complex(unit_roots([k - j], k)[0])))
        assert _same_multiset(forward, backward.conj())


# ---------- 锐性检测 ----------

def test_sharpness_of_simplest_pseudo_anosov():
    report = sharpness(parse_braid("1 -2", 3), 2.6180339887, 16)
    assert report.fractions == [(1, 2)]
    assert report.minimal_k == 2
    assert report.bound == 2
    assert report.within_bound is True
    assert report.power_of_two is True
    assert report.sharp_roots[0].multiplicity == 1
    assert report.sharp_roots[0].value == pytest.approx(GOLDEN_LAMBDA, abs=1e-9)


def test_sharpness_nowhere_sharp():
    report = sharpness(parse_braid("1 -2", 3), 3.0, 8)
    assert report.sharp_roots == []
    assert report.minimal_k is None
    assert report.within_bound is None


def test_sharpness_validates_arguments():
    w = parse_braid("1 -2", 3)
    with pytest.raises(ValueError):
        sharpness(w, 1.0, 8)
    with pytest.raises(ValueError):
        sharpness(w, 2.0, 8, tol=0.0)
    with pytest.raises(ValueError):
        sharpness(w, 2.0, 0)
