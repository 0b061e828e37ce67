"""
示例语料验收测试：预测与数值锐性集合一致、最小 k 与 2n/3、β_8 扫描、β'_1 / β'_2 与 β'' 特征值轨迹
"""

import numpy as np
import pytest

from conftest import GOLDEN_LAMBDA, SILVER_LAMBDA

from app.services.nt_analysis import eph_check, k_bound_check, predict_sharp_set
from app.services.spectral import extremal_eigenvalues, scan, sharpness, unity_spectrum

AGREEMENT_EXAMPLES = [
    "beta_1",
    "beta_2",
    "beta_3",
    "beta_4",
    "beta_5",
    "beta_8",
    "beta_prime_1",
    "beta_prime_2",
]


@pytest.mark.parametrize("name", AGREEMENT_EXAMPLES)
def test_predicted_sharp_set_matches_numeric(analyzer, name):
    result = analyzer.verify_example(analyzer.get_example(name))
    assert sorted(result.predicted) == sorted(result.observed)
    assert result.passed


@pytest.mark.parametrize("name", AGREEMENT_EXAMPLES)
def test_scan_never_exceeds_growth_rate(analyzer, name):
    example = analyzer.get_example(name)
    result = scan(analyzer.load_word(example), 512)
    assert max(result.radii) <= example.lam + 1e-6


@pytest.mark.parametrize("name, n", [("beta_1", 3), ("beta_2", 6), ("beta_4", 12)])
def test_minimal_k_attains_two_thirds_bound(analyzer, example_word, name, n):
    example = analyzer.get_example(name)
    report = sharpness(example_word(name), example.lam, example.k_max)
    assert report.minimal_k == 2 * n // 3
    assert 3 * report.minimal_k == 2 * n
    assert k_bound_check(analyzer.load_reduction(example)).attains


@pytest.mark.parametrize("name, minimal_k", [("beta_3", 2), ("beta_5", 2), ("beta_8", 16)])
def test_minimal_k_of_other_block_braids(analyzer, name, minimal_k):
    rd = analyzer.load_reduction(analyzer.get_example(name))
    assert predict_sharp_set(rd).minimal_k == minimal_k


def test_eph_and_bound_on_all_reduction_files(analyzer):
    for example in analyzer.list_examples():
        rd = analyzer.load_reduction(example)
        for c in rd.components:
            assert eph_check(c).passed, example.name
        assert k_bound_check(rd).within_bound, example.name


def test_beta_8_scan_has_eight_peaks(analyzer, example_word):
    result = scan(example_word("beta_8"), 2048)
    peaks = (2 * np.arange(8) + 1) / 16
    for theta, r in zip(result.thetas, result.radii):
        distance = np.min(np.abs((theta - peaks + 0.5) % 1.0 - 0.5))
        if distance == 0:
            assert r >= 2.618 - 1e-3
        elif distance > 1 / 64:
            assert r <= 2.618 - 0.05
    assert max(result.radii) == pytest.approx(GOLDEN_LAMBDA, abs=1e-9)


def test_beta_prime_1_sharp_at_cubic_roots_of_minus_one(example_word):
    report = sharpness(example_word("beta_prime_1"), 5.828, 24, tol=5e-3)
    assert report.fractions == [(1, 2), (1, 6), (5, 6)]
    for root in report.sharp_roots:
        assert root.value == pytest.approx(SILVER_LAMBDA, abs=1e-9)


def test_beta_prime_2_never_sharp(example_word):
    w = example_word("beta_prime_2")
    worst = max(max(slot.radius for slot in unity_spectrum(w, k)) for k in range(1, 33))
    # k ≤ 32 上最大谱半径为 5.419006405，比 3+2√2 低约 0.409
    assert worst == pytest.approx(5.419006405, abs=1e-8)
    assert worst < SILVER_LAMBDA - 0.4
    assert sharpness(w, SILVER_LAMBDA, 32).sharp_roots == []


def test_beta_double_prime_locus(example_word):
    found = extremal_eigenvalues(example_word("beta_double_prime"), 48, 2.6180339887, 1e-3)
    assert len(found) == 3
    cube_roots = np.exp(2j * np.pi * np.arange(3) / 3)
    for _, mu in found:
        for _, nu in found:
            assert np.min(np.abs(mu / nu - cube_roots)) <= 1e-6
    # 三个特征值分别位于 −1 的三个立方根处
    assert sorted(j for j, _ in found) == [8, 24, 40]
