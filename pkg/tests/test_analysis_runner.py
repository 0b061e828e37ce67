"""
统一分析服务与配置测试
"""

import pytest
from rich.console import Console

from app.core.config import get_app_config, get_config, get_numeric_config
from app.services.analysis_runner import get_analyzer, verify_example_by_name


def test_config_defaults():
    numeric = get_numeric_config()
    assert numeric.sharp_tol == 1e-6
    assert numeric.cover_tol == 1e-8
    assert numeric.significant_digits == 12
    assert get_app_config().corpus_manifest.name == "corpus.yaml"


def test_validate_system_and_summary():
    config = get_config()
    assert config.validate_system()
    console = Console(record=True, width=120)
    config.print_config_summary(console)
    assert "1e-06" in console.export_text()


def test_analyzer_is_singleton():
    assert get_analyzer() is get_analyzer()


def test_get_example_unknown_name(analyzer):
    with pytest.raises(KeyError):
        analyzer.get_example("beta_42")


def test_predict_bundle(analyzer):
    rd = analyzer.load_reduction(analyzer.get_example("beta_2"))
    prediction, bound, eph, orientability = analyzer.predict(rd)
    assert prediction.fractions == [(1, 4), (3, 4)]
    assert bound.attains
    assert [e.passed for e in eph] == [True]
    assert orientability[0].lift_modulus == 4


def test_verify_example_by_name():
    result = verify_example_by_name("beta_1")
    assert result.agrees
    assert result.observed == [(1, 2)]
    assert result.observed_minimal_k == 2
    assert result.attains
