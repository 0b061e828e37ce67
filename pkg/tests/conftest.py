"""
测试公共夹具：随机辫子语料、示例语料与约化数据构造
"""

import sys
from pathlib import Path
from typing import Iterable, Sequence

import pytest

# 添加项目根目录到路径
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from app.schemas import ReductionData
from app.services.analysis_runner import BurauAnalyzer
from app.services.braid_core import random_corpus
from app.utils.file_parser import BraidFileParser

GOLDEN_LAMBDA = (3 + 5 ** 0.5) / 2
SILVER_LAMBDA = 3 + 2 * 2 ** 0.5


@pytest.fixture(scope="session")
def fuzz_corpus():
    """500 个固定种子的随机辫子词，n ∈ [3, 7]，长度 ≤ 20"""
    return random_corpus(20240, 500, range(3, 8), 20)


@pytest.fixture(scope="session")
def analyzer():
    return BurauAnalyzer()


@pytest.fixture(scope="session")
def example_word(analyzer):
    """按名称读取示例语料中的辫子词"""
    def load(name: str):
        return analyzer.load_word(analyzer.get_example(name))
    return load


@pytest.fixture
def parser():
    return BraidFileParser()


def reduction(
    n: int,
    ms: Sequence[int],
    kappas: Sequence[int] = None,
    interior: Iterable[int] = (),
    outer: Iterable[int] = (1,),
    genus: int = 0,
    ell: int = 1,
    is_pA: bool = True,
    is_max_entropy: bool = True,
) -> ReductionData:
    """只含一个分量的约化数据"""
    kappas = kappas or [1] * len(ms)
    payload = {
        "n": n,
        "components": [
            {
                "ell": ell,
                "genus": genus,
                "is_pA": is_pA,
                "is_max_entropy": is_max_entropy,
                "boundary": [{"m": m, "kappa": kappa} for m, kappa in zip(ms, kappas)],
                "interior": list(interior),
                "outer": list(outer),
            }
        ],
    }
    return BraidFileParser().reduction_from_dict(payload)
