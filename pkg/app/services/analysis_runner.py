"""
Burau熵估计工具 - 统一分析服务
串联辫子词解析、锐性检测与约化数据预测，对示例语料做交叉检验
"""

import logging
from typing import Dict, List, Optional, Tuple

from app.core.config import get_config
from app.core.errors import ReductionDataError
from app.schemas import (
    BraidWord,
    CorpusExample,
    EPHResult,
    ExampleVerification,
    KBoundReport,
    OrientabilityDecision,
    ReductionData,
    SharpSetPrediction,
)
from app.services.nt_analysis import burau_orientable, eph_check, k_bound_check, predict_sharp_set
from app.services.spectral import sharpness
from app.utils.file_parser import BraidFileParser

logger = logging.getLogger(__name__)

PredictionBundle = Tuple[SharpSetPrediction, KBoundReport, List[EPHResult], Dict[int, OrientabilityDecision]]


class BurauAnalyzer:
    """
    统一分析器
    负责协调解析、谱计算与 Nielsen–Thurston 预测
    """

    def __init__(self):
        """初始化分析器"""
        self.config = get_config()
        self.file_parser = BraidFileParser()
        self._corpus: Optional[List[CorpusExample]] = None
        logger.debug("📋 统一分析器初始化完成")

    # ---------- 语料 ----------

    def list_examples(self) -> List[CorpusExample]:
        if self._corpus is None:
            self._corpus = self.file_parser.parse_corpus(self.config.app.corpus_manifest)
        return self._corpus

    def get_example(self, name: str) -> CorpusExample:
        for example in self.list_examples():
            if example.name == name:
                return example
        raise KeyError(f"示例不存在: {name}")

    def load_word(self, example: CorpusExample) -> BraidWord:
        return self.file_parser.parse_word_file(example.word_file, example.strings)

    def load_reduction(self, example: CorpusExample) -> ReductionData:
        if example.reduction_file is None:
            raise ReductionDataError(f"示例 {example.name} 没有约化数据")
        return self.file_parser.parse_reduction_file(example.reduction_file)

    # ---------- 预测 ----------

    def predict(self, rd: ReductionData) -> PredictionBundle:
        """
        由约化数据给出锐性集合、上界检查、EPH 检查与各分量的可定向性

        Returns:
            (预测集合, 上界报告, 各伪Anosov分量的 EPH 结果, {分量下标: 可定向性})
        """
        eph = []
        orientability = {}
        for index, c in enumerate(rd.components):
            if not c.is_pA:
                continue
            eph.append(eph_check(c))
            orientability[index] = burau_orientable(c)

        return predict_sharp_set(rd), k_bound_check(rd), eph, orientability

    # ---------- 交叉检验 ----------

    def verify_example(self, example: CorpusExample) -> ExampleVerification:
        """
        单个示例：约化数据的预测集合与数值锐性集合比较（只比较 k ≤ k_max 的部分）

        Args:
            example: 语料条目

        Returns:
            ExampleVerification: 比较结果
        """
        logger.info(f"🚀 检验示例: {example.name}")

        word = self.load_word(example)
        report = sharpness(word, example.lam, example.k_max)
        prediction, bound, eph, _ = self.predict(self.load_reduction(example))

        predicted = [(j, k) for j, k in prediction.fractions if k <= example.k_max]
        result = ExampleVerification(
            name=example.name,
            predicted=predicted,
            observed=report.fractions,
            predicted_minimal_k=prediction.minimal_k,
            observed_minimal_k=report.minimal_k,
            eph_passed=all(e.passed for e in eph),
            within_bound=bound.within_bound,
            attains=bound.attains,
        )

        if result.passed:
            logger.info(f"✅ {example.name}: 预测与数值结果一致")
        else:
            logger.warning(f"❌ {example.name}: 预测 {predicted}，数值 {report.fractions}")
        return result

    def verify_corpus(self) -> List[ExampleVerification]:
        return [self.verify_example(example) for example in self.list_examples()]


# 全局分析器实例
_analyzer: Optional[BurauAnalyzer] = None


def get_analyzer() -> BurauAnalyzer:
    """获取全局分析器实例"""
    global _analyzer
    if _analyzer is None:
        _analyzer = BurauAnalyzer()
    return _analyzer


# 便捷函数
def verify_example_by_name(name: str) -> ExampleVerification:
    """按名称检验单个示例"""
    analyzer = get_analyzer()
    return analyzer.verify_example(analyzer.get_example(name))


def verify_all_examples() -> List[ExampleVerification]:
    """检验全部示例"""
    return get_analyzer().verify_corpus()
