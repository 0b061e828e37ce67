"""
文件解析器
读取辫子词文件（.braid）、约化数据文件（.json）与示例语料清单（.yaml）
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import yaml
from pydantic import ValidationError

from app.core.config import get_app_config
from app.core.errors import ReductionDataError
from app.schemas import (
    BraidWord,
    ComponentData,
    CorpusExample,
    ReductionData,
    SingularityDatum,
    SingularityKind,
)
from app.services.braid_core import parse_braid

logger = logging.getLogger(__name__)


class BraidFileParser:
    """统一文件解析器"""

    def __init__(self):
        """初始化文件解析器"""
        self.supported_formats = {
            ".braid": self.parse_word_file,
            ".json": self.parse_reduction_file,
            ".yaml": self.parse_corpus,
            ".yml": self.parse_corpus,
        }
        logger.debug(f"📄 文件解析器初始化完成，支持格式: {list(self.supported_formats.keys())}")

    # ---------- 辫子词 ----------

    @staticmethod
    def strip_comments(text: str) -> str:
        """把 '#' 到行尾的注释替换为空格，保持字符位置不变"""
        lines = []
        for line in text.split("\n"):
            cut = line.find("#")
            lines.append(line if cut < 0 else line[:cut] + " " * (len(line) - cut))
        return "\n".join(lines)

    def parse_word_text(self, text: str, strings: int) -> BraidWord:
        return parse_braid(self.strip_comments(text), strings)

    def parse_word_file(self, file_path: Union[str, Path], strings: int) -> BraidWord:
        """
        解析辫子词文件

        Args:
            file_path: 文件路径
            strings: 弦数 n

        Returns:
            BraidWord: 解析结果
        """
        file_path = Path(file_path)
        logger.info(f"🔍 读取辫子词文件: {file_path.name}")
        return self.parse_word_text(file_path.read_text(encoding="utf-8"), strings)

    # ---------- 约化数据 ----------

    @staticmethod
    def _boundary_item(payload: Dict[str, Any]) -> SingularityDatum:
        m = int(payload.get("m", 1))
        default_kind = SingularityKind.PUNCTURE if m == 1 else SingularityKind.DELETED_DISK
        kind = SingularityKind(payload.get("kind", default_kind.value))
        return SingularityDatum(kind=kind, kappa=int(payload["kappa"]), m=m)

    def _component(self, payload: Dict[str, Any]) -> ComponentData:
        return ComponentData(
            ell=int(payload.get("ell", 1)),
            genus=int(payload.get("genus", 0)),
            is_pA=bool(payload.get("is_pA", False)),
            is_max_entropy=bool(payload.get("is_max_entropy", False)),
            boundary_items=[self._boundary_item(item) for item in payload.get("boundary", [])],
            interior_sings=[
                SingularityDatum(kind=SingularityKind.INTERIOR, kappa=int(kappa))
                for kappa in payload.get("interior", [])
            ],
            outer_sings=[
                SingularityDatum(kind=SingularityKind.OUTER_BOUNDARY, kappa=int(kappa))
                for kappa in payload.get("outer", [])
            ],
        )

    def reduction_from_dict(self, payload: Dict[str, Any]) -> ReductionData:
        """由 JSON 字典构造约化数据，格式错误统一转为 ReductionDataError"""
        try:
            return ReductionData(
                strings=int(payload["n"]),
                components=[self._component(c) for c in payload.get("components", [])],
            )
        except (KeyError, TypeError, ValueError, ValidationError) as e:
            raise ReductionDataError(f"约化数据格式错误: {e}") from e

    def parse_reduction_file(self, file_path: Union[str, Path]) -> ReductionData:
        """解析约化数据 JSON 文件"""
        file_path = Path(file_path)
        logger.info(f"🔍 读取约化数据: {file_path.name}")
        try:
            payload = json.loads(file_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ReductionDataError(f"无法读取约化数据 {file_path}: {e}") from e
        return self.reduction_from_dict(payload)

    # ---------- 示例语料 ----------

    def parse_corpus(self, file_path: Union[str, Path, None] = None) -> List[CorpusExample]:
        """解析示例语料清单，文件路径相对清单所在目录"""
        file_path = Path(file_path or get_app_config().corpus_manifest)
        base = file_path.parent
        payload = yaml.safe_load(file_path.read_text(encoding="utf-8")) or {}

        examples = []
        for entry in payload.get("examples", []):
            reduction = entry.get("reduction")
            examples.append(
                CorpusExample(
                    name=entry["name"],
                    title=entry.get("title", ""),
                    strings=int(entry["strings"]),
                    word_file=base / entry["word"],
                    reduction_file=base / reduction if reduction else None,
                    lam=float(entry["lambda"]),
                    k_max=int(entry.get("k_max", 16)),
                )
            )
        logger.info(f"📚 示例语料加载完成: {len(examples)} 个辫子")
        return examples

    def load(self, file_path: Union[str, Path], **kwargs):
        """按扩展名分派"""
        file_path = Path(file_path)
        handler = self.supported_formats.get(file_path.suffix.lower())
        if handler is None:
            raise ValueError(f"不支持的文件格式: {file_path.suffix}")
        return handler(file_path, **kwargs)
