"""
报告生成模块
把矩阵、扫描与各类检验结果输出为 CSV / JSON / 终端表格；
文件一律先写临时文件，成功后再原子替换
"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd
from rich.console import Console
from rich.table import Table

from app.core.config import get_numeric_config
from app.schemas import (
    CoverVerdict,
    EPHResult,
    KBoundReport,
    OrientabilityDecision,
    SharpnessReport,
    SharpSetPrediction,
    SpectralScan,
    UnitySlot,
)
from app.services.laurent_algebra import BivariatePoly, LaurentMatrix

logger = logging.getLogger(__name__)


# ================================
# 数值格式
# ================================

def round_float(value: float, digits: Optional[int] = None) -> float:
    """保留有效数字（默认 12 位），使输出逐字节确定"""
    digits = digits or get_numeric_config().significant_digits
    # 加 0.0 把 -0.0 规范为 0.0
    return float(f"{float(value):.{digits}g}") + 0.0


def complex_to_json(value: complex) -> Dict[str, float]:
    return {"re": round_float(value.real), "im": round_float(value.imag)}


def _normalize(payload: Any) -> Any:
    # 递归处理浮点、复数与 numpy 标量
    if isinstance(payload, dict):
        return {str(k): _normalize(v) for k, v in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [_normalize(v) for v in payload]
    if isinstance(payload, (bool, np.bool_)):
        return bool(payload)
    if isinstance(payload, (int, np.integer)):
        return int(payload)
    if isinstance(payload, (float, np.floating)):
        return round_float(payload)
    if isinstance(payload, (complex, np.complexfloating)):
        return complex_to_json(complex(payload))
    return payload


def to_json_text(payload: Any) -> str:
    return json.dumps(_normalize(payload), sort_keys=True, ensure_ascii=False, indent=2) + "\n"


# ================================
# 报告载荷
# ================================

def matrix_payload(M: LaurentMatrix) -> Dict:
    return M.to_json()


def charpoly_payload(chi: BivariatePoly) -> Dict:
    payload = chi.to_json()
    payload["text"] = str(chi)
    return payload


def sharpness_payload(report: SharpnessReport) -> Dict:
    return {
        "lambda": report.lam,
        "tol": report.tol,
        "k_max": report.k_max,
        "sharp": [
            {"j": r.j, "k": r.k, "value": r.value, "multiplicity": r.multiplicity}
            for r in report.sharp_roots
        ],
        "minimal_k": report.minimal_k,
        "bound": report.bound,
        "within_bound": report.within_bound,
        "power_of_two": report.power_of_two,
    }


def unity_payload(slots: List[UnitySlot]) -> Dict:
    return {
        "k": slots[0].k if slots else None,
        "roots": [
            {"j": s.j, "eta": s.eta, "radius": s.radius, "eigenvalues": list(s.eigenvalues)}
            for s in slots
        ],
    }


def cover_payload(verdict: CoverVerdict) -> Dict:
    return {
        "k": verdict.k,
        "dim": verdict.dim,
        "max_match_distance": verdict.max_match_distance,
        "cluster_distance": verdict.cluster_distance,
        "charpoly_distance": verdict.charpoly_distance,
        "pass": verdict.passed,
    }


def prediction_payload(
    prediction: SharpSetPrediction,
    bound: KBoundReport,
    eph: List[EPHResult],
    orientability: Dict[int, OrientabilityDecision],
) -> Dict:
    return {
        "sharp": [{"j": j, "k": k} for j, k in prediction.fractions],
        "minimal_k": prediction.minimal_k,
        "contributing_components": prediction.contributing_components,
        "eph": [{"lhs": e.lhs, "rhs": e.rhs, "residual": e.residual, "pass": e.passed} for e in eph],
        "orientability": {
            str(index): {
                "orientable": d.orientable,
                "a": d.a,
                "u": d.u,
                "lift_modulus": d.lift_modulus,
                "reasons": d.reasons,
            }
            for index, d in orientability.items()
        },
        "bound": bound.bound,
        "predicted_minimal_k": bound.predicted_minimal_k,
        "within_bound": bound.within_bound,
        "attains": bound.attains,
    }


# ================================
# 扫描 CSV
# ================================

def scan_frame(result: SpectralScan, include_loci: bool = True) -> pd.DataFrame:
    """每个采样点一行：theta, spectral_radius[, re_1, im_1, ...]"""
    data: Dict[str, List[float]] = {
        "theta": [s.theta for s in result.samples],
        "spectral_radius": [s.radius for s in result.samples],
    }
    if include_loci and result.samples:
        width = len(result.samples[0].eigenvalues)
        for index in range(width):
            data[f"re_{index + 1}"] = [s.eigenvalues[index].real for s in result.samples]
            data[f"im_{index + 1}"] = [s.eigenvalues[index].imag for s in result.samples]
    return pd.DataFrame(data)


def scan_csv_text(result: SpectralScan, include_loci: bool = True) -> str:
    frame = scan_frame(result, include_loci)
    # 先按有效数字取整，避免 -0 与尾数抖动
    frame = frame.apply(lambda column: column.map(round_float))
    return frame.to_csv(index=False, float_format=get_numeric_config().csv_float_format, lineterminator="\n")


def scan_payload(result: SpectralScan, include_loci: bool = True) -> Dict:
    return {
        "strings": result.word.strings,
        "resolution": result.resolution,
        "samples": [
            {
                "theta": s.theta,
                "spectral_radius": s.radius,
                **({"eigenvalues": list(s.eigenvalues)} if include_loci else {}),
            }
            for s in result.samples
        ],
    }


# ================================
# 原子写入
# ================================

def atomic_write_text(path: Union[str, Path], text: str) -> Path:
    """先写入同目录临时文件，成功后 os.replace；失败时不留下部分文件"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handle, temp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(temp_name, path)
    except BaseException:
        if os.path.exists(temp_name):
            os.remove(temp_name)
        raise
    logger.info(f"💾 已写入: {path}")
    return path


class ReportWriter:
    """
    报告输出器
    负责把文本送到 stdout 或文件，以及终端表格渲染
    """

    def __init__(self, console: Optional[Console] = None):
        """初始化报告输出器"""
        self.console = console or Console()

    def emit(self, text: str, out: Optional[Path] = None, echo=None) -> None:
        """
        输出文本

        Args:
            text: 完整文本
            out: 输出文件，None 表示 stdout
            echo: 写 stdout 的函数（命令行层传入 typer.echo）
        """
        if out is not None:
            atomic_write_text(out, text)
        elif echo is not None:
            echo(text, nl=False)
        else:
            self.console.out(text, end="")

    # ---------- 终端表格 ----------

    def matrix_table(self, M: LaurentMatrix, title: str) -> Table:
        table = Table(title=title, show_header=False)
        for _ in range(M.dim):
            table.add_column(justify="right")
        for row in M.entries:
            table.add_row(*(str(x) for x in row))
        return table

    def sharpness_table(self, report: SharpnessReport) -> Table:
        table = Table(title=f"🎯 锐性单位根 (λ = {report.lam:.10g}, k ≤ {report.k_max})")
        table.add_column("j", justify="right")
        table.add_column("k", justify="right")
        table.add_column("θ = j/k", justify="right")
        table.add_column("谱半径", justify="right")
        table.add_column("重数", justify="right")
        for r in report.sharp_roots:
            table.add_row(str(r.j), str(r.k), f"{r.j / r.k:.6f}", f"{r.value:.10f}", str(r.multiplicity))
        return table

    def unity_table(self, slots: List[UnitySlot]) -> Table:
        table = Table(title=f"🔢 {slots[0].k if slots else 0} 次单位根处的谱")
        table.add_column("j", justify="right")
        table.add_column("η", justify="right")
        table.add_column("谱半径", justify="right")
        table.add_column("特征值", justify="left")
        for s in slots:
            values = ", ".join(f"{mu.real:+.6f}{mu.imag:+.6f}i" for mu in s.eigenvalues)
            table.add_row(str(s.j), f"{s.eta.real:+.4f}{s.eta.imag:+.4f}i", f"{s.radius:.10f}", values)
        return table

    def scan_summary_table(self, result: SpectralScan, maxima: List[float]) -> Table:
        radii = dict(zip(result.thetas, result.radii))
        table = Table(title=f"📈 扫描极大点 (分辨率 {result.resolution})")
        table.add_column("θ", justify="right")
        table.add_column("r(θ)", justify="right")
        for theta in maxima:
            table.add_row(f"{theta:.6f}", f"{radii[theta]:.10f}")
        return table
