"""
Burau熵估计工具 - 谱分析服务
复特征值、谱半径、单位圆扫描 θ ↦ r(θ)、单位根谱与锐性检测
"""

import logging
from math import gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from app.core.config import get_numeric_config
from app.core.errors import SpectralSolverError
from app.schemas import BraidWord, SharpnessReport, SharpRoot, SpectralSample, SpectralScan, UnitySlot
from app.services.laurent_algebra import LaurentMatrix, burau_matrix, substitute_many
from app.services.nt_analysis import is_power_of_two

logger = logging.getLogger(__name__)


# ================================
# 特征值
# ================================

def _as_square(A) -> np.ndarray:
    matrix = np.asarray(A, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise SpectralSolverError(f"需要方阵，实际形状为 {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise SpectralSolverError("矩阵含非有限元素")
    return matrix


def eigenvalues(A) -> np.ndarray:
    """
    稠密复矩阵的全部特征值（含重数）

    使用 LAPACK geev（Hessenberg 约化 + 位移 QR），后向稳定。
    迭代上限 100·dim 只作文档约定：QR 迭代次数由 LAPACK 内部控制，
    超限时 LAPACK 报告不收敛，此处包装为 SpectralSolverError
    """
    matrix = _as_square(A)
    if matrix.shape[0] == 0:
        return np.zeros(0, dtype=complex)
    try:
        return scipy.linalg.eigvals(matrix, check_finite=False)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise SpectralSolverError(f"特征值求解不收敛: {e}") from e


def _batched_eigenvalues(stack: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(stack)):
        raise SpectralSolverError("矩阵含非有限元素")
    try:
        return np.linalg.eigvals(stack)
    except np.linalg.LinAlgError as e:
        raise SpectralSolverError(f"特征值求解不收敛: {e}") from e


def spectral_radius(A) -> float:
    """最大特征值模长"""
    values = eigenvalues(A)
    return float(np.max(np.abs(values))) if values.size else 0.0


def power_iteration(A, iterations: Optional[int] = None, seed: int = 0) -> float:
    """
    幂迭代估计谱半径，仅用于在主特征值分离良好时交叉验证

    返回 ‖A^{k+1}v‖/‖A^k v‖ 的最后一个比值
    """
    matrix = _as_square(A)
    iterations = iterations or get_numeric_config().power_iterations
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(matrix.shape[0]) + 1j * rng.standard_normal(matrix.shape[0])
    v /= np.linalg.norm(v)

    ratio = 0.0
    for _ in range(iterations):
        w = matrix @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        ratio = float(norm)
        v = w / norm
    return ratio


def _sorted_spectrum(values: Sequence[complex]) -> Tuple[complex, ...]:
    # 模长降序，模长相同按辐角升序，保证输出确定
    return tuple(
        complex(mu) for mu in sorted(values, key=lambda mu: (-round(abs(mu), 12), round(float(np.angle(mu)), 12)))
    )


# ================================
# 单位圆扫描
# ================================

_QUARTER_POINTS = np.array([1.0, 1.0j, -1.0, -1.0j])


def unit_roots(js, ks) -> np.ndarray:
    """
    e^{2πij/k} 的数值

    θ > 1/2 时取 1 − θ 处的共轭，使 B(η̄) 恰为 B(η) 的共轭；
    ±1、±i 取精确值
    """
    ks = np.broadcast_to(np.asarray(ks, dtype=np.int64), np.shape(js))
    js = np.asarray(js, dtype=np.int64) % ks
    mirrored = 2 * js > ks
    base = np.where(mirrored, ks - js, js)

    points = np.exp(2j * np.pi * base / ks)
    quarter = (4 * base) % ks == 0
    points = np.where(quarter, _QUARTER_POINTS[((4 * base) // ks) % 4], points)
    return np.where(mirrored, points.conj(), points)


def sample_angles(resolution: int) -> np.ndarray:
    """闭开区间 [0, 1) 上的均匀网格 θ = j/resolution"""
    return np.arange(resolution) / resolution


def _spectra_at(M: LaurentMatrix, js, ks) -> np.ndarray:
    return _batched_eigenvalues(substitute_many(M, unit_roots(js, ks)))


def scan(w: BraidWord, resolution: int) -> SpectralScan:
    """
    扫描 r(θ) = ρ(B(e^{2πiθ}))

    Args:
        w: 辫子词
        resolution: 采样点数（≥ 2）

    Returns:
        SpectralScan: 每个 θ 处的谱半径与特征值轨迹
    """
    if resolution < 2:
        raise ValueError("扫描分辨率至少为 2")

    logger.info(f"🚀 开始扫描: n={w.strings}, 长度={w.length}, 分辨率={resolution}")
    M = burau_matrix(w)
    thetas = sample_angles(resolution)
    spectra = _spectra_at(M, np.arange(resolution), resolution)

    samples = []
    for theta, values in zip(thetas, spectra):
        ordered = _sorted_spectrum(values)
        samples.append(
            SpectralSample(theta=float(theta), radius=float(np.max(np.abs(values))), eigenvalues=ordered)
        )

    logger.info(f"✅ 扫描完成: max r = {max(s.radius for s in samples):.6f}")
    return SpectralScan(word=w, resolution=resolution, samples=samples)


def scan_maxima(result: SpectralScan, threshold: float = 0.0) -> List[float]:
    """网格上的局部极大点（循环意义下），只保留 r ≥ threshold 的点"""
    radii = result.radii
    count = len(radii)
    maxima = []
    for index, r in enumerate(radii):
        left, right = radii[index - 1], radii[(index + 1) % count]
        if r >= threshold and ((r > left and r >= right) or (r >= left and r > right)):
            maxima.append(result.samples[index].theta)
    return maxima


# ================================
# 单位根
# ================================

def unity_spectrum(w: BraidWord, k: int) -> List[UnitySlot]:
    """j = 0..k−1 时 B(e^{2πij/k}) 的特征值"""
    if k < 1:
        raise ValueError("k 至少为 1")

    M = burau_matrix(w)
    etas = unit_roots(np.arange(k), k)
    spectra = _batched_eigenvalues(substitute_many(M, etas))
    return [
        UnitySlot(j=j, k=k, eta=complex(etas[j]), eigenvalues=_sorted_spectrum(spectra[j]))
        for j in range(k)
    ]


def primitive_fractions(k_max: int) -> List[Tuple[int, int]]:
    """所有既约分数 j/k，0 ≤ j < k ≤ k_max，按 (k, j) 排序；k = 1 只有 0/1"""
    return [(j, k) for k in range(1, k_max + 1) for j in range(k) if gcd(j, k) == 1]


def extremal_eigenvalues(w: BraidWord, k: int, lam: float, tol: float) -> List[Tuple[int, complex]]:
    """k 次单位根处所有模长 ≥ λ − tol 的特征值"""
    found = []
    for slot in unity_spectrum(w, k):
        for mu in slot.eigenvalues:
            if abs(mu) >= lam - tol:
                found.append((slot.j, mu))
    return found


def sharpness(w: BraidWord, lam: float, k_max: int, tol: Optional[float] = None) -> SharpnessReport:
    """
    锐性检测：列出所有满足 ρ(B(e^{2πij/k})) ≥ λ − tol 的既约 (j, k)，k ≤ k_max

    Args:
        w: 辫子词
        lam: 给定增长率 λ（> 1）
        k_max: 最大分母
        tol: 绝对容差，默认取配置值

    Returns:
        SharpnessReport: 锐性单位根、最小 k 以及与 ⌊2n/3⌋ 比较的标志
    """
    tol = get_numeric_config().sharp_tol if tol is None else tol
    if lam <= 1.0:
        raise ValueError("λ 必须大于 1")
    if tol <= 0.0:
        raise ValueError("容差必须为正")
    if k_max < 1:
        raise ValueError("k_max 至少为 1")

    logger.info(f"🔍 锐性检测: λ={lam}, k_max={k_max}, tol={tol:g}")
    fractions = primitive_fractions(k_max)
    M = burau_matrix(w)
    spectra = _spectra_at(M, [j for j, _ in fractions], [k for _, k in fractions])

    roots = []
    for (j, k), values in zip(fractions, spectra):
        moduli = np.abs(values)
        radius = float(np.max(moduli))
        if radius >= lam - tol:
            roots.append(
                SharpRoot(j=j, k=k, value=radius, multiplicity=int(np.sum(moduli >= lam - tol)))
            )

    minimal_k = min((r.k for r in roots), default=None)
    bound = (2 * w.strings) // 3
    report = SharpnessReport(
        lam=lam,
        tol=tol,
        k_max=k_max,
        strings=w.strings,
        sharp_roots=roots,
        minimal_k=minimal_k,
        bound=bound,
        within_bound=None if minimal_k is None else 3 * minimal_k <= 2 * w.strings,
        power_of_two=None if minimal_k is None else is_power_of_two(minimal_k),
    )

    if roots:
        logger.info(f"✅ 找到 {len(roots)} 个锐性单位根，最小 k = {minimal_k}")
    else:
        logger.info("⚠️ 在给定范围内 Burau 估计处处不锐")
    return report
