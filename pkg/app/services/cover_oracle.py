"""
Burau熵估计工具 - 循环覆盖谱等价检验
把 k 重循环覆盖上的作用写成一个块循环整数矩阵，
独立验证其谱等于 M(1) ⊕ M(η_k) ⊕ … ⊕ M(η_k^{k−1}) 的谱
"""

import logging
from typing import List, Optional, Sequence

import numpy as np
from scipy.cluster.hierarchy import fclusterdata
from scipy.optimize import linear_sum_assignment

from app.core.config import get_numeric_config
from app.schemas import CoverAction, CoverVerdict
from app.services.braid_core import random_corpus
from app.services.laurent_algebra import LaurentMatrix, burau_matrix, decompose, substitute, substitute_many
from app.services.spectral import eigenvalues, unit_roots

logger = logging.getLogger(__name__)


# ================================
# 构造
# ================================

def residue_sums(M: LaurentMatrix, k: int) -> List[List[List[int]]]:
    """N_c = Σ_l M_{lk+c}，c = 0..k−1（精确整数）"""
    if k < 1:
        raise ValueError("k 至少为 1")
    r = M.dim
    sums = [[[0] * r for _ in range(r)] for _ in range(k)]
    for e, matrix in decompose(M):
        target = sums[e % k]
        for a in range(r):
            for b in range(r):
                target[a][b] += matrix[a][b]
    return sums


def build_cover_action(M: LaurentMatrix, k: int) -> CoverAction:
    """
    群环 Z[Z_k] 上秩 r 自由模中乘以 M(s) 的整数矩阵

    基为 {sⁱ ζ_j}；块 (i′, i) 为 N_{(i′−i) mod k}
    """
    r = M.dim
    sums = residue_sums(M, k)
    rows = []
    for bi in range(k):
        for a in range(r):
            row: List[int] = []
            for bj in range(k):
                row.extend(sums[(bi - bj) % k][a])
            rows.append(tuple(row))
    return CoverAction(k=k, base_dim=r, matrix=tuple(rows))


def shift_block(k: int, r: int) -> np.ndarray:
    """甲板变换 T：块 (i+1, i) 为单位阵（整数，object 类型保证任意精度）"""
    T = np.zeros((k * r, k * r), dtype=object)
    for bi in range(k):
        target = (bi + 1) % k
        for a in range(r):
            T[target * r + a, bi * r + a] = 1
    return T


def shift_commutation_check(C: CoverAction) -> bool:
    """精确整数运算验证 C·T = T·C"""
    if C.k == 1:
        return True
    matrix = np.array(C.matrix, dtype=object)
    T = shift_block(C.k, C.base_dim)
    return bool(np.array_equal(matrix.dot(T), T.dot(matrix)))


def _float_matrix(C: CoverAction) -> np.ndarray:
    # 只在求特征值时才转为浮点
    return np.array(C.matrix, dtype=float)


# ================================
# 多重集匹配
# ================================

def match_distance(a: Sequence[complex], b: Sequence[complex], tol: float) -> float:
    """
    两个复数多重集的匹配距离（匹配对的最大距离）

    先贪心最近邻；超过 tol 时改用匈牙利算法求最优匹配
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size != b.size:
        raise ValueError(f"多重集大小不一致: {a.size} ≠ {b.size}")
    if a.size == 0:
        return 0.0

    cost = np.abs(a[:, None] - b[None, :])

    used = np.zeros(b.size, dtype=bool)
    greedy = 0.0
    for row in range(a.size):
        candidates = np.where(used, np.inf, cost[row])
        col = int(np.argmin(candidates))
        used[col] = True
        greedy = max(greedy, float(candidates[col]))

    if greedy <= tol:
        return greedy

    rows, cols = linear_sum_assignment(cost)
    return min(greedy, float(cost[rows, cols].max()))


def cluster_distance(a: Sequence[complex], b: Sequence[complex], radius: float) -> float:
    """
    按簇比较两个多重集：单链接聚类（半径 radius）后比较每簇的元素个数与质心

    m 重亏损特征值（Jordan 块）单个数值只精确到 ε^{1/m}，但簇质心仍然精确
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size != b.size:
        raise ValueError(f"多重集大小不一致: {a.size} ≠ {b.size}")
    if a.size == 0:
        return 0.0
    if a.size == 1:
        return float(abs(a[0] - b[0]))

    points = np.concatenate([a, b])
    labels = fclusterdata(
        np.column_stack([points.real, points.imag]), t=radius, criterion="distance", method="single"
    )
    labels_a, labels_b = labels[: a.size], labels[a.size:]

    worst = 0.0
    for label in np.unique(labels):
        members_a = a[labels_a == label]
        members_b = b[labels_b == label]
        if members_a.size != members_b.size:
            return float("inf")
        worst = max(worst, float(abs(members_a.mean() - members_b.mean())))
    return worst


def charpoly_distance(a: Sequence[complex], b: Sequence[complex], scale: float = 1.0) -> float:
    """
    通过特征多项式比较两个多重集（对重数敏感，不受 Jordan 块散布影响）

    根先除以 scale，再逐次比较 Π(x − a_i) 与 Π(x − b_i) 的 j 次系数，
    以二项式系数 C(n, j) 归一化

    Args:
        a, b: 复数多重集
        scale: 根的尺度上界（取 max(1, ‖C‖₂)）

    Returns:
        float: 归一化系数差的最大值
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size != b.size:
        raise ValueError(f"多重集大小不一致: {a.size} ≠ {b.size}")
    if scale <= 0.0:
        raise ValueError("尺度必须为正")
    if a.size == 0:
        return 0.0

    coeffs_a = np.poly(a / scale)
    coeffs_b = np.poly(b / scale)
    binomials = np.poly(-np.ones(a.size))
    return float(np.max(np.abs(coeffs_a - coeffs_b) / binomials))


# ================================
# 检验
# ================================

def _unity_points(k: int) -> np.ndarray:
    return unit_roots(np.arange(k), k)


def verify_direct_sum(M: LaurentMatrix, k: int, tol: Optional[float] = None) -> CoverVerdict:
    """
    比较覆盖作用矩阵的谱与 ⋃_j Spec(M(η_k^j))

    Args:
        M: Laurent 矩阵
        k: 覆盖重数
        tol: 容差（按 max(1, 最大特征值模长) 缩放）

    Returns:
        CoverVerdict: 匹配距离与是否通过
    """
    numeric = get_numeric_config()
    tol = numeric.cover_tol if tol is None else tol
    if tol <= 0.0:
        raise ValueError("容差必须为正")

    C = build_cover_action(M, k)
    cover_spectrum = eigenvalues(_float_matrix(C))
    blocks = substitute_many(M, _unity_points(k))
    block_spectrum = np.concatenate([eigenvalues(block) for block in blocks])

    scale = max(1.0, float(np.max(np.abs(block_spectrum))) if block_spectrum.size else 1.0)
    distance = match_distance(cover_spectrum, block_spectrum, tol * scale)

    clustered = None
    poly_gap = None
    passed = distance <= tol * scale
    if not passed:
        clustered = min(
            cluster_distance(cover_spectrum, block_spectrum, radius) for radius in numeric.cluster_radii
        )
        passed = clustered <= tol * scale
        logger.debug(f"🔍 k={k}: 逐点距离 {distance:.3e}，按簇距离 {clustered:.3e}")
    if not passed:
        # C 与 ⊕_j M(η_k^j) 酉相似，‖C‖₂ 是所有根的共同尺度
        norm = max(1.0, float(np.linalg.norm(_float_matrix(C), 2)))
        poly_gap = charpoly_distance(cover_spectrum, block_spectrum, norm)
        passed = poly_gap <= tol
        logger.debug(f"🔍 k={k}: 特征多项式系数差 {poly_gap:.3e}")

    if not passed:
        logger.warning(f"❌ 覆盖谱等价检验失败: k={k}, 距离={distance:.3e}")
    return CoverVerdict(
        k=k,
        dim=C.dim,
        max_match_distance=distance,
        cluster_distance=clustered,
        charpoly_distance=poly_gap,
        passed=passed,
    )


def eigenspace_residual(C: CoverAction, M: LaurentMatrix, m: int) -> float:
    """
    T 的 η_k^m 特征子空间在 C 下不变，且 C 在其上的作用为 M(η_k^m)

    对每个基向量 w 取 v_i = η_k^{−mi} w，返回 ‖Cv − (M(η_k^m) 作用)v‖ 的相对最大值
    """
    k, r = C.k, C.base_dim
    eta = complex(unit_roots([m], k)[0])
    phases = eta ** (-np.arange(k))
    V = np.kron(phases[:, None], np.eye(r))
    action = substitute(M, eta)

    lhs = _float_matrix(C) @ V
    rhs = np.kron(phases[:, None], action)
    scale = max(1.0, float(np.max(np.abs(_float_matrix(C)))))
    return float(np.max(np.abs(lhs - rhs))) / scale


def determinant_consistency(C: CoverAction, M: LaurentMatrix) -> float:
    """det(C) 与 Π_j det(M(η_k^j)) 的相对差"""
    det_cover = np.linalg.det(_float_matrix(C))
    det_blocks = np.prod(np.linalg.det(substitute_many(M, _unity_points(C.k))))
    return float(abs(det_cover - det_blocks) / max(1.0, abs(det_blocks)))


def fuzz_campaign(
    seed: Optional[int] = None,
    words: int = 200,
    n_max: int = 6,
    length_max: int = 12,
    k_max: int = 8,
    tol: Optional[float] = None,
) -> List[CoverVerdict]:
    """对随机辫子词与 k = 1..k_max 逐一执行 verify_direct_sum"""
    seed = get_numeric_config().fuzz_seed if seed is None else seed
    logger.info(f"🚀 覆盖谱等价随机测试: {words} 个辫子词, k ≤ {k_max}")

    verdicts = []
    for w in random_corpus(seed, words, range(3, n_max + 1), length_max):
        M = burau_matrix(w)
        for k in range(1, k_max + 1):
            verdicts.append(verify_direct_sum(M, k, tol))

    failures = sum(1 for v in verdicts if not v.passed)
    if failures:
        logger.warning(f"⚠️ {failures}/{len(verdicts)} 个检验未通过")
    else:
        logger.info(f"✅ 全部 {len(verdicts)} 个检验通过")
    return verdicts
