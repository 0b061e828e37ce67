"""
Burau熵估计工具 - Nielsen–Thurston 算术分析
读取用户声明的约化/叶状结构数据，计算 a_i、判定 Burau 可定向性、
预测锐性单位根集合，并做 Euler–Poincaré–Hopf 与 2n/3 上界检查
"""

import logging
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import List, Sequence

from app.core.errors import ReductionDataError
from app.schemas import (
    ComponentData,
    EPHResult,
    KBoundReport,
    OrientabilityDecision,
    ReductionData,
    SharpSetPrediction,
)

logger = logging.getLogger(__name__)


def compute_a(c: ComponentData) -> int:
    """a = gcd(m_1, …, m_r)，只取穿孔与被删圆盘，不含外边界"""
    if not c.boundary_items:
        raise ReductionDataError("分量没有边界项，无法计算 a")
    return reduce(gcd, (s.m for s in c.boundary_items))


def eph_check(c: ComponentData) -> EPHResult:
    """
    Euler–Poincaré–Hopf：2 − 2g = Σ (1 − κ/2)

    求和遍历该连通块的全部奇点（内部、穿孔、被删圆盘与外边界），精确分数运算
    """
    singularities = list(c.boundary_items) + list(c.interior_sings) + list(c.outer_sings)
    lhs = Fraction(2 - 2 * c.genus)
    rhs = sum((1 - Fraction(s.kappa, 2) for s in singularities), Fraction(0))
    residual = lhs - rhs
    return EPHResult(lhs=float(lhs), rhs=float(rhs), residual=float(residual), passed=residual == 0)


def two_adic_valuation(a: int) -> int:
    """a = 2^u · a′，a′ 为奇数，返回 u"""
    u = 0
    while a % 2 == 0:
        a //= 2
        u += 1
    return u


def burau_orientable(c: ComponentData) -> OrientabilityDecision:
    """
    伪Anosov分量的 Burau 可定向性

    可定向当且仅当：内部奇点全为偶数阶，且每个边界项满足 m_j/a ≡ κ_j (mod 2)。
    可定向时可定向提升集合恰为 2^{u+1} 的倍数

    Args:
        c: 伪Anosov分量

    Returns:
        OrientabilityDecision: 判定结果与不满足的条件
    """
    if not c.is_pA:
        raise ReductionDataError("Burau 可定向性只对伪Anosov分量有定义")

    a = compute_a(c)
    reasons = []
    for s in c.interior_sings:
        if s.kappa % 2:
            reasons.append(f"内部奇点阶数 {s.kappa} 为奇数")
    for index, s in enumerate(c.boundary_items):
        if (s.m // a - s.kappa) % 2:
            reasons.append(f"边界项 {index}: m/a = {s.m // a} 与 κ = {s.kappa} 奇偶性不同")

    if reasons:
        return OrientabilityDecision(orientable=False, a=a, reasons=reasons)

    u = two_adic_valuation(a)
    return OrientabilityDecision(orientable=True, a=a, u=u, lift_modulus=2 ** (u + 1))


def orientable_lift(c: ComponentData, k: int) -> bool:
    """叶状结构能否可定向地提升到 k 重覆盖"""
    decision = burau_orientable(c)
    return decision.orientable and k % decision.lift_modulus == 0


def lift_component_count(c: ComponentData) -> int:
    """无限循环覆盖中提升曲面的连通分支数 ℓ·a"""
    return c.ell * compute_a(c)


def roots_of_minus_one(a: int) -> List[tuple]:
    """a 次 −1 的根 e^{2πi(2j+1)/(2a)}，以既约分数 (j, k) 表示"""
    fractions = {Fraction(2 * j + 1, 2 * a) for j in range(a)}
    return [(f.numerator, f.denominator) for f in sorted(fractions)]


def predict_sharp_set(rd: ReductionData) -> SharpSetPrediction:
    """
    预测锐性单位根集合：对满足 伪Anosov ∧ Burau 可定向 ∧ 熵最大 的分量，
    取其 a_i 次 −1 的根之并

    指标集为空时返回空集（此时所有单位根处 ρ(B(ω)) < λ）
    """
    collected = set()
    contributing = []
    for index, c in enumerate(rd.components):
        if not (c.is_pA and c.is_max_entropy):
            continue
        decision = burau_orientable(c)
        if not decision.orientable:
            logger.info(f"🔍 分量 {index} 不是 Burau 可定向的: {'; '.join(decision.reasons)}")
            continue
        contributing.append(index)
        collected.update(Fraction(j, k) for j, k in roots_of_minus_one(decision.a))

    fractions = [(f.numerator, f.denominator) for f in sorted(collected)]
    minimal_k = min((k for _, k in fractions), default=None)
    return SharpSetPrediction(fractions=fractions, minimal_k=minimal_k, contributing_components=contributing)


def pa_sharpness_classifier(punctures: Sequence[int], interior: Sequence[int]) -> bool:
    """带领圈的伪Anosov辫子在 −1 处锐 ⇔ 穿孔处奇点全为奇数阶且内部奇点全为偶数阶"""
    return all(k % 2 == 1 for k in punctures) and all(k % 2 == 0 for k in interior)


def is_power_of_two(value: int) -> bool:
    """value 是否为 2 的正整数次幂"""
    return value > 0 and value & (value - 1) == 0


def k_bound_check(rd: ReductionData) -> KBoundReport:
    """
    最小 k = min over I of 2^{u_i+1}，与 2n/3 比较

    指标集为空时上界空洞成立：within_bound = True，attains = False
    """
    bound = (2 * rd.strings) // 3
    moduli = []
    for c in rd.components:
        if c.is_pA and c.is_max_entropy:
            decision = burau_orientable(c)
            if decision.orientable:
                moduli.append(decision.lift_modulus)

    if not moduli:
        return KBoundReport(bound=bound, predicted_minimal_k=None, within_bound=True, attains=False)

    k = min(moduli)
    return KBoundReport(
        bound=bound,
        predicted_minimal_k=k,
        within_bound=3 * k <= 2 * rd.strings,
        attains=3 * k == 2 * rd.strings,
        power_of_two=is_power_of_two(k),
    )
