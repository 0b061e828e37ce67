"""
Burau熵估计工具 - 数据结构定义
使用Pydantic定义所有领域对象与报告结构，构造后不可变
"""

from enum import Enum
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class SingularityKind(str, Enum):
    """叶状结构奇点类型"""
    INTERIOR = "interior"
    PUNCTURE = "puncture"
    DELETED_DISK = "boundary-of-deleted-disk"
    OUTER_BOUNDARY = "outer-boundary"


class OutputFormat(str, Enum):
    """输出格式"""
    CSV = "csv"
    JSON = "json"
    PRETTY = "pretty"


class FrozenModel(BaseModel):
    """不可变模型基类"""
    model_config = ConfigDict(frozen=True)


# ================================
# 辫子词
# ================================

class BraidWord(FrozenModel):
    """n 弦辫子群中的元素：带符号的 Artin 生成元序列，从左到右作用"""

    strings: int = Field(..., ge=2, description="弦数 n")
    letters: Tuple[int, ...] = Field((), description="生成元序列，g 表示 σ_g，-g 表示 σ_g 的逆")

    @model_validator(mode="after")
    def _check_letters(self):
        for g in self.letters:
            if g == 0 or abs(g) > self.strings - 1:
                raise ValueError(f"生成元 {g} 超出范围 1..{self.strings - 1}")
        return self

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def is_identity_word(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return " ".join(str(g) for g in self.letters)


class BlockBraidTerm(FrozenModel):
    """块辫子 σ_{i,n1,n2}^power：把第 i 起的 n1 根弦整体移过其后的 n2 根弦"""

    i: int = Field(..., ge=1, description="起始弦")
    n1: int = Field(..., ge=1, description="第一组弦数")
    n2: int = Field(..., ge=1, description="第二组弦数")
    power: int = Field(1, description="幂次（非零）")

    @field_validator("power")
    @classmethod
    def _nonzero_power(cls, v: int) -> int:
        if v == 0:
            raise ValueError("块辫子幂次不能为 0")
        return v

    @property
    def required_strings(self) -> int:
        return self.i + self.n1 + self.n2 - 1


# ================================
# 谱分析
# ================================

class SpectralSample(BaseModel):
    """单个采样点 θ 处的谱信息"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    theta: float = Field(..., ge=0.0, lt=1.0, description="角度 θ，η = exp(2πiθ)")
    radius: float = Field(..., ge=0.0, description="谱半径 r(θ)")
    eigenvalues: Tuple[complex, ...] = Field((), description="按模长降序排列的特征值")


class SpectralScan(FrozenModel):
    """θ ↦ r(θ) 的采样结果"""

    word: BraidWord
    resolution: int = Field(..., ge=2)
    samples: List[SpectralSample]

    @model_validator(mode="after")
    def _increasing(self):
        thetas = [s.theta for s in self.samples]
        if any(b <= a for a, b in zip(thetas, thetas[1:])):
            raise ValueError("采样角度必须严格递增")
        return self

    @property
    def thetas(self) -> List[float]:
        return [s.theta for s in self.samples]

    @property
    def radii(self) -> List[float]:
        return [s.radius for s in self.samples]


class UnitySlot(BaseModel):
    """k 次单位根 η_k^j 处的特征值"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    j: int = Field(..., ge=0)
    k: int = Field(..., ge=1)
    eta: complex
    eigenvalues: Tuple[complex, ...]

    @property
    def radius(self) -> float:
        return max((abs(mu) for mu in self.eigenvalues), default=0.0)


class SharpRoot(FrozenModel):
    """谱半径达到 λ 的单位根 e^{2πij/k}（j/k 为既约分数）"""

    j: int = Field(..., ge=0)
    k: int = Field(..., ge=1)
    value: float = Field(..., description="该点的谱半径")
    multiplicity: int = Field(1, ge=1, description="模长 ≥ λ − tol 的特征值个数")


class SharpnessReport(FrozenModel):
    """锐性检测报告"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lam: float = Field(..., alias="lambda", gt=1.0, description="给定增长率 λ")
    tol: float = Field(..., gt=0.0)
    k_max: int = Field(..., ge=1)
    strings: int = Field(..., ge=2)
    sharp_roots: List[SharpRoot] = Field(default_factory=list)
    minimal_k: Optional[int] = None
    bound: int = Field(..., description="⌊2n/3⌋")
    within_bound: Optional[bool] = None
    power_of_two: Optional[bool] = None

    @property
    def fractions(self) -> List[Tuple[int, int]]:
        return [(r.j, r.k) for r in self.sharp_roots]


# ================================
# 覆盖空间
# ================================

class CoverAction(FrozenModel):
    """k 重循环覆盖上的作用：k×k 块循环整数矩阵"""

    k: int = Field(..., ge=1)
    base_dim: int = Field(..., ge=1)
    matrix: Tuple[Tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return self.k * self.base_dim

    def block(self, row: int, col: int) -> Tuple[Tuple[int, ...], ...]:
        r = self.base_dim
        return tuple(
            tuple(self.matrix[row * r + a][col * r: (col + 1) * r]) for a in range(r)
        )


class CoverVerdict(FrozenModel):
    """直和分解检验结论"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    k: int
    dim: int
    max_match_distance: float
    cluster_distance: Optional[float] = None
    charpoly_distance: Optional[float] = None
    passed: bool = Field(..., alias="pass")


# ================================
# Nielsen–Thurston 约化数据
# ================================

class SingularityDatum(FrozenModel):
    """奇点：类型、阶数 κ、所围穿孔数 m"""

    kind: SingularityKind
    kappa: int = Field(..., ge=1, description="奇点阶数 κ（叶片数）")
    m: int = Field(1, ge=1, description="所围穿孔数，裸穿孔为 1")


class ComponentData(FrozenModel):
    """约化分解中的一个分量（ℓ 个连通块被循环置换）"""

    ell: int = Field(1, ge=1, description="被循环置换的连通块数 ℓ")
    genus: int = Field(0, ge=0)
    boundary_items: List[SingularityDatum] = Field(default_factory=list, description="穿孔与被删圆盘")
    interior_sings: List[SingularityDatum] = Field(default_factory=list)
    outer_sings: List[SingularityDatum] = Field(default_factory=list, description="外边界上的奇点")
    is_pA: bool = False
    is_max_entropy: bool = False

    @model_validator(mode="after")
    def _check_component(self):
        if self.is_pA and len(self.boundary_items) < 3:
            raise ValueError("伪Anosov分量至少需要 3 个边界项")
        for s in self.boundary_items:
            if s.kind not in (SingularityKind.PUNCTURE, SingularityKind.DELETED_DISK):
                raise ValueError(f"边界项类型错误: {s.kind.value}")
        for s in self.interior_sings:
            if s.kind != SingularityKind.INTERIOR:
                raise ValueError(f"内部奇点类型错误: {s.kind.value}")
        for s in self.outer_sings:
            if s.kind != SingularityKind.OUTER_BOUNDARY:
                raise ValueError(f"外边界奇点类型错误: {s.kind.value}")
        return self

    @property
    def enclosed_punctures(self) -> int:
        return sum(s.m for s in self.boundary_items)


class ReductionData(FrozenModel):
    """用户声明的 Thurston 约化分解"""

    strings: int = Field(..., ge=2, description="弦数 n")
    components: List[ComponentData] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_punctures(self):
        for index, c in enumerate(self.components):
            if c.ell * c.enclosed_punctures > self.strings:
                raise ValueError(
                    f"分量 {index} 围住 {c.ell}×{c.enclosed_punctures} 个穿孔，超过弦数 {self.strings}"
                )
        return self


class EPHResult(FrozenModel):
    """Euler–Poincaré–Hopf 检验结果"""

    lhs: float = Field(..., description="2 − 2g")
    rhs: float = Field(..., description="Σ (1 − κ/2)")
    residual: float
    passed: bool


class OrientabilityDecision(FrozenModel):
    """Burau 可定向性判定"""

    orientable: bool
    a: int = Field(..., ge=1)
    u: Optional[int] = Field(None, description="a = 2^u · a′，a′ 为奇数")
    lift_modulus: Optional[int] = Field(None, description="可定向提升集合为其倍数 2^{u+1}")
    reasons: List[str] = Field(default_factory=list)


class SharpSetPrediction(FrozenModel):
    """由约化数据预测的锐性单位根集合"""

    fractions: List[Tuple[int, int]] = Field(default_factory=list, description="既约分数 (j, k)")
    minimal_k: Optional[int] = None
    contributing_components: List[int] = Field(default_factory=list)


class KBoundReport(FrozenModel):
    """最小 k 与 2n/3 上界的比较"""

    bound: int
    predicted_minimal_k: Optional[int] = None
    within_bound: bool
    attains: bool
    power_of_two: Optional[bool] = None


class CorpusExample(FrozenModel):
    """示例语料中的一个辫子"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    name: str
    title: str = ""
    strings: int = Field(..., ge=2)
    word_file: Path
    reduction_file: Optional[Path] = None
    lam: float = Field(..., alias="lambda", gt=1.0)
    k_max: int = Field(16, ge=1)


class ExampleVerification(FrozenModel):
    """单个示例的一致性检查结果"""

    name: str
    predicted: List[Tuple[int, int]]
    observed: List[Tuple[int, int]]
    predicted_minimal_k: Optional[int] = None
    observed_minimal_k: Optional[int] = None
    eph_passed: bool = True
    within_bound: bool = True
    attains: bool = False

    @property
    def agrees(self) -> bool:
        return sorted(self.predicted) == sorted(self.observed)

    @property
    def passed(self) -> bool:
        return self.agrees and self.eph_passed and self.within_bound


# ================================
# 命令行运行配置
# ================================

class RunConfig(FrozenModel):
    """一次命令行运行的配置"""

    subcommand: str
    n: Optional[int] = Field(None, ge=2)
    word_text: Optional[str] = None
    word_file: Optional[Path] = None
    resolution: int = Field(1024, ge=2)
    k: Optional[int] = Field(None, ge=1)
    k_max: Optional[int] = Field(None, ge=1)
    lam: Optional[float] = Field(None, gt=1.0)
    tol: float = Field(1e-6, gt=0.0)
    reduction: Optional[Path] = None
    out: Optional[Path] = None
    fmt: OutputFormat = OutputFormat.PRETTY

    @model_validator(mode="after")
    def _word_source(self):
        if self.word_text is not None and self.word_file is not None:
            raise ValueError("--word 与 --word-file 只能二选一")
        return self

    @property
    def needs_word(self) -> bool:
        return self.subcommand not in ("predict", "examples", "verify")
