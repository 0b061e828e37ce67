"""
Burau熵估计工具 - 异常定义
库代码只抛出异常，由命令行层决定提示信息与退出码
"""

from typing import Optional


class BurauToolkitError(Exception):
    """所有工具异常的基类"""

    # True 表示用法错误（退出码 2），False 表示计算错误（退出码 1）
    is_usage_error = False


class BraidSyntaxError(BurauToolkitError, ValueError):
    """辫子词语法错误"""

    is_usage_error = True

    def __init__(self, message: str, position: int, token: str = ""):
        self.position = position
        self.token = token
        super().__init__(f"{message}（位置 {position}）")


class GeneratorIndexError(BurauToolkitError, ValueError):
    """生成元下标越界：要求 1 ≤ |g| ≤ n−1"""

    is_usage_error = True

    def __init__(self, index: int, strings: int, position: Optional[int] = None):
        self.index = index
        self.strings = strings
        self.position = position
        where = f"（位置 {position}）" if position is not None else ""
        super().__init__(f"生成元下标 {index} 超出范围 1..{strings - 1}{where}")


class BlockIndexError(BurauToolkitError, ValueError):
    """块辫子 σ_{i,n1,n2} 下标越界：要求 i + n1 + n2 − 1 ≤ n"""

    is_usage_error = True

    def __init__(self, i: int, n1: int, n2: int, strings: int, position: Optional[int] = None):
        self.position = position
        where = f"（位置 {position}）" if position is not None else ""
        super().__init__(
            f"块辫子 b[{i},{n1},{n2}] 需要 {i + n1 + n2 - 1} 根弦，但只有 {strings} 根{where}"
        )


class StringCountMismatchError(BurauToolkitError, ValueError):
    """两个辫子词的弦数不一致"""

    is_usage_error = True


class InexactDivisionError(BurauToolkitError, ArithmeticError):
    """Laurent 多项式环中的整除失败"""


class SubstitutionError(BurauToolkitError, ValueError):
    """代入 η = 0（存在负幂次）"""

    is_usage_error = True


class SpectralSolverError(BurauToolkitError, RuntimeError):
    """特征值求解失败或输入含非有限值"""


class ReductionDataError(BurauToolkitError, ValueError):
    """约化数据格式错误或拓扑上不自洽"""
