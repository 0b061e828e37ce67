"""
Burau熵估计工具 - Laurent 多项式代数
整数系数 Laurent 多项式、其上的方阵、约化 Burau 表示及由它导出的精确对象：
行列式（Bareiss 无分式消元）、二元特征多项式（Faddeev–LeVerrier）、
按 t 的幂次分解 M = Σ tⁱ Mᵢ，以及在单位圆上的数值代入
"""

import logging
import numbers
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import numpy as np

from app.core.errors import GeneratorIndexError, InexactDivisionError, SubstitutionError
from app.schemas import BraidWord

logger = logging.getLogger(__name__)

IntMatrix = Tuple[Tuple[int, ...], ...]


# ================================
# Laurent 多项式
# ================================

class LaurentPoly:
    """
    Z[t, t⁻¹] 中的元素

    coeffs[j] 为 t^(min_exp + j) 的系数；规范形式下首尾系数非零，
    零多项式为 coeffs = ()、min_exp = 0
    """

    __slots__ = ("min_exp", "coeffs")

    def __init__(self, coeffs: Iterable[int] = (), min_exp: int = 0):
        values = [int(c) for c in coeffs]
        start, end = 0, len(values)
        while start < end and values[start] == 0:
            start += 1
        while end > start and values[end - 1] == 0:
            end -= 1

        if start == end:
            self.min_exp = 0
            self.coeffs: Tuple[int, ...] = ()
        else:
            self.min_exp = int(min_exp) + start
            self.coeffs = tuple(values[start:end])

    # ---------- 构造 ----------

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls((coeff,), exp)

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        return cls((value,), 0)

    @classmethod
    def from_terms(cls, terms: Mapping[int, int]) -> "LaurentPoly":
        """由 {幂次: 系数} 构造"""
        nonzero = {int(e): int(c) for e, c in terms.items() if c}
        if not nonzero:
            return cls()
        lo, hi = min(nonzero), max(nonzero)
        return cls((nonzero.get(e, 0) for e in range(lo, hi + 1)), lo)

    # ---------- 基本属性 ----------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    @property
    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    @property
    def is_unit(self) -> bool:
        """±t^k 是 Laurent 多项式环中仅有的单位"""
        return self.is_monomial and abs(self.coeffs[0]) == 1

    def coefficient(self, exp: int) -> int:
        index = exp - self.min_exp
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return 0

    def terms(self) -> Dict[int, int]:
        return {self.min_exp + j: c for j, c in enumerate(self.coeffs) if c}

    # ---------- 环运算 ----------

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, numbers.Integral):
            return LaurentPoly.constant(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other

        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        out = [0] * (hi - lo + 1)
        for j, c in enumerate(self.coeffs):
            out[self.min_exp - lo + j] += c
        for j, c in enumerate(other.coeffs):
            out[other.min_exp - lo + j] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly((-c for c in self.coeffs), self.min_exp)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO

        exp = self.min_exp + other.min_exp
        if len(a) == 1:
            c = a[0]
            return LaurentPoly((c * y for y in b), exp)
        if len(b) == 1:
            c = b[0]
            return LaurentPoly((x * c for x in a), exp)

        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LaurentPoly(out, exp)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            if not self.is_unit:
                raise InexactDivisionError(f"{self} 不是单位，不能取负幂")
            c = self.coeffs[0]
            return LaurentPoly.monomial(c ** (-exponent), self.min_exp * exponent)

        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """乘以 t^k"""
        if not self.coeffs:
            return self
        return LaurentPoly(self.coeffs, self.min_exp + k)

    def exact_div_int(self, k: int) -> "LaurentPoly":
        """整除以整数 k，不能整除时抛出 InexactDivisionError"""
        if k == 0:
            raise InexactDivisionError("除数为零")
        out = []
        for c in self.coeffs:
            q, r = divmod(c, k)
            if r:
                raise InexactDivisionError(f"{self} 不能被 {k} 整除")
            out.append(q)
        return LaurentPoly(out, self.min_exp)

    def exact_div(self, other) -> "LaurentPoly":
        """
        Z[t, t⁻¹] 中的精确除法（长除法，余式必须为零）

        Args:
            other: 除式（非零）

        Returns:
            LaurentPoly: 商
        """
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError("除式必须是 LaurentPoly 或整数")
        if other.is_zero:
            raise InexactDivisionError("除数为零")
        if self.is_zero:
            return ZERO
        if other.is_monomial:
            return self.exact_div_int(other.coeffs[0]).shift(-other.min_exp)

        num = list(self.coeffs)
        den = other.coeffs
        top_den = len(den) - 1
        lead = den[-1]
        if len(num) < len(den):
            raise InexactDivisionError(f"{self} 不能被 {other} 整除")

        quotient = [0] * (len(num) - top_den)
        for top in range(len(num) - 1, top_den - 1, -1):
            c = num[top]
            if not c:
                continue
            q, r = divmod(c, lead)
            if r:
                raise InexactDivisionError(f"{self} 不能被 {other} 整除")
            offset = top - top_den
            quotient[offset] = q
            for j, d in enumerate(den):
                num[offset + j] -= q * d

        if any(num[:top_den]):
            raise InexactDivisionError(f"{self} 不能被 {other} 整除")
        return LaurentPoly(quotient, self.min_exp - other.min_exp)

    # ---------- 求值 ----------

    def evaluate(self, eta: complex) -> complex:
        """Horner 求值：Σ c_j η^j 再乘 η^{min_exp}"""
        if not self.coeffs:
            return 0
        if eta == 0:
            if self.min_exp < 0:
                raise SubstitutionError("η = 0 不能代入含负幂的 Laurent 多项式")
            return self.coefficient(0)

        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * eta + c
        return acc * eta ** self.min_exp

    # ---------- 比较与输出 ----------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.min_exp == other.min_exp and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.min_exp, self.coeffs))

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def __str__(self) -> str:
        """按幂次升序输出，例如 "-t^-1+2-t" """
        if not self.coeffs:
            return "0"

        parts = []
        for exp, c in sorted(self.terms().items()):
            sign = "-" if c < 0 else ("+" if parts else "")
            magnitude = abs(c)
            if exp == 0:
                body = str(magnitude)
            else:
                power_text = "t" if exp == 1 else f"t^{exp}"
                body = power_text if magnitude == 1 else f"{magnitude}{power_text}"
            parts.append(sign + body)
        return "".join(parts)

    def to_json(self) -> Dict[str, int]:
        return {str(e): c for e, c in self.terms().items()}

    @classmethod
    def from_json(cls, payload: Mapping[str, int]) -> "LaurentPoly":
        return cls.from_terms({int(e): int(c) for e, c in payload.items()})


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
T = LaurentPoly.monomial(1, 1)
T_INV = LaurentPoly.monomial(1, -1)

Entry = Union[LaurentPoly, int]


# ================================
# Laurent 多项式矩阵
# ================================

class LaurentMatrix:
    """Z[t, t⁻¹] 上的 dim×dim 方阵（不可变）"""

    __slots__ = ("dim", "entries")

    def __init__(self, entries: Sequence[Sequence[Entry]]):
        rows = tuple(
            tuple(x if isinstance(x, LaurentPoly) else LaurentPoly.constant(int(x)) for x in row)
            for row in entries
        )
        if not rows or any(len(row) != len(rows) for row in rows):
            raise ValueError("Laurent 矩阵必须是非空方阵")
        self.dim = len(rows)
        self.entries: Tuple[Tuple[LaurentPoly, ...], ...] = rows

    @classmethod
    def identity(cls, dim: int) -> "LaurentMatrix":
        return cls([[ONE if r == c else ZERO for c in range(dim)] for r in range(dim)])

    @classmethod
    def from_ints(cls, rows: Sequence[Sequence[int]]) -> "LaurentMatrix":
        return cls([[LaurentPoly.constant(x) for x in row] for row in rows])

    def __getitem__(self, index: Tuple[int, int]) -> LaurentPoly:
        r, c = index
        return self.entries[r][c]

    def rows(self) -> List[List[LaurentPoly]]:
        return [list(row) for row in self.entries]

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"矩阵维数不一致: {self.dim} ≠ {other.dim}")
        return LaurentMatrix(_matmul(self.entries, other.entries))

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return LaurentMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def scale(self, factor: Entry) -> "LaurentMatrix":
        return LaurentMatrix([[x * factor for x in row] for row in self.entries])

    def trace(self) -> LaurentPoly:
        total = ZERO
        for i in range(self.dim):
            total = total + self.entries[i][i]
        return total

    def exponent_range(self) -> Tuple[int, int]:
        """非零元素中出现的最小与最大幂次；零矩阵返回 (0, 0)"""
        nonzero = [x for row in self.entries for x in row if not x.is_zero]
        if not nonzero:
            return 0, 0
        return min(x.min_exp for x in nonzero), max(x.max_exp for x in nonzero)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"LaurentMatrix({self.dim}x{self.dim})"

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries)

    def to_json(self) -> Dict:
        return {"dim": self.dim, "entries": [[x.to_json() for x in row] for row in self.entries]}

    @classmethod
    def from_json(cls, payload: Mapping) -> "LaurentMatrix":
        matrix = cls([[LaurentPoly.from_json(x) for x in row] for row in payload["entries"]])
        if matrix.dim != payload.get("dim", matrix.dim):
            raise ValueError("JSON 中的 dim 与 entries 不一致")
        return matrix


def _matmul(a: Sequence[Sequence[LaurentPoly]], b: Sequence[Sequence[LaurentPoly]]) -> List[List[LaurentPoly]]:
    dim = len(a)
    out = []
    for i in range(dim):
        row = []
        for j in range(dim):
            acc = ZERO
            for k in range(dim):
                x, y = a[i][k], b[k][j]
                if x.coeffs and y.coeffs:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


# ================================
# 约化 Burau 表示
# ================================

# σ_i 在第 i−1, i, i+1 行列上的 3×3 块及其逆；边界生成元取其截断
_GENERATOR_BLOCK = (
    (ONE, T, ZERO),
    (ZERO, -T, ZERO),
    (ZERO, ONE, ONE),
)
_INVERSE_BLOCK = (
    (ONE, ONE, ZERO),
    (ZERO, -T_INV, ZERO),
    (ZERO, T_INV, ONE),
)


def _block_positions(i: int, dim: int) -> List[Tuple[int, int]]:
    """(块内偏移, 矩阵下标) 对，丢弃越界部分"""
    center = i - 1
    return [(a + 1, center + a) for a in (-1, 0, 1) if 0 <= center + a < dim]


def burau_generator(i: int, sign: int, n: int) -> LaurentMatrix:
    """
    生成元 σ_i^{±1} 的约化 Burau 矩阵

    Args:
        i: 生成元下标 1 ≤ i ≤ n−1
        sign: +1 或 −1
        n: 弦数；n = 2 时退化为 1×1 矩阵 [−t]

    Returns:
        LaurentMatrix: (n−1)×(n−1) 矩阵
    """
    if n < 2 or not 1 <= i <= n - 1:
        raise GeneratorIndexError(i, n)
    if sign not in (1, -1):
        raise ValueError(f"符号必须为 ±1，实际为 {sign}")
    if n == 2:
        logger.info("⚠️ n = 2 为退化情形，返回 1×1 矩阵")

    dim = n - 1
    block = _GENERATOR_BLOCK if sign > 0 else _INVERSE_BLOCK
    rows = LaurentMatrix.identity(dim).rows()
    positions = _block_positions(i, dim)
    for br, r in positions:
        for bc, c in positions:
            rows[r][c] = block[br][bc]
    return LaurentMatrix(rows)


def burau_matrix(w: BraidWord) -> LaurentMatrix:
    """
    辫子词的约化 Burau 矩阵：生成元矩阵从左到右的乘积

    右乘一个生成元只改变至多三列，逐字母做列变换代替整块矩阵乘法
    """
    dim = w.strings - 1
    if w.strings == 2 and w.letters:
        logger.info("⚠️ n = 2 为退化情形，返回 1×1 矩阵")

    # 按列存储
    columns = [[ONE if r == c else ZERO for r in range(dim)] for c in range(dim)]

    for g in w.letters:
        block = _GENERATOR_BLOCK if g > 0 else _INVERSE_BLOCK
        positions = _block_positions(abs(g), dim)
        updated = {}
        for bc, c in positions:
            acc = [ZERO] * dim
            for br, r in positions:
                coeff = block[br][bc]
                if coeff.is_zero:
                    continue
                source = columns[r]
                if coeff == ONE:
                    acc = [x + y for x, y in zip(acc, source)]
                else:
                    acc = [x + y * coeff if y.coeffs else x for x, y in zip(acc, source)]
            updated[c] = acc
        for c, column in updated.items():
            columns[c] = column

    return LaurentMatrix([[columns[c][r] for c in range(dim)] for r in range(dim)])


# ================================
# 行列式与特征多项式
# ================================

def determinant(M: LaurentMatrix) -> LaurentPoly:
    """Bareiss 无分式消元求精确行列式；每步除法在整环中都是精确的"""
    n = M.dim
    a = M.rows()
    sign = 1
    previous = ONE

    for k in range(n - 1):
        if a[k][k].is_zero:
            pivot = next((r for r in range(k + 1, n) if not a[r][k].is_zero), None)
            if pivot is None:
                return ZERO
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign

        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (akk * a[i][j] - aik * a[k][j]).exact_div(previous)
        previous = akk

    result = a[n - 1][n - 1]
    return -result if sign < 0 else result


class BivariatePoly:
    """
    Z[x, t, t⁻¹] 中关于 x 的多项式

    coeffs[a] 为 x^a 的 Laurent 多项式系数
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[LaurentPoly]):
        values = list(coeffs)
        while len(values) > 1 and values[-1].is_zero:
            values.pop()
        self.coeffs: Tuple[LaurentPoly, ...] = tuple(values) if values else (ZERO,)

    @property
    def degree_x(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return self.coeffs[-1].is_unit

    def evaluate(self, x: complex, t: complex) -> complex:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c.evaluate(t)
        return acc

    def coefficients_at(self, t0: complex) -> np.ndarray:
        """t = t0 时的数值系数向量（x 的最高次在前，与 numpy.poly 一致）"""
        return np.array([c.evaluate(t0) for c in reversed(self.coeffs)], dtype=complex)

    def terms(self) -> Dict[Tuple[int, int], int]:
        """{(x 的幂次, t 的幂次): 系数}"""
        out = {}
        for a, c in enumerate(self.coeffs):
            for b, value in c.terms().items():
                out[(a, b)] = value
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        parts = []
        for a in range(self.degree_x, -1, -1):
            c = self.coeffs[a]
            if c.is_zero:
                continue
            monomial = "" if a == 0 else ("x" if a == 1 else f"x^{a}")
            if not monomial:
                text = str(c)
            elif c == ONE:
                text = monomial
            elif c == -1:
                text = "-" + monomial
            else:
                text = f"({c})*{monomial}"
            if parts and not text.startswith("-"):
                text = "+" + text
            parts.append(text)
        return "".join(parts) or "0"

    def to_json(self) -> Dict:
        return {
            "degree": self.degree_x,
            "coefficients": {str(a): c.to_json() for a, c in enumerate(self.coeffs) if not c.is_zero},
        }


def char_poly(M: LaurentMatrix) -> BivariatePoly:
    """
    det(x·I − M) 的精确二元多项式（Faddeev–LeVerrier）

    c_{n−k} = −tr(M·N_k)/k，N_{k+1} = M·N_k + c_{n−k}·I；
    系数属于 Z[t, t⁻¹]，因此除以 k 总是整除
    """
    n = M.dim
    coeffs: List[LaurentPoly] = [ZERO] * (n + 1)
    coeffs[n] = ONE

    current = LaurentMatrix.identity(n).entries
    for k in range(1, n + 1):
        product = _matmul(M.entries, current)
        trace = ZERO
        for i in range(n):
            trace = trace + product[i][i]
        c = -(trace.exact_div_int(k))
        coeffs[n - k] = c
        if k < n:
            for i in range(n):
                product[i][i] = product[i][i] + c
            current = product

    return BivariatePoly(coeffs)


# ================================
# 幂次分解与数值代入
# ================================

def decompose(M: LaurentMatrix) -> List[Tuple[int, IntMatrix]]:
    """
    按 t 的幂次分解 M = Σ tⁱ Mᵢ

    Returns:
        [(i, Mᵢ)]，按 i 升序，只列出非零的整数矩阵
    """
    lo, hi = M.exponent_range()
    parts = []
    for e in range(lo, hi + 1):
        coefficient = tuple(tuple(x.coefficient(e) for x in row) for row in M.entries)
        if any(any(row) for row in coefficient):
            parts.append((e, coefficient))
    return parts


def recompose(parts: Iterable[Tuple[int, Sequence[Sequence[int]]]], dim: int) -> LaurentMatrix:
    """decompose 的逆运算"""
    terms: List[List[Dict[int, int]]] = [[{} for _ in range(dim)] for _ in range(dim)]
    for e, matrix in parts:
        for r in range(dim):
            for c in range(dim):
                if matrix[r][c]:
                    terms[r][c][e] = terms[r][c].get(e, 0) + int(matrix[r][c])
    return LaurentMatrix([[LaurentPoly.from_terms(terms[r][c]) for c in range(dim)] for r in range(dim)])


def coefficient_stack(M: LaurentMatrix) -> Tuple[int, np.ndarray]:
    """
    连续幂次的系数矩阵栈

    Returns:
        (最低幂次 lo, 形状为 (hi−lo+1, dim, dim) 的浮点数组)
    """
    lo, hi = M.exponent_range()
    stack = np.zeros((hi - lo + 1, M.dim, M.dim), dtype=float)
    for e, matrix in decompose(M):
        stack[e - lo] = np.array(matrix, dtype=float)
    return lo, stack


def substitute_many(M: LaurentMatrix, etas: Sequence[complex]) -> np.ndarray:
    """
    在多个采样点同时代入 t = η（矩阵 Horner 格式）

    Returns:
        形状为 (S, dim, dim) 的复数组
    """
    points = np.asarray(etas, dtype=complex).reshape(-1)
    if np.any(points == 0):
        raise SubstitutionError("η = 0 不能代入 Laurent 矩阵")

    lo, stack = coefficient_stack(M)
    scale = points[:, None, None]
    acc = np.broadcast_to(stack[-1], (points.size, M.dim, M.dim)).astype(complex)
    for e in range(stack.shape[0] - 2, -1, -1):
        acc = acc * scale + stack[e]
    return acc * (points ** lo)[:, None, None]


def substitute(M: LaurentMatrix, eta: complex) -> np.ndarray:
    """代入 t = η 得到复矩阵"""
    return substitute_many(M, [eta])[0]
