"""
Burau熵估计工具 - 辫子词服务
负责辫子词的文法解析、块辫子展开、群运算与置换等初等不变量

约定：字母从左到右作用，B(ab) = B(a)·B(b)
"""

import logging
import re
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from app.core.errors import (
    BlockIndexError,
    BraidSyntaxError,
    GeneratorIndexError,
    StringCountMismatchError,
)
from app.schemas import BlockBraidTerm, BraidWord

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]

_INT = r"-?[1-9][0-9]*"
_TOKEN_RE = re.compile(
    rf"b\[(?P<i>{_INT}),(?P<n1>{_INT}),(?P<n2>{_INT})\](?:\^(?P<power>{_INT}))?"
    rf"|(?P<letter>{_INT})"
)
_SEPARATOR_RE = re.compile(r"\s+")


# ================================
# 解析
# ================================

def parse_braid(text: str, n: int) -> BraidWord:
    """
    按文法解析辫子词

    word := term* ; term := INT | block ;
    block := "b[" INT "," INT "," INT "]" ("^" INT)?

    Args:
        text: 以空白分隔的项
        n: 弦数（由外部给出，从不推断）

    Returns:
        BraidWord: 按阅读顺序排列的生成元序列
    """
    if n < 2:
        raise StringCountMismatchError(f"弦数至少为 2，实际为 {n}")

    letters: List[int] = []
    pos = 0
    length = len(text)

    while pos < length:
        gap = _SEPARATOR_RE.match(text, pos)
        if gap:
            pos = gap.end()
            continue

        match = _TOKEN_RE.match(text, pos)
        if match is None or (match.end() < length and not text[match.end()].isspace()):
            token = text[pos:].split(None, 1)[0]
            raise BraidSyntaxError(f"无法识别的项 '{token}'", pos, token)

        if match.group("letter") is not None:
            g = int(match.group("letter"))
            if abs(g) > n - 1:
                raise GeneratorIndexError(g, n, pos)
            letters.append(g)
        else:
            i, n1, n2 = (int(match.group(name)) for name in ("i", "n1", "n2"))
            if min(i, n1, n2) < 1:
                raise BraidSyntaxError("块辫子参数必须为正整数", pos, match.group(0))
            power = int(match.group("power") or 1)
            if i + n1 + n2 - 1 > n:
                raise BlockIndexError(i, n1, n2, n, pos)
            term = BlockBraidTerm(i=i, n1=n1, n2=n2, power=power)
            letters.extend(expand_block(term, n).letters)

        pos = match.end()

    logger.debug(f"🔍 解析辫子词完成: {len(letters)} 个字母, n={n}")
    return BraidWord(strings=n, letters=tuple(letters))


def format_word(w: BraidWord) -> str:
    """规范输出：带符号整数，单个空格分隔"""
    return " ".join(str(g) for g in w.letters)


# ================================
# 块辫子
# ================================

def _block_letters(i: int, n1: int, n2: int) -> List[int]:
    # 第 r 组为 σ_{s} σ_{s+1} … σ_{s+n2−1}，s = i+n1−1−r
    letters: List[int] = []
    for r in range(n1):
        start = i + n1 - 1 - r
        letters.extend(range(start, start + n2))
    return letters


def expand_block(term: BlockBraidTerm, n: int) -> BraidWord:
    """
    展开块辫子 σ_{i,n1,n2}^p 为 Artin 生成元

    Args:
        term: 块辫子项
        n: 弦数

    Returns:
        BraidWord: 展开后的辫子词；负幂为正展开的逆，重复 |p| 次
    """
    if term.required_strings > n:
        raise BlockIndexError(term.i, term.n1, term.n2, n)

    base = _block_letters(term.i, term.n1, term.n2)
    if term.power < 0:
        base = [-g for g in reversed(base)]

    return BraidWord(strings=n, letters=tuple(base * abs(term.power)))


# ================================
# 群运算
# ================================

def concat(a: BraidWord, b: BraidWord) -> BraidWord:
    """群乘积 ab（先 a 后 b）"""
    if a.strings != b.strings:
        raise StringCountMismatchError(f"弦数不一致: {a.strings} ≠ {b.strings}")
    return BraidWord(strings=a.strings, letters=a.letters + b.letters)


def inverse(w: BraidWord) -> BraidWord:
    return BraidWord(strings=w.strings, letters=tuple(-g for g in reversed(w.letters)))


def power(w: BraidWord, p: int) -> BraidWord:
    """w^p；p < 0 时为逆元的 |p| 次幂"""
    base = w if p >= 0 else inverse(w)
    return BraidWord(strings=w.strings, letters=base.letters * abs(p))


def normalize(w: BraidWord) -> BraidWord:
    """自由约化：反复消去相邻的 g, −g"""
    stack: List[int] = []
    for g in w.letters:
        if stack and stack[-1] == -g:
            stack.pop()
        else:
            stack.append(g)
    return BraidWord(strings=w.strings, letters=tuple(stack))


def embed(w: BraidWord, n: int) -> BraidWord:
    """把 B_m 中的辫子看作 B_n（n ≥ m）中的元素，新增的弦放在右侧"""
    if n < w.strings:
        raise StringCountMismatchError(f"无法把 {w.strings} 弦辫子嵌入 {n} 弦辫子群")
    return BraidWord(strings=n, letters=w.letters)


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if g > 0 else -1 for g in w.letters)


# ================================
# 置换
# ================================

def induced_permutation(w: BraidWord) -> Permutation:
    """
    辫子诱导的穿孔置换

    Returns:
        元组 p，p[q-1] 为穿孔 q 最终所在的位置（1 起）
    """
    # occupant[x] = 位置 x 上的穿孔
    occupant = list(range(w.strings + 1))
    for g in w.letters:
        x = abs(g)
        occupant[x], occupant[x + 1] = occupant[x + 1], occupant[x]

    image = [0] * w.strings
    for position in range(1, w.strings + 1):
        image[occupant[position] - 1] = position
    return tuple(image)


def compose_permutations(first: Sequence[int], second: Sequence[int]) -> Permutation:
    """先作用 first 再作用 second"""
    return tuple(second[first[q] - 1] for q in range(len(first)))


def permutation_cycles(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    """轮换表示，省略不动点"""
    seen = set()
    cycles: List[Tuple[int, ...]] = []
    for start in range(1, len(perm) + 1):
        if start in seen or perm[start - 1] == start:
            continue
        cycle = [start]
        seen.add(start)
        nxt = perm[start - 1]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt - 1]
        cycles.append(tuple(cycle))
    return cycles


# ================================
# 随机辫子
# ================================

def random_word(rng: np.random.Generator, n: int, length: int) -> BraidWord:
    """生成随机辫子词（生成元下标与符号均匀分布）"""
    if length <= 0:
        return BraidWord(strings=n, letters=())
    indices = rng.integers(1, n, size=length)
    signs = rng.choice(np.array([-1, 1]), size=length)
    return BraidWord(strings=n, letters=tuple(int(g) for g in indices * signs))


def random_corpus(seed: int, count: int, n_range: Iterable[int], max_length: int) -> List[BraidWord]:
    """固定种子的随机辫子词语料"""
    rng = np.random.default_rng(seed)
    strings = list(n_range)
    corpus = []
    for _ in range(count):
        n = int(rng.choice(strings))
        length = int(rng.integers(0, max_length + 1))
        corpus.append(random_word(rng, n, length))
    return corpus
