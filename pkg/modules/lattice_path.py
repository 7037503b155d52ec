"""
Lattice Path Module
格路拟阵 LP_{I,J}、其装饰置换，以及置零 Vandermonde 矩阵的精确实现

所有行列式都用 sympy 的 Bareiss 无分数消元精确计算，不使用浮点。
"""

import logging
from dataclasses import dataclass
from math import comb
from typing import Any, Dict, Tuple

import numpy as np
from sympy import Matrix

from .data_types import BasisCollection, CyclicOrder, DecoratedPermutation, KSubset
from .errors import CertificateError, InputError, ResourceLimitError
from .subset_core import all_subsets, dual_shifted_schubert, gale_leq, shifted_schubert

logger = logging.getLogger(__name__)

# x_1 > 1 即可，取最小整数
BASE_VALUE = 2

# 最大元素 x_k^{n-1} 的位数上限，约覆盖 k <= 5, n <= 12
DEFAULT_MAX_ENTRY_BITS = 5_000_000

# 证书要逐个计算 C(n,k) 个子式；C(12,5) = 792
DEFAULT_MAX_MINORS = 1000


@dataclass(frozen=True)
class LatticePathBounds:
    """下界 I 与上界 J，要求 I <= J（<_1 下的 Gale 序）"""
    lower: KSubset
    upper: KSubset

    def __post_init__(self):
        if (self.lower.n, self.lower.k) != (self.upper.n, self.upper.k):
            raise InputError(f"bounds {self.lower} and {self.upper} differ in (n,k)")
        if not gale_leq(self.lower, self.upper, CyclicOrder(1, self.lower.n)):
            raise InputError(f"{self.lower} is not <= {self.upper}", rule="lower <= upper")

    @classmethod
    def of(cls, n: int, lower, upper) -> "LatticePathBounds":
        return cls(KSubset.of(n, lower), KSubset.of(n, upper))

    @property
    def n(self) -> int:
        return self.lower.n

    @property
    def k(self) -> int:
        return self.lower.k

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "bounds": {"I": self.lower.to_list(), "J": self.upper.to_list()},
        }


@dataclass(frozen=True)
class ExactMatrix:
    """k x n 的大整数矩阵及代入值 x_1..x_k"""
    rows: Tuple[Tuple[int, ...], ...]
    xs: Tuple[int, ...]
    n: int

    @property
    def k(self) -> int:
        return len(self.rows)

    def to_sympy(self) -> Matrix:
        return Matrix(self.k, self.n, [v for row in self.rows for v in row])

    def to_dict(self) -> Dict[str, Any]:
        return {"x": list(self.xs), "rows": [list(row) for row in self.rows]}


def lattice_path_bases(bounds: LatticePathBounds) -> BasisCollection:
    """LP_{I,J} = SM_I ∩ dual SM_J"""
    order = CyclicOrder(1, bounds.n)
    return shifted_schubert(bounds.lower, order) & dual_shifted_schubert(bounds.upper, order)


def lp_decorated_perm(bounds: LatticePathBounds) -> DecoratedPermutation:
    """
    pi(j_r) = i_r，pi(d_r) = c_r；不动点 t 在 J 中染 -1，否则 +1

    Args:
        bounds: 格路上下界

    Returns:
        DecoratedPermutation
    """
    n = bounds.n
    pi = [0] * n
    for j, i in zip(bounds.upper.elements, bounds.lower.elements):
        pi[j - 1] = i
    outside_upper = bounds.upper.complement().elements
    outside_lower = bounds.lower.complement().elements
    for d, c in zip(outside_upper, outside_lower):
        pi[d - 1] = c
    col = {t: (-1 if t in bounds.upper else 1) for t in range(1, n + 1) if pi[t - 1] == t}
    return DecoratedPermutation.of(pi, col)


def _perm_bounds(perm: DecoratedPermutation) -> Tuple[KSubset, KSubset]:
    """由置换读出 I = {i | i < pi^{-1}(i)} ∪ 余环 与 J = {i | pi(i) < i} ∪ 余环"""
    n = perm.n
    coloops = {t for t, c in perm.colors if c == -1}
    lower = KSubset.of(n, {i for i in range(1, n + 1) if i < perm.inv(i)} | coloops)
    upper = KSubset.of(n, {i for i in range(1, n + 1) if perm(i) < i} | coloops)
    return lower, upper


def lp_constraints_hold(perm: DecoratedPermutation, bounds: LatticePathBounds) -> bool:
    """I = {i | i < pi^{-1}(i)} ∪ 余环, J = {i | pi(i) < i} ∪ 余环, pi(J) = I"""
    lower, upper = _perm_bounds(perm)
    return (
        lower == bounds.lower
        and upper == bounds.upper
        and perm.image(bounds.upper) == bounds.lower
    )


def lattice_path_hull(perm: DecoratedPermutation) -> LatticePathBounds:
    """
    由置换读出的 (I, J)，此时 pi(J) = I 自动成立

    M_pi ⊆ LP_{I,J}，而 lp_decorated_perm 给出读出同一 (I, J) 的置换，
    所以 LP_{I,J} 是这类正拟阵中按包含关系最大的一个。
    """
    lower, upper = _perm_bounds(perm)
    return LatticePathBounds(lower, upper)


def entry_bits(n: int, k: int) -> int:
    """最大元素 x_k^{n-1} 的位数（x_1 = 2）"""
    if k == 0:
        return 0
    return (n - 1) * k ** (2 * (k - 1))


def realize(bounds: LatticePathBounds, max_entry_bits: int = DEFAULT_MAX_ENTRY_BITS,
            max_minors: int = DEFAULT_MAX_MINORS) -> ExactMatrix:
    """
    v_ij = x_i^{j-1}（a_i <= j <= b_i），否则 0；x_1 = 2, x_{i+1} = x_i^{k^2}

    Args:
        bounds: 格路上下界
        max_entry_bits: 大整数预算
        max_minors: 子式个数 C(n,k) 的上限

    Returns:
        ExactMatrix

    Raises:
        ResourceLimitError: 任一预算超出
    """
    n, k = bounds.n, bounds.k
    minors = comb(n, k)
    if minors > max_minors:
        raise ResourceLimitError(
            f"certifying k={k}, n={n} needs {minors} minors, budget is {max_minors}"
        )
    bits = entry_bits(n, k)
    if bits > max_entry_bits:
        raise ResourceLimitError(
            f"realizing k={k}, n={n} needs {bits}-bit entries, budget is {max_entry_bits}"
        )
    xs = [BASE_VALUE] if k else []
    for _ in range(1, k):
        xs.append(xs[-1] ** (k * k))
    rows = []
    for x, a, b in zip(xs, bounds.lower.elements, bounds.upper.elements):
        rows.append(tuple(x ** (j - 1) if a <= j <= b else 0 for j in range(1, n + 1)))
    logger.debug("realized LP matrix k=%d n=%d, largest entry %d bits", k, n, bits)
    return ExactMatrix(tuple(rows), tuple(xs), n)


def maximal_minors(matrix: ExactMatrix) -> Dict[KSubset, int]:
    """全部 k x k 子式 Δ_H，按 Bareiss 精确计算"""
    if matrix.k == 0:
        return {KSubset(matrix.n, 0): 1}
    full = matrix.to_sympy()
    row_index = list(range(matrix.k))
    minors = {}
    for H in all_subsets(matrix.n, matrix.k):
        block = full.extract(row_index, [c - 1 for c in H.elements])
        minors[H] = int(block.det(method="bareiss"))
    return minors


def matroid_of_matrix(matrix: ExactMatrix) -> BasisCollection:
    """由非零最大子式给出的拟阵"""
    bases = frozenset(H for H, value in maximal_minors(matrix).items() if value != 0)
    return BasisCollection(matrix.n, matrix.k, bases)


def is_totally_nonnegative(matrix: ExactMatrix) -> bool:
    return all(value >= 0 for value in maximal_minors(matrix).values())


def minor_sign_certificate(matrix: ExactMatrix, bounds: LatticePathBounds) -> bool:
    """
    对每个 H：Δ_H > 0 当且仅当 H ∈ LP_{I,J}，否则 Δ_H = 0

    Raises:
        CertificateError: 出现负子式或符号与成员关系不符，携带该 H
    """
    lattice = lattice_path_bases(bounds)
    for H, value in sorted(maximal_minors(matrix).items(), key=lambda item: item[0].sort_key()):
        inside = H in lattice
        if value < 0 or (value > 0) != inside:
            raise CertificateError(H, value, expected_positive=inside)
    return True


def random_bounds(n: int, k: int, rng: np.random.Generator) -> LatticePathBounds:
    """两个随机 k 元子集逐分量取 min / max"""
    first = sorted(int(v) + 1 for v in rng.choice(n, size=k, replace=False))
    second = sorted(int(v) + 1 for v in rng.choice(n, size=k, replace=False))
    lower = [min(a, b) for a, b in zip(first, second)]
    upper = [max(a, b) for a, b in zip(first, second)]
    return LatticePathBounds.of(n, lower, upper)


def is_lattice_path(collection: BasisCollection) -> bool:
    """
    基集合是否等于某个 LP_{I,J}

    若是，I 与 J 只能是 <_1 下字典序最小与最大的基。
    """
    if not collection.bases:
        raise InputError("basis collection is empty", rule="nonempty")
    order = CyclicOrder(1, collection.n)
    lower = min(collection.bases, key=KSubset.sort_key)
    upper = max(collection.bases, key=KSubset.sort_key)
    if not gale_leq(lower, upper, order):
        return False
    return lattice_path_bases(LatticePathBounds(lower, upper)) == collection
