"""
Subset Core Module
循环全序、k 元子集上的 Gale 偏序、循环平移 Schubert 拟阵与基交换检查
"""

import logging
from functools import lru_cache
from typing import FrozenSet, Iterator, Tuple

from .data_types import BasisCollection, CyclicOrder, KSubset
from .errors import InputError

logger = logging.getLogger(__name__)


def all_subsets(n: int, k: int) -> Iterator[KSubset]:
    """
    按位掩码的 colex 顺序枚举 C([n], k)

    Args:
        n: 基集大小
        k: 子集大小

    Yields:
        KSubset
    """
    if not 0 <= k <= n:
        return
    if k == 0:
        yield KSubset(n, 0)
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield KSubset(n, mask)
        # Gosper: 同 popcount 的下一个掩码
        low = mask & -mask
        ripple = mask + low
        mask = (((ripple ^ mask) >> 2) // low) | ripple


@lru_cache(maxsize=1 << 16)
def _rotated_ranks(mask: int, n: int, t: int) -> Tuple[int, ...]:
    # 把 t 旋转到第 0 位，置位的位置即按 <_t 排序后的秩
    shift = t - 1
    full = (1 << n) - 1
    rotated = ((mask >> shift) | (mask << (n - shift))) & full
    ranks = []
    position = 0
    while rotated:
        if rotated & 1:
            ranks.append(position)
        rotated >>= 1
        position += 1
    return tuple(ranks)


def _check_same_ground(subset: KSubset, order: CyclicOrder) -> None:
    if subset.n != order.n:
        raise InputError(f"subset {subset} lives on n={subset.n}, order on n={order.n}")


def cyclic_rank(e: int, order: CyclicOrder) -> int:
    """e 在 <_t 中的位置（t 的秩为 0）"""
    return order.rank(e)


def lex_key(subset: KSubset, order: CyclicOrder) -> Tuple[int, ...]:
    """按 <_t 排序后各元素的秩；元组的字典序即 <_t 下的字典序"""
    _check_same_ground(subset, order)
    return _rotated_ranks(subset.mask, subset.n, order.t)


def sort_cyclic(subset: KSubset, order: CyclicOrder) -> Tuple[int, ...]:
    """
    按 <_t 递增列出子集元素

    Args:
        subset: 子集
        order: 循环序

    Returns:
        Tuple[int, ...]: 例如 ({2,4,5}, t=4) -> (4,5,2)
    """
    return tuple(order.element_at(r) for r in lex_key(subset, order))


def _componentwise_leq(left: Tuple[int, ...], right: Tuple[int, ...]) -> bool:
    return all(a <= b for a, b in zip(left, right))


def gale_leq(first: KSubset, second: KSubset, order: CyclicOrder) -> bool:
    """I <=_t J：按 <_t 排序后逐分量比较"""
    if (first.n, first.k) != (second.n, second.k):
        raise InputError(
            f"cannot compare {first} (n={first.n},k={first.k}) "
            f"with {second} (n={second.n},k={second.k})"
        )
    return _componentwise_leq(lex_key(first, order), lex_key(second, order))


def shifted_schubert(lower: KSubset, order: CyclicOrder) -> BasisCollection:
    """SM^t_I = {J | I <=_t J}"""
    _check_same_ground(lower, order)
    key = lex_key(lower, order)
    bases = frozenset(
        J for J in all_subsets(lower.n, lower.k)
        if _componentwise_leq(key, lex_key(J, order))
    )
    return BasisCollection(lower.n, lower.k, bases)


def dual_shifted_schubert(upper: KSubset, order: CyclicOrder) -> BasisCollection:
    """对偶版本：{H | H <=_t J}"""
    _check_same_ground(upper, order)
    key = lex_key(upper, order)
    bases = frozenset(
        H for H in all_subsets(upper.n, upper.k)
        if _componentwise_leq(lex_key(H, order), key)
    )
    return BasisCollection(upper.n, upper.k, bases)


def _require_nonempty(collection: BasisCollection) -> None:
    if not collection.bases:
        raise InputError("basis collection is empty", rule="nonempty")


def is_matroid(collection: BasisCollection) -> bool:
    """
    基交换公理：对任意 B1, B2 与 x ∈ B1\\B2，存在 y ∈ B2\\B1 使 B1-x+y 仍是基

    Args:
        collection: 非空基集合

    Returns:
        bool: 是否为拟阵
    """
    _require_nonempty(collection)
    masks = collection.masks
    for first in masks:
        for second in masks:
            only_first = first & ~second
            only_second = second & ~first
            while only_first:
                x = only_first & -only_first
                only_first ^= x
                reduced = first ^ x
                candidates = only_second
                while candidates:
                    y = candidates & -candidates
                    candidates ^= y
                    if reduced | y in masks:
                        break
                else:
                    logger.debug(
                        "exchange fails: %s without %d",
                        KSubset(collection.n, first), x.bit_length(),
                    )
                    return False
    return True


def loops(collection: BasisCollection) -> FrozenSet[int]:
    """不属于任何基的元素"""
    _require_nonempty(collection)
    union = 0
    for mask in collection.masks:
        union |= mask
    return frozenset(e for e in range(1, collection.n + 1) if not union >> (e - 1) & 1)


def coloops(collection: BasisCollection) -> FrozenSet[int]:
    """属于每个基的元素"""
    _require_nonempty(collection)
    common = (1 << collection.n) - 1
    for mask in collection.masks:
        common &= mask
    return frozenset(e for e in range(1, collection.n + 1) if common >> (e - 1) & 1)
