"""
Necklace Module
Grassmann 项链：校验、从基集合提取、Schubert 拟阵交构造与正拟阵判定
"""

import logging
from functools import lru_cache
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .data_types import BasisCollection, CyclicOrder, GrassmannNecklace, KSubset
from .errors import InputError
from .subset_core import all_subsets, lex_key

logger = logging.getLogger(__name__)

EXCHANGE_RULE = "necklace exchange rule"
STATIONARY_RULE = "necklace stationary rule"


@lru_cache(maxsize=None)
def cyclic_orders(n: int) -> Tuple[CyclicOrder, ...]:
    """<_1, ..., <_n"""
    return tuple(CyclicOrder(t, n) for t in range(1, n + 1))


def _as_necklace(seq: Union[GrassmannNecklace, Sequence[KSubset]]) -> GrassmannNecklace:
    if isinstance(seq, GrassmannNecklace):
        return seq
    entries = tuple(seq)
    if not entries:
        raise InputError("necklace sequence is empty")
    # 长度与基数检查在 GrassmannNecklace 构造时完成
    return GrassmannNecklace(entries[0].n, entries)


def _first_violation(necklace: GrassmannNecklace) -> Optional[Tuple[int, str]]:
    for i in range(1, necklace.n + 1):
        current = necklace.entry(i)
        following = necklace.entry(i + 1)
        if i in current:
            rest = current.without(i)
            if rest.mask & ~following.mask:
                return i, EXCHANGE_RULE
        elif following != current:
            return i, STATIONARY_RULE
    return None


def is_grassmann_necklace(seq: Union[GrassmannNecklace, Sequence[KSubset]]) -> bool:
    """
    判定序列是否满足项链的两条规则（下标按模 n）

    Args:
        seq: 长度为 n 的 KSubset 序列

    Returns:
        bool: 是否为 Grassmann 项链
    """
    return _first_violation(_as_necklace(seq)) is None


def validated_necklace(seq: Union[GrassmannNecklace, Sequence[KSubset]]) -> GrassmannNecklace:
    """校验并返回项链，失败时指出第一个违反规则的位置"""
    necklace = _as_necklace(seq)
    violation = _first_violation(necklace)
    if violation is not None:
        i, rule = violation
        raise InputError(
            f"I_{i}={necklace.entry(i)} -> I_{i % necklace.n + 1}={necklace.entry(i + 1)}",
            rule=rule,
        )
    return necklace


def necklace_of(collection: BasisCollection) -> GrassmannNecklace:
    """
    第 t 项取 <_t 字典序最小的基

    对拟阵输入这与 <=_t 下的 Gale 最小元一致。返回的是原始序列，
    只有在输入为正拟阵时才保证是合法项链，调用方需自行校验。
    """
    if not collection.bases:
        raise InputError("basis collection is empty", rule="nonempty")
    entries = tuple(
        min(collection.bases, key=lambda b, o=order: lex_key(b, o))
        for order in cyclic_orders(collection.n)
    )
    return GrassmannNecklace(collection.n, entries)


def _entry_keys(necklace: GrassmannNecklace) -> Tuple[Tuple[int, ...], ...]:
    return tuple(
        lex_key(necklace.entry(order.t), order) for order in cyclic_orders(necklace.n)
    )


def _dominates_all(subset: KSubset, orders, keys) -> bool:
    for order, key in zip(orders, keys):
        ranks = lex_key(subset, order)
        for a, b in zip(key, ranks):
            if a > b:
                return False
    return True


def member(subset: KSubset, necklace: GrassmannNecklace) -> bool:
    """H 属于正拟阵当且仅当对所有 t 有 H >=_t I_t"""
    if (subset.n, subset.k) != (necklace.n, necklace.k):
        raise InputError(
            f"subset {subset} has (n,k)=({subset.n},{subset.k}), "
            f"necklace has ({necklace.n},{necklace.k})"
        )
    return _dominates_all(subset, cyclic_orders(necklace.n), _entry_keys(necklace))


def positroid_from_necklace(necklace: GrassmannNecklace) -> BasisCollection:
    """
    M = SM^1_{I_1} ∩ ... ∩ SM^n_{I_n}

    Args:
        necklace: 合法项链

    Returns:
        BasisCollection: 显式的交集
    """
    necklace = validated_necklace(necklace)
    orders = cyclic_orders(necklace.n)
    keys = _entry_keys(necklace)
    bases = frozenset(
        H for H in all_subsets(necklace.n, necklace.k)
        if _dominates_all(H, orders, keys)
    )
    logger.debug("positroid of %d-necklace has %d bases", necklace.n, len(bases))
    return BasisCollection(necklace.n, necklace.k, bases)


def is_positroid(collection: BasisCollection) -> bool:
    """
    正拟阵判定：提取项链、校验、再比较 Schubert 交

    Args:
        collection: 非空基集合

    Returns:
        bool: 是否为正拟阵
    """
    necklace = necklace_of(collection)
    if not is_grassmann_necklace(necklace):
        logger.debug("extracted sequence is not a necklace: %s", necklace.to_dict())
        return False
    return positroid_from_necklace(necklace) == collection


def random_necklace(n: int, rng: np.random.Generator) -> GrassmannNecklace:
    """经由随机装饰置换生成合法项链"""
    from .decorated_perm import necklace_from_perm, random_decorated_perm

    return necklace_from_perm(random_decorated_perm(n, rng))
