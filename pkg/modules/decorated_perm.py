"""
Decorated Permutation Module
项链与装饰置换的双向转换、上 Grassmann 项链、对偶 Schubert 拟阵交
"""

import logging
from itertools import permutations, product
from typing import Iterator, Tuple

import numpy as np

from .data_types import BasisCollection, DecoratedPermutation, GrassmannNecklace, KSubset
from .errors import InputError
from .necklace import cyclic_orders, validated_necklace
from .subset_core import all_subsets, lex_key

logger = logging.getLogger(__name__)

LOOP = 1
COLOOP = -1


def perm_from_necklace(necklace: GrassmannNecklace) -> DecoratedPermutation:
    """
    读出每一步 I_i -> I_{i+1} 的变化

    - I_{i+1} = I_i \\ {i} ∪ {j}, j != i  =>  pi(i) = j
    - I_{i+1} = I_i, i 不在 I_i 中       =>  不动点, col = +1
    - I_{i+1} = I_i, i 在 I_i 中         =>  不动点, col = -1
    """
    necklace = validated_necklace(necklace)
    pi = []
    col = {}
    for i in range(1, necklace.n + 1):
        current = necklace.entry(i)
        following = necklace.entry(i + 1)
        if following == current:
            pi.append(i)
            col[i] = COLOOP if i in current else LOOP
            continue
        inserted = following.mask & ~current.without(i).mask
        pi.append(inserted.bit_length())
    return DecoratedPermutation.of(pi, col)


def _is_coloop(perm: DecoratedPermutation, i: int) -> bool:
    return perm(i) == i and perm.col[i] == COLOOP


def necklace_from_perm(perm: DecoratedPermutation) -> GrassmannNecklace:
    """I_i = { j | j <_i pi^{-1}(j) 或 (pi(j) = j 且 col(j) = -1) }"""
    entries = []
    for order in cyclic_orders(perm.n):
        entries.append(KSubset.of(perm.n, (
            j for j in range(1, perm.n + 1)
            if order.rank(j) < order.rank(perm.inv(j)) or _is_coloop(perm, j)
        )))
    return GrassmannNecklace(perm.n, tuple(entries))


def upper_necklace_from_perm(perm: DecoratedPermutation) -> Tuple[KSubset, ...]:
    """J_r = { i | pi(i) <_r i 或 (pi(i) = i 且 col(i) = -1) }"""
    return tuple(
        KSubset.of(perm.n, (
            i for i in range(1, perm.n + 1)
            if order.rank(perm(i)) < order.rank(i) or _is_coloop(perm, i)
        ))
        for order in cyclic_orders(perm.n)
    )


def _dominated_by_all(subset: KSubset, orders, keys) -> bool:
    for order, key in zip(orders, keys):
        for a, b in zip(lex_key(subset, order), key):
            if a > b:
                return False
    return True


def upper_member(subset: KSubset, perm: DecoratedPermutation) -> bool:
    """对所有 i 有 H <=_i J_i"""
    upper = upper_necklace_from_perm(perm)
    if (subset.n, subset.k) != (perm.n, upper[0].k):
        raise InputError(f"subset {subset} does not match (n,k)=({perm.n},{upper[0].k})")
    orders = cyclic_orders(perm.n)
    keys = tuple(lex_key(J, order) for J, order in zip(upper, orders))
    return _dominated_by_all(subset, orders, keys)


def positroid_from_upper(perm: DecoratedPermutation) -> BasisCollection:
    """
    对偶 Schubert 拟阵在上项链上的交

    Args:
        perm: 装饰置换

    Returns:
        BasisCollection
    """
    upper = upper_necklace_from_perm(perm)
    orders = cyclic_orders(perm.n)
    keys = tuple(lex_key(J, order) for J, order in zip(upper, orders))
    k = upper[0].k
    bases = frozenset(
        H for H in all_subsets(perm.n, k) if _dominated_by_all(H, orders, keys)
    )
    return BasisCollection(perm.n, k, bases)


def enumerate_decorated_perms(n: int) -> Iterator[DecoratedPermutation]:
    """枚举 [n] 上全部装饰置换，共 sum_j n!/j! 个"""
    for pi in permutations(range(1, n + 1)):
        fixed = [i for i in range(1, n + 1) if pi[i - 1] == i]
        for signs in product((LOOP, COLOOP), repeat=len(fixed)):
            yield DecoratedPermutation(pi, tuple(zip(fixed, signs)))


def random_decorated_perm(n: int, rng: np.random.Generator) -> DecoratedPermutation:
    pi = [int(v) + 1 for v in rng.permutation(n)]
    col = {
        i: int(rng.choice((LOOP, COLOOP)))
        for i in range(1, n + 1) if pi[i - 1] == i
    }
    return DecoratedPermutation.of(pi, col)


def swap_pattern(perm: DecoratedPermutation, a: int, b: int, i: int) -> bool:
    """a <_i b <_i pi(a) <_i pi(b)，四者互不相同（循环上再回到 a）"""
    order = cyclic_orders(perm.n)[i - 1]
    chain = [a, b, perm(a), perm(b)]
    if len(set(chain)) < 4:
        return False
    ranks = [order.rank(x) for x in chain]
    return ranks == sorted(ranks)


def switch(perm: DecoratedPermutation, a: int, b: int) -> DecoratedPermutation:
    """交换 pi(a) 与 pi(b)；不允许产生新的不动点"""
    pi = list(perm.pi)
    pi[a - 1], pi[b - 1] = pi[b - 1], pi[a - 1]
    col = perm.col
    for x in (a, b):
        if pi[x - 1] == x and x not in col:
            raise InputError(f"switching {a} and {b} creates an uncolored fixed point {x}")
        if pi[x - 1] != x:
            col.pop(x, None)
    return DecoratedPermutation.of(pi, col)
