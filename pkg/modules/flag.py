"""
Flag Module
旗拟阵与旗正拟阵判定

<=_w 约定：a <=_w b 当且仅当 a 在单词 w 中出现得不晚于 b，即 w^{-1}(a) <= w^{-1}(b)。
所有结论都以此约定为前提（另一种约定取逆）。
"""

import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Any, Dict, FrozenSet, Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np

from .data_types import BasisCollection, KSubset
from .errors import InputError
from .necklace import is_positroid
from .subset_core import is_matroid

logger = logging.getLogger(__name__)

# 5040 个全序
DEFAULT_EXHAUSTIVE_CAP = 7
DEFAULT_SAMPLE_ORDERS = 2000


@dataclass(frozen=True)
class Flag:
    """严格递增的子集序列 F^1 ⊂ ... ⊂ F^m"""
    constituents: Tuple[KSubset, ...]

    def __post_init__(self):
        object.__setattr__(self, "constituents", tuple(self.constituents))
        if not self.constituents:
            raise InputError("a flag needs at least one constituent")
        if len({c.n for c in self.constituents}) != 1:
            raise InputError("flag constituents live on different ground sets")
        for smaller, larger in zip(self.constituents, self.constituents[1:]):
            if smaller.mask & ~larger.mask or smaller.k >= larger.k:
                raise InputError(f"{smaller} is not strictly contained in {larger}",
                                 rule="strict containment")

    @property
    def ranks(self) -> Tuple[int, ...]:
        return tuple(c.k for c in self.constituents)

    def to_list(self):
        return [c.to_list() for c in self.constituents]


@dataclass(frozen=True)
class ConstituentList:
    """同一基集上秩严格递增的拟阵列表 M_1, ..., M_m"""
    matroids: Tuple[BasisCollection, ...]

    def __post_init__(self):
        object.__setattr__(self, "matroids", tuple(self.matroids))
        if not self.matroids:
            raise InputError("constituent list is empty")
        if len({m.n for m in self.matroids}) != 1:
            raise InputError("constituents live on different ground sets")
        ranks = [m.k for m in self.matroids]
        if any(a >= b for a, b in zip(ranks, ranks[1:])):
            raise InputError(f"constituent ranks {ranks} are not strictly increasing")
        for m in self.matroids:
            if not m.bases:
                raise InputError("constituent has no bases", rule="nonempty")

    @property
    def n(self) -> int:
        return self.matroids[0].n

    @property
    def ranks(self) -> Tuple[int, ...]:
        return tuple(m.k for m in self.matroids)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.matroids[-1].k,
            "flagConstituents": [[b.to_list() for b in m.sorted()] for m in self.matroids],
        }


@dataclass(frozen=True)
class ConcordanceReport:
    """concordant 为 True 且 exhaustive 为 False 时只表示未找到反例"""
    concordant: bool
    exhaustive: bool
    orders_checked: int
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.concordant


def _check_word(word: Sequence[int], n: int) -> Tuple[int, ...]:
    word = tuple(int(v) for v in word)
    if sorted(word) != list(range(1, n + 1)):
        raise InputError(f"{list(word)} is not a permutation of [1,{n}]")
    return word


def _greedy_basis(collection: BasisCollection, word: Tuple[int, ...]) -> KSubset:
    masks = collection.masks
    chosen = 0
    size = 0
    for e in word:
        if size == collection.k:
            break
        candidate = chosen | (1 << (e - 1))
        if any(mask & candidate == candidate for mask in masks):
            chosen = candidate
            size += 1
    return KSubset(collection.n, chosen)


def w_minimal_basis(collection: BasisCollection, word: Sequence[int]) -> KSubset:
    """
    <=_w 下的 Gale 最小基（拟阵上由贪心算法给出，且唯一）

    Args:
        collection: 拟阵
        word: [n] 的一个排列，按出现先后定序

    Returns:
        KSubset
    """
    word = _check_word(word, collection.n)
    if not is_matroid(collection):
        raise InputError("w-minimal bases are only defined for matroids", rule="matroid")
    return _greedy_basis(collection, word)


def _orders(n: int, cap: int, samples: int, seed: int) -> Tuple[Iterable[Tuple[int, ...]], bool]:
    if n <= cap:
        return permutations(range(1, n + 1)), True
    rng = np.random.default_rng(seed)
    sampled = (tuple(int(v) + 1 for v in rng.permutation(n)) for _ in range(samples))
    return sampled, False


def check_concordance(
    constituents: ConstituentList,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    samples: int = DEFAULT_SAMPLE_ORDERS,
    seed: int = 0,
) -> ConcordanceReport:
    """
    对每个测试的 w 检查各层 w-最小基是否构成旗

    n <= cap 时穷举 S_n；否则按种子随机抽样，只能否定不能证实。
    """
    for m in constituents.matroids:
        if not is_matroid(m):
            raise InputError("every constituent must be a matroid", rule="matroid")
    orders, exhaustive = _orders(constituents.n, cap, samples, seed)
    checked = 0
    for word in orders:
        checked += 1
        minima = [_greedy_basis(m, word) for m in constituents.matroids]
        for smaller, larger in zip(minima, minima[1:]):
            if smaller.mask & ~larger.mask:
                logger.debug("order %s refutes concordance: %s vs %s", word, smaller, larger)
                return ConcordanceReport(False, exhaustive, checked, word)
    if not exhaustive:
        logger.warning(
            "n=%d exceeds exhaustive cap %d: %d sampled orders found no refutation, "
            "concordance is not certified", constituents.n, cap, checked,
        )
    return ConcordanceReport(True, exhaustive, checked)


def are_concordant(constituents: ConstituentList, cap: int = DEFAULT_EXHAUSTIVE_CAP, **kwargs) -> bool:
    return check_concordance(constituents, cap, **kwargs).concordant


def _extend(prefix: Tuple[KSubset, ...], levels: Sequence[BasisCollection]) -> Iterator[Tuple[KSubset, ...]]:
    if not levels:
        yield prefix
        return
    last = prefix[-1].mask
    for basis in levels[0].sorted():
        if last & ~basis.mask == 0:
            yield from _extend(prefix + (basis,), levels[1:])


def flag_collection(constituents: ConstituentList, cap: int = DEFAULT_EXHAUSTIVE_CAP) -> FrozenSet[Flag]:
    """所有由各层基组成的嵌套链"""
    if not are_concordant(constituents, cap):
        raise InputError("constituents are not concordant", rule="concordance")
    first, rest = constituents.matroids[0], constituents.matroids[1:]
    return frozenset(
        Flag(chain) for basis in first.sorted() for chain in _extend((basis,), rest)
    )


def project(flags: Iterable[Flag], level: int) -> BasisCollection:
    """第 level 层（从 1 开始）的全部成员"""
    members = [flag.constituents[level - 1] for flag in flags]
    if not members:
        raise InputError("cannot project an empty flag collection")
    return BasisCollection(members[0].n, members[0].k, frozenset(members))


def is_flag_matroid(flags: Iterable[Flag], cap: int = DEFAULT_EXHAUSTIVE_CAP) -> bool:
    """
    旗集合是否为旗拟阵：各层为拟阵、各层协调、且包含全部嵌套基链
    """
    flags = frozenset(flags)
    if not flags:
        raise InputError("flag collection is empty", rule="nonempty")
    ranks = {flag.ranks for flag in flags}
    if len(ranks) != 1:
        raise InputError(f"flags have different rank sequences {sorted(ranks)}")
    levels = tuple(project(flags, level) for level in range(1, len(next(iter(ranks))) + 1))
    if not all(is_matroid(m) for m in levels):
        return False
    constituents = ConstituentList(levels)
    if not are_concordant(constituents, cap):
        return False
    return flag_collection(constituents, cap) == flags


def is_flag_positroid(constituents: ConstituentList, cap: int = DEFAULT_EXHAUSTIVE_CAP, **kwargs) -> bool:
    """每层都是正拟阵且各层协调"""
    if not all(is_positroid(m) for m in constituents.matroids):
        return False
    return are_concordant(constituents, cap, **kwargs)
