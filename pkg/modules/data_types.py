"""
Data Types Module
定义项目中使用的数据类型

KSubset 用位掩码存储（bit e-1 表示元素 e），所有值在构造后不可变。
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from .errors import InputError, ResourceLimitError

# 位掩码快速路径的上限
MAX_GROUND_SIZE = 64


class DocumentKind(Enum):
    """文档载荷类型"""
    NECKLACE = "necklace"
    PERM = "perm"
    LE = "le"
    BOUNDS = "bounds"
    BASES = "bases"
    FLAG = "flagConstituents"


class SuiteStatus(Enum):
    """校验套件状态"""
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


def _check_ground_size(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"ground size must be a positive integer, got {n!r}")
    if n > MAX_GROUND_SIZE:
        raise ResourceLimitError(
            f"ground size {n} exceeds the supported maximum {MAX_GROUND_SIZE}"
        )


@dataclass(frozen=True)
class KSubset:
    """[n] 的 k 元子集"""
    n: int
    mask: int

    def __post_init__(self):
        _check_ground_size(self.n)
        if self.mask < 0 or self.mask >> self.n:
            raise InputError(f"mask {self.mask:#x} has bits outside [1,{self.n}]")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "KSubset":
        """
        由元素列表构造

        Args:
            n: 基集大小
            elements: [1,n] 中互不相同的整数

        Returns:
            KSubset
        """
        _check_ground_size(n)
        mask = 0
        for e in elements:
            if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
                raise InputError(f"element {e!r} is outside [1,{n}]")
            bit = 1 << (e - 1)
            if mask & bit:
                raise InputError(f"element {e} appears twice")
            mask |= bit
        return cls(n, mask)

    @property
    def k(self) -> int:
        return self.mask.bit_count()

    @property
    def elements(self) -> Tuple[int, ...]:
        return tuple(e for e in range(1, self.n + 1) if self.mask >> (e - 1) & 1)

    def __contains__(self, e: int) -> bool:
        return 1 <= e <= self.n and bool(self.mask >> (e - 1) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return self.k

    def with_element(self, e: int) -> "KSubset":
        return KSubset(self.n, self.mask | (1 << (e - 1)))

    def without(self, e: int) -> "KSubset":
        return KSubset(self.n, self.mask & ~(1 << (e - 1)))

    def complement(self) -> "KSubset":
        return KSubset(self.n, ((1 << self.n) - 1) & ~self.mask)

    def sort_key(self) -> Tuple[int, ...]:
        return self.elements

    def to_list(self) -> List[int]:
        return list(self.elements)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


@dataclass(frozen=True)
class CyclicOrder:
    """[n] 上的全序 t <_t t+1 <_t ... <_t t-1"""
    t: int
    n: int

    def __post_init__(self):
        _check_ground_size(self.n)
        if not 1 <= self.t <= self.n:
            raise InputError(f"order start {self.t} is outside [1,{self.n}]")

    def rank(self, e: int) -> int:
        if not 1 <= e <= self.n:
            raise InputError(f"element {e} is outside [1,{self.n}]")
        return (e - self.t) % self.n

    def element_at(self, rank: int) -> int:
        return (self.t - 1 + rank) % self.n + 1


@dataclass(frozen=True)
class BasisCollection:
    """同一 (n,k) 的 k 元子集集合（拟阵候选 / 正拟阵 / Schubert 拟阵）"""
    n: int
    k: int
    bases: FrozenSet[KSubset] = field(default_factory=frozenset)

    def __post_init__(self):
        _check_ground_size(self.n)
        if not 0 <= self.k <= self.n:
            raise InputError(f"rank {self.k} is outside [0,{self.n}]")
        object.__setattr__(self, "bases", frozenset(self.bases))
        for basis in self.bases:
            if basis.n != self.n or basis.k != self.k:
                raise InputError(
                    f"basis {basis} has (n,k)=({basis.n},{basis.k}), "
                    f"collection expects ({self.n},{self.k})"
                )

    @classmethod
    def from_lists(cls, n: int, lists: Iterable[Iterable[int]], k: Optional[int] = None) -> "BasisCollection":
        subsets = [KSubset.of(n, items) for items in lists]
        if k is None:
            if not subsets:
                raise InputError("cannot infer rank of an empty collection")
            k = subsets[0].k
        return cls(n, k, frozenset(subsets))

    @property
    def masks(self) -> FrozenSet[int]:
        return frozenset(b.mask for b in self.bases)

    def sorted(self) -> List[KSubset]:
        return sorted(self.bases, key=KSubset.sort_key)

    def __contains__(self, subset: KSubset) -> bool:
        return subset in self.bases

    def __iter__(self) -> Iterator[KSubset]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.bases)

    def __and__(self, other: "BasisCollection") -> "BasisCollection":
        if (self.n, self.k) != (other.n, other.k):
            raise InputError("cannot intersect collections with different (n,k)")
        return BasisCollection(self.n, self.k, self.bases & other.bases)

    def issubset(self, other: "BasisCollection") -> bool:
        return self.bases <= other.bases

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "bases": [b.to_list() for b in self.sorted()],
        }


@dataclass(frozen=True)
class GrassmannNecklace:
    """
    长度为 n 的 k 元子集序列 (I_1, ..., I_n)

    构造时只检查长度与 (n,k) 一致；项链的两条规则由
    necklace.is_grassmann_necklace 判定，validated_necklace() 会直接报错。
    """
    n: int
    entries: Tuple[KSubset, ...]

    def __post_init__(self):
        _check_ground_size(self.n)
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != self.n:
            raise InputError(
                f"necklace has {len(self.entries)} entries, expected n={self.n}"
            )
        ks = {entry.k for entry in self.entries}
        if len(ks) > 1:
            raise InputError(f"necklace entries have mixed cardinalities {sorted(ks)}")
        for entry in self.entries:
            if entry.n != self.n:
                raise InputError(f"entry {entry} lives on n={entry.n}, expected {self.n}")

    @classmethod
    def from_lists(cls, n: int, lists: Iterable[Iterable[int]]) -> "GrassmannNecklace":
        return cls(n, tuple(KSubset.of(n, items) for items in lists))

    @property
    def k(self) -> int:
        return self.entries[0].k

    def entry(self, i: int) -> KSubset:
        """I_i，下标按模 n 取"""
        return self.entries[(i - 1) % self.n]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "necklace": [entry.to_list() for entry in self.entries],
        }


@dataclass(frozen=True)
class DecoratedPermutation:
    """
    装饰置换 (pi, col)

    pi 为一行记号（pi[i-1] = pi(i)）；colors 为 (不动点, ±1) 的有序元组，
    定义域恰为不动点集合。
    """
    pi: Tuple[int, ...]
    colors: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        pi = tuple(self.pi)
        object.__setattr__(self, "pi", pi)
        n = len(pi)
        _check_ground_size(n)
        if sorted(pi) != list(range(1, n + 1)):
            raise InputError(f"{list(pi)} is not a permutation of [1,{n}]")
        colors = tuple(sorted((int(i), int(c)) for i, c in dict(self.colors).items()))
        object.__setattr__(self, "colors", colors)
        fixed = {i for i in range(1, n + 1) if pi[i - 1] == i}
        colored = {i for i, _ in colors}
        if colored != fixed:
            raise InputError(
                f"colored points {sorted(colored)} differ from fixed points {sorted(fixed)}",
                rule="coloring domain",
            )
        for i, c in colors:
            if c not in (1, -1):
                raise InputError(f"color of {i} must be +1 or -1, got {c}")

    @classmethod
    def of(cls, pi: Iterable[int], col: Optional[Dict[int, int]] = None) -> "DecoratedPermutation":
        return cls(tuple(pi), tuple((col or {}).items()))

    @property
    def n(self) -> int:
        return len(self.pi)

    @property
    def col(self) -> Dict[int, int]:
        return dict(self.colors)

    @property
    def inverse(self) -> Tuple[int, ...]:
        inv = [0] * self.n
        for i, image in enumerate(self.pi, start=1):
            inv[image - 1] = i
        return tuple(inv)

    def __call__(self, i: int) -> int:
        return self.pi[i - 1]

    def inv(self, j: int) -> int:
        return self.inverse[j - 1]

    @property
    def fixed_points(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.colors)

    @property
    def k(self) -> int:
        """|I_1|：满足 j < pi^{-1}(j) 的 j 个数加上 col = -1 的不动点个数"""
        inv = self.inverse
        anti_exceedances = sum(1 for j in range(1, self.n + 1) if j < inv[j - 1])
        coloops = sum(1 for _, c in self.colors if c == -1)
        return anti_exceedances + coloops

    def image(self, subset: KSubset) -> KSubset:
        return KSubset.of(self.n, (self(e) for e in subset))

    def preimage(self, subset: KSubset) -> KSubset:
        return KSubset.of(self.n, (self.inv(e) for e in subset))

    def to_text(self) -> str:
        """规范文本形式，例如 8 1 4 2 5 7 3 6 ; 5:+"""
        signs = " ".join(f"{i}:{'+' if c == 1 else '-'}" for i, c in self.colors)
        head = " ".join(map(str, self.pi))
        return f"{head} ; {signs}" if signs else f"{head} ;"

    @classmethod
    def from_text(cls, text: str) -> "DecoratedPermutation":
        head, _, tail = text.partition(";")
        try:
            pi = [int(token) for token in head.split()]
            col: Dict[int, int] = {}
            for token in tail.split():
                point, _, sign = token.partition(":")
                if sign not in ("+", "-"):
                    raise ValueError(token)
                col[int(point)] = 1 if sign == "+" else -1
        except ValueError as e:
            raise InputError(f"malformed decorated permutation text {text!r}: {e}")
        return cls.of(pi, col)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "perm": list(self.pi),
            "colors": {str(i): c for i, c in self.colors},
        }


@dataclass
class VerifyContext:
    """校验运行参数，由 config.yaml 的 verify 段与命令行共同决定"""
    exhaustive_n: int = 5
    random_count: int = 1000
    random_n: int = 8
    le_samples: int = 100
    lattice_samples: int = 200
    swap_samples: int = 200
    sweep_n: int = 16
    flag_cap: int = 7
    seed: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass
class SuiteResult:
    """单个校验套件的结果"""
    name: str
    instances: int = 0
    failures: int = 0
    status: SuiteStatus = SuiteStatus.PASS
    elapsed: float = 0.0
    first_failure: Optional[str] = None

    def check(self, ok: bool, detail: str = "") -> bool:
        """记录一个实例；失败时保留第一条说明"""
        self.instances += 1
        if not ok:
            self.failures += 1
            self.status = SuiteStatus.FAIL
            if self.first_failure is None:
                self.first_failure = detail
        return ok

    @property
    def passed(self) -> bool:
        return self.status is not SuiteStatus.FAIL

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "instances": self.instances,
            "failures": self.failures,
            "status": self.status.value,
            "elapsed": round(self.elapsed, 3),
            "first_failure": self.first_failure,
        }
