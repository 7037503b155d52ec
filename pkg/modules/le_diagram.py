"""
Le-Diagram Module
Le 图（Le-diagram）校验、边界标号、Le 网络、顶点不交路径族与项链读取

格子按位置存储：(rowPos, colPos)，rowPos 自上而下 1..k，colPos 自左而右 1..λ_row。
标号坐标 (i, j) 由边界路径给出：i 为行标号，j 为列标号，恒有 i < j。
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from .data_types import BasisCollection, GrassmannNecklace, KSubset
from .errors import InputError, InvariantError
from .subset_core import all_subsets

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]
LE_PROPERTY = "Le-property"

SOURCE = "source"
SINK = "sink"


@dataclass(frozen=True)
class YoungShape:
    """k x (n-k) 矩形中的 Young 图"""
    k: int
    n: int
    lam: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.lam))
        if self.n < 1 or not 0 <= self.k <= self.n:
            raise InputError(f"invalid rectangle k={self.k}, n={self.n}")
        if len(self.lam) != self.k:
            raise InputError(f"shape {list(self.lam)} must have exactly k={self.k} rows")
        if any(a < b for a, b in zip(self.lam, self.lam[1:])):
            raise InputError(f"shape {list(self.lam)} is not weakly decreasing")
        if self.lam and (self.lam[-1] < 0 or self.lam[0] > self.width):
            raise InputError(f"shape {list(self.lam)} does not fit inside {self.k}x{self.width}")

    @property
    def width(self) -> int:
        return self.n - self.k

    def has_box(self, row: int, col: int) -> bool:
        return 1 <= row <= self.k and 1 <= col <= self.lam[row - 1]

    def boxes(self) -> Iterator[Cell]:
        """行优先，每行自左而右"""
        for row, length in enumerate(self.lam, start=1):
            for col in range(1, length + 1):
                yield row, col

    @classmethod
    def from_vertical_steps(cls, steps: KSubset) -> "YoungShape":
        """由 I(λ) 还原形状：λ_r 为第 r 个竖直步之后的水平步数"""
        rows = steps.elements
        horizontal = [j for j in range(1, steps.n + 1) if j not in steps]
        lam = tuple(sum(1 for j in horizontal if j > i) for i in rows)
        return cls(len(rows), steps.n, lam)


@dataclass(frozen=True)
class BoundaryLabels:
    """边界路径标号"""
    row_labels: Tuple[int, ...]
    col_labels: Tuple[int, ...]
    i_lambda: KSubset

    def row_of(self, label: int) -> int:
        return self.row_labels.index(label) + 1

    def col_of(self, label: int) -> int:
        return self.col_labels.index(label) + 1


def boundary_labels(shape: YoungShape) -> BoundaryLabels:
    """
    沿边界路径自右上到左下依次标号 1..n

    Args:
        shape: Young 图

    Returns:
        BoundaryLabels: 行标号、列标号（自右向左递增）与 I(λ)
    """
    rows = [0] * shape.k
    cols = [0] * shape.width
    label = 0
    x = shape.width

    def walk_left(target: int) -> None:
        nonlocal label, x
        while x > target:
            label += 1
            cols[x - 1] = label
            x -= 1

    walk_left(shape.lam[0] if shape.k else 0)
    for r in range(1, shape.k + 1):
        label += 1
        rows[r - 1] = label
        walk_left(shape.lam[r] if r < shape.k else 0)
    return BoundaryLabels(tuple(rows), tuple(cols), KSubset.of(shape.n, rows))


@dataclass(frozen=True)
class Chain:
    """dots 自西北端到根：((x_t,y_t), ..., (x_1,y_1))"""
    dots: Tuple[Cell, ...] = ()

    def __len__(self) -> int:
        return len(self.dots)

    @property
    def row_labels(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.dots)

    @property
    def col_labels(self) -> Tuple[int, ...]:
        return tuple(j for _, j in self.dots)


@dataclass(frozen=True)
class LeDiagram:
    """形状 + 填点格集合（位置坐标）"""
    shape: YoungShape
    filled: FrozenSet[Cell] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "filled", frozenset(tuple(c) for c in self.filled))
        _check_inside(self.shape, self.filled)

    @classmethod
    def full(cls, shape: YoungShape) -> "LeDiagram":
        return cls(shape, frozenset(shape.boxes()))

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def k(self) -> int:
        return self.shape.k

    @cached_property
    def labels(self) -> BoundaryLabels:
        return boundary_labels(self.shape)

    @cached_property
    def dots(self) -> FrozenSet[Cell]:
        """填点格的标号坐标"""
        return frozenset(self.to_labels(cell) for cell in self.filled)

    def to_labels(self, cell: Cell) -> Cell:
        row, col = cell
        return self.labels.row_labels[row - 1], self.labels.col_labels[col - 1]

    def to_position(self, label_cell: Cell) -> Cell:
        i, j = label_cell
        if i not in self.labels.row_labels or j not in self.labels.col_labels:
            raise InputError(f"({i},{j}) is not a row/column label pair of this shape")
        return self.labels.row_of(i), self.labels.col_of(j)

    def has_box_at(self, label_cell: Cell) -> bool:
        i, j = label_cell
        if i not in self.labels.row_labels or j not in self.labels.col_labels:
            return False
        return self.shape.has_box(*self.to_position(label_cell))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "le": {
                "shape": list(self.shape.lam),
                "filled": [list(cell) for cell in sorted(self.filled)],
            },
        }


def _check_inside(shape: YoungShape, cells) -> None:
    for row, col in cells:
        if not shape.has_box(row, col):
            raise InputError(f"cell ({row},{col}) lies outside shape {list(shape.lam)}",
                             rule="cell inside shape")


def _first_le_violation(diagram: LeDiagram) -> Optional[Cell]:
    cols_with_dot: Set[int] = set()
    for row, length in enumerate(diagram.shape.lam, start=1):
        dot_to_left = False
        for col in range(1, length + 1):
            filled = (row, col) in diagram.filled
            if not filled and dot_to_left and col in cols_with_dot:
                return row, col
            if filled:
                dot_to_left = True
                cols_with_dot.add(col)
    return None


def is_le_diagram(diagram: LeDiagram) -> bool:
    """上方有点且左方有点的格必须有点"""
    _check_inside(diagram.shape, diagram.filled)
    return _first_le_violation(diagram) is None


def validated_le_diagram(diagram: LeDiagram) -> LeDiagram:
    _check_inside(diagram.shape, diagram.filled)
    violation = _first_le_violation(diagram)
    if violation is not None:
        raise InputError(
            f"box {violation} is empty but has a dot above and a dot to its left",
            rule=LE_PROPERTY,
        )
    return diagram


def _unique_minimizer(diagram: LeDiagram, region: List[Cell], anchor: Cell) -> Cell:
    row = max(i for i, _ in region)
    col = min(j for _, j in region)
    if (row, col) not in diagram.dots:
        raise InvariantError(
            f"no simultaneous minimizer for {anchor}: candidates {sorted(region)}"
        )
    return row, col


def cover_dot(diagram: LeDiagram, cell: Cell) -> Optional[Cell]:
    """
    NW_{(i,j)} = {(i',j') | i' < i, j' > j} 中同时最小化 i-i' 与 j'-j 的点

    Args:
        diagram: Le 图
        cell: 标号坐标 (i, j)

    Returns:
        Optional[Cell]: 覆盖点，区域内无点时为 None
    """
    if not diagram.has_box_at(cell):
        raise InputError(f"{cell} is not a box of shape {list(diagram.shape.lam)}")
    i, j = cell
    region = [(a, b) for a, b in diagram.dots if a < i and b > j]
    if not region:
        return None
    return _unique_minimizer(diagram, region, cell)


def chain_rooted_at(diagram: LeDiagram, cell: Cell) -> Chain:
    """以 (x,y) 为根的链：先取弱西北区域 {i <= x, j >= y} 的最小点，再不断取覆盖点"""
    if not diagram.has_box_at(cell):
        raise InputError(f"{cell} is not a box of shape {list(diagram.shape.lam)}")
    x, y = cell
    region = [(a, b) for a, b in diagram.dots if a <= x and b >= y]
    if not region:
        return Chain()
    dots = [_unique_minimizer(diagram, region, cell)]
    while True:
        above = cover_dot(diagram, dots[-1])
        if above is None:
            break
        dots.append(above)
    return Chain(tuple(reversed(dots)))


def hook_path(diagram: LeDiagram, dot: Cell) -> Tuple[Any, ...]:
    """从边界 i 向左走到 (i,j) 再向下走到边界 j 的路径顶点"""
    i, j = dot
    if dot not in diagram.dots:
        raise InputError(f"{dot} is not a dot")
    row_part = sorted(b for a, b in diagram.dots if a == i and b <= j)
    col_part = sorted(a for a, b in diagram.dots if b == j and a > i)
    return (
        ("boundary", i),
        *(("dot", i, b) for b in row_part),
        *(("dot", a, j) for a in col_part),
        ("boundary", j),
    )


def le_graph(diagram: LeDiagram) -> nx.DiGraph:
    """
    Le 网络：水平边向左，竖直边向下

    节点为 ("boundary", label) 与 ("dot", i, j)；几何上的线交叉点不是顶点。
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(("boundary", label) for label in range(1, diagram.n + 1))
    graph.add_nodes_from(("dot", i, j) for i, j in diagram.dots)
    for i in diagram.labels.row_labels:
        row = sorted(b for a, b in diagram.dots if a == i)
        if not row:
            continue
        nodes = [("boundary", i)] + [("dot", i, b) for b in row]
        nx.add_path(graph, nodes)
    for j in diagram.labels.col_labels:
        col = sorted(a for a, b in diagram.dots if b == j)
        if not col:
            continue
        nodes = [("dot", a, j) for a in col] + [("boundary", j)]
        nx.add_path(graph, nodes)
    return graph


@lru_cache(maxsize=4096)
def _flow_network(diagram: LeDiagram) -> nx.DiGraph:
    # 每个点拆成 in/out，容量 1，保证顶点不交
    def tail(node):
        return ("out",) + node[1:] if node[0] == "dot" else node

    def head(node):
        return ("in",) + node[1:] if node[0] == "dot" else node

    network = nx.DiGraph()
    graph = le_graph(diagram)
    for node in graph.nodes:
        if node[0] == "dot":
            network.add_edge(head(node), tail(node), capacity=1)
        else:
            network.add_node(node)
    for u, v in graph.edges:
        network.add_edge(tail(u), head(v), capacity=1)
    return network


def vd_representable(diagram: LeDiagram, subset: KSubset) -> bool:
    """
    是否存在顶点不交路径族把 I(λ)\\J 的源连到 J\\I(λ) 的汇

    Args:
        diagram: Le 图
        subset: 与 I(λ) 同基数的子集 J

    Returns:
        bool: J 是否被某个 VD 族表示
    """
    if (subset.n, subset.k) != (diagram.n, diagram.k):
        raise InputError(
            f"subset {subset} has (n,k)=({subset.n},{subset.k}), "
            f"diagram has ({diagram.n},{diagram.k})"
        )
    i_lambda = diagram.labels.i_lambda
    sources = [i for i in i_lambda if i not in subset]
    sinks = [j for j in subset if j not in i_lambda]
    if not sources:
        return True
    network = _flow_network(diagram).copy()
    for s in sources:
        network.add_edge(SOURCE, ("boundary", s), capacity=1)
    for t in sinks:
        network.add_edge(("boundary", t), SINK, capacity=1)
    value = nx.maximum_flow_value(network, SOURCE, SINK, capacity="capacity")
    return value == len(sources)


def enumerate_bases(diagram: LeDiagram) -> BasisCollection:
    """M_L = { J | J 被某个 VD 族表示 }"""
    bases = frozenset(
        J for J in all_subsets(diagram.n, diagram.k) if vd_representable(diagram, J)
    )
    return BasisCollection(diagram.n, diagram.k, bases)


def _designated_box(diagram: LeDiagram, j: int) -> Optional[Cell]:
    labels = diagram.labels
    lam = diagram.shape.lam
    if j in labels.i_lambda:
        row = labels.row_of(j)
        if row == 1 or lam[row - 1] == 0:
            return None
        # 竖直边 j 左侧格子的正上方
        return labels.row_labels[row - 2], labels.col_labels[lam[row - 1] - 1]
    col = labels.col_of(j)
    bottom = max((r for r in range(1, diagram.k + 1) if lam[r - 1] >= col), default=None)
    if bottom is None:
        return None
    return labels.row_labels[bottom - 1], j


def _assert_hooks_disjoint(diagram: LeDiagram, chain: Chain) -> None:
    seen: Set[Any] = set()
    for dot in chain.dots:
        vertices = set(hook_path(diagram, dot))
        if seen & vertices:
            raise InvariantError(f"hook paths of chain {chain.dots} share vertices")
        seen |= vertices


def necklace_from_le(diagram: LeDiagram) -> GrassmannNecklace:
    """
    直接从 Le 图读出 Grassmann 项链

    I_1 = I(λ)；j > 1 时取指定格 (x,y) 的根链，I_j = I(λ) 去掉链的行标号再加上列标号。
    指定格不存在（空行、第一行、无格的列）时 I_j = I(λ)。
    """
    i_lambda = diagram.labels.i_lambda
    entries = [i_lambda]
    for j in range(2, diagram.n + 1):
        box = _designated_box(diagram, j)
        if box is None:
            entries.append(i_lambda)
            continue
        chain = chain_rooted_at(diagram, box)
        _assert_hooks_disjoint(diagram, chain)
        mask = i_lambda.mask
        for i in chain.row_labels:
            mask &= ~(1 << (i - 1))
        for col in chain.col_labels:
            mask |= 1 << (col - 1)
        entries.append(KSubset(diagram.n, mask))
    return GrassmannNecklace(diagram.n, tuple(entries))


def full_diagram(shape: YoungShape) -> LeDiagram:
    """每个格都填点"""
    return LeDiagram.full(shape)


def enumerate_shapes(n: int, k: int) -> Iterator[YoungShape]:
    """k x (n-k) 矩形内全部形状"""
    for parts in combinations_with_replacement(range(n - k + 1), k):
        yield YoungShape(k, n, tuple(reversed(parts)))


def enumerate_le_fillings(shape: YoungShape) -> Iterator[LeDiagram]:
    """行优先深度优先枚举，遇到被迫填点的格直接剪枝"""
    cells = list(shape.boxes())

    def walk(index: int, filled: FrozenSet[Cell], cols: FrozenSet[int], left: bool):
        if index == len(cells):
            yield LeDiagram(shape, filled)
            return
        row, col = cells[index]
        if col == 1:
            left = False
        if not (left and col in cols):
            yield from walk(index + 1, filled, cols, left)
        yield from walk(index + 1, filled | {(row, col)}, cols | {col}, True)

    yield from walk(0, frozenset(), frozenset(), False)


def enumerate_le_diagrams(n: int) -> Iterator[LeDiagram]:
    """[n] 上全部 Le 图（所有 k、所有形状）"""
    for k in range(n + 1):
        for shape in enumerate_shapes(n, k):
            yield from enumerate_le_fillings(shape)


def random_le_diagram(n: int, rng: np.random.Generator) -> LeDiagram:
    """随机形状 + 随机密度的贪心填充，被迫的格自动补点"""
    k = int(rng.integers(0, n + 1))
    steps = KSubset.of(n, (int(v) + 1 for v in rng.choice(n, size=k, replace=False)))
    shape = YoungShape.from_vertical_steps(steps)
    density = float(rng.random())
    filled: Set[Cell] = set()
    cols: Set[int] = set()
    for row, length in enumerate(shape.lam, start=1):
        left = False
        for col in range(1, length + 1):
            if (left and col in cols) or rng.random() < density:
                filled.add((row, col))
                cols.add(col)
                left = True
    return LeDiagram(shape, frozenset(filled))
