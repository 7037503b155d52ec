"""
Oracles Module
交叉校验套件：用穷举与带种子的随机实例逐条核对各模块的定理性质

每个套件是一个 BaseProcessor；run_suites() 按套件名排序输出结果。
"""

import logging
import time
from itertools import chain
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence

import numpy as np

from .base import BaseProcessor
from .data_types import (
    BasisCollection, CyclicOrder, DecoratedPermutation, KSubset, SuiteResult, VerifyContext,
)
from .decorated_perm import (
    enumerate_decorated_perms, necklace_from_perm, perm_from_necklace, positroid_from_upper,
    random_decorated_perm, swap_pattern, switch, upper_member, upper_necklace_from_perm,
)
from .errors import PositroidError
from .flag import (
    ConstituentList, check_concordance, flag_collection, is_flag_matroid, is_flag_positroid,
    project, w_minimal_basis,
)
from .lattice_path import (
    is_lattice_path, lattice_path_bases, lattice_path_hull, lp_constraints_hold,
    lp_decorated_perm, matroid_of_matrix, minor_sign_certificate, random_bounds, realize,
)
from .le_diagram import (
    LeDiagram, chain_rooted_at, enumerate_bases, enumerate_le_diagrams, necklace_from_le,
    random_le_diagram,
)
from .necklace import (
    cyclic_orders, is_grassmann_necklace, is_positroid, member, necklace_of,
    positroid_from_necklace,
)
from .subset_core import (
    all_subsets, coloops, dual_shifted_schubert, gale_leq, is_matroid, loops, shifted_schubert,
)
from .utils.common import format_time

logger = logging.getLogger(__name__)

LATTICE_MAX_K = 4
SWAP_MIN_N = 4
SWAP_MAX_N = 7
FLAG_MAX_N = 5
SWEEP_CROSS_CHECKS = 200


class InstanceSuite(BaseProcessor):
    """逐实例套件：instances() 产生实例，check_instance() 判定"""

    def instances(self, context: VerifyContext, rng: np.random.Generator) -> Iterator[Any]:
        raise NotImplementedError

    def check_instance(self, instance: Any, context: VerifyContext) -> bool:
        raise NotImplementedError

    def describe(self, instance: Any) -> str:
        if isinstance(instance, DecoratedPermutation):
            return instance.to_text()
        return repr(instance)

    def process(self, context: VerifyContext, result: SuiteResult) -> None:
        for instance in self.instances(context, self.rng(context)):
            try:
                ok = self.check_instance(instance, context)
                detail = self.describe(instance)
            except PositroidError as e:
                ok = False
                detail = f"{self.describe(instance)}: {type(e).__name__}: {e}"
            if not result.check(ok, detail):
                logger.debug("suite %s failed on %s", self.name, detail)


def exhaustive_perms(max_n: int) -> Iterator[DecoratedPermutation]:
    for n in range(1, max_n + 1):
        yield from enumerate_decorated_perms(n)


def sampled_perms(n: int, count: int, rng: np.random.Generator) -> Iterator[DecoratedPermutation]:
    for _ in range(count):
        yield random_decorated_perm(n, rng)


class GaleOrderSuite(InstanceSuite):
    """<=_t 是偏序：自反、反对称、传递"""
    name = "gale-order"
    salt = 1

    def instances(self, context, rng):
        for n in range(1, context.exhaustive_n + 1):
            for k in range(n + 1):
                for order in cyclic_orders(n):
                    yield n, k, order

    def describe(self, instance):
        n, k, order = instance
        return f"n={n} k={k} t={order.t}"

    def check_instance(self, instance, context):
        n, k, order = instance
        subsets = list(all_subsets(n, k))
        leq = {(a, b): gale_leq(a, b, order) for a in subsets for b in subsets}
        for a in subsets:
            if not leq[a, a]:
                return False
            for b in subsets:
                if a != b and leq[a, b] and leq[b, a]:
                    return False
                if not leq[a, b]:
                    continue
                if any(leq[b, c] and not leq[a, c] for c in subsets):
                    return False
        return True


class SchubertSuite(InstanceSuite):
    """SM^t_I 含 I、向上封闭、与对偶版本互补，且是正拟阵"""
    name = "schubert"
    salt = 8

    def instances(self, context, rng):
        for n in range(1, context.exhaustive_n + 1):
            for k in range(n + 1):
                for order in cyclic_orders(n):
                    for lower in all_subsets(n, k):
                        yield lower, order

    def describe(self, instance):
        lower, order = instance
        return f"I={lower} t={order.t} n={lower.n}"

    def check_instance(self, instance, context):
        lower, order = instance
        schubert = shifted_schubert(lower, order)
        if lower not in schubert:
            return False
        subsets = list(all_subsets(lower.n, lower.k))
        for J in schubert.bases:
            if any(gale_leq(J, K, order) and K not in schubert for K in subsets):
                return False
        dual = dual_shifted_schubert(lower, order)
        for H in subsets:
            if (H in dual) != (lower in shifted_schubert(H, order)):
                return False
        return is_matroid(schubert) and is_positroid(schubert)


class NecklaceRoundTripSuite(InstanceSuite):
    """necklace_of(positroid_from_necklace(N)) = N，交集是拟阵，成员判定与集合一致"""
    name = "necklace-round-trip"
    salt = 2

    def instances(self, context, rng):
        return chain(
            exhaustive_perms(context.exhaustive_n),
            sampled_perms(context.random_n, context.le_samples, rng),
        )

    def check_instance(self, perm, context):
        necklace = necklace_from_perm(perm)
        if not is_grassmann_necklace(necklace):
            return False
        positroid = positroid_from_necklace(necklace)
        if necklace_of(positroid) != necklace or not is_matroid(positroid):
            return False
        if not member(necklace.entry(1), necklace):
            return False
        if any(member(H, necklace) != (H in positroid) for H in all_subsets(perm.n, necklace.k)):
            return False
        return positroid.issubset(shifted_schubert(necklace.entry(1), CyclicOrder(1, perm.n)))


class PermBijectionSuite(InstanceSuite):
    """项链与装饰置换互逆"""
    name = "perm-bijection"
    salt = 7

    def instances(self, context, rng):
        return chain(
            exhaustive_perms(context.exhaustive_n),
            sampled_perms(context.random_n, context.random_count, rng),
        )

    def check_instance(self, perm, context):
        necklace = necklace_from_perm(perm)
        if necklace.k != perm.k:
            return False
        if perm_from_necklace(necklace) != perm:
            return False
        return necklace_from_perm(perm_from_necklace(necklace)) == necklace


class DualitySuite(InstanceSuite):
    """J_i = pi^{-1}(I_i)，上项链的递推，以及两种 Schubert 交相等"""
    name = "duality"
    salt = 3

    def instances(self, context, rng):
        return chain(
            exhaustive_perms(context.exhaustive_n),
            sampled_perms(context.random_n, context.random_count, rng),
        )

    def check_instance(self, perm, context):
        necklace = necklace_from_perm(perm)
        upper = upper_necklace_from_perm(perm)
        n = perm.n
        for i in range(1, n + 1):
            if upper[i - 1] != perm.preimage(necklace.entry(i)):
                return False
            if perm(i) == i:
                continue
            stepped = upper[i - 1].without(perm.inv(i)).with_element(i)
            if upper[i % n] != stepped:
                return False
        return positroid_from_upper(perm) == positroid_from_necklace(necklace)


class UpperBoundSuite(InstanceSuite):
    """正拟阵中每个 H 满足 H <=_i pi^{-1}(I_i)，落在 LP_{I_1, pi^{-1}(I_1)} 内，且上侧成员判定与集合一致"""
    name = "upper-bound"
    salt = 12

    def instances(self, context, rng):
        return chain(
            exhaustive_perms(context.exhaustive_n),
            sampled_perms(context.random_n, context.le_samples, rng),
        )

    def check_instance(self, perm, context):
        necklace = necklace_from_perm(perm)
        positroid = positroid_from_necklace(necklace)
        bounds = [perm.preimage(necklace.entry(order.t)) for order in cyclic_orders(perm.n)]
        for H in positroid.bases:
            if not all(gale_leq(H, J, order) for J, order in zip(bounds, cyclic_orders(perm.n))):
                return False
        hull = lattice_path_hull(perm)
        if not positroid.issubset(lattice_path_bases(hull)):
            return False
        if lattice_path_hull(lp_decorated_perm(hull)) != hull:
            return False
        return all(
            upper_member(H, perm) == (H in positroid) for H in all_subsets(perm.n, necklace.k)
        )


class FixedPointSuite(InstanceSuite):
    """col = +1 的不动点恰为环，col = -1 的恰为余环"""
    name = "fixed-points"
    salt = 4

    def instances(self, context, rng):
        return exhaustive_perms(min(context.exhaustive_n, 6))

    def check_instance(self, perm, context):
        positroid = positroid_from_necklace(necklace_from_perm(perm))
        loop_points = {i for i, c in perm.colors if c == 1}
        coloop_points = {i for i, c in perm.colors if c == -1}
        return loops(positroid) == loop_points and coloops(positroid) == coloop_points


class LeOracleSuite(InstanceSuite):
    """Le 图三角校验：VD 族给出的基、项链读取、Schubert 交三者一致"""
    name = "le-oracle"
    salt = 5

    def instances(self, context, rng):
        exhaustive = (
            diagram
            for n in range(1, context.exhaustive_n + 1)
            for diagram in enumerate_le_diagrams(n)
        )
        sampled = (random_le_diagram(context.random_n, rng) for _ in range(context.le_samples))
        return chain(exhaustive, sampled)

    def describe(self, diagram):
        return f"shape={list(diagram.shape.lam)} n={diagram.n} filled={sorted(diagram.filled)}"

    def check_instance(self, diagram: LeDiagram, context):
        bases = enumerate_bases(diagram)
        necklace = necklace_from_le(diagram)
        if not is_grassmann_necklace(necklace):
            return False
        if positroid_from_necklace(necklace) != bases or necklace_of(bases) != necklace:
            return False
        if not (is_matroid(bases) and is_positroid(bases)):
            return False
        # 夹逼：总在 SM_{I_1} 之内，恰在满填充时相等
        schubert = shifted_schubert(necklace.entry(1), CyclicOrder(1, diagram.n))
        if not bases.issubset(schubert):
            return False
        if (bases == schubert) != (diagram.filled == frozenset(diagram.shape.boxes())):
            return False
        for cell in diagram.shape.boxes():
            rooted = chain_rooted_at(diagram, diagram.to_labels(cell))
            rows, cols = rooted.row_labels, rooted.col_labels
            if any(a >= b for a, b in zip(rows, rows[1:])):
                return False
            if any(a <= b for a, b in zip(cols, cols[1:])):
                return False
        return True


class LatticePathSuite(InstanceSuite):
    """格路拟阵是正拟阵，置换公式正确，Vandermonde 实现的子式符号证书成立"""
    name = "lattice-path"
    salt = 6

    def instances(self, context, rng):
        for _ in range(context.lattice_samples):
            n = int(rng.integers(1, context.random_n + 1))
            k = int(rng.integers(0, min(LATTICE_MAX_K, n) + 1))
            yield random_bounds(n, k, rng)

    def describe(self, bounds):
        return f"I={bounds.lower} J={bounds.upper} n={bounds.n}"

    def check_instance(self, bounds, context):
        lattice = lattice_path_bases(bounds)
        if not (is_matroid(lattice) and is_positroid(lattice) and is_lattice_path(lattice)):
            return False
        perm = lp_decorated_perm(bounds)
        if perm != perm_from_necklace(necklace_of(lattice)):
            return False
        if not lp_constraints_hold(perm, bounds) or lattice_path_hull(perm) != bounds:
            return False
        matrix = realize(bounds)
        return minor_sign_certificate(matrix, bounds) and matroid_of_matrix(matrix) == lattice


class SwapLemmaSuite(InstanceSuite):
    """
    a <_i b <_i pi(a) <_i pi(b) 时交换 pi(a), pi(b) 得到 mu，则 M_mu ⊆ M_pi

    反方向的包含不成立，例如 pi = 3 4 1 2、a=1、b=2 时 M_mu 少了 {2,3}。
    """
    name = "swap-lemma"
    salt = 11

    def instances(self, context, rng):
        found = attempts = 0
        while found < context.swap_samples and attempts < context.swap_samples * 500:
            attempts += 1
            n = int(rng.integers(SWAP_MIN_N, SWAP_MAX_N + 1))
            perm = random_decorated_perm(n, rng)
            a, b, i = (int(v) for v in rng.integers(1, n + 1, size=3))
            if swap_pattern(perm, a, b, i):
                found += 1
                yield perm, a, b, i
        if found < context.swap_samples:
            logger.warning("swap-lemma found only %d patterned instances", found)

    def describe(self, instance):
        perm, a, b, i = instance
        return f"pi={perm.to_text()} a={a} b={b} i={i}"

    def check_instance(self, instance, context):
        perm, a, b, _ = instance
        switched = switch(perm, a, b)
        original = positroid_from_necklace(necklace_from_perm(perm))
        crossed = positroid_from_necklace(necklace_from_perm(switched))
        return crossed.issubset(original)


def relabel(collection: BasisCollection, sigma: Sequence[int]) -> BasisCollection:
    """按 sigma 重新标号：元素 e 变为 sigma[e-1]"""
    return BasisCollection(collection.n, collection.k, frozenset(
        KSubset.of(collection.n, (sigma[e - 1] for e in basis)) for basis in collection.bases
    ))


def uniform(n: int, k: int) -> BasisCollection:
    return BasisCollection(n, k, frozenset(all_subsets(n, k)))


class FlagSuite(InstanceSuite):
    """w-最小基的贪心与暴力一致、协调性对重新标号不变、旗集合投影还原各层"""
    name = "flag"
    salt = 9

    def max_n(self, context: VerifyContext) -> int:
        # 只取能穷举全部全序的 n，抽样只能否定协调性
        return min(max(2, min(context.exhaustive_n, FLAG_MAX_N)), context.flag_cap)

    def validate_input(self, context: VerifyContext) -> bool:
        return self.max_n(context) >= 2

    def instances(self, context, rng):
        max_n = self.max_n(context)
        for _ in range(context.le_samples):
            n = int(rng.integers(2, max_n + 1))
            first = positroid_from_necklace(necklace_from_perm(random_decorated_perm(n, rng)))
            second = positroid_from_necklace(necklace_from_perm(random_decorated_perm(n, rng)))
            ranks = sorted(int(v) for v in rng.choice(n + 1, size=2, replace=False))
            word = tuple(int(v) + 1 for v in rng.permutation(n))
            sigma = tuple(int(v) + 1 for v in rng.permutation(n))
            levels = sorted((first, second), key=lambda m: m.k)
            if first.k == second.k:
                levels = [first]
            yield ConstituentList(tuple(levels)), (uniform(n, ranks[0]), uniform(n, ranks[1])), word, sigma

    def describe(self, instance):
        constituents, _, word, sigma = instance
        return f"ranks={constituents.ranks} n={constituents.n} w={word} sigma={sigma}"

    def check_instance(self, instance, context):
        constituents, uniform_pair, word, sigma = instance
        position = {e: index for index, e in enumerate(word)}
        for matroid in constituents.matroids:
            brute = min(matroid.bases, key=lambda b: sorted(position[e] for e in b))
            if w_minimal_basis(matroid, word) != brute:
                return False
        report = check_concordance(constituents, context.flag_cap)
        moved = ConstituentList(tuple(relabel(m, sigma) for m in constituents.matroids))
        if check_concordance(moved, context.flag_cap).concordant != report.concordant:
            return False
        if report.concordant and not self._flags_recover(constituents, context.flag_cap):
            return False
        uniform_list = ConstituentList(uniform_pair)
        return is_flag_positroid(uniform_list, context.flag_cap) and self._flags_recover(
            uniform_list, context.flag_cap
        )

    @staticmethod
    def _flags_recover(constituents: ConstituentList, cap: int) -> bool:
        flags = flag_collection(constituents, cap)
        for level, matroid in enumerate(constituents.matroids, start=1):
            if project(flags, level) != matroid:
                return False
        return is_flag_matroid(flags, cap)


class MembershipSweepSuite(BaseProcessor):
    """对 C(n, n/2) 的全部子集做成员判定，并抽样与 Gale 比较交叉核对"""
    name = "membership-sweep"
    salt = 10

    def process(self, context: VerifyContext, result: SuiteResult) -> None:
        rng = self.rng(context)
        n = context.sweep_n
        k = n // 2
        perm = next((p for p in sampled_perms(n, 10_000, rng) if p.k == k), None)
        if perm is None:
            result.check(False, f"no decorated permutation with k={k} found")
            return
        necklace = necklace_from_perm(perm)
        start = time.perf_counter()
        accepted = sum(1 for H in all_subsets(n, k) if member(H, necklace))
        elapsed = time.perf_counter() - start
        logger.info("membership sweep over C(%d,%d): %d members in %s",
                    n, k, accepted, format_time(elapsed))
        limit = self.get_config("sweep_seconds", 5.0)
        result.check(elapsed < limit, f"sweep took {format_time(elapsed)}, limit {limit}s")
        result.check(member(necklace.entry(1), necklace), f"I_1 rejected for {perm.to_text()}")
        orders = cyclic_orders(n)
        for _ in range(SWEEP_CROSS_CHECKS):
            H = KSubset.of(n, (int(v) + 1 for v in rng.choice(n, size=k, replace=False)))
            direct = all(gale_leq(necklace.entry(o.t), H, o) for o in orders)
            result.check(member(H, necklace) == direct, f"H={H} pi={perm.to_text()}")


SUITES = (
    DualitySuite, FixedPointSuite, FlagSuite, GaleOrderSuite, LatticePathSuite,
    LeOracleSuite, MembershipSweepSuite, NecklaceRoundTripSuite, PermBijectionSuite,
    SchubertSuite, SwapLemmaSuite, UpperBoundSuite,
)


def suite_names() -> List[str]:
    return sorted(suite.name for suite in SUITES)


def run_suites(
    context: VerifyContext,
    names: Optional[Iterable[str]] = None,
    config: Optional[Dict[str, Any]] = None,
) -> List[SuiteResult]:
    """
    运行套件并按名称排序返回

    Args:
        context: 校验参数
        names: 只运行这些套件；None 表示全部
        config: 传给各套件的配置（config.yaml 的 verify 段）

    Returns:
        List[SuiteResult]
    """
    wanted = set(names) if names is not None else None
    results = []
    for suite_cls in sorted(SUITES, key=lambda cls: cls.name):
        if wanted is not None and suite_cls.name not in wanted:
            continue
        results.append(suite_cls(config).run(context))
    return results


def format_table(results: Sequence[SuiteResult]) -> str:
    """固定列宽的结果表；耗时只写日志，同一 seed 的输出逐字节相同"""
    header = f"{'suite':<22}{'instances':>10}{'failures':>10}  status"
    lines = [header, "-" * len(header)]
    for r in sorted(results, key=lambda r: r.name):
        lines.append(f"{r.name:<22}{r.instances:>10}{r.failures:>10}  {r.status.value}")
        if r.first_failure:
            lines.append(f"    first failure: {r.first_failure}")
    return "\n".join(lines)
