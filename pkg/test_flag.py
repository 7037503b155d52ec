#!/usr/bin/env python3
"""
flag 测试套件
w-最小基、协调性、旗集合与旗正拟阵判定
"""

import sys
import unittest
from itertools import permutations
from pathlib import Path

# 添加项目根目录到路径
PROJECT_ROOT = Path(__file__).parent.absolute()
sys.path.insert(0, str(PROJECT_ROOT))

from modules.data_types import BasisCollection, KSubset
from modules.errors import InputError
from modules.flag import (
    ConstituentList, Flag, are_concordant, check_concordance, flag_collection, is_flag_matroid,
    is_flag_positroid, project, w_minimal_basis,
)
from modules.oracles import relabel, uniform


def collection(n, *lists):
    return BasisCollection.from_lists(n, lists)


def w_sorted(subset, word):
    position = {e: p for p, e in enumerate(word)}
    return sorted(position[e] for e in subset)


class TestWMinimalBasis(unittest.TestCase):
    """w_minimal_basis"""

    def test_example(self):
        self.assertEqual(w_minimal_basis(uniform(3, 2), (3, 1, 2)), KSubset.of(3, [1, 3]))
        self.assertEqual(w_minimal_basis(uniform(3, 2), (1, 2, 3)), KSubset.of(3, [1, 2]))

    def test_greedy_is_gale_minimum(self):
        matroids = [uniform(4, 2), collection(4, [1, 2], [1, 3], [2, 3], [1, 4], [2, 4]),
                    collection(4, [1, 3], [1, 4], [2, 3], [2, 4])]
        for matroid in matroids:
            for word in permutations(range(1, 5)):
                minimum = w_sorted(w_minimal_basis(matroid, word), word)
                for basis in matroid.bases:
                    other = w_sorted(basis, word)
                    self.assertTrue(all(a <= b for a, b in zip(minimum, other)))

    def test_rejects_non_matroid(self):
        with self.assertRaises(InputError) as ctx:
            w_minimal_basis(collection(4, [1, 2], [3, 4]), (1, 2, 3, 4))
        self.assertEqual(ctx.exception.rule, "matroid")

    def test_rejects_bad_word(self):
        with self.assertRaises(InputError):
            w_minimal_basis(uniform(3, 2), (1, 1, 2))


class TestConstituents(unittest.TestCase):
    """ConstituentList 与 Flag 的构造"""

    def test_rank_order(self):
        with self.assertRaises(InputError):
            ConstituentList((uniform(3, 2), uniform(3, 1)))
        with self.assertRaises(InputError):
            ConstituentList((uniform(3, 1), uniform(4, 2)))
        with self.assertRaises(InputError):
            ConstituentList(())

    def test_empty_constituent(self):
        with self.assertRaises(InputError) as ctx:
            ConstituentList((uniform(3, 1), BasisCollection(3, 2, frozenset())))
        self.assertEqual(ctx.exception.rule, "nonempty")

    def test_flag_containment(self):
        with self.assertRaises(InputError) as ctx:
            Flag((KSubset.of(3, [1]), KSubset.of(3, [2, 3])))
        self.assertEqual(ctx.exception.rule, "strict containment")
        self.assertEqual(Flag((KSubset.of(3, [1]), KSubset.of(3, [1, 3]))).ranks, (1, 2))

    def test_document_form(self):
        pair = ConstituentList((collection(3, [1]), collection(3, [1, 2], [1, 3])))
        self.assertEqual(pair.to_dict(), {"n": 3, "k": 2, "flagConstituents": [[[1]], [[1, 2], [1, 3]]]})


class TestConcordance(unittest.TestCase):
    """check_concordance 与 are_concordant"""

    def test_uniform_pair(self):
        report = check_concordance(ConstituentList((uniform(3, 1), uniform(3, 2))))
        self.assertTrue(report)
        self.assertTrue(report.exhaustive)
        self.assertEqual(report.orders_checked, 6)

    def test_refutation(self):
        pair = ConstituentList((collection(3, [1]), collection(3, [2, 3])))
        report = check_concordance(pair)
        self.assertFalse(report.concordant)
        self.assertIsNotNone(report.witness)
        self.assertFalse(are_concordant(pair))

    def test_non_matroid_constituent(self):
        with self.assertRaises(InputError):
            check_concordance(ConstituentList((uniform(4, 1), collection(4, [1, 2], [3, 4]))))

    def test_sampling_above_cap(self):
        pair = ConstituentList((uniform(8, 1), uniform(8, 2)))
        with self.assertLogs("modules.flag", level="WARNING"):
            report = check_concordance(pair, cap=7, samples=50, seed=3)
        self.assertTrue(report.concordant)
        self.assertFalse(report.exhaustive)
        self.assertEqual(report.orders_checked, 50)

    def test_relabel_covariance(self):
        lists = [
            (collection(4, [1]), collection(4, [1, 2], [1, 3])),
            (collection(4, [1], [2]), collection(4, [1, 2], [1, 3], [2, 3])),
            (collection(4, [1]), collection(4, [2, 3])),
            (uniform(4, 1), uniform(4, 3)),
        ]
        for matroids in lists:
            expected = are_concordant(ConstituentList(matroids))
            for sigma in permutations(range(1, 5)):
                moved = ConstituentList(tuple(relabel(m, sigma) for m in matroids))
                self.assertEqual(are_concordant(moved), expected)


class TestFlagCollection(unittest.TestCase):
    """flag_collection、project 与 is_flag_matroid"""

    def test_two_flags(self):
        pair = ConstituentList((collection(3, [1]), collection(3, [1, 2], [1, 3])))
        flags = flag_collection(pair)
        self.assertEqual(len(flags), 2)
        self.assertIn(Flag((KSubset.of(3, [1]), KSubset.of(3, [1, 2]))), flags)

    def test_uniform_flags(self):
        pair = ConstituentList((uniform(3, 1), uniform(3, 2)))
        flags = flag_collection(pair)
        self.assertEqual(len(flags), 6)
        self.assertEqual(project(flags, 1), uniform(3, 1))
        self.assertEqual(project(flags, 2), uniform(3, 2))
        self.assertTrue(is_flag_matroid(flags))

    def test_missing_flag_is_not_flag_matroid(self):
        flags = set(flag_collection(ConstituentList((uniform(3, 1), uniform(3, 2)))))
        flags.discard(Flag((KSubset.of(3, [1]), KSubset.of(3, [1, 2]))))
        self.assertFalse(is_flag_matroid(flags))

    def test_non_concordant_rejected(self):
        pair = ConstituentList((collection(3, [1]), collection(3, [2, 3])))
        with self.assertRaises(InputError) as ctx:
            flag_collection(pair)
        self.assertEqual(ctx.exception.rule, "concordance")

    def test_empty(self):
        with self.assertRaises(InputError):
            is_flag_matroid([])


class TestFlagPositroid(unittest.TestCase):
    """is_flag_positroid"""

    def test_examples(self):
        self.assertTrue(is_flag_positroid(ConstituentList((uniform(3, 1), uniform(3, 2)))))
        self.assertTrue(is_flag_positroid(ConstituentList((collection(3, [1]), collection(3, [1, 2], [1, 3])))))
        self.assertFalse(is_flag_positroid(ConstituentList((collection(3, [1]), collection(3, [2, 3])))))
        print("✓ 旗正拟阵示例测试通过")

    def test_non_positroid_level(self):
        # 非拟阵的层直接判否，不进入协调性检查
        self.assertFalse(is_flag_positroid(ConstituentList((uniform(4, 1), collection(4, [1, 3], [2, 4])))))
        # {1,3},{2,4} 各自平行：是拟阵但不是正拟阵
        self.assertFalse(is_flag_positroid(ConstituentList(
            (uniform(4, 1), collection(4, [1, 2], [1, 4], [2, 3], [3, 4]))
        )))

    def test_sampling_kwargs(self):
        pair = ConstituentList((uniform(8, 1), uniform(8, 7)))
        with self.assertLogs("modules.flag", level="WARNING"):
            self.assertTrue(is_flag_positroid(pair, cap=7, samples=20, seed=1))


if __name__ == "__main__":
    unittest.main()
