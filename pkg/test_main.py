#!/usr/bin/env python3
"""
命令行与校验套件测试
Runner 的各子命令、退出码约定，以及小规模 verify
"""

import copy
import io
import json
import os
import sys
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

# 添加项目根目录到路径
PROJECT_ROOT = Path(__file__).parent.absolute()
sys.path.insert(0, str(PROJECT_ROOT))

from main import EXIT_FALSE, EXIT_INPUT, EXIT_RESOURCE, EXIT_TRUE, Runner, build_parser, main
from modules.data_types import SuiteStatus, VerifyContext
from modules.documents import parse
from modules.errors import InputError, ResourceLimitError
from modules.oracles import format_table, run_suites, suite_names
from modules.utils.common import DEFAULT_CONFIG

FIVE_NECKLACE = '{"n": 5, "k": 3, "necklace": [[1,2,4],[2,4,5],[3,4,5],[4,5,2],[5,1,2]]}'
FIVE_PERM = '{"n": 5, "k": 3, "perm": [5,3,2,1,4]}'
FIVE_BASES = '{"n": 5, "k": 3, "bases": [[1,2,4],[1,2,5],[1,3,4],[1,3,5],[2,4,5],[3,4,5]]}'
BAD_NECKLACE = '{"n": 4, "k": 2, "necklace": [[1,3],[2,4],[1,3],[2,4]]}'
BAD_LE = '{"n": 4, "k": 2, "le": {"shape": [2,2], "filled": [[1,2],[2,1]]}}'
SMALL_LE = '{"n": 4, "k": 2, "le": {"shape": [2,1], "filled": [[1,2],[2,1]]}}'
BOUNDS = '{"n": 3, "k": 2, "bounds": {"I": [1,2], "J": [2,3]}}'
NOT_POSITROID = '{"n": 4, "k": 2, "bases": [[1,2],[1,4],[2,3],[3,4]]}'
FLAG = '{"n": 3, "k": 2, "flagConstituents": [[[1],[2],[3]], [[1,2],[1,3],[2,3]]]}'


def small_config():
    """把 verify 段缩小到秒级"""
    config = copy.deepcopy(DEFAULT_CONFIG)
    config["verify"].update({
        "exhaustive_n": 3,
        "extended_n": 4,
        "random_count": 20,
        "random_n": 6,
        "le_samples": 5,
        "lattice_samples": 10,
        "swap_samples": 10,
        "sweep_n": 8,
        "sweep_seconds": 60.0,
    })
    return config


class RunnerTestCase(unittest.TestCase):
    """用 StringIO 代替 stdin/stdout"""

    def runner(self, text=""):
        self.out = io.StringIO()
        return Runner(small_config(), out=self.out, stdin=io.StringIO(text))

    def document(self, text, strict=True):
        """只解析，不替换 self.out"""
        return parse(text, strict=strict)


class TestCheck(RunnerTestCase):
    """check 子命令"""

    def run_check(self, kind, text):
        strict = kind not in ("necklace", "le")
        runner = self.runner(text)
        code = runner.check(kind, runner.read_document("-", strict=strict))
        return code, self.out.getvalue()

    def test_true_verdicts(self):
        cases = [
            ("necklace", FIVE_NECKLACE),
            ("positroid", FIVE_BASES),
            ("matroid", FIVE_BASES),
            ("le", SMALL_LE),
            ("flag-matroid", FLAG),
            ("flag-positroid", FLAG),
            ("lattice-path", '{"n": 4, "k": 2, "bases": [[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}'),
        ]
        for kind, text in cases:
            self.assertEqual(self.run_check(kind, text), (EXIT_TRUE, "true\n"), kind)

    def test_false_verdicts(self):
        cases = [
            ("necklace", BAD_NECKLACE),
            ("le", BAD_LE),
            ("positroid", NOT_POSITROID),
            ("matroid", '{"n": 4, "k": 2, "bases": [[1,2],[3,4]]}'),
            ("lattice-path", FIVE_BASES),
        ]
        for kind, text in cases:
            self.assertEqual(self.run_check(kind, text), (EXIT_FALSE, "false\n"), kind)
        print("✓ check 判定测试通过")

    def test_kind_mismatch(self):
        with self.assertRaises(InputError):
            self.run_check("positroid", FIVE_NECKLACE)


class TestConvert(RunnerTestCase):
    """convert、bases、member、realize"""

    def test_necklace_to_perm_text(self):
        runner = self.runner()
        self.assertEqual(runner.convert("perm", self.document(FIVE_NECKLACE)), EXIT_TRUE)
        self.assertEqual(self.out.getvalue(), "5 3 2 1 4 ;\n")

    def test_perm_json(self):
        runner = self.runner()
        runner.convert("perm", self.document(FIVE_BASES), as_json=True)
        self.assertEqual(json.loads(self.out.getvalue()),
                         {"n": 5, "k": 3, "perm": [5, 3, 2, 1, 4], "colors": {}})

    def test_perm_to_necklace_and_upper(self):
        runner = self.runner()
        runner.convert("necklace", self.document(FIVE_PERM))
        self.assertEqual(json.loads(self.out.getvalue())["necklace"][3], [2, 4, 5])
        runner = self.runner()
        runner.convert("upper", self.document(FIVE_PERM))
        self.assertEqual(json.loads(self.out.getvalue())["upperNecklace"][0], [3, 4, 5])

    def test_bases_from_le(self):
        runner = self.runner()
        self.assertEqual(runner.bases(self.document(SMALL_LE)), EXIT_TRUE)
        self.assertEqual(json.loads(self.out.getvalue())["bases"], [[1, 3], [1, 4], [2, 3], [2, 4]])

    def test_non_positroid_has_no_necklace(self):
        with self.assertRaises(InputError) as ctx:
            self.runner().convert("necklace", self.document(NOT_POSITROID))
        self.assertEqual(ctx.exception.rule, "positroid")

    def test_member(self):
        runner = self.runner()
        self.assertEqual(runner.member(self.document(FIVE_NECKLACE), "2,3,4"), EXIT_FALSE)
        self.assertEqual(self.out.getvalue(), "false\n")
        runner = self.runner()
        self.assertEqual(runner.member(self.document(FIVE_PERM), "1,3,5"), EXIT_TRUE)
        with self.assertRaises(InputError):
            self.runner().member(self.document(FIVE_NECKLACE), "1,x")

    def test_realize(self):
        runner = self.runner()
        self.assertEqual(runner.realize(self.document(BOUNDS)), EXIT_TRUE)
        document = json.loads(self.out.getvalue())
        self.assertEqual(document["rows"], [[1, 2, 0], [0, 16, 256]])
        self.assertTrue(document["certificate"])

    def test_realize_budget(self):
        runner = self.runner()
        runner.config["limits"]["realize_max_entry_bits"] = 4
        with self.assertRaises(ResourceLimitError):
            runner.realize(self.document(BOUNDS))
        runner = self.runner()
        runner.config["limits"]["realize_max_minors"] = 2
        with self.assertRaises(ResourceLimitError):
            runner.realize(self.document(BOUNDS))
        self.assertEqual(self.out.getvalue(), "")

    def test_ground_size_cap(self):
        with self.assertRaises(ResourceLimitError):
            self.runner('{"n": 65, "k": 1, "bases": [[1]]}').read_document("-")
        runner = self.runner('{"n": 9, "k": 1, "bases": [[1]]}')
        runner.config["limits"]["max_ground_size"] = 8
        with self.assertRaises(ResourceLimitError):
            runner.read_document("-")

    def test_read_document_keeps_output(self):
        runner = self.runner(FIVE_NECKLACE)
        document = runner.read_document("-")
        runner.convert("perm", document)
        self.assertEqual(self.out.getvalue(), "5 3 2 1 4 ;\n")

    def test_perm_text_round_trip(self):
        """convert --to perm 的文本输出可以作为 perm 载荷再读回"""
        runner = self.runner()
        runner.convert("perm", self.document(FIVE_NECKLACE))
        text = self.out.getvalue().strip()
        runner = self.runner()
        runner.convert("necklace", self.document(json.dumps({"n": 5, "k": 3, "perm": text})))
        self.assertEqual(json.loads(self.out.getvalue())["necklace"][3], [2, 4, 5])


class TestVerify(RunnerTestCase):
    """verify 子命令与 run_suites"""

    def test_small_verify_passes(self):
        runner = self.runner()
        self.assertEqual(runner.verify(), EXIT_TRUE, self.out.getvalue())
        lines = self.out.getvalue().splitlines()
        listed = [line.split()[0] for line in lines[2:] if not line.startswith(" ")]
        self.assertEqual(listed, suite_names())
        print("✓ verify 小规模运行测试通过")

    def test_caps(self):
        with self.assertRaises(ResourceLimitError):
            self.runner().verify(exhaustive_n=4)
        with self.assertRaises(ResourceLimitError):
            self.runner().verify(exhaustive_n=5, extended=True)
        with self.assertRaises(InputError):
            self.runner().verify(exhaustive_n=0)
        with self.assertRaises(InputError):
            self.runner().verify(seed=-1)
        with self.assertRaises(InputError):
            self.runner().verify(suites=["no-such-suite"])

    def test_selected_suite(self):
        runner = self.runner()
        self.assertEqual(runner.verify(suites=["swap-lemma"], seed=7), EXIT_TRUE)
        self.assertIn("swap-lemma", self.out.getvalue())
        self.assertNotIn("duality", self.out.getvalue())

    def test_deterministic(self):
        context = VerifyContext(exhaustive_n=3, random_count=10, random_n=6, le_samples=3,
                                lattice_samples=5, swap_samples=5, sweep_n=6, seed=99)
        names = ["duality", "lattice-path", "swap-lemma"]
        first = run_suites(context, names)
        second = run_suites(context, names)
        self.assertEqual([r.name for r in first], sorted(names))
        self.assertEqual([(r.instances, r.failures) for r in first],
                         [(r.instances, r.failures) for r in second])
        self.assertTrue(all(r.status is SuiteStatus.PASS for r in first))
        self.assertIn("lattice-path", format_table(first))

    def test_flag_suite_skipped_below_order_cap(self):
        context = VerifyContext(exhaustive_n=3, le_samples=3, flag_cap=1, seed=1)
        [result] = run_suites(context, ["flag"])
        self.assertIs(result.status, SuiteStatus.SKIPPED)
        self.assertEqual(result.instances, 0)
        self.assertTrue(result.passed)
        self.assertIn("skipped", format_table([result]))
        context.flag_cap = 3
        [result] = run_suites(context, ["flag"])
        self.assertIs(result.status, SuiteStatus.PASS)
        self.assertEqual(result.instances, 3)

    def test_table_is_stable(self):
        context = VerifyContext(exhaustive_n=3, random_count=5, random_n=5, seed=3)
        first = format_table(run_suites(context, ["perm-bijection"]))
        second = format_table(run_suites(context, ["perm-bijection"]))
        self.assertEqual(first, second)
        self.assertEqual(first.splitlines()[2].split(), ["perm-bijection", "28", "0", "pass"])


class TestMain(unittest.TestCase):
    """main() 的退出码"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, text):
        path = os.path.join(self.tmp.name, name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        return path

    def call(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_exit_codes(self):
        code, out, _ = self.call("convert", "--to", "perm", self.write("five.json", FIVE_NECKLACE))
        self.assertEqual((code, out), (EXIT_TRUE, "5 3 2 1 4 ;\n"))
        code, out, _ = self.call("member", "--subset", "2,3,4", self.write("five.json", FIVE_NECKLACE))
        self.assertEqual((code, out), (EXIT_FALSE, "false\n"))
        code, out, _ = self.call("check", "necklace", self.write("bad.json", BAD_NECKLACE))
        self.assertEqual((code, out), (EXIT_FALSE, "false\n"))

    def test_input_errors(self):
        code, out, err = self.call("bases", self.write("bad.json", BAD_NECKLACE))
        self.assertEqual(code, EXIT_INPUT)
        self.assertEqual(out, "")
        self.assertIn("necklace exchange rule", err)
        code, _, err = self.call("bases", self.write("broken.json", '{"n": 3,'))
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn("line 1", err)
        code, _, _ = self.call("bases", os.path.join(self.tmp.name, "missing.json"))
        self.assertEqual(code, EXIT_INPUT)

    def test_resource_error(self):
        code, _, _ = self.call("bases", self.write("big.json", '{"n": 65, "k": 1, "bases": [[1]]}'))
        self.assertEqual(code, EXIT_RESOURCE)
        code, _, _ = self.call("verify", "--exhaustive-n", "9")
        self.assertEqual(code, EXIT_RESOURCE)
        wide = '{"n": 40, "k": 4, "bounds": {"I": [1,2,3,4], "J": [37,38,39,40]}}'
        code, out, _ = self.call("realize", self.write("wide.json", wide))
        self.assertEqual((code, out), (EXIT_RESOURCE, ""))

    def test_verify_output_is_reproducible(self):
        argv = ["verify", "--exhaustive-n", "3", "--random", "20", "--seed", "5",
                "--suite", "gale-order", "--suite", "duality"]
        code, first, _ = self.call(*argv)
        self.assertEqual(code, EXIT_TRUE)
        _, second, _ = self.call(*argv)
        self.assertEqual(first, second)
        self.assertNotRegex(first, r"\d\.\d\ds")
        self.assertEqual(first.splitlines()[0].split(), ["suite", "instances", "failures", "status"])

    def test_parser(self):
        args = build_parser().parse_args(["verify", "--random", "50", "--seed", "3", "--suite", "flag"])
        self.assertEqual((args.random_count, args.seed, args.suites), (50, 3, ["flag"]))
        args = build_parser().parse_args(["check", "positroid"])
        self.assertEqual(args.input, "-")


if __name__ == "__main__":
    unittest.main()
