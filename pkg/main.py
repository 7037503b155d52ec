#!/usr/bin/env python3
"""
positroid-kit 命令行入口: Grassmann necklaces, decorated permutations,
Le-diagrams and lattice path matroids on small ground sets.

Documents are JSON objects with n, k and one payload
(necklace / perm+colors / le / bounds / bases / flagConstituents), read from a
file path or stdin. Exit codes: 0 true/success, 1 false verdict, 2 input error,
3 resource cap exceeded.

Usage:
    python main.py check positroid bases.json
    python main.py convert --to perm necklace.json
    python main.py bases le.json
    python main.py member --subset 2,3,4 necklace.json
    python main.py realize bounds.json
    python main.py verify --exhaustive-n 5
    python main.py verify --random 1000 --seed 7
"""

import argparse
import os
import sys
from typing import Any, Dict, List, Optional, TextIO

# 添加项目根目录到 sys.path
PROJECT_ROOT = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, PROJECT_ROOT)

from modules import (
    BasisCollection,
    ConstituentList,
    DecoratedPermutation,
    Document,
    DocumentKind,
    GrassmannNecklace,
    KSubset,
    LatticePathBounds,
    LeDiagram,
    VerifyContext,
)
from modules.decorated_perm import necklace_from_perm, perm_from_necklace, upper_necklace_from_perm
from modules.documents import dumps, parse, realization_document, serialize, upper_document
from modules.errors import CertificateError, InputError, ResourceLimitError
from modules.flag import are_concordant, is_flag_positroid
from modules.lattice_path import (
    is_lattice_path, lattice_path_bases, lp_decorated_perm, minor_sign_certificate, realize,
)
from modules.le_diagram import enumerate_bases, is_le_diagram, necklace_from_le, vd_representable
from modules.necklace import is_grassmann_necklace, is_positroid, member, necklace_of, positroid_from_necklace
from modules.oracles import format_table, run_suites, suite_names
from modules.subset_core import is_matroid
from modules.utils.common import load_config, parse_subset_arg, setup_logging

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3

CHECK_KINDS = {
    "necklace": DocumentKind.NECKLACE,
    "matroid": DocumentKind.BASES,
    "positroid": DocumentKind.BASES,
    "le": DocumentKind.LE,
    "flag-matroid": DocumentKind.FLAG,
    "flag-positroid": DocumentKind.FLAG,
    "lattice-path": DocumentKind.BASES,
}

# 这两类判定本身就是在检查规则，解析时不能提前报错
LENIENT_CHECKS = {"necklace", "le"}

CONVERT_TARGETS = ("necklace", "perm", "upper", "bases")

UINT64_LIMIT = 1 << 64


# ======================== runner ========================
class Runner:
    """把文档路由到各模块操作，并按退出码约定输出"""

    def __init__(self, config: Optional[Dict[str, Any]] = None, out: Optional[TextIO] = None,
                 stdin: Optional[TextIO] = None):
        self.config = config or load_config()
        self.out = out or sys.stdout
        self.stdin = stdin or sys.stdin
        self._context = None

    @property
    def context(self) -> VerifyContext:
        """verify 段的默认参数"""
        if self._context is None:
            section = self.config.get("verify", {})
            self._context = VerifyContext(
                exhaustive_n=section.get("exhaustive_n", 5),
                random_count=section.get("random_count", 1000),
                random_n=section.get("random_n", 8),
                le_samples=section.get("le_samples", 100),
                lattice_samples=section.get("lattice_samples", 200),
                swap_samples=section.get("swap_samples", 200),
                sweep_n=section.get("sweep_n", 16),
                flag_cap=self.flag_cap,
                seed=section.get("seed", 0),
            )
        return self._context

    @property
    def flag_cap(self) -> int:
        return self.config.get("flag", {}).get("exhaustive_cap", 7)

    @property
    def sample_orders(self) -> int:
        return self.config.get("flag", {}).get("sample_orders", 2000)

    @property
    def max_entry_bits(self) -> int:
        return self.config.get("limits", {}).get("realize_max_entry_bits", 5_000_000)

    @property
    def max_minors(self) -> int:
        return self.config.get("limits", {}).get("realize_max_minors", 1000)

    @property
    def max_ground_size(self) -> int:
        return self.config.get("limits", {}).get("max_ground_size", 64)

    # ---------- io ----------
    def read_document(self, source: str, strict: bool = True) -> Document:
        if source == "-":
            text = self.stdin.read()
        else:
            if not os.path.exists(source):
                raise InputError(f"file not found: {source}")
            with open(source, "r", encoding="utf-8") as f:
                text = f.read()
        document = parse(text, strict=strict)
        if document.n > self.max_ground_size:
            raise ResourceLimitError(
                f"n={document.n} exceeds the configured maximum {self.max_ground_size}"
            )
        return document

    def emit(self, text: str) -> None:
        self.out.write(text if text.endswith("\n") else text + "\n")

    def verdict(self, value: bool) -> int:
        self.emit("true" if value else "false")
        return EXIT_TRUE if value else EXIT_FALSE

    # ---------- commands ----------
    def check(self, kind: str, document: Document) -> int:
        expected = CHECK_KINDS[kind]
        if document.kind is not expected:
            raise InputError(f"check {kind} expects a {expected.value} document, got {document.kind.value}")
        value = document.to_value(strict=kind not in LENIENT_CHECKS)
        if kind == "necklace":
            return self.verdict(is_grassmann_necklace(value))
        if kind == "matroid":
            return self.verdict(is_matroid(value))
        if kind == "positroid":
            return self.verdict(is_positroid(value))
        if kind == "le":
            return self.verdict(is_le_diagram(value))
        if kind == "flag-matroid":
            ok = all(is_matroid(m) for m in value.matroids) and are_concordant(
                value, self.flag_cap, samples=self.sample_orders)
            return self.verdict(ok)
        if kind == "flag-positroid":
            return self.verdict(is_flag_positroid(value, self.flag_cap, samples=self.sample_orders))
        return self.verdict(is_lattice_path(value))

    def convert(self, target: str, document: Document, as_json: bool = False) -> int:
        value = document.to_value()
        if target == "necklace":
            self.emit(serialize(necklace_for(value)))
        elif target == "perm":
            perm = perm_for(value)
            self.emit(serialize(perm) if as_json else perm.to_text())
        elif target == "upper":
            self.emit(dumps(upper_document(upper_necklace_from_perm(perm_for(value)))))
        else:
            self.emit(serialize(bases_for(value)))
        return EXIT_TRUE

    def bases(self, document: Document) -> int:
        self.emit(serialize(bases_for(document.to_value())))
        return EXIT_TRUE

    def member(self, document: Document, subset_text: str) -> int:
        value = document.to_value()
        subset = parse_subset_arg(subset_text, document.n)
        return self.verdict(is_member(subset, value))

    def realize(self, document: Document) -> int:
        bounds = document.to_value()
        if not isinstance(bounds, LatticePathBounds):
            raise InputError(f"realize expects a bounds document, got {document.kind.value}")
        matrix = realize(bounds, self.max_entry_bits, self.max_minors)
        try:
            minor_sign_certificate(matrix, bounds)
        except CertificateError as e:
            self.emit(dumps(realization_document(bounds, matrix, False, e.subset)))
            return EXIT_FALSE
        self.emit(dumps(realization_document(bounds, matrix, True)))
        return EXIT_TRUE

    def verify(self, exhaustive_n: Optional[int] = None, random_count: Optional[int] = None,
               seed: Optional[int] = None, extended: bool = False,
               suites: Optional[List[str]] = None) -> int:
        section = self.config.get("verify", {})
        context = VerifyContext(**self.context.to_dict())
        if exhaustive_n is not None:
            cap = section.get("extended_n", 6) if extended else section.get("exhaustive_n", 5)
            if exhaustive_n > cap:
                hint = "" if extended else " (pass --extended for one more)"
                raise ResourceLimitError(f"--exhaustive-n {exhaustive_n} exceeds cap {cap}{hint}")
            if exhaustive_n < 1:
                raise InputError("--exhaustive-n must be at least 1")
            context.exhaustive_n = exhaustive_n
        if random_count is not None:
            if random_count < 0:
                raise InputError("--random must be non-negative")
            context.random_count = random_count
        if seed is not None:
            if not 0 <= seed < UINT64_LIMIT:
                raise InputError(f"--seed must be a 64-bit unsigned integer, got {seed}")
            context.seed = seed
        unknown = sorted(set(suites or ()) - set(suite_names()))
        if unknown:
            raise InputError(f"unknown suites {unknown}; available: {suite_names()}")
        results = run_suites(context, suites, config=section)
        self.emit(format_table(results))
        return EXIT_TRUE if all(r.passed for r in results) else EXIT_FALSE


# ======================== routing ========================
def necklace_for(value: Any) -> GrassmannNecklace:
    """任意正拟阵表示 -> 项链；非正拟阵的基集合无法转换"""
    if isinstance(value, GrassmannNecklace):
        return value
    if isinstance(value, DecoratedPermutation):
        return necklace_from_perm(value)
    if isinstance(value, LeDiagram):
        return necklace_from_le(value)
    if isinstance(value, LatticePathBounds):
        return necklace_from_perm(lp_decorated_perm(value))
    if isinstance(value, BasisCollection):
        if not is_positroid(value):
            raise InputError("bases do not form a positroid, so there is no necklace or permutation",
                             rule="positroid")
        return necklace_of(value)
    raise InputError(f"{type(value).__name__} has no single necklace")


def perm_for(value: Any) -> DecoratedPermutation:
    if isinstance(value, DecoratedPermutation):
        return value
    if isinstance(value, LatticePathBounds):
        return lp_decorated_perm(value)
    return perm_from_necklace(necklace_for(value))


def bases_for(value: Any) -> BasisCollection:
    if isinstance(value, BasisCollection):
        return value
    if isinstance(value, LeDiagram):
        return enumerate_bases(value)
    if isinstance(value, LatticePathBounds):
        return lattice_path_bases(value)
    return positroid_from_necklace(necklace_for(value))


def is_member(subset: KSubset, value: Any) -> bool:
    if isinstance(value, BasisCollection):
        if subset.k != value.k:
            raise InputError(f"subset {subset} has k={subset.k}, collection has k={value.k}")
        return subset in value
    if isinstance(value, LeDiagram):
        return vd_representable(value, subset)
    if isinstance(value, LatticePathBounds):
        return subset in lattice_path_bases(value)
    if isinstance(value, ConstituentList):
        raise InputError("member needs a single positroid, not a constituent list")
    return member(subset, necklace_for(value))


# ======================== CLI ========================
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="positroid-kit: positroid combinatorics",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py check necklace necklace.json
  python main.py convert --to perm necklace.json
  echo '{"n":3,"k":1,"bounds":{"I":[1],"J":[3]}}' | python main.py realize
  python main.py verify --exhaustive-n 6 --extended
        """
    )
    parser.add_argument("--config", type=str, help="配置文件路径（默认 config/config.yaml）")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="判定文档是否为某类对象")
    check.add_argument("kind", choices=sorted(CHECK_KINDS))
    check.add_argument("input", nargs="?", default="-", help="文档路径，- 表示 stdin")

    convert = sub.add_parser("convert", help="在项链、装饰置换、上项链、基集合之间转换")
    convert.add_argument("--to", required=True, choices=CONVERT_TARGETS)
    convert.add_argument("--json", action="store_true", help="perm 也输出 JSON 文档")
    convert.add_argument("input", nargs="?", default="-")

    bases = sub.add_parser("bases", help="列出正拟阵的全部基")
    bases.add_argument("input", nargs="?", default="-")

    member_cmd = sub.add_parser("member", help="判定子集是否为基")
    member_cmd.add_argument("--subset", required=True, help="逗号分隔，例如 2,3,4")
    member_cmd.add_argument("input", nargs="?", default="-")

    realize_cmd = sub.add_parser("realize", help="格路拟阵的精确非负矩阵与子式证书")
    realize_cmd.add_argument("input", nargs="?", default="-")

    verify = sub.add_parser("verify", help="运行交叉校验套件")
    verify.add_argument("--exhaustive-n", type=int, help="穷举的最大 n（默认 5）")
    verify.add_argument("--extended", action="store_true", help="允许 --exhaustive-n 6")
    verify.add_argument("--random", type=int, dest="random_count", metavar="COUNT",
                        help="随机实例数")
    verify.add_argument("--seed", type=int, help="64 位无符号种子")
    verify.add_argument("--suite", action="append", dest="suites", metavar="NAME",
                        help="只运行指定套件，可重复")
    return parser


def dispatch(runner: Runner, args: argparse.Namespace) -> int:
    if args.command == "verify":
        return runner.verify(args.exhaustive_n, args.random_count, args.seed,
                             args.extended, args.suites)
    strict = not (args.command == "check" and args.kind in LENIENT_CHECKS)
    document = runner.read_document(args.input, strict=strict)
    if args.command == "check":
        return runner.check(args.kind, document)
    if args.command == "convert":
        return runner.convert(args.to, document, args.json)
    if args.command == "bases":
        return runner.bases(document)
    if args.command == "member":
        return runner.member(document, args.subset)
    return runner.realize(document)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        setup_logging(config)
        return dispatch(Runner(config), args)
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
