"""
Documents Module
命令行使用的 JSON 文档：解析、校验与规范化输出

文档形如 {"n": 5, "k": 3, "necklace": [[1,2,4], ...]}，恰含一个载荷字段。
输出时字段顺序固定、子集升序、子集列表按字典序排序，保证同一输入逐字节相同。
"""

import json
import logging
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .data_types import (
    BasisCollection, DecoratedPermutation, DocumentKind, GrassmannNecklace, KSubset,
)
from .errors import DocumentError, InputError
from .flag import ConstituentList
from .lattice_path import ExactMatrix, LatticePathBounds
from .le_diagram import LeDiagram, YoungShape, validated_le_diagram
from .necklace import validated_necklace

logger = logging.getLogger(__name__)

DomainValue = Union[
    GrassmannNecklace, DecoratedPermutation, LeDiagram,
    LatticePathBounds, BasisCollection, ConstituentList,
]

_PAYLOAD_FIELDS = {
    DocumentKind.NECKLACE: "necklace",
    DocumentKind.PERM: "perm",
    DocumentKind.LE: "le",
    DocumentKind.BOUNDS: "bounds",
    DocumentKind.BASES: "bases",
    DocumentKind.FLAG: "flag_constituents",
}


class LePayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    shape: List[int]
    filled: List[Tuple[int, int]] = Field(default_factory=list)


class BoundsPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    I: List[int]
    J: List[int]


class Document(BaseModel):
    """带 n、k 与单个载荷的文档"""
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    n: int = Field(ge=1)
    k: int = Field(ge=0)
    necklace: Optional[List[List[int]]] = None
    # 列表，或规范文本 "5 3 2 1 4 ; 5:+"
    perm: Optional[Union[List[int], str]] = None
    colors: Optional[Dict[str, int]] = None
    le: Optional[LePayload] = None
    bounds: Optional[BoundsPayload] = None
    bases: Optional[List[List[int]]] = None
    flag_constituents: Optional[List[List[List[int]]]] = Field(default=None, alias="flagConstituents")

    @model_validator(mode="after")
    def _exactly_one_payload(self) -> "Document":
        present = [kind.value for kind, name in _PAYLOAD_FIELDS.items() if getattr(self, name) is not None]
        if len(present) != 1:
            raise ValueError(f"expected exactly one payload, found {present or 'none'}")
        if self.colors is not None and self.perm is None:
            raise ValueError("colors are only allowed next to perm")
        return self

    @property
    def kind(self) -> DocumentKind:
        for kind, name in _PAYLOAD_FIELDS.items():
            if getattr(self, name) is not None:
                return kind
        raise InputError("document has no payload")

    def to_value(self, strict: bool = True) -> DomainValue:
        """
        构造领域对象

        Args:
            strict: 为 True 时同时校验项链规则与 Le 性质；check 命令用 False 以便给出判定

        Returns:
            DomainValue
        """
        kind = self.kind
        if kind is DocumentKind.NECKLACE:
            for i, entry in enumerate(self.necklace, start=1):
                if not (_increasing(entry) or _increasing(entry, start=i, n=self.n)):
                    raise InputError(f"necklace entry I_{i}={entry} is not increasing in <_1 or <_{i}",
                                     rule="strictly increasing")
            value = GrassmannNecklace.from_lists(self.n, self.necklace)
            if strict:
                value = validated_necklace(value)
        elif kind is DocumentKind.PERM:
            if isinstance(self.perm, str):
                if self.colors is not None:
                    raise InputError("perm text carries its own colors after ';'", rule="schema")
                value = DecoratedPermutation.from_text(self.perm)
            else:
                value = DecoratedPermutation.of(self.perm, _parse_colors(self.colors or {}))
            if value.n != self.n:
                raise InputError(f"perm has length {value.n}, document says n={self.n}",
                                 rule="payload consistent with (n,k)")
        elif kind is DocumentKind.LE:
            value = LeDiagram(YoungShape(self.k, self.n, tuple(self.le.shape)),
                              frozenset(self.le.filled))
            if strict:
                value = validated_le_diagram(value)
        elif kind is DocumentKind.BOUNDS:
            _check_subset_lists("bounds", [self.bounds.I, self.bounds.J], distinct=False)
            value = LatticePathBounds.of(self.n, self.bounds.I, self.bounds.J)
        elif kind is DocumentKind.BASES:
            if not self.bases:
                raise InputError("bases list is empty", rule="nonempty")
            _check_subset_lists("bases", self.bases)
            value = BasisCollection.from_lists(self.n, self.bases)
        else:
            if any(not level for level in self.flag_constituents):
                raise InputError("constituent bases list is empty", rule="nonempty")
            for level in self.flag_constituents:
                _check_subset_lists("flagConstituents", level)
            value = ConstituentList(tuple(
                BasisCollection.from_lists(self.n, level) for level in self.flag_constituents
            ))
        _check_rank(self, value)
        return value


def _increasing(items: List[int], start: int = 1, n: int = 0) -> bool:
    """items 在 <_start 下严格递增；start = 1 时即普通递增"""
    keys = [(e - start) % n if n else e for e in items]
    return all(a < b for a, b in zip(keys, keys[1:]))


def _check_subset_lists(field: str, lists: List[List[int]], distinct: bool = True) -> None:
    seen = set()
    for items in lists:
        if not _increasing(items):
            raise InputError(f"{field}: subset {items} is not strictly increasing",
                             rule="strictly increasing")
        key = tuple(items)
        if distinct and key in seen:
            raise InputError(f"{field}: subset {items} is listed twice", rule="distinct subsets")
        seen.add(key)


def _parse_colors(colors: Dict[str, int]) -> Dict[int, int]:
    try:
        return {int(point): int(sign) for point, sign in colors.items()}
    except ValueError:
        raise InputError(f"color keys must be fixed points, got {sorted(colors)}")


def _check_rank(document: Document, value: DomainValue) -> None:
    if isinstance(value, ConstituentList):
        k = value.ranks[-1]
    else:
        k = value.k
    if k != document.k:
        raise InputError(f"payload has k={k}, document says k={document.k}",
                         rule="payload consistent with (n,k)")


def parse(text: str, strict: bool = True) -> Document:
    """
    解析并校验文档

    Raises:
        DocumentError: JSON 语法错误（带行列）或结构不符
        InputError: 领域不变量被违反，rule 给出规则名
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, rule="syntax", position=(e.lineno, e.colno))
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object", rule="schema")
    try:
        document = Document.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "document"
        raise DocumentError(f"{where}: {first['msg']}", rule="schema")
    document.to_value(strict=strict)
    logger.debug("parsed %s document n=%d k=%d", document.kind.value, document.n, document.k)
    return document


def to_document_dict(value: Any) -> Dict[str, Any]:
    """领域对象转为规范字段顺序的字典"""
    if isinstance(value, Document):
        value = value.to_value()
    if isinstance(value, DecoratedPermutation):
        return {"n": value.n, "k": value.k, **value.to_dict()}
    if isinstance(value, (GrassmannNecklace, LeDiagram, LatticePathBounds,
                          BasisCollection, ConstituentList)):
        return value.to_dict()
    raise InputError(f"cannot serialize {type(value).__name__}")


def upper_document(upper: Tuple[KSubset, ...]) -> Dict[str, Any]:
    return {
        "n": upper[0].n,
        "k": upper[0].k,
        "upperNecklace": [entry.to_list() for entry in upper],
    }


def realization_document(bounds: LatticePathBounds, matrix: ExactMatrix,
                         certificate: bool, offending: Optional[KSubset] = None) -> Dict[str, Any]:
    document = bounds.to_dict()
    document.update(matrix.to_dict())
    document["certificate"] = certificate
    if offending is not None:
        document["offending"] = offending.to_list()
    return document


def dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, ensure_ascii=False) + "\n"


def serialize(value: Any) -> str:
    """规范 JSON 文本"""
    return dumps(to_document_dict(value))
