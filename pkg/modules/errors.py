"""
Errors Module
项目统一异常定义
"""

from typing import Optional, Tuple


class PositroidError(Exception):
    """所有异常的基类"""


class InputError(PositroidError, ValueError):
    """输入不满足前置条件（元素越界、(n,k) 不一致、非法项链等）"""

    def __init__(self, message: str, rule: Optional[str] = None):
        super().__init__(message)
        self.rule = rule

    def __str__(self) -> str:
        message = super().__str__()
        if self.rule:
            return f"[{self.rule}] {message}"
        return message


class DocumentError(InputError):
    """文档解析失败；语法错误时带 (line, column)"""

    def __init__(
        self,
        message: str,
        rule: Optional[str] = None,
        position: Optional[Tuple[int, int]] = None,
    ):
        super().__init__(message, rule)
        self.position = position

    def __str__(self) -> str:
        message = super().__str__()
        if self.position is not None:
            line, column = self.position
            return f"{message} (line {line}, column {column})"
        return message


class ResourceLimitError(PositroidError):
    """超出规模上限"""


class InvariantError(PositroidError, AssertionError):
    """内部不变量被破坏，说明有非法输入绕过了校验"""


class CertificateError(PositroidError):
    """子式符号证书失败，携带出问题的子集与子式值"""

    def __init__(self, subset, minor: int, expected_positive: bool):
        self.subset = subset
        self.minor = minor
        self.expected_positive = expected_positive
        expectation = "> 0" if expected_positive else "= 0"
        super().__init__(
            f"minor {subset} = {minor}, expected {expectation}"
        )
