"""
positroid-kit 模块包
"""

# 数据类型
from .data_types import (
    MAX_GROUND_SIZE, DocumentKind, SuiteStatus, KSubset, CyclicOrder,
    BasisCollection, GrassmannNecklace, DecoratedPermutation,
    VerifyContext, SuiteResult,
)

# 异常
from .errors import (
    PositroidError, InputError, DocumentError, ResourceLimitError,
    InvariantError, CertificateError,
)

# 各模块的主要类型
from .le_diagram import YoungShape, LeDiagram, BoundaryLabels, Chain
from .lattice_path import LatticePathBounds, ExactMatrix
from .flag import Flag, ConstituentList, ConcordanceReport
from .documents import Document, parse, serialize

# 校验套件基类
from .base import BaseProcessor

__all__ = [
    # 数据类型
    'MAX_GROUND_SIZE', 'DocumentKind', 'SuiteStatus', 'KSubset', 'CyclicOrder',
    'BasisCollection', 'GrassmannNecklace', 'DecoratedPermutation',
    'VerifyContext', 'SuiteResult',
    # 异常
    'PositroidError', 'InputError', 'DocumentError', 'ResourceLimitError',
    'InvariantError', 'CertificateError',
    # 模块类型
    'YoungShape', 'LeDiagram', 'BoundaryLabels', 'Chain',
    'LatticePathBounds', 'ExactMatrix',
    'Flag', 'ConstituentList', 'ConcordanceReport',
    'Document', 'parse', 'serialize',
    'BaseProcessor',
]
