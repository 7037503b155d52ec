"""
Base Processor Module
所有校验套件的基类
"""

import logging
import time
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

import numpy as np

from .data_types import SuiteResult, SuiteStatus, VerifyContext
from .errors import PositroidError

logger = logging.getLogger(__name__)


class BaseProcessor(ABC):
    """
    套件基类

    子类设置 name（报告中的套件名）与 salt（随机流编号），
    并在 process() 中对每个实例调用 result.check()。
    """

    name: str = ""
    salt: int = 0

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.name = self.name or self.__class__.__name__

    @abstractmethod
    def process(self, context: VerifyContext, result: SuiteResult) -> None:
        """
        运行套件

        Args:
            context: 校验参数
            result: 结果累加器
        """
        pass

    def validate_input(self, context: VerifyContext) -> bool:
        """
        参数不足以运行时跳过本套件

        Args:
            context: 校验参数

        Returns:
            是否运行
        """
        return context is not None

    def get_config(self, key: str, default: Any = None) -> Any:
        return self.config.get(key, default)

    def rng(self, context: VerifyContext) -> np.random.Generator:
        """同一 seed 与 salt 给出同一随机流"""
        return np.random.default_rng([context.seed, self.salt])

    def run(self, context: VerifyContext) -> SuiteResult:
        """计时执行 process()，把库异常记为一次失败"""
        result = SuiteResult(self.name)
        if not self.validate_input(context):
            result.status = SuiteStatus.SKIPPED
            logger.info("suite %s skipped", self.name)
            return result
        logger.info("suite %s started", self.name)
        start = time.perf_counter()
        try:
            self.process(context, result)
        except PositroidError as e:
            logger.exception("suite %s aborted", self.name)
            result.check(False, f"{type(e).__name__}: {e}")
        result.elapsed = time.perf_counter() - start
        logger.info(
            "suite %s finished: %d instances, %d failures in %.2fs",
            self.name, result.instances, result.failures, result.elapsed,
        )
        return result
