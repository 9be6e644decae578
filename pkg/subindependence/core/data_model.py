#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
数据模型模块
定义成对样本、α 参数、估计配置与估计结果等不可变数据类
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..estimator_config import DEFAULT_ALPHA, DEFAULT_SEED, get_estimator_config
from .errors import ValidationError


class EstimatorMode(str, Enum):
    """估计模式"""
    AUTO = "auto"
    U_COMPLETE = "u"
    U_INCOMPLETE = "u-incomplete"
    V_FAST = "v-fast"
    POPULATION = "population"
    V_STATISTIC = "v-statistic"     # 直接枚举的 V 统计量与距离协方差基线
    SAMPLE = "sample"               # Pearson 基线

    @classmethod
    def parse(cls, value: Any) -> "EstimatorMode":
        """兼容字符串写法解析模式"""
        if isinstance(value, cls):
            return value
        lowered = str(value).strip().lower()
        aliases = {
            "u-complete": cls.U_COMPLETE,
            "complete": cls.U_COMPLETE,
            "incomplete": cls.U_INCOMPLETE,
            "v": cls.V_FAST,
        }
        if lowered in aliases:
            return aliases[lowered]
        try:
            return cls(lowered)
        except ValueError as exc:
            choices = ", ".join(m.value for m in (cls.AUTO, cls.U_COMPLETE, cls.U_INCOMPLETE, cls.V_FAST))
            raise ValidationError(f"unknown estimator mode '{value}', expected one of: {choices}") from exc


class EstimateKind(str, Enum):
    """依赖度量种类"""
    SICOV = "siCov"
    SICOR = "siCor"
    DCOV = "dCov"
    DCOR = "dCor"
    PEARSON = "Pearson"


class AlphaContext(str, Enum):
    """α 的合法区间语境"""
    GENERAL = "general"
    CAUCHY_MARGIN = "cauchy-margin"


@dataclass(frozen=True)
class AlphaParam:
    """指数 α，通用语境下取值 (0,2)"""
    alpha: float = DEFAULT_ALPHA

    def __float__(self) -> float:
        return float(self.alpha)


def validate_alpha(alpha: Any, context: Any = AlphaContext.GENERAL) -> AlphaParam:
    """校验 α 并返回 AlphaParam；Cauchy 边缘要求 α ∈ (0,1) 以保证 E|X|^α 有限"""

    try:
        value = float(alpha)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"alpha must be a real number, got {alpha!r}") from exc

    context = AlphaContext(context)
    if not np.isfinite(value) or not 0.0 < value < 2.0:
        raise ValidationError(f"alpha must lie in (0,2), got {value}")
    if context is AlphaContext.CAUCHY_MARGIN and not value < 1.0:
        raise ValidationError(
            f"alpha must lie in (0,1) for Cauchy margins: E|X|^alpha is infinite for alpha >= 1, got {value}"
        )
    return AlphaParam(value)


def _as_matrix(values: Any, label: str) -> np.ndarray:
    """转换为二维浮点矩阵，一维输入视为 p = 1"""
    array = np.asarray(values, dtype=float)
    if array.ndim == 1:
        array = array[:, None]
    if array.ndim != 2:
        raise ValidationError(f"{label} must be a matrix of n rows x p columns, got shape {array.shape}")
    return array


@dataclass(frozen=True)
class PairedSample:
    """成对样本 (x_i, y_i)，两个边缘维度相同"""
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = _as_matrix(self.x, "x")
        y = _as_matrix(self.y, "y")

        if x.shape[1] != y.shape[1]:
            raise ValidationError(
                f"margin dimension mismatch: x has {x.shape[1]} columns, y has {y.shape[1]}"
            )
        if x.shape[0] != y.shape[0]:
            raise ValidationError(f"row count mismatch: x has {x.shape[0]} rows, y has {y.shape[0]}")
        if x.shape[0] < 1 or x.shape[1] < 1:
            raise ValidationError("sample must have at least one row and one column")

        for label, matrix in (("x", x), ("y", y)):
            bad = np.argwhere(~np.isfinite(matrix))
            if bad.size:
                row, col = bad[0]
                raise ValidationError(
                    "non-finite value", row=int(row) + 1, column=f"{label}{int(col) + 1}"
                )

        x = np.array(x, copy=True)
        y = np.array(y, copy=True)
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return int(self.x.shape[0])

    @property
    def p(self) -> int:
        return int(self.x.shape[1])

    def swapped(self) -> "PairedSample":
        """交换两个边缘"""
        return PairedSample(self.y, self.x)

    def with_y_order(self, order: np.ndarray) -> "PairedSample":
        """按给定排列重新配对 y"""
        return PairedSample(self.x, self.y[np.asarray(order)])

    def is_margin_constant(self) -> Tuple[bool, bool]:
        """返回 (x 是否恒定, y 是否恒定)"""
        return (
            bool(np.all(self.x == self.x[0])),
            bool(np.all(self.y == self.y[0])),
        )


@dataclass(frozen=True)
class EstimatorConfig:
    """估计配置；不完全模式下 tuple_budget 为每个元组族的抽样数"""
    mode: EstimatorMode = EstimatorMode.AUTO
    tuple_budget: int = 200000
    seed: int = DEFAULT_SEED
    exact_threshold_n: int = 40
    n_jobs: int = 1
    chunk_size: int = 65536

    def __post_init__(self):
        object.__setattr__(self, "mode", EstimatorMode.parse(self.mode))
        if self.mode in (EstimatorMode.POPULATION, EstimatorMode.V_STATISTIC, EstimatorMode.SAMPLE):
            raise ValidationError(f"mode '{self.mode.value}' is reserved for oracle and baseline results")
        for name in ("tuple_budget", "exact_threshold_n", "n_jobs", "chunk_size"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise ValidationError(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)):
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        seed = int(self.seed)
        if not 0 <= seed < 2 ** 64:
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        object.__setattr__(self, "seed", seed)

    @classmethod
    def from_config(cls, **overrides: Any) -> "EstimatorConfig":
        """以 get_estimator_config() 为默认值构造配置"""
        settings = get_estimator_config()
        unknown = set(overrides) - set(settings)
        if unknown:
            raise ValidationError(f"unknown estimator option(s): {', '.join(sorted(unknown))}")
        settings.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**settings)

    def resolve_mode(self, n: int) -> EstimatorMode:
        """auto 模式按样本量选择完全或不完全 U 统计量"""
        if self.mode is EstimatorMode.AUTO:
            return EstimatorMode.U_COMPLETE if n <= self.exact_threshold_n else EstimatorMode.U_INCOMPLETE
        return self.mode


@dataclass(frozen=True)
class DependenceEstimate:
    """依赖度量的点估计及附带信息"""
    value: float
    kind: EstimateKind
    alpha: float
    mode: EstimatorMode
    n: int
    seed: Optional[int] = None
    tuple_budget: Optional[int] = None
    ci: Optional[Tuple[float, float, float]] = None    # (lower, upper, level)
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "kind", EstimateKind(self.kind))
        object.__setattr__(self, "mode", EstimatorMode.parse(self.mode))
        object.__setattr__(self, "warnings", tuple(self.warnings))
        if (
            self.kind is EstimateKind.SICOR
            and self.mode is EstimatorMode.POPULATION
            and not 0.0 <= self.value <= 1.0
        ):
            raise ValidationError(f"population siCor must lie in [0,1], got {self.value}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": float(self.value),
            "kind": self.kind.value,
            "alpha": float(self.alpha),
            "mode": self.mode.value,
            "n": self.n,
            "seed": self.seed,
            "tuple_budget": self.tuple_budget,
            "ci": None if self.ci is None else {
                "lower": self.ci[0], "upper": self.ci[1], "level": self.ci[2]
            },
            "warnings": list(self.warnings),
        }
