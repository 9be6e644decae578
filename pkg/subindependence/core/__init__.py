# core/__init__.py
"""
核心数据模块
包含数据模型、样本文件读写、异常定义与随机数子流
"""

from .errors import SubIndependenceError, ValidationError, EstimatorError, QuadratureError
from .data_model import (
    AlphaContext,
    AlphaParam,
    DependenceEstimate,
    EstimateKind,
    EstimatorConfig,
    EstimatorMode,
    PairedSample,
    validate_alpha,
)
from .sample_loader import SampleLoader, load_csv, save_csv
from .random_streams import RNG_ALGORITHM, rng_label, substream, derive_seed

__all__ = [
    'SubIndependenceError', 'ValidationError', 'EstimatorError', 'QuadratureError',
    'AlphaContext', 'AlphaParam', 'DependenceEstimate', 'EstimateKind',
    'EstimatorConfig', 'EstimatorMode', 'PairedSample', 'validate_alpha',
    'SampleLoader', 'load_csv', 'save_csv',
    'RNG_ALGORITHM', 'rng_label', 'substream', 'derive_seed',
]
