# kernels/__init__.py
"""
核函数模块
包含范数幂、权函数常数、六项矩统计量与对称核
"""

from .norm_terms import WeightConstant, norm_alpha, c_const
from .term_statistics import (
    TERM_FAMILIES,
    TERM_LAYOUTS,
    TERM_NAMES,
    BaseTermCalculator,
    CompleteUTermCalculator,
    FastVTermCalculator,
    IncompleteUTermCalculator,
    NaiveVTermCalculator,
    TermStatistics,
    select_calculator,
    term_statistics,
)
from .symmetric_kernel import kernel_k, kernel_k_batch, kernel_average, k1_draws, k1_hat

__all__ = [
    'WeightConstant', 'norm_alpha', 'c_const',
    'TERM_FAMILIES', 'TERM_LAYOUTS', 'TERM_NAMES',
    'BaseTermCalculator', 'CompleteUTermCalculator', 'FastVTermCalculator',
    'IncompleteUTermCalculator', 'NaiveVTermCalculator',
    'TermStatistics', 'select_calculator', 'term_statistics',
    'kernel_k', 'kernel_k_batch', 'kernel_average', 'k1_draws', 'k1_hat',
]
