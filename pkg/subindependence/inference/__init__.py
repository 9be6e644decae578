# inference/__init__.py
"""
统计推断模块
包含置换检验、渐近置信区间、零分布模拟与功效研究
"""

from .permutation import (
    MIN_PERMUTATIONS,
    BasePermutationEngine,
    CompleteUPermutationEngine,
    FastVPermutationEngine,
    RecomputePermutationEngine,
    TestResult,
    build_engine,
    canonical_order,
    permutation_test,
)
from .asymptotic import ConfidenceInterval, asymptotic_ci, k1_row_estimates
from .simulation import (
    GENERATORS,
    NullSummary,
    PowerResult,
    bivariate_normal,
    cauchy_grid,
    get_generator,
    independent_normal,
    normal_grid,
    null_distribution_sim,
    power_study,
    quadratic_pairs,
    rademacher_pairs,
    summarize_null_draws,
)

__all__ = [
    'MIN_PERMUTATIONS', 'BasePermutationEngine', 'CompleteUPermutationEngine', 'FastVPermutationEngine',
    'RecomputePermutationEngine', 'TestResult', 'build_engine', 'canonical_order', 'permutation_test',
    'ConfidenceInterval', 'asymptotic_ci', 'k1_row_estimates',
    'GENERATORS', 'NullSummary', 'PowerResult', 'bivariate_normal', 'cauchy_grid', 'get_generator',
    'independent_normal', 'normal_grid', 'null_distribution_sim', 'power_study', 'quadratic_pairs',
    'rademacher_pairs', 'summarize_null_draws',
]
