# estimators/__init__.py
"""
估计量模块
包含 siCov/siCor 点估计与距离协方差、Pearson 基线
"""

from .sicov_estimator import EstimatorReport, sicov_hat, sicor_hat, sicov_sicor, sicov_v_fast_1d
from .baselines import dcov_dcor_baseline, pearson_baseline

__all__ = [
    'EstimatorReport', 'sicov_hat', 'sicor_hat', 'sicov_sicor', 'sicov_v_fast_1d',
    'dcov_dcor_baseline', 'pearson_baseline',
]
