#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
对照基线模块
距离协方差/相关系数（双中心化距离矩阵 V 统计量）与 Pearson 相关系数
"""

import logging
from typing import Tuple

import numpy as np
from scipy.spatial.distance import pdist, squareform

from ..core.data_model import DependenceEstimate, EstimateKind, EstimatorMode, PairedSample
from ..core.errors import EstimatorError, ValidationError

logger = logging.getLogger(__name__)


def _double_centered(values: np.ndarray) -> np.ndarray:
    """欧氏距离矩阵的双中心化"""
    distances = squareform(pdist(values, metric="euclidean"))
    return (
        distances
        - distances.mean(axis=0)[None, :]
        - distances.mean(axis=1)[:, None]
        + distances.mean()
    )


def dcov_dcor_baseline(
    sample: PairedSample, alpha: float = 1.0
) -> Tuple[DependenceEstimate, DependenceEstimate]:
    """样本距离协方差与距离相关系数（α = 1），返回 (dCov, dCor)"""

    if float(alpha) != 1.0:
        raise ValidationError(f"distance covariance baseline supports alpha = 1 only, got {alpha}")
    if sample.n < 2:
        raise ValidationError(f"distance covariance needs n >= 2, got n={sample.n}")

    a = _double_centered(sample.x)
    b = _double_centered(sample.y)
    n2 = float(sample.n) ** 2

    dcov2_xy = max(float(np.vdot(a, b)) / n2, 0.0)
    dvar2_x = float(np.vdot(a, a)) / n2
    dvar2_y = float(np.vdot(b, b)) / n2

    warnings = []
    if dvar2_x * dvar2_y > 0:
        dcor = float(np.sqrt(dcov2_xy / np.sqrt(dvar2_x * dvar2_y)))
    else:
        dcor = 0.0
        warnings.append("constant margin: dCor defined as 0")

    logger.debug("[Baselines] dCov^2=%.6g, dVarX^2=%.6g, dVarY^2=%.6g", dcov2_xy, dvar2_x, dvar2_y)

    common = dict(alpha=1.0, mode=EstimatorMode.V_STATISTIC, n=sample.n, warnings=tuple(warnings))
    return (
        DependenceEstimate(value=float(np.sqrt(dcov2_xy)), kind=EstimateKind.DCOV, **common),
        DependenceEstimate(value=dcor, kind=EstimateKind.DCOR, **common),
    )


def pearson_baseline(sample: PairedSample) -> DependenceEstimate:
    """一维样本的 Pearson 积矩相关系数"""

    if sample.p != 1:
        raise ValidationError(f"Pearson baseline needs p = 1, got p={sample.p}")
    if sample.n < 2:
        raise ValidationError(f"Pearson correlation needs n >= 2, got n={sample.n}")

    x = sample.x[:, 0] - sample.x[:, 0].mean()
    y = sample.y[:, 0] - sample.y[:, 0].mean()
    sxx = float(np.dot(x, x))
    syy = float(np.dot(y, y))
    if sxx == 0.0 or syy == 0.0:
        raise EstimatorError("Pearson correlation undefined: zero sample variance")

    value = float(np.clip(np.dot(x, y) / np.sqrt(sxx * syy), -1.0, 1.0))
    return DependenceEstimate(
        value=value, kind=EstimateKind.PEARSON, alpha=1.0, mode=EstimatorMode.SAMPLE, n=sample.n
    )
