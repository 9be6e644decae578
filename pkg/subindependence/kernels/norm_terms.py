#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
范数幂与权函数常数模块
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from ..core.data_model import validate_alpha
from ..core.errors import ValidationError


@dataclass(frozen=True)
class WeightConstant:
    """权函数 ρ_α(t) = |t|^{-α-p} / c(p,α) 的归一化常数"""
    p: int
    alpha: float
    value: float


def norm_alpha(v, alpha: float) -> float:
    """欧氏范数的 α 次幂；仅当 v = 0 时为 0"""
    vector = np.asarray(v, dtype=float).ravel()
    return float(np.sqrt(np.dot(vector, vector)) ** alpha)


def c_const(p: int, alpha: float) -> WeightConstant:
    """c(p,α) = 2π^{p/2} Γ(1-α/2) / (α 2^α Γ((α+p)/2))"""

    if int(p) != p or p < 1:
        raise ValidationError(f"dimension p must be a positive integer, got {p}")
    alpha = validate_alpha(alpha).alpha

    log_value = (
        np.log(2.0)
        + 0.5 * p * np.log(np.pi)
        + gammaln(1.0 - alpha / 2.0)
        - np.log(alpha)
        - alpha * np.log(2.0)
        - gammaln((alpha + p) / 2.0)
    )
    return WeightConstant(p=int(p), alpha=alpha, value=float(np.exp(log_value)))
