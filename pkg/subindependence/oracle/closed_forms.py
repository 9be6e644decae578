#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
闭式解模块
二元标准正态（相关系数 ρ）与二元标准 Cauchy 的 siCov / siCor 闭式值
"""

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import gamma, gammaln

from ..core.data_model import AlphaContext, AlphaParam, validate_alpha
from ..core.errors import ValidationError
from ..kernels.norm_terms import c_const


@dataclass(frozen=True)
class NormalClosedForm:
    """二元标准正态的闭式结果

    sicov_xx 为 siCov(X, X)；ratio_r = siCov(X,Y) / sqrt(siCov(X,X) siCov(Y,Y))；
    denominator 为 K1 + K2 - K3。
    """
    rho: float
    alpha: float
    sicov: float
    sicor: float
    ratio_r: float
    sicov_xx: float
    denominator: float


@dataclass(frozen=True)
class CauchyClosedForm:
    """二元标准 Cauchy 的闭式结果"""
    alpha: float
    sicov: float
    denominator: float
    sicor: float


def normal_abs_moment(alpha: float) -> float:
    """E|Z|^α，Z ~ N(0,1)"""
    return float(np.exp(0.5 * alpha * np.log(2.0) + gammaln((alpha + 1.0) / 2.0) - 0.5 * np.log(np.pi)))


def _normal_bracket(rho: float, alpha: float) -> float:
    """2(4+2ρ)^{α/2} - 4^{α/2} - (4+4ρ)^{α/2}，按 2^α 提出公因子"""
    half = alpha / 2.0
    return 2.0 * (4.0 + 2.0 * rho) ** half - 2.0 ** alpha - 2.0 ** alpha * (1.0 + rho) ** half


def normal_closed_form(rho: float, alpha: Union[AlphaParam, float] = 1.0) -> NormalClosedForm:
    """标准正态边缘、相关系数 ρ 时的 siCov、siCor 与比值 R

    X1+Y1-X2-Y3 ~ N(0, 4+2ρ)，X1+Y2-X3-Y4 ~ N(0, 4)，X1+Y1-X2-Y2 ~ N(0, 4+4ρ)，
    X1-X2 ~ N(0, 2)，X1-X2+Y3-Y4 ~ N(0, 4)。
    """

    try:
        rho = float(rho)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"rho must be a real number, got {rho!r}") from exc
    if not np.isfinite(rho) or abs(rho) > 1.0:
        raise ValidationError(f"rho must lie in [-1,1], got {rho}")
    alpha = float(validate_alpha(getattr(alpha, "alpha", alpha)).alpha)

    moment = normal_abs_moment(alpha)
    bracket = _normal_bracket(rho, alpha)
    bracket_xx = _normal_bracket(1.0, alpha)
    denominator_bracket = 2.0 * 2.0 ** (alpha / 2.0) - 2.0 ** alpha

    return NormalClosedForm(
        rho=rho,
        alpha=alpha,
        sicov=moment * bracket,
        sicor=bracket / denominator_bracket,
        ratio_r=bracket / bracket_xx,
        sicov_xx=moment * bracket_xx,
        denominator=moment * denominator_bracket,
    )


def _cauchy_brackets(alpha: float):
    """(-4^α + 2(2+√2)^α - (2√2)^α, 2^{α+1} - 4^α)；前者用 expm1 消去常数项"""
    numerator = (
        -np.expm1(alpha * np.log(4.0))
        + 2.0 * np.expm1(alpha * np.log(2.0 + np.sqrt(2.0)))
        - np.expm1(alpha * np.log(2.0 * np.sqrt(2.0)))
    )
    denominator = 2.0 ** (alpha + 1.0) - 4.0 ** alpha
    return float(numerator), float(denominator)


def cauchy_closed_form(alpha: Union[AlphaParam, float]) -> float:
    """二元标准 Cauchy 的 siCor：(-4^α + 2(2+√2)^α - (2√2)^α) / (4(2^{α-1} - 4^{α-1}))，0 < α < 1"""

    alpha = float(validate_alpha(getattr(alpha, "alpha", alpha), AlphaContext.CAUCHY_MARGIN).alpha)
    numerator, denominator = _cauchy_brackets(alpha)
    return numerator / denominator


def cauchy_closed_form_terms(alpha: Union[AlphaParam, float]) -> CauchyClosedForm:
    """二元标准 Cauchy 的 siCov、分母与 siCor

    ∫_0^∞ (e^{-at} - e^{-bt}) 型组合 · t^{-1-α} dt = Γ(1-α)/α · (−a^α + b^α)，
    再乘以权函数常数 2 / c(1,α)。
    """

    alpha = float(validate_alpha(getattr(alpha, "alpha", alpha), AlphaContext.CAUCHY_MARGIN).alpha)
    numerator, denominator = _cauchy_brackets(alpha)
    scale = 2.0 / c_const(1, alpha).value * gamma(1.0 - alpha) / alpha
    return CauchyClosedForm(
        alpha=alpha,
        sicov=scale * numerator,
        denominator=scale * denominator,
        sicor=numerator / denominator,
    )
