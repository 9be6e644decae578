#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
离散联合分布模块
一维离散联合分布 (X, Y) 的表示、JSON 读取、内置测试分布，
以及按原子穷举得到的总体六项统计量与 SUM（和的分布等于边缘卷积）检查
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Sequence, Tuple, Union

import numpy as np

from ..core.data_model import (
    AlphaParam,
    DependenceEstimate,
    EstimateKind,
    EstimatorMode,
    validate_alpha,
)
from ..core.errors import ValidationError
from ..estimator_config import get_quadrature_config
from ..kernels.term_statistics import TermStatistics

logger = logging.getLogger(__name__)

PROB_TOLERANCE = 1e-12
SUPPORT_DECIMALS = 12


def merge_atoms(values: Sequence[float], probs: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    """合并相同取值的原子，返回 (升序取值, 概率)"""

    values = np.asarray(values, dtype=float)
    probs = np.asarray(probs, dtype=float)
    keys, inverse = np.unique(np.round(values, SUPPORT_DECIMALS), return_inverse=True)
    return keys, np.bincount(inverse.ravel(), weights=probs.ravel(), minlength=keys.shape[0])


@dataclass(frozen=True)
class DiscreteJointLaw:
    """一维离散联合分布，原子为 (x, y, prob)"""
    atoms: Tuple[Tuple[float, float, float], ...]
    name: str = ""

    def __post_init__(self):
        atoms = tuple(tuple(float(v) for v in atom) for atom in self.atoms)
        if not atoms:
            raise ValidationError("discrete law needs at least one atom")
        for index, atom in enumerate(atoms):
            if len(atom) != 3:
                raise ValidationError(f"atom {index} must be [x, y, prob], got {list(atom)}")
            if not all(np.isfinite(atom)):
                raise ValidationError(f"atom {index} has non-finite entries: {list(atom)}")
            if not atom[2] > 0:
                raise ValidationError(f"atom {index} has non-positive probability {atom[2]}")
        total = sum(atom[2] for atom in atoms)
        if abs(total - 1.0) > PROB_TOLERANCE:
            raise ValidationError(f"atom probabilities must sum to 1, got {total!r}")
        object.__setattr__(self, "atoms", atoms)

    @property
    def m(self) -> int:
        return len(self.atoms)

    @property
    def xs(self) -> np.ndarray:
        return np.array([a[0] for a in self.atoms])

    @property
    def ys(self) -> np.ndarray:
        return np.array([a[1] for a in self.atoms])

    @property
    def probs(self) -> np.ndarray:
        return np.array([a[2] for a in self.atoms])

    def marginal_x(self) -> Tuple[np.ndarray, np.ndarray]:
        return merge_atoms(self.xs, self.probs)

    def marginal_y(self) -> Tuple[np.ndarray, np.ndarray]:
        return merge_atoms(self.ys, self.probs)

    def sum_law(self) -> Tuple[np.ndarray, np.ndarray]:
        """X + Y 的分布"""
        return merge_atoms(self.xs + self.ys, self.probs)

    def convolution_law(self) -> Tuple[np.ndarray, np.ndarray]:
        """边缘卷积 P_X * P_Y，即 X、Y 独立时 X + Y 的分布"""
        xv, xp = self.marginal_x()
        yv, yp = self.marginal_y()
        return merge_atoms(np.add.outer(xv, yv).ravel(), np.multiply.outer(xp, yp).ravel())

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "atoms": [list(a) for a in self.atoms]}


@dataclass(frozen=True)
class QuadratureSpec:
    """数值积分设置"""
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    t_max: float = 200.0
    subdivision_limit: int = 200

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol", "t_max"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value <= 0:
                raise ValidationError(f"{name} must be positive, got {getattr(self, name)!r}")
            object.__setattr__(self, name, value)
        limit = self.subdivision_limit
        if isinstance(limit, bool) or int(limit) != limit or limit < 1:
            raise ValidationError(f"subdivision_limit must be a positive integer, got {limit!r}")
        object.__setattr__(self, "subdivision_limit", int(limit))

    @classmethod
    def from_config(cls, **overrides: Any) -> "QuadratureSpec":
        settings = get_quadrature_config()
        unknown = set(overrides) - set(settings)
        if unknown:
            raise ValidationError(f"unknown quadrature option(s): {', '.join(sorted(unknown))}")
        settings.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**settings)


def load_law_json(path: Union[str, Path]) -> DiscreteJointLaw:
    """读取 {"atoms": [[x, y, prob], ...]} 格式的分布文件"""

    path = Path(path)
    if not path.exists():
        raise ValidationError(f"law file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed law JSON: {exc}") from exc

    if not isinstance(payload, dict) or not isinstance(payload.get("atoms"), list):
        raise ValidationError('law JSON must be an object with an "atoms" list')
    for index, atom in enumerate(payload["atoms"]):
        if not isinstance(atom, (list, tuple)):
            raise ValidationError(f"atom {index} must be [x, y, prob], got {atom!r}")
    try:
        atoms = tuple(tuple(float(v) for v in atom) for atom in payload["atoms"])
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"non-numeric atom entry: {exc}") from exc

    law = DiscreteJointLaw(atoms=atoms, name=str(payload.get("name", path.stem)))
    logger.info("[DiscreteLaw] 读取分布 %s: m=%d", law.name, law.m)
    return law


# ---------------------------------------------------------------------------
# 内置测试分布
# ---------------------------------------------------------------------------

def rademacher_identity() -> DiscreteJointLaw:
    """X Rademacher，Y = X"""
    return DiscreteJointLaw(((1, 1, 0.5), (-1, -1, 0.5)), name="rademacher_identity")


def rademacher_negation() -> DiscreteJointLaw:
    """X Rademacher，Y = -X"""
    return DiscreteJointLaw(((1, -1, 0.5), (-1, 1, 0.5)), name="rademacher_negation")


def rademacher_product() -> DiscreteJointLaw:
    """X、Y 独立 Rademacher"""
    return DiscreteJointLaw(
        tuple((sx, sy, 0.25) for sx in (1, -1) for sy in (1, -1)), name="rademacher_product"
    )


def sub_independent_lattice() -> DiscreteJointLaw:
    """{0,1,2}^2 上边缘均匀、和的分布等于卷积但不独立的分布"""

    table = np.array([
        [1 / 9, 1 / 6, 1 / 18],
        [1 / 18, 1 / 9, 1 / 6],
        [1 / 6, 1 / 18, 1 / 9],
    ])
    atoms = tuple((i, j, table[i, j]) for i in range(3) for j in range(3))
    return DiscreteJointLaw(atoms, name="sub_independent_lattice")


LAW_FIXTURES: Dict[str, Callable[[], DiscreteJointLaw]] = {
    "rademacher_identity": rademacher_identity,
    "rademacher_negation": rademacher_negation,
    "rademacher_product": rademacher_product,
    "sub_independent_lattice": sub_independent_lattice,
}


def get_law_fixture(name: str) -> DiscreteJointLaw:
    """按名称取内置分布"""
    try:
        return LAW_FIXTURES[name]()
    except KeyError as exc:
        raise ValidationError(
            f"unknown law '{name}', expected one of: {', '.join(LAW_FIXTURES)}"
        ) from exc


def difference_atoms(values: Sequence[float], probs: Sequence[float]) -> List[Tuple[float, float]]:
    """X1 - X2（X1、X2 独立同分布）的原子列表"""
    values = np.asarray(values, dtype=float)
    probs = np.asarray(probs, dtype=float)
    merged, weights = merge_atoms(
        np.subtract.outer(values, values).ravel(), np.multiply.outer(probs, probs).ravel()
    )
    return [(float(v), float(w)) for v, w in zip(merged, weights) if w > 0]


# ---------------------------------------------------------------------------
# 总体值
# ---------------------------------------------------------------------------

def _expect(diffs: np.ndarray, weights: np.ndarray, alpha: float) -> float:
    return float(np.sum(weights * np.abs(diffs) ** alpha))


def population_terms(law: DiscreteJointLaw, alpha: Union[AlphaParam, float] = 1.0) -> TermStatistics:
    """按原子组合穷举计算总体 J1、J2、J3、K1、K2、K3（至多 m^4 个组合）"""

    alpha = float(validate_alpha(getattr(alpha, "alpha", alpha)).alpha)
    x, y, p = law.xs, law.ys, law.probs
    s = x + y
    m = law.m

    # 各轴依次对应第 1、2、3、4 个独立抽样的原子
    p2 = np.multiply.outer(p, p)
    p3 = np.multiply.outer(p2, p)
    p4 = np.multiply.outer(p3, p)

    j1 = _expect(s[:, None, None] - x[None, :, None] - y[None, None, :], p3, alpha)
    j2 = _expect(
        x[:, None, None, None] + y[None, :, None, None] - x[None, None, :, None] - y[None, None, None, :],
        p4, alpha,
    )
    j3 = _expect(s[:, None] - s[None, :], p2, alpha)
    k1 = _expect(x[:, None] - x[None, :], p2, alpha)
    k2 = _expect(y[:, None] - y[None, :], p2, alpha)
    k3 = _expect(
        x[:, None, None, None] - x[None, :, None, None] + y[None, None, :, None] - y[None, None, None, :],
        p4, alpha,
    )

    return TermStatistics(
        j1=j1, j2=j2, j3=j3, k1=k1, k2=k2, k3=k3,
        mode="population", alpha=alpha,
        tuples_used={"j1": m ** 3, "j2": m ** 4, "j3": m ** 2, "k1": m ** 2, "k2": m ** 2, "k3": m ** 4},
    )


def _snap_unit(value: float, tol: float = 1e-12) -> float:
    """消除舍入误差造成的 [0,1] 微小越界"""
    if -tol < value < 0.0:
        return 0.0
    if 1.0 < value < 1.0 + tol:
        return 1.0
    return value


def population_dependence(
    law: DiscreteJointLaw, alpha: Union[AlphaParam, float] = 1.0
) -> Tuple[DependenceEstimate, DependenceEstimate]:
    """总体 siCov 与 siCor，返回 (siCov, siCor)"""

    terms = population_terms(law, alpha)
    sicov = terms.sicov
    if abs(sicov) < 1e-12 * max(1.0, terms.j2):
        sicov = 0.0

    warnings = []
    x_values, _ = law.marginal_x()
    y_values, _ = law.marginal_y()
    if x_values.shape[0] == 1 or y_values.shape[0] == 1:
        sicor = 0.0
        warnings.append("degenerate margin; siCor defined as 0")
    else:
        sicor = _snap_unit(sicov / terms.denominator)

    common = dict(alpha=terms.alpha, mode=EstimatorMode.POPULATION, n=law.m, warnings=tuple(warnings))
    return (
        DependenceEstimate(value=sicov, kind=EstimateKind.SICOV, **common),
        DependenceEstimate(value=sicor, kind=EstimateKind.SICOR, **common),
    )


def sum_convolution_gap(law: DiscreteJointLaw) -> float:
    """max_s |P(X+Y=s) - (P_X*P_Y)(s)|；为 0 当且仅当 X、Y 次独立"""

    sv, sp = law.sum_law()
    cv, cp = law.convolution_law()
    keys = np.union1d(sv, cv)
    joint = np.zeros(keys.shape[0])
    conv = np.zeros(keys.shape[0])
    joint[np.searchsorted(keys, sv)] = sp
    conv[np.searchsorted(keys, cv)] = cp
    return float(np.max(np.abs(joint - conv)))


def is_sub_independent(law: DiscreteJointLaw, tol: float = 1e-12) -> bool:
    return sum_convolution_gap(law) <= tol
