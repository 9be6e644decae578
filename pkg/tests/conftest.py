# -*- coding: utf-8 -*-
"""测试公共夹具与按定义直接枚举的参照实现"""

from itertools import permutations, product
from pathlib import Path

import numpy as np
import pytest

from subindependence.core.data_model import EstimatorConfig, PairedSample
from subindependence.core.sample_loader import save_csv

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def _norm(v, alpha):
    return float(np.linalg.norm(np.atleast_1d(v)) ** alpha)


def brute_force_terms(sample: PairedSample, alpha: float, distinct: bool = True) -> dict:
    """直接按定义逐元组求平均；distinct=False 时为 V 统计量"""

    x, y, n = sample.x, sample.y, sample.n

    def tuples(r):
        if distinct:
            return list(permutations(range(n), r))
        return list(product(range(n), repeat=r))

    def avg(values):
        values = list(values)
        return sum(values) / len(values)

    pairs, triples, quads = tuples(2), tuples(3), tuples(4)
    return {
        "j1": avg(_norm(x[i] + y[i] - x[j] - y[k], alpha) for i, j, k in triples),
        "j2": avg(_norm(x[i] + y[j] - x[k] - y[l], alpha) for i, j, k, l in quads),
        "j3": avg(_norm(x[i] + y[i] - x[j] - y[j], alpha) for i, j in pairs),
        "k1": avg(_norm(x[i] - x[j], alpha) for i, j in pairs),
        "k2": avg(_norm(y[i] - y[j], alpha) for i, j in pairs),
        "k3": avg(_norm(x[i] - x[j] + y[k] - y[l], alpha) for i, j, k, l in quads),
    }


def brute_force_sicov(sample: PairedSample, alpha: float, distinct: bool = True) -> float:
    terms = brute_force_terms(sample, alpha, distinct)
    return 2.0 * terms["j1"] - terms["j2"] - terms["j3"]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def normal_sample(rng):
    """n=7 的二维相关正态样本"""
    x = rng.standard_normal((7, 2))
    y = 0.6 * x + 0.8 * rng.standard_normal((7, 2))
    return PairedSample(x, y)


@pytest.fixture
def scalar_sample(rng):
    """n=30 的一维相关样本"""
    x = rng.standard_normal(30)
    y = 0.5 * x + rng.standard_normal(30)
    return PairedSample(x, y)


@pytest.fixture
def complete_config():
    return EstimatorConfig.from_config(mode="u")


@pytest.fixture
def lattice_sample():
    """与 sub_independent_lattice 分布完全一致的 18 行经验样本"""
    counts = np.array([[2, 3, 1], [1, 2, 3], [3, 1, 2]])
    rows = [(i, j) for i in range(3) for j in range(3) for _ in range(counts[i, j])]
    data = np.array(rows, dtype=float)
    return PairedSample(data[:, 0], data[:, 1])


@pytest.fixture
def write_sample(tmp_path):
    """把 PairedSample 写到临时 CSV 并返回路径"""

    def write(sample: PairedSample, name: str = "sample.csv") -> Path:
        return save_csv(sample, tmp_path / name)

    return write


def brute_force_dcov2(sample: PairedSample) -> float:
    """dCov^2 = S1 + S2 - 2 S3，按距离的直接二重/三重求和"""

    n = sample.n
    a = [[float(np.linalg.norm(sample.x[k] - sample.x[l])) for l in range(n)] for k in range(n)]
    b = [[float(np.linalg.norm(sample.y[k] - sample.y[l])) for l in range(n)] for k in range(n)]
    s1 = sum(a[k][l] * b[k][l] for k in range(n) for l in range(n)) / n ** 2
    s2 = sum(map(sum, a)) / n ** 2 * sum(map(sum, b)) / n ** 2
    s3 = sum(a[k][l] * b[k][m] for k in range(n) for l in range(n) for m in range(n)) / n ** 3
    return s1 + s2 - 2.0 * s3
