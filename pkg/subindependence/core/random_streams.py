#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
随机数子流模块
所有随机抽样都从 (seed, key) 派生的独立子流获得，保证任意并行度下结果可复现
"""

from typing import Tuple, Union

import numpy as np

RNG_ALGORITHM = "numpy.PCG64/SeedSequence"

# 元组族的子流编号，同族的统计量共用一份元组样本
FAMILY_STREAM_IDS = {
    "pairs": 0,
    "triples": 1,
    "quadruples": 2,
}

# 其他消费者的子流前缀，避免与元组族编号冲突
PERMUTATION_STREAM = 10
REPLICATE_STREAM = 11
K1_ROW_STREAM = 12
GENERATOR_STREAM = 13

SeedKey = Union[int, Tuple[int, ...]]


def rng_label() -> str:
    """返回带版本号的随机数算法名称，写入输出结果"""
    return f"{RNG_ALGORITHM} (numpy {np.__version__})"


def substream(seed: int, *key: int) -> np.random.Generator:
    """根据 (seed, key) 构造确定性的独立随机数生成器"""
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(sequence))


def derive_seed(seed: int, *key: int) -> int:
    """从子流派生一个 64 位无符号整数种子（用于嵌套调用）"""
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
