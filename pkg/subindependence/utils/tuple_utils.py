#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
元组处理工具模块
包含下标元组的枚举、抽样、范数幂计算与分块求和
"""

from typing import Callable, Iterable, Iterator, List, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

# 线性组合布局：(边缘, 元组位置, 符号)
Layout = Sequence[Tuple[str, int, int]]


class TupleUtils:
    """下标元组工具类"""

    @staticmethod
    def combine(x: np.ndarray, y: np.ndarray, tuples: np.ndarray, layout: Layout) -> np.ndarray:
        """按布局计算每个元组对应的向量组合 Σ sign·margin[tuple[pos]]，返回 (m, p)"""

        margins = {"x": x, "y": y}
        total = np.zeros((tuples.shape[0], x.shape[1]), dtype=float)
        for margin, position, sign in layout:
            rows = margins[margin][tuples[:, position]]
            if sign > 0:
                total += rows
            else:
                total -= rows
        return total

    @staticmethod
    def norm_power(vectors: np.ndarray, alpha: float) -> np.ndarray:
        """逐行欧氏范数的 α 次幂"""

        if vectors.shape[-1] == 1:
            norms = np.abs(vectors[..., 0])
        else:
            norms = np.sqrt(np.einsum("...j,...j->...", vectors, vectors))
        if alpha == 1.0:
            return norms
        return np.power(norms, alpha)

    @staticmethod
    def distinct_mask(tuples: np.ndarray) -> np.ndarray:
        """判断每个元组内下标是否两两不同"""

        if tuples.shape[1] < 2:
            return np.ones(tuples.shape[0], dtype=bool)
        ordered = np.sort(tuples, axis=1)
        return np.all(np.diff(ordered, axis=1) != 0, axis=1)

    @staticmethod
    def sample_distinct_tuples(n: int, r: int, budget: int, rng: np.random.Generator) -> np.ndarray:
        """均匀抽取 budget 个下标两两不同的有序 r 元组（拒绝含重复下标的抽样）"""

        if n < r:
            raise ValueError(f"cannot draw {r} distinct indices from n={n}")

        # 接受率 n!/((n-r)! n^r)，按接受率放大每轮抽样量
        accept = float(np.prod([(n - k) / n for k in range(r)]))
        collected: List[np.ndarray] = []
        have = 0
        while have < budget:
            need = budget - have
            draw = int(np.ceil(need / accept * 1.1)) + 16
            candidates = rng.integers(0, n, size=(draw, r))
            kept = candidates[TupleUtils.distinct_mask(candidates)]
            collected.append(kept)
            have += kept.shape[0]
        return np.concatenate(collected)[:budget]

    @staticmethod
    def iter_distinct_tuples(n: int, r: int) -> Iterator[np.ndarray]:
        """按首下标分块枚举全部下标两两不同的有序 r 元组"""

        if r == 1:
            yield np.arange(n)[:, None]
            return
        rest = np.indices((n,) * (r - 1)).reshape(r - 1, -1).T
        rest = rest[TupleUtils.distinct_mask(rest)]
        for first in range(n):
            block = rest[np.all(rest != first, axis=1)]
            yield np.column_stack([np.full(block.shape[0], first), block])

    @staticmethod
    def iter_all_tuples(n: int, r: int) -> Iterator[np.ndarray]:
        """按首下标分块枚举全部可重复的 r 元组（V 统计量）"""

        if r == 1:
            yield np.arange(n)[:, None]
            return
        rest = np.indices((n,) * (r - 1)).reshape(r - 1, -1).T
        for first in range(n):
            yield np.column_stack([np.full(rest.shape[0], first), rest])

    @staticmethod
    def split_chunks(tuples: np.ndarray, chunk_size: int) -> List[np.ndarray]:
        """按固定大小切分元组，切分边界只取决于元组数与 chunk_size"""

        return [tuples[start:start + chunk_size] for start in range(0, tuples.shape[0], chunk_size)]

    @staticmethod
    def ordered_sum(
        func: Callable[[np.ndarray], np.ndarray],
        chunks: Iterable[np.ndarray],
        n_jobs: int = 1,
    ) -> np.ndarray:
        """对每个分块求 func 的部分和，并按分块顺序累加，结果与线程数无关"""

        if n_jobs > 1:
            partials = Parallel(n_jobs=n_jobs, backend="threading")(
                delayed(func)(chunk) for chunk in chunks
            )
        else:
            partials = (func(chunk) for chunk in chunks)

        total = None
        for partial in partials:
            partial = np.asarray(partial, dtype=float)
            total = partial.copy() if total is None else total + partial
        if total is None:
            raise ValueError("no chunks to sum")
        return total
