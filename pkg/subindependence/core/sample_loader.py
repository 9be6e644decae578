#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
样本文件管理模块
负责成对样本 CSV 的读取、校验与回写
"""

import logging
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd

from .data_model import PairedSample
from .errors import ValidationError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class SampleLoader:
    """成对样本 CSV 读写类，列名固定为 x1..xp, y1..yp"""

    def __init__(self, encoding: str = "utf-8"):
        """初始化样本加载器"""
        self.encoding = encoding

    def load(self, path: PathLike, p: Optional[int] = None) -> PairedSample:
        """读取 CSV 并返回校验后的 PairedSample，行序保持不变"""

        path = Path(path)
        logger.info("[SampleLoader] 读取样本文件: %s", path)

        if not path.exists():
            raise ValidationError(f"input file not found: {path}")

        try:
            frame = pd.read_csv(
                path,
                dtype=str,
                keep_default_na=False,
                encoding=self.encoding,
                skipinitialspace=True,
            )
        except pd.errors.EmptyDataError as exc:
            raise ValidationError(f"empty file: {path}") from exc
        except pd.errors.ParserError as exc:
            raise ValidationError(f"malformed CSV: {exc}") from exc

        columns = [str(c).strip() for c in frame.columns]
        frame.columns = columns
        x_columns, y_columns = self._split_columns(columns, p)

        if frame.shape[0] == 0:
            raise ValidationError(f"empty file: no data rows in {path}")

        x = self._parse_block(frame, x_columns)
        y = self._parse_block(frame, y_columns)

        sample = PairedSample(x, y)
        logger.info("[SampleLoader] 样本读取完成: n=%d, p=%d", sample.n, sample.p)
        return sample

    def save(self, sample: PairedSample, path: PathLike) -> Path:
        """按 x1..xp, y1..yp 写出样本，浮点数使用可往返的最短表示"""

        path = Path(path)
        data = np.hstack([sample.x, sample.y])
        columns = [f"x{j}" for j in range(1, sample.p + 1)] + [f"y{j}" for j in range(1, sample.p + 1)]
        frame = pd.DataFrame(data, columns=columns)
        frame.to_csv(path, index=False, encoding=self.encoding, float_format=lambda v: repr(float(v)))
        logger.info("[SampleLoader] 样本已写出: %s", path)
        return path

    @staticmethod
    def _split_columns(columns: List[str], p: Optional[int]):
        """校验表头：必须恰好是 x1..xp 后接 y1..yp"""

        x_columns = [c for c in columns if c.lower().startswith("x")]
        y_columns = [c for c in columns if c.lower().startswith("y")]
        others = [c for c in columns if c not in x_columns and c not in y_columns]

        if others:
            raise ValidationError(f"unexpected column(s) {others}; header must be x1..xp,y1..yp")
        if len(x_columns) != len(y_columns):
            raise ValidationError(
                f"margin dimension mismatch: x columns {x_columns} vs y columns {y_columns}"
            )

        dim = len(x_columns)
        if dim == 0:
            raise ValidationError("header must name columns x1..xp,y1..yp")
        if p is not None and dim != p:
            raise ValidationError(f"declared dimension p={p} but file has {dim} columns per margin")

        expected = [f"x{j}" for j in range(1, dim + 1)] + [f"y{j}" for j in range(1, dim + 1)]
        if [c.lower() for c in columns] != expected:
            raise ValidationError(f"header {columns} must be exactly {expected}")

        return x_columns, y_columns

    @staticmethod
    def _parse_block(frame: pd.DataFrame, columns: List[str]) -> np.ndarray:
        """逐列转换为浮点数，报告第一个非法单元格的行列位置（数据行从 1 开始计）"""

        block = np.empty((frame.shape[0], len(columns)), dtype=float)
        for j, name in enumerate(columns):
            raw = frame[name].astype(str).str.strip()
            parsed = pd.to_numeric(raw, errors="coerce")
            invalid = parsed.isna() | ~np.isfinite(parsed.to_numpy(dtype=float))
            if invalid.any():
                row = int(np.flatnonzero(invalid.to_numpy())[0])
                cell = raw.iloc[row]
                if cell == "":
                    reason = "missing value"
                elif cell.lower().lstrip("+-") in ("nan", "inf", "infinity"):
                    reason = f"non-finite value '{cell}'"
                else:
                    reason = f"non-numeric cell '{cell}'"
                raise ValidationError(reason, row=row + 1, column=name)
            block[:, j] = parsed.to_numpy(dtype=float)
        return block


def load_csv(path: PathLike, p: Optional[int] = None) -> PairedSample:
    """读取成对样本 CSV"""
    return SampleLoader().load(path, p)


def save_csv(sample: PairedSample, path: PathLike) -> Path:
    """写出成对样本 CSV"""
    return SampleLoader().save(sample, path)
