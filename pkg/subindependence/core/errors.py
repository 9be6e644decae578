#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
异常定义模块
统一的异常层次，命令行入口据此映射退出码
"""

from typing import Optional


class SubIndependenceError(Exception):
    """工具包所有异常的基类"""


class ValidationError(SubIndependenceError, ValueError):
    """输入校验失败（数据文件、参数范围等），命令行退出码 2"""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        self.row = row
        self.column = column
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column {column}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)


class EstimatorError(SubIndependenceError, ArithmeticError):
    """数值计算失败（样本量不足、siCor 分母非正等），命令行退出码 3"""


class QuadratureError(EstimatorError):
    """数值积分在细分上限内未达到容差"""
