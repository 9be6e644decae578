# utils/__init__.py
"""
工具函数模块
包含下标元组处理与排序前缀和工具
"""

from .tuple_utils import TupleUtils
from .sort_utils import SortUtils

__all__ = ['TupleUtils', 'SortUtils']
