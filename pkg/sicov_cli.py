#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
次独立协方差命令行入口

示例:
    python sicov_cli.py estimate --input sample.csv --alpha 1.0
    python sicov_cli.py test --input sample.csv --permutations 999 --ci
    python sicov_cli.py simulate --scenario normal-grid --out normal_grid.csv
    python sicov_cli.py oracle --law rademacher_identity
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from subindependence.tool_entry import SCENARIO_COLUMNS, SCENARIOS, call_subindependence

LOGGER_NAME = "subindependence"
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"

SCENARIO_HELP = "; ".join(f"{name}: {', '.join(cols)}" for name, cols in SCENARIO_COLUMNS.items())


def setup_logging(level: str = "WARNING", log_file: Optional[Path] = None) -> logging.Logger:
    """初始化日志：控制台输出到标准错误，指定 --log-file 时另写 DEBUG 级别文件"""

    logger = logging.getLogger(LOGGER_NAME)
    logger.handlers.clear()
    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    formatter = logging.Formatter(LOG_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, level.upper(), logging.WARNING))
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file is not None:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
        logger.info("日志写入路径: %s", log_file)

    return logger


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--input", default=None, help="成对样本 CSV（列 x1..xp, y1..yp）；oracle 子命令为分布 JSON")
    parser.add_argument("--alpha", type=float, default=None, help="指数 α ∈ (0,2)，默认 1.0")
    parser.add_argument(
        "--mode",
        choices=["auto", "u", "u-incomplete", "v-fast"],
        default=None,
        help="估计模式；auto 在 n 不超过阈值时用完全 U 统计量，否则用不完全 U 统计量",
    )
    parser.add_argument("--budget", type=int, default=None, help="不完全 U 统计量每个元组族的抽样数")
    parser.add_argument("--permutations", type=int, default=None, help="置换次数，至少 19，默认 999")
    parser.add_argument("--level", type=float, default=None, help="检验水平，默认 0.05")
    parser.add_argument("--seed", type=int, default=None, help="64 位无符号整数种子")
    parser.add_argument("--threads", type=int, default=None, help="并行线程数上限，默认 1")
    parser.add_argument("--format", choices=["json", "csv"], default=None, help="输出格式")
    parser.add_argument("--out", default=None, help="输出文件；不指定时写到标准输出")
    parser.add_argument("--log-level", default="WARNING", help="控制台日志级别，默认 WARNING")
    parser.add_argument("--log-file", type=Path, default=None, help="DEBUG 级别日志文件")
    return parser


def _build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(description="α-次独立协方差 / 相关系数的估计、检验与模拟")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    estimate = subparsers.add_parser("estimate", parents=[common], help="siCov、siCor、dCor、Pearson 点估计")
    estimate.add_argument("--clamp-sicor", action="store_true", help="将经验 siCor 截断到 [0,1]")

    test = subparsers.add_parser("test", parents=[common], help="n·siCov 置换检验")
    test.add_argument("--exit-on-reject", action="store_true", help="拒绝零假设时以退出码 1 结束")
    test.add_argument("--ci", action="store_true", help="附带渐近正态置信区间")
    test.add_argument("--ci-level", type=float, default=None, help="置信水平，默认 0.95")
    test.add_argument("--k1-budget", type=int, default=None, help="每行 k1 估计的三元组抽样数")

    simulate = subparsers.add_parser(
        "simulate", parents=[common], help="模拟与闭式值表格", epilog=f"CSV 列 -- {SCENARIO_HELP}"
    )
    simulate.add_argument("--scenario", choices=list(SCENARIOS), required=True, help="模拟场景")
    simulate.add_argument("--n", type=int, default=None, help="样本量，覆盖场景默认值")
    simulate.add_argument("--replicates", type=int, default=None, help="null-sim 重复次数，至少 100")
    simulate.add_argument("--runs", type=int, default=None, help="power-x2 重复检验次数")
    simulate.add_argument("--generator", default=None, help="null-sim 样本生成器名称")

    oracle = subparsers.add_parser("oracle", parents=[common], help="离散分布的数值积分与总体值")
    oracle.add_argument("--law", default=None, help="内置分布名称，例如 rademacher_identity")

    return parser


def _parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return _build_parser().parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    args = _parse_arguments(argv)
    setup_logging(args.log_level, args.log_file)
    return call_subindependence(vars(args))


if __name__ == "__main__":
    sys.exit(main())
