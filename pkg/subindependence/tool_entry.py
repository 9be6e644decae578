"""命令行与脚本调用的统一入口：参数整理、子命令分发、退出码映射"""
from __future__ import annotations

import json
import logging
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Tuple

import pandas as pd

from .core.data_model import EstimatorConfig, EstimatorMode, validate_alpha
from .core.errors import EstimatorError, SubIndependenceError, ValidationError
from .core.random_streams import rng_label
from .core.sample_loader import load_csv
from .estimator_config import DEFAULT_ALPHA, get_inference_config, get_simulation_config
from .estimators.baselines import dcov_dcor_baseline, pearson_baseline
from .estimators.sicov_estimator import sicov_sicor
from .inference.asymptotic import asymptotic_ci
from .inference.permutation import MIN_PERMUTATIONS, permutation_test
from .inference.simulation import (
    cauchy_grid,
    normal_grid,
    null_distribution_sim,
    power_study,
    summarize_null_draws,
)
from .oracle.discrete_law import (
    QuadratureSpec,
    get_law_fixture,
    is_sub_independent,
    load_law_json,
    population_dependence,
    sum_convolution_gap,
)
from .oracle.quadrature import lemma21_check, quadrature_sicov_details

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

SUBCOMMANDS = ("estimate", "test", "simulate", "oracle")
SCENARIOS = ("normal-grid", "cauchy-grid", "null-sim", "power-x2")
FORMATS = ("json", "csv")

# 各子命令的默认输出格式
DEFAULT_FORMATS = {"estimate": "json", "test": "json", "simulate": "csv", "oracle": "json"}

# simulate 子命令各场景的 CSV 列
SCENARIO_COLUMNS = {
    "normal-grid": [
        "rho", "n", "closed_form_sicov", "estimate_sicov",
        "closed_form_sicor", "estimate_sicor", "abs_error_sicor", "ratio_r",
    ],
    "cauchy-grid": ["alpha", "sicov", "denominator", "sicor"],
    "null-sim": ["replicate", "draw"],
    "power-x2": ["scenario", "n", "runs", "rejections", "rate", "level"],
}


@dataclass(frozen=True)
class RunConfig:
    """一次命令行运行的完整配置；全部字段都有默认值"""
    subcommand: str
    input: Optional[Path] = None
    alpha: float = DEFAULT_ALPHA
    mode: Optional[str] = None
    tuple_budget: Optional[int] = None
    permutations: int = 999
    level: float = 0.05
    seed: Optional[int] = None
    threads: int = 1
    output_format: str = "json"
    out: Optional[Path] = None
    clamp_sicor: bool = False
    exit_on_reject: bool = False
    ci: bool = False
    ci_level: float = 0.95
    k1_budget: int = 1000
    scenario: Optional[str] = None
    law: Optional[str] = None
    n: Optional[int] = None
    replicates: Optional[int] = None
    runs: Optional[int] = None
    generator: Optional[str] = None

    def estimator_config(self, default_mode: Optional[str] = None) -> EstimatorConfig:
        """转换为估计配置；未指定 --mode 时使用 default_mode（缺省为 auto）"""
        return EstimatorConfig.from_config(
            mode=self.mode or default_mode,
            tuple_budget=self.tuple_budget,
            seed=self.seed,
            n_jobs=self.threads,
        )


# ---------------------------------------------------------------------------
# 参数解析
# ---------------------------------------------------------------------------

def _parse_optional_int(value: Any, label: str) -> Optional[int]:
    """将可选参数转换为整数"""
    if value is None:
        return None
    if isinstance(value, str) and value.strip() == "":
        return None
    if isinstance(value, bool):
        raise ValidationError(f"{label} must be an integer, got {value!r}")
    try:
        parsed = int(value)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{label} must be an integer, got {value!r}") from exc
    if parsed != value and not isinstance(value, str):
        raise ValidationError(f"{label} must be an integer, got {value!r}")
    return parsed


def _parse_positive_int(value: Any, label: str, default: Optional[int] = None) -> Optional[int]:
    """解析正整数，并提供默认值"""
    parsed = _parse_optional_int(value, label)
    if parsed is None:
        return default
    if parsed < 1:
        raise ValidationError(f"{label} must be >= 1, got {parsed}")
    return parsed


def _parse_probability(value: Any, label: str, default: float) -> float:
    """解析 (0,1) 内的概率参数"""
    if value is None:
        return default
    try:
        parsed = float(value)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{label} must be a number in (0,1), got {value!r}") from exc
    if not 0.0 < parsed < 1.0:
        raise ValidationError(f"{label} must lie in (0,1), got {parsed}")
    return parsed


def _parse_bool(value: Any) -> bool:
    """解析布尔型参数，兼容字符串写法"""
    if value is None:
        return False
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in {"1", "true", "yes", "t", "y"}:
            return True
        if lowered in {"0", "false", "no", "f", "n", ""}:
            return False
    raise ValidationError(f"invalid boolean value: {value!r}")


def _parse_choice(value: Any, label: str, choices, default: Optional[str] = None) -> Optional[str]:
    if value is None:
        return default
    lowered = str(value).strip().lower()
    if lowered not in choices:
        raise ValidationError(f"unknown {label} '{value}', expected one of: {', '.join(choices)}")
    return lowered


def _normalize_arguments(arguments: Dict[str, Any]) -> RunConfig:
    """整理原始参数（argparse 命名空间字典或脚本传入的字典），转换为 RunConfig"""

    subcommand = _parse_choice(arguments.get("subcommand"), "subcommand", SUBCOMMANDS)
    if subcommand is None:
        raise ValidationError(f"missing subcommand, expected one of: {', '.join(SUBCOMMANDS)}")

    alpha = validate_alpha(DEFAULT_ALPHA if arguments.get("alpha") is None else arguments["alpha"]).alpha

    mode = arguments.get("mode")
    if mode is not None:
        mode = EstimatorMode.parse(mode).value

    permutations = _parse_positive_int(
        arguments.get("permutations"), "permutations", get_inference_config()["permutations"]
    )
    if subcommand == "test" and permutations < MIN_PERMUTATIONS:
        raise ValidationError(
            f"--permutations must be >= {MIN_PERMUTATIONS} so that a level-0.05 test can reject, "
            f"got {permutations}"
        )

    seed = _parse_optional_int(arguments.get("seed"), "seed")
    if seed is not None and not 0 <= seed < 2 ** 64:
        raise ValidationError(f"seed must be a 64-bit unsigned integer, got {seed}")

    input_path = arguments.get("input")
    out_path = arguments.get("out")
    output_format = _parse_choice(
        arguments.get("format"), "output format", FORMATS, DEFAULT_FORMATS[subcommand]
    )

    scenario = _parse_choice(arguments.get("scenario"), "scenario", SCENARIOS)
    if subcommand == "simulate" and scenario is None:
        raise ValidationError(f"simulate needs --scenario, one of: {', '.join(SCENARIOS)}")
    if subcommand in ("estimate", "test") and not input_path:
        raise ValidationError(f"{subcommand} needs --input pointing to a CSV file")
    if subcommand == "oracle" and not input_path and not arguments.get("law"):
        raise ValidationError("oracle needs --law NAME or --input pointing to a law JSON file")

    return RunConfig(
        subcommand=subcommand,
        input=Path(input_path) if input_path else None,
        alpha=alpha,
        mode=mode,
        tuple_budget=_parse_positive_int(arguments.get("budget"), "budget"),
        permutations=permutations,
        level=_parse_probability(arguments.get("level"), "level", get_inference_config()["level"]),
        seed=seed,
        threads=_parse_positive_int(arguments.get("threads"), "threads", 1),
        output_format=output_format,
        out=Path(out_path) if out_path else None,
        clamp_sicor=_parse_bool(arguments.get("clamp_sicor")),
        exit_on_reject=_parse_bool(arguments.get("exit_on_reject")),
        ci=_parse_bool(arguments.get("ci")),
        ci_level=_parse_probability(arguments.get("ci_level"), "ci-level", get_inference_config()["ci_level"]),
        k1_budget=_parse_positive_int(arguments.get("k1_budget"), "k1-budget", get_inference_config()["k1_budget"]),
        scenario=scenario,
        law=arguments.get("law"),
        n=_parse_positive_int(arguments.get("n"), "n"),
        replicates=_parse_positive_int(arguments.get("replicates"), "replicates"),
        runs=_parse_positive_int(arguments.get("runs"), "runs"),
        generator=arguments.get("generator"),
    )


def _build_wrapper_error(kind: str, message: str) -> Dict[str, Any]:
    """构造封装层的错误响应"""
    return {"success": False, "error": f"{kind}: {message}"}


# ---------------------------------------------------------------------------
# 输出
# ---------------------------------------------------------------------------

def _emit(payload: Any, config: RunConfig, stdout: TextIO, columns: Optional[List[str]] = None) -> None:
    """按格式写出结果；指定 --out 时写入文件，否则写到标准输出"""

    if config.output_format == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        flat = [
            {k: (";".join(v) if isinstance(v, (list, tuple)) else v) for k, v in row.items()
             if not isinstance(v, dict)}
            for row in rows
        ]
        text = pd.DataFrame(flat, columns=columns).to_csv(index=False, float_format="%.17g")
    else:
        text = json.dumps(payload, ensure_ascii=False, indent=2) + "\n"

    if config.out is not None:
        config.out.write_text(text, encoding="utf-8")
        logger.info("[ToolEntry] 结果已写入: %s", config.out)
    else:
        stdout.write(text)


# ---------------------------------------------------------------------------
# 子命令
# ---------------------------------------------------------------------------

def run_estimate(config: RunConfig) -> Tuple[int, Dict[str, Any]]:
    """estimate 子命令：siCov、siCor、dCor 与 Pearson"""

    sample = load_csv(config.input)
    estimator_config = config.estimator_config()
    sicov_report, sicor_report = sicov_sicor(sample, config.alpha, estimator_config, clamp=config.clamp_sicor)

    warnings: List[str] = []
    for message in sicov_report.estimate.warnings + sicor_report.estimate.warnings:
        if message not in warnings:
            warnings.append(message)

    dcor = None
    if sample.n >= 2:
        _, dcor_estimate = dcov_dcor_baseline(sample)
        dcor = dcor_estimate.value
        warnings.extend(w for w in dcor_estimate.warnings if w not in warnings)

    pearson = None
    if sample.p == 1:
        try:
            pearson = pearson_baseline(sample).value
        except (EstimatorError, ValidationError) as exc:
            warnings.append(f"pearson unavailable: {exc}")

    payload = {
        "sicov": sicov_report.value,
        "sicor": sicor_report.value,
        "dcor": dcor,
        "pearson": pearson,
        "alpha": config.alpha,
        "mode": sicov_report.estimate.mode.value,
        "n": sample.n,
        "p": sample.p,
        "seed": estimator_config.seed,
        "tuple_budget": sicov_report.estimate.tuple_budget,
        "rng": rng_label(),
        "warnings": warnings,
    }
    return EXIT_OK, payload


def run_test(config: RunConfig) -> Tuple[int, Dict[str, Any]]:
    """test 子命令：置换检验，可选渐近置信区间"""

    sample = load_csv(config.input)
    estimator_config = config.estimator_config()
    result = permutation_test(sample, config.alpha, config.permutations, config.level, estimator_config)

    interval = None
    warnings: List[str] = []
    if config.ci:
        ci = asymptotic_ci(sample, config.alpha, config.ci_level, config.k1_budget, estimator_config)
        interval = ci.to_dict()
        warnings.extend(ci.warnings)

    payload = {
        "statistic": result.statistic,
        "p_value": result.p_value,
        "reject": result.reject,
        "permutations": result.permutations,
        "level": result.level,
        "alpha": result.alpha,
        "mode": result.mode,
        "n": sample.n,
        "p": sample.p,
        "seed": result.seed,
        "rng": rng_label(),
        "ci": interval,
        "warnings": warnings,
    }
    code = EXIT_REJECT if (config.exit_on_reject and result.reject) else EXIT_OK
    return code, payload


def _simulation_mode(config: RunConfig) -> Optional[str]:
    """未指定 --mode 且 α = 1 时重复模拟使用 v-fast"""
    if config.mode is None and config.alpha == 1.0:
        return EstimatorMode.V_FAST.value
    return None


def run_simulate(config: RunConfig) -> Tuple[int, Any]:
    """simulate 子命令：按场景输出 CSV 表"""

    settings = get_simulation_config()[config.scenario]
    scenario = config.scenario

    if scenario == "normal-grid":
        rows = normal_grid(
            settings["rhos"], config.n or settings["n"], config.alpha, config=config.estimator_config()
        )
    elif scenario == "cauchy-grid":
        rows = cauchy_grid(settings["alphas"])
    elif scenario == "null-sim":
        n = config.n or settings["n"]
        draws = null_distribution_sim(
            config.generator or settings["generator"],
            n,
            config.replicates or settings["replicates"],
            config.alpha,
            config=config.estimator_config(_simulation_mode(config)),
        )
        rows = [{"replicate": i, "draw": float(v)} for i, v in enumerate(draws)]
        if config.output_format == "json":
            summary = summarize_null_draws(draws)
            return EXIT_OK, {"scenario": scenario, "n": n, "summary": asdict(summary), "rows": rows}
    else:
        power = power_study(
            "quadratic",
            config.n or settings["n"],
            config.runs or settings["runs"],
            config.permutations,
            config.level,
            alpha=config.alpha,
            config=config.estimator_config(_simulation_mode(config)),
        )
        rows = [{
            "scenario": scenario, "n": power.n, "runs": power.runs,
            "rejections": power.rejections, "rate": power.rate, "level": power.level,
        }]

    if config.output_format == "json":
        return EXIT_OK, {"scenario": scenario, "rows": rows}
    return EXIT_OK, rows


def run_oracle(config: RunConfig) -> Tuple[int, Dict[str, Any]]:
    """oracle 子命令：离散分布的数值积分值、总体值、SUM 差距与矩恒等式"""

    law = load_law_json(config.input) if config.input else get_law_fixture(config.law)
    spec = QuadratureSpec.from_config()
    quadrature = quadrature_sicov_details(law, config.alpha, spec)
    sicov, sicor = population_dependence(law, config.alpha)
    xv, xp = law.marginal_x()
    integral_side, moment_side = lemma21_check(list(zip(xv, xp)), config.alpha, spec)

    payload = {
        "law": law.name,
        "atoms": law.m,
        "alpha": config.alpha,
        "quadrature_sicov": quadrature.value,
        "quadrature_error": quadrature.abs_error,
        "tail_bound": quadrature.tail_bound,
        "population_sicov": sicov.value,
        "population_sicor": sicor.value,
        "sum_gap": sum_convolution_gap(law),
        "sub_independent": is_sub_independent(law),
        "lemma_x": {"integral": integral_side, "moment": moment_side},
        "warnings": list(sicor.warnings),
    }
    return EXIT_OK, payload


def run_simulate_and_oracle(config: RunConfig) -> Tuple[int, Any]:
    """simulate 与 oracle 子命令的分发"""
    if config.subcommand == "oracle":
        return run_oracle(config)
    return run_simulate(config)


_HANDLERS = {
    "estimate": run_estimate,
    "test": run_test,
    "simulate": run_simulate_and_oracle,
    "oracle": run_simulate_and_oracle,
}


def call_subindependence(
    arguments: Dict[str, Any],
    *,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """执行一次子命令，写出结果并返回退出码"""

    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    try:
        config = _normalize_arguments(arguments)
    except SubIndependenceError as exc:
        error = _build_wrapper_error("invalid_arguments", str(exc))
        stderr.write(error["error"] + "\n")
        return EXIT_USAGE

    try:
        code, payload = _HANDLERS[config.subcommand](config)
    except ValidationError as exc:
        error = _build_wrapper_error("invalid_arguments", str(exc))
        code, payload = EXIT_USAGE, None
    except SubIndependenceError as exc:
        error = _build_wrapper_error("numeric_failure", str(exc))
        code, payload = EXIT_NUMERIC, None
    except Exception as exc:  # noqa: BLE001 保持原始异常信息，便于排查
        logger.exception("[ToolEntry] 执行失败")
        error = _build_wrapper_error("tool_execution_error", str(exc))
        code, payload = EXIT_NUMERIC, None

    if payload is None:
        stderr.write(error["error"] + "\n")
        return code

    columns = SCENARIO_COLUMNS.get(config.scenario) if config.subcommand == "simulate" else None
    _emit(payload, config, stdout, columns)
    return code
