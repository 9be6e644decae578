"""
α-次独立协方差与相关系数工具包

次独立指 X + Y 的分布等于 X、Y 独立时 X' + Y' 的分布，弱于独立。
α-次独立协方差 siCov 度量两者特征函数在对角线上的加权 L2 距离，
为 0 当且仅当 (X, Y) 次独立；siCor 为其归一化版本，取值 [0,1]。

主要特性：
- 六项矩统计量的完全/不完全 U 统计量与 O(n log n) 一维 V 统计量
- siCov/siCor 点估计及距离相关、Pearson 基线
- n·siCov 置换检验与基于 Hoeffding 投影的渐近置信区间
- 离散分布数值积分、二元正态与 Cauchy 闭式解等验证工具
- 零分布模拟与检验功效研究

核心组件：
- core: 数据模型、样本读写、异常定义与随机数子流
- kernels: 范数幂、六项统计量与对称核
- estimators: 点估计与基线
- oracle: 数值积分与闭式解
- inference: 置换检验、渐近区间与模拟
- tool_entry: 命令行调用入口

版本：1.0.0
"""

from .core import EstimatorConfig, EstimatorError, PairedSample, ValidationError, load_csv
from .estimators import dcov_dcor_baseline, pearson_baseline, sicor_hat, sicov_hat, sicov_sicor
from .inference import asymptotic_ci, permutation_test
from .oracle import cauchy_closed_form, normal_closed_form, population_dependence, quadrature_sicov_discrete
from .tool_entry import RunConfig, call_subindependence

__version__ = "1.0.0"

__all__ = [
    'EstimatorConfig',
    'EstimatorError',
    'PairedSample',
    'ValidationError',
    'load_csv',
    'sicov_hat',
    'sicor_hat',
    'sicov_sicor',
    'dcov_dcor_baseline',
    'pearson_baseline',
    'permutation_test',
    'asymptotic_ci',
    'normal_closed_form',
    'cauchy_closed_form',
    'population_dependence',
    'quadrature_sicov_discrete',
    'RunConfig',
    'call_subindependence',
]
