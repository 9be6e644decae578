# estimator_config.py

DEFAULT_SEED = 20240917   # 固定默认种子，命令行不指定 --seed 时每次运行结果一致
DEFAULT_ALPHA = 1.0       # α = 1 即"次独立协方差"


def get_estimator_config():
    """
    返回估计量的默认配置。
    """
    estimator_config = {
        'mode': 'auto',              # auto / u / u-incomplete / v-fast
        'tuple_budget': 200000,      # 不完全 U 统计量每个元组族的抽样数
        'seed': DEFAULT_SEED,
        'exact_threshold_n': 40,     # n 不超过该值时 auto 使用完全 U 统计量
        'n_jobs': 1,                 # 元组分块计算的线程数
        'chunk_size': 65536          # 每个分块的元组数，分块边界与线程数无关
    }
    return estimator_config


def get_quadrature_config():
    """
    返回特征函数数值积分的默认配置。
    """
    quadrature_config = {
        'rel_tol': 1e-8,
        'abs_tol': 1e-12,
        't_max': 200.0,              # 直接积分区间 (0, t_max]，其后用 Fourier 权积分
        'subdivision_limit': 200     # 每个积分面板的最大细分次数
    }
    return quadrature_config


def get_inference_config():
    """
    返回假设检验与置信区间的默认配置。
    """
    inference_config = {
        'permutations': 999,
        'level': 0.05,
        'ci_level': 0.95,
        'k1_budget': 1000,           # 每行 k1 的蒙特卡罗三元组数
        'degeneracy_factor': 1e-3,   # 退化告警阈值系数：factor * (K1+K2)^2 / n
        'null_scale_power': 0.5      # 零分布模拟的缩放 n^power
    }
    return inference_config


def get_simulation_config():
    """
    返回命令行 simulate 子命令各场景的默认配置。
    """
    simulation_config = {
        'normal-grid': {
            'rhos': [-1.0, -0.5, 0.0, 0.5, 1.0],
            'n': 2000
        },
        'cauchy-grid': {
            'alphas': [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
        },
        'null-sim': {
            'generator': 'independent-normal',
            'n': 200,
            'replicates': 1000
        },
        'power-x2': {
            'n': 200,
            'runs': 200
        }
    }
    return simulation_config
