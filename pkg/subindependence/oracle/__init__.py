# oracle/__init__.py
"""
验证模块
包含离散分布的特征函数数值积分、总体值穷举与正态/Cauchy 闭式解
"""

from .discrete_law import (
    LAW_FIXTURES,
    DiscreteJointLaw,
    QuadratureSpec,
    difference_atoms,
    get_law_fixture,
    is_sub_independent,
    load_law_json,
    merge_atoms,
    population_dependence,
    population_terms,
    rademacher_identity,
    rademacher_negation,
    rademacher_product,
    sub_independent_lattice,
    sum_convolution_gap,
)
from .quadrature import QuadratureResult, lemma21_check, quadrature_sicov_details, quadrature_sicov_discrete
from .closed_forms import (
    CauchyClosedForm,
    NormalClosedForm,
    cauchy_closed_form,
    cauchy_closed_form_terms,
    normal_abs_moment,
    normal_closed_form,
)

__all__ = [
    'LAW_FIXTURES', 'DiscreteJointLaw', 'QuadratureSpec', 'difference_atoms', 'get_law_fixture',
    'is_sub_independent', 'load_law_json', 'merge_atoms', 'population_dependence', 'population_terms',
    'rademacher_identity', 'rademacher_negation', 'rademacher_product', 'sub_independent_lattice',
    'sum_convolution_gap',
    'QuadratureResult', 'lemma21_check', 'quadrature_sicov_details', 'quadrature_sicov_discrete',
    'CauchyClosedForm', 'NormalClosedForm', 'cauchy_closed_form', 'cauchy_closed_form_terms',
    'normal_abs_moment', 'normal_closed_form',
]
