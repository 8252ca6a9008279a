from .properties import (
    DemocracyCheck, PropertyReport, PropertyResult,
    democracy_check, block_equation_residual, equilibrium_properties_check,
    fixed_point_residual, power_bounds_hold,
)
from .jacobian import jacobian_f, l1_operator_norm, contraction_constant, RateFit, convergence_rate_measurement
from .star import (
    StarQuantities, star_quantities, leaf_closed_form, trapping_region, in_trapping_region,
)
from .certificates import CertificateSet, compute_certificates, NOT_CERTIFIED
from .solver import (
    EquilibriumReport, solve_fixed_point, star_fully_stubborn_equilibrium,
    star_partially_stubborn_equilibrium, multi_start_spread, solve_equilibrium,
)

__all__ = [
    'DemocracyCheck', 'PropertyReport', 'PropertyResult',
    'democracy_check', 'block_equation_residual', 'equilibrium_properties_check',
    'fixed_point_residual', 'power_bounds_hold',
    'jacobian_f', 'l1_operator_norm', 'contraction_constant', 'RateFit', 'convergence_rate_measurement',
    'StarQuantities', 'star_quantities', 'leaf_closed_form', 'trapping_region', 'in_trapping_region',
    'CertificateSet', 'compute_certificates', 'NOT_CERTIFIED',
    'EquilibriumReport', 'solve_fixed_point', 'star_fully_stubborn_equilibrium',
    'star_partially_stubborn_equilibrium', 'multi_start_spread', 'solve_equilibrium',
]
