"""
Numerical kernels of the ZetaSurf engine
"""

from ZS_engine.kernels.surface_model import (
    boundary_words,
    build_cylinder,
    build_pants,
    load_surface,
    surface_from_description,
    translation_length,
    validate_presentation,
)
from ZS_engine.kernels.length_spectrum import (
    brute_force_spectrum,
    counting_fit,
    counting_function,
    enumerate_spectrum,
    growth_exponent,
    spectrum_table,
    systole,
)
from ZS_engine.kernels.special_functions import (
    digamma,
    expansion_coefficients,
    log_barnes_gamma2,
    log_barnes_gamma2_resummed,
    log_gamma,
    log_z_infinity,
    log_z_infinity_derivative,
    sarnak_constant_E,
    z_infinity_asymptotics,
    zeta_prime_minus_one,
)
from ZS_engine.kernels.zeta_det import (
    cylinder_resonances,
    cylinder_zeta_log_derivative,
    cylinder_zeta_value,
    decay_constant,
    hadamard_P,
    hadamard_P_log_derivative,
    log_det_D,
    log_det_laplacian,
    log_zeta,
    log_zeta_cylinder,
    relative_determinant_asymptotics,
    resonance_counting_exponent,
    topological_zero_orders,
)
from ZS_engine.kernels.zero_finder import find_zeros
from ZS_engine.kernels.huber import huber_extract_lengths
from ZS_engine.kernels.conformal_heat import (
    compactness_bounds,
    conformal_factor_from_grid,
    curvature_g,
    finite_part_integral,
    funnel_chart,
    gaussian_bump,
    gradient_norm_sq,
    heat_invariant_leading_term,
    heat_invariants,
    jensen_bound_check,
    laplacian_tau,
    plateau_bump,
    polyakov_logD1,
    zero_volume,
)
from ZS_engine.kernels.moduli_bounds import (
    bers_curve_bound_check,
    epsilon_R,
    properness_sweep,
    systole_bound_check,
    zeta_bound_check,
)

__all__ = [
    # surface_model
    "boundary_words",
    "build_cylinder",
    "build_pants",
    "load_surface",
    "surface_from_description",
    "translation_length",
    "validate_presentation",
    # length_spectrum
    "brute_force_spectrum",
    "counting_fit",
    "counting_function",
    "enumerate_spectrum",
    "growth_exponent",
    "spectrum_table",
    "systole",
    # special_functions
    "digamma",
    "expansion_coefficients",
    "log_barnes_gamma2",
    "log_barnes_gamma2_resummed",
    "log_gamma",
    "log_z_infinity",
    "log_z_infinity_derivative",
    "sarnak_constant_E",
    "z_infinity_asymptotics",
    "zeta_prime_minus_one",
    # zeta_det
    "cylinder_resonances",
    "cylinder_zeta_log_derivative",
    "cylinder_zeta_value",
    "decay_constant",
    "find_zeros",
    "hadamard_P",
    "hadamard_P_log_derivative",
    "huber_extract_lengths",
    "log_det_D",
    "log_det_laplacian",
    "log_zeta",
    "log_zeta_cylinder",
    "relative_determinant_asymptotics",
    "resonance_counting_exponent",
    "topological_zero_orders",
    # conformal_heat
    "compactness_bounds",
    "conformal_factor_from_grid",
    "curvature_g",
    "finite_part_integral",
    "funnel_chart",
    "gaussian_bump",
    "gradient_norm_sq",
    "heat_invariant_leading_term",
    "heat_invariants",
    "jensen_bound_check",
    "laplacian_tau",
    "plateau_bump",
    "polyakov_logD1",
    "zero_volume",
    # moduli_bounds
    "bers_curve_bound_check",
    "epsilon_R",
    "properness_sweep",
    "systole_bound_check",
    "zeta_bound_check",
]
