"""Exact Frobenius numbers, lattice coverings of simplices, and near-optimal tuples."""
from .construction import (
    ConstructionInput,
    ConstructionOutput,
    build_parametric_matrix,
    compute_denominator,
    construct_tuple,
    construction_input,
    find_gcd_one,
    minor_polynomials,
    verify_asymptotics,
)
from .covering import (
    SimplexSpec,
    inhomogeneous_minimum_2d,
    is_covering_2d,
    kannan_check,
    mu0_bounds,
    scaling_check,
)
from .frobenius import (
    FrobeniusInstance,
    apery_set,
    bounds_report,
    f_ratio,
    frobenius_number,
    is_representable,
)
from .harness import DensityRequest, density_experiment, ratio_table
from .lattice import LatticeSpec, hermite_normal_form, lattice_from_tuple, membership
from .mu0 import mu0_search_2d

__version__ = "0.1.0"
