"""Exact and asymptotic enumeration of galled phylogenetic networks and dup-trees."""

__version__ = "0.1.0"

from .series import (
    ContractError,
    DomainError,
    MarkPoly,
    MarkedSeries,
    double_factorial,
    reciprocal_power,
    series_mul,
)
from .one_component import (
    NTable,
    build_n_table,
    one_component_count,
    one_component_total,
    verify_bounds,
)
from .galled import (
    GalledJointTable,
    ResourceGuardError,
    brute_force_galled,
    galled_joint,
    galled_max_retic,
    galled_total,
    galled_totals,
    lower_bound_L,
    lower_bound_L_joint,
    upper_bound_U,
)
from .dup_trees import (
    BTable,
    b_value,
    build_b_table,
    dup_by_repeats,
    dup_total,
    dup_total_via_relation,
    enumerate_dup_trees,
    fdu_by_repeats,
    fdu_total,
)
from .asymptotics import (
    LogEstimate,
    laurent_coeff,
    limit_moments,
    limit_pmf_xy,
    limit_x_marginal,
    log_asym,
    poisson_pmf,
)
from .distributions import (
    Pmf,
    convergence_report,
    dist_dup_repeats,
    dist_galled_joint,
    dist_one_component,
    tv_distance,
)
