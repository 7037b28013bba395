"""Python bindings for the xidiv numerical toolkit."""

from ._xidiv import (
    ArgumentError,
    DomainError,
    Error,
    EvaluationError,
    NumericConfig,
    PoleError,
    RangeError,
    SingularityError,
    Xi,
    __version__,
    alternating_moment,
    channel_masses,
    cm_test,
    g_density,
    gamma,
    ggc_diagnostics,
    half_identity_report,
    id_criterion_check,
    kristiansen_lt,
    lhs_half_transform,
    load_config,
    parse_config,
    phi_sigma,
    psi,
    psi_kernel,
    psi_kernel_series_residual,
    rhs_as_written,
    run_all,
    run_step,
    scan_critical_line,
    scan_strip,
    theta_functional_residual,
    triangle_weight,
    xi,
    xi_eq1,
    xi_psi_transform,
    zeta,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
