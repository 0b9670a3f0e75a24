"""Legendre-Fenchel conjugates of a non-convex quartic Lagrangian and of sampled functions."""
from .analytic import (
    UNIT,
    ConvexRegimeError,
    DomainError,
    Interval,
    ModelParams,
    PolynomialLagrangian,
    Root,
    TangentPoint,
    VacuumState,
    cusp_momenta,
    hamiltonian_closed_form,
    hamiltonian_subgradient,
    invert_legendre_map,
    lagrangian_eval,
    legendre_map,
    momentum_of_velocity_revised,
    multivalued_hamiltonian,
    revised_lagrangian,
    tangent_point_left,
    tangent_point_right,
    vacuum_cusp,
    vacuum_lft,
)
from .branches import (
    Branch,
    BranchSet,
    Selector,
    XiRemap,
    enumerate_branches,
    swallow_tail_curve,
    xi_multiplicity_audit,
    xi_remap,
)
from .conjugate import (
    ConjugateResult,
    DomainKind,
    EffectiveDomain,
    HullSegments,
    SampledFunction,
    SlopeGrid,
    biconjugate,
    conjugate_bruteforce,
    conjugate_fast,
    effective_domain,
    flat_regions,
    supporting_line,
)

__version__ = "0.1.0"
