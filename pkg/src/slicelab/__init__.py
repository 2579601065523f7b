"""Stem mappings, induced slice mappings and their checks over real Clifford algebras."""

from .clifford import (
    AdmissibleUnit,
    AlgebraSignature,
    CliffordNumber,
    CliffordVector,
    QuaternionFrame,
    blade_product,
    complete_frame_in_span,
    gp,
    is_admissible_unit,
    make_frame,
    standard_frame,
)
from .dirac import DerivativeEngine, cr_residual, dirac_residual, fd_partial, fueter_transform, regularity_verdict
from .growth import (
    Ball,
    CustomRadial,
    GrowthRow,
    HoloRestriction,
    WeightedEllipsoid,
    gauge_eval,
    growth_bounds_convex,
    growth_bounds_kfold,
    growth_bounds_starlike,
    halfplane_generator,
    homogeneity_check,
    kfold_check,
    koebe_generator,
    scan_ray,
    starlike_criterion,
)
from .slices import SliceMapping, SlicePoint, decompose, extreme_values, induce, phi, transfer_representation
from .stems import (
    CauchyFueterKernel,
    DomainBox,
    GroupElement,
    HolomorphicLift,
    PolynomialStem,
    StemPoint,
    StemValue,
    check_axis_vanishing,
    check_equivariance,
    eval_stem,
    symmetrize,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleUnit",
    "AlgebraSignature",
    "Ball",
    "blade_product",
    "CauchyFueterKernel",
    "check_axis_vanishing",
    "check_equivariance",
    "CliffordNumber",
    "CliffordVector",
    "complete_frame_in_span",
    "cr_residual",
    "CustomRadial",
    "decompose",
    "DerivativeEngine",
    "dirac_residual",
    "DomainBox",
    "eval_stem",
    "extreme_values",
    "fd_partial",
    "fueter_transform",
    "gauge_eval",
    "gp",
    "GroupElement",
    "growth_bounds_convex",
    "growth_bounds_kfold",
    "growth_bounds_starlike",
    "GrowthRow",
    "halfplane_generator",
    "HolomorphicLift",
    "HoloRestriction",
    "homogeneity_check",
    "induce",
    "is_admissible_unit",
    "kfold_check",
    "koebe_generator",
    "make_frame",
    "phi",
    "PolynomialStem",
    "QuaternionFrame",
    "regularity_verdict",
    "scan_ray",
    "SliceMapping",
    "SlicePoint",
    "standard_frame",
    "starlike_criterion",
    "StemPoint",
    "StemValue",
    "symmetrize",
    "transfer_representation",
    "WeightedEllipsoid",
]
