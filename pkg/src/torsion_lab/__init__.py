"""Exact Reidemeister torsion of based chain complexes and round spheres."""

from .chain import (
    ChainComplex,
    GroupRingElement,
    GroupRingMatrix,
    GroupWord,
    Representation,
    betti_numbers,
    evaluate_word,
    rank_of,
    select_boundary_lift,
    twist,
    validate_complex,
    verify_homology_basis,
)
from .errors import (
    DegenerateBasisError,
    InconsistencyError,
    InputError,
    NotRepresentableError,
    TorsionLabError,
)
from .scalar import PiRadical, parse_exact, pr_div, pr_int_pow, pr_mul, pr_sqrt, pr_to_float, render_exact
from .spheres import (
    Model,
    ProductSpec,
    SphereSpec,
    euler_characteristic,
    gamma_half,
    harmonic_homology_basis,
    hemispheric_complex,
    minimal_complex,
    product_torsion_closed,
    sphere_torsion_closed,
    sphere_volume,
    volume_quadrature,
    weng_you_torsion,
)
from .torsion import GradedBasis, ScaledVector, TorsionValue, scale_basis, torsion_exact, torsion_float

__version__ = "0.1.0"
