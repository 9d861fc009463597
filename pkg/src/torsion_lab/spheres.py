"""Round spheres: exact volumes, cell models, harmonic homology bases and closed forms."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import simpson

from . import linalg
from .chain import ChainComplex, GroupRingMatrix, Representation, twist
from .errors import InputError
from .scalar import ONE, PiRadical, pr_sqrt, pr_to_float
from .torsion import GradedBasis, ScaledVector, TorsionValue

__all__ = [
    "Model",
    "SphereSpec",
    "ProductSpec",
    "gamma_half",
    "sphere_volume",
    "volume_quadrature",
    "minimal_complex",
    "hemispheric_complex",
    "sphere_complex",
    "harmonic_homology_basis",
    "sphere_torsion_closed",
    "product_torsion_closed",
    "euler_characteristic",
    "weng_you_torsion",
    "builtin_models",
]


class Model(str, enum.Enum):
    MINIMAL = "minimal"
    HEMISPHERIC = "hemispheric"


def _positive_rational(x, what: str) -> Fraction:
    q = Fraction(x)
    if q <= 0:
        raise InputError(f"{what} must be positive, got {q}")
    return q


@dataclass(frozen=True)
class SphereSpec:
    n: int
    l: Fraction = Fraction(1)
    m: int = 1
    model: Model = Model.MINIMAL

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"sphere dimension must be >= 1, got {self.n}")
        if self.m < 1:
            raise InputError(f"representation rank must be >= 1, got {self.m}")
        object.__setattr__(self, "l", _positive_rational(self.l, "radius"))
        object.__setattr__(self, "model", Model(self.model))


@dataclass(frozen=True)
class ProductSpec:
    n: int
    k: int
    a: Fraction = Fraction(1)
    b: Fraction = Fraction(1)

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise InputError(f"sphere dimensions must be >= 1, got {self.n}, {self.k}")
        object.__setattr__(self, "a", _positive_rational(self.a, "radius a"))
        object.__setattr__(self, "b", _positive_rational(self.b, "radius b"))


def gamma_half(j: int) -> PiRadical:
    """Gamma(j/2) for a positive integer j."""
    if j < 1:
        raise InputError(f"gamma_half needs j >= 1, got {j}")
    if j % 2 == 0:
        return PiRadical.from_rational(math.factorial(j // 2 - 1))
    m = (j - 1) // 2
    coeff = Fraction(math.factorial(2 * m), 4**m * math.factorial(m))
    return PiRadical(coeff * coeff, 1)


def sphere_volume(n: int, l=1) -> PiRadical:
    """Vol(S^n_l) = 2 pi^((n+1)/2) l^n / Gamma((n+1)/2)."""
    if n < 1:
        raise InputError(f"sphere dimension must be >= 1, got {n}")
    l = _positive_rational(l, "radius")
    return PiRadical(4, n + 1) * PiRadical.from_rational(l**n) / gamma_half(n + 1)


def volume_quadrature(n: int, l=1, panels: int = 1024) -> float:
    """Independent float oracle for the volume via the polar-coordinate recursion.

    Vol(S^n_1) = Vol(S^{n-1}_1) * int_0^pi sin^{n-1}(t) dt, starting from
    Vol(S^1_1) = 2 pi.  Each level uses composite Simpson with the panel count
    doubled relative to the previous level.
    """
    if n < 1:
        raise InputError(f"sphere dimension must be >= 1, got {n}")
    if panels < 64 or panels % 2:
        raise InputError(f"panels must be even and >= 64, got {panels}")
    radius = float(_positive_rational(l, "radius"))
    vol = 2 * math.pi
    p = panels
    for level in range(2, n + 1):
        t = np.linspace(0.0, math.pi, p + 1)
        vol *= simpson(np.sin(t) ** (level - 1), x=t)
        p *= 2
    return vol * radius**n


def euler_characteristic(n: int) -> int:
    if n < 1:
        raise InputError(f"sphere dimension must be >= 1, got {n}")
    return 2 if n % 2 == 0 else 0


# -- cell models ----------------------------------------------------------------

def minimal_complex(spec: SphereSpec) -> ChainComplex:
    """One 0-cell and one n-cell, twisted by the trivial rank-m representation."""
    n = spec.n
    cells = [1] + [0] * (n - 1) + [1]
    B = [GroupRingMatrix.from_rational(linalg.zeros(cells[q - 1], cells[q]), cells[q - 1], cells[q])
         for q in range(1, n + 1)]
    return twist(B, Representation.trivial(spec.m), degrees=cells)


def hemispheric_matrix(q: int) -> linalg.Matrix:
    """D_q = [[1, (-1)^q], [(-1)^q, 1]]; D_{q-1} D_q = 0."""
    s = Fraction((-1) ** q)
    return [[Fraction(1), s], [s, Fraction(1)]]


def hemispheric_complex(spec: SphereSpec) -> ChainComplex:
    """Two cells in every degree 0..n with boundaries D_q (x) I_m."""
    n = spec.n
    B = [GroupRingMatrix.from_rational(hemispheric_matrix(q)) for q in range(1, n + 1)]
    return twist(B, Representation.trivial(spec.m), degrees=[2] * (n + 1))


def sphere_complex(spec: SphereSpec) -> ChainComplex:
    if spec.model is Model.MINIMAL:
        return minimal_complex(spec)
    return hemispheric_complex(spec)


def harmonic_homology_basis(spec: SphereSpec) -> GradedBasis:
    """Homology basis induced by the orthonormal harmonic forms 1/sqrt(Vol) and vol/sqrt(Vol).

    The point class gets sqrt(Vol), the fundamental class 1/sqrt(Vol), one
    vector per channel of R^m.  On the hemispheric model the point class is
    spread over both 0-cells (each dual hemisphere carries Vol/2) and the
    fundamental class is the cycle c^1 - (-1)^n c^2.
    """
    n, m = spec.n, spec.m
    root = pr_sqrt(sphere_volume(n, spec.l))
    inv_root = ONE / root

    def unit(size, entries):
        v = [0] * size
        for i, c in entries:
            v[i] = c
        return v

    if spec.model is Model.MINIMAL:
        h0 = [ScaledVector(root, unit(m, [(r, 1)])) for r in range(m)]
        hn = [ScaledVector(inv_root, unit(m, [(r, 1)])) for r in range(m)]
    else:
        half_root = root / 2
        sign = -((-1) ** n)
        h0 = [ScaledVector(half_root, unit(2 * m, [(r, 1), (m + r, 1)])) for r in range(m)]
        hn = [ScaledVector(inv_root, unit(2 * m, [(r, 1), (m + r, sign)])) for r in range(m)]
    return GradedBasis({0: h0, n: hn})


# -- closed forms ----------------------------------------------------------------

def sphere_torsion_closed(spec: SphereSpec) -> TorsionValue:
    if spec.n % 2 == 0:
        return TorsionValue(exact=ONE)
    return TorsionValue(exact=sphere_volume(spec.n, spec.l) ** spec.m)


def product_torsion_closed(spec: ProductSpec) -> TorsionValue:
    n, k = spec.n, spec.k
    if n % 2 == 0 and k % 2 == 1:
        value = sphere_volume(k, spec.b) ** euler_characteristic(n)
    elif k % 2 == 0 and n % 2 == 1:
        value = sphere_volume(n, spec.a) ** euler_characteristic(k)
    else:
        value = ONE
    return TorsionValue(exact=value)


def weng_you_torsion(k: int, l=1) -> PiRadical:
    """2 pi^(k+1) l^(2k+1) / k!, the analytic torsion of S^(2k+1)_l."""
    if k < 0:
        raise InputError(f"k must be >= 0, got {k}")
    l = _positive_rational(l, "radius")
    coeff = 2 * l ** (2 * k + 1) / Fraction(math.factorial(k))
    return PiRadical.pi_power(k + 1, coeff)


def builtin_models(max_dim: int = 10, max_rank: int = 3, radius=1) -> list[SphereSpec]:
    return [SphereSpec(n, Fraction(radius), m, model)
            for model in Model for n in range(1, max_dim + 1) for m in range(1, max_rank + 1)]
