"""Reidemeister torsion of a based chain complex with a chosen homology basis.

For each degree q the engine assembles the square matrix whose columns are
d_{q+1}(b_{q+1}), then h_q, then b_q (all in the preferred basis c_q), takes
the absolute value of its determinant and multiplies these with alternating
exponents (-1)**q.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import linalg
from .chain import (
    ChainComplex,
    check_boundary_lift,
    ensure_valid,
    select_boundary_lift,
    verify_homology_basis,
)
from .errors import DegenerateBasisError, InconsistencyError, InputError
from .scalar import ONE, PiRadical, pr_to_float

__all__ = [
    "ScaledVector",
    "GradedBasis",
    "TorsionValue",
    "DegreeFactor",
    "torsion_exact",
    "torsion_float",
    "float_inputs",
    "scale_basis",
]


@dataclass(frozen=True)
class ScaledVector:
    """The chain ``scale * sum(coords[i] * c_i)``."""

    scale: PiRadical
    coords: tuple[Fraction, ...]

    def __init__(self, scale, coords: Iterable):
        if not isinstance(scale, PiRadical):
            scale = PiRadical.from_rational(scale)
        coords = tuple(Fraction(x) for x in coords)
        if coords and all(x == 0 for x in coords):
            raise InputError("a basis vector cannot be zero")
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "coords", coords)

    def to_float(self) -> np.ndarray:
        return pr_to_float(self.scale) * np.array([float(x) for x in self.coords], dtype=float)


@dataclass(frozen=True)
class GradedBasis:
    """Homology basis vectors per degree; degrees not listed are empty."""

    vectors: Mapping[int, tuple[ScaledVector, ...]]

    def __init__(self, vectors: Mapping[int, Sequence[ScaledVector]] | Sequence[Sequence[ScaledVector]]):
        if not isinstance(vectors, Mapping):
            vectors = dict(enumerate(vectors))
        clean = {int(q): tuple(v) for q, v in vectors.items() if v}
        object.__setattr__(self, "vectors", dict(sorted(clean.items())))

    def __getitem__(self, q: int) -> tuple[ScaledVector, ...]:
        return self.vectors.get(q, ())

    def degrees(self) -> list[int]:
        return list(self.vectors)

    def __hash__(self):
        return hash(tuple(self.vectors.items()))


@dataclass(frozen=True)
class DegreeFactor:
    degree: int
    columns: int
    abs_det: PiRadical | float
    exponent: int


@dataclass(frozen=True)
class TorsionValue:
    """Either an exact PiRadical or a float with an absolute error estimate."""

    exact: PiRadical | None = None
    approx: float | None = None
    error_bound: float = 0.0
    per_degree: tuple[DegreeFactor, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.exact is None and self.approx is None:
            raise ValueError("a torsion value needs an exact or a float part")
        if self.approx is not None and not self.approx > 0:
            raise ValueError(f"torsion must be positive, got {self.approx}")

    def __float__(self) -> float:
        return pr_to_float(self.exact) if self.exact is not None else self.approx


def _lift(C: ChainComplex, q: int, lifts: Mapping[int, Sequence[int]] | None):
    if lifts is not None and q in lifts:
        return check_boundary_lift(C, q, lifts[q])
    return select_boundary_lift(C, q)


def torsion_exact(C: ChainComplex, h: GradedBasis,
                  lifts: Mapping[int, Sequence[int]] | None = None,
                  check: bool = True) -> TorsionValue:
    """Exact torsion as a PiRadical.

    ``lifts`` optionally overrides the leftmost-pivot choice of b_q for some
    degrees (the result does not depend on it).
    """
    if check:
        ensure_valid(C)
        problems = verify_homology_basis(C, h)
        if problems:
            raise InputError("invalid homology basis: " + "; ".join(map(str, problems)))
    lift = {q: _lift(C, q, lifts) for q in range(1, C.top + 1)}
    result = ONE
    factors = []
    for q in range(C.top + 1):
        n = C.dim(q)
        cols: list[list[Fraction]] = []
        scale = ONE
        if q + 1 <= C.top:
            b_next = lift[q + 1]
            cols.extend(linalg.columns([list(r) for r in b_next.image], range(len(b_next.columns))))
        for v in h[q]:
            cols.append(list(v.coords))
            scale = scale * v.scale
        if q >= 1:
            for j in lift[q].columns:
                cols.append([linalg.ONE if i == j else linalg.ZERO for i in range(n)])
        if len(cols) != n:
            raise InconsistencyError(f"degree {q}: assembled {len(cols)} columns for dim C_{q} = {n}")
        det = linalg.determinant(linalg.from_columns(cols, n))
        if det == 0:
            raise InconsistencyError(f"degree {q}: change-of-basis determinant vanished")
        abs_det = PiRadical.from_rational(abs(det)) * scale
        exponent = 1 if q % 2 == 0 else -1
        result = result * abs_det ** exponent
        factors.append(DegreeFactor(q, n, abs_det, exponent))
    return TorsionValue(exact=result, per_degree=tuple(factors))


def scale_basis(h: GradedBasis, alphas: Sequence) -> GradedBasis:
    """Scale the degree-q volume element by alphas[q] (via the first vector)."""
    out = {}
    for q, vecs in h.vectors.items():
        vecs = list(vecs)
        if q < len(alphas) and vecs:
            a = alphas[q]
            if not isinstance(a, PiRadical):
                a = PiRadical.from_rational(a)
            vecs[0] = ScaledVector(vecs[0].scale * a, vecs[0].coords)
        out[q] = vecs
    return GradedBasis(out)


# -- float path -----------------------------------------------------------------

def float_inputs(C: ChainComplex, h: GradedBasis) -> tuple[list[int], list[np.ndarray], dict[int, list[np.ndarray]]]:
    """Float copies of a complex and basis, for :func:`torsion_float`."""
    mats = [np.array([[float(x) for x in row] for row in C.boundary(q)], dtype=float)
            .reshape(C.dim(q - 1), C.dim(q)) for q in range(1, C.top + 1)]
    basis = {q: [v.to_float() for v in h[q]] for q in range(C.top + 1)}
    return list(C.degrees), mats, basis


def _numeric_rank(m: np.ndarray, tol: float) -> int:
    if m.size == 0:
        return 0
    sv = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(sv >= tol * sv[0])) if sv[0] > 0 else 0


def _float_lift(m: np.ndarray, tol: float) -> list[int]:
    chosen: list[int] = []
    target = _numeric_rank(m, tol)
    for j in range(m.shape[1]):
        if len(chosen) == target:
            break
        if _numeric_rank(m[:, chosen + [j]], tol) == len(chosen) + 1:
            chosen.append(j)
    return chosen


def torsion_float(degrees: Sequence[int], boundaries: Sequence[np.ndarray],
                  basis: Mapping[int, Sequence[np.ndarray]], tol: float = 1e-10) -> TorsionValue:
    """Double-precision torsion; rank decisions use singular values >= tol * largest."""
    if not 0 < tol <= 1e-3:
        raise InputError(f"tol must lie in (0, 1e-3], got {tol}")
    top = len(degrees) - 1
    mats = [np.asarray(b, dtype=float).reshape(degrees[q], degrees[q + 1])
            for q, b in enumerate(boundaries)]
    lifts = {q: _float_lift(mats[q - 1], tol) for q in range(1, top + 1)}
    log_tau = 0.0
    rel_err = 0.0
    factors = []
    eps = np.finfo(float).eps
    for q in range(top + 1):
        n = degrees[q]
        cols = []
        if q + 1 <= top:
            cols.extend(mats[q][:, j] for j in lifts[q + 1])
        cols.extend(np.asarray(v, dtype=float) for v in basis.get(q, ()))
        if q >= 1:
            cols.extend(np.eye(n)[:, j] for j in lifts[q])
        if len(cols) != n:
            raise DegenerateBasisError(f"degree {q}: {len(cols)} columns for dim C_{q} = {n}")
        if n == 0:
            factors.append(DegreeFactor(q, 0, 1.0, 1 if q % 2 == 0 else -1))
            continue
        M = np.column_stack(cols)
        sign, logdet = np.linalg.slogdet(M)
        if sign == 0 or logdet < n * math.log(tol):
            raise DegenerateBasisError(f"numerically degenerate basis in degree {q}")
        exponent = 1 if q % 2 == 0 else -1
        log_tau += exponent * logdet
        rel_err += n * eps * np.linalg.cond(M)
        factors.append(DegreeFactor(q, n, math.exp(logdet), exponent))
    value = math.exp(log_tau)
    return TorsionValue(approx=value, error_bound=float(value * rel_err), per_degree=tuple(factors))
