import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsion_lab.chain import ChainComplex
from torsion_lab.errors import DegenerateBasisError, InputError
from torsion_lab.randomized import random_complex, random_lifts, recoordinatize
from torsion_lab.scalar import ONE, PiRadical, pr_to_float
from torsion_lab.spheres import (
    Model,
    SphereSpec,
    builtin_models,
    harmonic_homology_basis,
    minimal_complex,
    sphere_complex,
    sphere_volume,
)
from torsion_lab.torsion import (
    GradedBasis,
    ScaledVector,
    float_inputs,
    scale_basis,
    torsion_exact,
    torsion_float,
)


def brute_torsion(C, h):
    """Independent float oracle: torsion via least-squares lifts of boundary bases.

    Uses numpy's orthonormal column-space bases instead of pivot selection,
    which is a different valid choice of b_q.
    """
    value = 1.0
    for q in range(C.top + 1):
        n = C.dim(q)
        if n == 0:
            continue
        cols = []
        if q + 1 <= C.top:
            d = np.array([[float(x) for x in r] for r in C.boundary(q + 1)]).reshape(n, C.dim(q + 1))
            # any set of chains whose boundaries span B_q: right singular vectors
            u, s, vt = np.linalg.svd(d)
            r = int(np.sum(s > 1e-10 * (s[0] if s.size else 1)))
            cols.extend(d @ vt[i] for i in range(r))
        cols.extend(v.to_float() for v in h[q])
        if q >= 1:
            d = np.array([[float(x) for x in r] for r in C.boundary(q)]).reshape(C.dim(q - 1), n)
            u, s, vt = np.linalg.svd(d)
            r = int(np.sum(s > 1e-10 * (s[0] if s.size else 1)))
            cols.extend(vt[i] for i in range(r))
        value *= abs(np.linalg.det(np.column_stack(cols))) ** (1 if q % 2 == 0 else -1)
    return value


class TestExact:
    @pytest.mark.parametrize("n", range(1, 8))
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_minimal_harmonic(self, n, m):
        spec = SphereSpec(n, 1, m)
        t = torsion_exact(minimal_complex(spec), harmonic_homology_basis(spec)).exact
        vol = sphere_volume(n, 1)
        assert t == (vol**m if n % 2 else ONE)

    def test_point_in_degree_zero(self):
        C = ChainComplex([1])
        h = GradedBasis({0: [ScaledVector(1, [1])]})
        assert torsion_exact(C, h).exact == ONE

    def test_point_in_degree_one(self):
        C = ChainComplex([0, 1], [[]])
        h = GradedBasis({1: [ScaledVector(3, [1])]})
        assert torsion_exact(C, h).exact == PiRadical.from_rational(Fraction(1, 3))

    def test_acyclic(self):
        assert torsion_exact(ChainComplex([1, 1], [[[1]]]), GradedBasis({})).exact == ONE
        assert torsion_exact(ChainComplex([1, 1], [[[2]]]), GradedBasis({})).exact == PiRadical.from_rational(2)

    def test_bad_basis_raises(self):
        with pytest.raises(InputError, match="count"):
            torsion_exact(minimal_complex(SphereSpec(3)), GradedBasis({}))

    def test_per_degree_factors(self):
        spec = SphereSpec(3, 1, 1)
        t = torsion_exact(minimal_complex(spec), harmonic_homology_basis(spec))
        root = PiRadical(2, 2)
        assert [f.abs_det for f in t.per_degree] == [root, ONE, ONE, ONE / root]
        assert [f.exponent for f in t.per_degree] == [1, -1, 1, -1]

    def test_matches_float_oracle_on_random_complexes(self):
        rng = random.Random(11)
        for _ in range(30):
            C, h = random_complex(rng)
            exact = pr_to_float(torsion_exact(C, h).exact)
            assert brute_torsion(C, h) == pytest.approx(exact, rel=1e-8)


class TestInvariance:
    def test_lift_choice(self):
        rng = random.Random(5)
        for _ in range(15):
            C, h = random_complex(rng)
            base = torsion_exact(C, h).exact
            for _ in range(20):
                assert torsion_exact(C, h, lifts=random_lifts(rng, C)).exact == base

    def test_orthogonal_recoordinatization(self):
        rng = random.Random(6)
        for _ in range(15):
            C, h = random_complex(rng)
            base = torsion_exact(C, h).exact
            for _ in range(20):
                assert torsion_exact(C, recoordinatize(rng, h)).exact == base

    def test_invalid_lift_rejected(self):
        C = ChainComplex([1, 2], [[[1, 0]]])
        with pytest.raises(InputError):
            torsion_exact(C, GradedBasis({1: [ScaledVector(1, [0, 1])]}), lifts={1: [1]})


class TestScaleBasis:
    def test_identity(self):
        spec = SphereSpec(3)
        h = harmonic_homology_basis(spec)
        assert scale_basis(h, [1, 1, 1, 1]) == h

    def test_degree_zero_doubles(self):
        spec = SphereSpec(3)
        C, h = minimal_complex(spec), harmonic_homology_basis(spec)
        base = torsion_exact(C, h).exact
        assert torsion_exact(C, scale_basis(h, [2, 1, 1, 1])).exact == base * 2

    def test_top_degree_divides(self):
        spec = SphereSpec(3)
        C, h = minimal_complex(spec), harmonic_homology_basis(spec)
        base = torsion_exact(C, h).exact
        assert torsion_exact(C, scale_basis(h, [1, 1, 1, 5])).exact == base / 5

    def test_only_first_vector_scaled(self):
        h = harmonic_homology_basis(SphereSpec(2, m=3))
        g = scale_basis(h, [7, 1, 1])
        assert g[0][0].scale == h[0][0].scale * 7
        assert g[0][1:] == h[0][1:] and g[2] == h[2]

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 8), st.integers(1, 3),
           st.lists(st.fractions(min_value=Fraction(1, 50), max_value=50), min_size=9, max_size=9))
    def test_scaling_law(self, n, m, alphas):
        spec = SphereSpec(n, Fraction(3, 2), m)
        C, h = minimal_complex(spec), harmonic_homology_basis(spec)
        alphas = alphas[: n + 1]
        factor = PiRadical.from_rational(alphas[0]) * PiRadical.from_rational(alphas[n]) ** (-1) ** n
        assert torsion_exact(C, scale_basis(h, alphas)).exact == factor * torsion_exact(C, h).exact


class TestFloat:
    def test_s3(self):
        spec = SphereSpec(3)
        t = torsion_float(*float_inputs(minimal_complex(spec), harmonic_homology_basis(spec)))
        assert t.approx == pytest.approx(19.7392088021787, rel=1e-12)

    def test_identity_complex(self):
        t = torsion_float([1, 1], [np.array([[1.0]])], {})
        assert t.approx == pytest.approx(1.0)

    def test_scaled_acyclic(self):
        t = torsion_float([1, 1], [np.array([[2.0]])], {})
        assert t.approx == pytest.approx(2.0)

    def test_degenerate(self):
        with pytest.raises(DegenerateBasisError):
            torsion_float([1], [], {0: [np.array([1e-30])]}, tol=1e-10)

    def test_tolerance_range(self):
        with pytest.raises(InputError):
            torsion_float([1], [], {0: [np.array([1.0])]}, tol=0.1)

    def test_builtin_agreement(self):
        for spec in builtin_models():
            C, h = sphere_complex(spec), harmonic_homology_basis(spec)
            if C.total_dimension > 64:
                continue
            exact = pr_to_float(torsion_exact(C, h).exact)
            t = torsion_float(*float_inputs(C, h))
            assert abs(t.approx - exact) <= 1e-9 * exact
            assert t.error_bound >= 0

    def test_random_agreement(self):
        rng = random.Random(2)
        for _ in range(30):
            C, h = random_complex(rng)
            exact = pr_to_float(torsion_exact(C, h).exact)
            assert torsion_float(*float_inputs(C, h)).approx == pytest.approx(exact, rel=1e-9)


def test_torsion_positive():
    rng = random.Random(9)
    for _ in range(20):
        C, h = random_complex(rng)
        assert pr_to_float(torsion_exact(C, h).exact) > 0


def test_hemispheric_matches_minimal_small():
    for n in range(1, 6):
        for m in (1, 2):
            a = SphereSpec(n, Fraction(5, 3), m, Model.MINIMAL)
            b = SphereSpec(n, Fraction(5, 3), m, Model.HEMISPHERIC)
            assert (torsion_exact(sphere_complex(a), harmonic_homology_basis(a)).exact
                    == torsion_exact(sphere_complex(b), harmonic_homology_basis(b)).exact)
