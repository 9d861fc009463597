"""Random complexes, bases, lifts and rational orthogonal matrices for property checks."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import linalg
from .chain import ChainComplex, betti_numbers, check_boundary_lift
from .errors import InputError
from .linalg import Matrix
from .scalar import PiRadical
from .torsion import GradedBasis, ScaledVector

__all__ = [
    "random_rational",
    "random_radius",
    "random_invertible",
    "rational_orthogonal",
    "random_complex",
    "random_lifts",
    "recoordinatize",
]


def random_rational(rng: random.Random, max_num: int = 50, max_den: int = 20,
                    positive: bool = True) -> Fraction:
    num = rng.randint(1, max_num)
    if not positive and rng.random() < 0.5:
        num = -num
    return Fraction(num, rng.randint(1, max_den))


def random_radius(rng: random.Random) -> Fraction:
    return random_rational(rng, 30, 12)


def random_invertible(rng: random.Random, n: int, spread: int = 2) -> Matrix:
    """Product of a random unit lower and upper triangular integer matrix, row-permuted."""
    lower = linalg.identity(n)
    upper = linalg.identity(n)
    for i in range(n):
        for j in range(i):
            lower[i][j] = Fraction(rng.randint(-spread, spread))
            upper[j][i] = Fraction(rng.randint(-spread, spread))
        upper[i][i] = Fraction(rng.choice([1, 2, 3])) * rng.choice([1, -1])
    m = linalg.matmul(lower, upper)
    rng.shuffle(m)
    return m


def rational_orthogonal(rng: random.Random, n: int) -> Matrix:
    """Cayley transform of a random rational skew matrix, times a signed permutation."""
    if n == 0:
        return []
    a = linalg.zeros(n, n)
    for i in range(n):
        for j in range(i + 1, n):
            x = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
            a[i][j], a[j][i] = x, -x
    eye = linalg.identity(n)
    minus = [[eye[i][j] - a[i][j] for j in range(n)] for i in range(n)]
    plus = [[eye[i][j] + a[i][j] for j in range(n)] for i in range(n)]
    q = linalg.matmul(minus, linalg.inverse(plus))
    perm = list(range(n))
    rng.shuffle(perm)
    signed = [[Fraction(rng.choice([1, -1])) if perm[i] == j else Fraction(0) for j in range(n)]
              for i in range(n)]
    return linalg.matmul(signed, q)


def random_complex(rng: random.Random, max_total: int = 24,
                   max_top: int = 4) -> tuple[ChainComplex, GradedBasis]:
    """A random valid based complex and a random homology basis for it.

    Each C_q is built as (lift of B_{q-1}) + H_q + B_q in standard form and
    then moved by random invertible changes of coordinates.
    """
    while True:
        top = rng.randint(0, max_top)
        ranks = [0] + [rng.randint(0, 3) for _ in range(top)] + [0]
        betti = [rng.randint(0, 2) for _ in range(top + 1)]
        dims = [ranks[q] + betti[q] + ranks[q + 1] for q in range(top + 1)]
        if 0 < sum(dims) <= max_total:
            break
    # standard coordinates of C_q: [image of d_{q+1} | homology | lift of B_{q-1}]
    change = [random_invertible(rng, d) for d in dims]
    inv = [linalg.inverse(p) if p else [] for p in change]
    mats = []
    for q in range(1, top + 1):
        std = linalg.zeros(dims[q - 1], dims[q])
        for i in range(ranks[q]):
            std[i][ranks[q + 1] + betti[q] + i] = Fraction(rng.choice([1, 2, 3, 5]))
        # d'_q = P_{q-1} d_q P_q^{-1}
        left = linalg.matmul(change[q - 1], std, inner=dims[q - 1]) if dims[q - 1] else []
        mats.append(linalg.matmul(left, inv[q], inner=dims[q]) if left else [])
    C = ChainComplex(dims, [m if m else linalg.zeros(dims[q], dims[q + 1])
                            for q, m in enumerate(mats)])
    basis = {}
    for q in range(top + 1):
        if not betti[q]:
            continue
        scale = PiRadical(random_rational(rng, 9, 4), rng.randint(-3, 3))
        vecs = []
        for i in range(betti[q]):
            std = [Fraction(0)] * dims[q]
            std[ranks[q + 1] + i] = random_rational(rng, 5, 3)
            for j in range(betti[q]):
                if j > i and rng.random() < 0.3:
                    std[ranks[q + 1] + j] += Fraction(rng.randint(-1, 1))
            for j in range(ranks[q + 1]):
                std[j] = Fraction(rng.randint(-3, 3))
            coords = [sum(change[q][r][c] * std[c] for c in range(dims[q])) for r in range(dims[q])]
            vecs.append(ScaledVector(scale, coords))
        basis[q] = vecs
    h = GradedBasis(basis)
    if any(len(h[q]) != b for q, b in enumerate(betti_numbers(C))):
        raise AssertionError("random complex generator produced wrong Betti numbers")
    return C, h


def random_lifts(rng: random.Random, C: ChainComplex,
                 attempts: int = 200) -> dict[int, tuple[int, ...]]:
    """A random valid choice of b_q for every degree (resampled until independent)."""
    out = {}
    for q in range(1, C.top + 1):
        r = linalg.rank_of(C.boundary(q))
        cols = list(range(C.dim(q)))
        for _ in range(attempts):
            pick = tuple(sorted(rng.sample(cols, r)))
            try:
                out[q] = check_boundary_lift(C, q, pick).columns
                break
            except InputError:
                continue
        else:
            # small dimensions: fall back to a full search
            for pick in itertools.combinations(cols, r):
                try:
                    out[q] = check_boundary_lift(C, q, pick).columns
                    break
                except InputError:
                    continue
    return out


def recoordinatize(rng: random.Random, h: GradedBasis) -> GradedBasis:
    """Apply a random rational orthogonal change of coordinates within each degree.

    Vectors of one degree are grouped by scale; each group is mixed by its own
    orthogonal matrix, which keeps the volume element up to sign.
    """
    out = {}
    for q, vecs in h.vectors.items():
        groups: dict[PiRadical, list[ScaledVector]] = {}
        for v in vecs:
            groups.setdefault(v.scale, []).append(v)
        new = []
        for scale, group in groups.items():
            o = rational_orthogonal(rng, len(group))
            for row in o:
                coords = [sum(row[k] * group[k].coords[i] for k in range(len(group)))
                          for i in range(len(group[0].coords))]
                new.append(ScaledVector(scale, coords))
        out[q] = new
    return GradedBasis(out)
