"""Property suites run by ``torsion-lab selfcheck``.

Each suite is a pure function of a seed and returns a :class:`SuiteResult`.
Suites do not share state, so they can run in separate processes.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import linalg
from .chain import (
    GroupRingMatrix,
    GroupWord,
    Representation,
    betti_numbers,
    evaluate_word,
    twist,
    validate_complex,
)
from .documents import (
    basis_document,
    complex_document,
    dumps,
    parse_basis_document,
    parse_complex_document,
)
from .randomized import (
    random_complex,
    random_lifts,
    random_radius,
    random_rational,
    rational_orthogonal,
    recoordinatize,
)
from .scalar import ONE, PiRadical, parse_exact, pr_sqrt, pr_to_float, render_exact
from .spheres import (
    Model,
    ProductSpec,
    SphereSpec,
    builtin_models,
    euler_characteristic,
    harmonic_homology_basis,
    product_torsion_closed,
    sphere_complex,
    sphere_torsion_closed,
    sphere_volume,
    volume_quadrature,
    weng_you_torsion,
)
from .torsion import float_inputs, scale_basis, torsion_exact, torsion_float

__all__ = ["SuiteResult", "SUITES", "run_suites"]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    checks: int
    detail: str = ""
    seconds: float = 0.0


class _Fail(Exception):
    pass


def _require(cond: bool, msg: str):
    if not cond:
        raise _Fail(msg)


def _random_piradical(rng: random.Random) -> PiRadical:
    return PiRadical(random_rational(rng, 40, 15), rng.randint(-6, 6))


def suite_scalar(rng: random.Random) -> int:
    n = 0
    for _ in range(300):
        a, b, c = (_random_piradical(rng) for _ in range(3))
        _require((a * b) * c == a * (b * c) and a * b == b * a, "mul not associative/commutative")
        _require((a / b) * b == a, "div does not invert mul")
        _require(pr_sqrt(a * a) == a, "sqrt(x*x) != x")
        _require(parse_exact(render_exact(a)) == a, f"render/parse round trip failed for {a}")
        fa, fb = pr_to_float(a), pr_to_float(b)
        _require(abs(pr_to_float(a * b) - fa * fb) <= 1e-12 * fa * fb, "float(a*b) != float(a)*float(b)")
        n += 5
    return n


def suite_rank(rng: random.Random) -> int:
    for _ in range(500):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        rows = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        if rng.random() < 0.5 and r > 1:
            # force a dependency
            rows[-1] = [x + 2 * y for x, y in zip(rows[0], rows[1 % r])]
        sv = np.linalg.svd(np.array(rows, dtype=float), compute_uv=False)
        frank = int(np.sum(sv > 1e-9 * sv[0])) if sv[0] > 0 else 0
        _require(linalg.rank_of(linalg.as_matrix(rows)) == frank, f"rank mismatch on {rows}")
    return 500


def suite_words(rng: random.Random) -> int:
    swap = [[0, 1], [1, 0]]
    rot = [[Fraction(3, 5), Fraction(4, 5)], [Fraction(-4, 5), Fraction(3, 5)]]
    rep = Representation(2, [swap, rot, rational_orthogonal(rng, 2)])
    eye = linalg.identity(2)
    for _ in range(200):
        w = GroupWord([(rng.randrange(3), rng.choice([-2, -1, 1, 2])) for _ in range(rng.randint(0, 6))])
        _require(evaluate_word(rep, w * w.inverse()) == eye, f"rho(w w^-1) != I for {w}")
    return 200


def suite_models(rng: random.Random) -> int:
    n = 0
    for spec in builtin_models():
        C = sphere_complex(spec)
        _require(not validate_complex(C), f"{spec} fails validation")
        expected = [spec.m] + [0] * (spec.n - 1) + [spec.m]
        _require(betti_numbers(C) == expected, f"{spec} has Betti numbers {betti_numbers(C)}")
        n += 2
    for _ in range(50):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = [[Fraction(rng.randint(-4, 4)) for _ in range(c)] for _ in range(r)]
        C = twist([GroupRingMatrix.from_rational(m)], Representation.trivial(1))
        _require([list(row) for row in C.boundaries[0]] == m, "rank-1 trivial twist is not the identity")
        n += 1
    return n


def suite_theorem(rng: random.Random) -> int:
    n = 0
    for model in Model:
        for dim in range(1, 11):
            for m in (1, 2, 3):
                for _ in range(20):
                    spec = SphereSpec(dim, random_radius(rng), m, model)
                    got = torsion_exact(sphere_complex(spec), harmonic_homology_basis(spec)).exact
                    _require(got == sphere_torsion_closed(spec).exact, f"theorem fails for {spec}")
                    n += 1
    return n


def suite_spot_values(rng: random.Random) -> int:
    def exact(n, l, m, model=Model.MINIMAL):
        spec = SphereSpec(n, l, m, model)
        return render_exact(torsion_exact(sphere_complex(spec), harmonic_homology_basis(spec)).exact)

    _require(exact(3, 1, 1) == "2*pi^2", "S^3 torsion is not 2*pi^2")
    _require(exact(1, 1, 2) == "4*pi^2", "S^1 rank-2 torsion is not 4*pi^2")
    for _ in range(10):
        _require(exact(2, random_radius(rng), rng.randint(1, 4), rng.choice(list(Model))) == "1",
                 "S^2 torsion is not 1")
    return 12


def suite_weng_you(rng: random.Random) -> int:
    n = 0
    for k in range(11):
        for _ in range(20):
            l = random_radius(rng)
            _require(weng_you_torsion(k, l) == sphere_volume(2 * k + 1, l),
                     f"Weng-You formula differs from the volume at k={k}, l={l}")
            n += 1
    return n


def suite_volume(rng: random.Random) -> int:
    n = 0
    for dim in range(1, 9):
        exact = pr_to_float(sphere_volume(dim, 1))
        quad = volume_quadrature(dim, 1, 1024)
        _require(abs(quad - exact) <= 1e-9 * exact, f"quadrature off for n={dim}: {quad} vs {exact}")
        for _ in range(5):
            l = random_radius(rng)
            _require(sphere_volume(dim, l) == sphere_volume(dim, 1) * PiRadical.from_rational(l**dim),
                     "volume scaling law fails")
        n += 6
    return n


def suite_scaling(rng: random.Random) -> int:
    for _ in range(200):
        spec = SphereSpec(rng.randint(1, 10), random_radius(rng), rng.randint(1, 3))
        C, h = sphere_complex(spec), harmonic_homology_basis(spec)
        alphas = [random_rational(rng, 20, 9) for _ in range(spec.n + 1)]
        factor = ONE
        for q, a in enumerate(alphas):
            if h[q]:
                factor = factor * PiRadical.from_rational(a) ** (-1) ** q
        _require(torsion_exact(C, scale_basis(h, alphas)).exact == factor * torsion_exact(C, h).exact,
                 f"scaling law fails for {spec}")
    return 200


def invariance_corpus(rng: random.Random, count: int = 20):
    corpus = [random_complex(rng) for _ in range(count)]
    for spec in builtin_models():
        corpus.append((sphere_complex(spec), harmonic_homology_basis(spec)))
    return corpus


def suite_invariance(rng: random.Random, trials: int = 100) -> int:
    n = 0
    for C, h in invariance_corpus(rng):
        base = torsion_exact(C, h).exact
        for _ in range(trials):
            _require(torsion_exact(C, h, lifts=random_lifts(rng, C), check=False).exact == base,
                     f"torsion depends on the boundary lift for degrees {C.degrees}")
            _require(torsion_exact(C, recoordinatize(rng, h)).exact == base,
                     f"torsion changes under an orthogonal re-coordinatization, degrees {C.degrees}")
            n += 2
    return n


def suite_product(rng: random.Random) -> int:
    n = 0
    for a_dim in range(1, 7):
        for b_dim in range(1, 7):
            a, b = random_radius(rng), random_radius(rng)
            got = product_torsion_closed(ProductSpec(a_dim, b_dim, a, b)).exact
            if a_dim % 2 == 0 and b_dim % 2 == 1:
                want = sphere_volume(b_dim, b) ** 2
            elif b_dim % 2 == 0 and a_dim % 2 == 1:
                want = sphere_volume(a_dim, a) ** 2
            else:
                want = ONE
            _require(got == want, f"product formula fails for n={a_dim}, k={b_dim}")
            _require(got == product_torsion_closed(ProductSpec(b_dim, a_dim, b, a)).exact,
                     "product formula is not symmetric")
            n += 2
    _require(euler_characteristic(2) == 2 and euler_characteristic(3) == 0, "Euler characteristic")
    return n + 1


def suite_float(rng: random.Random) -> int:
    n = 0
    for spec in builtin_models():
        C, h = sphere_complex(spec), harmonic_homology_basis(spec)
        if C.total_dimension > 64:
            continue
        exact = pr_to_float(torsion_exact(C, h).exact)
        approx = torsion_float(*float_inputs(C, h)).approx
        _require(abs(approx - exact) <= 1e-9 * exact, f"float path off for {spec}")
        n += 1
    for _ in range(20):
        C, h = random_complex(rng)
        exact = pr_to_float(torsion_exact(C, h).exact)
        approx = torsion_float(*float_inputs(C, h)).approx
        _require(abs(approx - exact) <= 1e-9 * exact, f"float path off for degrees {C.degrees}")
        n += 1
    return n


def suite_round_trip(rng: random.Random) -> int:
    n = 0
    for spec in builtin_models():
        C, h = sphere_complex(spec), harmonic_homology_basis(spec)
        C2 = parse_complex_document(dumps(complex_document(C)))
        h2 = parse_basis_document(dumps(basis_document(h)))
        direct = render_exact(torsion_exact(C, h).exact)
        _require(C2 == C and h2 == h, f"document round trip changed {spec}")
        _require(render_exact(torsion_exact(C2, h2).exact) == direct, f"torsion string changed for {spec}")
        n += 2
    return n


SUITES: dict[str, Callable[[random.Random], int]] = {
    "scalar-algebra": suite_scalar,
    "exact-rank": suite_rank,
    "word-inverse": suite_words,
    "builtin-models": suite_models,
    "theorem-reproduction": suite_theorem,
    "spot-values": suite_spot_values,
    "weng-you": suite_weng_you,
    "volume": suite_volume,
    "scaling-law": suite_scaling,
    "lift-and-orthogonal-invariance": suite_invariance,
    "product-formula": suite_product,
    "float-path": suite_float,
    "document-round-trip": suite_round_trip,
}


def _run_one(name: str, seed: int) -> SuiteResult:
    t0 = time.perf_counter()
    rng = random.Random(f"{seed}:{name}")
    try:
        checks = SUITES[name](rng)
    except _Fail as exc:
        return SuiteResult(name, False, 0, str(exc), time.perf_counter() - t0)
    except Exception as exc:  # a crash is a failed suite, not a crashed selfcheck
        return SuiteResult(name, False, 0, f"{type(exc).__name__}: {exc}", time.perf_counter() - t0)
    return SuiteResult(name, True, checks, "", time.perf_counter() - t0)


def run_suites(names: list[str] | None = None, seed: int = 0, jobs: int = 1) -> list[SuiteResult]:
    names = list(SUITES) if not names else names
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suites: {', '.join(unknown)}")
    if jobs <= 1:
        return [_run_one(n, seed) for n in names]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_one, names, [seed] * len(names)))
