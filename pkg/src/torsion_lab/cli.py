"""Command-line entry point: ``torsion-lab <subcommand> ...``.

The JSON report goes to stdout and a one-line human summary to stderr.
Exit codes: 0 success, 1 input error, 2 internal inconsistency, 3 selfcheck failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .documents import (
    SCHEMA,
    basis_document,
    complex_document,
    dumps,
    exact_entry,
    float15,
    parse_basis_document,
    parse_complex_document,
    torsion_report,
)
from .errors import DegenerateBasisError, InconsistencyError, InputError, NotRepresentableError
from .scalar import render_exact
from .selfcheck import SUITES, run_suites
from .spheres import (
    Model,
    ProductSpec,
    SphereSpec,
    harmonic_homology_basis,
    product_torsion_closed,
    sphere_complex,
    sphere_torsion_closed,
    sphere_volume,
    volume_quadrature,
    weng_you_torsion,
)
from .torsion import GradedBasis, float_inputs, torsion_exact, torsion_float

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_SELFCHECK = 0, 1, 2, 3


def _radius(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"radius must be a rational p/q, got {text!r}") from None
    if q <= 0:
        raise argparse.ArgumentTypeError(f"radius must be positive, got {text!r}")
    return q


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torsion-lab", description="Exact Reidemeister torsion.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sphere", help="torsion of a round sphere through the cellular engine")
    s.add_argument("--dim", type=_positive_int, required=True)
    s.add_argument("--radius", type=_radius, default=Fraction(1))
    s.add_argument("--rank", type=_positive_int, default=1)
    s.add_argument("--model", choices=[m.value for m in Model], default="minimal")
    s.add_argument("--verbose", action="store_true", help="include per-degree determinants")

    s = sub.add_parser("product", help="closed-form torsion of S^n_a x S^k_b")
    s.add_argument("--dims", type=_positive_int, nargs=2, metavar=("N", "K"), required=True)
    s.add_argument("--radii", type=_radius, nargs=2, metavar=("A", "B"),
                   default=[Fraction(1), Fraction(1)])

    s = sub.add_parser("wengyou", help="2 pi^(k+1) l^(2k+1) / k!")
    s.add_argument("--k", type=_nonneg_int, required=True)
    s.add_argument("--radius", type=_radius, default=Fraction(1))

    s = sub.add_parser("torsion", help="torsion of a complex document")
    s.add_argument("--complex", type=Path, required=True, dest="complex_file")
    s.add_argument("--basis", type=Path, dest="basis_file")
    s.add_argument("--float", action="store_true", dest="use_float")
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--verbose", action="store_true")

    s = sub.add_parser("volume", help="exact sphere volume, optionally with the quadrature oracle")
    s.add_argument("--dim", type=_positive_int, required=True)
    s.add_argument("--radius", type=_radius, default=Fraction(1))
    s.add_argument("--quadrature", type=int, metavar="PANELS")

    s = sub.add_parser("export", help="write a built-in sphere model and its harmonic basis")
    s.add_argument("--dim", type=_positive_int, required=True)
    s.add_argument("--radius", type=_radius, default=Fraction(1))
    s.add_argument("--rank", type=_positive_int, default=1)
    s.add_argument("--model", choices=[m.value for m in Model], default="minimal")
    s.add_argument("--complex-out", type=Path, required=True)
    s.add_argument("--basis-out", type=Path, required=True)

    s = sub.add_parser("selfcheck", help="run the property suites")
    s.add_argument("--suite", action="append", choices=list(SUITES))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=_positive_int, default=1)
    return p


def _sphere(args) -> tuple[dict, str]:
    spec = SphereSpec(args.dim, args.radius, args.rank, Model(args.model))
    t = torsion_exact(sphere_complex(spec), harmonic_homology_basis(spec))
    closed = sphere_torsion_closed(spec).exact
    if t.exact != closed:
        raise InconsistencyError(
            f"engine gives {render_exact(t.exact)} but the closed form gives {render_exact(closed)}")
    echo = {"command": "sphere", "dim": spec.n, "radius": str(spec.l), "rank": spec.m,
            "model": spec.model.value}
    report = torsion_report(t, echo, verbose=args.verbose)
    return report, f"tau(S^{spec.n}, l={spec.l}, rank {spec.m}) = {render_exact(t.exact)}"


def _product(args) -> tuple[dict, str]:
    spec = ProductSpec(args.dims[0], args.dims[1], args.radii[0], args.radii[1])
    t = product_torsion_closed(spec)
    echo = {"command": "product", "dims": [spec.n, spec.k], "radii": [str(spec.a), str(spec.b)]}
    return torsion_report(t, echo), f"T(S^{spec.n} x S^{spec.k}) = {render_exact(t.exact)}"


def _wengyou(args) -> tuple[dict, str]:
    v = weng_you_torsion(args.k, args.radius)
    echo = {"command": "wengyou", "k": args.k, "radius": str(args.radius)}
    report = {"schema": SCHEMA, "input": echo, "torsion": exact_entry(v),
              "volume": exact_entry(sphere_volume(2 * args.k + 1, args.radius)),
              "status": "ok"}
    return report, f"T(S^{2 * args.k + 1}) = {render_exact(v)}"


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _torsion(args) -> tuple[dict, str]:
    C = parse_complex_document(_read(args.complex_file))
    h = parse_basis_document(_read(args.basis_file)) if args.basis_file else GradedBasis({})
    echo = {"command": "torsion", "complex": str(args.complex_file),
            "basis": str(args.basis_file) if args.basis_file else None,
            "float": args.use_float, "degrees": list(C.degrees)}
    if args.use_float:
        echo["tol"] = args.tol
        t = torsion_float(*float_inputs(C, h), tol=args.tol)
        return torsion_report(t, echo, verbose=args.verbose), f"tau = {t.approx:.15g}"
    t = torsion_exact(C, h)
    return torsion_report(t, echo, verbose=args.verbose), f"tau = {render_exact(t.exact)}"


def _volume(args) -> tuple[dict, str]:
    v = sphere_volume(args.dim, args.radius)
    echo = {"command": "volume", "dim": args.dim, "radius": str(args.radius)}
    report = {"schema": SCHEMA, "input": echo, "volume": exact_entry(v)}
    if args.quadrature is not None:
        echo["quadrature"] = args.quadrature
        quad = volume_quadrature(args.dim, args.radius, args.quadrature)
        exact = report["volume"]["float"]
        report["quadrature"] = {"float": float15(quad),
                                "relative_error": float(f"{abs(quad - exact) / exact:.3g}")}
    report["status"] = "ok"
    return report, f"Vol(S^{args.dim}_{args.radius}) = {render_exact(v)}"


def _export(args) -> tuple[dict, str]:
    spec = SphereSpec(args.dim, args.radius, args.rank, Model(args.model))
    args.complex_out.write_text(dumps(complex_document(sphere_complex(spec))) + "\n", encoding="utf-8")
    args.basis_out.write_text(dumps(basis_document(harmonic_homology_basis(spec))) + "\n",
                              encoding="utf-8")
    echo = {"command": "export", "dim": spec.n, "radius": str(spec.l), "rank": spec.m,
            "model": spec.model.value}
    report = {"schema": SCHEMA, "input": echo,
              "files": {"complex": str(args.complex_out), "basis": str(args.basis_out)},
              "status": "ok"}
    return report, f"wrote {args.complex_out} and {args.basis_out}"


def _selfcheck(args) -> tuple[dict, str]:
    results = run_suites(args.suite, seed=args.seed, jobs=args.jobs)
    failed = [r for r in results if not r.passed]
    report = {
        "schema": SCHEMA,
        "input": {"command": "selfcheck", "seed": args.seed, "suites": [r.name for r in results]},
        "suites": [{"name": r.name, "passed": r.passed, "checks": r.checks, "detail": r.detail}
                   for r in results],
        "status": "ok" if not failed else "failed",
    }
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.checks} checks, {r.seconds:.2f}s)"
             + (f": {r.detail}" if r.detail else "") for r in results]
    return report, "\n".join(lines)


COMMANDS = {
    "sphere": _sphere,
    "product": _product,
    "wengyou": _wengyou,
    "torsion": _torsion,
    "volume": _volume,
    "export": _export,
    "selfcheck": _selfcheck,
}


def run_cli(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    t0 = time.perf_counter()
    try:
        report, summary = COMMANDS[args.command](args)
        code = EXIT_SELFCHECK if report.get("status") == "failed" else EXIT_OK
    except (InputError, NotRepresentableError, DegenerateBasisError) as exc:
        report, summary, code = _error(args.command, "input-error", exc), f"error: {exc}", EXIT_INPUT
    except InconsistencyError as exc:
        report, summary, code = _error(args.command, "internal-error", exc), f"internal error: {exc}", EXIT_INTERNAL
    report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    print(json.dumps(report, indent=2), file=stdout)
    print(summary, file=stderr)
    return code


def _error(command: str, status: str, exc: Exception) -> dict:
    return {"schema": SCHEMA, "input": {"command": command}, "status": status, "message": str(exc)}


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
