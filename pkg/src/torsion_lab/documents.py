"""JSON documents for complexes, homology bases and reports (schema ``torsion-lab/1``)."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .chain import (
    ChainComplex,
    GroupRingElement,
    GroupRingMatrix,
    GroupWord,
    Representation,
    ensure_valid,
    twist,
)
from .errors import InputError
from .scalar import PiRadical, pr_to_float, render_exact
from .torsion import GradedBasis, ScaledVector, TorsionValue

SCHEMA = "torsion-lab/1"

__all__ = [
    "SCHEMA",
    "parse_fraction",
    "format_fraction",
    "parse_complex_document",
    "complex_document",
    "group_ring_document",
    "parse_basis_document",
    "basis_document",
    "dumps",
    "float15",
    "torsion_report",
]


def parse_fraction(x: Any, where: str = "value") -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")
    try:
        return Fraction(x.strip() if isinstance(x, str) else x)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: malformed fraction {x!r}") from None


def format_fraction(q: Fraction) -> str | int:
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _load(text: str | bytes | dict) -> dict:
    if isinstance(text, dict):
        doc = text
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {exc.lineno} column {exc.colno}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise InputError("document root must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise InputError(f"schema: expected {SCHEMA!r}, got {doc.get('schema')!r}")
    return doc


def _matrix(raw: Any, rows: int, cols: int, where: str, entry) -> list[list]:
    if cols == 0 and raw == []:
        # zero-column matrices may be written as [] instead of [[], ..., []]
        raw = [[] for _ in range(rows)]
    if not isinstance(raw, list) or len(raw) != rows:
        raise InputError(f"{where}: expected {rows} rows")
    out = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != cols:
            raise InputError(f"{where}[{i}]: expected {cols} entries")
        out.append([entry(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return out


def _group_ring_entry(raw: Any, where: str) -> GroupRingElement:
    if not isinstance(raw, list):
        raise InputError(f"{where}: group-ring entry must be a list of [coeff, word] terms")
    terms = []
    for t, term in enumerate(raw):
        if not (isinstance(term, list) and len(term) == 2 and isinstance(term[1], list)):
            raise InputError(f"{where}[{t}]: term must be [coeff, [[gen, exp], ...]]")
        letters = []
        for letter in term[1]:
            if not (isinstance(letter, list) and len(letter) == 2
                    and all(isinstance(x, int) and not isinstance(x, bool) for x in letter)):
                raise InputError(f"{where}[{t}]: letters must be [gen, exp] integer pairs")
            letters.append(letter)
        try:
            word = GroupWord(letters)
        except InputError as exc:
            raise InputError(f"{where}[{t}]: {exc}") from None
        terms.append((parse_fraction(term[0], f"{where}[{t}] coeff"), word))
    return GroupRingElement(terms)


def parse_complex_document(text: str | bytes | dict) -> ChainComplex:
    """Parse and validate a complex document; group-ring forms are twisted first."""
    doc = _load(text)
    degrees = doc.get("degrees")
    if (not isinstance(degrees, list) or not degrees
            or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 0 for d in degrees)):
        raise InputError("degrees: expected a non-empty list of non-negative integers")
    raw_b = doc.get("boundaries")
    if not isinstance(raw_b, list) or len(raw_b) != len(degrees) - 1:
        raise InputError(f"boundaries: expected {len(degrees) - 1} matrices")
    if "representation" in doc:
        rep_doc = doc["representation"]
        if not isinstance(rep_doc, dict) or not isinstance(rep_doc.get("rank"), int):
            raise InputError("representation: expected {'rank': m, 'images': [...]}")
        m = rep_doc["rank"]
        images = [
            _matrix(img, m, m, f"representation.images[{g}]", parse_fraction)
            for g, img in enumerate(rep_doc.get("images", []))
        ]
        rep = Representation(m, images)
        B = [GroupRingMatrix(_matrix(b, degrees[q], degrees[q + 1], f"boundaries[{q}]",
                                     _group_ring_entry), degrees[q], degrees[q + 1])
             for q, b in enumerate(raw_b)]
        return twist(B, rep, degrees=degrees)
    mats = [_matrix(b, degrees[q], degrees[q + 1], f"boundaries[{q}]", parse_fraction)
            for q, b in enumerate(raw_b)]
    return ensure_valid(ChainComplex(degrees, mats))


def complex_document(C: ChainComplex) -> dict:
    return {
        "schema": SCHEMA,
        "degrees": list(C.degrees),
        "boundaries": [[[format_fraction(x) for x in row] for row in m] for m in C.boundaries],
    }


def group_ring_document(B: list[GroupRingMatrix], rep: Representation) -> dict:
    def entry(e: GroupRingElement):
        return [[format_fraction(c), [list(letter) for letter in w.letters]] for c, w in e.terms]

    return {
        "schema": SCHEMA,
        "degrees": [B[0].rows] + [b.cols for b in B] if B else [0],
        "boundaries": [[[entry(e) for e in row] for row in b.entries] for b in B],
        "representation": {
            "rank": rep.rank,
            "images": [[[format_fraction(x) for x in row] for row in img] for img in rep.images],
        },
    }


def parse_basis_document(text: str | bytes | dict) -> GradedBasis:
    doc = _load(text)
    blocks = doc.get("basis")
    if not isinstance(blocks, list):
        raise InputError("basis: expected a list of {degree, vectors} blocks")
    out: dict[int, list[ScaledVector]] = {}
    for i, block in enumerate(blocks):
        where = f"basis[{i}]"
        if not isinstance(block, dict) or not isinstance(block.get("degree"), int):
            raise InputError(f"{where}: expected an integer 'degree'")
        q = block["degree"]
        if q in out:
            raise InputError(f"{where}: degree {q} listed twice")
        vecs = []
        for j, v in enumerate(block.get("vectors", [])):
            vw = f"{where}.vectors[{j}]"
            scale = v.get("scale") if isinstance(v, dict) else None
            if not isinstance(scale, dict) or not isinstance(scale.get("u", 0), int):
                raise InputError(f"{vw}.scale: expected {{'s': 'p/q', 'u': k}}")
            s = parse_fraction(scale.get("s", 1), f"{vw}.scale.s")
            if s <= 0:
                raise InputError(f"{vw}.scale.s must be positive")
            coords = v.get("coords")
            if not isinstance(coords, list):
                raise InputError(f"{vw}.coords: expected a list")
            try:
                vecs.append(ScaledVector(PiRadical(s, scale.get("u", 0)),
                                         [parse_fraction(c, f"{vw}.coords[{k}]")
                                          for k, c in enumerate(coords)]))
            except InputError as exc:
                raise InputError(f"{vw}: {exc}") from None
        out[q] = vecs
    return GradedBasis(out)


def basis_document(h: GradedBasis) -> dict:
    return {
        "schema": SCHEMA,
        "basis": [
            {
                "degree": q,
                "vectors": [
                    {"scale": {"s": str(format_fraction(v.scale.s)), "u": v.scale.u},
                     "coords": [format_fraction(c) for c in v.coords]}
                    for v in vecs
                ],
            }
            for q, vecs in h.vectors.items()
        ],
    }


def float15(x: float) -> float:
    """Round to 15 significant digits."""
    return float(f"{x:.15g}")


def exact_entry(v: PiRadical) -> dict:
    return {"exact": render_exact(v), "float": float15(pr_to_float(v))}


def torsion_report(t: TorsionValue, echo: dict, verbose: bool = False) -> dict:
    report: dict[str, Any] = {"schema": SCHEMA, "input": echo}
    if t.exact is not None:
        report["torsion"] = exact_entry(t.exact)
    else:
        report["torsion"] = {"exact": None, "float": float15(t.approx),
                             "error_bound": float(f"{t.error_bound:.3g}")}
    if verbose:
        rows = []
        for f in t.per_degree:
            if isinstance(f.abs_det, PiRadical):
                row = exact_entry(f.abs_det)
            else:
                row = {"exact": None, "float": float15(f.abs_det)}
            rows.append({"degree": f.degree, "exponent": f.exponent, **row})
        report["per_degree"] = rows
    report["status"] = "ok"
    return report


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)
