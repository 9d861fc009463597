import json
from fractions import Fraction

import pytest

from torsion_lab import linalg
from torsion_lab.chain import GroupRingElement, GroupRingMatrix, GroupWord, Representation
from torsion_lab.documents import (
    SCHEMA,
    basis_document,
    complex_document,
    dumps,
    group_ring_document,
    parse_basis_document,
    parse_complex_document,
)
from torsion_lab.errors import InputError
from torsion_lab.scalar import render_exact
from torsion_lab.spheres import Model, SphereSpec, builtin_models, harmonic_homology_basis, sphere_complex
from torsion_lab.torsion import torsion_exact


def doc(**kw):
    return json.dumps({"schema": SCHEMA, **kw})


def test_minimal_s3_document():
    C = parse_complex_document(doc(degrees=[1, 0, 0, 1], boundaries=[[[]], [], []]))
    assert C.degrees == (1, 0, 0, 1)
    assert all(linalg.is_zero(C.boundary(q)) for q in (1, 2, 3))
    assert parse_complex_document(doc(degrees=[1, 0, 0, 1], boundaries=[[], [], []])) == C
    assert complex_document(C)["boundaries"] == [[[]], [], []]


def test_dd_failure_located():
    with pytest.raises(InputError, match="degree 1: dd=0"):
        parse_complex_document(doc(degrees=[1, 1, 1], boundaries=[[[1]], [[1]]]))


def test_hemispheric_s2_round_trip():
    C = sphere_complex(SphereSpec(2, model=Model.HEMISPHERIC))
    assert parse_complex_document(dumps(complex_document(C))) == C


def test_fraction_strings():
    C = parse_complex_document(doc(degrees=[1, 2], boundaries=[[["1/2", "-3/4"]]]))
    assert C.boundary(1) == [[Fraction(1, 2), Fraction(-3, 4)]]
    assert complex_document(C)["boundaries"] == [[["1/2", "-3/4"]]]


@pytest.mark.parametrize(
    "text, where",
    [
        ("{", "line 1"),
        (json.dumps({"schema": "other", "degrees": [1], "boundaries": []}), "schema"),
        (doc(degrees=[1, 1], boundaries=[]), "boundaries"),
        (doc(degrees=[1, 1], boundaries=[[[1, 2]]]), r"boundaries\[0\]\[0\]"),
        (doc(degrees=[1, 1], boundaries=[[["x"]]]), r"boundaries\[0\]\[0\]\[0\]"),
        (doc(degrees=[1, 1], boundaries=[[[1.5]]]), r"boundaries\[0\]\[0\]\[0\]"),
        (doc(degrees=[-1], boundaries=[]), "degrees"),
    ],
)
def test_schema_errors(text, where):
    with pytest.raises(InputError, match=where):
        parse_complex_document(text)


def test_group_ring_document():
    g = [[0, 1]]
    text = doc(degrees=[1, 1], boundaries=[[[[["1", g], ["-1", []]]]]],
               representation={"rank": 2, "images": [[[0, 1], [1, 0]]]})
    C = parse_complex_document(text)
    assert C.degrees == (2, 2)
    assert C.boundary(1) == linalg.as_matrix([[-1, 1], [1, -1]])


def test_group_ring_round_trip():
    e = GroupRingElement([(Fraction(1, 2), GroupWord([(0, 1), (1, -1)])), (-1, GroupWord())])
    B = [GroupRingMatrix([[e, GroupRingElement.scalar(0)]])]
    rot = [[Fraction(3, 5), Fraction(4, 5)], [Fraction(-4, 5), Fraction(3, 5)]]
    rep = Representation(2, [rot, [[1, 0], [0, -1]]])
    text = dumps(group_ring_document(B, rep))
    from torsion_lab.chain import twist
    assert parse_complex_document(text) == twist(B, rep)


def test_non_orthogonal_rejected():
    text = doc(degrees=[1, 1], boundaries=[[[[["1", [[0, 1]]]]]]],
               representation={"rank": 2, "images": [[[1, 1], [0, 1]]]})
    with pytest.raises(InputError, match="not orthogonal"):
        parse_complex_document(text)


def test_group_ring_bad_term():
    text = doc(degrees=[1, 1], boundaries=[[[["1"]]]], representation={"rank": 1, "images": []})
    with pytest.raises(InputError, match=r"boundaries\[0\]\[0\]\[0\]\[0\]"):
        parse_complex_document(text)


def test_basis_round_trip():
    for spec in builtin_models(max_dim=5):
        h = harmonic_homology_basis(spec)
        assert parse_basis_document(dumps(basis_document(h))) == h


def test_basis_schema():
    d = basis_document(harmonic_homology_basis(SphereSpec(3)))
    assert d["schema"] == SCHEMA
    assert d["basis"][0] == {"degree": 0, "vectors": [{"scale": {"s": "2", "u": 2}, "coords": [1]}]}


def test_basis_errors():
    with pytest.raises(InputError, match=r"basis\[0\].vectors\[0\].scale"):
        parse_basis_document(doc(basis=[{"degree": 0, "vectors": [{"scale": 3, "coords": [1]}]}]))
    with pytest.raises(InputError, match="positive"):
        parse_basis_document(doc(basis=[{"degree": 0, "vectors": [{"scale": {"s": "-1", "u": 0},
                                                                    "coords": [1]}]}]))
    with pytest.raises(InputError, match="twice"):
        parse_basis_document(doc(basis=[{"degree": 0, "vectors": []}, {"degree": 0, "vectors": []}]))


def test_round_trip_torsion_strings():
    for spec in builtin_models():
        C, h = sphere_complex(spec), harmonic_homology_basis(spec)
        C2 = parse_complex_document(dumps(complex_document(C)))
        h2 = parse_basis_document(dumps(basis_document(h)))
        assert render_exact(torsion_exact(C2, h2).exact) == render_exact(torsion_exact(C, h).exact)
