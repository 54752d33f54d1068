from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopf_cyclic.catalog import catalog, kc2, sign_line, sweedler_h4
from hopf_cyclic.hopf import FinHopf
from hopf_cyclic.report import VerificationError
from hopf_cyclic.serialize import (
    FormatError,
    cochain_from_json,
    cochain_to_json,
    dumps,
    from_json,
    hopf_from_json,
    hopf_to_json,
    load,
    periodic_cochain_to_json,
)

EXPORT_ONLY = {"symbolic-hopf", "generator-action", "presented-representation", "poly-matrix"}


@pytest.mark.parametrize("entry", catalog(), ids=lambda e: e.name)
def test_catalog_round_trip(entry):
    text = dumps(entry.payload)
    obj = json.loads(text)
    if obj.get("kind") in EXPORT_ONLY:
        with pytest.raises(FormatError):
            from_json(obj)
        return
    assert dumps(from_json(obj)) == text


def test_hopf_fields():
    obj = hopf_to_json(sweedler_h4())
    assert obj["dim"] == 4
    # row i lists the coefficients of S(e_i); S(x) = -gx
    assert obj["antipode"][2] == ["0/1", "0/1", "0/1", "-1/1"]
    H = hopf_from_json(obj)
    assert isinstance(H, FinHopf) and H.verify_hopf_axioms().ok


def test_invalid_hopf_rejected():
    obj = hopf_to_json(sweedler_h4())
    obj["antipode"] = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    with pytest.raises(VerificationError):
        hopf_from_json(obj)
    H = hopf_from_json(obj, validate=False)
    assert not H.verify_hopf_axioms().ok


def test_malformed_inputs():
    obj = hopf_to_json(kc2())
    obj["dim"] = 3
    with pytest.raises(FormatError):
        hopf_from_json(obj)
    with pytest.raises(FormatError):
        from_json({"kind": "nonsense"})


@given(st.dictionaries(st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1)), st.fractions(max_denominator=6).filter(bool), max_size=6))
@settings(max_examples=50, deadline=None)
def test_cochain_round_trip(f):
    n, g = cochain_from_json(json.loads(json.dumps(cochain_to_json(f, 1))))
    assert n == 1 and g == f


def test_periodic_cochain(tmp_path):
    obj = periodic_cochain_to_json([{(0, 0): 1}, {(0, 0, 0, 1): -2}])
    assert obj["kind"] == "periodic-cochain"
    assert [cochain_from_json(c)[0] for c in obj["components"]] == [0, 2]
    path = tmp_path / "ha.json"
    path.write_text(dumps(sign_line()))
    back = load(path)
    assert back.algebra.labels == sign_line().algebra.labels
