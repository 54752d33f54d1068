from __future__ import annotations

import pytest

from hopf_cyclic.catalog import catalog, entry, h_algebra, idempotent
from hopf_cyclic.serialize import dumps


def test_every_entry_verifies():
    entries = catalog()
    assert len(entries) == 35
    assert len({e.name for e in entries}) == len(entries)
    for e in entries:
        assert e.verify().ok, e.name
        assert e.description


def test_deterministic_payloads():
    first = {e.name: dumps(e.payload) for e in catalog()}
    second = {e.name: dumps(e.build()) for e in catalog(verify=False)}
    assert first == second


def test_lookup_errors():
    with pytest.raises(KeyError):
        entry("no-such-entry")
    with pytest.raises(KeyError):
        h_algebra("kc2", "nothing")
    with pytest.raises(KeyError):
        idempotent("nothing")
