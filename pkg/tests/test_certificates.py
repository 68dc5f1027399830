import json

import pytest

from isoschubert.certificates import (
    ASSUMPTIONS,
    Hypotheses,
    WittProfile,
    corrupt_table,
    derived_j_prefix,
    incompressibility_certificate,
    propagate_hypotheses,
    validate_witt_profile,
)
from isoschubert.tablefile import load_tables


def test_witt_profiles():
    assert validate_witt_profile(WittProfile(7, (0, 1, 2, 3))) == (True, [])
    ok, bad = validate_witt_profile(WittProfile(7, (0, 0, 2)))
    assert not ok and any("strictly increasing" in b for b in bad) and any("j_h" in b for b in bad)
    ok, bad = validate_witt_profile(WittProfile(7, (0, 1, 2)))
    assert not ok and bad == ["j_h = 2 but [dim/2] = 3"]
    assert WittProfile(9, (0, 1, 2, 4)).i_sequence == (1, 1, 2)


def test_propagation():
    facts = propagate_hypotheses(Hypotheses(True, True, 4))
    assert derived_j_prefix(facts) == (0, 1, 2)
    assert any(f.statement == "i_0(phi over F(X_2)) = 2" for f in facts)
    assert all(f.tag == "cited, not machine-proved" for f in facts)
    assert propagate_hypotheses(Hypotheses(False, True, 4)) == []
    with pytest.raises(ValueError):
        Hypotheses(True, True, 2)


@pytest.mark.parametrize("n", [3, 4])
def test_certificate_passes(n):
    rep = incompressibility_certificate(n)
    assert rep.verdict, rep.failing
    names = {i.name for i in rep.items}
    assert {"mult", "teles", "lemma-tech", "pairing", "weyl-table", "motive", "middle-ranks", "witt"} <= names
    displays = " ".join(i.display for i in rep.items)
    for d in ("(mult)", "(teles)", "(tau)", "(gamp)", "double-coset table"):
        assert d in displays


def test_certificate_assumptions():
    rep = incompressibility_certificate(3)
    text = " ".join(rep.assumptions)
    for name in ("witt1", "witt2", "BRV Lem. 6.1", "Springer"):
        assert name in text
    assert rep.assumptions == list(ASSUMPTIONS)


def test_certificate_deterministic():
    a = json.dumps(incompressibility_certificate(3).to_dict(), sort_keys=True)
    b = json.dumps(incompressibility_certificate(3).to_dict(), sort_keys=True)
    assert a == b


@pytest.mark.parametrize("family", ["B", "C"])
def test_fault_injection(family):
    bundle = load_tables(3)
    rep = incompressibility_certificate(3, corrupt_table(bundle, family))
    assert not rep.verdict
    assert "mult" in rep.failing
    # the original tables are untouched
    assert incompressibility_certificate(3, bundle).verdict


def test_missing_full_table_fails_cleanly():
    bundle = load_tables(3, full=False)
    rep = incompressibility_certificate(3, bundle)
    assert rep.item("pairing").status == "fail"
    assert rep.item("mult").status == "pass"
