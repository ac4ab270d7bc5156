import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import can_be_true, entails_oracle, random_cond

from coherent.entailment import (
    disjunctive_characterization,
    p_consistent,
    p_entails_direct,
    p_entails_iterated,
    p_entails_pair,
    p_entails_qc_witness,
    verdicts,
)
from coherent.errors import NotPConsistent, TrivialPremise, UnsupportedArity
from coherent.events import atoms

A, B, C = atoms("A B C")


def test_modus_ponens_three_ways():
    fam, concl = [C.given(A), A.given()], C.given()
    assert p_entails_direct(fam, concl)
    qc = p_entails_qc_witness(fam, concl)
    assert qc.holds and qc.witness == (1, 2)
    it = p_entails_iterated(fam, concl)
    assert it.holds and str(it.mu_set) == "{1}"


def test_tautological_conclusion_and_pair():
    assert p_entails_qc_witness([A.given()], (A | ~A).given(B)).witness == "tautology"
    assert p_entails_pair((A & B).given(C), A.given(C))
    assert not p_entails_pair(A.given(C), (A & B).given(C))
    with pytest.raises(TrivialPremise):
        p_entails_pair((A & ~A).given(), B.given())


def test_inconsistent_family_rejected():
    assert not p_consistent([A.given(), (~A).given()])
    with pytest.raises(NotPConsistent):
        p_entails_direct([A.given(), (~A).given()], B.given())


def test_characterization_cases():
    assert disjunctive_characterization([C.given(A), A.given()], C.given()) == "iterated-pair-QC"
    assert disjunctive_characterization([C.given(A), B.given()], C.given(A)) == "iterated-singleton-1"
    assert disjunctive_characterization([C.given(B), B.given(A)], C.given(A)) == "none"
    assert disjunctive_characterization([C.given(B), B.given(A)], (C | ~C).given(A)) == "conclusion-constant-1"
    with pytest.raises(UnsupportedArity):
        disjunctive_characterization([A.given()], B.given())


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_three_routes_agree(rng):
    fam = [random_cond(rng) for _ in range(rng.choice((1, 2)))]
    concl = random_cond(rng)
    if not all(can_be_true(c) for c in fam) or not p_consistent(fam):
        return
    vs = verdicts(fam, concl)
    assert len({v.holds for v in vs}) == 1
    assert vs[0].holds == entails_oracle(fam, concl)


def test_verdicts_are_deterministic_and_serializable():
    fam, concl = [C.given(B), B.given(A)], C.given(A)
    first = json.dumps([v.to_dict() for v in verdicts(fam, concl)], sort_keys=True)
    second = json.dumps([v.to_dict() for v in verdicts(fam, concl)], sort_keys=True)
    assert first == second
    assert json.loads(first)[2]["mu_set"] == "[0,1]"
