import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import can_be_true, coherent_oracle, frechet, mu_coherent, random_cond

from coherent.coherence import (
    check_coherence,
    coherence_report,
    coherent_mu_set,
    entails_with_defaults,
    extension_interval,
    rational,
    strict_region_nonempty,
)
from coherent.compound import conjunction2, indicator, iterated2
from coherent.errors import IncoherentBase, TrivialIterated, UnboundSymbol
from coherent.events import atoms
from coherent.intervals import RationalInterval

A, B, C, H, K = atoms("A B C H K")


def test_modus_ponens_incoherent_at_zero():
    assert not check_coherence([C.given(A), A.given(), C.given()], [1, 1, 0])
    assert check_coherence([C.given(A), A.given(), C.given()], [1, 1, 1])


def test_report_shape():
    rep = coherence_report([A.given(H), B.given(H), (A & B).given(H)], ["1/2", "1/2", "1/4"])
    d = rep.to_dict()
    assert d["coherent"] and d["recursion_depth"] >= 1
    assert all(isinstance(v, str) for level in d["certificate"] for v in level.values())


def test_deeper_level_needed():
    # P(A) = 0 leaves C|A undetermined at the first level
    rep = coherence_report([A.given(), C.given(A)], [0, Fraction(1, 3)])
    assert rep.coherent and rep.recursion_depth == 2


def test_exact_inputs_only():
    assert rational("0.25") == Fraction(1, 4)
    with pytest.raises(TypeError):
        rational(0.5)
    with pytest.raises(ValueError):
        rational("1e-1")
    with pytest.raises(ValueError):
        check_coherence([A.given()], [Fraction(3, 2)])


def test_extension_examples():
    assert extension_interval([A.given(), C.given(A)], ["1/2", "1/2"], C.given()) == RationalInterval(
        Fraction(1, 4), Fraction(3, 4)
    )
    assert extension_interval([C.given(B), B.given(A)], [1, 1], C.given(A)) == RationalInterval(0, 1)
    with pytest.raises(IncoherentBase):
        extension_interval([A.given(), (~A).given()], [1, 1], C.given())


@settings(max_examples=30, deadline=None)
@given(st.fractions(0, 1, max_denominator=8), st.fractions(0, 1, max_denominator=8))
def test_frechet_bounds(x, y):
    q = conjunction2(A.given(H), B.given(K))
    got = extension_interval([indicator(A.given(H), "x"), indicator(B.given(K), "y")], {"x": x, "y": y}, q)
    assert got == RationalInterval(*frechet(x, y))


def test_extension_agrees_with_grid_scan():
    rng = random.Random(5)
    grid = [Fraction(i, 6) for i in range(7)]
    for _ in range(12):
        fam = [random_cond(rng, ("A", "B", "C")) for _ in range(2)]
        target = random_cond(rng, ("A", "B", "C"))
        vals = [rng.choice(grid) for _ in fam]
        if not coherent_oracle(fam, vals):
            continue
        iv = extension_interval(fam, vals, target)
        for v in grid:
            assert (v in iv) == coherent_oracle([*fam, target], [*vals, v])


def test_mu_set_against_single_object_oracle():
    rng = random.Random(9)
    grid = [Fraction(i, 8) for i in range(9)]
    checked = 0
    for _ in range(60):
        ante, cons = random_cond(rng), random_cond(rng)
        if not can_be_true(ante):
            continue
        q = iterated2(cons, ante)
        b = {s: rng.choice(grid) for s in q.free_symbols}
        try:
            mus = coherent_mu_set(q, b)
        except TrivialIterated:
            continue
        checked += 1
        for mu in grid:
            assert (mu in mus) == mu_coherent(q, b, mu)
    assert checked > 20


def test_mu_set_needs_bindings():
    with pytest.raises(UnboundSymbol):
        coherent_mu_set(iterated2(B.given(K), A.given(H)), {})


def test_negated_defaults():
    # P(C) = P(C|A) = 1 with P(C|~A) < 1 forces P(A) = 1
    assert entails_with_defaults([C.given(), C.given(A)], [C.given(~A)], A.given())
    assert strict_region_nonempty([C.given(), C.given(A)], [C.given(~A)])
    assert not entails_with_defaults([C.given(), C.given(A)], [], A.given())
