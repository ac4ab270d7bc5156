import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import all_worlds, cond_names, random_cond, status

from coherent.compound import (
    closure,
    conjunction,
    conjunction2,
    conjunction3,
    conjunction_can_be_positive,
    conjunction_with_gn,
    indicator,
    iterated2,
    iterated_on_conjunction,
    quasi_conjunction,
    reduce_equal_crq,
)
from coherent.errors import NotGnImplied, TrivialIterated, UnsupportedArity
from coherent.events import ConditionalEvent, Frame, atoms
from coherent.poly import Poly

A, B, C, H, K = atoms("A B C H K")


def values_of(q):
    return {row["value"] for row in q.table()}


def test_conjunction_table_has_five_rows():
    q = conjunction2(A.given(H), B.given(K))
    table = {row["value"]: row["constituent"] for row in q.table()}
    assert set(table) == {"1", "0", "x", "y", "z"}
    assert table["1"] == "A&B&H&K"
    assert table["z"] == "~H&~K"
    assert table["x"] == "B&~H&K"
    assert table["y"] == "A&H&~K"


def test_iterated_table_six_values():
    q = iterated2(B.given(K), A.given(H))
    assert values_of(q) == {"1", "0", "y", "x + mu - mu*x", "mu - mu*x", "mu"}


def test_unreduced_iterated_keeps_conjunction_symbol():
    q = iterated2(B.given(K), A.given(H), reduce=False)
    assert "z" in q.free_symbols
    reduced = q.subs({"z": Poly.sym("mu") * Poly.sym("x")})
    assert set(reduced.values) == set(iterated2(B.given(K), A.given(H)).values)


def brute_conjunction(conds, symbols, frame):
    """min of indicators given the disjunction of antecedents, world by world."""
    out = []
    for w in range(frame.size):
        world = frame.assignment(w)
        st_ = [status(c, world) for c in conds]
        if "F" in st_:
            out.append(Poly.const(0))
        elif all(s == "T" for s in st_):
            out.append(Poly.const(1))
        else:
            key = tuple(i for i, s in enumerate(st_) if s == "V")
            out.append(Poly.sym(symbols[key]))
    return tuple(out)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_three_way_conjunction_matches_definition(rng):
    conds = [random_cond(rng) for _ in range(3)]
    q = conjunction3(*conds)
    names = {(0,): "x1", (1,): "x2", (2,): "x3", (0, 1): "x12", (0, 2): "x13", (1, 2): "x23", (0, 1, 2): "x123"}
    assert q.values == brute_conjunction(conds, names, q.frame)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_conjunction_is_symmetric(rng):
    c1, c2 = random_cond(rng), random_cond(rng)
    left = conjunction2(c1, c2, "x", "y", "z")
    right = conjunction2(c2, c1, "y", "x", "z")
    assert left.on(Frame.of(c1, c2)).values == right.on(Frame.of(c1, c2)).values


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_same_antecedent_collapses(rng):
    c1, c2 = random_cond(rng), random_cond(rng)
    h = c1.antecedent
    a, b = ConditionalEvent(c1.consequent, h), ConditionalEvent(c2.consequent, h)
    both = conjunction2(a, b, "x", "y", "z")
    single = indicator(ConditionalEvent(a.consequent & b.consequent, h), "z", both.frame)
    assert reduce_equal_crq(both, single).equal


def test_quasi_conjunction_definition():
    c1, c2 = A.given(H), B.given(K)
    qc = quasi_conjunction([c1, c2])
    for w in all_worlds(cond_names([c1, c2])):
        s = [status(c1, w), status(c2, w)]
        want = "V" if s == ["V", "V"] else ("F" if "F" in s else "T")
        assert status(qc, w) == want


def test_gn_shortcut_and_errors():
    q = conjunction_with_gn((A & B).given(H), A.given(H))
    assert values_of(q) == {"1", "0", "x"}
    with pytest.raises(NotGnImplied):
        conjunction_with_gn(A.given(H), (A & B).given(H))
    with pytest.raises(UnsupportedArity):
        conjunction([A.given(), B.given(), C.given(), H.given()])
    with pytest.raises(TrivialIterated):
        iterated2(B.given(), (A & ~A).given(H))


def test_iterated_on_conjunction_and_trivial_antecedent():
    q = iterated_on_conjunction(C.given(A | B), C.given(A), C.given(B), x1="x", x2="y")
    assert values_of(q) == {"1", "x + mu - mu*x", "y + mu - mu*y", "mu"}
    assert not conjunction_can_be_positive(A.given(), (~A).given())
    with pytest.raises(TrivialIterated):
        iterated_on_conjunction(C.given(), A.given(), (~A).given())


def test_reduce_reports_first_difference():
    r = reduce_equal_crq(indicator(A.given(H), "x"), indicator(B.given(H), "y"))
    assert not r.equal and r.witness
    same = reduce_equal_crq(indicator(A.given(H), "x"), indicator(A.given(H), "y"))
    assert same.equal and same.substitution == {"x": "y"}


def test_closure_lists_sources_first():
    q = iterated_on_conjunction(C.given(), A.given(H), B.given(K))
    syms = [s for s, _ in closure(q)]
    assert syms[:3] == ["x1", "x2", "x3"] and set(syms[3:]) == {"x12", "x13", "x23"}


def test_value_table_is_json_shaped():
    rows = conjunction2(A.given(H), B.given(K)).table()
    assert all(set(r) == {"constituent", "value"} for r in rows)
    assert [r["value"] for r in rows] == ["z", "0", "x", "y", "1"]
