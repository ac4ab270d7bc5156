import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import all_worlds, holds, names_of, status

from coherent import events
from coherent.errors import MissingAtom, TooManyAtoms, UnsatisfiableAntecedent
from coherent.events import (
    FALSE,
    TRUE,
    Atom,
    ConditionalEvent,
    Frame,
    atoms,
    constituents,
    equivalent,
    evaluate,
    format_expr,
    from_mask,
    gn_implies,
    implies,
    minimal_dnf,
    satisfiable,
)

NAMES = ["A", "B", "C", "D"]


def exprs(depth=3):
    leaf = st.sampled_from([Atom(n) for n in NAMES] + [TRUE, FALSE])
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            sub.map(lambda e: ~e),
            st.tuples(sub, sub).map(lambda p: p[0] & p[1]),
            st.tuples(sub, sub).map(lambda p: p[0] | p[1]),
        ),
        max_leaves=6,
    )


def oracle_satisfiable(e):
    return any(holds(e, w) for w in all_worlds(names_of(e)))


def oracle_implies(a, b):
    return all(holds(b, w) for w in all_worlds(names_of(a) | names_of(b)) if holds(a, w))


conds = st.tuples(exprs(), exprs()).filter(lambda p: oracle_satisfiable(p[1])).map(
    lambda p: ConditionalEvent(*p)
)


def test_world_order_is_lexicographic():
    f = Frame(("A", "B"))
    assert [f.literal(w) for w in range(4)] == ["~A&~B", "~A&B", "A&~B", "A&B"]
    assert f.truth(2) == (True, False)


def test_mask_and_assignment():
    A, B = atoms("A B")
    f = Frame.of(A & B)
    assert f.worlds(f.mask(A & B)) == [3]
    assert f.assignment(3) == {"A": True, "B": True}


def test_missing_atom_and_limit(monkeypatch):
    with pytest.raises(MissingAtom):
        evaluate(Atom("Z"), {"A": True})
    monkeypatch.setattr(events, "MAX_ATOMS", 2)
    events._frame_for.cache_clear()
    with pytest.raises(TooManyAtoms):
        Frame(("A", "B", "C"))
    events._frame_for.cache_clear()


def test_format_precedence():
    A, B, C = atoms("A B C")
    assert format_expr(A | B & ~C) == "A | B & ~C"
    assert format_expr((A | B) & C) == "(A | B) & C"
    assert str(C.given(A & B)) == "C|A & B"


def test_unsatisfiable_antecedent():
    A, B = atoms("A B")
    with pytest.raises(UnsatisfiableAntecedent):
        ConditionalEvent(A, B & ~B)
    assert ConditionalEvent(A, A).antecedent == A


def test_masks_partition_worlds():
    A, H = atoms("A H")
    c = A.given(H)
    f = Frame.of(c)
    t, fl, v = c.masks(f)
    assert t | fl | v == f.full and not (t & fl or t & v or fl & v)
    assert c.status({"A": True, "H": False}) == "V"


@given(exprs())
def test_satisfiable_matches_enumeration(e):
    assert satisfiable(e) == oracle_satisfiable(e)


@given(exprs(), exprs())
def test_implies_matches_enumeration(a, b):
    assert implies(a, b) == oracle_implies(a, b)
    assert equivalent(a, b) == (oracle_implies(a, b) and oracle_implies(b, a))


@given(exprs(), exprs(), exprs())
def test_implies_is_a_preorder(a, b, c):
    assert implies(a, a)
    if implies(a, b) and implies(b, c):
        assert implies(a, c)


@given(conds, conds)
def test_gn_implication_definition(c1, c2):
    worlds = all_worlds(names_of(c1.consequent) | names_of(c1.antecedent) | names_of(c2.consequent) | names_of(c2.antecedent))
    expected = all(
        not (status(c1, w) == "T" and status(c2, w) != "T") and not (status(c2, w) == "F" and status(c1, w) != "F")
        for w in worlds
    )
    assert gn_implies(c1, c2) == expected
    assert gn_implies(c1, c1)


@given(st.lists(conds, min_size=1, max_size=3))
def test_constituents_partition(family):
    parts = constituents(family)
    frame = Frame.of(*family)
    union = 0
    for p in parts:
        assert union & p.worlds == 0
        union |= p.worlds
    assert union == frame.full
    assert [p.representative for p in parts] == sorted(p.representative for p in parts)


@settings(max_examples=60)
@given(st.integers(min_value=0, max_value=(1 << 8) - 1))
def test_minimal_dnf_describes_the_mask(mask):
    f = Frame(("A", "B", "C"))
    text = minimal_dnf(f, mask)
    if text in ("TRUE", "FALSE"):
        assert mask in (0, f.full)
        return
    terms = [t.split("&") for t in text.split(" | ")]
    got = 0
    for w in range(f.size):
        a = f.assignment(w)
        if any(all(a[l.lstrip("~")] != l.startswith("~") for l in term) for term in terms):
            got |= 1 << w
    assert got == mask
    assert f.mask(from_mask(f, mask)) == mask


def test_void_constituent_merges_worlds():
    A, H = atoms("A H")
    parts = constituents([A.given(H)])
    [void] = [c for c in parts if c.all_void]
    assert void.literal == "~A&~H"
    assert bin(void.worlds).count("1") == 2
    assert [c.truth for c in parts] == [("V",), ("F",), ("T",)]
