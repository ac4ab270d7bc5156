"""Shared generators and the product-rule identity checks."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from oracles import can_be_true, random_cond, same_cond

from coherent import check_coherence, p_consistent
from coherent.compound import conjunction2, conjunction3, indicator, iterated2, iterated_on_conjunction
from coherent.events import TRUE, ConditionalEvent, atoms

ZERO_ONE = (Fraction(0), Fraction(1))
HALVES = (Fraction(0), Fraction(1, 2), Fraction(1))


def vocabulary() -> list[ConditionalEvent]:
    """Conditionals over A, B, C, D, pairwise distinct as three-valued objects."""
    A, B, C, D = atoms("A B C D")
    consequents = [A, ~A, B, A & B, A | B, B & C, ~C | D]
    antecedents = [TRUE, A, B, A | B, C & D]
    out: list[ConditionalEvent] = []
    for h in antecedents:
        for e in consequents:
            c = ConditionalEvent(e, h)
            if not any(same_cond(c, d) for d in out):
                out.append(c)
    return out


def random_pairs(seed: int, count: int) -> list[tuple[ConditionalEvent, ConditionalEvent]]:
    """p-consistent pairs over at most four atoms."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        c1, c2 = random_cond(rng), random_cond(rng)
        if can_be_true(c1) and can_be_true(c2) and p_consistent([c1, c2]):
            out.append((c1, c2))
    return out


def random_triples(seed: int, count: int, nontrivial) -> list[tuple[ConditionalEvent, ...]]:
    """``(c1, c2, c3)`` with p-consistent premises whose conjunction can be positive."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        c1, c2, c3 = (random_cond(rng) for _ in range(3))
        if p_consistent([c1, c2]) and nontrivial(c1, c2):
            out.append((c1, c2, c3))
    return out


def _completions(binding, symbols, objects) -> list[dict]:
    """Extend ``binding`` over ``symbols`` with 0/1 values coherent on ``objects``."""
    missing = [s for s in symbols if s not in binding]
    out = []
    for vals in product(ZERO_ONE, repeat=len(missing)):
        b = {**binding, **dict(zip(missing, vals))}
        if check_coherence(objects, {s: b[s] for s in symbols}):
            out.append(b)
    return out


def identity2_violations(consequent, antecedent, bindings) -> tuple[int, list]:
    """Check ``z = mu*x`` on the unreduced iterated conditional.

    For each binding and each grid pair (mu, z), a jointly coherent
    assessment of {A|H, B|K, conjunction, iterated} must have z = mu*x,
    and some mu must be coherent.  Returns (bindings checked, violations).
    """
    q = iterated2(consequent, antecedent, reduce=False)
    if "z" not in q.free_symbols:
        return 0, []
    base = [indicator(antecedent, "x", q.frame), indicator(consequent, "y", q.frame)]
    objs = base + [conjunction2(antecedent, consequent, "x", "y", "z", q.frame), q]
    seen, checked, bad = set(), 0, []
    for b0 in bindings:
        for b in _completions({k: b0[k] for k in ("x", "y") if k in b0}, ("x", "y"), base):
            key = (b["x"], b["y"])
            if key in seen:
                continue
            seen.add(key)
            checked += 1
            hits = 0
            for mu in HALVES:
                want = mu * b["x"]
                for z in sorted(set(HALVES) | {want}):
                    if check_coherence(objs, {**b, "z": z, "mu": mu}):
                        if z == want:
                            hits += 1
                        else:
                            bad.append((b, mu, z))
            if not hits:
                bad.append((b, "no coherent mu"))
    return checked, bad


PAIR_SYMBOLS = ("x1", "x2", "x3", "x12", "x13", "x23")


def identity3_violations(c1, c2, c3, bindings) -> tuple[int, list]:
    """Check ``x123 = mu*x12`` on the unreduced iterated conditional on a conjunction."""
    q = iterated_on_conjunction(c3, c1, c2, reduce=False)
    if "x123" not in q.free_symbols:
        return 0, []
    f = q.frame
    base = [indicator(c1, "x1", f), indicator(c2, "x2", f), indicator(c3, "x3", f)]
    pairs = [
        conjunction2(c1, c2, "x1", "x2", "x12", f),
        conjunction2(c1, c3, "x1", "x3", "x13", f),
        conjunction2(c2, c3, "x2", "x3", "x23", f),
    ]
    closure = base + pairs
    objs = closure + [conjunction3(c1, c2, c3, frame=f), q]
    seen, checked, bad = set(), 0, []
    for b0 in bindings:
        for b in _completions({k: v for k, v in b0.items() if k in PAIR_SYMBOLS}, PAIR_SYMBOLS, closure):
            key = tuple(b[s] for s in PAIR_SYMBOLS)
            if key in seen:
                continue
            seen.add(key)
            checked += 1
            hits = 0
            for mu in HALVES:
                want = mu * b["x12"]
                for t in sorted({Fraction(0), Fraction(1), want}):
                    if check_coherence(objs, {**b, "x123": t, "mu": mu}):
                        if t == want:
                            hits += 1
                        else:
                            bad.append((b, mu, t))
            if not hits:
                bad.append((b, "no coherent mu"))
    return checked, bad
