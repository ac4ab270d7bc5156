"""p-consistency and p-entailment, decided three independent ways.

* direct: premises at 1 with the conclusion at 0 is incoherent;
* qc-witness: some quasi conjunction of premises GN-implies the conclusion,
  or the conclusion is tautological;
* iterated: the iterated conditional "conclusion given the conjoined
  premises" is forced to prevision 1.

For the iterated route the previsions of the premises (and of their
pairwise conjunctions) are free.  The forced set is the union of the
coherent mu sets over every coherent 0/1 binding of those symbols.  If
the entailment fails, the binding that sets the premises to 1 and the
conclusion to 0 is coherent and exposes a world where mu = 0 is allowed.
If it holds, no binding produces a world of that kind.  So checking the
0/1 bindings decides the question.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .coherence import antecedent_vanishes, check_coherence, coherent_mu_set
from .compound import Crq, closure, iterated2, iterated_on_conjunction, quasi_conjunction
from .errors import NotPConsistent, TrivialIterated, TrivialPremise, UnsupportedArity
from .events import ConditionalEvent, Frame, gn_implies, implies
from .intervals import CoherentSet, RationalInterval, fmt

ZERO_ONE = (Fraction(0), Fraction(1))
WITH_HALF = (Fraction(0), Fraction(1, 2), Fraction(1))


@dataclass(frozen=True)
class EntailmentVerdict:
    holds: bool
    method: str
    witness: tuple[int, ...] | str | None = None
    mu_set: CoherentSet | None = None
    bindings: tuple[dict[str, Fraction], ...] = field(default=(), repr=False)
    trivial_bindings: tuple[dict[str, Fraction], ...] = field(default=(), repr=False)
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        out: dict = {"holds": self.holds, "method": self.method}
        if self.witness is not None:
            out["witness"] = self.witness if isinstance(self.witness, str) else list(self.witness)
        if self.mu_set is not None:
            out["mu_set"] = str(self.mu_set)
        if self.trivial_bindings:
            out["trivial_at"] = [_binding_text(b) for b in self.trivial_bindings]
        if self.flags:
            out["flags"] = list(self.flags)
        return out


def _binding_text(b: dict[str, Fraction]) -> str:
    return ", ".join(f"{k}={fmt(v)}" for k, v in sorted(b.items()))


def p_consistent(family: Sequence[ConditionalEvent]) -> bool:
    """The all-ones assessment on ``family`` is coherent."""
    if not family:
        raise ValueError("p-consistency of an empty family")
    return check_coherence(list(family), [1] * len(family))


def _require_consistent(family: Sequence[ConditionalEvent]) -> None:
    if not p_consistent(family):
        raise NotPConsistent("the premise family is not p-consistent")


def p_entails_direct(family: Sequence[ConditionalEvent], conclusion: ConditionalEvent) -> bool:
    """Premises at 1 and conclusion at 0 is incoherent."""
    _require_consistent(family)
    objects = [*family, conclusion]
    return not check_coherence(objects, [1] * len(family) + [0])


def p_entails_qc_witness(
    family: Sequence[ConditionalEvent], conclusion: ConditionalEvent
) -> EntailmentVerdict:
    """Search for a tautological conclusion, then a subset whose QC implies it.

    Subsets are tried by increasing size, in declaration order; witness
    indices are 1-based.
    """
    _require_consistent(family)
    if implies(conclusion.antecedent, conclusion.consequent):
        return EntailmentVerdict(True, "qc-witness", "tautology")
    for size in range(1, len(family) + 1):
        for idx in combinations(range(len(family)), size):
            qc = quasi_conjunction([family[i] for i in idx])
            if gn_implies(qc, conclusion):
                return EntailmentVerdict(True, "qc-witness", tuple(i + 1 for i in idx))
    return EntailmentVerdict(False, "qc-witness")


def p_entails_pair(premise: ConditionalEvent, conclusion: ConditionalEvent) -> bool:
    """Single premise: GN implication or a tautological conclusion."""
    f = Frame.of(premise)
    if premise.masks(f)[0] == 0:
        raise TrivialPremise(f"{premise} can never be true")
    return gn_implies(premise, conclusion) or implies(conclusion.antecedent, conclusion.consequent)


def iterated_object(family: Sequence[ConditionalEvent], conclusion: ConditionalEvent) -> Crq:
    """``conclusion | premise`` or ``conclusion | (premise1 & premise2)``."""
    if len(family) == 1:
        return iterated2(conclusion, family[0])
    if len(family) == 2:
        return iterated_on_conjunction(conclusion, family[0], family[1])
    raise UnsupportedArity("iterated conditionals are defined for one or two premises only")


@dataclass(frozen=True)
class ForcedSet:
    mu_set: CoherentSet
    bindings: tuple[dict[str, Fraction], ...]
    trivial: tuple[dict[str, Fraction], ...]
    flags: tuple[str, ...] = ()


def _needed(q: Crq) -> list[tuple[str, Crq]]:
    items = dict(closure(q))
    needed = set(q.free_symbols)
    grew = True
    while grew:
        grew = False
        for s in list(needed):
            obj = items.get(s)
            if obj is None:
                continue
            for dep, _ in obj.refs:
                if dep not in needed:
                    needed.add(dep)
                    grew = True
    return [(s, obj) for s, obj in closure(q) if s in needed]


def coherent_bindings(q: Crq, grid: Sequence[Fraction] = ZERO_ONE) -> list[dict[str, Fraction]]:
    """Grid bindings of the symbols in ``q``'s table that are jointly coherent.

    Symbols naming a conditional are enumerated first; those naming a
    conjunction are then limited to values between the Frechet bounds
    (a necessary condition) and the whole family is checked exactly.
    """
    items = _needed(q)
    missing = q.free_symbols - {s for s, _ in items}
    if missing:
        raise ValueError(f"symbols without a source: {sorted(missing)}")
    base = [(s, o) for s, o in items if len(o.sources) == 1]
    pairs = [(s, o) for s, o in items if len(o.sources) > 1]
    out = []
    for vals in product(grid, repeat=len(base)):
        b = {s: v for (s, _), v in zip(base, vals)}
        if not check_coherence([o for _, o in base], b):
            continue
        ranges = []
        for s, o in pairs:
            xi, xj = (b[r] for r, _ in o.refs)
            lo, hi = max(xi + xj - 1, Fraction(0)), min(xi, xj)
            ranges.append([v for v in grid if lo <= v <= hi])
        for extra in product(*ranges):
            full = dict(b)
            full.update({s: v for (s, _), v in zip(pairs, extra)})
            if not pairs or check_coherence([o for _, o in items], full):
                out.append(full)
    return out


def forced_mu_set(q: Crq) -> ForcedSet:
    """Union of the coherent mu sets of ``q`` over coherent grid bindings.

    The 0/1 grid decides whether the set is exactly {1}.  When it yields a
    disconnected union, the grid is refined once; if refinement adds values
    the reported set is the hull (the bindings range over a connected set),
    otherwise the union is kept.  Either way the report is flagged.
    """
    result = _forced(q, ZERO_ONE)
    if result.mu_set.is_interval or result.mu_set.is_empty:
        return result
    refined = _forced(q, WITH_HALF)
    if refined.mu_set == result.mu_set:
        return ForcedSet(result.mu_set, result.bindings, result.trivial, ("disconnected",))
    parts = refined.mu_set.intervals
    hull = RationalInterval(
        parts[0].lower, parts[-1].upper, parts[0].lower_closed, parts[-1].upper_closed
    )
    return ForcedSet(CoherentSet.of(hull), refined.bindings, refined.trivial, ("interpolated",))


def _forced(q: Crq, grid: Sequence[Fraction]) -> ForcedSet:
    total = CoherentSet(())
    used, trivial = [], []
    for b in coherent_bindings(q, grid):
        if antecedent_vanishes(q, b):
            trivial.append(b)
            continue
        used.append(b)
        total = total.union(coherent_mu_set(q, b))
    if not used:
        raise TrivialIterated(f"{q} is trivial under every coherent binding")
    return ForcedSet(total, tuple(used), tuple(trivial))


def p_entails_iterated(
    family: Sequence[ConditionalEvent], conclusion: ConditionalEvent
) -> EntailmentVerdict:
    """Entailment holds iff the iterated conditional is forced to 1."""
    _require_consistent(family)
    q = iterated_object(family, conclusion)
    forced = forced_mu_set(q)
    return EntailmentVerdict(
        forced.mu_set.is_point(1),
        "iterated",
        mu_set=forced.mu_set,
        bindings=forced.bindings,
        trivial_bindings=forced.trivial,
        flags=forced.flags,
    )


def disjunctive_characterization(
    family: Sequence[ConditionalEvent], conclusion: ConditionalEvent
) -> str:
    """First satisfied case of the two-premise characterization, or ``none``."""
    if len(family) != 2:
        raise UnsupportedArity("the characterization is stated for two premises")
    _require_consistent(family)
    if implies(conclusion.antecedent, conclusion.consequent):
        return "conclusion-constant-1"
    for i, c in enumerate(family):
        try:
            if forced_mu_set(iterated2(conclusion, c)).mu_set.is_point(1):
                return f"iterated-singleton-{i + 1}"
        except TrivialIterated:
            continue
    qc = quasi_conjunction(family)
    if forced_mu_set(iterated2(conclusion, qc)).mu_set.is_point(1):
        return "iterated-pair-QC"
    return "none"


def verdicts(family: Sequence[ConditionalEvent], conclusion: ConditionalEvent) -> list[EntailmentVerdict]:
    """All applicable verdicts for one query, in a fixed order."""
    out = [EntailmentVerdict(p_entails_direct(family, conclusion), "direct")]
    out.append(p_entails_qc_witness(family, conclusion))
    if len(family) <= 2:
        out.append(p_entails_iterated(family, conclusion))
    return out
