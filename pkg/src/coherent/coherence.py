"""Coherence of assessments on conditional events and conditional quantities.

Each assessed object contributes, on every world, a value that is affine in
its own prevision once the other symbols are bound.  Worlds where that value
is identically the prevision itself are bets called off (money returned);
they carry no constraint for that object.

An assessment is coherent when the assessed point lies in the convex hull of
the value points on the worlds where some bet is effective, and the same holds
recursively for the objects whose effective worlds can only get zero weight.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence, Union

from . import lp
from .compound import Crq, indicator
from .errors import IncoherentBase, TrivialIterated, UnboundSymbol
from .events import ConditionalEvent, Frame
from .intervals import CoherentSet, RationalInterval, fmt

log = logging.getLogger(__name__)

Object = Union[ConditionalEvent, Crq]


def rational(v) -> Fraction:
    """Exact rational from an int, Fraction or ``"p/q"`` / decimal string."""
    if isinstance(v, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        text = v.strip()
        if "e" in text.lower():
            raise ValueError(f"scientific notation is not accepted: {v!r}")
        return Fraction(text)
    raise TypeError(f"use an int, Fraction or string for exact values, not {type(v).__name__}")


def _unit(name: str, v) -> Fraction:
    q = rational(v)
    if not 0 <= q <= 1:
        raise ValueError(f"{name} = {q} is outside [0, 1]")
    return q


def prepare(
    objects: Sequence[Object],
    assessment: Sequence | Mapping[str, object] | None,
    bindings: Mapping[str, object] | None = None,
) -> tuple[list[Crq], dict[str, Fraction]]:
    """Turn objects into quantities with distinct own symbols plus numeric bindings.

    ``assessment`` is either aligned with ``objects`` or maps own symbols to
    values; ``bindings`` supplies any further symbols used in the tables.
    """
    taken = {q.symbol for q in objects if isinstance(q, Crq)}
    taken |= set(bindings or ())
    crqs: list[Crq] = []
    for i, obj in enumerate(objects):
        if isinstance(obj, ConditionalEvent):
            name = f"p{i + 1}"
            while name in taken:
                name = "_" + name
            taken.add(name)
            crqs.append(indicator(obj, name))
        elif isinstance(obj, Crq):
            crqs.append(obj)
        else:
            raise TypeError(f"cannot assess {obj!r}")
    values: dict[str, Fraction] = {k: _unit(k, v) for k, v in (bindings or {}).items()}
    if assessment is None:
        pass
    elif isinstance(assessment, Mapping):
        for k, v in assessment.items():
            values[k] = _unit(k, v)
    else:
        if len(assessment) != len(crqs):
            raise ValueError("assessment length differs from the number of objects")
        for q, v in zip(crqs, assessment):
            values[q.symbol] = _unit(q.symbol, v)
    return crqs, values


@dataclass(frozen=True)
class _Column:
    gaps: tuple[Fraction, ...]  # value minus prevision, per object (0 where called off)
    live: tuple[bool, ...]  # bet on object i is effective here
    worlds: tuple[int, ...]


class PointSystem:
    """Constituent points of a family under a complete numeric binding."""

    def __init__(
        self,
        crqs: Sequence[Crq],
        bindings: Mapping[str, Fraction],
        frame: Frame | None = None,
    ):
        self.frame = frame or Frame.of(*crqs)
        self.crqs = [q.on(self.frame) for q in crqs]
        self.k = len(crqs)
        per_object = []
        for q in self.crqs:
            if q.symbol not in bindings:
                raise UnboundSymbol(q.symbol)
            p = bindings[q.symbol]
            cache: dict = {}
            col = []
            for v in q.values:
                if v not in cache:
                    a, b = v.affine_in(q.symbol, bindings)
                    live = not (a == 0 and b == 1)
                    cache[v] = (a + b * p - p if live else Fraction(0), live)
                col.append(cache[v])
            per_object.append(col)
        groups: dict[tuple, list[int]] = {}
        for w in range(self.frame.size):
            entries = [per_object[i][w] for i in range(self.k)]
            if not any(live for _, live in entries):
                continue
            key = (tuple(g for g, _ in entries), tuple(live for _, live in entries))
            groups.setdefault(key, []).append(w)
        self.columns = [_Column(g, lv, tuple(ws)) for (g, lv), ws in groups.items()]
        self._by_world = {w: c for c in self.columns for w in c.worlds}

    def cell(self, i: int, w: int) -> tuple[Fraction, bool]:
        c = self._by_world.get(w)
        return (Fraction(0), False) if c is None else (c.gaps[i], c.live[i])

    def level(self, active: Sequence[int]):
        cols = [c for c in self.columns if any(c.live[i] for i in active)]
        A = [[c.gaps[i] for c in cols] for i in active]
        A.append([1] * len(cols))
        b = [0] * len(active) + [1]
        return cols, A, b

    def zero_mass(self, active: Sequence[int], cols, A, b, x) -> list[int]:
        """Objects of ``active`` whose effective worlds get weight 0 in every solution."""
        out = []
        for i in active:
            if any(xv > 0 for xv, c in zip(x, cols) if c.live[i]):
                continue
            res = lp.solve(A, b, [1 if c.live[i] else 0 for c in cols])
            if res.value == 0:
                out.append(i)
        return out


@dataclass(frozen=True)
class CoherenceReport:
    coherent: bool
    recursion_depth: int
    certificate: tuple[dict[str, str], ...] = ()
    failed_objects: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "coherent": self.coherent,
            "recursion_depth": self.recursion_depth,
            "certificate": [dict(level) for level in self.certificate],
        }


def _run_levels(system: PointSystem, active: list[int]) -> CoherenceReport:
    depth = 0
    certificate = []
    while active:
        cols, A, b = system.level(active)
        if not cols:
            break
        depth += 1
        res = lp.solve(A, b)
        if res.status != lp.OPTIMAL:
            return CoherenceReport(False, depth, tuple(certificate), tuple(active))
        certificate.append(
            {system.frame.literal(c.worlds[0]): fmt(xv) for c, xv in zip(cols, res.x) if xv}
        )
        active = system.zero_mass(active, cols, A, b, res.x)
    return CoherenceReport(True, depth, tuple(certificate))


def coherence_report(
    objects: Sequence[Object],
    assessment,
    bindings: Mapping[str, object] | None = None,
) -> CoherenceReport:
    crqs, values = prepare(objects, assessment, bindings)
    system = PointSystem(crqs, values)
    return _run_levels(system, list(range(len(crqs))))


def check_coherence(
    objects: Sequence[Object],
    assessment,
    bindings: Mapping[str, object] | None = None,
) -> bool:
    """Whether the assessment on ``objects`` is coherent.

    >>> from coherent.events import atoms
    >>> A, C = atoms("A C")
    >>> check_coherence([C.given(A), A.given(), C.given()], [1, 1, 0])
    False
    """
    return coherence_report(objects, assessment, bindings).coherent


def _target_rows(system_frame: Frame, target: Crq, values: Mapping[str, Fraction]):
    """Per world: (alpha, beta, live) with value - v == alpha - beta*v for prevision v."""
    t = target.on(system_frame)
    cache: dict = {}
    out = []
    for v in t.values:
        if v not in cache:
            a, b = v.affine_in(t.symbol, values)
            live = not (a == 0 and b == 1)
            cache[v] = (a, 1 - b, live)
        out.append(cache[v])
    return t, out


def extension_interval(
    objects: Sequence[Object],
    assessment,
    target: Object,
    bindings: Mapping[str, object] | None = None,
) -> RationalInterval:
    """All values of ``target`` that keep the assessment coherent.

    >>> from coherent.events import atoms
    >>> A, C = atoms("A C")
    >>> str(extension_interval([A.given(), C.given(A)], ["1/2", "1/2"], C.given()))
    '[1/4,3/4]'
    """
    crqs, values = prepare(objects, assessment, bindings)
    if isinstance(target, ConditionalEvent):
        name = "v"
        taken = {q.symbol for q in crqs} | set(values)
        while name in taken:
            name = "_" + name
        target = indicator(target, name)
    if target.symbol in values:
        raise ValueError(f"target symbol {target.symbol} is already bound")
    if not _run_levels(PointSystem(crqs, values), list(range(len(crqs)))).coherent:
        raise IncoherentBase("the assessment on the given objects is not coherent")

    frame = Frame.of(*crqs, target)
    system = PointSystem(crqs, values, frame)
    target, trows = _target_rows(frame, target, values)
    if any(live and beta <= 0 for _, beta, live in trows):
        raise ValueError("target value must decrease strictly in its own prevision")

    parts = []
    active = list(range(len(crqs)))
    while True:
        lo, hi = _target_bounds(system, active, trows)
        if lo is not None:
            parts.append(RationalInterval(lo, hi))
        # values outside that range need the target to get zero weight here
        active = _zero_target_level(system, active, trows)
        if active is None:
            break
    if not parts:
        # the target is never effective: every value is a called-off bet
        return RationalInterval(0, 1)
    found = CoherentSet(tuple(parts))
    if not found.is_interval:
        raise ValueError(f"coherent extensions form {found}, not an interval")
    lo, hi = found.intervals[0].lower, found.intervals[0].upper

    def ok(v: Fraction) -> bool:
        vals = dict(values)
        vals[target.symbol] = v
        return _run_levels(PointSystem([*crqs, target], vals), list(range(len(crqs) + 1))).coherent

    lo_ok, hi_ok = ok(lo), ok(hi)
    if not (lo_ok and hi_ok):
        log.info("extension endpoint not coherent: lo=%s hi=%s", lo_ok, hi_ok)
    return RationalInterval(lo, hi, lo_ok, hi_ok)


def _zero_target_level(system: PointSystem, active: list[int], trows) -> list[int] | None:
    """Premises left undetermined when this level puts no weight on the target.

    Returns None when no such level exists (the weights must touch the
    target's effective worlds, or nothing is left to bet on).
    """
    groups: dict[tuple, None] = {}
    for w, (_, _, live) in enumerate(trows):
        if live:
            continue
        c = system._by_world.get(w)
        if c is None or not any(c.live[i] for i in active):
            continue
        groups[(tuple(c.gaps[i] for i in active), tuple(c.live[i] for i in active))] = None
    cols = list(groups)
    if not cols:
        return None
    A = [[g[r] for g, _ in cols] for r in range(len(active))]
    A.append([1] * len(cols))
    b = [0] * len(active) + [1]
    res = lp.solve(A, b)
    if res.status != lp.OPTIMAL:
        return None
    zero = []
    for r, i in enumerate(active):
        if any(x > 0 for x, (_, lv) in zip(res.x, cols) if lv[r]):
            continue
        if lp.solve(A, b, [1 if lv[r] else 0 for _, lv in cols]).value == 0:
            zero.append(i)
    return zero


def _target_bounds(system: PointSystem, active: list[int], trows):
    """Min and max target prevision at one level (Charnes-Cooper normalisation)."""
    cols: list[tuple[tuple[Fraction, ...], Fraction, Fraction, bool]] = []
    seen = set()
    for w, (alpha, beta, live) in enumerate(trows):
        gaps = []
        any_live = live
        for i in active:
            g, lv = system.cell(i, w)
            gaps.append(g)
            any_live = any_live or lv
        if not any_live:
            continue
        key = (tuple(gaps), alpha if live else 0, beta if live else 0, live)
        if key not in seen:
            seen.add(key)
            cols.append(key)
    if not any(c[3] for c in cols):
        return None, None
    A = [[c[0][r] for c in cols] for r in range(len(active))]
    A.append([c[2] if c[3] else 0 for c in cols])
    b = [0] * len(active) + [1]
    obj = [c[1] if c[3] else 0 for c in cols]
    hi = lp.solve(A, b, obj, maximize=True)
    if hi.status != lp.OPTIMAL:
        return None, None
    lo = lp.solve(A, b, obj, maximize=False)
    return lo.value, hi.value


def antecedent_vanishes(q: Crq, bindings: Mapping[str, Fraction]) -> bool:
    """For an iterated quantity: is its antecedent zero wherever it is conditioned?

    The called-off worlds of the antecedent are ignored: there its value is
    its own prevision, which is 0 once every conditioned world gives 0.
    """
    ante = q.antecedent
    if ante is None:
        return False
    live = ante.conditioning_mask
    seen = set()
    for w, v in enumerate(ante.values):
        if live >> w & 1 and v not in seen:
            seen.add(v)
            if v.evaluate(bindings) != 0:
                return False
    return True


def coherent_mu_set(q: Crq, partial: Mapping[str, object] | None = None) -> CoherentSet:
    """The values of ``q``'s own prevision that make ``q`` coherent on its own.

    Every other symbol in the table must be bound in ``partial``.  On each
    effective world the gap ``value - mu`` is affine in ``mu``; a value is
    coherent iff the gaps are not all of one strict sign.  The set is found
    exactly by testing each breakpoint and each open cell between them.
    """
    values = {k: _unit(k, v) for k, v in (partial or {}).items() if k != q.symbol}
    missing = q.free_symbols - values.keys()
    if missing:
        raise UnboundSymbol(sorted(missing)[0])
    if q.conditioning_mask == 0:
        raise TrivialIterated(f"{q} has an unsatisfiable conditioning event")
    if antecedent_vanishes(q, values):
        raise TrivialIterated(f"the antecedent of {q} is zero under this binding")
    lines = set()
    for v in set(q.values):
        a, b = v.affine_in(q.symbol, values)
        if not (a == 0 and b == 1):
            lines.add((a, b - 1))
    if not lines:
        return CoherentSet.unit()
    return _sign_change_set(sorted(lines))


def _sign_change_set(lines: list[tuple[Fraction, Fraction]]) -> CoherentSet:
    """``{m in [0,1] : min_h (a_h + c_h m) <= 0 <= max_h (a_h + c_h m)}``."""

    def ok(m: Fraction) -> bool:
        vals = [a + c * m for a, c in lines]
        return min(vals) <= 0 <= max(vals)

    cuts = {Fraction(0), Fraction(1)}
    for a, c in lines:
        if c:
            r = -a / c
            if 0 < r < 1:
                cuts.add(r)
    pts = sorted(cuts)
    parts: list[RationalInterval] = []
    for i, p in enumerate(pts):
        if ok(p):
            parts.append(RationalInterval.point(p))
        if i + 1 < len(pts):
            mid = (p + pts[i + 1]) / 2
            if ok(mid):
                parts.append(RationalInterval(p, pts[i + 1], False, False))
    return CoherentSet(tuple(parts))


# Strict side conditions -------------------------------------------------


def strict_region_nonempty(
    ones: Sequence[ConditionalEvent],
    below_one: Sequence[ConditionalEvent],
) -> bool:
    """Is there a coherent assessment with ``P = 1`` on ``ones`` and ``P < 1`` on ``below_one``?

    Decided exactly through layered (lexicographic) probabilities: each layer
    is a distribution over the worlds where some undetermined conditional is
    conditioned; a conditional is settled in the first layer giving its
    antecedent positive weight.  Strict inequalities become a positive
    optimum of an LP maximising a common slack, so no epsilon is chosen.
    """
    conds = list(ones) + list(below_one)
    frame = Frame.of(*conds)
    masks = [c.masks(frame) for c in conds]
    want_one = [True] * len(ones) + [False] * len(below_one)
    memo: dict[frozenset[int], bool] = {}

    def layer_ok(pending: frozenset[int], settled: frozenset[int]) -> bool:
        domain = 0
        for i in pending:
            t, f, _ = masks[i]
            domain |= t | f
        worlds = frame.worlds(domain)
        eq_rows: list[list[int]] = [[1] * len(worlds)]
        eq_rhs = [1]
        ge_rows: list[list[int]] = []
        for i in pending:
            t, f, _ = masks[i]
            h_row = [(t | f) >> w & 1 for w in worlds]
            f_row = [f >> w & 1 for w in worlds]
            if i not in settled:
                eq_rows.append(h_row)
                eq_rhs.append(0)
            elif want_one[i]:
                eq_rows.append(f_row)
                eq_rhs.append(0)
                ge_rows.append(h_row)
            else:
                ge_rows.append(f_row)
        # columns: weights, one surplus per strict row, slack s, bound filler u
        k = len(ge_rows)
        A = [r + [0] * k + [0, 0] for r in eq_rows]
        b = list(eq_rhs)
        for j, r in enumerate(ge_rows):
            surplus = [0] * k
            surplus[j] = -1
            A.append(r + surplus + [-1, 0])
            b.append(0)
        A.append([0] * (len(worlds) + k) + [1, 1])
        b.append(1)
        c = [0] * (len(worlds) + k) + [1, 0]
        res = lp.solve(A, b, c)
        return res.status == lp.OPTIMAL and res.value > 0

    def search(pending: frozenset[int]) -> bool:
        if not pending:
            return True
        if pending in memo:
            return memo[pending]
        result = False
        items = sorted(pending)
        for size in range(len(items), 0, -1):
            for chosen in combinations(items, size):
                chosen_set = frozenset(chosen)
                if layer_ok(pending, chosen_set) and search(pending - chosen_set):
                    result = True
                    break
            if result:
                break
        memo[pending] = result
        return result

    return search(frozenset(range(len(conds))))


def entails_with_defaults(
    premises: Sequence[ConditionalEvent],
    defaults: Sequence[ConditionalEvent],
    conclusion: ConditionalEvent,
) -> bool:
    """Premises at 1 and every default strictly below 1 force the conclusion to 1."""
    return not strict_region_nonempty(premises, [*defaults, conclusion])
