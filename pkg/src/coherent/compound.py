"""Conditional random quantities built from conditional events.

A :class:`Crq` stores one polynomial value per world of its frame together
with a conditioning event and the name of its own prevision.  Where the
conditioning event is false the value is that prevision (the bet is called
off and the amount paid is returned).

Constructors cover indicators, conjunctions of two or three conditionals,
quasi conjunction and the two iterated forms ``(B|K)|(A|H)`` and
``(E3|H3)|((E1|H1) & (E2|H2))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Mapping, Sequence

from .errors import NotGnImplied, TrivialIterated, UnsupportedArity
from .events import (
    ConditionalEvent,
    Expr,
    Frame,
    conj,
    disj,
    gn_implies,
    minimal_dnf,
)
from .poly import Poly


@dataclass(frozen=True, eq=False)
class Crq:
    frame: Frame
    values: tuple[Poly, ...]
    conditioning: Expr
    symbol: str
    label: str = ""
    sources: tuple[ConditionalEvent, ...] = ()
    refs: tuple[tuple[str, object], ...] = ()
    antecedent: Crq | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if len(self.values) != self.frame.size:
            raise ValueError("one value per world is required")

    def __str__(self) -> str:
        return self.label or f"<quantity {self.symbol}>"

    @property
    def symbols(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for v in set(self.values):
            out |= v.symbols
        return out

    @property
    def free_symbols(self) -> frozenset[str]:
        """Symbols in the table other than the own prevision."""
        return self.symbols - {self.symbol}

    @property
    def conditioning_mask(self) -> int:
        return self.frame.mask(self.conditioning)

    def on(self, frame: Frame) -> Crq:
        """The same quantity expressed over a larger frame."""
        if frame == self.frame:
            return self
        values = tuple(self.values[frame.project(w, self.frame)] for w in range(frame.size))
        return _replace(self, frame=frame, values=values)

    def subs(self, mapping: Mapping[str, object]) -> Crq:
        cache: dict[Poly, Poly] = {}
        values = []
        for v in self.values:
            if v not in cache:
                cache[v] = v.subs(mapping)
            values.append(cache[v])
        target = mapping.get(self.symbol)
        symbol = target if isinstance(target, str) else self.symbol
        return _replace(self, values=tuple(values), symbol=symbol)

    def rows(self) -> list[tuple[str, Poly, int]]:
        """Rows ``(event, value, mask)`` with worlds merged by equal value.

        The event is a minimal disjunctive description of the merged worlds.
        """
        groups: dict[Poly, list[int]] = {}
        for w, v in enumerate(self.values):
            groups.setdefault(v, []).append(w)
        out = []
        for v, ws in sorted(groups.items(), key=lambda kv: kv[1][0]):
            mask = 0
            for w in ws:
                mask |= 1 << w
            out.append((self._describe(ws), v, mask))
        return out

    def _describe(self, ws: list[int]) -> str:
        return minimal_dnf(self.frame, sum(1 << w for w in ws))

    def table(self) -> list[dict[str, str]]:
        """Report form: list of ``{constituent, value}`` in canonical text."""
        return [{"constituent": ev, "value": v.format(self.symbol)} for ev, v, _ in self.rows()]

    def value_set(self) -> set[Poly]:
        return set(self.values)


def _replace(q: Crq, **changes) -> Crq:
    data = {
        "frame": q.frame,
        "values": q.values,
        "conditioning": q.conditioning,
        "symbol": q.symbol,
        "label": q.label,
        "sources": q.sources,
        "refs": q.refs,
        "antecedent": q.antecedent,
    }
    data.update(changes)
    return Crq(**data)


def _pointwise(frame: Frame, fn: Callable[[int], Poly]) -> tuple[Poly, ...]:
    return tuple(fn(w) for w in range(frame.size))


def indicator(c: ConditionalEvent, x: str = "x", frame: Frame | None = None) -> Crq:
    """``A|H`` as the quantity ``AH + x*~H`` with values 1, 0, x."""
    frame = frame or Frame.of(c)
    t, _, v = c.masks(frame)
    one, zero, sx = Poly.const(1), Poly.const(0), Poly.sym(x)
    values = _pointwise(frame, lambda w: one if t >> w & 1 else (sx if v >> w & 1 else zero))
    return Crq(frame, values, c.antecedent, x, label=str(c), sources=(c,), refs=((x, c),))


def _conjunction(
    conds: Sequence[ConditionalEvent],
    symbols: Mapping[frozenset[int], str],
    frame: Frame,
) -> tuple[Poly, ...]:
    masks = [c.masks(frame) for c in conds]
    cache: dict[frozenset[int], Poly] = {}
    values = []
    for w in range(frame.size):
        bit = 1 << w
        if any(f & bit for _, f, _ in masks):
            values.append(Poly.const(0))
            continue
        void = frozenset(i for i, (_, _, v) in enumerate(masks) if v & bit)
        if not void:
            values.append(Poly.const(1))
            continue
        if void not in cache:
            cache[void] = Poly.sym(symbols[void])
        values.append(cache[void])
    return tuple(values)


def conjunction2(
    c1: ConditionalEvent,
    c2: ConditionalEvent,
    x: str = "x",
    y: str = "y",
    z: str = "z",
    frame: Frame | None = None,
) -> Crq:
    """``(A|H) & (B|K)``: 1 on AHBK, 0 on ~AH or ~BK, x on ~HBK, y on AH~K, z on ~H~K."""
    frame = frame or Frame.of(c1, c2)
    symbols = {frozenset({0}): x, frozenset({1}): y, frozenset({0, 1}): z}
    values = _conjunction((c1, c2), symbols, frame)
    return Crq(
        frame,
        values,
        disj(c1.antecedent, c2.antecedent),
        z,
        label=f"({c1}) & ({c2})",
        sources=(c1, c2),
        refs=((x, c1), (y, c2)),
    )


def conjunction3(
    c1: ConditionalEvent,
    c2: ConditionalEvent,
    c3: ConditionalEvent,
    x1: str = "x1",
    x2: str = "x2",
    x3: str = "x3",
    x12: str = "x12",
    x13: str = "x13",
    x23: str = "x23",
    x123: str = "x123",
    frame: Frame | None = None,
) -> Crq:
    """Conjunction of three conditionals.

    Any false conjunct gives 0, all true gives 1; otherwise the value is the
    prevision of the conjunction of the void conjuncts (x1, x12, x123, ...).
    """
    conds = (c1, c2, c3)
    frame = frame or Frame.of(*conds)
    names = {(0,): x1, (1,): x2, (2,): x3, (0, 1): x12, (0, 2): x13, (1, 2): x23, (0, 1, 2): x123}
    symbols = {frozenset(k): v for k, v in names.items()}
    values = _conjunction(conds, symbols, frame)
    refs: list[tuple[str, object]] = [(x1, c1), (x2, c2), (x3, c3)]
    for i, j in combinations(range(3), 2):
        pair = conjunction2(conds[i], conds[j], names[(i,)], names[(j,)], names[(i, j)], frame=frame)
        refs.append((names[(i, j)], pair))
    return Crq(
        frame,
        values,
        disj(*(c.antecedent for c in conds)),
        x123,
        label=" & ".join(f"({c})" for c in conds),
        sources=conds,
        refs=tuple(refs),
    )


def conjunction(conds: Sequence[ConditionalEvent], symbols: Sequence[str] | None = None) -> Crq:
    """Dispatch on arity; only two- and three-way conjunctions are defined."""
    if len(conds) == 1:
        return indicator(conds[0], *(symbols or ("x",)))
    if len(conds) == 2:
        return conjunction2(*conds, *(symbols or ()))
    if len(conds) == 3:
        return conjunction3(*conds, *(symbols or ()))
    raise UnsupportedArity(f"conjunction of {len(conds)} conditionals is not defined")


def quasi_conjunction(family: Sequence[ConditionalEvent]) -> ConditionalEvent:
    """``AND_i(~H_i | E_i H_i) | OR_i H_i``."""
    if not family:
        raise ValueError("quasi conjunction of an empty family")
    if len(family) == 1:
        return family[0]
    parts = [disj(~c.antecedent, conj(c.consequent, c.antecedent)) for c in family]
    return ConditionalEvent(conj(*parts), disj(*(c.antecedent for c in family)))


def conjunction_with_gn(c1: ConditionalEvent, c2: ConditionalEvent, x: str = "x") -> Crq:
    """When ``c1`` GN-implies ``c2`` their conjunction is ``c1`` itself."""
    if not gn_implies(c1, c2):
        raise NotGnImplied(f"{c1} does not imply {c2}")
    return indicator(c1, x, frame=Frame.of(c1, c2))


def _iterated_values(
    frame: Frame, conj_values: Sequence[Poly], ante_values: Sequence[Poly], mu: str
) -> tuple[Poly, ...]:
    smu = Poly.sym(mu)
    cache: dict[tuple[Poly, Poly], Poly] = {}
    out = []
    for w in range(frame.size):
        key = (conj_values[w], ante_values[w])
        if key not in cache:
            cache[key] = key[0] + smu * (1 - key[1])
        out.append(cache[key])
    return tuple(out)


def iterated2(
    consequent: ConditionalEvent,
    antecedent: ConditionalEvent,
    x: str = "x",
    y: str = "y",
    z: str = "z",
    mu: str = "mu",
    *,
    reduce: bool = True,
) -> Crq:
    """``(B|K)|(A|H) = (B|K) & (A|H) + mu * (~A|H)``.

    With ``reduce`` the conjunction prevision is replaced by ``mu*x``, leaving
    the six values 1, 0, y, x+mu(1-x), mu(1-x), mu.
    """
    frame = Frame.of(consequent, antecedent)
    t, _, _ = antecedent.masks(frame)
    if t == 0:
        raise TrivialIterated(f"the antecedent {antecedent} is never true")
    ante = indicator(antecedent, x, frame=frame)
    both = conjunction2(antecedent, consequent, x, y, z, frame=frame)
    values = _iterated_values(frame, both.values, ante.values, mu)
    if reduce:
        sub = {z: Poly.sym(mu) * Poly.sym(x)}
        values = tuple(v.subs(sub) for v in values)
    refs: tuple[tuple[str, object], ...] = ((x, antecedent), (y, consequent))
    if not reduce:
        refs += ((z, both),)
    return Crq(
        frame,
        values,
        disj(antecedent.antecedent, consequent.antecedent),
        mu,
        label=f"({consequent})|({antecedent})",
        sources=(antecedent, consequent),
        refs=refs,
        antecedent=ante,
    )


def conjunction_can_be_positive(c1: ConditionalEvent, c2: ConditionalEvent) -> bool:
    """Whether ``(E1|H1) & (E2|H2)`` can take a nonzero value under some coherent binding.

    It can iff some world makes both conjuncts true, or makes one true and
    the other void while the void one is not itself identically false.
    """
    frame = Frame.of(c1, c2)
    t1, _, v1 = c1.masks(frame)
    t2, _, v2 = c2.masks(frame)
    return bool(t1 & t2 or (v1 & t2 and t1) or (t1 & v2 and t2))


def iterated_on_conjunction(
    consequent: ConditionalEvent,
    c1: ConditionalEvent,
    c2: ConditionalEvent,
    x1: str = "x1",
    x2: str = "x2",
    x3: str = "x3",
    x12: str = "x12",
    x13: str = "x13",
    x23: str = "x23",
    x123: str = "x123",
    mu: str = "mu",
    *,
    reduce: bool = True,
) -> Crq:
    """``C3 | (C1 & C2) = C1 & C2 & C3 + mu * (1 - C1 & C2)``.

    With ``reduce`` the three-way prevision ``x123`` is replaced by
    ``mu*x12``.  Raises :class:`TrivialIterated` when the antecedent
    conjunction is zero under every coherent binding.
    """
    if not conjunction_can_be_positive(c1, c2):
        raise TrivialIterated(f"({c1}) & ({c2}) is identically zero")
    frame = Frame.of(c1, c2, consequent)
    three = conjunction3(c1, c2, consequent, x1, x2, x3, x12, x13, x23, x123, frame=frame)
    ante = conjunction2(c1, c2, x1, x2, x12, frame=frame)
    values = _iterated_values(frame, three.values, ante.values, mu)
    if reduce:
        sub = {x123: Poly.sym(mu) * Poly.sym(x12)}
        values = tuple(v.subs(sub) for v in values)
    refs = tuple(r for r in three.refs)
    if not reduce:
        refs += ((x123, three),)
    return Crq(
        frame,
        values,
        disj(c1.antecedent, c2.antecedent, consequent.antecedent),
        mu,
        label=f"({consequent})|(({c1}) & ({c2}))",
        sources=(c1, c2, consequent),
        refs=refs,
        antecedent=ante,
    )


@dataclass(frozen=True)
class Reduction:
    equal: bool
    substitution: dict[str, str] = field(default_factory=dict)
    witness: str | None = None


def reduce_equal_crq(q1: Crq, q2: Crq) -> Reduction:
    """Decide whether two quantities coincide where either is conditioned.

    On success the own symbol of ``q1`` is identified with that of ``q2``.
    Otherwise the witness names the first world where they differ.
    """
    frame = Frame.of(q1, q2)
    a, b = q1.on(frame), q2.on(frame)
    sub = {} if q1.symbol == q2.symbol else {q1.symbol: q2.symbol}
    if sub:
        a = a.subs(sub)
    live = frame.mask(disj(q1.conditioning, q2.conditioning))
    for w in range(frame.size):
        if live >> w & 1 and a.values[w] != b.values[w]:
            return Reduction(False, witness=frame.literal(w))
    return Reduction(True, substitution=sub)


def closure(q: Crq) -> list[tuple[str, Crq]]:
    """Quantities whose previsions appear in ``q``'s table, as indicator/conjunction Crqs.

    Returns ``(symbol, quantity)`` pairs, base conditionals first.
    """
    seen: dict[str, Crq] = {}

    def visit(sym: str, obj: object) -> None:
        if sym in seen:
            return
        if isinstance(obj, ConditionalEvent):
            seen[sym] = indicator(obj, sym)
            return
        for s, o in obj.refs:
            visit(s, o)
        seen[sym] = obj

    for sym, obj in q.refs:
        visit(sym, obj)
    return sorted(seen.items(), key=lambda kv: (len(kv[1].sources), kv[0]))
