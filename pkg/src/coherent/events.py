"""Propositional events, conditional events and constituents.

Events are small formula trees over named atoms.  Every semantic question
(implication, satisfiability, truth status of a conditional) is answered by
enumerating the worlds over the atoms involved: a world is an int whose bits
give the truth values, and an event compiles to a bitmask over worlds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import MissingAtom, TooManyAtoms, UnsatisfiableAntecedent

MAX_ATOMS = 8


class Expr:
    """Base class for event expressions; supports ``&``, ``|`` and ``~``."""

    __slots__ = ()

    def __and__(self, other: Expr) -> Expr:
        return And((self, other))

    def __or__(self, other: Expr) -> Expr:
        return Or((self, other))

    def __invert__(self) -> Expr:
        return Not(self)

    def given(self, antecedent: Expr | None = None) -> ConditionalEvent:
        return ConditionalEvent(self, TRUE if antecedent is None else antecedent)

    def __str__(self) -> str:
        return format_expr(self)


@dataclass(frozen=True, repr=False)
class Atom(Expr):
    name: str

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Const(Expr):
    value: bool

    def __repr__(self) -> str:
        return "TRUE" if self.value else "FALSE"


@dataclass(frozen=True, repr=False)
class Not(Expr):
    arg: Expr

    def __repr__(self) -> str:
        return f"Not({self.arg!r})"


@dataclass(frozen=True, repr=False)
class And(Expr):
    args: tuple[Expr, ...]

    def __repr__(self) -> str:
        return f"And({', '.join(map(repr, self.args))})"


@dataclass(frozen=True, repr=False)
class Or(Expr):
    args: tuple[Expr, ...]

    def __repr__(self) -> str:
        return f"Or({', '.join(map(repr, self.args))})"


TRUE = Const(True)
FALSE = Const(False)


def atoms(names: str) -> tuple[Atom, ...]:
    """``atoms("A B C")`` returns three atoms."""
    return tuple(Atom(n) for n in names.replace(",", " ").split())


def conj(*args: Expr) -> Expr:
    if not args:
        return TRUE
    return args[0] if len(args) == 1 else And(tuple(args))


def disj(*args: Expr) -> Expr:
    if not args:
        return FALSE
    return args[0] if len(args) == 1 else Or(tuple(args))


def atom_names(expr: Expr) -> frozenset[str]:
    return _atom_names(expr)


@lru_cache(maxsize=None)
def _atom_names(expr: Expr) -> frozenset[str]:
    if isinstance(expr, Atom):
        return frozenset((expr.name,))
    if isinstance(expr, Const):
        return frozenset()
    if isinstance(expr, Not):
        return _atom_names(expr.arg)
    out: frozenset[str] = frozenset()
    for a in expr.args:
        out |= _atom_names(a)
    return out


def evaluate(expr: Expr, world: Mapping[str, bool]) -> bool:
    if isinstance(expr, Atom):
        try:
            return bool(world[expr.name])
        except KeyError:
            raise MissingAtom(expr.name) from None
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Not):
        return not evaluate(expr.arg, world)
    if isinstance(expr, And):
        return all(evaluate(a, world) for a in expr.args)
    if isinstance(expr, Or):
        return any(evaluate(a, world) for a in expr.args)
    raise TypeError(f"not an event expression: {expr!r}")


_PREC = {Or: 1, And: 2}


def format_expr(expr: Expr, parent: int = 0) -> str:
    if isinstance(expr, Atom):
        return expr.name
    if isinstance(expr, Const):
        return "TRUE" if expr.value else "FALSE"
    if isinstance(expr, Not):
        return "~" + format_expr(expr.arg, 3)
    prec = _PREC[type(expr)]
    sep = " & " if isinstance(expr, And) else " | "
    text = sep.join(format_expr(a, prec) for a in expr.args)
    return f"({text})" if prec < parent else text


class Frame:
    """The worlds over an ordered tuple of atoms.

    World ``w`` makes ``atoms[i]`` true iff bit ``n-1-i`` of ``w`` is set, so
    numeric order of worlds is lexicographic order of their truth tuples.
    """

    __slots__ = ("atoms", "n", "size", "full", "_atom_masks", "_index")

    def __init__(self, names: Iterable[str]):
        self.atoms = tuple(names)
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError("duplicate atom names")
        self.n = len(self.atoms)
        if self.n > MAX_ATOMS:
            raise TooManyAtoms(f"{self.n} atoms exceed the limit of {MAX_ATOMS}")
        self.size = 1 << self.n
        self.full = (1 << self.size) - 1
        self._index = {a: i for i, a in enumerate(self.atoms)}
        masks = []
        for i in range(self.n):
            bit = 1 << (self.n - 1 - i)
            m = 0
            for w in range(self.size):
                if w & bit:
                    m |= 1 << w
            masks.append(m)
        self._atom_masks = tuple(masks)

    @classmethod
    def of(cls, *objects) -> Frame:
        """Frame over the sorted atoms of expressions, conditionals or quantities."""
        names: set[str] = set()
        for obj in objects:
            names |= _names_of(obj)
        return _frame_for(tuple(sorted(names)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Frame) and other.atoms == self.atoms

    def __hash__(self) -> int:
        return hash(self.atoms)

    def __repr__(self) -> str:
        return f"Frame({' '.join(self.atoms)})"

    def mask(self, expr: Expr) -> int:
        return _mask(self, expr)

    def truth(self, w: int) -> tuple[bool, ...]:
        return tuple(bool(w >> (self.n - 1 - i) & 1) for i in range(self.n))

    def assignment(self, w: int) -> dict[str, bool]:
        return dict(zip(self.atoms, self.truth(w)))

    def literal(self, w: int) -> str:
        """World ``w`` as a conjunction of atom literals, e.g. ``A&~B``."""
        if not self.atoms:
            return "TRUE"
        return "&".join(a if t else "~" + a for a, t in zip(self.atoms, self.truth(w)))

    def worlds(self, mask: int) -> list[int]:
        return [w for w in range(self.size) if mask >> w & 1]

    def project(self, w: int, sub: Frame) -> int:
        """Index in ``sub`` of the restriction of world ``w``."""
        out = 0
        for name in sub.atoms:
            out = out << 1 | (w >> (self.n - 1 - self._index[name]) & 1)
        return out

    def atom_mask(self, name: str) -> int:
        try:
            return self._atom_masks[self._index[name]]
        except KeyError:
            raise MissingAtom(name) from None


@lru_cache(maxsize=256)
def _frame_for(names: tuple[str, ...]) -> Frame:
    return Frame(names)


@lru_cache(maxsize=None)
def _mask(frame: Frame, expr: Expr) -> int:
    if isinstance(expr, Atom):
        return frame.atom_mask(expr.name)
    if isinstance(expr, Const):
        return frame.full if expr.value else 0
    if isinstance(expr, Not):
        return frame.full & ~_mask(frame, expr.arg)
    if isinstance(expr, And):
        m = frame.full
        for a in expr.args:
            m &= _mask(frame, a)
        return m
    if isinstance(expr, Or):
        m = 0
        for a in expr.args:
            m |= _mask(frame, a)
        return m
    raise TypeError(f"not an event expression: {expr!r}")


def _names_of(obj) -> frozenset[str]:
    if isinstance(obj, Expr):
        return atom_names(obj)
    if isinstance(obj, ConditionalEvent):
        return obj.atoms
    frame = getattr(obj, "frame", None)
    if isinstance(frame, Frame):
        return frozenset(frame.atoms)
    raise TypeError(f"cannot collect atoms from {obj!r}")


def satisfiable(expr: Expr) -> bool:
    return Frame.of(expr).mask(expr) != 0


def implies(e1: Expr, e2: Expr) -> bool:
    """True iff ``e1 & ~e2`` is unsatisfiable."""
    f = Frame.of(e1, e2)
    return f.mask(e1) & ~f.mask(e2) == 0


def equivalent(e1: Expr, e2: Expr) -> bool:
    f = Frame.of(e1, e2)
    return f.mask(e1) == f.mask(e2)


def from_mask(frame: Frame, mask: int) -> Expr:
    """An expression (disjunction of world literals) with the given mask."""
    if mask == 0:
        return FALSE
    if mask == frame.full:
        return TRUE
    terms = []
    for w in frame.worlds(mask):
        lits = [Atom(a) if t else Not(Atom(a)) for a, t in zip(frame.atoms, frame.truth(w))]
        terms.append(conj(*lits))
    return disj(*terms)


def minimal_dnf(frame: Frame, mask: int) -> str:
    """Short disjunctive description of a world set, e.g. ``~A&H | ~B&K``.

    Prime implicants by Quine-McCluskey, then a greedy cover.
    """
    if mask == 0:
        return "FALSE"
    if mask == frame.full:
        return "TRUE"
    n = frame.n
    # an implicant is (value bits, care bits) over the n atoms
    level = {(w, (1 << n) - 1) for w in frame.worlds(mask)}
    primes: set[tuple[int, int]] = set()
    while level:
        merged, used = set(), set()
        items = sorted(level)
        for i, (v1, c1) in enumerate(items):
            for v2, c2 in items[i + 1 :]:
                diff = v1 ^ v2
                if c1 == c2 and diff and diff & (diff - 1) == 0:
                    merged.add((v1 & ~diff, c1 & ~diff))
                    used.add((v1, c1))
                    used.add((v2, c2))
        primes |= level - used
        level = merged

    def cover(imp: tuple[int, int]) -> int:
        v, c = imp
        return sum(1 << w for w in range(frame.size) if w & c == v)

    covers = {imp: cover(imp) for imp in primes}
    chosen, left = [], mask
    while left:
        best = max(sorted(covers), key=lambda imp: (bin(covers[imp] & left).count("1"), -bin(imp[1]).count("1")))
        chosen.append(best)
        left &= ~covers[best]
    chosen.sort(key=lambda imp: -max(w for w in range(frame.size) if covers[imp] >> w & 1))

    def term(imp: tuple[int, int]) -> str:
        v, c = imp
        lits = []
        for i, a in enumerate(frame.atoms):
            bit = 1 << (n - 1 - i)
            if c & bit:
                lits.append(a if v & bit else "~" + a)
        return "&".join(lits)

    return " | ".join(term(imp) for imp in chosen)


@dataclass(frozen=True)
class ConditionalEvent:
    """The three-valued event ``consequent | antecedent``."""

    consequent: Expr
    antecedent: Expr = TRUE
    atoms: frozenset[str] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for part in (self.consequent, self.antecedent):
            if not isinstance(part, Expr):
                raise TypeError(f"not an event expression: {part!r}")
        object.__setattr__(self, "atoms", atom_names(self.consequent) | atom_names(self.antecedent))
        if not satisfiable(self.antecedent):
            raise UnsatisfiableAntecedent(f"antecedent of {self} is unsatisfiable")

    def __str__(self) -> str:
        cons = format_expr(self.consequent, 2)
        if self.antecedent == TRUE:
            return cons
        return f"{cons}|{format_expr(self.antecedent, 2)}"

    def masks(self, frame: Frame) -> tuple[int, int, int]:
        """Bitmasks of the worlds where this conditional is true, false, void."""
        h = frame.mask(self.antecedent)
        e = frame.mask(self.consequent)
        return e & h, ~e & h & frame.full, ~h & frame.full

    def status(self, world: Mapping[str, bool]) -> str:
        if not evaluate(self.antecedent, world):
            return "V"
        return "T" if evaluate(self.consequent, world) else "F"

    def equivalent(self, other: ConditionalEvent) -> bool:
        """Same true part and same antecedent, world by world."""
        f = Frame.of(self, other)
        return self.masks(f)[:2] == other.masks(f)[:2]


def gn_implies(c1: ConditionalEvent, c2: ConditionalEvent) -> bool:
    """Goodman-Nguyen inclusion: ``AH <= BK`` and ``~B K <= ~A H``."""
    f = Frame.of(c1, c2)
    t1, f1, _ = c1.masks(f)
    t2, f2, _ = c2.masks(f)
    return t1 & ~t2 == 0 and f2 & ~f1 == 0


@dataclass(frozen=True)
class Constituent:
    index: int
    worlds: int
    representative: int
    literal: str
    truth: tuple[str, ...]
    values: tuple = ()
    all_void: bool = False


def constituents(
    family: Sequence[ConditionalEvent], quantities: Sequence = ()
) -> list[Constituent]:
    """Group worlds by truth vector over ``family`` and values of ``quantities``.

    Groups are emitted in order of their least world, which also serves as
    the canonical representative.
    """
    if not family:
        raise ValueError("constituents need a nonempty family")
    frame = Frame.of(*family, *quantities)
    masks = [c.masks(frame) for c in family]
    tables = [q.on(frame).values for q in quantities]
    groups: dict[tuple, list[int]] = {}
    for w in range(frame.size):
        bit = 1 << w
        truth = tuple("T" if t & bit else ("F" if f & bit else "V") for t, f, _ in masks)
        vals = tuple(t[w] for t in tables)
        groups.setdefault((truth, vals), []).append(w)
    out = []
    for idx, ((truth, vals), ws) in enumerate(sorted(groups.items(), key=lambda kv: kv[1][0])):
        m = 0
        for w in ws:
            m |= 1 << w
        out.append(
            Constituent(
                index=idx,
                worlds=m,
                representative=ws[0],
                literal=frame.literal(ws[0]),
                truth=truth,
                values=vals,
                all_void=all(t == "V" for t in truth),
            )
        )
    return out
