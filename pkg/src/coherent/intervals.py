"""Exact rational intervals and finite unions of them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


def fmt(q: Fraction) -> str:
    """Lowest-terms text for a rational: ``1/2``, ``1``, ``-3/4``."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RationalInterval:
    lower: Fraction
    upper: Fraction
    lower_closed: bool = True
    upper_closed: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "lower", Fraction(self.lower))
        object.__setattr__(self, "upper", Fraction(self.upper))
        if self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")

    @classmethod
    def point(cls, v) -> RationalInterval:
        return cls(v, v)

    @property
    def is_point(self) -> bool:
        return self.lower == self.upper

    def __contains__(self, v) -> bool:
        v = Fraction(v)
        if v < self.lower or v > self.upper:
            return False
        if v == self.lower and not self.lower_closed:
            return False
        if v == self.upper and not self.upper_closed:
            return False
        return True

    def __str__(self) -> str:
        if self.is_point:
            return "{" + fmt(self.lower) + "}"
        left = "[" if self.lower_closed else "("
        right = "]" if self.upper_closed else ")"
        return f"{left}{fmt(self.lower)},{fmt(self.upper)}{right}"

    def to_dict(self) -> dict:
        return {
            "lo": fmt(self.lower),
            "hi": fmt(self.upper),
            "lo_closed": self.lower_closed,
            "hi_closed": self.upper_closed,
        }


@dataclass(frozen=True)
class CoherentSet:
    """A finite union of disjoint intervals, kept sorted and merged."""

    intervals: tuple[RationalInterval, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "intervals", _merge(self.intervals))

    @classmethod
    def of(cls, *parts: RationalInterval) -> CoherentSet:
        return cls(tuple(parts))

    @classmethod
    def unit(cls) -> CoherentSet:
        return cls((RationalInterval(0, 1),))

    @classmethod
    def point(cls, v) -> CoherentSet:
        return cls((RationalInterval.point(v),))

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def is_interval(self) -> bool:
        return len(self.intervals) == 1

    def is_point(self, v=None) -> bool:
        if len(self.intervals) != 1 or not self.intervals[0].is_point:
            return False
        return v is None or self.intervals[0].lower == Fraction(v)

    def __contains__(self, v) -> bool:
        return any(v in iv for iv in self.intervals)

    def union(self, other: CoherentSet) -> CoherentSet:
        return CoherentSet(self.intervals + other.intervals)

    def __str__(self) -> str:
        if not self.intervals:
            return "{}"
        return " U ".join(str(iv) for iv in self.intervals)

    def to_dict(self) -> list[dict]:
        return [iv.to_dict() for iv in self.intervals]


def _merge(parts: Iterable[RationalInterval]) -> tuple[RationalInterval, ...]:
    items = sorted(parts, key=lambda iv: (iv.lower, not iv.lower_closed))
    out: list[RationalInterval] = []
    for iv in items:
        if out:
            last = out[-1]
            touches = iv.lower < last.upper or (
                iv.lower == last.upper and (iv.lower_closed or last.upper_closed)
            )
            if touches:
                if iv.upper > last.upper:
                    out[-1] = RationalInterval(last.lower, iv.upper, last.lower_closed, iv.upper_closed)
                elif iv.upper == last.upper and iv.upper_closed and not last.upper_closed:
                    out[-1] = RationalInterval(last.lower, last.upper, last.lower_closed, True)
                elif iv.lower == last.lower and iv.lower_closed and not last.lower_closed:
                    out[-1] = RationalInterval(last.lower, last.upper, True, last.upper_closed)
                continue
        out.append(iv)
    return tuple(out)


def parse_set(text: str) -> CoherentSet:
    """Inverse of ``str(CoherentSet)``: ``"{1}"``, ``"[0,1/2) U {1}"``."""
    parts = []
    for chunk in text.split(" U "):
        chunk = chunk.strip()
        if chunk == "{}":
            continue
        if chunk.startswith("{"):
            parts.append(RationalInterval.point(Fraction(chunk[1:-1])))
            continue
        lo, hi = chunk[1:-1].split(",")
        parts.append(RationalInterval(Fraction(lo), Fraction(hi), chunk[0] == "[", chunk[-1] == "]"))
    return CoherentSet(tuple(parts))
