"""Named inference-rule instances and a harness that verifies them.

Each instance fixes concrete atoms, premises and a conclusion together with
the expected outcome.  ``verify_rule`` recomputes everything from scratch:
the direct, QC-witness and iterated verdicts, the forced mu set and the
propagation interval of the conclusion when every premise has probability 1.
Rules with negated defaults additionally check, by exact region analysis,
that the defaults held strictly below 1 force the conclusion to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coherence import (
    coherent_mu_set,
    entails_with_defaults,
    extension_interval,
    strict_region_nonempty,
)
from .compound import iterated2, iterated_on_conjunction, quasi_conjunction
from .entailment import (
    disjunctive_characterization,
    forced_mu_set,
    p_consistent,
    p_entails_direct,
    p_entails_iterated,
    p_entails_qc_witness,
)
from .errors import NotPConsistent
from .events import TRUE, Atom, ConditionalEvent, atoms
from .intervals import RationalInterval


@dataclass(frozen=True)
class RuleInstance:
    name: str
    atoms: tuple[str, ...]
    premises: tuple[ConditionalEvent, ...]
    conclusion: ConditionalEvent
    expected_valid: bool
    expected_mu: str
    defaults: tuple[ConditionalEvent, ...] = ()
    description: str = ""
    externally_sourced: bool = False

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "premises": [str(c) for c in self.premises],
            "conclusion": str(self.conclusion),
            "defaults": [f"P({c}) < 1" for c in self.defaults],
        }


@dataclass(frozen=True)
class RuleReport:
    name: str
    p_consistent: bool
    p_valid: bool
    qc_witness: object
    iterated_holds: bool
    mu_set: str
    interval: RationalInterval
    characterization: str | None
    expected_valid: bool
    expected_mu: str
    default_claim: bool | None = None
    default_satisfiable: bool | None = None
    slices: tuple[tuple[str, str], ...] = ()
    trivial_at: tuple[str, ...] = ()
    extras: dict = field(default_factory=dict)
    externally_sourced: bool = False
    problems: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.problems

    def to_dict(self) -> dict:
        out = {
            "rule": self.name,
            "p_consistent": self.p_consistent,
            "p_valid": self.p_valid,
            "qc_witness": self.qc_witness,
            "iterated_holds": self.iterated_holds,
            "mu_set": self.mu_set,
            "interval": self.interval.to_dict(),
            "characterization": self.characterization,
            "expected": {"p_valid": self.expected_valid, "mu_set": self.expected_mu},
            "pass": self.passed,
        }
        if self.default_claim is not None:
            out["default_claim"] = self.default_claim
            out["default_satisfiable"] = self.default_satisfiable
            out["slices"] = [{"default": d, "conclusion": c} for d, c in self.slices]
        if self.trivial_at:
            out["trivial_at"] = list(self.trivial_at)
        if self.extras:
            out["extras"] = dict(self.extras)
        if self.externally_sourced:
            out["externally_sourced"] = True
        if self.problems:
            out["problems"] = list(self.problems)
        return out


def builtin_rules() -> list[RuleInstance]:
    A, B, C, E, H, K = atoms("A B C E H K")

    def cond(cons, ante=TRUE) -> ConditionalEvent:
        return ConditionalEvent(cons, ante)

    valid, invalid = (True, "{1}"), (False, "[0,1]")
    return [
        RuleInstance("modus-ponens", ("A", "C"), (cond(C, A), cond(A)), cond(C), *valid),
        RuleInstance(
            "modus-tollens",
            ("A", "C"),
            (cond(C, A), cond(~C)),
            cond(~A),
            *valid,
            description="mu = 1 requires P(C|A) > 0; at P(C|A) = 0 the iterated conditional is trivial",
        ),
        RuleInstance("bayes", ("A", "E", "H"), (cond(E, A & H), cond(H, A)), cond(H, E & A), *valid),
        RuleInstance("and", ("A", "B", "C"), (cond(B, A), cond(C, A)), cond(B & C, A), *valid),
        RuleInstance("cut", ("A", "B", "C"), (cond(C, A & B), cond(B, A)), cond(C, A), *valid),
        RuleInstance(
            "cautious-monotonicity", ("A", "B", "C"), (cond(C, A), cond(B, A)), cond(C, A & B), *valid
        ),
        RuleInstance("or", ("A", "B", "C"), (cond(C, A), cond(C, B)), cond(C, A | B), *valid),
        RuleInstance(
            "qand",
            ("A", "B", "H", "K"),
            (cond(A, H), cond(B, K)),
            quasi_conjunction([cond(A, H), cond(B, K)]),
            *valid,
        ),
        RuleInstance("denial-of-antecedent", ("A", "C"), (cond(~A), cond(C, A)), cond(~C), *invalid),
        RuleInstance("affirmation-of-consequent", ("A", "C"), (cond(C), cond(C, A)), cond(A), *invalid),
        RuleInstance("transitivity", ("A", "B", "C"), (cond(C, B), cond(B, A)), cond(C, A), *invalid),
        RuleInstance(
            "affirmation-with-default",
            ("A", "C"),
            (cond(C), cond(C, A)),
            cond(A),
            *invalid,
            defaults=(cond(C, ~A),),
            description="P(C|~A) < 1 forces P(A) = 1",
        ),
        RuleInstance(
            "transitivity-with-default",
            ("A", "B", "C"),
            (cond(C, B), cond(B, A)),
            cond(C, A),
            *invalid,
            defaults=(cond(~A, A | B),),
            description="P(~A|(A | B)) < 1 forces P(C|A) = 1",
            externally_sourced=True,
        ),
    ]


def rule_names() -> list[str]:
    return [r.name for r in builtin_rules()]


def get_rule(name: str) -> RuleInstance:
    for r in builtin_rules():
        if r.name == name:
            return r
    raise KeyError(f"unknown rule {name!r}; known rules: {', '.join(rule_names())}")


SLICE_POINTS = (Fraction(0), Fraction(1, 2), Fraction(1))


def verify_rule(r: RuleInstance) -> RuleReport:
    problems = []
    consistent = p_consistent(r.premises)
    if not consistent:
        raise NotPConsistent(f"{r.name}: premises are not p-consistent")
    direct = p_entails_direct(r.premises, r.conclusion)
    qc = p_entails_qc_witness(r.premises, r.conclusion)
    iterated = p_entails_iterated(r.premises, r.conclusion)
    mu = str(iterated.mu_set)
    ones = [1] * len(r.premises)
    interval = extension_interval(r.premises, ones, r.conclusion)
    characterization = (
        disjunctive_characterization(r.premises, r.conclusion) if len(r.premises) == 2 else None
    )
    trivial = tuple(
        ", ".join(f"{k}={v}" for k, v in sorted(b.items())) for b in iterated.trivial_bindings
    )

    if direct != r.expected_valid:
        problems.append(f"direct verdict {direct}")
    if qc.holds != direct:
        problems.append("qc-witness verdict disagrees with the direct one")
    if iterated.holds != direct:
        problems.append("iterated verdict disagrees with the direct one")
    if mu != r.expected_mu:
        problems.append(f"mu set {mu}, expected {r.expected_mu}")
    want = RationalInterval(1, 1) if r.expected_valid else RationalInterval(0, 1)
    if interval != want:
        problems.append(f"propagation interval {interval}, expected {want}")
    if (characterization == "none") == direct and characterization is not None:
        problems.append(f"characterization {characterization} disagrees with the direct verdict")

    extras: dict = {}
    if r.name == "bayes":
        # with A sure: (H|E)|(EH) is the constant 1
        E, H = Atom("E"), Atom("H")
        special = coherent_mu_set(iterated2(ConditionalEvent(H, E), ConditionalEvent(E & H)), {"x": 1, "y": 1})
        forced = forced_mu_set(iterated2(ConditionalEvent(H, E), ConditionalEvent(E & H)))
        extras["specialization"] = "(H|E)|(E & H)"
        extras["specialization_mu_set"] = str(forced.mu_set)
        if not (special.is_point(1) and forced.mu_set.is_point(1)):
            problems.append("Bayes specialization is not forced to 1")
    if r.name == "qand":
        extras["qc_theorem"] = verify_qc_theorem(*r.premises)
        if not extras["qc_theorem"]:
            problems.append("QC(F)|C(F) is not forced to 1")

    claim = satisfiable = None
    slices: list[tuple[str, str]] = []
    if r.defaults:
        claim = entails_with_defaults(r.premises, r.defaults, r.conclusion)
        satisfiable = strict_region_nonempty(r.premises, r.defaults)
        if not claim:
            problems.append("defaults below 1 do not force the conclusion")
        if not satisfiable:
            problems.append("the defaults cannot be below 1 together with the premises")
        if len(r.defaults) == 1:
            for t in SLICE_POINTS:
                iv = extension_interval([*r.premises, *r.defaults], [*ones, t], r.conclusion)
                slices.append((str(t), str(iv)))

    return RuleReport(
        name=r.name,
        p_consistent=consistent,
        p_valid=direct,
        qc_witness=(qc.witness if isinstance(qc.witness, str) else list(qc.witness)) if qc.holds else None,
        iterated_holds=iterated.holds,
        mu_set=mu,
        interval=interval,
        characterization=characterization,
        expected_valid=r.expected_valid,
        expected_mu=r.expected_mu,
        default_claim=claim,
        default_satisfiable=satisfiable,
        slices=tuple(slices),
        trivial_at=trivial,
        extras=extras,
        externally_sourced=r.externally_sourced,
        problems=tuple(problems),
    )


def verify_qc_theorem(c1: ConditionalEvent, c2: ConditionalEvent) -> bool:
    """``QC(F) | C(F)`` is forced to 1 for the p-consistent pair ``F = {c1, c2}``."""
    if not p_consistent([c1, c2]):
        raise NotPConsistent(f"{{{c1}, {c2}}} is not p-consistent")
    q = iterated_on_conjunction(quasi_conjunction([c1, c2]), c1, c2)
    return forced_mu_set(q).mu_set.is_point(1)


def verify_all(rules: Sequence[RuleInstance] | None = None) -> list[RuleReport]:
    return [verify_rule(r) for r in (rules if rules is not None else builtin_rules())]


def format_table(reports: Sequence[RuleReport]) -> str:
    """Aligned plain-text summary, one rule per line."""
    header = ("rule", "p-valid", "witness", "mu set", "interval", "defaults", "result")
    rows = [header]
    for rep in reports:
        if rep.default_claim is None:
            defaults = "-"
        else:
            defaults = "forces 1" if rep.default_claim else "no"
            if rep.externally_sourced:
                defaults += " (ext.)"
        witness = rep.qc_witness
        if isinstance(witness, list):
            witness = "{" + ",".join(map(str, witness)) + "}"
        rows.append(
            (
                rep.name,
                "yes" if rep.p_valid else "no",
                str(witness) if witness is not None else "-",
                rep.mu_set + (" *" if rep.trivial_at else ""),
                str(rep.interval),
                defaults,
                "pass" if rep.passed else "FAIL",
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    if any(rep.trivial_at for rep in reports):
        lines.append("* trivial iterated conditional at: " + "; ".join(
            f"{rep.name} ({', '.join(rep.trivial_at)})" for rep in reports if rep.trivial_at
        ))
    return "\n".join(lines)


__all__ = [
    "RuleInstance",
    "RuleReport",
    "builtin_rules",
    "format_table",
    "get_rule",
    "rule_names",
    "verify_all",
    "verify_qc_theorem",
    "verify_rule",
]
