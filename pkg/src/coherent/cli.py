"""Batch command-line front end.

``coherent check FILE...`` runs the queries of ``.problem`` files,
``coherent rules [NAME...]`` verifies builtin rules and ``coherent run``
does both (``--rules all``).  Exit status is 0 when every query ran, 1 if
any query raised an engine error and 2 on a parse error.

The environment variable ``COHERENT_VERBOSITY`` (0, 1 or 2) adds
certificates and bindings to text output at 1 and debug logging at 2.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import events
from .coherence import coherence_report, coherent_mu_set, extension_interval
from .compound import Crq, conjunction, conjunction2, indicator, quasi_conjunction
from .dsl import ParseError, Problem, Query, parse_problem
from .entailment import disjunctive_characterization, forced_mu_set, iterated_object, verdicts
from .errors import CoherenceError
from .events import ConditionalEvent
from .intervals import fmt
from .rules import format_table, get_rule, rule_names, verify_rule

log = logging.getLogger("coherent")

EXIT_OK, EXIT_ENGINE, EXIT_PARSE = 0, 1, 2


def verbosity() -> int:
    try:
        return int(os.environ.get("COHERENT_VERBOSITY", "0"))
    except ValueError:
        return 0


def set_max_atoms(n: int) -> None:
    if n < 1:
        raise ValueError("--max-atoms must be positive")
    events.MAX_ATOMS = n
    events._frame_for.cache_clear()


# Query evaluation ------------------------------------------------------


def _assessed(problem: Problem) -> tuple[list[str], list[ConditionalEvent], list[Fraction]]:
    names = [n for n in problem.conds if n in problem.assessments]
    return names, [problem.conds[n] for n in names], [problem.assessments[n] for n in names]


def _target(problem: Problem, arg) -> tuple[str, ConditionalEvent]:
    if isinstance(arg, str):
        return arg, problem.resolve(arg)
    return str(arg), arg


def _symbol_sources(q: Crq, problem: Problem) -> dict[str, str]:
    """Own symbols in ``q``'s table mapped to the declared names they stand for."""
    out = {}
    for sym, obj in q.refs:
        if isinstance(obj, ConditionalEvent):
            for name, c in problem.conds.items():
                if c == obj:
                    out[sym] = name
                    break
            else:
                out[sym] = str(obj)
        else:
            out[sym] = obj.label
    return out


def _bindings_from_assessment(q: Crq, problem: Problem) -> dict[str, Fraction] | None:
    names = _symbol_sources(q, problem)
    b = {s: problem.assessments[n] for s, n in names.items() if n in problem.assessments}
    return b if q.free_symbols <= b.keys() else None


def q_coherent(problem: Problem, query: Query, table: bool) -> dict:
    names, objs, vals = _assessed(problem)
    if not objs:
        raise CoherenceError("no assessments to check")
    rep = coherence_report(objs, vals)
    out = {"objects": names, **rep.to_dict()}
    if rep.failed_objects:
        out["failed_objects"] = [names[i] for i in rep.failed_objects]
    return out


def q_extend(problem: Problem, query: Query, table: bool) -> dict:
    label, target = _target(problem, query.args[0])
    names, objs, vals = _assessed(problem)
    keep = [i for i, n in enumerate(names) if n != label]
    names = [names[i] for i in keep]
    iv = extension_interval([objs[i] for i in keep], [vals[i] for i in keep], target)
    return {"objects": names, "target": str(target), "coherent": True, "interval": iv.to_dict(), "text": str(iv)}


def q_entails(problem: Problem, query: Query, table: bool) -> dict:
    premises = [problem.resolve(n) for n in query.args[0]]
    _, conclusion = _target(problem, query.args[1])
    vs = verdicts(premises, conclusion)
    out = {
        "premises": list(query.args[0]),
        "conclusion": str(conclusion),
        "holds": vs[0].holds,
        "verdicts": [v.to_dict() for v in vs],
    }
    if len(premises) == 2:
        out["characterization"] = disjunctive_characterization(premises, conclusion)
    return out


def q_iterated(problem: Problem, query: Query, table: bool) -> dict:
    conclusion = problem.resolve(query.args[0])
    premises = [problem.resolve(n) for n in query.args[1]]
    q = iterated_object(premises, conclusion)
    forced = forced_mu_set(q)
    out: dict = {
        "object": q.label,
        "symbols": _symbol_sources(q, problem),
        "mu_set": str(forced.mu_set),
        "is_interval": forced.mu_set.is_interval,
    }
    if forced.flags:
        out["flags"] = list(forced.flags)
    if forced.trivial:
        out["trivial_at"] = [", ".join(f"{k}={fmt(v)}" for k, v in sorted(b.items())) for b in forced.trivial]
    b = _bindings_from_assessment(q, problem)
    if b is not None:
        out["mu_set_at_assessment"] = str(coherent_mu_set(q, b))
    if table:
        out["table"] = q.table()
    return out


def q_conjunction(problem: Problem, query: Query, table: bool) -> dict:
    names = list(query.args)
    conds = [problem.resolve(n) for n in names]
    q = conjunction(conds)
    out: dict = {"object": q.label, "symbols": _symbol_sources(q, problem)}
    if len(conds) == 2 and all(n in problem.assessments for n in names):
        x, y = (problem.assessments[n] for n in names)
        base = [indicator(conds[0], "x"), indicator(conds[1], "y")]
        iv = extension_interval(base, {"x": x, "y": y}, conjunction2(*conds))
        out["interval"] = iv.to_dict()
        out["text"] = str(iv)
    if table:
        out["table"] = q.table()
    return out


def q_qc(problem: Problem, query: Query, table: bool) -> dict:
    qc = quasi_conjunction([problem.resolve(n) for n in query.args[0]])
    return {"members": list(query.args[0]), "qc": str(qc)}


def q_rule(problem: Problem, query: Query, table: bool) -> dict:
    return verify_rule(get_rule(query.args[0])).to_dict()


HANDLERS: dict[str, Callable[[Problem, Query, bool], dict]] = {
    "coherent": q_coherent,
    "extend": q_extend,
    "entails": q_entails,
    "iterated": q_iterated,
    "conjunction": q_conjunction,
    "qc": q_qc,
    "rule": q_rule,
}


def run_queries(problem: Problem, source: str = "<input>", table: bool = False) -> tuple[list[dict], bool]:
    """Evaluate every query in order; an error in one does not stop the rest.

    Returns the reports and whether any query failed.
    """
    reports, failed = [], False
    for query in problem.queries:
        head = {"file": source, "line": query.line, "query": query.text}
        try:
            reports.append({**head, **HANDLERS[query.kind](problem, query, table)})
        except (CoherenceError, ValueError, KeyError) as exc:
            failed = True
            log.debug("query at line %d failed", query.line, exc_info=True)
            reports.append({**head, "error": {"kind": type(exc).__name__, "message": _message(exc)}})
    return reports, failed


def _message(exc: Exception) -> str:
    if isinstance(exc, KeyError) and exc.args:
        return str(exc.args[0])
    return str(exc)


# Output ----------------------------------------------------------------


def format_report(rep: dict, verbose: int = 0) -> str:
    lines = [f"{rep['file']}:{rep['line']}: {rep['query']}"]
    if "error" in rep:
        lines.append(f"  error: {rep['error']['kind']}: {rep['error']['message']}")
        return "\n".join(lines)
    if "rule" in rep:
        lines.append(format_table([_RuleView(rep)]).replace("\n", "\n  ").join(["  ", ""]))
        return "\n".join(lines)
    if "coherent" in rep and "interval" not in rep:
        lines.append(f"  coherent: {'yes' if rep['coherent'] else 'no'} (levels: {rep['recursion_depth']})")
        if rep.get("failed_objects"):
            lines.append(f"  unresolved: {', '.join(rep['failed_objects'])}")
        if verbose:
            for i, level in enumerate(rep["certificate"], 1):
                lines.append(f"  level {i}: " + ", ".join(f"{k}: {v}" for k, v in level.items()))
    if "text" in rep:
        lines.append(f"  interval: {rep['text']}")
    if "verdicts" in rep:
        for v in rep["verdicts"]:
            extra = ""
            if "witness" in v:
                w = v["witness"]
                extra = f" witness {w if isinstance(w, str) else '{' + ','.join(map(str, w)) + '}'}"
            if "mu_set" in v:
                extra = f" mu set {v['mu_set']}"
            lines.append(f"  {v['method']}: {'entailed' if v['holds'] else 'not entailed'}{extra}")
        if "characterization" in rep:
            lines.append(f"  characterization: {rep['characterization']}")
    if "mu_set" in rep:
        flags = f" ({', '.join(rep['flags'])})" if rep.get("flags") else ""
        lines.append(f"  mu set: {rep['mu_set']}{flags}")
        if "mu_set_at_assessment" in rep:
            lines.append(f"  mu set at the assessment: {rep['mu_set_at_assessment']}")
        if rep.get("trivial_at"):
            lines.append(f"  trivial at: {'; '.join(rep['trivial_at'])}")
    if "qc" in rep:
        lines.append(f"  QC: {rep['qc']}")
    if "symbols" in rep and (verbose or "table" in rep):
        lines.append("  symbols: " + ", ".join(f"{k} = P({v})" for k, v in rep["symbols"].items()))
    if "table" in rep:
        lines.extend(format_value_table(rep["table"]))
    return "\n".join(lines)


def format_value_table(rows: Sequence[dict]) -> list[str]:
    width = max([len("constituent")] + [len(r["constituent"]) for r in rows])
    out = [f"  {'constituent'.ljust(width)}  value", f"  {'-' * width}  -----"]
    out.extend(f"  {r['constituent'].ljust(width)}  {r['value']}" for r in rows)
    return out


class _RuleView:
    """Adapter so serialized rule reports can reuse the rule table layout."""

    def __init__(self, d: dict):
        from .intervals import RationalInterval

        iv = d["interval"]
        self.name = d["rule"]
        self.p_valid = d["p_valid"]
        self.qc_witness = d["qc_witness"]
        self.mu_set = d["mu_set"]
        self.interval = RationalInterval(
            Fraction(iv["lo"]), Fraction(iv["hi"]), iv["lo_closed"], iv["hi_closed"]
        )
        self.default_claim = d.get("default_claim")
        self.externally_sourced = d.get("externally_sourced", False)
        self.trivial_at = tuple(d.get("trivial_at", ()))
        self.passed = d["pass"]


# Commands --------------------------------------------------------------


def _run_files(paths: Sequence[str], table: bool) -> tuple[list[dict], int]:
    reports, code = [], EXIT_OK
    for path in paths:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            reports.append({"file": path, "line": 0, "query": "", "error": {"kind": "OSError", "message": str(exc)}})
            code = max(code, EXIT_ENGINE)
            continue
        try:
            problem = parse_problem(text)
        except ParseError as exc:
            reports.append(
                {
                    "file": path,
                    "line": exc.line,
                    "col": exc.col,
                    "query": "",
                    "error": {"kind": exc.kind, "message": exc.message},
                }
            )
            code = EXIT_PARSE
            continue
        got, failed = run_queries(problem, path, table)
        reports.extend(got)
        if failed:
            code = max(code, EXIT_ENGINE)
    return reports, code


def _rule_reports(names: Sequence[str]) -> tuple[list[dict], int]:
    if not names or list(names) == ["all"]:
        names = rule_names()
    out, code = [], EXIT_OK
    for name in names:
        try:
            out.append(verify_rule(get_rule(name)).to_dict())
        except (CoherenceError, KeyError) as exc:
            out.append({"rule": name, "error": {"kind": type(exc).__name__, "message": _message(exc)}})
            code = EXIT_ENGINE
    return out, code


def _emit(file_reports: list[dict], rule_reports: list[dict], as_json: bool, out) -> None:
    if as_json:
        json.dump(file_reports + rule_reports, out, indent=2)
        out.write("\n")
        return
    verbose = verbosity()
    for rep in file_reports:
        if "col" in rep:
            # parse diagnostics
            print(f"{rep['file']}:{rep['line']}:{rep['col']}: {rep['error']['kind']}: {rep['error']['message']}", file=sys.stderr)
        else:
            out.write(format_report(rep, verbose) + "\n")
    good = [r for r in rule_reports if "error" not in r]
    if good:
        if file_reports:
            out.write("\n")
        out.write(format_table([_RuleView(r) for r in good]) + "\n")
        failed = [r for r in good if not r["pass"]]
        for r in failed:
            out.write(f"{r['rule']}: {'; '.join(r['problems'])}\n")
        out.write(f"{len(good) - len(failed)}/{len(good)} rules pass\n")
    for r in rule_reports:
        if "error" in r:
            out.write(f"{r['rule']}: error: {r['error']['kind']}: {r['error']['message']}\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coherent", description="Coherence-based reasoning over conditional events.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report stream as JSON")
    common.add_argument("--table", action="store_true", help="include value tables of compound quantities")
    common.add_argument("--max-atoms", type=int, default=8, metavar="N", help="largest atom count per query (default 8)")
    sub = p.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", parents=[common], help="run the queries in .problem files")
    check.add_argument("files", nargs="+")
    rules = sub.add_parser("rules", parents=[common], help="verify builtin inference rules")
    rules.add_argument("names", nargs="*", help="rule names, or 'all' (default)")
    run = sub.add_parser("run", parents=[common], help="run problem files and, optionally, the rule suite")
    run.add_argument("files", nargs="*")
    run.add_argument("--rules", metavar="NAMES", help="'all' or a comma-separated list of rule names")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if verbosity() >= 2:
        logging.basicConfig(level=logging.DEBUG, format="%(name)s: %(message)s")
    try:
        set_max_atoms(args.max_atoms)
    except ValueError as exc:
        print(f"coherent: {exc}", file=sys.stderr)
        return EXIT_PARSE

    file_reports: list[dict] = []
    rule_reports: list[dict] = []
    code = EXIT_OK
    if args.command in ("check", "run"):
        file_reports, code = _run_files(args.files, args.table)
    if args.command == "rules":
        rule_reports, c = _rule_reports(args.names)
        code = max(code, c)
    elif args.command == "run" and args.rules:
        rule_reports, c = _rule_reports([n for n in args.rules.split(",") if n])
        code = max(code, c)
    elif args.command == "run" and not args.files:
        print("coherent run: give problem files or --rules", file=sys.stderr)
        return EXIT_PARSE

    _emit(file_reports, rule_reports, args.json, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
