"""Command-line interface.

Exit status: 0 on success, 1 when an analysis rejects (an ``--expect`` that
does not hold, a failing golden check, an absoluteness violation), 2 on input
errors.  ``--json`` switches every subcommand to a single JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .absoluteness import absoluteness_suite
from .classify import RuleSet, classify, delta_refine, is_ordinal_bounded_only
from .corpus import (
    bless, check_corpus, corpus, corpus_registry, evaluable_entries, get_entry,
)
from .errors import LevyError
from .hf import HfSet, parse_model_name
from .normalize import contract_blocks, desugar_ord, prefix_text, to_nnf, to_prenex
from .parser import parse, print_formula
from .registry import Registry, loads_registry
from .semantics import evaluate
from .syntax import Formula
from .transfer import ParameterDeclaration, check_transfer, describe

SCHEMA_VERSION = 1
EXIT_OK, EXIT_REJECT, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class Source:
    """A formula read from a file, stdin (``-``) or the corpus (``corpus:<id>``)."""

    def __init__(self, spec: str, registry: Registry):
        self.spec = spec
        self.params: tuple[ParameterDeclaration, ...] | None = None
        if spec.startswith("corpus:"):
            entry = get_entry(spec[len("corpus:"):])
            self.text = entry.source
            self.formula: Formula = entry.formula
            self.params = entry.params
            return
        if spec == "-":
            raw = sys.stdin.buffer.read()
        else:
            try:
                raw = Path(spec).read_bytes()
            except OSError as exc:
                raise InputError(f"cannot read {spec}: {exc.strerror}") from None
        try:
            self.text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"{spec}: not valid UTF-8 at byte {exc.start}") from None
        self.formula = parse(self.text, registry)


def _registry(args) -> Registry:
    base = corpus_registry()
    if args.registry:
        try:
            text = Path(args.registry).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {args.registry}: {exc.strerror}") from None
        return loads_registry(text, base)
    return base


def _emit(args, command: str, inputs: dict, results: Any, traces: Any, text: str) -> None:
    if args.json:
        doc = {
            "tool": "levylab",
            "version": __version__,
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "inputs": inputs,
            "results": results,
            "traces": traces,
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)


# --- subcommands ---------------------------------------------------------------

def cmd_parse(args) -> int:
    reg = _registry(args)
    src = Source(args.source, reg)
    f = src.formula
    if args.desugar:
        f = desugar_ord(f)
    if args.nnf:
        f = to_nnf(f)
    results: dict[str, Any] = {"canonical": print_formula(f)}
    lines = [results["canonical"]]
    if args.prenex:
        p = contract_blocks(to_prenex(f))
        results["prenex"] = {
            "prefix": [str(e) for e in p.prefix],
            "blocks": [[b.kind, list(b.variables)] for b in p.blocks],
            "matrix": print_formula(p.matrix),
        }
        lines = [f"{prefix_text(p)} {print_formula(p.matrix)}".strip(),
                 "blocks: " + " ".join(f"{b.kind}{{{','.join(b.variables)}}}" for b in p.blocks)]
    _emit(args, "parse", {"source": args.source}, results, None, "\n".join(lines))
    return EXIT_OK


def cmd_classify(args) -> int:
    reg = _registry(args)
    src = Source(args.source, reg)
    cls, trace = classify(src.formula, args.rules, reg)
    results = {
        "class": str(cls),
        "ordinal_bounded_only": is_ordinal_bounded_only(src.formula),
    }
    if args.delta:
        results["refined"] = str(delta_refine(src.formula, args.rules, reg))
    text = [results.get("refined", str(cls))]
    if args.trace:
        text.extend(trace.lines())
    _emit(args, "classify", {"source": args.source, "rules": args.rules}, results,
          trace.to_json() if args.trace else None, "\n".join(text))
    return EXIT_OK


def cmd_transfer(args) -> int:
    reg = _registry(args)
    src = Source(args.source, reg)
    if args.params is not None:
        params = ParameterDeclaration.parse_list(args.params)
    else:
        params = list(src.params or ())
    verdict = check_transfer(src.formula, params, reg)
    text = describe(verdict)
    if args.trace:
        text += "\n" + "\n".join(verdict.absoluteness_trace)
    _emit(args, "transfer", {"source": args.source, "params": [str(p) for p in params]},
          {k: v for k, v in verdict.to_json().items() if k != "trace"},
          list(verdict.absoluteness_trace), text)
    if args.expect is None:
        return EXIT_OK
    wanted = args.expect == "eliminable"
    return EXIT_OK if verdict.eliminable == wanted else EXIT_REJECT


def _parse_assign(text: str | None) -> dict[str, HfSet]:
    out: dict[str, HfSet] = {}
    for item in filter(None, (s.strip() for s in (text or "").split(","))):
        name, eq, value = item.partition("=")
        if not eq or not value.strip().isdigit():
            raise InputError(f"--assign expects name=<ackermann code>, got {item!r}")
        out[name.strip()] = HfSet(int(value))
    return out


def cmd_eval(args) -> int:
    reg = _registry(args)
    src = Source(args.source, reg)
    try:
        model = parse_model_name(args.model)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    assignment = _parse_assign(args.assign)
    value = evaluate(model, src.formula, assignment, reg)
    _emit(args, "eval",
          {"source": args.source, "model": args.model,
           "assign": {k: v.code for k, v in sorted(assignment.items())}},
          {"value": value, "model_size": len(model)}, None, "true" if value else "false")
    return EXIT_OK


def cmd_suite(args) -> int:
    reg = _registry(args)
    try:
        universe = parse_model_name(args.universe)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.budget < 1:
        raise InputError("--budget must be at least 1")
    entries = evaluable_entries()
    if args.only:
        wanted = set(args.only.split(","))
        entries = [e for e in entries if e.id in wanted]
    report = absoluteness_suite(universe, [(e.id, e.formula) for e in entries], args.budget, reg)
    results = report.to_json()
    if args.figures:
        path = Path(args.figures) / "suite_verdicts.png"
        from .plotting import plot_suite

        plot_suite(report.summary(), path, f"absoluteness over {args.universe}, {report.pair_count} pairs")
        results["figures"] = [str(path)]
    lines = [f"universe {args.universe}: {report.universe_size} elements, {report.pair_count} pairs, "
             f"{len(report.records)} cells, {len(report.violations)} violations"]
    for fid, row in sorted(report.summary().items()):
        lines.append(f"  {fid:<24} ok={row['ok']:<6} observed={row['observed']:<6} violation={row['violation']}")
    for r in report.violations[:20]:
        lines.append(f"VIOLATION {r.formula_id} pair {r.pair_id} [{r.assignment}] {r.level_class} "
                     f"{r.direction}: M={r.m_truth} N={r.n_truth}")
    _emit(args, "suite", {"universe": args.universe, "budget": args.budget,
                          "formulas": [e.id for e in entries]}, results, None, "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_REJECT


def cmd_corpus(args) -> int:
    if args.action == "list":
        rows = [{"id": e.id, "class": str(e.expected_class), "evaluable": e.evaluable,
                 "provenance": e.provenance} for e in corpus()]
        text = "\n".join(f"{r['id']:<24} {r['class']:<8} {'eval' if r['evaluable'] else '-':<5} {r['provenance']}"
                         for r in rows)
        _emit(args, "corpus list", {}, rows, None, text)
        return EXIT_OK
    if args.action == "show":
        if not args.id:
            raise InputError("corpus show needs an entry id")
        e = get_entry(args.id)
        results = {
            "id": e.id, "file": e.file, "formula": print_formula(e.formula),
            "params": [str(p) for p in e.params], "expected_class": str(e.expected_class),
            "ord_only": e.expected_ord_bounded_only, "transfer": e.expected_transfer,
            "evaluable": e.evaluable, "provenance": e.provenance,
        }
        _emit(args, "corpus show", {"id": e.id}, results, None, e.source.rstrip("\n"))
        return EXIT_OK
    # check
    if args.bless:
        changed = bless()
        print(f"blessed: {', '.join(changed) if changed else 'no changes'}", file=sys.stderr)
    checks = check_corpus()
    results = [{"id": r.entry, "ok": r.ok, "actual": r.actual,
                "mismatches": [str(m) for m in r.mismatches]} for r in checks]
    failed = [r for r in checks if not r.ok]
    doc: dict[str, Any] = {"entries": results, "failed": len(failed)}
    if args.figures:
        from .plotting import plot_class_histogram

        path = Path(args.figures) / "corpus_classes.png"
        plot_class_histogram([r.actual["class"] for r in checks], path, "corpus classes (rule set zf)")
        doc["figures"] = [str(path)]
    lines = [f"{'ok ' if r.ok else 'FAIL'} {r.entry:<24} {r.actual['class']:<8} "
             f"ord_only={r.actual['ord_only']:<5} {r.actual['transfer']}" for r in checks]
    lines += [f"  {m}" for r in failed for m in r.mismatches]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} entries match")
    _emit(args, "corpus check", {"bless": args.bless}, doc, None, "\n".join(lines))
    return EXIT_REJECT if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="levylab", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="emit one JSON document")
    p.add_argument("--registry", help="extra defined predicates (registry file format)")
    p.add_argument("--version", action="version", version=f"levylab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", help="echo the canonical form")
    sp.add_argument("source", help="file, '-' or corpus:<id>")
    sp.add_argument("--desugar", action="store_true", help="expand ordinal-bounded quantifiers")
    sp.add_argument("--nnf", action="store_true", help="negation normal form")
    sp.add_argument("--prenex", action="store_true", help="prenex form with quantifier blocks")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("classify", help="Levy-hierarchy upper bound")
    sp.add_argument("source")
    sp.add_argument("--rules", choices=[r.value for r in RuleSet], default=RuleSet.ZF.value)
    sp.add_argument("--trace", action="store_true")
    sp.add_argument("--delta", action="store_true", help="refine through Sigma/Pi derivation pairs")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("transfer", help="ZFC-to-ZF transfer gate")
    sp.add_argument("source")
    sp.add_argument("--params", help="declarations like kappa:ordinal,A:ordinal-tuple-set")
    sp.add_argument("--expect", choices=["eliminable", "not-applicable"])
    sp.add_argument("--trace", action="store_true")
    sp.set_defaults(func=cmd_transfer)

    sp = sub.add_parser("eval", help="truth value in a cumulative stage V_k")
    sp.add_argument("source")
    sp.add_argument("--model", required=True, help="v0 .. v5")
    sp.add_argument("--assign", help="x=<code>,y=<code> (Ackermann codes)")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("suite", help="absoluteness suite over the evaluable corpus")
    sp.add_argument("--universe", default="v4")
    sp.add_argument("--budget", type=int, default=200)
    sp.add_argument("--only", help="comma-separated corpus ids")
    sp.add_argument("--figures", help="directory for PNG figures")
    sp.set_defaults(func=cmd_suite)

    sp = sub.add_parser("corpus", help="list, show or check the corpus")
    sp.add_argument("action", choices=["list", "show", "check"])
    sp.add_argument("id", nargs="?")
    sp.add_argument("--bless", action="store_true", help="rewrite goldens from current output")
    sp.add_argument("--figures", help="directory for PNG figures")
    sp.set_defaults(func=cmd_corpus)
    return p


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        return args.func(args)
    except (LevyError, InputError) as exc:
        print(f"levylab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_cli())
