"""Command-line front end.

Exit codes: 0 success / property holds, 1 property violated or theorem
precondition failed (witness printed), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path
from typing import Any, Sequence, TextIO

from . import decisive, fixed_point, games, render, scf, sperner
from .errors import AxiomViolation, InputError, InvalidTable, LabError, PreconditionFailed, UnsupportedRule
from .prefs import default_names, enumerate_profiles, profile_from_names, ranking_from_names

JOBS_ENV = "IMPOSSIBILITY_LAB_JOBS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        if message:
            raise UsageError(message)
        raise _HelpExit(status)


class _HelpExit(Exception):
    pass


def _default_jobs():
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=["json", "text", "svg", "dot"], default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--output", "-o", type=Path, default=None)
    return p


def _rule_args(p):
    p.add_argument("--rule", help="dictator:I | constant:a,b,c | borda-lex | plurality-lex | copeland-lex")
    p.add_argument("--rule-file", type=Path, help="rule JSON")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="impossibility-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify-scf", parents=[common], help="exhaustively check Arrow's axioms")
    _rule_args(p)
    p.add_argument("--check", action="append",
                   choices=["pareto", "iia", "iia-restriction", "dictatorship", "all"])
    p.add_argument("--max-witnesses", type=int, default=scf.DEFAULT_MAX_WITNESSES)

    p = sub.add_parser("find-dictator", parents=[common], help="contract decisive coalitions to a dictator")
    _rule_args(p)

    sp = sub.add_parser("sperner", help="triangulations and Sperner labelings")
    ssub = sp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = ssub.add_parser("gen", parents=[common], help="Kuhn triangulation as JSON")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--labels", choices=["none", "random", "min"], default="none")
    p.add_argument("--labels-base", type=int, choices=[0, 1], default=0)
    p = ssub.add_parser("validate", parents=[common], help="check structure and Sperner condition")
    p.add_argument("--input", type=Path, required=True)
    p = ssub.add_parser("find", parents=[common], help="locate panchromatic cells")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--method", choices=["all", "path", "both"], default="both")

    gp = sub.add_parser("game", help="coloring games")
    gsub = gp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = gsub.add_parser("sperner", parents=[common], help="two-player Sperner game")
    p.add_argument("--input", type=Path)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--policy-a", choices=sorted(games.POLICIES), default="uniform-random")
    p.add_argument("--policy-b", choices=sorted(games.POLICIES), default="uniform-random")
    p = gsub.add_parser("social", parents=[common], help="voter i against the rest of society")
    _rule_args(p)
    p.add_argument("--player", type=int, default=0)
    p.add_argument("--input", type=Path, help="triangulation JSON (default: Kuhn --dim/--k)")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--profiles", type=Path, help="JSON array of profiles (default: all profiles)")
    p.add_argument("--full-transcript", action="store_true")

    p = sub.add_parser("fixpoint", parents=[common], help="approximate a Brouwer fixed point")
    p.add_argument("--map", default="rotate", help="identity | rotate | const:c0,c1,... | squash:t")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--k0", type=int, default=1)
    p.add_argument("--max-k", type=int, default=None)

    p = sub.add_parser("render", parents=[common], help="SVG or DOT drawing of a 2-D instance")
    p.add_argument("--input", type=Path)
    p.add_argument("--k", type=int, default=4)
    return parser


# -- helpers ------------------------------------------------------------------

def _load_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _rule(args) -> tuple[scf.ScfRule, list[str]]:
    if args.rule_file is not None:
        return scf.rule_from_dict(_load_json(args.rule_file))
    if args.rule is None or args.n is None or args.m is None:
        raise UsageError("give --rule-file, or --rule with --n and --m")
    names = default_names(args.m)
    kind, _, arg = args.rule.partition(":")
    if kind == "dictator":
        try:
            return scf.ScfRule.dictator(int(arg), args.n, args.m), names
        except ValueError:
            raise UsageError(f"bad dictator index in {args.rule!r}") from None
    if kind == "constant":
        return scf.ScfRule.constant(ranking_from_names(arg.split(","), names), args.n), names
    if kind in scf.NAMED_KINDS and not arg:
        return scf.ScfRule(kind, args.n, args.m), names
    raise UsageError(f"unknown rule {args.rule!r}")


def _triangulation(args, with_labels=False):
    if getattr(args, "input", None) is not None:
        t, labels = sperner.triangulation_from_dict(_load_json(args.input))
        if with_labels and labels is None:
            raise InputError(f"{args.input} carries no labels")
        return t, labels
    return sperner.kuhn_triangulation(args.dim, args.k), None


def _set(s):
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


# -- commands -------------------------------------------------------------------

def cmd_verify_scf(args):
    rule, names = _rule(args)
    checks = args.check or ["all"]
    if "all" in checks:
        checks = ["pareto", "iia", "dictatorship"] + (["iia-restriction"] if rule.is_named and rule.n <= 3 and rule.m <= 3 else [])
    reports = []
    for c in dict.fromkeys(checks):
        if c == "dictatorship":
            reports.append(scf.check_non_dictatorship(rule, jobs=args.jobs))
            continue
        fn = {"pareto": scf.check_pareto, "iia": scf.check_iia_pairwise,
              "iia-restriction": scf.check_iia_restriction}[c]
        reports.append(fn(rule, max_witnesses=args.max_witnesses, jobs=args.jobs))
    ok = all(r.holds for r in reports)
    data = {"rule": scf.rule_to_dict(rule, names) if rule.kind != "table" else {"kind": "table", "n": rule.n},
            "reports": [scf.report_to_dict(r, names) for r in reports], "holds": ok}
    lines = [f"rule: {rule.describe()} (n={rule.n}, m={rule.m})"]
    for r, d in zip(reports, data["reports"]):
        status = "holds" if r.holds else f"VIOLATED ({r.violations} violations)"
        lines.append(f"{r.axiom}: {status}")
        for w in d["witnesses"][:3]:
            lines.append("  witness: " + json.dumps(w))
    return (0 if ok else 1), data, lines


def cmd_find_dictator(args):
    rule, names = _rule(args)
    try:
        i, cert = decisive.find_dictator(rule)
    except PreconditionFailed as exc:
        report = exc.witness
        data = {"dictator": None, "error": str(exc), "report": scf.report_to_dict(report, names)}
        lines = [f"precondition failed: {exc}"] + ["  witness: " + json.dumps(w) for w in data["report"]["witnesses"]]
        return 1, data, lines
    except AxiomViolation as exc:
        data = {"dictator": None, "error": str(exc), "pair": exc.pair}
        return 1, data, [f"axiom violation: {exc}"]
    data = {"dictator": i, "certificate": decisive.certificate_to_dict(cert, names)}
    path = [frozenset(range(rule.n))] + [s.survivor for s in cert.chain]
    lines = [f"dictator: {i}", "chain: " + " -> ".join(_set(s) for s in path),
             f"verified pairs: {len(cert.verified_pairs)}"]
    return 0, data, lines


def cmd_sperner_gen(args):
    t = sperner.kuhn_triangulation(args.dim, args.k)
    labels = None
    if args.labels == "random":
        labels = sperner.random_sperner_labeling(t, random.Random(args.seed))
    elif args.labels == "min":
        labels = tuple(min(c) for c in t.carriers)
    data = sperner.triangulation_to_dict(t, labels, args.labels_base)
    lines = [f"kuhn({args.dim}, {args.k}): {len(t.vertices)} vertices, {len(t.cells)} cells"]
    return 0, data, lines


def cmd_sperner_validate(args):
    t, labels = _triangulation(args)
    data: dict[str, Any] = {"structure": "ok", "vertices": len(t.vertices), "cells": len(t.cells)}
    lines = [f"structure ok: dim {t.dim}, {len(t.vertices)} vertices, {len(t.cells)} cells"]
    if labels is None:
        return 0, data, lines
    report = sperner.validate_labeling(t, labels)
    data["sperner"] = report.valid
    data["violations"] = [{"vertex": v, "label": lab} for v, lab in report.violations]
    lines.append("Sperner labeling: valid" if report.valid else f"Sperner labeling: INVALID at {list(report.violations)}")
    return (0 if report.valid else 1), data, lines


def cmd_sperner_find(args):
    t, labels = _triangulation(args, with_labels=True)
    report = sperner.validate_labeling(t, labels)
    if not report.valid:
        data = {"sperner": False, "violations": [{"vertex": v, "label": lab} for v, lab in report.violations]}
        return 1, data, [f"not a Sperner labeling: {list(report.violations)}"]
    data: dict[str, Any] = {"sperner": True}
    lines = []
    if args.method in ("all", "both"):
        cells = sperner.find_panchromatic_all(t, labels)
        data["panchromatic"] = cells
        lines.append(f"panchromatic cells ({len(cells)}): {cells}")
    if args.method in ("path", "both"):
        res = sperner.find_panchromatic_path(t, labels)
        data["path"] = {"cell": res.cell, "trace": list(res.trace), "walks": [list(w) for w in res.walks]}
        lines.append(f"path-following cell: {res.cell} (trace {list(res.trace)})")
        if args.method == "both":
            data["path_in_all"] = res.cell in data["panchromatic"]
            lines.append(f"path cell among brute-force cells: {data['path_in_all']}")
    return 0, data, lines


def cmd_game_sperner(args):
    t, _ = _triangulation(args)
    result = games.play_sperner_game(t, games.POLICIES[args.policy_a], games.POLICIES[args.policy_b], seed=args.seed)
    data = {
        "loser": result.loser,
        "completing_cell": result.completing_cell,
        "losing_move": result.losing_move,
        "moves": [list(m) for m in result.state.history],
    }
    lines = [f"loser: {result.loser} at move {result.losing_move + 1} (cell {result.completing_cell})"]
    return 0, data, lines


def cmd_game_social(args):
    rule, names = _rule(args)
    t, _ = _triangulation(args)
    if args.profiles is not None:
        raw = _load_json(args.profiles)
        if not isinstance(raw, list):
            raise InputError("profiles file must hold a JSON array")
        profiles = [profile_from_names(p, names) for p in raw]
    else:
        profiles = list(enumerate_profiles(rule.n, rule.m))
    tr = games.play_social_choice_game(rule, args.player, profiles, t)
    full = games.transcript_to_dict(tr, names)
    winner = games.dictator_from_transcript(tr)
    data = full if args.full_transcript else {k: v for k, v in full.items() if k != "rounds"}
    data["dictator"] = winner
    lines = [f"rounds: {len(tr.rounds)}, tally: A={tr.tally['A']} B={tr.tally['B']}",
             f"final colorers: {''.join(c or '.' for c in tr.colorers)}",
             f"dictator: {winner if winner is not None else 'none'}"]
    return 0, data, lines


def cmd_fixpoint(args):
    f = fixed_point.named_map(args.map, args.dim)
    res = fixed_point.approx_fixed_point(f, args.eps, args.k0, args.max_k)
    data = {
        "map": f.description, "point": list(res.point), "residual": res.residual,
        "subdivision": res.subdivision, "cell": [list(v) for v in res.cell],
        "converged": res.converged, "history": [list(h) for h in res.history],
    }
    lines = [f"map: {f.description}", "point: (" + ", ".join(f"{x:.6f}" for x in res.point) + ")",
             f"residual: {res.residual:.3e} at k={res.subdivision}", f"converged: {res.converged}"]
    return (0 if res.converged else 1), data, lines


def cmd_render(args):
    if getattr(args, "input", None) is None:
        args.dim = 2
    t, labels = _triangulation(args)
    highlight = []
    if labels is not None and sperner.validate_labeling(t, labels).valid:
        highlight = sperner.find_panchromatic_all(t, labels)
    if args.format == "dot":
        return 0, render.to_dot(t, labels, highlight), None
    return 0, render.to_svg(t, labels, highlight), None


COMMANDS = {
    ("verify-scf", None): cmd_verify_scf,
    ("find-dictator", None): cmd_find_dictator,
    ("sperner", "gen"): cmd_sperner_gen,
    ("sperner", "validate"): cmd_sperner_validate,
    ("sperner", "find"): cmd_sperner_find,
    ("game", "sperner"): cmd_game_sperner,
    ("game", "social"): cmd_game_social,
    ("fixpoint", None): cmd_fixpoint,
    ("render", None): cmd_render,
}


def run(argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as exc:
        print(str(exc), file=stderr)
        return 2
    except _HelpExit as exc:
        parser.print_help(stdout)
        return exc.args[0] if exc.args else 0
    if args.jobs is None:
        args.jobs = _default_jobs()
    if args.jobs < 1:
        print("--jobs must be >= 1", file=stderr)
        return 2
    fmt = args.format
    command = COMMANDS[(args.command, getattr(args, "action", None))]
    if command is not cmd_render and fmt in ("svg", "dot"):
        print(f"--format {fmt} is only available for render", file=stderr)
        return 2
    if command is cmd_render and fmt not in ("svg", "dot"):
        fmt = args.format = "svg"
    try:
        code, data, lines = command(args)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return 2
    except (InputError, InvalidTable, UnsupportedRule) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except (PreconditionFailed, AxiomViolation) as exc:
        print(f"precondition failed: {exc}", file=stderr)
        return 1
    except LabError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except (KeyError, TypeError, ValueError) as exc:
        # structurally malformed JSON that slipped past the loaders
        print(f"error: malformed input ({type(exc).__name__}: {exc})", file=stderr)
        return 2
    if fmt == "json":
        text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    elif fmt in ("svg", "dot"):
        text = data
    else:
        text = "\n".join(lines) + "\n"
    if args.output is not None:
        try:
            args.output.write_text(text)
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc.strerror}", file=stderr)
            return 2
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
