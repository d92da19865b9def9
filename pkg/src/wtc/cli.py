"""Command-line front end: ``wtc <command> ...``.

Exit status 0 means success / equivalent / satisfied, 1 means inequivalent
or unsatisfied, 2 means a usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import WTCError
from .equivalence import EquivalenceKind, check
from .certificates import distinguishing_formula
from .pes import enumerate_configurations
from .pesio import format_pes, load_pes
from .semantics import satisfies
from .syntax import format_formula, parse_formula
from .terms import compile_term
from .transitions import build_configuration_graph

RELATIONS = [f"{s}-{k}" for s in ("weak", "strong") for k in ("hm", "step", "pomset", "hp", "hhp")]


def _names(pes, events):
    return [pes.names[e] for e in sorted(events)]


def _config_text(pes, config):
    return "{" + ", ".join(_names(pes, config)) + "}"


class _Report:
    def __init__(self, command, path):
        self.path = path
        self.data = {"command": command}
        self.start = time.perf_counter()

    def write(self):
        self.data["timing_seconds"] = round(time.perf_counter() - self.start, 6)
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                json.dump(self.data, fh, indent=2, sort_keys=True)
                fh.write("\n")


def _describe_triple(pes1, pes2, t):
    c1, f, c2 = t if len(t) == 3 else (t[0], None, t[1])
    out = {"left": _names(pes1, c1), "right": _names(pes2, c2)}
    if f is not None:
        out["iso"] = [[pes1.names[a], pes2.names[b]] for a, b in f]
    return out


def _describe_move(pes1, pes2, side, move):
    if side == "prefix":
        return {"prefix": _describe_triple(pes1, pes2, move)}
    pes = pes1 if side == "left" else pes2
    if len(move) == 3:  # flat move: (key, X, C')
        return {"events": _names(pes, move[1]), "target": _names(pes, move[2])}
    return {"events": [pes.names[move[0]]], "target": _names(pes, move[1])}


def _trace_json(verdict, pes1, pes2):
    steps = []
    for st in verdict.trace:
        answer = st["answer"]
        other = pes2 if st["side"] == "left" else pes1
        steps.append({
            "position": _describe_triple(pes1, pes2, st["position"]),
            "attacker": st["side"],
            "move": _describe_move(pes1, pes2, st["side"], st["move"]),
            "answer": None if answer is None else
            {"events": _names(other, answer[0] if isinstance(answer[0], frozenset) else [answer[0]]),
             "target": _names(other, answer[1])},
        })
    return steps


def cmd_validate(args, report):
    pes = load_pes(args.pes)
    print(f"{pes.name}: valid PES with {len(pes)} events "
          f"({len(pes.visible_events)} visible, {len(pes.tau_events)} silent)")
    report.data.update(verdict="valid", events=len(pes))
    return 0


def cmd_configs(args, report):
    pes = load_pes(args.pes)
    configs = enumerate_configurations(pes)
    for c in configs:
        print(_config_text(pes, c))
    report.data.update(verdict="ok", configurations=[_names(pes, c) for c in configs])
    return 0


def cmd_graph(args, report):
    pes = load_pes(args.pes)
    g = build_configuration_graph(pes)
    idx = {c: i for i, c in enumerate(g.nodes)}
    doc = {
        "pes": pes.name,
        "nodes": [_names(pes, c) for c in g.nodes],
        "strong_edges": [[idx[c], pes.names[e], idx[d]] for c, e, d in g.strong_edges],
        "weak_pomset_edges": [[idx[c], _names(pes, p.carrier), idx[d]]
                              for c, p, d in g.weak_pomset_edges],
        "weak_step_edges": [[idx[c], _names(pes, p.carrier), idx[d]]
                            for c, p, d in g.weak_step_edges],
    }
    text = json.dumps(doc, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {len(g.nodes)} nodes to {args.out}")
    else:
        print(text)
    report.data.update(verdict="ok", nodes=len(g.nodes))
    return 0


def _run_check(args, report, want_certificate):
    kind = EquivalenceKind.parse(args.relation)
    left, right = load_pes(args.left), load_pes(args.right)
    verdict = check(kind, left, right, certificate=want_certificate)
    report.data.update(relation=str(kind), left=left.name, right=right.name,
                       verdict="equivalent" if verdict.equivalent else "inequivalent")
    if verdict.equivalent:
        print(f"{left.name} and {right.name} are {kind} equivalent")
        report.data["witness_size"] = len(verdict.witness)
        report.data["witness"] = sorted((_describe_triple(left, right, t) for t in verdict.witness),
                                        key=json.dumps)
        return 0, verdict, left, right
    print(f"{left.name} and {right.name} are NOT {kind} equivalent")
    report.data["trace"] = _trace_json(verdict, left, right)
    if want_certificate:
        if verdict.certificate is not None:
            side = left.name if verdict.satisfied_by == "left" else right.name
            print(f"certificate (holds on {side} only): {format_formula(verdict.certificate)}")
            report.data["certificate"] = {"formula": format_formula(verdict.certificate),
                                          "satisfied_by": verdict.satisfied_by}
        else:
            print("certificate: refutation game trace only")
            report.data["certificate"] = None
        for st in report.data["trace"]:
            print(f"  {st['attacker']} plays {st['move']} at {st['position']}")
    return 1, verdict, left, right


def cmd_check(args, report):
    return _run_check(args, report, args.certificate)[0]


def cmd_distinguish(args, report):
    code, verdict, left, right = _run_check(args, report, True)
    return code


def _parse_env(pes, text):
    eta = {}
    if not text:
        return eta
    for item in text.split(","):
        var, sep, ev = item.partition("=")
        if not sep:
            raise WTCError(f"bad environment entry {item!r}; expected x=e")
        eta[var.strip()] = pes.index(ev.strip())
    return eta


def _parse_config(pes, text):
    if not text:
        return frozenset()
    return frozenset(pes.index(t.strip()) for t in text.split(",") if t.strip())


def cmd_mc(args, report):
    pes = load_pes(args.pes)
    if args.formula is not None:
        text = args.formula
    else:
        with open(args.formula_file, encoding="utf-8") as fh:
            text = fh.read()
    phi = parse_formula(text)
    config = _parse_config(pes, args.config)
    eta = _parse_env(pes, args.env)
    ok = satisfies(pes, config, eta, phi)
    where = _config_text(pes, config)
    print(f"{pes.name}, {where} {'satisfies' if ok else 'does not satisfy'} {format_formula(phi)}")
    report.data.update(verdict="satisfied" if ok else "unsatisfied",
                       formula=format_formula(phi), config=_names(pes, config))
    return 0 if ok else 1


def cmd_term(args, report):
    pes = compile_term(args.term, name=args.name or "")
    text = format_pes(pes)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {len(pes)} events to {args.out}")
    else:
        print(text, end="")
    report.data.update(verdict="ok", events=len(pes))
    return 0


def cmd_sweep(args, report):
    from .suites import SUITES, run_suite
    from .sweep import SweepSpec
    if args.suite not in SUITES:
        raise WTCError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}")
    spec = SweepSpec(args.max_events, tuple(a for a in args.alphabet.split(",") if a),
                     args.max_tau)
    result = run_suite(args.suite, spec)
    print(f"suite {args.suite}: {result['structures']} structures, {result['cases']} cases, "
          f"{len(result['failures'])} failures")
    for fail in result["failures"][:10]:
        print(f"  failure: {fail}")
    report.data.update(verdict="pass" if not result["failures"] else "fail", **result)
    return 0 if not result["failures"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wtc", description=__doc__.splitlines()[0])
    p.add_argument("--report", metavar="FILE", help="write a JSON machine report to FILE")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="parse and validate a PES file")
    s.add_argument("pes")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("configs", help="list all configurations")
    s.add_argument("pes")
    s.set_defaults(func=cmd_configs)

    s = sub.add_parser("graph", help="export the configuration graph as JSON")
    s.add_argument("pes")
    s.add_argument("--out")
    s.set_defaults(func=cmd_graph)

    for name, func, help_ in (("check", cmd_check, "decide an equivalence"),
                              ("distinguish", cmd_distinguish,
                               "decide an equivalence and print a distinguishing formula")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--relation", required=True, choices=RELATIONS)
        s.add_argument("left")
        s.add_argument("right")
        if name == "check":
            s.add_argument("--certificate", action="store_true",
                           help="print a distinguishing formula when inequivalent")
        s.set_defaults(func=func)

    s = sub.add_parser("mc", help="model-check a formula")
    s.add_argument("pes")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--formula")
    g.add_argument("--formula-file")
    s.add_argument("--config", help="comma-separated event ids (default: empty configuration)")
    s.add_argument("--env", help="variable bindings x=e1,y=e2")
    s.set_defaults(func=cmd_mc)

    s = sub.add_parser("term", help="compile a process term to a PES file")
    s.add_argument("term")
    s.add_argument("--out")
    s.add_argument("--name")
    s.set_defaults(func=cmd_term)

    s = sub.add_parser("sweep", help="run a property suite over all small PESs")
    s.add_argument("--max-events", type=int, required=True)
    s.add_argument("--alphabet", default="a,b")
    s.add_argument("--max-tau", type=int, default=1)
    s.add_argument("--suite", required=True)
    s.set_defaults(func=cmd_sweep)
    return p


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    report = _Report(args.command, args.report)
    try:
        code = args.func(args, report)
    except (WTCError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        report.data.update(verdict="error", error=str(exc))
        code = 2
    report.data["exit_code"] = code
    report.write()
    return code


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
