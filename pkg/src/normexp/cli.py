"""Command-line interface.

Exit status: 0 on success, 1 when the input is well formed but the request cannot be
honoured (cyclic setup, no explanation, world cap, ...), 2 on unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

from . import __version__
from .argumentation import AttackMode, CyclicDependencies, Framework, aliases
from .core import (CyclicSetup, InvalidTheory, Literal, find_violations, is_acyclic_setup,
                   validate_argumentation_theory, dependency_graph)
from .engine import compute_extension, d_extension
from .explanation import ExplanationMode, NotAnExplanation, find_explanations, is_stable
from .generate import random_acyclic_theory, random_theory
from .io import export
from .io.syntax import parse_theory, serialize_theory
from .semantics import (DEFAULT_WORLD_CAP, EmptyExtension, InconsistentFPlus, UnknownWorld,
                        WorldCapExceeded, build_d_model, explanation_submodel, parse_formula,
                        semantic_stability_check)

COMMANDS = ("validate", "extension", "arguments", "justify", "explain", "stable", "model",
            "eval", "submodel", "stable-sem", "gen")
_NEG_LITERAL = re.compile(r"-[A-Za-z][A-Za-z0-9_]*")


class Refusal(Exception):
    """Exit 1: well-formed input, but the request cannot be carried out."""


class InputError(Exception):
    """Exit 2: unreadable or invalid input."""


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    target: Literal | None = None
    formula: str | None = None
    world: str | None = None
    mode: ExplanationMode = ExplanationMode.CLOSED
    attack_mode: AttackMode = AttackMode.DEFEAT
    output: str = "text"
    output_path: str | None = None
    world_cap: int = DEFAULT_WORLD_CAP
    seed: int | None = None
    naive: bool = False
    atoms: int = 6
    rules: int = 10
    general: bool = False


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="normexp", description="Defeasible theories, argumentation, "
                                "explanations and neighbourhood models.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, target=False):
        sp.add_argument("input", help="theory file (.dfl)")
        if target:
            sp.add_argument("target", help="target literal, e.g. p or -p")
        sp.add_argument("--attack", choices=[m.value for m in AttackMode], default="defeat")
        sp.add_argument("--mode", choices=["literal", "closed"], default="closed")
        sp.add_argument("--world-cap", type=int, default=DEFAULT_WORLD_CAP)
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_const", dest="output", const="json")
        fmt.add_argument("--dot", action="store_const", dest="output", const="dot")
        sp.add_argument("--output", dest="output_path", metavar="PATH")
        sp.set_defaults(output="text")

    for name in ("validate", "extension", "arguments", "justify", "model"):
        common(sub.add_parser(name))
    for name in ("explain", "stable", "submodel", "stable-sem"):
        sp = sub.add_parser(name)
        common(sp, target=True)
        if name == "stable":
            sp.add_argument("--naive", action="store_true",
                            help="recompute all explanations for every fact superset")
    ev = sub.add_parser("eval")
    common(ev)
    ev.add_argument("formula", nargs="+", help="OBL lit | PERM lit | lit, optionally prefixed by NOT")
    ev.add_argument("--world", help="comma-separated literals; defaults to all of E(D)")
    gen = sub.add_parser("gen")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--atoms", type=int, default=6)
    gen.add_argument("--rules", type=int, default=10)
    gen.add_argument("--general", action="store_true",
                     help="any syntactically valid theory instead of an acyclic argumentation theory")
    gen.add_argument("--output", dest="output_path", metavar="PATH")
    gen.set_defaults(output="text")
    return p


def _shield_literals(argv: list[str]) -> list[str]:
    # "-p" would otherwise be read as an option
    return ["~" + a[1:] if _NEG_LITERAL.fullmatch(a) and a != "-h" else a for a in argv]


def parse_args(argv: list[str]) -> RunConfig:
    ns = _parser().parse_args(_shield_literals(argv))
    cfg = RunConfig(ns.command, output=ns.output, output_path=ns.output_path)
    if ns.command == "gen":
        cfg.seed, cfg.atoms, cfg.rules, cfg.general = ns.seed, ns.atoms, ns.rules, ns.general
        return cfg
    cfg.input_path = ns.input
    cfg.attack_mode = AttackMode.parse(ns.attack)
    cfg.mode = ExplanationMode.parse(ns.mode)
    cfg.world_cap = ns.world_cap
    if getattr(ns, "target", None) is not None:
        cfg.target = Literal.parse(ns.target)
    if ns.command == "eval":
        cfg.formula = " ".join(ns.formula)
        cfg.world = ns.world
    cfg.naive = getattr(ns, "naive", False)
    return cfg


# -- helpers ----------------------------------------------------------------


def _load(cfg: RunConfig):
    try:
        with open(cfg.input_path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {cfg.input_path}: {exc.strerror}") from None
    theory, errors = parse_theory(text)
    if errors:
        raise InputError("\n".join(f"{cfg.input_path}:{e}" for e in errors))
    return theory


def _arg_theory(cfg: RunConfig):
    theory = _load(cfg)
    try:
        return validate_argumentation_theory(theory)
    except InvalidTheory as exc:
        raise InputError("\n".join(str(v) for v in exc.violations)) from None


def _framework(cfg: RunConfig):
    t = _arg_theory(cfg)
    return t, Framework(t, cfg.attack_mode)


def _first_explanation(cfg: RunConfig, t, fw):
    found = find_explanations(t, cfg.target, cfg.mode, framework=fw)
    if not found:
        raise Refusal(f"{cfg.target} has no explanation (it is not justified)")
    return found[0]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _lits(xs) -> str:
    return "{" + ", ".join(str(l) for l in sorted(xs)) + "}"


# -- commands ---------------------------------------------------------------------


def cmd_validate(cfg: RunConfig) -> str:
    theory = _load(cfg)
    violations = find_violations(theory)
    if violations:
        raise InputError("\n".join(str(v) for v in violations))
    acyclic = is_acyclic_setup(theory)
    if cfg.output == "json":
        return _dump({"valid": True, "violations": [], "acyclic": acyclic})
    if cfg.output == "dot":
        return export.dependency_dot(dependency_graph(theory))
    note = "" if acyclic else " (superiority or dependency graph is cyclic)"
    return f"valid argumentation theory: {len(theory.facts)} facts, {len(theory.rules)} rules{note}\n"


def cmd_extension(cfg: RunConfig) -> str:
    theory = _load(cfg)
    ext = compute_extension(theory)
    out = export.extension_dict(ext)
    if not find_violations(theory):
        out["E(D)"] = [str(l) for l in d_extension(theory)]
    if cfg.output == "json":
        return _dump(out)
    return "".join(f"{k:>5}: {{{', '.join(v)}}}\n" for k, v in out.items())


def cmd_arguments(cfg: RunConfig) -> str:
    t, fw = _framework(cfg)
    names = aliases(fw, t.fact_order)
    if cfg.output == "dot":
        return export.framework_dot(fw, names)
    if cfg.output == "json":
        return _dump(export.framework_dict(fw, names))
    lines = []
    for a in sorted(fw, key=lambda a: int(names[a.id][1:])):
        lines.append(f"{names[a.id]:>4}  {a.id}  concludes {a.conclusion}")
    lines.append("attacks: " + (", ".join(f"{names[x]} -> {names[y]}" for x, y in sorted(fw.attacks)) or "none"))
    return "\n".join(lines) + "\n"


def cmd_justify(cfg: RunConfig) -> str:
    t, fw = _framework(cfg)
    res = fw.justification
    if cfg.output == "json":
        return _dump(export.justification_dict(res))
    names = aliases(fw, t.fact_order)

    def show(ids):
        return ", ".join(f"{names[i]} {i}" for i in sorted(ids, key=lambda i: int(names[i][1:]))) or "none"

    return (f"justified: {show(res.justified)}\nrejected: {show(res.rejected)}\n"
            f"justified conclusions: {_lits(res.justified_conclusions)}\n")


def cmd_explain(cfg: RunConfig) -> str:
    t, fw = _framework(cfg)
    names = aliases(fw, t.fact_order)
    found = find_explanations(t, cfg.target, cfg.mode, framework=fw)
    rows = [{"arguments": sorted(e.argument_ids),
             "aliases": sorted((names[i] for i in e.argument_ids), key=lambda s: int(s[1:]))}
            for e in found]
    if cfg.output == "json":
        return _dump({"target": str(cfg.target), "mode": cfg.mode.value, "explanations": rows})
    if not rows:
        return f"no explanation for {cfg.target}\n"
    return "".join("{" + ", ".join(r["aliases"]) + "}  " + ", ".join(r["arguments"]) + "\n" for r in rows)


def cmd_stable(cfg: RunConfig) -> str:
    t, fw = _framework(cfg)
    e = _first_explanation(cfg, t, fw)
    try:
        report = is_stable(t, e, cfg.attack_mode, naive=cfg.naive)
    except NotAnExplanation as exc:
        raise Refusal(str(exc)) from None
    if cfg.output == "json":
        return _dump(report.to_dict(e))
    lines = [f"explanation: {', '.join(sorted(e.argument_ids))}",
             f"stable: {str(report.stable).lower()}, supersets_checked: {report.checked_supersets}"]
    if report.counterexample is not None:
        lines.append(f"counterexample facts: {_lits(report.counterexample)}")
    return "\n".join(lines) + "\n"


def _model(cfg: RunConfig, t):
    try:
        return build_d_model(t, cfg.world_cap)
    except CyclicSetup as exc:
        raise Refusal(str(exc)) from None


def cmd_model(cfg: RunConfig) -> str:
    t = _arg_theory(cfg)
    m = _model(cfg, t)
    if cfg.output == "json":
        return _dump(m.to_dict())
    w = m.distinguished_mask
    lines = [f"E(D): {_lits(m.universe)}", f"worlds: {len(m)}",
             f"N(E(D)): {{{', '.join('||' + str(c) + '||' for c in m.fired_classes(w))}}}"]
    return "\n".join(lines) + "\n"


def cmd_eval(cfg: RunConfig) -> str:
    t = _arg_theory(cfg)
    m = _model(cfg, t)
    try:
        f = parse_formula(cfg.formula)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if cfg.world is None:
        mask = m.distinguished_mask
    else:
        lits = [Literal.parse(x) for x in cfg.world.split(",") if x.strip()]
        try:
            mask = m.mask_of(lits)
        except UnknownWorld as exc:
            raise InputError(str(exc.args[0])) from None
    value = m.eval(mask, f)
    size = bin(m.truth_set(f)).count("1")
    if cfg.output == "json":
        return _dump({"formula": str(f), "world": [str(l) for l in m.world(mask)],
                      "value": value, "truth_set_size": size})
    return f"{f} at {m.world(mask)}: {str(value).lower()} (true at {size} of {len(m)} worlds)\n"


def cmd_submodel(cfg: RunConfig) -> str:
    t, fw = _framework(cfg)
    e = _first_explanation(cfg, t, fw)
    sub = explanation_submodel(_model(cfg, t), e, fw)
    if cfg.output == "json":
        out = sub.to_dict()
        out["explanation"] = sorted(e.argument_ids)
        out["certified"] = sub.certified
        return _dump(out)
    lines = [f"explanation: {', '.join(sorted(e.argument_ids))}", f"worlds kept: {len(sub)}",
             f"generated-submodel condition: {'holds' if sub.certified else 'fails'}"]
    lines.extend(f"  {c}" for c in sub.certification[:10])
    return "\n".join(lines) + "\n"


def cmd_stable_sem(cfg: RunConfig) -> str:
    t, fw = _framework(cfg)
    e = _first_explanation(cfg, t, fw)
    try:
        res = semantic_stability_check(t, e, cfg.world_cap)
    except (InconsistentFPlus, CyclicSetup) as exc:
        raise Refusal(str(exc)) from None
    if cfg.output == "json":
        return _dump({"target": str(e.target), "explanation": sorted(e.argument_ids),
                      "explains_with_all_facts": res.explains_in_closure,
                      "submodels_equal": res.submodels_equal, "result": bool(res),
                      "closure_facts": [str(l) for l in sorted(res.closure.facts)]})
    return (f"explains with all facts: {str(res.explains_in_closure).lower()}\n"
            f"explanation submodels equal: {str(res.submodels_equal).lower()}\n"
            f"result: {str(bool(res)).lower()}\n")


def cmd_gen(cfg: RunConfig) -> str:
    if cfg.general:
        return serialize_theory(random_theory(cfg.seed, cfg.atoms, cfg.rules))
    return serialize_theory(random_acyclic_theory(cfg.seed, cfg.atoms, cfg.rules))


HANDLERS = {"validate": cmd_validate, "extension": cmd_extension, "arguments": cmd_arguments,
            "justify": cmd_justify, "explain": cmd_explain, "stable": cmd_stable,
            "model": cmd_model, "eval": cmd_eval, "submodel": cmd_submodel,
            "stable-sem": cmd_stable_sem, "gen": cmd_gen}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute ``cfg``; returns (exit status, rendered output). Diagnostics go to stderr."""
    try:
        out = HANDLERS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, ""
    except (Refusal, CyclicSetup, CyclicDependencies, WorldCapExceeded, EmptyExtension,
            InconsistentFPlus) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1, ""
    return 0, out


def main(argv: list[str] | None = None) -> int:
    cfg = parse_args(sys.argv[1:] if argv is None else argv)
    status, out = run(cfg)
    if status == 0:
        if cfg.output_path:
            with open(cfg.output_path, "w", encoding="utf-8") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)
    return status
