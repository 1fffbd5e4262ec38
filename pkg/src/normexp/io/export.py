"""DOT and JSON renderings of theories, frameworks and reports."""

from __future__ import annotations

from ..argumentation import Framework, JustificationResult, aliases
from ..core import DefeasibleTheory, DependencyGraph
from ..engine import Extension


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def framework_dot(fw: Framework, names: dict[str, str] | None = None) -> str:
    names = names or aliases(fw, fw.theory.fact_order)
    order = sorted(fw.arguments, key=lambda a: int(names[a][1:]) if names[a][1:].isdigit() else 0)
    lines = ["digraph framework {", "  node [shape=box];"]
    for a in order:
        arg = fw[a]
        lines.append(f"  {_q(names[a])} [label={_q(f'{names[a]}: {arg.conclusion}')}, tooltip={_q(a)}];")
    for x, y in sorted(fw.attacks, key=lambda e: (order.index(e[0]), order.index(e[1]))):
        lines.append(f"  {_q(names[x])} -> {_q(names[y])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dependency_dot(graph: DependencyGraph) -> str:
    lines = ["digraph dependencies {"]
    for v in sorted(graph.vertices):
        lines.append(f"  {_q(v)};")
    for n, m in sorted(graph.edges):
        lines.append(f"  {_q(n)} -> {_q(m)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(obj) -> str:
    if isinstance(obj, Framework):
        return framework_dot(obj)
    if isinstance(obj, DependencyGraph):
        return dependency_dot(obj)
    raise TypeError(f"cannot export {type(obj).__name__} as DOT")


def _lits(xs) -> list[str]:
    return [str(l) for l in sorted(xs)]


def extension_dict(ext: Extension) -> dict:
    return {"+D": _lits(ext.plus_delta), "-D": _lits(ext.minus_delta),
            "+d": _lits(ext.plus_partial), "-d": _lits(ext.minus_partial)}


def framework_dict(fw: Framework, names: dict[str, str] | None = None) -> dict:
    names = names or aliases(fw, fw.theory.fact_order)
    return {
        "arguments": [
            {"id": a.id, "alias": names[a.id], "conclusion": str(a.conclusion),
             "top_rule": a.top_rule, "subarguments": [c.id for c in a.subarguments]}
            for a in sorted(fw, key=lambda a: int(names[a.id][1:]))],
        "attacks": [[x, y] for x, y in sorted(fw.attacks)],
        "attack_mode": fw.mode.value,
    }


def justification_dict(res: JustificationResult) -> dict:
    return {"justified": sorted(res.justified), "rejected": sorted(res.rejected),
            "justified_conclusions": _lits(res.justified_conclusions)}


def theory_dict(t: DefeasibleTheory) -> dict:
    return {
        "facts": _lits(t.facts),
        "rules": [{"label": r.label, "kind": r.kind.value, "antecedents": _lits(r.antecedents),
                   "consequent": str(r.consequent)} for r in t.sorted_rules],
        "superiority": [list(p) for p in sorted(t.superiority)],
    }
