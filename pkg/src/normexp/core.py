"""Literals, rules, theories and the atom dependency graph."""

from __future__ import annotations

import enum
import graphlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator


@dataclass(frozen=True)
class Literal:
    atom: str
    positive: bool = True

    def __invert__(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def __lt__(self, other: "Literal") -> bool:
        return (self.atom, not self.positive) < (other.atom, not other.positive)

    def __str__(self) -> str:
        return self.atom if self.positive else "-" + self.atom

    def __repr__(self) -> str:
        return f"Literal({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Literal":
        """Read ``p``, ``-p`` or ``~p``."""
        text = text.strip()
        if text[:1] in ("-", "~"):
            return cls(text[1:], False)
        return cls(text, True)


def complement(lit: Literal) -> Literal:
    return ~lit


def is_consistent(literals: Iterable[Literal]) -> bool:
    seen = set(literals)
    return not any(~l in seen for l in seen)


class RuleKind(enum.Enum):
    STRICT = "strict"
    DEFEASIBLE = "defeasible"
    DEFEATER = "defeater"

    @property
    def arrow(self) -> str:
        return _ARROWS[self]


_ARROWS = {RuleKind.STRICT: "->", RuleKind.DEFEASIBLE: "=>", RuleKind.DEFEATER: "~>"}


@dataclass(frozen=True)
class Rule:
    label: str
    antecedents: frozenset[Literal]
    consequent: Literal
    kind: RuleKind = RuleKind.DEFEASIBLE

    def __post_init__(self) -> None:
        if not isinstance(self.antecedents, frozenset):
            object.__setattr__(self, "antecedents", frozenset(self.antecedents))

    def __str__(self) -> str:
        body = ", ".join(str(a) for a in sorted(self.antecedents))
        return f"{self.label}: {body + ' ' if body else ''}{self.kind.arrow} {self.consequent}"


def rule(label: str, body: Iterable[str | Literal], head: str | Literal,
         kind: RuleKind = RuleKind.DEFEASIBLE) -> Rule:
    """Shorthand constructor accepting literal strings."""
    def lit(x):
        return x if isinstance(x, Literal) else Literal.parse(x)
    return Rule(label, frozenset(lit(b) for b in body), lit(head), kind)


@dataclass(frozen=True)
class DefeasibleTheory:
    """A tuple (facts, rules, superiority); superiority holds (stronger, weaker) label pairs."""

    facts: frozenset[Literal] = frozenset()
    rules: frozenset[Rule] = frozenset()
    superiority: frozenset[tuple[str, str]] = frozenset()
    # presentation hint only (source order of the facts); ignored by equality
    fact_order: tuple[Literal, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        for name in ("facts", "rules", "superiority"):
            value = getattr(self, name)
            if not isinstance(value, frozenset):
                object.__setattr__(self, name, frozenset(value))
        labels = [r.label for r in self.rules]
        if len(labels) != len(set(labels)):
            dup = sorted({l for l in labels if labels.count(l) > 1})
            raise ValueError(f"duplicate rule labels: {', '.join(dup)}")

    # -- accessors -------------------------------------------------------

    @cached_property
    def by_label(self) -> dict[str, Rule]:
        return {r.label: r for r in self.rules}

    @cached_property
    def sorted_rules(self) -> tuple[Rule, ...]:
        return tuple(sorted(self.rules, key=lambda r: r.label))

    @cached_property
    def _heads(self) -> dict[Literal, tuple[Rule, ...]]:
        out: dict[Literal, list[Rule]] = {}
        for r in self.sorted_rules:
            out.setdefault(r.consequent, []).append(r)
        return {k: tuple(v) for k, v in out.items()}

    def rules_for(self, lit: Literal) -> tuple[Rule, ...]:
        """R[l]: every rule concluding ``lit``."""
        return self._heads.get(lit, ())

    @property
    def strict_rules(self) -> tuple[Rule, ...]:
        return tuple(r for r in self.sorted_rules if r.kind is RuleKind.STRICT)

    @property
    def supportive_rules(self) -> tuple[Rule, ...]:
        """Strict and defeasible rules (no defeaters)."""
        return tuple(r for r in self.sorted_rules if r.kind is not RuleKind.DEFEATER)

    def superior(self, stronger: str, weaker: str) -> bool:
        return (stronger, weaker) in self.superiority

    @cached_property
    def literals(self) -> frozenset[Literal]:
        """Lit(D): exactly the literals occurring in facts and rules."""
        out = set(self.facts)
        for r in self.rules:
            out.update(r.antecedents)
            out.add(r.consequent)
        return frozenset(out)

    @cached_property
    def atoms(self) -> frozenset[str]:
        return frozenset(l.atom for l in self.literals)

    def superiority_closure(self) -> frozenset[tuple[str, str]]:
        succ: dict[str, set[str]] = {}
        for a, b in self.superiority:
            succ.setdefault(a, set()).add(b)
        closure = set()
        for start in succ:
            stack = list(succ[start])
            seen: set[str] = set()
            while stack:
                n = stack.pop()
                if n in seen:
                    continue
                seen.add(n)
                closure.add((start, n))
                stack.extend(succ.get(n, ()))
        return frozenset(closure)

    def with_facts(self, facts: Iterable[Literal]) -> "DefeasibleTheory":
        return DefeasibleTheory(frozenset(facts), self.rules, self.superiority)


# -- argumentation theories ------------------------------------------------


class ViolationKind(enum.Enum):
    INCONSISTENT_FACTS = "InconsistentFacts"
    FACT_CONCLUDED_BY_RULE = "FactConcludedByRule"
    NON_DEFEASIBLE_RULE = "NonDefeasibleRule"
    DANGLING_SUPERIORITY = "DanglingSuperiority"


@dataclass(frozen=True, order=True)
class Violation:
    kind: ViolationKind = field(compare=False)
    subject: str
    message: str = field(compare=False)

    def __str__(self) -> str:
        return f"{self.kind.value}: {self.message}"


class InvalidTheory(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


def find_violations(theory: DefeasibleTheory) -> list[Violation]:
    """Every reason ``theory`` is not an argumentation theory."""
    out: list[Violation] = []
    for f in sorted(theory.facts):
        if f.positive and ~f in theory.facts:
            out.append(Violation(ViolationKind.INCONSISTENT_FACTS, str(f),
                                 f"facts contain both {f} and {~f}"))
    for f in sorted(theory.facts):
        for r in theory.rules_for(f) + theory.rules_for(~f):
            out.append(Violation(ViolationKind.FACT_CONCLUDED_BY_RULE, r.label,
                                 f"rule {r.label} concludes {r.consequent} but {f} is a fact"))
    for r in theory.sorted_rules:
        if r.kind is not RuleKind.DEFEASIBLE:
            out.append(Violation(ViolationKind.NON_DEFEASIBLE_RULE, r.label,
                                 f"rule {r.label} is {r.kind.value}"))
    for a, b in sorted(theory.superiority):
        missing = [x for x in (a, b) if x not in theory.by_label]
        if missing:
            out.append(Violation(ViolationKind.DANGLING_SUPERIORITY, f"{a}>{b}",
                                 f"superiority {a} > {b} names unknown rule(s) {', '.join(missing)}"))
    return out


@dataclass(frozen=True)
class ArgumentationTheory(DefeasibleTheory):
    """A defeasible theory with consistent facts, defeasible rules only, and no rule
    concluding a fact or its complement."""

    def __post_init__(self) -> None:
        super().__post_init__()
        violations = find_violations(self)
        if violations:
            raise InvalidTheory(violations)

    def with_facts(self, facts: Iterable[Literal]) -> "ArgumentationTheory":
        return ArgumentationTheory(frozenset(facts), self.rules, self.superiority)


def validate_argumentation_theory(theory: DefeasibleTheory) -> ArgumentationTheory:
    """Return ``theory`` as an ArgumentationTheory or raise InvalidTheory listing all violations."""
    if isinstance(theory, ArgumentationTheory):
        return theory
    return ArgumentationTheory(theory.facts, theory.rules, theory.superiority, theory.fact_order)


# -- dependency graph ------------------------------------------------------


@dataclass(frozen=True)
class DependencyGraph:
    vertices: frozenset[str]
    edges: frozenset[tuple[str, str]]

    def successors(self, v: str) -> Iterator[str]:
        return (m for n, m in self.edges if n == v)

    def is_acyclic(self) -> bool:
        ts = graphlib.TopologicalSorter({v: set() for v in self.vertices})
        for n, m in self.edges:
            ts.add(m, n)
        try:
            ts.prepare()
        except graphlib.CycleError:
            return False
        return True


def dependency_graph(theory: DefeasibleTheory) -> DependencyGraph:
    """Edge (n, m) iff n has a rule for n or its complement, and some rule for m or its
    complement has n or its complement in its antecedent."""
    vertices = frozenset(theory.atoms)
    derived = {r.consequent.atom for r in theory.rules}
    edges = set()
    for r in theory.rules:
        for a in r.antecedents:
            if a.atom in derived:
                edges.add((a.atom, r.consequent.atom))
    return DependencyGraph(vertices, frozenset(edges))


def superiority_is_acyclic(theory: DefeasibleTheory) -> bool:
    return all(a != b for a, b in theory.superiority_closure())


def is_acyclic_setup(theory: DefeasibleTheory) -> bool:
    return superiority_is_acyclic(theory) and dependency_graph(theory).is_acyclic()


class CyclicSetup(ValueError):
    """The superiority relation or the dependency graph has a cycle."""


def require_acyclic(theory: DefeasibleTheory) -> None:
    if not superiority_is_acyclic(theory):
        raise CyclicSetup("transitive closure of the superiority relation has a cycle")
    if not dependency_graph(theory).is_acyclic():
        raise CyclicSetup("dependency graph has a cycle")
