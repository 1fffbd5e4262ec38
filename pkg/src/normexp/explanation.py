"""Minimal explanations for a conclusion, and whether they survive added facts.

An explanation for ``phi`` is a ⊆-minimal set of justified arguments containing some
justified argument ``A`` for ``phi`` such that ``A`` is acceptable with respect to the set.
In ``closed`` mode the set must also contain every subargument of ``A`` and defend each of
its members, so it carries the whole derivation from the facts.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .argumentation import AttackMode, Framework
from .core import ArgumentationTheory, Literal, Rule, is_consistent


class NotAnExplanation(ValueError):
    pass


class ExplanationMode(enum.Enum):
    LITERAL = "literal"
    CLOSED = "closed"

    @classmethod
    def parse(cls, text: "str | ExplanationMode") -> "ExplanationMode":
        if isinstance(text, ExplanationMode):
            return text
        if text == "support-closed":
            return cls.CLOSED
        return cls(text)


@dataclass(frozen=True)
class Explanation:
    target: Literal
    argument_ids: frozenset[str]
    mode: ExplanationMode = ExplanationMode.CLOSED

    def __iter__(self):
        return iter(sorted(self.argument_ids))

    def __len__(self) -> int:
        return len(self.argument_ids)


@dataclass(frozen=True)
class FactUniverse:
    """Literals that may be added as facts: used in some rule body, concluded by none."""

    literals: frozenset[Literal]

    def __contains__(self, lit: Literal) -> bool:
        return lit in self.literals

    def __iter__(self):
        return iter(sorted(self.literals))

    def __len__(self) -> int:
        return len(self.literals)

    @property
    def atoms(self) -> list[str]:
        return sorted({l.atom for l in self.literals})


def literal_universe(rules: Iterable[Rule]) -> FactUniverse:
    rules = list(rules)
    concluded = {r.consequent.atom for r in rules}
    used = {a.atom for r in rules for a in r.antecedents}
    atoms = used - concluded
    return FactUniverse(frozenset(Literal(a, pol) for a in atoms for pol in (True, False)))


def enumerate_fact_supersets(facts: Iterable[Literal], universe: FactUniverse) -> Iterator[frozenset[Literal]]:
    """Every consistent ``F ∪ X`` with ``X`` drawn from the universe, each exactly once.

    Ordered by the number of added literals, then lexicographically by the sorted added
    literals (``p`` before ``-p``).
    """
    base = frozenset(facts)
    if not is_consistent(base):
        raise ValueError("fact set is inconsistent")
    fixed = {l.atom for l in base}
    free = [a for a in universe.atoms if a not in fixed]
    for k in range(len(free) + 1):
        picks = []
        for atoms in itertools.combinations(free, k):
            for signs in itertools.product((True, False), repeat=k):
                picks.append(tuple(Literal(a, s) for a, s in zip(atoms, signs)))
        picks.sort()
        for added in picks:
            yield base | frozenset(added)


# -- search ---------------------------------------------------------------


def _minimal(sets: Iterable[frozenset[str]]) -> list[frozenset[str]]:
    ordered = sorted(set(sets), key=lambda s: (len(s), sorted(s)))
    kept: list[frozenset[str]] = []
    for s in ordered:
        if not any(k <= s for k in kept):
            kept.append(s)
    return kept


def _search(fw: Framework, target: Literal, mode: ExplanationMode,
            pool: frozenset[str]) -> list[frozenset[str]]:
    """Minimal sets within ``pool`` that explain ``target`` in ``fw``."""
    closed = mode is ExplanationMode.CLOSED
    candidates = sorted(a.id for a in fw.by_conclusion.get(target, ()) if a.id in pool)
    found: list[frozenset[str]] = []
    seen: set[tuple[str, frozenset[str]]] = set()

    def pending(root: str, s: frozenset[str]):
        members = sorted(s) if closed else [root]
        for m in members:
            for b, x in fw.threats(m):
                if not fw.answered(b, x, s):
                    return b, x
        return None

    def dfs(root: str, s: frozenset[str]) -> None:
        if (root, s) in seen or any(f <= s for f in found):
            return
        seen.add((root, s))
        todo = pending(root, s)
        if todo is None:
            found.append(s)
            return
        for option in fw.answer_options(*todo):
            if option <= pool:
                dfs(root, s | option)

    for root in candidates:
        start = frozenset(x.id for x in fw[root].sub) if closed else frozenset({root})
        if start <= pool:
            dfs(root, start)
    return _minimal(found)


def _framework(theory: ArgumentationTheory, attack: AttackMode | str) -> Framework:
    return Framework(theory, attack)


def explanation_sets(fw: Framework, target: Literal,
                     mode: ExplanationMode | str = ExplanationMode.CLOSED) -> list[frozenset[str]]:
    mode = ExplanationMode.parse(mode)
    return _search(fw, target, mode, fw.justification.justified)


def find_explanations(theory: ArgumentationTheory, target: Literal,
                      mode: ExplanationMode | str = ExplanationMode.CLOSED,
                      attack: AttackMode | str = AttackMode.DEFEAT,
                      framework: Framework | None = None) -> list[Explanation]:
    """All minimal explanations for ``target``; empty iff it has no justified argument."""
    mode = ExplanationMode.parse(mode)
    fw = framework or _framework(theory, attack)
    return [Explanation(target, s, mode) for s in explanation_sets(fw, target, mode)]


def is_explanation(fw: Framework, e: Explanation) -> bool:
    """Whether ``e`` is one of the minimal explanations of its target in ``fw``.

    Only subsets of ``e`` can undercut its minimality, so the search is confined to ``e``.
    """
    ids = e.argument_ids
    if not ids <= fw.justification.justified:
        return False
    return _search(fw, e.target, e.mode, ids) == [ids]


def is_explanation_naive(fw: Framework, e: Explanation) -> bool:
    return e.argument_ids in explanation_sets(fw, e.target, e.mode)


# -- stability ------------------------------------------------------------


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    checked_supersets: int
    counterexample: frozenset[Literal] | None = None

    def to_dict(self, e: Explanation) -> dict:
        return {
            "target": str(e.target),
            "explanation": sorted(e.argument_ids),
            "mode": e.mode.value,
            "stable": self.stable,
            "supersets_checked": self.checked_supersets,
            "counterexample": (None if self.counterexample is None
                               else [str(l) for l in sorted(self.counterexample)]),
        }

    def to_json(self, e: Explanation) -> str:
        return json.dumps(self.to_dict(e), indent=2)


def is_stable(theory: ArgumentationTheory, e: Explanation,
              attack: AttackMode | str = AttackMode.DEFEAT, naive: bool = False) -> StabilityReport:
    """Check ``e`` against every consistent enlargement of the facts within Lit(R).

    Stops at the first enlargement where ``e`` is no longer an explanation and reports it.
    ``naive`` recomputes every explanation from scratch instead of testing ``e`` directly.
    """
    check = is_explanation_naive if naive else is_explanation
    if not check(_framework(theory, attack), e):
        raise NotAnExplanation(f"{sorted(e.argument_ids)} does not explain {e.target}")
    universe = literal_universe(theory.rules)
    count = 0
    for facts in enumerate_fact_supersets(theory.facts, universe):
        count += 1
        if facts == theory.facts:
            continue
        fw = _framework(theory.with_facts(facts), attack)
        if not check(fw, e):
            return StabilityReport(False, count, facts)
    return StabilityReport(True, count, None)
