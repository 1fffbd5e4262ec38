"""Defeasible Logic proof theory: ±Δ, ±∂ and D-extensions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .core import (ArgumentationTheory, DefeasibleTheory, Literal, Rule, RuleKind,
                   validate_argumentation_theory)

_KIND_CODE = {RuleKind.STRICT: 0, RuleKind.DEFEASIBLE: 1, RuleKind.DEFEATER: 2}


@dataclass(frozen=True)
class Extension:
    plus_delta: frozenset[Literal]
    minus_delta: frozenset[Literal]
    plus_partial: frozenset[Literal]
    minus_partial: frozenset[Literal]

    def tag(self, lit: Literal) -> str:
        """Compact tag summary such as ``+D +d`` (empty when untagged)."""
        tags = []
        if lit in self.plus_delta:
            tags.append("+D")
        if lit in self.minus_delta:
            tags.append("-D")
        if lit in self.plus_partial:
            tags.append("+d")
        if lit in self.minus_partial:
            tags.append("-d")
        return " ".join(tags)


class LiteralIndex:
    """Dense indices for every literal over the theory's atoms (both polarities)."""

    def __init__(self, atoms: Iterable[str]):
        self.atoms = sorted(atoms)
        self.literals: list[Literal] = []
        for a in self.atoms:
            self.literals.append(Literal(a, True))
            self.literals.append(Literal(a, False))
        self.pos = {l: i for i, l in enumerate(self.literals)}

    def __len__(self) -> int:
        return len(self.literals)

    def __getitem__(self, lit: Literal) -> int:
        return self.pos[lit]


def _definite_mask(theory: DefeasibleTheory, index: LiteralIndex) -> np.ndarray:
    """+Δ as a mask: facts closed under strict rules."""
    proved = np.zeros(len(index), dtype=np.uint8)
    strict = theory.strict_rules
    missing = [len(r.antecedents) for r in strict]
    uses: dict[Literal, list[int]] = {}
    for i, r in enumerate(strict):
        for a in r.antecedents:
            uses.setdefault(a, []).append(i)
    stack = list(theory.facts) + [r.consequent for i, r in enumerate(strict) if missing[i] == 0]
    while stack:
        lit = stack.pop()
        k = index[lit]
        if proved[k]:
            continue
        proved[k] = 1
        for i in uses.get(lit, ()):
            missing[i] -= 1
            if missing[i] == 0:
                stack.append(strict[i].consequent)
    return proved


def compute_definite(theory: DefeasibleTheory) -> tuple[frozenset[Literal], frozenset[Literal]]:
    """(+Δ, −Δ) restricted to the literals occurring in the theory."""
    index = LiteralIndex(theory.atoms)
    proved = _definite_mask(theory, index)
    occurring = theory.literals
    plus = frozenset(l for l in occurring if proved[index[l]])
    return plus, frozenset(occurring - plus)


def _encode(theory: DefeasibleTheory, index: LiteralIndex):
    rules: tuple[Rule, ...] = theory.sorted_rules
    pos = {r.label: i for i, r in enumerate(rules)}
    heads = np.array([index[r.consequent] for r in rules], dtype=np.int32)
    kinds = np.array([_KIND_CODE[r.kind] for r in rules], dtype=np.int32)
    ant_ptr = np.zeros(len(rules) + 1, dtype=np.int32)
    ant_idx: list[int] = []
    for i, r in enumerate(rules):
        ant_idx.extend(index[a] for a in sorted(r.antecedents))
        ant_ptr[i + 1] = len(ant_idx)
    beaters: list[list[int]] = [[] for _ in rules]
    for stronger, weaker in theory.superiority:
        if stronger in pos and weaker in pos:
            beaters[pos[weaker]].append(pos[stronger])
    beat_ptr = np.zeros(len(rules) + 1, dtype=np.int32)
    beat_idx: list[int] = []
    for i, b in enumerate(beaters):
        beat_idx.extend(sorted(b))
        beat_ptr[i + 1] = len(beat_idx)
    return (heads, kinds, ant_ptr, np.array(ant_idx, dtype=np.int32),
            beat_ptr, np.array(beat_idx, dtype=np.int32))


def compute_extension(theory: DefeasibleTheory, backend=None) -> Extension:
    """All four tag sets of ``theory``, each restricted to the literals occurring in it.

    ``backend`` selects a kernel module from :func:`normexp.kernels.backends`; by default
    the compiled one when available.
    """
    index = LiteralIndex(theory.atoms)
    plus_delta = _definite_mask(theory, index)
    fixpoint = backend.defeasible_fixpoint if backend is not None else kernels.defeasible_fixpoint
    plus, minus = fixpoint(len(index), plus_delta, *_encode(theory, index))
    occurring = theory.literals

    def pick(mask):
        return frozenset(l for l in occurring if mask[index[l]])

    pd = pick(plus_delta)
    return Extension(pd, frozenset(occurring - pd), pick(plus), pick(minus))


@dataclass(frozen=True)
class DExtensionSet:
    literals: frozenset[Literal]

    def __contains__(self, lit: Literal) -> bool:
        return lit in self.literals

    def __iter__(self):
        return iter(sorted(self.literals))

    def __len__(self) -> int:
        return len(self.literals)


def d_extension(theory: ArgumentationTheory) -> DExtensionSet:
    """The D-extension of an argumentation theory.

    A literal of the theory is included iff it is justified (+∂). The complement of an
    unjustified literal is included when that complement does not itself occur in the
    theory; when both a literal and its complement occur and neither is justified,
    neither is included.
    """
    theory = validate_argumentation_theory(theory)
    justified = compute_extension(theory).plus_partial
    occurring = theory.literals
    out = set(l for l in occurring if l in justified)
    for l in occurring:
        if l not in justified and ~l not in occurring:
            out.add(~l)
    return DExtensionSet(frozenset(out))


def d_extension_of(rules: Iterable[Rule], superiority: Iterable[tuple[str, str]],
                   facts: Iterable[Literal]) -> DExtensionSet:
    """D-extension of the fact set ``facts`` under the rule theory (rules, superiority)."""
    return d_extension(ArgumentationTheory(frozenset(facts), frozenset(rules), frozenset(superiority)))
