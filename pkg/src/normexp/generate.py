"""Seeded random theories for property tests and the ``gen`` command."""

from __future__ import annotations

import random
import string

from .core import ArgumentationTheory, DefeasibleTheory, Literal, Rule, RuleKind


def _lit(rng: random.Random, atom: str) -> Literal:
    return Literal(atom, rng.random() < 0.5)


def random_acyclic_theory(seed: int, max_atoms: int = 6, max_rules: int = 10,
                          fact_density: float = 0.8, max_body: int = 2,
                          superiority_density: float = 0.6, agreement: float = 0.8,
                          head_agreement: float = 0.7) -> ArgumentationTheory:
    """An argumentation theory whose dependency graph and superiority relation are acyclic.

    Atoms are layered: the first few are base atoms (facts only, never concluded), and each
    rule reads from atoms strictly below its head. Every rule has a nonempty body.
    Superiority is oriented by a random rank over rules, so it is a DAG.
    Each atom has a preferred polarity; facts always use it and body literals use it with
    probability ``agreement``, so rules tend to fire and chains form. Heads use it with
    the lower probability ``head_agreement`` so that conflicts still arise.
    """
    rng = random.Random(seed)
    n_atoms = rng.randint(2, max(2, max_atoms))
    atoms = [f"a{i}" for i in range(n_atoms)]
    n_base = rng.randint(1, max(1, n_atoms // 2))
    n_rules = rng.randint(1, max(1, max_rules))

    preferred = {a: rng.random() < 0.5 for a in atoms}

    def biased(a: str, p: float) -> Literal:
        return Literal(a, preferred[a] if rng.random() < p else not preferred[a])

    rules = []
    for k in range(n_rules):
        h = rng.randrange(n_base, n_atoms)
        size = rng.randint(1, min(max_body, h))
        body = frozenset(biased(a, agreement) for a in rng.sample(atoms[:h], size))
        rules.append(Rule(f"r{k + 1}", body, biased(atoms[h], head_agreement)))

    facts = set()
    for a in atoms[:n_base]:
        if rng.random() < fact_density:
            facts.add(Literal(a, preferred[a]))

    rank = {r.label: rng.random() for r in rules}
    sup = set()
    for r in rules:
        for s in rules:
            if r.consequent == ~s.consequent and rank[r.label] > rank[s.label]:
                if rng.random() < superiority_density:
                    sup.add((r.label, s.label))
    return ArgumentationTheory(frozenset(facts), frozenset(rules), frozenset(sup))


def _ident(rng: random.Random) -> str:
    first = rng.choice(string.ascii_letters)
    rest = "".join(rng.choice(string.ascii_letters + string.digits + "_")
                   for _ in range(rng.randint(0, 6)))
    return first + rest


def random_theory(seed: int, max_atoms: int = 8, max_rules: int = 12) -> DefeasibleTheory:
    """Any syntactically valid theory: all rule kinds, empty bodies, arbitrary superiority."""
    rng = random.Random(seed)
    atoms = sorted({_ident(rng) for _ in range(rng.randint(1, max_atoms))})
    labels: list[str] = []
    while len(labels) < rng.randint(0, max_rules):
        lab = _ident(rng)
        if lab not in labels and lab != "facts":
            labels.append(lab)
    kinds = list(RuleKind)
    rules = []
    for lab in labels:
        body = frozenset(_lit(rng, rng.choice(atoms)) for _ in range(rng.randint(0, 3)))
        rules.append(Rule(lab, body, _lit(rng, rng.choice(atoms)), rng.choice(kinds)))
    facts = frozenset(_lit(rng, rng.choice(atoms)) for _ in range(rng.randint(0, 4)))
    sup = frozenset((rng.choice(labels), rng.choice(labels))
                    for _ in range(rng.randint(0, 4))) if labels else frozenset()
    return DefeasibleTheory(facts, frozenset(rules), sup)


def rule_chain(n: int) -> ArgumentationTheory:
    """Fact ``p`` and rules ``p => q1, q1 => q2, ... `` of length ``n``."""
    rules = [Rule("c1", frozenset({Literal("p")}), Literal("q1"))]
    for i in range(2, n + 1):
        rules.append(Rule(f"c{i}", frozenset({Literal(f"q{i - 1}")}), Literal(f"q{i}")))
    return ArgumentationTheory(frozenset({Literal("p")}), frozenset(rules))
