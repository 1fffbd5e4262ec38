import itertools
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from normexp import kernels
from normexp.core import (ArgumentationTheory, DefeasibleTheory, InvalidTheory, Literal, Rule,
                          RuleKind, is_consistent, rule)
from normexp.engine import compute_definite, compute_extension, d_extension, d_extension_of
from normexp.generate import random_acyclic_theory

from oracles import naive_extension
from strategies import theories

L = Literal.parse
BACKENDS = kernels.backends()


def test_credit_tags(credit):
    ext = compute_extension(credit)
    assert ext.plus_delta == {L("insolvent"), L("creditLicense")}
    assert ext.plus_partial == {L("insolvent"), L("creditLicense"), L("banned"), L("-creditActivity")}
    assert {L("creditActivity"), L("actsOnBehalfPrincipal"), L("principalCreditLicense")} <= ext.minus_partial


def test_definite_layer():
    t = DefeasibleTheory(facts={L("p")}, rules=[rule("r", ["p"], "q", RuleKind.STRICT)])
    plus, minus = compute_definite(t)
    assert plus == {L("p"), L("q")} and minus == set()
    assert compute_definite(DefeasibleTheory()) == (frozenset(), frozenset())


def test_unopposed_rule_and_symmetric_conflict():
    t = DefeasibleTheory(facts={L("p")}, rules=[rule("r", ["p"], "q")])
    assert L("q") in compute_extension(t).plus_partial
    t = DefeasibleTheory(facts={L("a"), L("b")}, rules=[rule("r1", ["a"], "c"), rule("r2", ["b"], "-c")])
    ext = compute_extension(t)
    assert {L("c"), L("-c")} <= ext.minus_partial


def test_defeater_blocks_but_never_supports():
    t = DefeasibleTheory(facts={L("a")}, rules=[rule("r1", ["a"], "c"), rule("d", ["a"], "-c", RuleKind.DEFEATER)])
    ext = compute_extension(t)
    assert L("c") in ext.minus_partial and L("-c") in ext.minus_partial
    t = DefeasibleTheory(facts={L("a")}, rules=[rule("d", ["a"], "c", RuleKind.DEFEATER)])
    assert L("c") in compute_extension(t).minus_partial


def test_team_defeat():
    t = DefeasibleTheory(facts={L("a")}, rules=[
        rule("r1", ["a"], "c"), rule("r2", ["a"], "c"), rule("s1", ["a"], "-c"), rule("s2", ["a"], "-c")],
        superiority={("r1", "s1"), ("r2", "s2")})
    assert L("c") in compute_extension(t).plus_partial


def _exhaustive_two_atom_theories():
    lits = [Literal(a, s) for a in "ab" for s in (True, False)]
    bodies = [frozenset()] + [frozenset({l}) for l in lits]
    shapes = [(b, h, k) for b in bodies for h in lits for k in RuleKind]
    fact_sets = [frozenset(c) for n in range(len(lits) + 1) for c in itertools.combinations(lits, n)]
    for n in range(3):
        for combo in itertools.combinations(shapes, n):
            rules = frozenset(Rule(f"r{i}", b, h, k) for i, (b, h, k) in enumerate(combo))
            sups = [frozenset()]
            if n == 2:
                sups += [frozenset({("r0", "r1")}), frozenset({("r1", "r0")})]
            for facts in fact_sets:
                for sup in sups:
                    yield DefeasibleTheory(facts, rules, sup)


@pytest.mark.parametrize("backend", sorted(BACKENDS))
def test_exhaustive_small_theories_match_naive_fixpoint(backend):
    mod = BACKENDS[backend]
    count = 0
    for i, t in enumerate(_exhaustive_two_atom_theories()):
        if backend == "python" and i % 7:
            continue  # the pure-Python backend gets a fixed slice; the compiled one gets all
        plus, minus = naive_extension(t)
        ext = compute_extension(t, backend=mod)
        assert ext.plus_partial == plus and ext.minus_partial == minus, t
        count += 1
    assert count > 10_000 if backend != "python" else count > 1_000


@settings(max_examples=400, deadline=None)
@given(theories(n_atoms=3, max_rules=4))
def test_sampled_three_atom_theories_match_naive_fixpoint(t):
    plus, minus = naive_extension(t)
    for mod in BACKENDS.values():
        ext = compute_extension(t, backend=mod)
        assert ext.plus_partial == plus and ext.minus_partial == minus


@settings(max_examples=300, deadline=None)
@given(theories(n_atoms=4, max_rules=7))
def test_coherence_and_monotone_tagging(t):
    ext = compute_extension(t)
    assert not ext.plus_delta & ext.minus_delta
    assert not ext.plus_partial & ext.minus_partial
    assert ext.plus_delta <= ext.plus_partial
    assert ext.plus_delta | ext.minus_delta == t.literals


def test_backends_agree_on_generated_theories():
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    for seed in range(300):
        t = random_acyclic_theory(seed, max_atoms=8, max_rules=14)
        a = compute_extension(t, backend=BACKENDS["python"])
        b = compute_extension(t, backend=BACKENDS["cython"])
        assert a == b


def test_credit_d_extension(credit):
    assert set(d_extension(credit)) == {L("insolvent"), L("creditLicense"), L("banned"), L("-creditActivity"),
                                        L("-actsOnBehalfPrincipal"), L("-principalCreditLicense")}


def test_d_extension_small_cases():
    assert len(d_extension_of([], [], [])) == 0
    assert d_extension_of([rule("r", ["p"], "q")], [], [L("p")]).literals == {L("p"), L("q")}


def test_d_extension_rejects_invalid_theory():
    with pytest.raises(InvalidTheory):
        d_extension(DefeasibleTheory(facts={L("p"), L("-p")}))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9))
def test_d_extension_is_consistent_and_decides_each_atom(seed):
    t = random_acyclic_theory(seed)
    e = d_extension(t).literals
    assert is_consistent(e)
    justified = compute_extension(t).plus_partial
    for l in t.literals:
        assert (l in e) == (l in justified)
        if l not in justified and ~l not in t.literals:
            assert ~l in e


def test_ambiguous_pair_leaves_both_out():
    # both polarities occur and neither is justified: neither goes in
    t = ArgumentationTheory(facts={L("a")}, rules=frozenset({rule("r1", ["a"], "c"), rule("r2", ["a"], "-c")}))
    e = d_extension(t).literals
    assert L("c") not in e and L("-c") not in e


def test_pure_python_fallback_selected_at_import():
    code = ("from normexp import kernels, engine; from normexp.generate import rule_chain;"
            "print(kernels.BACKEND, len(engine.compute_extension(rule_chain(5)).plus_partial))")
    env = {**os.environ, "NORMEXP_PURE_PYTHON": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "6"]
