import json

import pytest
from hypothesis import given, settings

from normexp.argumentation import Framework
from normexp.core import ArgumentationTheory, Literal, rule
from normexp.explanation import (Explanation, ExplanationMode, NotAnExplanation,
                                 enumerate_fact_supersets, explanation_sets, find_explanations,
                                 is_explanation, is_explanation_naive, is_stable, literal_universe)
from normexp.generate import random_acyclic_theory

from oracles import brute_force_explanations
from strategies import acyclic_theories

L = Literal.parse
A1, A3, A4 = "insolvent", "s5(insolvent)", "s4(s5(insolvent))"


def test_credit_universe(credit):
    u = literal_universe(credit.rules)
    assert set(u) == {L(x) for x in ("insolvent", "-insolvent", "creditLicense", "-creditLicense",
                                     "actsOnBehalfPrincipal", "-actsOnBehalfPrincipal",
                                     "principalCreditLicense", "-principalCreditLicense")}


def test_superset_enumeration_order_and_count(credit):
    u = literal_universe(credit.rules)
    sups = list(enumerate_fact_supersets(credit.facts, u))
    assert len(sups) == 9 and sups[0] == credit.facts
    added = [sorted(s - credit.facts) for s in sups[1:3]]
    assert added == [[L("actsOnBehalfPrincipal")], [L("-actsOnBehalfPrincipal")]]
    assert len(set(sups)) == len(sups)


def test_superset_enumeration_with_no_free_atoms():
    f = frozenset({L("p")})
    assert list(enumerate_fact_supersets(f, literal_universe([rule("r", ["p"], "q")]))) == [f]


def test_credit_explanation(credit):
    es = find_explanations(credit, L("-creditActivity"))
    assert [e.argument_ids for e in es] == [frozenset({A1, A3, A4})]
    assert find_explanations(credit, L("creditActivity")) == []
    lit = find_explanations(credit, L("-creditActivity"), mode="literal")
    assert [e.argument_ids for e in lit] == [frozenset({A4})]


def test_credit_explanation_is_stable(credit):
    e = Explanation(L("-creditActivity"), frozenset({A1, A3, A4}))
    rep = is_stable(credit, e)
    assert rep.stable and rep.checked_supersets == 9 and rep.counterexample is None
    assert is_stable(credit, e, naive=True) == rep
    d = json.loads(rep.to_json(e))
    assert d == {"target": "-creditActivity", "explanation": sorted([A1, A3, A4]), "mode": "closed",
                 "stable": True, "supersets_checked": 9, "counterexample": None}


def test_unstable_once_insolvency_is_added(credit):
    t = credit.with_facts({L("creditLicense")})
    [e] = find_explanations(t, L("creditActivity"))
    assert e.argument_ids == {"creditLicense", "s2(creditLicense)"}
    rep = is_stable(t, e)
    assert not rep.stable
    assert rep.counterexample == {L("creditLicense"), L("insolvent")}
    assert is_stable(t, e, naive=True) == rep


def test_stability_requires_an_explanation(credit):
    with pytest.raises(NotAnExplanation):
        is_stable(credit, Explanation(L("creditActivity"), frozenset({"s2(creditLicense)"})))
    with pytest.raises(NotAnExplanation):
        is_stable(credit, Explanation(L("-creditActivity"), frozenset({A1, A3, A4, "creditLicense"})))


def test_mode_aliases():
    assert ExplanationMode.parse("support-closed") is ExplanationMode.CLOSED
    assert ExplanationMode.parse("literal") is ExplanationMode.LITERAL


def _targets(fw):
    return sorted({a.conclusion for a in fw})


@settings(max_examples=150, deadline=None)
@given(acyclic_theories(max_atoms=5, max_rules=7))
def test_search_matches_brute_force(t):
    fw = Framework(t)
    if len(fw.justification.justified) > 12:
        return
    for target in _targets(fw):
        for mode, closed in (("literal", False), ("closed", True)):
            assert explanation_sets(fw, target, mode) == brute_force_explanations(fw, target, closed)


@settings(max_examples=150, deadline=None)
@given(acyclic_theories(max_atoms=6, max_rules=9))
def test_explanation_properties(t):
    fw = Framework(t)
    j = fw.justification
    for target in _targets(fw):
        for mode in ExplanationMode:
            es = find_explanations(t, target, mode, framework=fw)
            assert bool(es) == (target in j.justified_conclusions)
            for e in es:
                assert e.argument_ids <= j.justified
                assert any(fw[a].conclusion == target for a in e.argument_ids)
                assert not any(o.argument_ids < e.argument_ids for o in es)
                assert is_explanation(fw, e) and is_explanation_naive(fw, e)
                if mode is ExplanationMode.CLOSED:
                    assert all(x.id in e.argument_ids for a in e.argument_ids for x in fw[a].sub)


def test_fast_and_naive_stability_agree_on_generated_theories():
    checked = 0
    for seed in range(120):
        t = random_acyclic_theory(seed, max_atoms=5, max_rules=7)
        fw = Framework(t)
        for target in _targets(fw):
            for e in find_explanations(t, target, framework=fw):
                assert is_stable(t, e) == is_stable(t, e, naive=True)
                checked += 1
    assert checked > 100


def test_explanation_membership_rejects_non_minimal(credit):
    fw = Framework(credit)
    e = Explanation(L("-creditActivity"), frozenset({A1, A3, A4}))
    assert is_explanation(fw, e)
    assert not is_explanation(fw, Explanation(e.target, e.argument_ids | {"creditLicense"}))
    assert not is_explanation(fw, Explanation(e.target, frozenset({A4})))


def test_facts_outside_the_universe_are_kept():
    t = ArgumentationTheory(facts=frozenset({L("z")}), rules=frozenset({rule("r", ["p"], "q")}))
    sups = list(enumerate_fact_supersets(t.facts, literal_universe(t.rules)))
    assert sups == [frozenset({L("z")}), frozenset({L("z"), L("p")}), frozenset({L("z"), L("-p")})]


def _meets_condition(fw, target, s, closed):
    roots = [a for a in s if fw[a].conclusion == target]
    if closed:
        return bool(roots) and all(x.id in s for a in s for x in fw[a].sub) and \
            all(fw.acceptable(m, s) for m in s)
    return any(fw.acceptable(r, s) for r in roots)


@settings(max_examples=150, deadline=None)
@given(acyclic_theories(max_atoms=6, max_rules=9))
def test_dropping_any_member_breaks_the_explanation(t):
    fw = Framework(t)
    for target in _targets(fw):
        for mode in ExplanationMode:
            closed = mode is ExplanationMode.CLOSED
            for e in find_explanations(t, target, mode, framework=fw):
                assert _meets_condition(fw, target, e.argument_ids, closed)
                for m in e.argument_ids:
                    assert not _meets_condition(fw, target, e.argument_ids - {m}, closed)


def _without_atom(t, atom):
    keep = frozenset(r for r in t.rules if all(a.atom != atom for a in r.antecedents))
    labels = {r.label for r in keep}
    sup = frozenset(p for p in t.superiority if p[0] in labels and p[1] in labels)
    return ArgumentationTheory(t.facts, keep, sup)


def test_stability_survives_shrinking_the_universe():
    checked = 0
    for seed in range(200):
        t = random_acyclic_theory(seed, max_atoms=6, max_rules=9)
        fw = Framework(t)
        free = [a for a in literal_universe(t.rules).atoms if a not in {f.atom for f in t.facts}]
        if not free:
            continue
        smaller = _without_atom(t, free[0])
        for target in _targets(fw):
            for e in find_explanations(t, target, framework=fw):
                if not is_stable(t, e).stable or not is_explanation(Framework(smaller), e):
                    continue
                assert is_stable(smaller, e).stable
                checked += 1
    assert checked > 50


def test_factual_targets_are_stable():
    for seed in range(100):
        t = random_acyclic_theory(seed, max_atoms=5, max_rules=7)
        for f in t.facts:
            [e] = find_explanations(t, f)
            assert e.argument_ids == {str(f)} and is_stable(t, e).stable


def test_unattacked_chain_away_from_free_atoms_is_stable():
    t = ArgumentationTheory(frozenset({L("p")}), frozenset({
        rule("c1", ["p"], "q"), rule("c2", ["q"], "s"), rule("u", ["x"], "y")}))
    [e] = find_explanations(t, L("s"))
    rep = is_stable(t, e)
    assert rep.stable and rep.checked_supersets == 3
