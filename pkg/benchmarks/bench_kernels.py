"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times the defeasible fixpoint on rule chains and generated theories, and the
neighbourhood-class kernel on models of growing size. Both backends are checked to
agree before timing.
"""

import argparse
import time

import numpy as np

from normexp import kernels
from normexp.core import ArgumentationTheory, Literal, Rule
from normexp.engine import compute_extension, d_extension
from normexp.generate import random_acyclic_theory, rule_chain
from normexp.semantics import build_d_model


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def wide_theory(n_facts: int) -> ArgumentationTheory:
    """Facts p0..pk, each concluding its own q, plus one conflicting pair per fact."""
    facts = frozenset(Literal(f"p{i}") for i in range(n_facts))
    rules = []
    for i in range(n_facts):
        rules.append(Rule(f"a{i}", frozenset({Literal(f"p{i}")}), Literal(f"q{i}")))
        rules.append(Rule(f"b{i}", frozenset({Literal(f"p{i}")}), Literal(f"q{i}", False)))
    sup = frozenset((f"a{i}", f"b{i}") for i in range(n_facts))
    return ArgumentationTheory(facts, frozenset(rules), sup)


def fixpoint_cases():
    for n in (100, 400, 1600):
        yield f"chain n={n}", rule_chain(n)
    yield "generated x200", [random_acyclic_theory(s, max_atoms=10, max_rules=20) for s in range(200)]


def model_cases():
    for k in (3, 4, 5, 6, 7):
        t = wide_theory(k)
        yield f"|E(D)|={len(d_extension(t))}", t


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    found = kernels.backends()
    names = sorted(found)
    print(f"default backend: {kernels.BACKEND}; available: {', '.join(names)}")
    if len(names) < 2:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")

    header = f"{'case':<22}" + "".join(f"{n + ' (ms)':>16}" for n in names) + \
             (f"{'speedup':>10}" if len(names) == 2 else "")
    print("\ndefeasible fixpoint\n" + header)
    for label, case in fixpoint_cases():
        theories = case if isinstance(case, list) else [case]
        results = [[compute_extension(t, backend=found[n]) for t in theories] for n in names]
        assert all(r == results[0] for r in results), label
        times = [best_of(lambda mod=found[n]: [compute_extension(t, backend=mod) for t in theories],
                         args.repeat) for n in names]
        _row(label, times)

    print("\nneighbourhood classes\n" + header)
    for label, t in model_cases():
        fired = [build_d_model(t, world_cap=32, backend=found[n]).fired for n in names]
        assert all(np.array_equal(f, fired[0]) for f in fired), label
        times = [best_of(lambda mod=found[n]: build_d_model(t, world_cap=32, backend=mod), args.repeat)
                 for n in names]
        _row(label, times)


def _row(label, times):
    line = f"{label:<22}" + "".join(f"{t * 1e3:>16.2f}" for t in times)
    if len(times) == 2:
        # backends are listed cython, python
        line += f"{times[1] / times[0]:>9.1f}x"
    print(line)


if __name__ == "__main__":
    main()
