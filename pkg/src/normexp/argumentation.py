"""Arguments, attacks and the justified/rejected fixpoints of a theory's framework.

Attacks are stored as direct rebuttals: ``A`` attacks ``B`` when both are plain and their
conclusions are complementary, filtered by the superiority relation according to the
attack mode. An argument is threatened by every argument that rebuts any of its plain
subarguments (the conclusions of an argument are those of all its subarguments).

In ``defeat`` mode a rebuttal of ``A'`` by ``B`` is also repelled by a set ``S`` when ``S``
supports another argument for ``Conc(A')`` whose top rule is superior to ``TopRule(B)``.
This mirrors the team-defeat clause of +∂ and keeps justified conclusions aligned with it.
For the same reason an undercut only counts while the undercutting rebuttal could not be
repelled, i.e. every stronger argument for the undercut conclusion has a rejected
proper subargument.
"""

from __future__ import annotations

import enum
import graphlib
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .core import ArgumentationTheory, CyclicSetup, Literal, dependency_graph
from .engine import compute_extension


class CyclicDependencies(CyclicSetup):
    """The argument universe of a theory with a cyclic dependency graph may be infinite."""


class AttackMode(enum.Enum):
    DEFEAT = "defeat"
    SUPERIOR_ONLY = "superior-only"
    IGNORE = "ignore"

    @classmethod
    def parse(cls, text: "str | AttackMode") -> "AttackMode":
        if isinstance(text, AttackMode):
            return text
        if text == "ignore-superiority":
            return cls.IGNORE
        return cls(text)


@dataclass(frozen=True, eq=False)
class Argument:
    """A factual argument (``top_rule is None``) or a plain argument over subarguments."""

    id: str
    conclusion: Literal
    top_rule: str | None = None
    subarguments: tuple["Argument", ...] = ()

    def __eq__(self, other):
        return isinstance(other, Argument) and other.id == self.id

    def __hash__(self):
        return hash(self.id)

    def __repr__(self):
        return f"Argument({self.id!r})"

    @property
    def is_factual(self) -> bool:
        return self.top_rule is None

    @property
    def is_plain(self) -> bool:
        return self.top_rule is not None

    @cached_property
    def sub(self) -> frozenset["Argument"]:
        """Sub(A): every subargument including A itself."""
        out = {self}
        for child in self.subarguments:
            out |= child.sub
        return frozenset(out)

    @cached_property
    def proper_sub(self) -> frozenset["Argument"]:
        return self.sub - {self}

    @cached_property
    def rules(self) -> frozenset[str]:
        return frozenset(a.top_rule for a in self.sub if a.top_rule is not None)

    @cached_property
    def height(self) -> int:
        return 1 + max((c.height for c in self.subarguments), default=-1)

    def describe(self) -> str:
        if self.is_factual:
            return f"=>F {self.conclusion}"
        kids = ", ".join(c.id for c in self.subarguments)
        return f"{kids} =>{self.top_rule} {self.conclusion}"


def _plain_id(label: str, children: Iterable[Argument]) -> str:
    return f"{label}({','.join(c.id for c in children)})"


def build_arguments(theory: ArgumentationTheory) -> list[Argument]:
    """Every argument constructible from ``theory``, in a deterministic order.

    Plain arguments need at least one subargument, so rules with an empty antecedent
    produce no argument.
    """
    graph = dependency_graph(theory)
    if not graph.is_acyclic():
        raise CyclicDependencies("dependency graph is cyclic; argument set may be infinite")
    ts = graphlib.TopologicalSorter({v: set() for v in graph.vertices})
    for n, m in graph.edges:
        ts.add(m, n)
    order = list(ts.static_order())

    by_conc: dict[Literal, list[Argument]] = {}
    out: list[Argument] = []
    for f in sorted(theory.facts):
        a = Argument(str(f), f)
        by_conc.setdefault(f, []).append(a)
        out.append(a)
    for atom in order:
        for lit in (Literal(atom, True), Literal(atom, False)):
            for r in theory.rules_for(lit):
                if not r.antecedents:
                    continue
                body = sorted(r.antecedents)
                pools = [by_conc.get(b, []) for b in body]
                for children in itertools.product(*pools):
                    a = Argument(_plain_id(r.label, children), lit, r.label, tuple(children))
                    by_conc.setdefault(lit, []).append(a)
                    out.append(a)
    return out


def attacks(a: Argument, b: Argument, superiority: Iterable[tuple[str, str]] | frozenset,
            mode: AttackMode | str = AttackMode.DEFEAT) -> bool:
    """Direct rebuttal of ``b`` by ``a`` under the given attack mode."""
    if not (a.is_plain and b.is_plain) or a.conclusion != ~b.conclusion:
        return False
    sup = superiority if isinstance(superiority, (set, frozenset)) else frozenset(superiority)
    mode = AttackMode.parse(mode)
    if mode is AttackMode.DEFEAT:
        return (b.top_rule, a.top_rule) not in sup
    if mode is AttackMode.SUPERIOR_ONLY:
        return (a.top_rule, b.top_rule) in sup
    return True


def _ids(args: Iterable) -> frozenset[str]:
    return frozenset(a.id if isinstance(a, Argument) else a for a in args)


def supports(args: Iterable, a: Argument) -> bool:
    """True iff every proper subargument of ``a`` is in ``args``."""
    s = _ids(args)
    return all(x.id in s for x in a.proper_sub)


class Framework:
    """The arguments of a theory with the attack relation between them."""

    def __init__(self, theory: ArgumentationTheory, mode: AttackMode | str = AttackMode.DEFEAT,
                 arguments: list[Argument] | None = None):
        self.theory = theory
        self.mode = AttackMode.parse(mode)
        args = build_arguments(theory) if arguments is None else arguments
        self.arguments: dict[str, Argument] = {a.id: a for a in args}
        self.by_conclusion: dict[Literal, list[Argument]] = {}
        for a in args:
            self.by_conclusion.setdefault(a.conclusion, []).append(a)
        sup = theory.superiority
        att = []
        self.direct_attackers: dict[str, list[Argument]] = {a.id: [] for a in args}
        for b in args:
            if not b.is_plain:
                continue
            for a in self.by_conclusion.get(~b.conclusion, ()):
                if attacks(a, b, sup, self.mode):
                    att.append((a.id, b.id))
                    self.direct_attackers[b.id].append(a)
        self.attacks: frozenset[tuple[str, str]] = frozenset(att)
        self._proper = {a.id: frozenset(x.id for x in a.proper_sub) for a in args}
        self._undercutters: dict[str, tuple[str, ...]] = {}
        self._team: dict[tuple[str, Literal], tuple[str, ...]] = {}

    def __len__(self) -> int:
        return len(self.arguments)

    def __iter__(self):
        return iter(self.arguments.values())

    def __getitem__(self, key: str) -> Argument:
        return self.arguments[key]

    def __contains__(self, key) -> bool:
        return (key.id if isinstance(key, Argument) else key) in self.arguments

    # -- relations -------------------------------------------------------

    def proper_ids(self, a: str) -> frozenset[str]:
        return self._proper[a]

    def supported(self, a: str, s: frozenset[str] | set[str]) -> bool:
        return self._proper[a] <= s

    def threats(self, a: str) -> list[tuple[str, str]]:
        """(attacker, target) pairs where the target is a plain subargument of ``a``."""
        out = []
        for x in sorted(self.arguments[a].sub, key=lambda x: x.id):
            for b in self.direct_attackers[x.id]:
                out.append((b.id, x.id))
        return out

    def attackers(self, a: str) -> list[str]:
        return sorted({b for b, _ in self.threats(a)})

    def undercutters(self, b: str) -> tuple[tuple[str, str], ...]:
        """(C, B') pairs where C rebuts the proper subargument B' of ``b``."""
        got = self._undercutters.get(b)
        if got is None:
            found = set()
            for x in self.arguments[b].proper_sub:
                found.update((c.id, x.id) for c in self.direct_attackers[x.id])
            got = self._undercutters[b] = tuple(sorted(found))
        return got

    def team(self, b: str, target: str) -> tuple[str, ...]:
        """Arguments for ``Conc(target)`` whose top rule is superior to ``TopRule(b)``."""
        if self.mode is not AttackMode.DEFEAT:
            return ()
        conc = self.arguments[target].conclusion
        weaker = self.arguments[b].top_rule
        key = (weaker, conc)
        got = self._team.get(key)
        if got is None:
            sup = self.theory.superiority
            got = self._team[key] = tuple(sorted(
                c.id for c in self.by_conclusion.get(conc, ())
                if c.is_plain and (c.top_rule, weaker) in sup))
        return got

    def _discarded(self, a: str, rejected: frozenset[str] | set[str]) -> bool:
        return bool(self._proper[a] & rejected)

    def _effective(self, c: str, x: str, rejected: frozenset[str] | set[str]) -> bool:
        """The rebuttal c -> x cannot be repelled: every stronger team argument is discarded."""
        return all(self._discarded(t, rejected) for t in self.team(c, x))

    def answer_options(self, b: str, target: str) -> list[frozenset[str]]:
        """Each way a set can neutralise the threat ``b -> target``: the proper
        subarguments it must contain. Undercuts that the framework's rejected set
        leaves repellable are skipped."""
        rejected = self.justification.rejected
        opts = {self._proper[c] for c, x in self.undercutters(b) if self._effective(c, x, rejected)}
        opts.update(self._proper[c] for c in self.team(b, target))
        return sorted(opts, key=lambda o: (len(o), sorted(o)))

    def answered(self, b: str, target: str, s: frozenset[str] | set[str],
                 rejected: frozenset[str] | set[str] | None = None) -> bool:
        if rejected is None:
            rejected = self.justification.rejected
        return (any(self._proper[c] <= s and self._effective(c, x, rejected)
                    for c, x in self.undercutters(b))
                or any(self._proper[c] <= s for c in self.team(b, target)))

    def undercut(self, s: Iterable, a: Argument | str) -> bool:
        """True iff ``s`` supports an argument rebutting a proper subargument of ``a``
        (and, in defeat mode, that rebuttal has no surviving stronger team)."""
        key = a.id if isinstance(a, Argument) else a
        ids = _ids(s)
        rejected = self.justification.rejected
        return any(self._proper[c] <= ids and self._effective(c, x, rejected)
                   for c, x in self.undercutters(key))

    def acceptable(self, a: Argument | str, s: Iterable,
                   rejected: frozenset[str] | set[str] | None = None) -> bool:
        """Every threat to ``a`` is undercut (or, in defeat mode, repelled) by ``s``."""
        key = a.id if isinstance(a, Argument) else a
        ids = _ids(s)
        return all(self.answered(b, x, ids, rejected) for b, x in self.threats(key))

    @cached_property
    def justification(self) -> "JustificationResult":
        return compute_justification(self)


@dataclass(frozen=True)
class JustificationResult:
    justified: frozenset[str]
    rejected: frozenset[str]
    justified_conclusions: frozenset[Literal]
    rounds: tuple[frozenset[str], ...] = field(default=(), compare=False, repr=False)


def compute_justification(fw: Framework) -> JustificationResult:
    """Least fixpoints of the acceptability (J) and rejection (R) sequences.

    Both sequences are advanced together. Whether an undercut or a rebuttal can still be
    repelled by a stronger team depends on which team arguments are already rejected,
    so each J step reads the current R and vice versa. Without superiority both reduce
    to computing J first and rejecting against it.
    """
    rounds = []
    j: frozenset[str] = frozenset()
    r: frozenset[str] = frozenset()

    def rejected_by(a: str) -> bool:
        if fw._proper[a] & r:
            return True
        return any(fw.supported(b.id, j) and fw._effective(b.id, a, r)
                   for b in fw.direct_attackers[a])

    while True:
        nj = frozenset(a for a in fw.arguments
                       if all(fw.answered(b, x, j, r) for b, x in fw.threats(a)))
        nr = frozenset(a for a in fw.arguments if rejected_by(a))
        if nj == j and nr == r:
            break
        if nj != j:
            rounds.append(nj)
        j, r = nj, nr
    concs = frozenset(fw.arguments[a].conclusion for a in j)
    return JustificationResult(j, r, concs, tuple(rounds))


def tag_mismatches(theory: ArgumentationTheory, fw: Framework | None = None) -> list[str]:
    """Disagreements between the framework's verdicts and the ±∂ tags (empty when aligned)."""
    fw = fw or Framework(theory)
    res = fw.justification
    ext = compute_extension(theory)
    out = []
    for lit in sorted(res.justified_conclusions ^ ext.plus_partial):
        side = "justified only" if lit in res.justified_conclusions else "+∂ only"
        out.append(f"{lit}: {side}")
    for lit, args in sorted(fw.by_conclusion.items()):
        all_rejected = all(a.id in res.rejected for a in args)
        if all_rejected != (lit in ext.minus_partial):
            out.append(f"{lit}: all-rejected={all_rejected} but -∂={lit in ext.minus_partial}")
    return out


def verdicts_match_tags(theory: ArgumentationTheory) -> bool:
    return not tag_mismatches(theory)


def aliases(fw: Framework, fact_order: Iterable[Literal] = ()) -> dict[str, str]:
    """Short names A1, A2, ... : factual arguments first (in ``fact_order`` where given),
    then plain arguments depth-first from the arguments they build on."""
    order = {f: i for i, f in enumerate(fact_order)}
    factual = sorted((a for a in fw if a.is_factual),
                     key=lambda a: (order.get(a.conclusion, len(order)), a.conclusion))
    parents: dict[str, list[Argument]] = {}
    for a in fw:
        for c in a.subarguments:
            parents.setdefault(c.id, []).append(a)
    names: dict[str, str] = {}
    for a in factual:
        names[a.id] = f"A{len(names) + 1}"

    def visit(a: Argument) -> None:
        for p in sorted(parents.get(a.id, ()), key=lambda x: x.id):
            if p.id not in names and all(c.id in names for c in p.subarguments):
                names[p.id] = f"A{len(names) + 1}"
                visit(p)

    for a in factual:
        visit(a)
    for a in sorted(fw, key=lambda x: (x.height, x.id)):
        if a.id not in names:
            names[a.id] = f"A{len(names) + 1}"
    return names
