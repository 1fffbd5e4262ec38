"""Neighbourhood models built from an argumentation theory, and OBL/PERM evaluation.

Worlds are the nonempty subsets of the theory's D-extension E(D), encoded as bitmasks over
the sorted tuple of E(D). Sets of worlds are Python ints used as bitsets indexed by world
mask, so ``1 << m`` stands for the world with mask ``m``.

For each conclusion ``c`` the rules concluding it form a class. At a world ``x`` the class
fires when one of its rules has its body inside ``x`` and every rule for the complement is
either inapplicable in ``x`` or beaten by a stronger rule for ``c`` applicable in ``x``.
The neighbourhood of ``x`` holds the truth set of every firing class. Classes that do not
fire contribute the empty set, which is left out of N(x): keeping it would make ``OBL l``
true for every literal outside E(D).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from .argumentation import Argument, Framework
from .core import ArgumentationTheory, CyclicSetup, Literal, require_acyclic, validate_argumentation_theory
from .engine import d_extension
from .explanation import Explanation, is_explanation, literal_universe

DEFAULT_WORLD_CAP = 20


class UnknownWorld(KeyError):
    pass


class ForeignArgument(ValueError):
    pass


class NotASubset(ValueError):
    pass


class WorldCapExceeded(ValueError):
    pass


class EmptyExtension(ValueError):
    """E(D) is empty, so there are no worlds to build a frame on."""


class InconsistentFPlus(ValueError):
    def __init__(self, clashes: list[str]):
        self.clashes = clashes
        super().__init__("antecedent literals clash: " + ", ".join(clashes))


@dataclass(frozen=True)
class World:
    literals: frozenset[Literal]

    def __str__(self) -> str:
        return "{" + ", ".join(str(l) for l in sorted(self.literals)) + "}"

    def __iter__(self):
        return iter(sorted(self.literals))


# -- formulas ---------------------------------------------------------------


@dataclass(frozen=True)
class Formula:
    kind: str                       # "lit", "not", "obl", "perm"
    literal: Literal | None = None
    sub: "Formula | None" = None

    @staticmethod
    def lit(l: Literal | str) -> "Formula":
        return Formula("lit", Literal.parse(l) if isinstance(l, str) else l)

    @staticmethod
    def obl(l: Literal | str) -> "Formula":
        return Formula("obl", Literal.parse(l) if isinstance(l, str) else l)

    @staticmethod
    def perm(l: Literal | str) -> "Formula":
        return Formula("perm", Literal.parse(l) if isinstance(l, str) else l)

    def negate(self) -> "Formula":
        return Formula("not", sub=self)

    def __str__(self) -> str:
        if self.kind == "not":
            return f"NOT {self.sub}"
        if self.kind == "lit":
            return str(self.literal)
        return f"{self.kind.upper()} {self.literal}"


_FORMULA = re.compile(r"\s*(?:(NOT|!)\s*(?P<rest>.*)|(?P<op>OBL|PERM)\s+(?P<mlit>\S+)|(?P<lit>[-~]?[A-Za-z][A-Za-z0-9_]*))\s*$")


def parse_formula(text: str) -> Formula:
    """``OBL lit``, ``PERM lit``, ``lit`` or ``-lit``; prefix ``NOT`` (or ``!``) negates."""
    m = _FORMULA.match(text)
    if m is None:
        raise ValueError(f"cannot parse formula {text!r}")
    if m.group("rest") is not None:
        return parse_formula(m.group("rest")).negate()
    if m.group("op"):
        lit = m.group("mlit")
        if not re.fullmatch(r"[-~]?[A-Za-z][A-Za-z0-9_]*", lit):
            raise ValueError(f"modal operators apply to literals only, got {lit!r}")
        return Formula(m.group("op").lower(), Literal.parse(lit))
    return Formula.lit(m.group("lit"))


# -- bitset helpers -------------------------------------------------------


def _bits_to_int(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags.astype(np.uint8), bitorder="little").tobytes(), "little")


def _iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# -- models -----------------------------------------------------------------


class NeighborhoodModel:
    """A finite neighbourhood model over literal-labelled worlds.

    ``universe`` is the sorted E(D) tuple; ``world_set`` the bitset of world masks in the
    model. Neighbourhoods are read from the fired-class table of the full model, and a
    generated submodel intersects every member with its world set.
    """

    def __init__(self, theory: ArgumentationTheory, universe: tuple[Literal, ...],
                 fired: np.ndarray, class_bits: tuple[int, ...], world_set: int | None = None,
                 parent: "NeighborhoodModel | None" = None):
        self.source_theory = theory
        self.universe = universe
        self.position = {l: i for i, l in enumerate(universe)}
        self.fired = fired
        self.class_bits = class_bits
        n_masks = 1 << len(universe)
        self.full_set = ((1 << n_masks) - 1) & ~1
        self.world_set = self.full_set if world_set is None else world_set
        self.parent = parent
        self._lit_sets: dict[int, int] = {}

    # worlds

    def __len__(self) -> int:
        return bin(self.world_set).count("1")

    def masks(self) -> Iterator[int]:
        return _iter_bits(self.world_set)

    def world(self, mask: int) -> World:
        return World(frozenset(l for i, l in enumerate(self.universe) if mask >> i & 1))

    @property
    def worlds(self) -> list[World]:
        return [self.world(m) for m in self.masks()]

    def mask_of(self, w: "World | Iterable[Literal] | int") -> int:
        if isinstance(w, int):
            mask = w
        else:
            lits = w.literals if isinstance(w, World) else frozenset(w)
            try:
                mask = sum(1 << self.position[l] for l in lits)
            except KeyError as exc:
                raise UnknownWorld(f"{exc.args[0]} is not in the model's literal universe") from None
        if mask <= 0 or not self.world_set >> mask & 1:
            raise UnknownWorld(f"world {self.world(mask) if mask > 0 else '{}'} is not in the model")
        return mask

    @property
    def distinguished_mask(self) -> int:
        """The world that is all of E(D)."""
        return (1 << len(self.universe)) - 1

    # truth sets

    def _bit_set(self, bit: int) -> int:
        got = self._lit_sets.get(bit)
        if got is None:
            masks = np.arange(1 << len(self.universe), dtype=np.uint64)
            got = self._lit_sets[bit] = _bits_to_int((masks >> np.uint64(bit)) & np.uint64(1)) & self.full_set
        return got

    def literal_set(self, l: Literal) -> int:
        """‖l‖ within this model's worlds."""
        bit = self.position.get(l)
        return 0 if bit is None else self._bit_set(bit) & self.world_set

    def valuation(self, atom: str) -> int:
        return self.literal_set(Literal(atom, True))

    def fired_classes(self, mask: int) -> list[Literal]:
        f = int(self.fired[mask])
        return [self.universe[b] for b in self.class_bits if f >> b & 1]

    def class_neighbourhoods(self, w) -> dict[Literal, int]:
        """Per conclusion class, the set it contributes at ``w`` (0 when it does not fire)."""
        mask = self.mask_of(w)
        f = int(self.fired[mask])
        return {self.universe[b]: (self._bit_set(b) & self.world_set if f >> b & 1 else 0)
                for b in self.class_bits}

    def neighbourhood(self, w) -> frozenset[int]:
        """N(w) as a set of world bitsets."""
        mask = self.mask_of(w)
        f = int(self.fired[mask])
        out = set()
        for b in self.class_bits:
            if f >> b & 1:
                full = self._bit_set(b)
                if full:
                    out.add(full & self.world_set)
        return frozenset(out)

    def truth_set(self, f: Formula) -> int:
        if f.kind == "lit":
            return self.literal_set(f.literal)
        if f.kind == "not":
            return self.world_set & ~self.truth_set(f.sub)
        out = 0
        for m in self.masks():
            if self._modal(m, f):
                out |= 1 << m
        return out

    def truth_worlds(self, f: Formula) -> list[World]:
        return [self.world(m) for m in _iter_bits(self.truth_set(f))]

    def _modal(self, mask: int, f: Formula) -> bool:
        n = self.neighbourhood(mask)
        ts = self.literal_set(f.literal)
        if f.kind == "obl":
            return ts in n
        return (self.world_set & ~ts) not in n

    def eval(self, w, f: Formula) -> bool:
        mask = self.mask_of(w)
        if f.kind == "lit":
            return self.position.get(f.literal, -1) >= 0 and bool(mask >> self.position[f.literal] & 1)
        if f.kind == "not":
            return not self.eval(mask, f.sub)
        return self._modal(mask, f)

    # dumping

    def to_dict(self) -> dict:
        masks = list(self.masks())
        index = {m: i for i, m in enumerate(masks)}
        return {
            "literals": [str(l) for l in self.universe],
            "worlds": [[str(l) for l in self.world(m)] for m in masks],
            "neighbourhoods": [
                sorted(sorted(index[x] for x in _iter_bits(y)) for y in self.neighbourhood(m))
                for m in masks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _encode_classes(theory: ArgumentationTheory, position: dict[Literal, int]):
    def body_mask(r) -> int:
        m = 0
        for a in r.antecedents:
            m |= (1 << position[a]) if a in position else kernels.IMPOSSIBLE
        return m

    heads = sorted({r.consequent for r in theory.rules if r.consequent in position})
    sup = theory.superiority
    cls_bit, sup_ptr, sup_mask = [], [0], []
    opp_ptr, opp_mask, beat_ptr, beat_mask = [0], [], [0], []
    for c in heads:
        cls_bit.append(position[c])
        mine = theory.rules_for(c)
        sup_mask.extend(body_mask(r) for r in mine)
        sup_ptr.append(len(sup_mask))
        for s in theory.rules_for(~c):
            opp_mask.append(body_mask(s))
            beat_mask.extend(body_mask(t) for t in mine if (t.label, s.label) in sup)
            beat_ptr.append(len(beat_mask))
        opp_ptr.append(len(opp_mask))
    as64 = lambda xs: np.array(xs, dtype=np.uint64)
    as32 = lambda xs: np.array(xs, dtype=np.int32)
    return (as32(cls_bit), as32(sup_ptr), as64(sup_mask), as32(opp_ptr), as64(opp_mask),
            as32(beat_ptr), as64(beat_mask))


def build_d_model(theory: ArgumentationTheory, world_cap: int = DEFAULT_WORLD_CAP,
                  backend=None) -> NeighborhoodModel:
    """The neighbourhood model whose worlds are the nonempty subsets of E(D)."""
    theory = validate_argumentation_theory(theory)
    require_acyclic(theory)
    universe = tuple(sorted(d_extension(theory).literals))
    if len(universe) > world_cap:
        raise WorldCapExceeded(f"E(D) has {len(universe)} literals; the world cap is {world_cap}")
    if not universe:
        raise EmptyExtension("E(D) is empty; a neighbourhood frame needs at least one world")
    position = {l: i for i, l in enumerate(universe)}
    encoded = _encode_classes(theory, position)
    fn = backend.neighborhood_classes if backend is not None else kernels.neighborhood_classes
    fired = fn(len(universe), *encoded)
    return NeighborhoodModel(theory, universe, fired, tuple(int(b) for b in encoded[0]))


# -- submodels ----------------------------------------------------------------


@dataclass(frozen=True)
class CertificationFailure:
    world: World
    subject: str
    in_model: bool
    in_submodel: bool

    def __str__(self) -> str:
        return (f"at {self.world}: {self.subject} is {'in' if self.in_model else 'not in'} N(w) "
                f"but its restriction is {'in' if self.in_submodel else 'not in'} N_X(w)")


class GeneratedSubmodel(NeighborhoodModel):
    """Restriction of a model to a world set ``X`` with ``N_X(w) = {Y ∩ X : Y ∈ N(w)}``."""

    def __init__(self, parent: NeighborhoodModel, world_set: int):
        super().__init__(parent.source_theory, parent.universe, parent.fired, parent.class_bits,
                         world_set, parent)
        self._lit_sets = parent._lit_sets

    def neighbourhood(self, w) -> frozenset[int]:
        mask = self.mask_of(w)
        return frozenset(y & self.world_set for y in self.parent.neighbourhood(mask))

    def _modal(self, mask: int, f: Formula) -> bool:
        n = self.neighbourhood(mask)
        ts = self.literal_set(f.literal)
        if f.kind == "obl":
            return ts in n
        return (self.world_set & ~ts) not in n

    @cached_property
    def certification(self) -> list[CertificationFailure]:
        """Checks ``Y ∈ N(w) ⇔ Y ∩ X ∈ N_X(w)`` for every retained ``w`` and every ``Y``
        that is a neighbourhood member, a literal truth set, or the complement of one.
        Those are all the sets the formula language can ask about."""
        p = self.parent
        atoms = sorted({l.atom for l in p.universe} | set(p.source_theory.atoms))
        probes = []
        for a in atoms:
            for l in (Literal(a, True), Literal(a, False)):
                ts = p.literal_set(l)
                probes.append((f"||{l}||", ts))
                probes.append((f"W - ||{l}||", p.world_set & ~ts))
        out = []
        for m in self.masks():
            n = p.neighbourhood(m)
            nx = self.neighbourhood(m)
            cases = probes + [(f"||{c}||", y) for c, y in
                              ((p.universe[b], p._bit_set(b) & p.world_set) for b in p.class_bits)]
            for subject, y in cases:
                a, b = y in n, (y & self.world_set) in nx
                if a != b:
                    out.append(CertificationFailure(self.world(m), subject, a, b))
        return out

    @property
    def certified(self) -> bool:
        return not self.certification


def generated_submodel(m: NeighborhoodModel, worlds: Iterable | int) -> GeneratedSubmodel:
    base = m.parent if isinstance(m, GeneratedSubmodel) else m
    if isinstance(worlds, int):
        x = worlds
    else:
        x = 0
        for w in worlds:
            try:
                x |= 1 << base.mask_of(w)
            except UnknownWorld:
                raise NotASubset(f"{w} is not a world of the model") from None
    if x & ~m.world_set:
        raise NotASubset("world set is not contained in the model")
    return GeneratedSubmodel(base, x)


def _framework_ids(m: NeighborhoodModel, fw: Framework | None = None) -> Framework:
    return fw if fw is not None else Framework(m.source_theory)


def explanation_submodel(m: NeighborhoodModel, e: Explanation,
                         fw: Framework | None = None) -> GeneratedSubmodel:
    """Drops every world holding a fact whose factual argument is not in ``e``."""
    fw = _framework_ids(m, fw)
    foreign = sorted(i for i in e.argument_ids if i not in fw)
    if foreign:
        raise ForeignArgument(f"arguments not in the model's framework: {', '.join(foreign)}")
    excluded = [f for f in m.source_theory.facts if str(f) not in e.argument_ids]
    drop = 0
    for f in excluded:
        drop |= m.literal_set(f)
    return generated_submodel(m, m.world_set & ~drop)


# -- argument and explanation conditions ------------------------------------------


def _fires_somewhere(m: NeighborhoodModel, premises: Iterable[Literal], conclusion: Literal) -> bool:
    bit = m.position.get(conclusion)
    if bit is None:
        return False
    need = 0
    for p in premises:
        if p not in m.position:
            return False
        need |= 1 << m.position[p]
    if int(m.fired[m.distinguished_mask]) >> bit & 1:
        return True
    masks = np.arange(1 << len(m.universe), dtype=np.uint64)
    hit = ((masks & np.uint64(need)) == np.uint64(need)) & ((m.fired >> np.uint64(bit)) & np.uint64(1)).astype(bool)
    hit[0] = False
    return bool(hit.any())


def verify_argument_condition(m: NeighborhoodModel, a: Argument, fw: Framework | None = None) -> bool:
    """Whether every plain level of ``a`` has a world holding its premises at which the
    truth set of its conclusion is a neighbourhood. Factual arguments pass vacuously."""
    fw = _framework_ids(m, fw)
    if a.id not in fw:
        raise ForeignArgument(f"{a.id} is not an argument of the model's theory")
    for x in sorted(a.sub, key=lambda s: s.height):
        if x.is_plain and not _fires_somewhere(m, (c.conclusion for c in x.subarguments), x.conclusion):
            return False
    return True


def verify_explanation_condition(m: NeighborhoodModel, e: Explanation, fw: Framework | None = None) -> bool:
    fw = _framework_ids(m, fw)
    foreign = sorted(i for i in e.argument_ids if i not in fw)
    if foreign:
        raise ForeignArgument(f"arguments not in the model's framework: {', '.join(foreign)}")
    return all(verify_argument_condition(m, fw[i], fw) for i in sorted(e.argument_ids))


# -- semantic stability -------------------------------------------------------------


def fact_closure(theory: ArgumentationTheory) -> ArgumentationTheory:
    """D⁺: the facts plus every antecedent literal that no rule concludes either way.

    Antecedent literals complementary to an existing fact are skipped, since the facts
    must stay consistent.
    """
    universe = literal_universe(theory.rules).literals
    plus = {a for r in theory.rules for a in r.antecedents if a in universe}
    clashes = sorted(str(l) for l in plus if l.positive and ~l in plus)
    if clashes:
        raise InconsistentFPlus([f"{c} / -{c}" for c in clashes])
    facts = set(theory.facts) | {l for l in plus if ~l not in theory.facts}
    return theory.with_facts(facts)


def _shared_view(sub: GeneratedSubmodel, shared: frozenset[Literal]):
    keep = [m for m in sub.masks() if sub.world(m).literals <= shared]
    keep_set = sum(1 << m for m in keep)
    worlds = {m: sub.world(m).literals for m in keep}
    nb = {}
    for m in keep:
        nb[worlds[m]] = frozenset(
            frozenset(worlds[x] for x in _iter_bits(y & keep_set)) for y in sub.neighbourhood(m))
    return frozenset(worlds.values()), nb


@dataclass(frozen=True)
class SemanticStabilityResult:
    explains_in_closure: bool
    submodels_equal: bool
    shared_literals: frozenset[Literal]
    closure: ArgumentationTheory

    def __bool__(self) -> bool:
        return self.explains_in_closure and self.submodels_equal


def semantic_stability_check(theory: ArgumentationTheory, e: Explanation,
                             world_cap: int = DEFAULT_WORLD_CAP) -> SemanticStabilityResult:
    """Does ``e`` still explain its target once every possible fact holds, and do the two
    explanation submodels agree on the worlds both models share?"""
    theory = validate_argumentation_theory(theory)
    plus = fact_closure(theory)
    fw_plus = Framework(plus)
    explains = all(i in fw_plus for i in e.argument_ids) and is_explanation(fw_plus, e)
    m = build_d_model(theory, world_cap)
    m_plus = build_d_model(plus, world_cap)
    shared = frozenset(m.universe) & frozenset(m_plus.universe)
    sub = explanation_submodel(m, e)
    ids_plus = e if explains else Explanation(e.target, frozenset(i for i in e.argument_ids if i in fw_plus), e.mode)
    sub_plus = explanation_submodel(m_plus, ids_plus, fw_plus)
    equal = _shared_view(sub, shared) == _shared_view(sub_plus, shared)
    return SemanticStabilityResult(explains, equal, shared, plus)
