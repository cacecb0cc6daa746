"""
The adjoint triple induced by a monoid morphism phi : M -> N.

* extension ``f_!(X) = X (x)_M N`` is computed as a bounded congruence
  closure over pairs (x, n), see :func:`tensor`;
* restriction ``f^*`` is :func:`monoidtopos.mset.restrict_scalars`;
* ``f_*(Z) = Hom_M(N, Z)`` is computed from the fixed points of the
  generators phi sends to 1, see :func:`hom_set`.

Tensor pairs are graded by ``degree(x) + len(n)``. With that grading every
generator move (x.g, n) ~ (x, phi(g) n) between enumerated pairs stays
inside the bound whenever phi maps generators to words of length <= 1,
and truncating the regular action at degree d gives exactly the classes
of 1, a, ..., a^d.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Union

from .errors import BoundError, MonoidToposError
from .monoid import MonoidMorphism, apply_morphism, check_surjective_on_generators
from .mset import (
    FiniteMSet, MSet, Partition, RegularMSet, RestrictedMSet, components, equivariant_maps,
    product)
from .rewriting import Word, format_word
from .verdict import Verdict


class TensorPartition(Partition):
    """Classes of X (x)_M N among pairs (x, n) with degree(x) + len(n) <= bound."""

    def __init__(self, base: MSet, morphism: MonoidMorphism, degree_bound: int):
        self.base = base
        self.morphism = morphism
        self.degree_bound = degree_bound
        target = morphism.target
        xs = base.elements(degree_bound)
        ns = target.elements(degree_bound)
        graded = []
        for i, x in enumerate(xs):
            dx = base.degree(x)
            for j, n in enumerate(ns):
                if dx + len(n) <= degree_bound:
                    graded.append((dx + len(n), i, j))
        graded.sort()
        super().__init__([(xs[i], ns[j]) for _, i, j in graded])
        #: (pair, pair, generator) for every merge performed
        self.moves: list[tuple] = []

    def degree(self, pair) -> int:
        return self.base.degree(pair[0]) + len(pair[1])

    def act_class(self, pair, h: str):
        """Class of (x, n h), or None when that pair lies beyond the bound."""
        x, n = pair
        moved = (x, self.morphism.target.multiply(n, (h,)))
        return self.find(moved) if moved in self.index else None

    def format(self, pair) -> str:
        return f"{self.base.format(pair[0])} (x) {format_word(pair[1])}"


def tensor(X: MSet, phi: MonoidMorphism, degree_bound: int) -> TensorPartition:
    """Saturate the tensor relation under single-generator moves.

    Every move relates (x.g, n) and (x, phi(g) n); relations for longer
    words follow by chaining. Pairs left apart are distinct only up to
    the bound.
    """
    if X.monoid != phi.source:
        raise MonoidToposError(f"{X!r} is not an action of {phi.source.name}")
    t = TensorPartition(X, phi, degree_bound)
    target = phi.target
    for x, n in t.elements:
        for g in phi.source.generators:
            p1 = (X.act_gen(x, g), n)
            p2 = (x, target.multiply(phi.images[g], n))
            if p1 != p2 and p1 in t.index and p2 in t.index:
                t.moves.append((p1, p2, g))
                t.merge(p1, p2)
    return t


def replay_moves(t: TensorPartition) -> Partition:
    """Rebuild the partition from the logged moves alone."""
    again = Partition(t.elements)
    for p1, p2, _ in t.moves:
        again.merge(p1, p2)
    return again


def tensor_class_of(t: TensorPartition, x, n: Word):
    pair = (x, tuple(n))
    if pair not in t.index:
        raise BoundError(
            f"{t.format(pair)} is beyond degree bound {t.degree_bound}")
    return t.find(pair)


def evaluation_map(X: MSet, phi: MonoidMorphism) -> Callable:
    """The comparison isomorphism f_!(X) -> N for X = M or X = f^*(N).

    m (x) n goes to phi(m) n for the regular action of M and n' (x) n to
    n' n for N acting on itself through phi.
    """
    target = phi.target
    if isinstance(X, RegularMSet) and X.monoid == phi.source:
        return lambda x, n: target.multiply(apply_morphism(phi, x), n)
    if (isinstance(X, RestrictedMSet) and X.morphism == phi
            and isinstance(X.base, RegularMSet) and X.base.monoid == target):
        return lambda x, n: target.multiply(x, n)
    raise MonoidToposError(f"no evaluation map known for {X!r}")


def check_evaluation_iso(t: TensorPartition, evaluate: Callable) -> Verdict:
    """Is ``evaluate`` constant on classes and a bijection onto N up to the bound?"""
    values: dict = {}
    for pair in t.elements:
        rep = t.find(pair)
        v = evaluate(*pair)
        if rep in values and values[rep] != v:
            return Verdict.reject(
                f"not class-constant: {t.format(pair)} gives {format_word(v)}, "
                f"{t.format(rep)} gives {format_word(values[rep])}",
                witness=(rep, pair), bound=t.degree_bound)
        values.setdefault(rep, v)
    seen: dict = {}
    for rep, v in values.items():
        if v in seen:
            return Verdict.reject(
                f"classes of {t.format(seen[v])} and {t.format(rep)} both evaluate to "
                f"{format_word(v)}", witness=(seen[v], rep), bound=t.degree_bound)
        seen[v] = rep
    expected = set(t.morphism.target.elements(t.degree_bound))
    if set(seen) != expected:
        missing = sorted(expected - set(seen), key=t.morphism.target.sort_key)
        return Verdict.reject(f"{len(missing)} element(s) of {t.morphism.target.name} "
                              f"not reached", witness=missing, bound=t.degree_bound)
    return Verdict.accept(
        f"{len(values)} classes, in bijection with {t.morphism.target.name} "
        f"up to degree {t.degree_bound}",
        witness={rep: v for rep, v in values.items()}, bound=t.degree_bound)


def alpha_formula(m: Word, n: Word, n2: Word, phi: MonoidMorphism) -> tuple[Word, Word]:
    """(m, n) (x) n2  |->  (phi(m) n2, n n2)."""
    target = phi.target
    return (target.multiply(apply_morphism(phi, m), n2), target.multiply(n, n2))


@dataclass
class ComparisonReport:
    """The map f_!(X x Y) -> f_!(X) x f_!(Y) on classes, up to a bound."""
    domain: TensorPartition
    left: TensorPartition
    right: TensorPartition
    mapping: dict
    representative_independent: bool
    injective: bool
    surjective: bool
    collisions: list = field(default_factory=list)
    inconsistencies: list = field(default_factory=list)
    missed: list = field(default_factory=list)

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


def comparison_map(X: MSet, Y: MSet, phi: MonoidMorphism, degree_bound: int) -> ComparisonReport:
    P = product(X, Y)
    tp = tensor(P, phi, degree_bound)
    tx = tensor(X, phi, degree_bound)
    ty = tensor(Y, phi, degree_bound)

    def image(pair):
        (x, y), n = pair
        return (tx.find((x, n)), ty.find((y, n)))

    mapping: dict = {}
    inconsistencies = []
    for pair in tp.elements:
        rep = tp.find(pair)
        img = image(pair)
        if rep not in mapping:
            mapping[rep] = img
        elif mapping[rep] != img:
            inconsistencies.append((rep, pair))

    by_image: dict = defaultdict(list)
    for rep, img in mapping.items():
        by_image[img].append(rep)
    collisions = [(img, reps) for img, reps in by_image.items() if len(reps) > 1]
    missed = [(a, b) for a in tx.representatives for b in ty.representatives
              if (a, b) not in by_image]
    return ComparisonReport(
        domain=tp, left=tx, right=ty, mapping=mapping,
        representative_independent=not inconsistencies,
        injective=not collisions, surjective=not missed,
        collisions=collisions, inconsistencies=inconsistencies, missed=missed)


def _cyclic_structure(phi: MonoidMorphism):
    target = phi.target
    if not target.is_free or len(target.generators) != 1:
        raise MonoidToposError("hom_set needs a free monoid on one generator as target")
    (a,) = target.generators
    killed, moving = [], []
    for g, w in phi.images.items():
        if w == ():
            killed.append(g)
        elif w == (a,):
            moving.append(g)
        else:
            raise MonoidToposError(f"hom_set needs generator images 1 or {a}; "
                                   f"{g} -> {format_word(w)}")
    if not moving:
        raise MonoidToposError(f"{phi.name} misses {a}")
    return a, killed, moving


@dataclass
class HomSet:
    """Hom_M(N, Y): a map g is determined by y = g(1).

    ``action[y]`` is g(a) = y.x for the generator(s) x with phi(x) = a;
    elements in ``frontier`` have that image beyond the enumeration bound.
    """
    source: MSet
    morphism: MonoidMorphism
    elements: list
    action: dict
    frontier: list
    bound: Optional[int] = None

    @property
    def complete(self) -> bool:
        return not self.frontier

    def as_nset(self, name: str = "") -> FiniteMSet:
        if not self.complete:
            raise BoundError(
                f"hom set truncated at degree {self.bound}: images of "
                f"{', '.join(self.source.format(y) for y in self.frontier[:3])} escape")
        (a,) = self.morphism.target.generators
        return FiniteMSet(self.morphism.target, self.elements, {a: self.action}, name)


def hom_set(Y: MSet, phi: MonoidMorphism, degree_bound: Optional[int] = None) -> HomSet:
    """Right M-set maps N -> Y, with N acted on through phi.

    N is generated by 1, and 1.g = 1 exactly for the generators g with
    phi(g) = 1, so g(1) = y must be fixed by those, and the generators
    sent to a must agree on y; the same must then hold along the orbit of y.
    """
    if Y.monoid != phi.source:
        raise MonoidToposError(f"{Y!r} is not an action of {phi.source.name}")
    a, killed, moving = _cyclic_structure(phi)
    if Y.finite:
        candidates = Y.elements(0)
        bound = None
    else:
        if degree_bound is None:
            raise BoundError("infinite carrier needs a degree bound")
        candidates = Y.elements(degree_bound)
        bound = degree_bound
    members = set(candidates)

    def locally_ok(y):
        if any(Y.act_gen(y, k) != y for k in killed):
            return False
        first = Y.act_gen(y, moving[0])
        return all(Y.act_gen(y, x) == first for x in moving[1:])

    admissible = {y for y in candidates if locally_ok(y)}
    # greatest subset closed under the action, as far as enumerated
    changed = True
    while changed:
        changed = False
        for y in list(admissible):
            for g in phi.source.generators:
                z = Y.act_gen(y, g)
                if z in members and z not in admissible:
                    admissible.discard(y)
                    changed = True
                    break
    elements = [y for y in candidates if y in admissible]
    action, frontier = {}, []
    for y in elements:
        z = Y.act_gen(y, moving[0])
        if z in admissible:
            action[y] = z
        else:
            frontier.append(y)
    return HomSet(Y, phi, elements, action, frontier, bound)


def pushforward(Z: MSet, phi: MonoidMorphism, name: str = "") -> FiniteMSet:
    """f_*(Z) for a finite M-set Z, as a finite N-set."""
    return hom_set(Z, phi).as_nset(name)


class Section:
    """A map of right M-sets N -> M, with N acted on through phi.

    N is generated by 1 as an M-set, so the map is fixed by ``base``, the
    image of 1: n = 1 . w with phi(w) = n gives s(n) = base . w. The lift
    w is built letter by letter from preimages of the generators of N;
    whether the result is independent of that choice is what
    :func:`check_retract` tests.
    """

    def __init__(self, name: str, phi: MonoidMorphism, base: Word, search_len: int = 4):
        surj = check_surjective_on_generators(phi, search_len)
        if not surj:
            raise MonoidToposError(f"cannot lift along {phi.name}: {surj.detail}")
        self.name = name
        self.phi = phi
        self.base = phi.source.normalize(phi.source.check_word(base))
        self.lifts = surj.witness

    def lift(self, n: Word) -> Word:
        return tuple(s for h in n for s in self.lifts[h])

    def __call__(self, n: Word) -> Word:
        return self.phi.source.multiply(self.base, self.lift(n))

    @property
    def images(self) -> dict[str, Word]:
        out = {"1": self.base}
        out.update({h: self((h,)) for h in self.phi.target.generators})
        return out


def check_retract(section: Union[Section, MonoidMorphism, Mapping[str, Word]],
                  phi: MonoidMorphism, degree_bound: int) -> Verdict:
    """N is a retract of M as right M-sets: phi(s(n)) = n and s(n.m) = s(n).m.

    ``section`` is a :class:`Section`, or a generator map N -> M extended
    multiplicatively (which sends 1 to 1). Both conditions are tested on
    all normal forms of N up to the bound and all generators of M.
    """
    if isinstance(section, Mapping):
        section = MonoidMorphism("section", phi.target, phi.source, section)
    M, N = phi.source, phi.target
    for n in N.elements(degree_bound):
        s = section(n)
        back = apply_morphism(phi, s)
        if back != n:
            return Verdict.reject(
                f"{phi.name}({section.name}({format_word(n)})) = {format_word(back)}",
                witness=("section", n, back), bound=degree_bound)
        for g in M.generators:
            lhs = section(N.multiply(n, phi.images[g]))
            rhs = M.multiply(s, (g,))
            if lhs != rhs:
                return Verdict.reject(
                    f"{section.name}({format_word(n)} . {g}) = {format_word(lhs)} but "
                    f"{section.name}({format_word(n)}) . {g} = {format_word(rhs)}",
                    witness=("equivariance", n, g, lhs, rhs), bound=degree_bound)
    return Verdict.accept(
        f"{phi.name} o {section.name} = id and {section.name} equivariant up to degree "
        f"{degree_bound}", bound=degree_bound)


def check_indecomposable(X: MSet, degree_bound: int) -> Verdict:
    part = components(X, degree_bound)
    if len(part) == 1:
        return Verdict.accept(f"1 component up to degree {degree_bound}",
                              witness=part.representatives, bound=degree_bound)
    return Verdict.reject(f"{len(part)} components up to degree {degree_bound}",
                          witness=part.representatives, bound=degree_bound)


def count_homs(X: MSet, Y: MSet) -> int:
    return len(equivariant_maps(X, Y))
