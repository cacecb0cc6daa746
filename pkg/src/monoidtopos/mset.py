"""
Right actions of finitely presented monoids (right M-sets).

Every carrier carries a degree function so that it can be enumerated up to
a bound; actions advance the degree by at most one per generator, which
keeps bounded enumeration coherent with the action.  Infinite carriers are
only ever inspected through such bounded enumerations, so every negative
statement computed here (two elements *not* connected, say) is qualified
by the bound it was computed at.
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .errors import ActionMismatchError, MonoidToposError, ParseError
from .monoid import MonoidMorphism, MonoidPresentation
from .rewriting import Word, format_word, parse_word
from .verdict import Verdict


class MSet:
    """Base class: a right action of ``monoid`` on a degree-graded carrier."""

    #: presentation whose normal forms make up the carrier, if any
    word_monoid: Optional[MonoidPresentation] = None
    finite = False
    kind = "abstract"

    def __init__(self, monoid: MonoidPresentation, name: str = ""):
        self.monoid = monoid
        self.name = name

    def act_gen(self, x, g: str):
        raise NotImplementedError

    def act(self, x, w: Word):
        for g in w:
            x = self.act_gen(x, g)
        return x

    def degree(self, x) -> int:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def elements(self, bound: int) -> list:
        """All elements of degree <= bound, in a fixed deterministic order."""
        raise NotImplementedError

    def format(self, x) -> str:
        return str(x)

    def parse_element(self, text: str):
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name or '?'} over {self.monoid.name}>"


class RegularMSet(MSet):
    """The monoid acting on its own normal forms by right multiplication."""

    kind = "regular"

    def __init__(self, monoid, name=""):
        super().__init__(monoid, name or monoid.name)
        self.word_monoid = monoid

    def act_gen(self, x, g):
        return self.monoid.multiply(x, (g,))

    def act(self, x, w):
        return self.monoid.multiply(x, w)

    def degree(self, x):
        return len(x)

    def contains(self, x):
        return (isinstance(x, tuple) and all(g in self.monoid.generators for g in x)
                and self.monoid.normalize(x) == x)

    def elements(self, bound):
        return self.monoid.elements(bound)

    def format(self, x):
        return format_word(x)

    def parse_element(self, text):
        return self.monoid.normalize(self.monoid.check_word(parse_word(text)))


class RestrictedMSet(MSet):
    """``base`` (an action of ``morphism.target``) viewed as an action of its source."""

    kind = "restricted"

    def __init__(self, base: MSet, morphism: MonoidMorphism, name=""):
        if base.monoid != morphism.target:
            raise ActionMismatchError(
                f"{base!r} is not an action of {morphism.target.name}")
        super().__init__(morphism.source, name)
        self.base = base
        self.morphism = morphism
        self.word_monoid = base.word_monoid
        self.finite = base.finite

    def act_gen(self, x, g):
        return self.base.act(x, self.morphism.images[g])

    def degree(self, x):
        return self.base.degree(x)

    def contains(self, x):
        return self.base.contains(x)

    def elements(self, bound):
        return self.base.elements(bound)

    def format(self, x):
        return self.base.format(x)

    def parse_element(self, text):
        return self.base.parse_element(text)


def _split_pair(text: str) -> tuple[str, str]:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError(f"expected a pair '(u, v)', got {text!r}")
    inner = text[1:-1]
    depth = 0
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return inner[:i], inner[i + 1:]
    raise ParseError(f"expected a pair '(u, v)', got {text!r}")


class ProductMSet(MSet):
    """Pairs with the diagonal action; degree of a pair is the max of the two."""

    kind = "product"

    def __init__(self, left: MSet, right: MSet, name=""):
        if left.monoid != right.monoid:
            raise ActionMismatchError(
                f"cannot form product of actions of {left.monoid.name} "
                f"and {right.monoid.name}")
        super().__init__(left.monoid, name)
        self.left = left
        self.right = right
        self.finite = left.finite and right.finite

    def act_gen(self, x, g):
        return (self.left.act_gen(x[0], g), self.right.act_gen(x[1], g))

    def act(self, x, w):
        return (self.left.act(x[0], w), self.right.act(x[1], w))

    def degree(self, x):
        return max(self.left.degree(x[0]), self.right.degree(x[1]))

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) == 2
                and self.left.contains(x[0]) and self.right.contains(x[1]))

    def elements(self, bound):
        lefts = self.left.elements(bound)
        rights = self.right.elements(bound)
        ld = [self.left.degree(a) for a in lefts]
        rd = [self.right.degree(b) for b in rights]
        indexed = [(max(ld[i], rd[j]), i, j)
                   for i in range(len(lefts)) for j in range(len(rights))]
        indexed.sort()
        return [(lefts[i], rights[j]) for _, i, j in indexed]

    def format(self, x):
        return f"({self.left.format(x[0])}, {self.right.format(x[1])})"

    def parse_element(self, text):
        a, b = _split_pair(text)
        return (self.left.parse_element(a), self.right.parse_element(b))


class CoproductMSet(MSet):
    """Disjoint union; elements are tagged ``(index, element)``."""

    kind = "coproduct"

    def __init__(self, parts: Sequence[MSet], name=""):
        parts = list(parts)
        if not parts:
            raise MonoidToposError("coproduct needs at least one summand")
        for p in parts[1:]:
            if p.monoid != parts[0].monoid:
                raise ActionMismatchError("summands act by different monoids")
        super().__init__(parts[0].monoid, name)
        self.parts = parts
        self.finite = all(p.finite for p in parts)

    def act_gen(self, x, g):
        i, y = x
        return (i, self.parts[i].act_gen(y, g))

    def degree(self, x):
        return self.parts[x[0]].degree(x[1])

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], int)
                and 0 <= x[0] < len(self.parts) and self.parts[x[0]].contains(x[1]))

    def elements(self, bound):
        tagged = []
        for i, p in enumerate(self.parts):
            tagged.extend((p.degree(y), i, k, y) for k, y in enumerate(p.elements(bound)))
        tagged.sort(key=lambda t: t[:3])
        return [(i, y) for _, i, _, y in tagged]

    def format(self, x):
        return f"in{x[0] + 1}({self.parts[x[0]].format(x[1])})"


class FiniteMSet(MSet):
    """An explicitly tabulated finite action; every element has degree 0.

    ``table[g][s]`` is ``s . g``. The table is checked against every
    relation of the acting monoid at construction.
    """

    kind = "finite"
    finite = True

    def __init__(self, monoid, elements: Iterable[Hashable],
                 table: Mapping[str, Mapping[Hashable, Hashable]], name=""):
        super().__init__(monoid, name)
        self._elements = list(elements)
        if len(set(self._elements)) != len(self._elements):
            raise MonoidToposError("repeated element in finite carrier")
        members = self._members = set(self._elements)
        self.table = {}
        for g in monoid.generators:
            if g not in table:
                raise MonoidToposError(f"no action given for generator {g!r}")
            row = dict(table[g])
            for s in self._elements:
                if s not in row or row[s] not in members:
                    raise MonoidToposError(f"action of {g} on {s!r} is undefined")
            self.table[g] = row
        for s in self._elements:
            for u, v in monoid.relations:
                if self.act(s, u) != self.act(s, v):
                    raise MonoidToposError(
                        f"relation {format_word(u)} = {format_word(v)} fails on {s!r}")

    def act_gen(self, x, g):
        return self.table[g][x]

    def degree(self, x):
        return 0

    def contains(self, x):
        return x in self._members

    def elements(self, bound):
        return list(self._elements)

    def parse_element(self, text):
        text = text.strip()
        for s in self._elements:
            if str(s) == text:
                return s
        raise ParseError(f"{text!r} is not an element of {self.name or 'this set'}")


def regular(monoid: MonoidPresentation, name: str = "") -> RegularMSet:
    return RegularMSet(monoid, name)


def point(monoid: MonoidPresentation, name: str = "") -> FiniteMSet:
    return FiniteMSet(monoid, ["*"], {g: {"*": "*"} for g in monoid.generators}, name)


def product(X: MSet, Y: MSet, name: str = "") -> ProductMSet:
    return ProductMSet(X, Y, name)


def coproduct(*parts: MSet, name: str = "") -> CoproductMSet:
    return CoproductMSet(parts, name)


def restrict_scalars(Y: MSet, m: MonoidMorphism, name: str = "") -> RestrictedMSet:
    """Pull an action of ``m.target`` back to an action of ``m.source``."""
    return RestrictedMSet(Y, m, name)


class Partition:
    """Union-find over an ordered list of elements.

    The representative of a class is its earliest member in the given
    order, so class ids do not depend on merge order.
    """

    def __init__(self, elements: Sequence[Hashable]):
        self.elements = list(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        self._ds = DisjointSet(self.elements)
        self._reps: Optional[dict] = None

    def __contains__(self, x):
        return x in self.index

    def merge(self, a, b) -> bool:
        merged = self._ds.merge(a, b)
        if merged:
            self._reps = None
        return merged

    def _representatives(self) -> dict:
        if self._reps is None:
            reps = {}
            best = {}
            for x in self.elements:
                root = self._ds[x]
                best.setdefault(root, x)
                reps[x] = best[root]
            self._reps = reps
        return self._reps

    def find(self, x):
        if x not in self.index:
            raise KeyError(x)
        return self._representatives()[x]

    def connected(self, a, b) -> bool:
        return self.find(a) == self.find(b)

    @property
    def classes(self) -> list[list]:
        groups: dict = {}
        for x, r in self._representatives().items():
            groups.setdefault(r, []).append(x)
        return sorted(groups.values(), key=lambda c: self.index[c[0]])

    @property
    def representatives(self) -> list:
        return [c[0] for c in self.classes]

    def __len__(self):
        return len(self.classes)


class ComponentPartition(Partition):
    """Connected components of an M-set, computed up to a degree bound.

    Merged elements are genuinely connected. Elements left apart are only
    "separated up to degree ``degree_bound``".
    """

    def __init__(self, mset: MSet, degree_bound: int):
        super().__init__(mset.elements(degree_bound))
        self.mset = mset
        self.degree_bound = degree_bound


def components(X: MSet, degree_bound: int) -> ComponentPartition:
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    part = ComponentPartition(X, degree_bound)
    for x in part.elements:
        # finite carriers are enumerated whole, so every edge is available
        if not X.finite and X.degree(x) >= degree_bound:
            continue
        for g in X.monoid.generators:
            y = X.act_gen(x, g)
            if y in part.index:
                part.merge(x, y)
    return part


def check_closed(X: MSet, p: Callable, degree_bound: int) -> Verdict:
    """Is {x : p(x)} closed under the action, on all elements of degree <= bound?

    Membership of x.g is evaluated exactly whatever its degree.
    """
    name = getattr(p, "name", "predicate")
    for x in X.elements(degree_bound):
        if not p(x):
            continue
        for g in X.monoid.generators:
            y = X.act_gen(x, g)
            if not p(y):
                return Verdict.reject(
                    f"{name}: {X.format(x)} . {g} = {X.format(y)} leaves the subset",
                    witness=(x, g, y), bound=degree_bound)
    return Verdict.accept(f"{name} closed under the action", bound=degree_bound)


def check_partition(X: MSet, preds: Sequence[Callable], degree_bound: int) -> Verdict:
    """Exactly one predicate holds on every element of degree <= bound."""
    names = [getattr(p, "name", f"#{i}") for i, p in enumerate(preds)]
    for x in X.elements(degree_bound):
        holding = [n for n, p in zip(names, preds) if p(x)]
        if len(holding) != 1:
            problem = "uncovered" if not holding else "in " + ", ".join(holding)
            return Verdict.reject(f"{X.format(x)} {problem}", witness=(x, holding),
                                  bound=degree_bound)
    return Verdict.accept(f"{' | '.join(names)} partition the carrier", bound=degree_bound)


def all_finite_msets(monoid: MonoidPresentation, size: int) -> list[FiniteMSet]:
    """Every action of ``monoid`` on {0, ..., size-1} (not up to isomorphism)."""
    carrier = list(range(size))
    gens = monoid.generators
    maps = list(iproduct(carrier, repeat=size))
    found = []
    for choice in iproduct(maps, repeat=len(gens)):
        table = {g: dict(zip(carrier, f)) for g, f in zip(gens, choice)}
        ok = True
        for s in carrier:
            for u, v in monoid.relations:
                a, b = s, s
                for g in u:
                    a = table[g][a]
                for g in v:
                    b = table[g][b]
                if a != b:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(FiniteMSet(monoid, carrier, table))
    return found


def equivariant_maps(X: MSet, Y: MSet) -> list[dict]:
    """Brute-force list of action-preserving maps between finite M-sets."""
    if X.monoid != Y.monoid:
        raise ActionMismatchError("maps between actions of different monoids")
    if not (X.finite and Y.finite):
        raise MonoidToposError("equivariant maps are only enumerated between finite sets")
    xs = X.elements(0)
    ys = Y.elements(0)
    maps = []
    for values in iproduct(ys, repeat=len(xs)):
        h = dict(zip(xs, values))
        if all(h[X.act_gen(x, g)] == Y.act_gen(h[x], g)
               for x in xs for g in X.monoid.generators):
            maps.append(h)
    return maps
