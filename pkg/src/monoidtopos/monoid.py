"""Finitely presented monoids and morphisms between them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import MonoidToposError, MorphismError, NonConfluentError, UnknownGeneratorError
from .rewriting import (
    RewriteRule, Word, critical_pairs, enumerate_normal_forms, format_word,
    normalize, orient_relations, shortlex_key)
from .syntax import Cursor
from .verdict import Verdict


@dataclass(frozen=True)
class MonoidPresentation:
    """A monoid given by generators and relations.

    The relations are oriented into rewrite rules and the rule set must be
    locally confluent; construction fails otherwise, so words_equal can be
    decided by comparing normal forms.
    """
    name: str
    generators: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...] = ()
    rules: tuple[RewriteRule, ...] = field(init=False, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise MonoidToposError(f"duplicate generator in {self.name}")
        if "1" in gens:
            raise MonoidToposError("'1' is reserved for the empty word")
        rels = tuple((tuple(u), tuple(v)) for u, v in self.relations)
        for u, v in rels:
            for g in u + v:
                if g not in gens:
                    raise UnknownGeneratorError(
                        f"relation {format_word(u)} = {format_word(v)} of {self.name} "
                        f"uses undeclared generator {g!r}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", rels)
        rules = orient_relations(rels)
        object.__setattr__(self, "rules", rules)
        for cp in critical_pairs(rules):
            if not cp.joinable:
                raise NonConfluentError(self.name, cp)

    @property
    def is_free(self) -> bool:
        return not self.rules

    def check_word(self, w: Word) -> Word:
        w = tuple(w)
        for g in w:
            if g not in self.generators:
                raise UnknownGeneratorError(f"{g!r} is not a generator of {self.name}")
        return w

    def normalize(self, w: Word) -> Word:
        return normalize(w, self.rules)

    def multiply(self, u: Word, v: Word) -> Word:
        return normalize(tuple(u) + tuple(v), self.rules)

    def words_equal(self, u: Word, v: Word) -> bool:
        return words_equal(self, u, v)

    def sort_key(self, w: Word):
        return shortlex_key(w, self.generators)

    def elements(self, max_len: int) -> list[Word]:
        """Normal forms of length <= max_len in shortlex order."""
        forms = enumerate_normal_forms(self.rules, self.generators, max_len)
        return sorted(forms, key=self.sort_key)

    def __str__(self):
        rels = ", ".join(f"{format_word(u)} = {format_word(v)}" for u, v in self.relations)
        return f"monoid {self.name} = < {', '.join(self.generators)} | {rels} >"


def words_equal(p: MonoidPresentation, u: Word, v: Word) -> bool:
    return p.normalize(u) == p.normalize(v)


def parse_presentation(text: str) -> MonoidPresentation:
    """Parse ``monoid M = < e, x | e e = e, x e = x >``."""
    cur = Cursor.of(text)
    p = read_presentation(cur)
    cur.expect_eof()
    return p


def read_presentation(cur: Cursor) -> MonoidPresentation:
    cur.expect("monoid")
    name = cur.ident("monoid name").value
    cur.expect("=")
    cur.expect("<")
    gens = []
    if not cur.at("|"):
        while True:
            gens.append(cur.ident("generator").value)
            if not cur.accept(","):
                break
    cur.expect("|")
    relations = []
    positions = []
    if not cur.at(">"):
        while True:
            positions.append(cur.peek())
            lhs = cur.word()
            cur.expect("=")
            rhs = cur.word()
            relations.append((lhs, rhs))
            if not cur.accept(","):
                break
    cur.expect(">")
    for tok, (lhs, rhs) in zip(positions, relations):
        for g in lhs + rhs:
            if g not in gens:
                raise UnknownGeneratorError(
                    f"{tok.line}:{tok.column}: undeclared generator {g!r} in relation "
                    f"{format_word(lhs)} = {format_word(rhs)}")
    return MonoidPresentation(name, tuple(gens), tuple(relations))


def check_morphism(source: MonoidPresentation, target: MonoidPresentation,
                   images: Mapping[str, Word]) -> Verdict:
    """Accept iff every relation of ``source`` holds in ``target`` after mapping generators."""
    missing = [g for g in source.generators if g not in images]
    if missing:
        raise MonoidToposError(f"no image given for generator(s) {', '.join(missing)}")
    extra = [g for g in images if g not in source.generators]
    if extra:
        raise UnknownGeneratorError(f"{extra[0]!r} is not a generator of {source.name}")
    for g, w in images.items():
        for s in w:
            if s not in target.generators:
                raise UnknownGeneratorError(
                    f"image of {g} uses undeclared generator {s!r} of {target.name}")

    def image(w):
        return target.normalize(tuple(s for g in w for s in images[g]))

    for lhs, rhs in source.relations:
        u, v = image(lhs), image(rhs)
        if u != v:
            return Verdict.reject(
                f"relation {format_word(lhs)} = {format_word(rhs)} maps to "
                f"{format_word(u)} != {format_word(v)}",
                witness=(lhs, rhs))
    return Verdict.accept("all relations preserved")


class MonoidMorphism:
    """A generator map between presentations, checked to respect relations."""

    def __init__(self, name: str, source: MonoidPresentation, target: MonoidPresentation,
                 images: Mapping[str, Word]):
        images = {g: tuple(w) for g, w in images.items()}
        verdict = check_morphism(source, target, images)
        if not verdict:
            raise MorphismError(verdict)
        self.name = name
        self.source = source
        self.target = target
        self.images = {g: target.normalize(images[g]) for g in source.generators}

    def __call__(self, w: Word) -> Word:
        return apply_morphism(self, w)

    def __eq__(self, other):
        return (isinstance(other, MonoidMorphism) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.images.items()))))

    def __repr__(self):
        body = ", ".join(f"{g} -> {format_word(w)}" for g, w in self.images.items())
        return f"morphism {self.name} : {self.source.name} -> {self.target.name} {{ {body} }}"

    @classmethod
    def identity(cls, p: MonoidPresentation, name: str = "id") -> "MonoidMorphism":
        return cls(name, p, p, {g: (g,) for g in p.generators})


def apply_morphism(m: MonoidMorphism, w: Word) -> Word:
    return m.target.normalize(tuple(s for g in w for s in m.images[g]))


def check_surjective_on_generators(m: MonoidMorphism, search_len: int) -> Verdict:
    """Look for a preimage of every target generator among short source words.

    Preimages of all generators make the morphism surjective, so an
    accepted verdict is exact. The witness maps each target generator to
    the shortlex-least source normal form hitting it.
    """
    witnesses: dict[str, Word] = {}
    candidates = m.source.elements(search_len)
    for g in m.target.generators:
        for w in candidates:
            if apply_morphism(m, w) == (g,):
                witnesses[g] = w
                break
        else:
            return Verdict.reject(
                f"{g} has no preimage of length <= {search_len}", witness=g,
                preimages=witnesses)
    detail = ", ".join(f"{g} = {m.name}({format_word(w)})" for g, w in witnesses.items())
    return Verdict.accept(detail, witness=witnesses)


def read_morphism(cur: Cursor, presentations: Mapping[str, MonoidPresentation]) -> MonoidMorphism:
    cur.expect("morphism")
    name = cur.ident("morphism name").value
    cur.expect(":")
    src_tok = cur.ident("source monoid")
    cur.expect("->")
    tgt_tok = cur.ident("target monoid")
    for tok in (src_tok, tgt_tok):
        if tok.value not in presentations:
            cur.error(f"unknown monoid {tok.value!r}", tok)
    cur.expect("{")
    images: dict[str, Word] = {}
    if not cur.at("}"):
        while True:
            gen = cur.ident("generator")
            if gen.value in images:
                cur.error(f"generator {gen.value!r} mapped twice", gen)
            cur.expect("->")
            images[gen.value] = cur.word()
            if not cur.accept(","):
                break
    cur.expect("}")
    return MonoidMorphism(name, presentations[src_tok.value], presentations[tgt_tok.value],
                          images)


def parse_morphism(text: str, presentations: Mapping[str, MonoidPresentation]) -> MonoidMorphism:
    """Parse ``morphism phi : M -> N { e -> 1, x -> a }``."""
    cur = Cursor.of(text)
    m = read_morphism(cur, presentations)
    cur.expect_eof()
    return m

