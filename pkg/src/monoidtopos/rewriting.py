"""
String rewriting over a finite generator alphabet.

Words are tuples of generator tokens; the empty tuple is the identity.
Rules are oriented so that every step strictly decreases the word in the
length-then-lexicographic order, hence every reduction sequence halts.
Confluence is only *checked* here (critical pairs), never completed.

    >>> rules = orient_relations([(("e", "e"), ("e",)), (("x", "e"), ("x",))])
    >>> normalize(("x", "x", "e"), rules)
    ('x', 'x')
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple

Word = Tuple[str, ...]

EMPTY: Word = ()


def parse_word(text: str) -> Word:
    """Whitespace-separated tokens; the literal ``1`` is the empty word."""
    tokens = text.split()
    return tuple(t for t in tokens if t != "1")


def format_word(w: Word) -> str:
    return " ".join(w) if w else "1"


def shortlex_key(w: Word, alphabet: Optional[Sequence[str]] = None):
    if alphabet is None:
        return (len(w), w)
    index = {g: i for i, g in enumerate(alphabet)}
    return (len(w), tuple(index.get(g, len(index)) for g in w))


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        if not self.lhs:
            raise ValueError("rewrite rule needs a nonempty left-hand side")
        if shortlex_key(self.rhs) >= shortlex_key(self.lhs):
            raise ValueError(
                f"rule {self} does not decrease in length-lex order")

    def __str__(self):
        return f"{format_word(self.lhs)} -> {format_word(self.rhs)}"


def orient(u: Word, v: Word) -> Optional[RewriteRule]:
    """Orient the equation u = v; None when both sides coincide."""
    if u == v:
        return None
    if shortlex_key(u) > shortlex_key(v):
        return RewriteRule(u, v)
    return RewriteRule(v, u)


def orient_relations(relations: Iterable[Tuple[Word, Word]]) -> Tuple[RewriteRule, ...]:
    rules = []
    for u, v in relations:
        rule = orient(tuple(u), tuple(v))
        if rule is not None and rule not in rules:
            rules.append(rule)
    return tuple(rules)


def _find_at(w: Word, i: int, lhs: Word) -> bool:
    return w[i:i + len(lhs)] == lhs


def reduce_once(w: Word, rules: Sequence[RewriteRule]) -> Optional[Word]:
    """Apply the first rule matching at the leftmost position, or None."""
    w = tuple(w)
    for i in range(len(w)):
        for rule in rules:
            if _find_at(w, i, rule.lhs):
                return w[:i] + rule.rhs + w[i + len(rule.lhs):]
    return None


@lru_cache(maxsize=65536)
def _normalize(w: Word, rules: Tuple[RewriteRule, ...]) -> Word:
    while True:
        nxt = reduce_once(w, rules)
        if nxt is None:
            return w
        w = nxt


def normalize(w: Word, rules: Sequence[RewriteRule]) -> Word:
    return _normalize(tuple(w), tuple(rules))


def is_irreducible(w: Word, rules: Sequence[RewriteRule]) -> bool:
    return reduce_once(w, rules) is None


@dataclass(frozen=True)
class CriticalPair:
    overlap: Word
    left_result: Word
    right_result: Word
    joinable: bool

    def __str__(self):
        status = "joinable" if self.joinable else "NOT joinable"
        return (f"{format_word(self.overlap)}: {format_word(self.left_result)}"
                f" / {format_word(self.right_result)} ({status})")


def critical_pairs(rules: Sequence[RewriteRule]) -> list[CriticalPair]:
    """All overlap and inclusion ambiguities between left-hand sides."""
    rules = tuple(rules)
    pairs = []

    def add(overlap, left, right):
        joinable = normalize(left, rules) == normalize(right, rules)
        pairs.append(CriticalPair(overlap, left, right, joinable))

    for i, r1 in enumerate(rules):
        for j, r2 in enumerate(rules):
            l1, l2 = r1.lhs, r2.lhs
            # proper overlaps: suffix of l1 equals prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    add(l1 + l2[k:], r1.rhs + l2[k:], l1[:-k] + r2.rhs)
            # inclusion of l2 inside l1
            if i != j and len(l2) <= len(l1):
                for p in range(len(l1) - len(l2) + 1):
                    if _find_at(l1, p, l2):
                        add(l1, r1.rhs, l1[:p] + r2.rhs + l1[p + len(l2):])
    return pairs


def is_locally_confluent(rules: Sequence[RewriteRule]) -> bool:
    return all(cp.joinable for cp in critical_pairs(rules))


def enumerate_normal_forms(rules: Sequence[RewriteRule], alphabet: Sequence[str],
                           max_len: int) -> frozenset:
    """Irreducible words of length <= max_len.

    Subwords of irreducible words are irreducible, so extending the
    irreducible words of length k by one letter reaches all of length k+1.
    """
    rules = tuple(rules)
    layer = [EMPTY]
    found = {EMPTY}
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for g in alphabet:
                v = w + (g,)
                # only a rule ending at the new letter can fire
                if not any(v[len(v) - len(r.lhs):] == r.lhs for r in rules
                           if len(r.lhs) <= len(v)):
                    nxt.append(v)
        found.update(nxt)
        layer = nxt
    return frozenset(found)
