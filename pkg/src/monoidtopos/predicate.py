"""
Closed-form predicates on M-set carriers.

Grammar (``pred NAME on MSET = <expr>`` in config files)::

    expr    := conj ("or" conj)*
    conj    := neg ("and" neg)*
    neg     := "not" neg | "(" expr ")" | "true" | "false" | cmp
    cmp     := term ("==" | "=" | "!=") term | term "matches" pattern
    term    := factor ("*" factor)*
    factor  := "fst" | "snd" | "it" | MORPHISM "(" term ")" | word
    pattern := atom+        atom := GEN ["^" exp] | "1"
    exp     := INT | VAR | "(" VAR ["+" INT] ")"

Terms denote normal forms. ``matches`` compares the expanded pattern with
the normal form letter by letter. Exponent variables are existentially
quantified over the whole predicate and shared between its parts, so

    (fst matches x^(n+1)) and (snd matches a^n)

is the set {(x^(k+1), a^k) : k >= 0}.
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Callable, Mapping, Optional

from .monoid import MonoidMorphism, MonoidPresentation
from .mset import MSet, ProductMSet
from .rewriting import Word
from .syntax import Cursor

KEYWORDS = {"fst", "snd", "it", "and", "or", "not", "matches", "true", "false"}

TermFn = Callable[[object], Word]


class _Term:
    def __init__(self, fn: TermFn, monoid: Optional[MonoidPresentation], literal: bool = False):
        self.fn = fn
        self.monoid = monoid
        self.literal = literal


def _unify(cur, tok, a: _Term, b: _Term) -> Optional[MonoidPresentation]:
    if a.monoid is not None and b.monoid is not None and a.monoid != b.monoid:
        cur.error(f"cannot combine words of {a.monoid.name} and {b.monoid.name}", tok)
    return a.monoid or b.monoid


def _in(cur, tok, t: _Term, monoid: Optional[MonoidPresentation]) -> TermFn:
    """Coerce a term into ``monoid``: literals are checked and normalized."""
    if monoid is None or not t.literal:
        return t.fn
    w = t.fn(None)
    for g in w:
        if g not in monoid.generators:
            cur.error(f"{g!r} is not a generator of {monoid.name}", tok)
    nf = monoid.normalize(w)
    return lambda x: nf


class _Compiler:
    def __init__(self, cur: Cursor, mset: MSet, morphisms: Mapping[str, MonoidMorphism]):
        self.cur = cur
        self.mset = mset
        self.morphisms = morphisms
        self.matched: list[TermFn] = []
        self.variables: list[str] = []

    # boolean layer; compiled functions take (element, env)

    def expr(self):
        parts = [self.conj()]
        while self.cur.accept("or"):
            parts.append(self.conj())
        if len(parts) == 1:
            return parts[0]
        return lambda x, env: any(p(x, env) for p in parts)

    def conj(self):
        parts = [self.neg()]
        while self.cur.accept("and"):
            parts.append(self.neg())
        if len(parts) == 1:
            return parts[0]
        return lambda x, env: all(p(x, env) for p in parts)

    def neg(self):
        cur = self.cur
        if cur.accept("not"):
            inner = self.neg()
            return lambda x, env: not inner(x, env)
        if cur.accept("("):
            inner = self.expr()
            cur.expect(")")
            return inner
        if cur.accept("true"):
            return lambda x, env: True
        if cur.accept("false"):
            return lambda x, env: False
        return self.cmp()

    def cmp(self):
        cur = self.cur
        left = self.term()
        tok = cur.peek()
        if cur.accept("matches"):
            return self.pattern(left)
        if cur.accept("==") or cur.accept("="):
            negate = False
        elif cur.accept("!="):
            negate = True
        else:
            cur.error("expected '==', '!=' or 'matches'")
        right = self.term()
        monoid = _unify(cur, tok, left, right)
        # with no monoid in sight both sides are literals, compared as free words
        lf, rf = _in(cur, tok, left, monoid), _in(cur, tok, right, monoid)
        return lambda x, env: (lf(x) == rf(x)) != negate

    # word layer

    def term(self) -> _Term:
        cur = self.cur
        t = self.factor()
        while cur.at("*"):
            tok = cur.next()
            u = self.factor()
            monoid = _unify(cur, tok, t, u)
            f, g = _in(cur, tok, t, monoid), _in(cur, tok, u, monoid)
            if monoid is None:
                w = f(None) + g(None)
                t = _Term(lambda x, w=w: w, None, literal=True)
            else:
                t = _Term(lambda x, f=f, g=g, m=monoid: m.multiply(f(x), g(x)), monoid)
        return t

    def factor(self) -> _Term:
        cur = self.cur
        tok = cur.peek()
        if tok.kind == "ident" and tok.value in ("fst", "snd"):
            cur.next()
            X = self.mset
            if not isinstance(X, ProductMSet):
                cur.error(f"'{tok.value}' needs a product carrier", tok)
            side = X.left if tok.value == "fst" else X.right
            if side.word_monoid is None:
                cur.error(f"'{tok.value}' is not word-valued on {X.name or 'this carrier'}", tok)
            i = 0 if tok.value == "fst" else 1
            return _Term(lambda x, i=i: x[i], side.word_monoid)
        if tok.kind == "ident" and tok.value == "it":
            cur.next()
            if self.mset.word_monoid is None:
                cur.error("'it' needs a carrier of words", tok)
            return _Term(lambda x: x, self.mset.word_monoid)
        if tok.kind == "ident" and cur.at("(", 1):
            cur.next()
            if tok.value not in self.morphisms:
                cur.error(f"unknown morphism {tok.value!r}", tok)
            m = self.morphisms[tok.value]
            cur.expect("(")
            arg = self.term()
            cur.expect(")")
            if arg.monoid is not None and arg.monoid != m.source:
                cur.error(f"{m.name} expects a word of {m.source.name}", tok)
            f = _in(cur, tok, arg, m.source)
            return _Term(lambda x, f=f, m=m: m(f(x)), m.target)
        symbols = []
        while True:
            t = cur.peek()
            if t.kind == "ident" and t.value not in KEYWORDS and not cur.at("(", 1):
                symbols.append(t.value)
            elif t.kind == "int" and t.value == "1":
                pass
            else:
                break
            cur.next()
        if cur.peek() is tok:
            cur.error("expected a term")
        w = tuple(symbols)
        return _Term(lambda x, w=w: w, None, literal=True)

    def pattern(self, subject: _Term):
        cur = self.cur
        atoms = []  # (generator, constant, variable or None)
        start = cur.peek()
        while True:
            tok = cur.peek()
            if tok.kind == "int" and tok.value == "1":
                cur.next()
                continue
            if tok.kind != "ident" or tok.value in KEYWORDS:
                break
            cur.next()
            gen = tok.value
            if subject.monoid is not None and gen not in subject.monoid.generators:
                cur.error(f"{gen!r} is not a generator of {subject.monoid.name}", tok)
            const, var = 1, None
            if cur.accept("^"):
                const, var = self.exponent()
            atoms.append((gen, const, var))
        if cur.peek() is start:
            cur.error("expected a pattern")
        for _, _, var in atoms:
            if var is not None and var not in self.variables:
                self.variables.append(var)
        if subject.literal:
            subject = _Term(subject.fn, subject.monoid)
        fn = subject.fn
        self.matched.append(fn)

        def matches(x, env):
            w = fn(x)
            pos = 0
            for gen, const, var in atoms:
                count = const + (env[var] if var is not None else 0)
                if w[pos:pos + count] != (gen,) * count:
                    return False
                pos += count
            return pos == len(w)
        return matches

    def exponent(self):
        cur = self.cur
        tok = cur.peek()
        if tok.kind == "int":
            cur.next()
            return int(tok.value), None
        if tok.kind == "ident" and tok.value not in KEYWORDS:
            cur.next()
            return 0, tok.value
        if cur.accept("("):
            t = cur.peek()
            if t.kind == "int":
                cur.next()
                cur.expect(")")
                return int(t.value), None
            var = cur.ident("exponent variable").value
            const = 0
            if cur.accept("+"):
                k = cur.peek()
                if k.kind != "int":
                    cur.error("expected an integer")
                cur.next()
                const = int(k.value)
            cur.expect(")")
            return const, var
        cur.error("expected an exponent")


class Predicate:
    """A compiled predicate, callable on elements of the carrier it was declared on."""

    def __init__(self, name: str, mset: MSet, source: str, body, matched, variables):
        self.name = name
        self.mset = mset
        self.source = source
        self._body = body
        self._matched = matched
        self.variables = tuple(variables)

    def __call__(self, x) -> bool:
        if not self.variables:
            return self._body(x, {})
        # Every pattern atom with a variable contributes at least that many
        # letters, so beyond the longest matched word nothing changes.
        longest = max(len(f(x)) for f in self._matched)
        values = range(longest + 2)
        for combo in iproduct(values, repeat=len(self.variables)):
            if self._body(x, dict(zip(self.variables, combo))):
                return True
        return False

    def __repr__(self):
        return f"pred {self.name} on {self.mset.name} = {self.source}"


def read_predicate_body(cur: Cursor, name: str, mset: MSet,
                        morphisms: Mapping[str, MonoidMorphism], source: str = "") -> Predicate:
    comp = _Compiler(cur, mset, morphisms)
    body = comp.expr()
    return Predicate(name, mset, source, body, comp.matched, comp.variables)


def compile_predicate(name: str, mset: MSet, text: str,
                      morphisms: Mapping[str, MonoidMorphism] = {}) -> Predicate:
    cur = Cursor.of(text)
    p = read_predicate_body(cur, name, mset, morphisms, text.strip())
    if not cur.at_eof():
        cur.error("unexpected trailing input")
    return p


def whole(mset: MSet, name: str = "whole") -> Predicate:
    return Predicate(name, mset, "true", lambda x, env: True, [], [])

