"""
Config files: one file declaring every named object a run refers to.

    monoid M = < e, x | e e = e, x e = x >
    monoid N = < a | >
    morphism phi : M -> N { e -> 1, x -> a }
    mset MM = regular M
    mset NN = restrict N along phi
    mset P = product MM NN
    pred B on P = phi(fst) != a * snd
    bound 6
    counterexample {
      along = phi
      section = sigma
      ...
    }

A statement starts on a line whose first word is one of the statement
keywords (outside braces); it may continue over following lines.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .errors import ConfigError, MorphismError, ParseError
from .functors import Section
from .monoid import MonoidMorphism, MonoidPresentation, read_morphism, read_presentation
from .mset import (
    FiniteMSet, MSet, ProductMSet, coproduct, point, product, regular, restrict_scalars)
from .predicate import Predicate, read_predicate_body
from .syntax import Cursor

STATEMENTS = ("monoid", "morphism", "section", "mset", "pred", "bound", "counterexample")
DEFAULT_BOUND = 6


@dataclass
class Counterexample:
    """Which declared objects play which role in the certification run."""
    along: MonoidMorphism
    section: Union[Section, MonoidMorphism]
    left: MSet
    right: MSet
    product: ProductMSet
    partition: list[Predicate]
    witnesses: list


@dataclass
class Config:
    text: str = ""
    presentations: dict[str, MonoidPresentation] = field(default_factory=dict)
    morphisms: dict[str, MonoidMorphism] = field(default_factory=dict)
    msets: dict[str, MSet] = field(default_factory=dict)
    sections: dict[str, Section] = field(default_factory=dict)
    predicates: dict[str, Predicate] = field(default_factory=dict)
    bound: int = DEFAULT_BOUND
    counterexample: Optional[Counterexample] = None
    path: Optional[str] = None

    @property
    def digest(self) -> str:
        return "sha256:" + hashlib.sha256(self.text.encode("utf-8")).hexdigest()

    def presentation(self, name: str) -> MonoidPresentation:
        try:
            return self.presentations[name]
        except KeyError:
            raise ConfigError(f"no monoid named {name!r}") from None

    def mset(self, name: str) -> MSet:
        try:
            return self.msets[name]
        except KeyError:
            raise ConfigError(f"no mset named {name!r}") from None

    def morphism(self, name: str) -> MonoidMorphism:
        try:
            return self.morphisms[name]
        except KeyError:
            raise ConfigError(f"no morphism named {name!r}") from None


def _statements(text: str):
    """Yield (chunk, first line number) per statement."""
    chunk: list[str] = []
    start = 1
    depth = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        code = line.split("#", 1)[0]
        words = code.split()
        if depth == 0 and words and words[0] in STATEMENTS:
            if chunk:
                yield "\n".join(chunk), start
            chunk, start = [], lineno
        elif depth == 0 and words and not chunk:
            raise ParseError(f"expected one of {', '.join(STATEMENTS)}", lineno,
                             len(line) - len(line.lstrip()) + 1)
        chunk.append(line)
        depth += code.count("{") - code.count("}")
    if chunk:
        yield "\n".join(chunk), start


def read_element(cur: Cursor, X: MSet):
    if isinstance(X, ProductMSet):
        cur.expect("(")
        a = read_element(cur, X.left)
        cur.expect(",")
        b = read_element(cur, X.right)
        cur.expect(")")
        return (a, b)
    if X.word_monoid is not None:
        tok = cur.peek()
        w = cur.word()
        try:
            return X.word_monoid.normalize(X.word_monoid.check_word(w))
        except Exception as exc:
            raise ParseError(str(exc), tok.line, tok.column) from None
    tok = cur.next()
    return X.parse_element(tok.value)


class _Reader:
    def __init__(self, config: Config):
        self.c = config

    def lookup(self, cur, table, what):
        tok = cur.ident(f"{what} name")
        if tok.value not in table:
            cur.error(f"unknown {what} {tok.value!r}", tok)
        return table[tok.value]

    def fresh(self, cur, table):
        tok = cur.ident("name")
        if tok.value in table:
            cur.error(f"{tok.value!r} declared twice", tok)
        return tok.value

    def statement(self, cur: Cursor, chunk: str = ""):
        c = self.c
        head = cur.peek()
        if head.value == "monoid":
            p = read_presentation(cur)
            if p.name in c.presentations:
                cur.error(f"monoid {p.name!r} declared twice", head)
            c.presentations[p.name] = p
        elif head.value == "morphism":
            try:
                m = read_morphism(cur, c.presentations)
            except MorphismError as exc:
                cur.error(str(exc), head)
            if m.name in c.morphisms:
                cur.error(f"morphism {m.name!r} declared twice", head)
            c.morphisms[m.name] = m
        elif head.value == "section":
            cur.next()
            name = self.fresh(cur, {**c.sections, **c.morphisms})
            cur.expect(":")
            src = self.lookup(cur, c.presentations, "monoid")
            cur.expect("->")
            tgt = self.lookup(cur, c.presentations, "monoid")
            cur.expect("along")
            phi_tok = cur.peek()
            phi = self.lookup(cur, c.morphisms, "morphism")
            if phi.source != tgt or phi.target != src:
                cur.error(f"{phi.name} does not go from {tgt.name} to {src.name}", phi_tok)
            cur.expect("{")
            cur.expect("1")
            cur.expect("->")
            base = cur.word()
            cur.expect("}")
            try:
                c.sections[name] = Section(name, phi, base)
            except Exception as exc:
                cur.error(str(exc), head)
        elif head.value == "mset":
            cur.next()
            name = self.fresh(cur, c.msets)
            cur.expect("=")
            c.msets[name] = self.mset_expr(cur, name)
        elif head.value == "pred":
            cur.next()
            name = self.fresh(cur, c.predicates)
            cur.expect("on")
            X = self.lookup(cur, c.msets, "mset")
            cur.expect("=")
            source = " ".join(chunk.split("#", 1)[0].split("=", 1)[1].split())
            c.predicates[name] = read_predicate_body(cur, name, X, c.morphisms, source)
        elif head.value == "bound":
            cur.next()
            tok = cur.peek()
            if tok.kind != "int":
                cur.error("expected an integer bound")
            cur.next()
            c.bound = int(tok.value)
        elif head.value == "counterexample":
            cur.next()
            c.counterexample = self.counterexample(cur)
        cur.expect_eof()

    def mset_expr(self, cur: Cursor, name: str) -> MSet:
        c = self.c
        kind = cur.ident("mset constructor")
        if kind.value == "regular":
            return regular(self.lookup(cur, c.presentations, "monoid"), name)
        if kind.value == "point":
            return point(self.lookup(cur, c.presentations, "monoid"), name)
        if kind.value == "restrict":
            tok = cur.ident("mset or monoid name")
            cur.expect("along")
            m = self.lookup(cur, c.morphisms, "morphism")
            if tok.value in c.msets:
                base = c.msets[tok.value]
            elif tok.value in c.presentations:
                base = regular(c.presentations[tok.value])
            else:
                cur.error(f"unknown mset or monoid {tok.value!r}", tok)
            try:
                return restrict_scalars(base, m, name)
            except Exception as exc:
                cur.error(str(exc), tok)
        if kind.value == "product":
            X = self.lookup(cur, c.msets, "mset")
            Y = self.lookup(cur, c.msets, "mset")
            try:
                return product(X, Y, name)
            except Exception as exc:
                cur.error(str(exc), kind)
        if kind.value == "coproduct":
            parts = [self.lookup(cur, c.msets, "mset")]
            while cur.peek().kind == "ident":
                parts.append(self.lookup(cur, c.msets, "mset"))
            return coproduct(*parts, name=name)
        if kind.value == "finite":
            return self.finite(cur, name)
        cur.error("expected regular, point, restrict, product, coproduct or finite", kind)

    def finite(self, cur: Cursor, name: str) -> FiniteMSet:
        monoid = self.lookup(cur, self.c.presentations, "monoid")
        cur.expect("{")
        elements: list[str] = []
        table: dict[str, dict] = {}

        def element():
            tok = cur.next()
            if tok.kind not in ("ident", "int"):
                cur.error("expected an element", tok)
            if tok.value not in elements:
                elements.append(tok.value)
            return tok.value

        while not cur.accept("}"):
            gen = cur.ident("generator")
            cur.expect("{")
            row = table.setdefault(gen.value, {})
            while not cur.accept("}"):
                s = element()
                cur.expect("->")
                row[s] = element()
                cur.accept(",")
        try:
            return FiniteMSet(monoid, elements, table, name)
        except Exception as exc:
            raise ConfigError(f"mset {name}: {exc}") from None

    def counterexample(self, cur: Cursor) -> Counterexample:
        c = self.c
        cur.expect("{")
        got: dict = {}
        while not cur.accept("}"):
            key = cur.ident("counterexample field")
            cur.expect("=")
            if key.value == "along":
                got[key.value] = self.lookup(cur, c.morphisms, "morphism")
            elif key.value == "section":
                got[key.value] = self.lookup(cur, {**c.morphisms, **c.sections}, "section")
            elif key.value in ("left", "right", "product"):
                got[key.value] = self.lookup(cur, c.msets, "mset")
            elif key.value == "partition":
                preds = [self.lookup(cur, c.predicates, "predicate")]
                while cur.accept(","):
                    preds.append(self.lookup(cur, c.predicates, "predicate"))
                got["partition"] = preds
            elif key.value == "witnesses":
                got["witnesses"] = key
                got["_witness_pos"] = cur.pos
                # parsed once the product is known
                depth = 0
                while not (depth == 0 and (cur.at("}") or (cur.peek().kind == "ident"
                                                           and cur.at("=", 1)))):
                    if cur.at_eof():
                        cur.error("unterminated counterexample block")
                    if cur.at("("):
                        depth += 1
                    elif cur.at(")"):
                        depth -= 1
                    cur.next()
            else:
                cur.error(f"unknown counterexample field {key.value!r}", key)
        for required in ("along", "section", "left", "right", "partition", "witnesses"):
            if required not in got:
                cur.error(f"counterexample block lacks {required!r}")
        P = got.get("product") or product(got["left"], got["right"], "product")
        if not (isinstance(P, ProductMSet) and P.left is got["left"] and P.right is got["right"]):
            cur.error("product must be the product of left and right")
        for p in got["partition"]:
            if p.mset is not P:
                cur.error(f"predicate {p.name} is not declared on {P.name}")
        end = cur.pos
        cur.pos = got["_witness_pos"]
        witnesses = [read_element(cur, P)]
        while cur.accept(","):
            witnesses.append(read_element(cur, P))
        cur.pos = end
        if len(witnesses) != 2:
            cur.error("exactly two witnesses expected", got["witnesses"])
        return Counterexample(got["along"], got["section"], got["left"], got["right"], P,
                              got["partition"], witnesses)


def parse_config(text: str, path: Optional[str] = None) -> Config:
    config = Config(text=text, path=path)
    reader = _Reader(config)
    for chunk, line in _statements(text):
        reader.statement(Cursor.of(chunk, line), chunk)
    return config


def bundled(name: str) -> Path:
    return Path(str(resources.files("monoidtopos") / "data" / name))


def load_config(path: str) -> Config:
    p = Path(path)
    if not p.exists() and bundled(path).exists():
        p = bundled(path)
    return parse_config(p.read_text(encoding="utf-8"), str(p))
