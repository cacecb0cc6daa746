import pytest

from monoidtopos.errors import ParseError
from monoidtopos.predicate import compile_predicate, whole
from monoidtopos.rewriting import parse_word


def w(text):
    return parse_word(text)


def pair(u, v):
    return (w(u), w(v))


@pytest.mark.parametrize("text,holds,fails", [
    ("fst matches x^(n+1) and snd matches a^n", [("x", "1"), ("x x x", "a a")],
     [("e x", "1"), ("x", "a")]),
    ("fst matches e x^n", [("e", "a"), ("e x x", "1")], [("x", "1"), ("1", "1")]),
    ("phi(fst) == snd", [("e x", "a"), ("e", "1")], [("x", "1")]),
    ("phi(fst) != a * snd", [("1", "1"), ("e x x", "a a")], [("e x", "1"), ("x x", "a")]),
    ("fst == x e", [("x", "1")], [("e x", "1")]),
    ("not (fst matches 1)", [("e", "1")], [("1", "a")]),
    ("false or snd matches a^2", [("1", "a a")], [("1", "a")]),
    ("fst matches x^k and snd matches a^k", [("x x", "a a"), ("1", "1")], [("x", "1")]),
])
def test_evaluation(P, phi, text, holds, fails):
    p = compile_predicate("p", P, text, {"phi": phi})
    for u, v in holds:
        assert p(pair(u, v)), (text, u, v)
    for u, v in fails:
        assert not p(pair(u, v)), (text, u, v)


def test_literals_normalized(P):
    # "x e" names the same element as "x"
    p = compile_predicate("p", P, "fst == x e")
    assert p(pair("x", "1"))


def test_it_on_regular(MM):
    p = compile_predicate("p", MM, "it matches e x^n")
    assert p(w("e x x")) and not p(w("x x"))


def test_whole(P):
    assert whole(P)(pair("e x", "a"))


def test_repr_keeps_source(P, phi):
    p = compile_predicate("B", P, "phi(fst) != a * snd", {"phi": phi})
    assert repr(p) == "pred B on P = phi(fst) != a * snd"


@pytest.mark.parametrize("text,column", [
    ("fst ==", 7),
    ("psi(fst) == snd", 1),
    ("fst matches q", 13),
    ("fst == snd", 5),
    ("fst matches x^", 15),
    ("fst < snd", 5),
])
def test_errors_have_positions(P, phi, text, column):
    with pytest.raises(ParseError) as info:
        compile_predicate("p", P, text, {"phi": phi})
    assert info.value.line == 1 and info.value.column == column


def test_fst_needs_product(MM):
    with pytest.raises(ParseError, match="product"):
        compile_predicate("p", MM, "fst == x")
