import pytest
from hypothesis import given, strategies as st

from monoidtopos.errors import (
    MorphismError, NonConfluentError, ParseError, UnknownGeneratorError)
from monoidtopos.monoid import (
    MonoidMorphism, apply_morphism, check_morphism, check_surjective_on_generators,
    parse_morphism, parse_presentation, words_equal)
from monoidtopos.rewriting import parse_word

from oracles import congruence_closure, words_up_to


def w(text):
    return parse_word(text)


def test_parse_M(M):
    assert M.name == "M"
    assert M.generators == ("e", "x")
    assert len(M.relations) == 2
    assert [str(r) for r in M.rules] == ["e e -> e", "x e -> x"]


def test_parse_N(N):
    assert N.generators == ("a",)
    assert N.relations == ()
    assert N.is_free


def test_non_confluent_rejected():
    with pytest.raises(NonConfluentError) as info:
        parse_presentation("monoid Bad = < a, b | a b = a, b a = b >")
    assert info.value.pair.overlap in (w("a b a"), w("b a b"))
    assert "not locally confluent" in str(info.value)


@pytest.mark.parametrize("text,line,column", [
    ("monoid M = < e, x | e e = e, x e >", 1, 34),
    ("monoid M < e | >", 1, 10),
    ("monoid M = < e, | >", 1, 17),
    ("monoid M = < e | e = e $ >", 1, 24),
])
def test_syntax_errors_carry_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_presentation(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_unknown_generator_in_relation():
    with pytest.raises(UnknownGeneratorError, match="'y'"):
        parse_presentation("monoid M = < e | e y = e >")


@pytest.mark.parametrize("u,v,expected", [
    ("x e", "x", True),
    ("x", "e x", False),
    ("e x e x", "e x x", True),
    ("1", "1", True),
])
def test_words_equal(M, u, v, expected):
    assert words_equal(M, w(u), w(v)) is expected


def test_words_equal_matches_congruence_closure(M):
    uf = congruence_closure(M.generators, M.relations, 4)
    assert (uf.find(w("x")) == uf.find(w("e x"))) is False
    assert (uf.find(w("x e")) == uf.find(w("x"))) is True


def test_apply_phi(phi):
    assert apply_morphism(phi, w("e x x x")) == w("a a a")
    assert apply_morphism(phi, ()) == ()


def test_apply_sigma_generator_map(M, N):
    s = MonoidMorphism("s", N, M, {"a": w("e x")})
    # (e x)(e x) = e (x e) x = e x x
    assert apply_morphism(s, w("a a")) == w("e x x")


def test_check_morphism(M, N):
    assert check_morphism(M, N, {"e": (), "x": ("a",)})
    bad = check_morphism(M, N, {"e": ("a",), "x": ("a",)})
    assert not bad
    assert bad.witness == (w("e e"), w("e"))
    assert "a a != a" in bad.detail
    assert check_morphism(N, N, {"a": ("a",)})
    with pytest.raises(MorphismError):
        MonoidMorphism("psi", M, N, {"e": ("a",), "x": ("a",)})


def test_check_morphism_undeclared_target_generator(M, N):
    with pytest.raises(UnknownGeneratorError):
        check_morphism(M, N, {"e": (), "x": ("b",)})


def test_surjectivity(phi, N):
    v = check_surjective_on_generators(phi, 1)
    assert v and v.witness == {"a": ("x",)}
    assert check_surjective_on_generators(MonoidMorphism.identity(N), 1)
    double = MonoidMorphism("double", N, N, {"a": w("a a")})
    rejected = check_surjective_on_generators(double, 4)
    assert not rejected and rejected.witness == "a"


def test_parse_morphism(M, N):
    m = parse_morphism("morphism phi : M -> N { e -> 1, x -> a }", {"M": M, "N": N})
    assert m.images == {"e": (), "x": ("a",)}
    with pytest.raises(ParseError):
        parse_morphism("morphism phi : M -> Q { e -> 1 }", {"M": M, "N": N})


def test_identity_accepted_for_any_presentation(M, N):
    for p in (M, N, parse_presentation("monoid Z2 = < t | t t = 1 >")):
        assert check_morphism(p, p, {g: (g,) for g in p.generators})


def test_phi_on_powers(M, phi):
    for n in range(11):
        assert apply_morphism(phi, ("e",) + ("x",) * n) == ("a",) * n
        assert apply_morphism(phi, ("x",) * n) == ("a",) * n


def test_apply_commutes_with_normalization(M, phi):
    for v in words_up_to(M.generators, 6):
        assert phi.target.normalize(tuple(s for g in v for s in phi.images[g])) \
            == apply_morphism(phi, M.normalize(v))


words_ex = st.lists(st.sampled_from(["e", "x"]), max_size=10).map(tuple)


@given(words_ex, words_ex)
def test_apply_is_multiplicative(phi, u, v):
    N = phi.target
    assert apply_morphism(phi, u + v) == N.multiply(apply_morphism(phi, u),
                                                   apply_morphism(phi, v))
