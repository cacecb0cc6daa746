import pytest

from monoidtopos.errors import ActionMismatchError, MonoidToposError
from monoidtopos.mset import (
    FiniteMSet, Partition, all_finite_msets, check_closed, check_partition, components,
    coproduct, equivariant_maps, point, product, regular, restrict_scalars)
from monoidtopos.predicate import compile_predicate
from monoidtopos.rewriting import parse_word

from oracles import words_up_to


def w(text):
    return parse_word(text)


def shape(m):
    """(starts with e, number of x) for a normal form of M."""
    return (m[:1] == ("e",), m.count("x"))


# hand-written membership oracles for the three blocks
def in_aprime(p):
    (e, k), j = shape(p[0]), len(p[1])
    return not e and k == j + 1


def in_asecond(p):
    (e, k), j = shape(p[0]), len(p[1])
    return e and k == j + 1


def in_b(p):
    return shape(p[0])[1] != len(p[1]) + 1


@pytest.fixture(scope="module")
def blocks(P, phi):
    morphs = {"phi": phi}
    return (compile_predicate("Aprime", P, "(fst matches x^(n+1)) and (snd matches a^n)", morphs),
            compile_predicate("Asecond", P, "(fst matches e x^(n+1)) and (snd matches a^n)",
                              morphs),
            compile_predicate("B", P, "phi(fst) != a * snd", morphs))


def test_product_action(P):
    assert P.act_gen((w("x"), ()), "x") == (w("x x"), w("a"))
    assert P.act_gen((w("x"), ()), "e") == (w("x"), ())
    assert P.act((w("e"), w("a")), w("x x")) == (w("e x x"), w("a a a"))


def test_product_degree_is_max(P):
    assert P.degree((w("e x x"), w("a"))) == 3
    assert P.degree(((), ())) == 0


def test_product_rejects_mixed_monoids(MM, N):
    with pytest.raises(ActionMismatchError):
        product(MM, regular(N))


def test_restrict_scalars(NN, phi):
    assert NN.act_gen(w("a"), "e") == w("a")
    assert NN.act_gen(w("a"), "x") == w("a a")
    assert NN.monoid == phi.source


def test_restrict_finite(M, N, phi):
    # a swaps p and q; seen through phi, e fixes both and x swaps
    Y = FiniteMSet(N, ["p", "q"], {"a": {"p": "q", "q": "p"}})
    R = restrict_scalars(Y, phi)
    assert R.act_gen("p", "e") == "p"
    assert R.act_gen("p", "x") == "q"
    assert R.act("p", w("x e x")) == "p"


def test_finite_table_checked(M):
    # e must be idempotent: e swapping two points breaks e e = e
    with pytest.raises(MonoidToposError, match="relation"):
        FiniteMSet(M, [0, 1], {"e": {0: 1, 1: 0}, "x": {0: 0, 1: 1}})
    with pytest.raises(MonoidToposError, match="undefined"):
        FiniteMSet(M, [0], {"e": {}, "x": {0: 0}})


def test_coproduct(MM):
    C = coproduct(MM, MM, name="C")
    assert C.act_gen((1, w("x")), "x") == (1, w("x x"))
    assert C.format((0, w("e"))) == "in1(e)"
    assert len(C.elements(1)) == 6


def test_partition_representatives_are_earliest():
    p = Partition(list("abcd"))
    p.merge("d", "b")
    p.merge("c", "d")
    assert p.find("d") == "b"
    assert p.classes == [["a"], ["b", "c", "d"]]
    assert len(p) == 2


@pytest.mark.parametrize("which,bound,count", [("MM", 5, 1), ("NN", 5, 1), ("P", 1, 4)])
def test_component_counts(request, which, bound, count):
    # P at bound 1: only (1, 1) moves, joining (e, 1) and (x, a)
    assert len(components(request.getfixturevalue(which), bound)) == count


def test_witnesses_apart_in_product(P):
    part = components(P, 6)
    assert not part.connected((w("x"), ()), (w("e x"), ()))


def test_components_monotone_in_bound(P):
    # raising the bound can only merge classes of the old elements
    prev = components(P, 2)
    for d in range(3, 7):
        cur = components(P, d)
        for a in prev.elements:
            for b in prev.elements:
                if prev.connected(a, b):
                    assert cur.connected(a, b)
        prev = cur


def test_components_refine_the_partition(P, blocks):
    part = components(P, 6)
    for cls in part.classes:
        memberships = {tuple(p(x) for p in blocks) for x in cls}
        assert len(memberships) == 1


def test_action_coherence(P, M):
    for x in P.elements(3):
        for u in words_up_to(M.generators, 3):
            for v in words_up_to(M.generators, 2):
                assert P.act(P.act(x, u), v) == P.act(x, M.multiply(u, v))


def test_block_predicates_match_oracles(P, blocks):
    for x in P.elements(12):
        assert blocks[0](x) == in_aprime(x)
        assert blocks[1](x) == in_asecond(x)
        assert blocks[2](x) == in_b(x)


@pytest.mark.parametrize("index", [0, 1, 2])
def test_blocks_closed(P, blocks, index):
    assert check_closed(P, blocks[index], 8)


def test_closure_oracle_agrees(P, M):
    for oracle in (in_aprime, in_asecond, in_b):
        for x in P.elements(8):
            if oracle(x):
                assert all(oracle(P.act_gen(x, g)) for g in M.generators)


def test_not_closed_witness(P):
    p = compile_predicate("X", P, "fst == x")
    v = check_closed(P, p, 2)
    assert not v
    assert v.witness == ((w("x"), ()), "x", (w("x x"), w("a")))


def test_partition(P, blocks):
    assert check_partition(P, blocks, 8)
    v = check_partition(P, [blocks[0], blocks[2]], 2)
    assert not v
    assert v.witness == ((w("e x"), ()), [])
    both = compile_predicate("T", P, "true")
    assert not check_partition(P, [blocks[0], both], 1)


def test_all_finite_msets_over_N(N):
    # an N-action on k points is any self-map
    assert [len(all_finite_msets(N, k)) for k in range(4)] == [1, 1, 4, 27]


def test_all_finite_msets_over_M(M):
    # brute force over pairs (e, x) of self-maps satisfying e e = e, x e = x
    from itertools import product as ip
    for k in range(1, 4):
        expected = 0
        for e in ip(range(k), repeat=k):
            for x in ip(range(k), repeat=k):
                if all(e[e[s]] == e[s] and e[x[s]] == x[s] for s in range(k)):
                    expected += 1
        assert len(all_finite_msets(M, k)) == expected


def test_equivariant_maps(M):
    pt = point(M)
    for X in all_finite_msets(M, 2):
        assert len(equivariant_maps(X, pt)) == 1
    with pytest.raises(MonoidToposError):
        equivariant_maps(regular(M), pt)


def test_finite_components_ignore_bound(M):
    F = FiniteMSet(M, ["p", "q", "r"],
                   {"e": {"p": "p", "q": "q", "r": "r"}, "x": {"p": "q", "q": "q", "r": "r"}})
    assert [sorted(c) for c in components(F, 0).classes] == [["p", "q"], ["r"]]
