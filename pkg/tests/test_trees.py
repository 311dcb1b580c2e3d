import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import abstract_st, planar_st
from hopfmerge import oracles
from hopfmerge.magma import catalan
from hopfmerge.trees import (UNIT, AbstractTree, PlanarTree, TreeSyntaxError, abstract_trees,
                             admissible_cuts, asymmetric_vertex_count, canonicalize, elementary_cut,
                             forget_planar, parse_abstract, parse_addr, parse_planar, parse_tree,
                             planar_embeddings, planar_shapes, quotient)

A = parse_abstract
P = parse_planar


def test_canonical_child_order():
    assert str(A("{b a}")) == "{a b}"
    assert A("{{x x} x}") == A("{x {x x}}")
    assert str(A("{d {a {c b}}}")) == "{d {a {b c}}}"


def test_canonical_form_ignores_child_permutations():
    rng = random.Random(7)
    t = A("{{a {b c}} {{d a} {c b}}}")

    def shuffle(raw):
        if raw.is_leaf:
            return raw
        kids = [shuffle(c) for c in raw.children]
        rng.shuffle(kids)
        return AbstractTree.node(*kids)

    for _ in range(20):
        assert str(shuffle(t)) == str(t)


def test_subtree_at():
    t = A("{a {b c}}")
    assert str(t.subtree_at((1,))) == "{b c}"
    assert t.subtree_at(()) is t
    assert str(A("{{a b} {c d}}").subtree_at((0, 1))) == "b"
    with pytest.raises(KeyError):
        t.subtree_at((0, 0))


def test_quotient_examples():
    t = A("{a {b c}}")
    assert str(quotient(t, [(1,)])) == "a"
    assert quotient(t, [()]) is UNIT
    assert str(quotient(A("{{a b} {c d}}"), [(1,)])) == "{a b}"
    assert quotient(t, [(0,), (1, 0), (1, 1)]) is UNIT
    assert str(quotient(A("{{a b} {c d}}"), [(0, 0), (1, 1)])) == "{b c}"


def test_quotient_rejects_non_antichain():
    with pytest.raises(ValueError):
        quotient(A("{a {b c}}"), [(1,), (1, 0)])


def test_admissible_cuts_small():
    assert admissible_cuts(A("a")) == [(), ((),)]
    cuts = admissible_cuts(A("{a b}"))
    assert sorted(cuts) == sorted([(), ((),), ((0,),), ((1,),), ((0,), (1,))])


@pytest.mark.parametrize("text,count", [
    ("a", 2), ("{a b}", 5), ("{a {b c}}", 11), ("{a {b {c d}}}", 23), ("{{a b} {c d}}", 26),
])
def test_cut_counts_frozen(text, count):
    # counts from brute-force antichain enumeration
    assert len(admissible_cuts(A(text))) == count


def test_cuts_match_brute_force_up_to_six_leaves():
    for n in range(1, 7):
        for t in abstract_trees(n):
            assert admissible_cuts(t) == oracles.brute_antichains(t)


def test_quotient_matches_graph_contraction():
    for n in range(1, 6):
        for t in abstract_trees(n, ("a", "b")):
            for cut in admissible_cuts(t):
                q, g = quotient(t, cut), oracles.graph_quotient(t, cut)
                assert (g is None) if q is UNIT else q == g


def test_elementary_cut():
    pi, rho = elementary_cut(A("{a {b c}}"), (1,))
    assert (str(pi), str(rho)) == ("{b c}", "a")
    pi, rho = elementary_cut(A("{a b}"), (0,))
    assert (str(pi), str(rho)) == ("a", "b")


def test_planar_embeddings():
    assert len(planar_embeddings(A("{x x}"))) == 1
    assert len(planar_embeddings(A("{x {x x}}"))) == 2
    assert len(planar_embeddings(A("{x {x {x x}}}"))) == 4
    assert len(planar_embeddings(A("{{x x} {x x}}"))) == 1


def test_embeddings_sum_to_catalan():
    for n in range(1, 9):
        assert sum(len(planar_embeddings(t)) for t in abstract_trees(n)) == catalan(n - 1)


def test_forget_planar():
    assert forget_planar(P("[a b]")) == forget_planar(P("[b a]")) == A("{a b}")
    assert forget_planar(P('[< a:"sel(D) V" b:""]')) == A("{a b}")


def test_enumeration_counts():
    assert [len(abstract_trees(n)) for n in range(1, 10)] == [
        oracles.wedderburn_etherington(n) for n in range(1, 10)]
    assert [len(planar_shapes(n)) for n in range(1, 8)] == [catalan(n - 1) for n in range(1, 8)]


def test_roundtrip_corpus():
    corpus = ["a", "{a b}", "{a {b c}}", "{{a b} {c d}}", "[x y]", "[< a b]", "[> [< a b] c]",
              '[< a:"sel(D) V" b:""]', '"lsr(W) C"', '[> [< a:"" b:"lse(K)"] c:"D N"]']
    for s in corpus:
        assert str(parse_tree(s)) == s


def test_parse_dialects():
    assert isinstance(parse_tree("{a {b c}}", "abstract"), AbstractTree)
    mg = parse_tree('[< a:"sel(D) V" b:""]', "mg")
    assert isinstance(mg, PlanarTree) and mg.vlabel == "<"
    with pytest.raises(ValueError):
        parse_tree("[x y]", "mg")


@pytest.mark.parametrize("bad,pos", [("{a b", 4), ("{a b c}", 6), ("[a]", 3), ("{a b}}", 5), ("", 0)])
def test_syntax_errors_carry_positions(bad, pos):
    with pytest.raises(TreeSyntaxError) as e:
        parse_tree(bad) if bad.startswith("{") or not bad else parse_planar(bad)
    assert f"position {pos}" in str(e.value)


def test_addresses():
    assert parse_addr("root") == ()
    assert parse_addr("101") == (1, 0, 1)


@given(abstract_st())
def test_canonicalize_idempotent(t):
    assert canonicalize(t) == t
    assert A(str(t)) == t


@given(abstract_st(), abstract_st())
def test_node_formation_respects_equality(a, b):
    assert AbstractTree.node(a, b) == AbstractTree.node(A(str(b)), A(str(a)))


@given(abstract_st())
def test_quotient_leaf_count(t):
    for v in t.vertices():
        if v:
            assert quotient(t, [v]).n_leaves == t.n_leaves - t.subtree_at(v).n_leaves


@given(abstract_st(alphabet=("x",), max_leaves=7))
def test_embeddings_are_sections(t):
    es = planar_embeddings(t)
    assert len(es) == len(set(es)) == 2 ** asymmetric_vertex_count(t)
    assert all(forget_planar(e) == t for e in es)


@given(planar_st(vlabels=(None, "<", ">")))
def test_planar_roundtrip(p):
    assert P(str(p)) == p
