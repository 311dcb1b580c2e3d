from hypothesis import given, strategies as st

from hopfmerge.linear import FormalSum
from hopfmerge.trees import abstract_trees, parse_abstract
from hopfmerge.workspace import (COUNTERCYCLIC, EXTERNAL, INTERNAL, SIDEWARD, Workspace,
                                 accessible_terms, coassociativity_sides, graded_coproduct,
                                 merge_action, merge_action_algebraic, merge_graded, merge_terms,
                                 minimal_search_filter, ws_coproduct, ws_coproduct_2, ws_product)

from conftest import abstract_st

W = Workspace.parse


def test_parse_and_print():
    assert str(W("b | a")) == "a | b"
    assert str(W("1")) == "1" and len(W("")) == 0
    assert W("{b a} | c") == W("c | {a b}")
    assert W("{a b} | c").n_leaves == 3


def test_accessible_terms():
    assert len(accessible_terms("a | b")) == 2
    terms = accessible_terms("{a b}")
    assert [str(t.tree) for t in terms] == ["{a b}", "a", "b"]
    assert [t.depth for t in terms] == [0, 1, 1]


@given(st.lists(abstract_st(max_leaves=4), min_size=1, max_size=3))
def test_accessible_term_count(trees):
    f = Workspace(trees)
    assert len(accessible_terms(f)) == sum(2 * t.n_leaves - 1 for t in trees)


def test_coproduct_examples():
    a, one = W("a"), W("1")
    assert ws_coproduct("a") == FormalSum({(a, one): 1, (one, a): 1})
    d = ws_coproduct("{a b}")
    for key in [(W("{a b}"), one), (one, W("{a b}")), (W("a"), W("b")), (W("b"), W("a"))]:
        assert d.coeff(key) == 1
    assert d.coeff((W("a | b"), one)) == 1
    assert ws_coproduct("{a b}", full_cover=False).coeff((W("a | b"), one)) == 0
    assert ws_coproduct_2("{a {b c}}").coeff((W("{b c}"), W("a"))) == 1


def test_graded_coproduct_degrees():
    g = graded_coproduct("{a {b c}}")
    assert g.coeff((W("{a {b c}}"), W("1"), 0)) == 1
    assert g.coeff((W("b"), W("{a c}"), 2)) == 1


def test_coproduct_is_multiplicative():
    for f, g in [("a", "b"), ("{a b}", "c"), ("{a b}", "{a b}")]:
        assert ws_coproduct(W(f).union(W(g))) == ws_product(ws_coproduct(f), ws_coproduct(g))


def test_coassociativity_defects():
    left, right = coassociativity_sides("{a b}")
    assert left - right == FormalSum({(W("a"), W("b"), W("1")): 1, (W("b"), W("a"), W("1")): 1,
                                      (W("a | b"), W("1"), W("1")): 1})
    left, right = coassociativity_sides("{a b}", full_cover=False)
    assert left == right
    left, right = coassociativity_sides("{a {b c}}", full_cover=False)
    assert left - right == FormalSum({(W("b"), W("c"), W("a")): 1, (W("c"), W("b"), W("a")): 1})


def test_merge_external():
    assert merge_action("a", "{b c}", "a | {b c}") == FormalSum.term(W("{a {b c}}"))
    (t,) = merge_graded("a", "b", "a | b")
    assert t.mtype == EXTERNAL and t.degrees == (0,)


def test_merge_internal():
    assert merge_action("{a b}", "b", "{a b}") == FormalSum.term(W("{a b}"))
    (t,) = merge_graded("{a {b c}}", "{b c}", "{a {b c}}")
    assert t.mtype == INTERNAL and str(t.result) == "{a {b c}}" and t.degrees == (0,)


def test_merge_sideward_degrees():
    (t,) = merge_graded("a", "c", "{a b} | c")
    assert t.mtype == SIDEWARD
    assert str(t.result) == "b | {a c}"
    assert t.degrees == (-1, 1)
    assert minimal_search_filter([t]) == []


def test_merge_countercyclic_and_nesting():
    (t,) = merge_graded("a", "d", "{{a b} {c d}}")
    assert t.mtype == COUNTERCYCLIC and any(d != 0 for d in t.degrees)
    terms, nested = merge_terms("{a b}", "a", "{{a b} c}")
    assert not terms and len(nested) == 1


def test_no_match_is_identity():
    for fn in (merge_action, merge_action_algebraic):
        assert fn("z", "a", "a | b") == FormalSum.term(W("a | b"))


def test_minimal_search_keeps_em_and_im():
    mixed = merge_graded("a", "b", "{a b} | a | b")
    kinds = {t.mtype for t in mixed}
    assert {EXTERNAL, SIDEWARD} <= kinds
    kept = minimal_search_filter(mixed)
    assert kept and all(t.mtype in (EXTERNAL, INTERNAL) for t in kept)
    assert all(t.mtype in (EXTERNAL, INTERNAL) for t in mixed if t in kept)


def _small_workspaces():
    trees = [t for n in range(1, 4) for t in abstract_trees(n, ("a", "b"))]
    yield from (Workspace([t]) for t in trees)
    for i, t in enumerate(trees):
        for u in trees[i:]:
            if t.n_leaves + u.n_leaves <= 4:
                yield Workspace([t, u])


def test_algebraic_form_agrees_and_conserves_leaves():
    for f in _small_workspaces():
        subs = {x.tree for x in accessible_terms(f)}
        for s in subs:
            for s2 in subs:
                op = merge_action(s, s2, f)
                assert op == merge_action_algebraic(s, s2, f)
                assert all(w.n_leaves == f.n_leaves for w in op.keys())
                for t in merge_graded(s, s2, f):
                    zero = all(d == 0 for d in t.degrees)
                    assert zero == (t.mtype in (EXTERNAL, INTERNAL))


def test_product_is_commutative_and_unital():
    a, b = FormalSum.term(W("{a b}")), FormalSum.term(W("c"))
    one = FormalSum.term(W("1"))
    assert ws_product(a, b) == ws_product(b, a)
    assert ws_product(a, one) == a
    t = parse_abstract("{a b}")
    assert Workspace([t]) == W("{a b}")
