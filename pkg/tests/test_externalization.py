import pytest
from hypothesis import given

from hopfmerge import externalization as E
from hopfmerge.magma import SectionUndefined, canonical_left_section, strip_vlabels
from hopfmerge.oracles import sister_subtree_c_command
from hopfmerge.trees import abstract_trees, forget_planar, parse_abstract, planar_embeddings

from conftest import abstract_st

A = parse_abstract


def test_relations_small():
    r = E.relations(A("{a b}"))
    assert ((0,), (1,)) in r.c_commands and ((1,), (0,)) in r.c_commands
    assert not r.asym_c_commands
    r = E.relations(A("{{a b} {c d}}"))
    assert ((0,), (1, 0)) in r.asym_c_commands and ((0,), (1, 1)) in r.asym_c_commands
    t = A("{a {b c}}")
    assert all(((), v) in E.relations(t).dominates for v in t.vertices())


@given(abstract_st(max_leaves=5))
def test_relations_against_oracle(t):
    r = E.relations(t)
    assert r.asym_c_commands <= r.c_commands
    assert r.c_commands == sister_subtree_c_command(t)


@pytest.mark.parametrize("text, count", [("a", 1), ("{a b}", 2), ("{{a b} c}", 4), ("{{a b} {c d}}", 8)])
def test_head_function_count(text, count):
    hs = E.head_functions(A(text))
    assert len(hs) == count
    for h in hs:
        E.validate_head_function(A(text), h)


def test_head_function_validation():
    t = A("{{a b} c}")
    with pytest.raises(ValueError):
        E.validate_head_function(t, {(): (1,)})
    with pytest.raises(ValueError):
        E.validate_head_function(t, {(): (0, 1), (0,): (0, 0)})


def test_planarize():
    t = A("{a b}")
    assert str(E.planarize(t, {(): (1,)})) == "[< b a]"
    assert str(strip_vlabels(E.planarize(t, {(): (0,)}))) == "[a b]"
    u = A("{a {b c}}")
    leftmost = E.heads_from_marks(u, {(): 0, (1,): 0})
    assert strip_vlabels(E.planarize(u, leftmost)) == canonical_left_section(u)


@given(abstract_st(max_leaves=5))
def test_planarize_embeds(t):
    images = {strip_vlabels(E.planarize(t, h)) for h in E.head_functions(t)}
    assert all(forget_planar(p) == t for p in images)
    assert len(images) == len(planar_embeddings(t))


def test_lca_examples():
    o = E.lca_order(A("{a {b c}}"))
    assert ((0,), (1, 0)) in o.relation and ((0,), (1, 1)) in o.relation
    o = E.lca_order(A("{{a b} {c d}}"))
    assert not o.total and ((0, 0), (1, 0)) in o.incomparable


def test_lca_with_heads_decided_per_function():
    t = A("{{a b} {c d}}")
    verdicts = [E.lca_order(t, h).total for h in E.head_functions(t)]
    assert len(verdicts) == 8


def test_lca_head_free_is_partial_order():
    for n in range(1, 6):
        for t in abstract_trees(n):
            assert E.lca_order(t).antisymmetric


def test_totality_check_report():
    rep = E.lca_totality_check(4)
    assert rep["trees"] == 1 + 1 + 1 + 2
    assert rep["head_functions"] == 1 + 2 + 4 + 8 + 8
    # without heads, sister leaves are never ordered
    assert {"tree": "{{x x} {x x}}"} in rep["head_free"]["not_total"]
    assert len(rep["head_free"]["not_total"]) == 4
    assert not rep["head_free"]["not_antisymmetric"]
    assert not E.lca_totality_check(3)["with_heads"]["not_total"]


def test_marks_roundtrip():
    t = A("{{a b} c}")
    for h in E.head_functions(t):
        m = E.marks_from_heads(t, h)
        assert E.parse_marks(E.format_marks(m)) == m
    with pytest.raises(ValueError):
        E.parse_marks("root:2")


def test_label_order_heads():
    assert E.label_order_heads(A("{b a}"), ["a", "b"]) == {(): (0,)}
    with pytest.raises(SectionUndefined):
        E.label_order_heads(A("{a a}"), ["a", "b"])
    assert str(E.head_driven_section(A("{b a}"), ["a", "b"])) == "[< a b]"


@pytest.mark.parametrize("size", [1, 2, 3])
def test_head_label_obstruction(size):
    order = ["a", "b", "c"][:size]
    found = E.head_label_obstruction(order, 5)
    assert set(found) == {2, 3, 4, 5}
    assert all(w is not None for w in found.values())
    assert found[2]["pair"][0] == found[2]["pair"][1]
