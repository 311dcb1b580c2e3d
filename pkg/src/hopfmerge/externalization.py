"""Externalization: structural relations on abstract trees, head
functions, planar embeddings driven by heads, and the linear order on
leaves induced by c-command.

Vertices are addressed as in ``trees``.  Dominance is reflexive (v lies on
the path from the root to itself); c-command uses the parent as the
lowest vertex properly dominating v.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .magma import SectionUndefined
from .trees import AbstractTree, Addr, PlanarTree, abstract_trees, format_addr

HeadFunction = dict  # internal vertex address -> leaf address


def _dominates(a: Addr, b: Addr) -> bool:
    return b[: len(a)] == a


@dataclass(frozen=True)
class Relations:
    dominates: frozenset
    sisters: frozenset
    c_commands: frozenset
    asym_c_commands: frozenset

    def to_json(self) -> dict:
        def fmt(rel):
            return sorted([format_addr(a), format_addr(b)] for a, b in rel)

        return {"dominates": fmt(self.dominates), "sisters": fmt(self.sisters),
                "c_commands": fmt(self.c_commands), "asym_c_commands": fmt(self.asym_c_commands)}


def relations(t: AbstractTree) -> Relations:
    vs = t.vertices()
    dom = {(a, b) for a in vs for b in vs if _dominates(a, b)}
    sis = {(a, b) for a in vs for b in vs if a != b and a and b and a[:-1] == b[:-1]}
    cc = set()
    for a in vs:
        if not a:
            continue
        parent = a[:-1]
        for b in vs:
            if (a, b) in dom or (b, a) in dom:
                continue
            if _dominates(parent, b):
                cc.add((a, b))
    asym = cc - sis
    return Relations(frozenset(dom), frozenset(sis), frozenset(cc), frozenset(asym))


# --------------------------------------------------------------------------
# head functions


def heads_from_marks(t: AbstractTree, marks: dict) -> HeadFunction:
    """Head function from a choice of head child (0 or 1) at every internal vertex."""
    h: HeadFunction = {}

    def walk(a):
        sub = t.subtree_at(a)
        if sub.is_leaf:
            return a
        if a not in marks or marks[a] not in (0, 1):
            raise ValueError(f"no head child chosen at {format_addr(a)}")
        kids = [walk(a + (0,)), walk(a + (1,))]
        h[a] = kids[marks[a]]
        return h[a]

    walk(())
    return h


def marks_from_heads(t: AbstractTree, h: HeadFunction) -> dict:
    return {a: (0 if _dominates(a + (0,), leaf) else 1) for a, leaf in h.items()}


def validate_head_function(t: AbstractTree, h: HeadFunction) -> None:
    internal = set(t.internal_vertices())
    if set(h) != internal:
        raise ValueError("a head function must be defined on exactly the internal vertices")
    for a in internal:
        kids = []
        for i in (0, 1):
            c = a + (i,)
            kids.append(c if t.subtree_at(c).is_leaf else h[c])
        if h[a] not in kids:
            raise ValueError(f"head at {format_addr(a)} is not the head of a child")


def head_functions(t: AbstractTree) -> list[HeadFunction]:
    """All 2^|V°| head functions, in a fixed order."""
    internal = t.internal_vertices()
    return [heads_from_marks(t, dict(zip(internal, bits)))
            for bits in product((0, 1), repeat=len(internal))]


def planarize(t: AbstractTree, h: HeadFunction) -> PlanarTree:
    """Planar tree with the head child on the left at every vertex (label ``<``)."""
    validate_head_function(t, h)

    def walk(a):
        sub = t.subtree_at(a)
        if sub.is_leaf:
            return PlanarTree.leaf(sub.label)
        first = 0 if _dominates(a + (0,), h[a]) else 1
        return PlanarTree.node(walk(a + (first,)), walk(a + (1 - first,)), "<")

    return walk(())


def maximal_projections(t: AbstractTree, h: HeadFunction) -> set:
    """Vertices v that are the largest subtree with head h(v)."""
    def head(a):
        return a if t.subtree_at(a).is_leaf else h[a]

    return {a for a in t.vertices() if not a or head(a[:-1]) != head(a)}


# --------------------------------------------------------------------------
# linearization


@dataclass
class LCAOrder:
    leaves: list
    relation: set = field(default_factory=set)
    total: bool = True
    antisymmetric: bool = True
    violations: list = field(default_factory=list)
    incomparable: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "leaves": [format_addr(a) for a in self.leaves],
            "precedes": sorted([format_addr(a), format_addr(b)] for a, b in self.relation),
            "total": self.total,
            "antisymmetric": self.antisymmetric,
            "violations": sorted([format_addr(a), format_addr(b)] for a, b in self.violations),
            "incomparable": sorted([format_addr(a), format_addr(b)] for a, b in self.incomparable),
        }


def _closure(rel: set) -> set:
    rel = set(rel)
    while True:
        new = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
        if not new:
            return rel
        rel |= new


def lca_order(t: AbstractTree, h: HeadFunction | None = None) -> LCAOrder:
    """Leaf order from asymmetric c-command, plus (given heads) c-command by
    maximal projections dominating the earlier leaf; transitively closed."""
    rel = relations(t)
    leaves = t.leaf_addresses()
    base = {(a, b) for a, b in rel.asym_c_commands if a in leaves and b in leaves}
    if h is not None:
        validate_head_function(t, h)
        projs = maximal_projections(t, h)
        for m in projs:
            for l1 in leaves:
                if not _dominates(m, l1):
                    continue
                for l2 in leaves:
                    if (m, l2) in rel.c_commands:
                        base.add((l1, l2))
    full = _closure(base)
    out = LCAOrder(leaves, full)
    for i, a in enumerate(leaves):
        if (a, a) in full:
            out.violations.append((a, a))
        for b in leaves[i + 1:]:
            ab, ba = (a, b) in full, (b, a) in full
            if ab and ba:
                out.violations.append((a, b))
            if not ab and not ba:
                out.incomparable.append((a, b))
    out.antisymmetric = not out.violations
    out.total = not out.incomparable
    return out


def lca_totality_check(max_leaves: int = 4) -> dict:
    """Totality and antisymmetry of the leaf order on every tree shape,
    without heads and under every head function."""
    result = {"max_leaves": max_leaves, "trees": 0, "head_functions": 0,
              "head_free": {"not_total": [], "not_antisymmetric": []},
              "with_heads": {"not_total": [], "not_antisymmetric": []}}
    for n in range(1, max_leaves + 1):
        for t in abstract_trees(n):
            result["trees"] += 1
            o = lca_order(t)
            if not o.total:
                result["head_free"]["not_total"].append({"tree": str(t)})
            if not o.antisymmetric:
                result["head_free"]["not_antisymmetric"].append({"tree": str(t)})
            for h in head_functions(t):
                result["head_functions"] += 1
                o = lca_order(t, h)
                w = {"tree": str(t), "heads": format_marks(marks_from_heads(t, h))}
                if not o.total:
                    result["with_heads"]["not_total"].append(w)
                if not o.antisymmetric:
                    result["with_heads"]["not_antisymmetric"].append(w)
    return result


def format_marks(marks: dict) -> str:
    return ",".join(f"{format_addr(a)}:{c}" for a, c in sorted(marks.items()))


def parse_marks(text: str) -> dict:
    from .trees import parse_addr

    marks = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        addr, _, child = part.partition(":")
        if child not in ("0", "1"):
            raise ValueError(f"head mark {part!r} must end in :0 or :1")
        marks[parse_addr(addr)] = int(child)
    return marks


# --------------------------------------------------------------------------
# head choice by label order and the section it induces


def label_order_heads(t: AbstractTree, order: Sequence[str]) -> HeadFunction:
    """Heads chosen bottom-up: the child whose head label comes first wins.

    Undefined (``SectionUndefined``) when both children have equal head labels.
    """
    rank = {lab: i for i, lab in enumerate(order)}
    h: HeadFunction = {}

    def walk(a):
        sub = t.subtree_at(a)
        if sub.is_leaf:
            if sub.label not in rank:
                raise ValueError(f"label {sub.label!r} missing from the order")
            return a
        k0, k1 = walk(a + (0,)), walk(a + (1,))
        l0, l1 = t.subtree_at(k0).label, t.subtree_at(k1).label
        if l0 == l1:
            raise SectionUndefined(
                f"equal head labels {l0!r} at {format_addr(a)}",
                (str(sub.children[0]), str(sub.children[1])))
        h[a] = k0 if rank[l0] < rank[l1] else k1
        return h[a]

    walk(())
    return h


def head_driven_section(t: AbstractTree, order: Sequence[str]) -> PlanarTree:
    if t.is_leaf:
        return PlanarTree.leaf(t.label)
    return planarize(t, label_order_heads(t, order))


def head_label_obstruction(order: Sequence[str], max_leaves: int = 5) -> dict:
    """For each size n, a pair (T, T') with n leaves in total on which the
    label-order head rule cannot choose.

    A pair whose own heads exist and carry the same label is preferred
    (the tie sits at the root of M(T, T')).  Over a one-letter alphabet no
    tree with two or more leaves has a head, so there the first pair whose
    merge meets a tie at some vertex is returned, with that vertex.
    """
    order = list(order)
    out = {}
    for n in range(2, max_leaves + 1):
        root_tie, inner_tie = None, None
        for k in range(1, n // 2 + 1):
            for t1 in abstract_trees(k, order):
                for t2 in abstract_trees(n - k, order):
                    try:
                        label_order_heads(AbstractTree.node(t1, t2), order)
                        continue
                    except SectionUndefined as e:
                        reason = str(e)
                    try:
                        h1 = label_order_heads(t1, order).get((), ())
                        h2 = label_order_heads(t2, order).get((), ())
                    except SectionUndefined:
                        if inner_tie is None:
                            inner_tie = {"pair": [str(t1), str(t2)], "tie": reason}
                        continue
                    root_tie = {"pair": [str(t1), str(t2)],
                                "head_label": t1.subtree_at(h1).label, "tie": reason}
                    break
                if root_tie:
                    break
            if root_tie:
                break
        out[n] = root_tie or inner_tie
    return out
