"""Brute-force reference computations used by the checkers and tests.

Each function here recomputes something the main modules also compute,
by a different and more naive route.
"""
from __future__ import annotations

from collections import Counter
from itertools import combinations, product

from .linear import FormalSum
from .trees import AbstractTree, PlanarTree, forget_planar, planar_shapes


def brute_antichains(t: AbstractTree) -> list[tuple]:
    """Admissible cuts by filtering every subset of vertices."""
    vs = t.vertices()
    out = []
    for r in range(len(vs) + 1):
        for sub in combinations(vs, r):
            if all(not (b[: len(a)] == a) for a in sub for b in sub if a != b):
                out.append(tuple(sorted(sub)))
    return sorted(out, key=lambda c: (len(c), c))


def graph_quotient(t: AbstractTree, cut) -> AbstractTree | None:
    """Quotient by deleting vertices in an explicit child map, then deleting
    childless former internal vertices and splicing out unary ones."""
    vs = t.vertices()
    removed = {v for v in vs for c in cut if v[: len(c)] == c}
    kids = {v: [w for w in vs if len(w) == len(v) + 1 and w[:-1] == v and w not in removed]
            for v in vs if v not in removed}
    label = {v: t.subtree_at(v).label for v in vs if t.subtree_at(v).is_leaf}
    changed = True
    while changed:
        changed = False
        for v in list(kids):
            if v in label or kids[v]:
                continue
            del kids[v]
            for w in kids:
                if v in kids[w]:
                    kids[w].remove(v)
            changed = True
    if () not in kids:
        return None

    def build(v):
        ch = kids[v]
        while v not in label and len(ch) == 1:
            v = ch[0]
            ch = kids[v]
        if v in label:
            return AbstractTree.leaf(label[v])
        return AbstractTree.node(*[build(w) for w in ch])

    return build(())


def planar_preimage_counts(n_leaves: int, leaf: str = "x") -> Counter:
    """How many planar trees forget onto each abstract tree."""
    return Counter(forget_planar(p) for p in planar_shapes(n_leaves, leaf))


def wedderburn_etherington(n: int) -> int:
    w = [0, 1]
    for m in range(2, n + 1):
        if m % 2:
            w.append(sum(w[i] * w[m - i] for i in range(1, (m + 1) // 2)))
        else:
            h = m // 2
            w.append(sum(w[i] * w[m - i] for i in range(1, h)) + w[h] * (w[h] + 1) // 2)
    return w[n]


def sister_subtree_c_command(t: AbstractTree) -> set:
    """c-command in a binary tree: w lies in the subtree of v's sister."""
    vs = t.vertices()
    out = set()
    for v in vs:
        if not v:
            continue
        sister = v[:-1] + (1 - v[-1],)
        out |= {(v, w) for w in vs if w[: len(sister)] == sister}
    return out


def _right_arm(t: PlanarTree):
    arm = []
    while not t.is_leaf:
        arm.append((t.left, t.vlabel))
        t = t.right
    return arm, t


def _left_arm(t: PlanarTree):
    arm = []
    while not t.is_leaf:
        arm.append((t.right, t.vlabel))
        t = t.left
    return arm, t


def shuffle_product(a: PlanarTree, b: PlanarTree) -> FormalSum:
    """Recursive Loday-Ronco product as a sum over shuffles of the right arm
    of ``a`` with the left arm of ``b``: each shuffle is a zigzag path from
    the root, stepping right at a vertex of ``a`` and left at one of ``b``."""
    arm_a, end_a = _right_arm(a)
    arm_b, end_b = _left_arm(b)
    p, q = len(arm_a), len(arm_b)
    if q == 0:
        return FormalSum.term(a)
    if p == 0:
        return FormalSum.term(b)
    bottom = end_a  # the two arms end in leaves, which are identified
    out = FormalSum()
    for pos in combinations(range(p + q), p):
        steps = ["a" if k in pos else "b" for k in range(p + q)]
        t = bottom
        ia, ib = p, q
        for s in reversed(steps):
            if s == "a":
                ia -= 1
                sub, lab = arm_a[ia]
                t = PlanarTree.node(sub, t, lab)
            else:
                ib -= 1
                sub, lab = arm_b[ib]
                t = PlanarTree.node(t, sub, lab)
        out.add_term(t)
    return out
