"""The Loday-Ronco Hopf algebra of planar binary trees.

Two products are provided.  ``lr_product`` follows the recursion

    T * T' = T_l ^ (T_r * T')  +  (T * T'_l) ^ T'_r

and ``lr_product_graphical`` cuts T along leaf-to-root paths into as many
pieces as T' has leaves and grafts piece i onto leaf i of T'.  Both are
associative, but they are different products; the graphical one is the
partner of the path-splitting coproduct ``lr_coproduct`` and the recursive
one is the partner of ``lr_coproduct_recursive``.

Internal vertices may carry labels; leaves are slots labelled ``x`` unless
the caller says otherwise.  When a tree is grafted onto a leaf, the
grafted root replaces the leaf.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

from .linear import FormalSum, bilinear, tensor
from .trees import PlanarTree

Decomposition = tuple  # tuple[PlanarTree, ...]


def unit(leaf="x") -> PlanarTree:
    return PlanarTree.leaf(leaf)


def counit(a) -> int:
    a = FormalSum.of(a)
    return sum(v for t, v in a.items() if t.is_leaf)


def graft(t1: PlanarTree, t2: PlanarTree, d=None) -> PlanarTree:
    """T1 ^_d T2: both trees below a new root labelled d."""
    return PlanarTree.node(t1, t2, d)


def under(s: PlanarTree, t: PlanarTree) -> PlanarTree:
    """S\\T: graft the root of T onto the rightmost leaf of S."""
    if s.is_leaf:
        return t
    return PlanarTree.node(s.left, under(s.right, t), s.vlabel)


def over(t: PlanarTree, s: PlanarTree) -> PlanarTree:
    """T/S: graft the root of T onto the leftmost leaf of S."""
    if s.is_leaf:
        return t
    return PlanarTree.node(over(t, s.left), s.right, s.vlabel)


def split(t: PlanarTree, i: int) -> tuple[PlanarTree, PlanarTree]:
    """Cut along the path from leaf ``i`` to the root.

    Each path vertex follows its off-path child; the leaf itself ends up
    in both pieces.  Returns ``(left piece, right piece)``.
    """
    if t.is_leaf:
        if i != 0:
            raise IndexError(i)
        return t, t
    nl = t.left.n_leaves
    if i < nl:
        a, b = split(t.left, i)
        return a, PlanarTree.node(b, t.right, t.vlabel)
    a, b = split(t.right, i - nl)
    return PlanarTree.node(t.left, a, t.vlabel), b


def leaf_ranges(n_leaves: int, cuts: Sequence[int]) -> list[tuple[int, int]]:
    """Leaf index range [lo, hi] of the original tree covered by each piece."""
    bounds = [0, *cuts, n_leaves - 1]
    return [(bounds[j], bounds[j + 1]) for j in range(len(bounds) - 1)]


def multisplits_indexed(t: PlanarTree, n_pieces: int) -> list[tuple[tuple, Decomposition]]:
    """All ways to cut ``t`` into ``n_pieces`` pieces along leaf paths.

    Each entry is ``(cut leaves, pieces)``; the cut leaves form a weakly
    increasing sequence of ``n_pieces - 1`` leaf indices.
    """
    if n_pieces < 1:
        raise ValueError("need at least one piece")
    out = []
    for cuts in combinations_with_replacement(range(t.n_leaves), n_pieces - 1):
        pieces, rest, offset = [], t, 0
        for c in cuts:
            a, rest = split(rest, c - offset)
            pieces.append(a)
            offset = c
        pieces.append(rest)
        out.append((cuts, tuple(pieces)))
    return out


def multisplits(t: PlanarTree, n_pieces: int) -> list[Decomposition]:
    return [p for _, p in multisplits_indexed(t, n_pieces)]


def operad_gamma(parts: Sequence[PlanarTree], t: PlanarTree) -> PlanarTree:
    """Graft ``parts[i]`` onto the i-th leaf of ``t``."""
    if len(parts) != t.n_leaves:
        raise ValueError(f"{len(parts)} parts for a tree with {t.n_leaves} leaves")
    it = iter(parts)

    def walk(s):
        if s.is_leaf:
            return next(it)
        return PlanarTree.node(walk(s.left), walk(s.right), s.vlabel)

    return walk(t)


# --------------------------------------------------------------------------
# products


@lru_cache(maxsize=None)
def _rec_product(a: PlanarTree, b: PlanarTree) -> FormalSum:
    if b.is_leaf:
        return FormalSum.term(a)
    if a.is_leaf:
        return FormalSum.term(b)
    out = FormalSum()
    for u, c in _rec_product(a.right, b).items():
        out.add_term(PlanarTree.node(a.left, u, a.vlabel), c)
    for u, c in _rec_product(a, b.left).items():
        out.add_term(PlanarTree.node(u, b.right, b.vlabel), c)
    return out


@lru_cache(maxsize=None)
def _graph_product(a: PlanarTree, b: PlanarTree) -> FormalSum:
    out = FormalSum()
    for parts in multisplits(a, b.n_leaves):
        out.add_term(operad_gamma(parts, b))
    return out


def lr_product(a, b) -> FormalSum:
    """Product given by the grafting recursion."""
    return bilinear(_rec_product, FormalSum.of(a), FormalSum.of(b))


def lr_product_graphical(a, b) -> FormalSum:
    """Product given by path-cut decompositions and operadic grafting."""
    return bilinear(_graph_product, FormalSum.of(a), FormalSum.of(b))


PRODUCTS = {"recursive": lr_product, "graphical": lr_product_graphical}


# --------------------------------------------------------------------------
# coproducts


@lru_cache(maxsize=None)
def _split_coproduct(t: PlanarTree) -> FormalSum:
    out = FormalSum()
    for i in range(t.n_leaves):
        out.add_term(split(t, i))
    return out


@lru_cache(maxsize=None)
def _rec_coproduct(t: PlanarTree) -> FormalSum:
    if t.is_leaf:
        return FormalSum.term((t, t))
    out = FormalSum()
    dl, dr = _rec_coproduct(t.left), _rec_coproduct(t.right)
    for (l1, l2), cl in dl.items():
        for (r1, r2), cr in dr.items():
            top = PlanarTree.node(l2, r2, t.vlabel)
            for u, cp in _rec_product(l1, r1).items():
                out.add_term((u, top), cl * cr * cp)
    last = t
    while not last.is_leaf:
        last = last.right
    out.add_term((t, last))
    return out


def lr_coproduct(a) -> FormalSum:
    """Sum of the two pieces of every leaf-path cut."""
    return FormalSum.of(a).map(_split_coproduct)


def lr_coproduct_recursive(a) -> FormalSum:
    """Coproduct given by the recursion over T = T_l ^ T_r."""
    return FormalSum.of(a).map(_rec_coproduct)


COPRODUCTS = {"graphical": lr_coproduct, "recursive": lr_coproduct_recursive}


def reduced_coproduct(t: PlanarTree, coproduct=lr_coproduct) -> FormalSum:
    return coproduct(t).filter(lambda k: not k[0].is_leaf and not k[1].is_leaf)


# --------------------------------------------------------------------------
# antipode and tensor helpers


def antipode(a, form: str = "graphical") -> FormalSum:
    """S(X) = -X - sum S(X') X'' over the reduced coproduct."""
    return FormalSum.of(a).map(lambda t: _antipode(t, form))


@lru_cache(maxsize=None)
def _antipode(t: PlanarTree, form: str) -> FormalSum:
    if t.is_leaf:
        return FormalSum.term(t)
    prod, cop = PRODUCTS[form], COPRODUCTS[form]
    out = -FormalSum.term(t)
    for (t1, t2), c in reduced_coproduct(t, cop).items():
        out += (-c) * prod(_antipode(t1, form), FormalSum.term(t2))
    return out


def tensor_product(x: FormalSum, y: FormalSum, product=lr_product_graphical) -> FormalSum:
    """Componentwise product of two elements of H ⊗ H."""
    out = FormalSum()
    for (a1, a2), ca in x.items():
        for (b1, b2), cb in y.items():
            out += (ca * cb) * tensor(product(a1, b1), product(a2, b2))
    return out


def coproduct_left(t, coproduct=lr_coproduct) -> FormalSum:
    """(Δ ⊗ id) Δ"""
    out = FormalSum()
    for (a, b), c in coproduct(t).items():
        out += c * tensor(coproduct(a), FormalSum.term(b))
    return out


def coproduct_right(t, coproduct=lr_coproduct) -> FormalSum:
    """(id ⊗ Δ) Δ"""
    out = FormalSum()
    for (a, b), c in coproduct(t).items():
        out += c * tensor(FormalSum.term(a), coproduct(b))
    return out


def convolve_with_antipode(t, side: str, form: str = "graphical") -> FormalSum:
    """m(S ⊗ id)Δ (side='left') or m(id ⊗ S)Δ (side='right') applied to t."""
    prod, cop = PRODUCTS[form], COPRODUCTS[form]
    out = FormalSum()
    for (a, b), c in cop(t).items():
        if side == "left":
            out += c * prod(antipode(a, form), FormalSum.term(b))
        else:
            out += c * prod(FormalSum.term(a), antipode(b, form))
    return out


def clear_caches() -> None:
    for f in (_rec_product, _graph_product, _split_coproduct, _rec_coproduct, _antipode):
        f.cache_clear()
