"""Free commutative and non-commutative binary magmas.

``merge_m`` builds an unordered tree from two trees, ``merge_nc`` an
ordered one.  The Dyson-Schwinger solver expands X = x + M(X, X) degree by
degree inside the commutative magma.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from .linear import FormalSum, bilinear
from .trees import UNIT, AbstractTree, PlanarTree, abstract_trees, forget_planar


def merge_m(a: AbstractTree, b: AbstractTree) -> AbstractTree:
    return AbstractTree.node(a, b)


def merge_nc(a: PlanarTree, b: PlanarTree, vlabel=None) -> PlanarTree:
    return PlanarTree.node(a, b, vlabel)


def b_plus(forest) -> AbstractTree:
    """Attach every component of a forest to a new root."""
    comps = list(getattr(forest, "components", forest))
    if not comps:
        raise ValueError("b_plus of the empty forest is undefined")
    return AbstractTree.node(*comps)


def merge_sum(a: FormalSum, b: FormalSum) -> FormalSum:
    return bilinear(merge_m, a, b)


def ds_solve(n: int, generator: str = "x") -> list[FormalSum]:
    """Homogeneous parts X_1..X_n of the solution of X = x + M(X, X)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return list(_ds(n, generator))


@lru_cache(maxsize=None)
def _ds(n: int, generator: str) -> tuple:
    if n == 1:
        return (FormalSum.term(AbstractTree.leaf(generator)),)
    prev = _ds(n - 1, generator)
    xn = FormalSum()
    for j in range(1, n):
        xn += merge_sum(prev[j - 1], prev[n - j - 1])
    return prev + (xn,)


def dim_vk(k: int, m: int) -> int:
    """Number of planar binary trees with k internal vertices labelled from m symbols."""
    if k < 0 or m < 1:
        raise ValueError("need k >= 0 and m >= 1")
    return m ** k * factorial(2 * k) // (factorial(k) * factorial(k + 1))


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def commutative_submagma_witness(t: PlanarTree) -> tuple[PlanarTree, PlanarTree]:
    """The two planar products of ``t`` with M^nc(t, t).

    A commutative sub-magma containing ``t`` would contain both and have
    to identify them; they always differ, since the left child has 2n
    leaves in one and n in the other.
    """
    tt = merge_nc(t, t)
    a, b = merge_nc(tt, t), merge_nc(t, tt)
    assert a != b
    return a, b


# --------------------------------------------------------------------------
# sections of the forgetful map


def canonical_left_section(t: AbstractTree) -> PlanarTree:
    """Planar tree with the children at each vertex in canonical order."""
    if t.is_leaf:
        return PlanarTree.leaf(t.label)
    a, b = t.children
    return PlanarTree.node(canonical_left_section(a), canonical_left_section(b))


def strip_vlabels(p: PlanarTree) -> PlanarTree:
    if p.is_leaf:
        return p
    return PlanarTree.node(strip_vlabels(p.left), strip_vlabels(p.right))


class SectionUndefined(Exception):
    """The section has no value on this input."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def _section(name: str, order):
    if name == "canonical-left":
        return canonical_left_section
    if name == "head-driven":
        from .externalization import head_driven_section

        return lambda t: strip_vlabels(head_driven_section(t, order))
    raise ValueError(f"unknown section {name!r}")


def section_homomorphism_counterexample(section: str = "canonical-left", max_leaves: int = 3,
                                        alphabet=("a", "b")) -> dict:
    """Search pairs of trees for a failure of Σ(M(T1,T2)) = M^nc(ΣT1, ΣT2).

    Pairs are taken with at most ``max_leaves`` leaves in the merged tree.
    The result lists the first counterexample (if any), every input where
    the section is undefined, and any input where forget∘Σ is not the
    identity.
    """
    order = list(alphabet)
    sigma = _section(section, order)
    trees = [t for n in range(1, max_leaves) for t in abstract_trees(n, alphabet)]
    invalid, domain_failures = [], []
    values: dict = {}

    def value(t):
        if t not in values:
            try:
                s = sigma(t)
            except SectionUndefined as e:
                values[t] = None
                domain_failures.append({"tree": str(t), "reason": str(e)})
                return None
            if forget_planar(s) != t:
                invalid.append({"tree": str(t), "image": str(s)})
            values[t] = s
        return values[t]

    counterexample, pairs = None, 0
    for t1 in trees:
        for t2 in trees:
            if t1.n_leaves + t2.n_leaves > max_leaves:
                continue
            pairs += 1
            s1, s2, sm = value(t1), value(t2), value(merge_m(t1, t2))
            if None in (s1, s2, sm):
                continue
            if counterexample is None and merge_nc(s1, s2) != sm:
                counterexample = {"pair": [str(t1), str(t2)],
                                  "merged_then_section": str(sm),
                                  "section_then_merged": str(merge_nc(s1, s2))}
    return {"section": section, "pairs": pairs, "counterexample": counterexample,
            "domain_failures": domain_failures, "invalid": invalid}


def forget_sum(a: FormalSum) -> FormalSum:
    return a.map(forget_planar)


__all__ = [
    "UNIT", "merge_m", "merge_nc", "b_plus", "merge_sum", "ds_solve", "dim_vk", "catalan",
    "commutative_submagma_witness", "canonical_left_section", "section_homomorphism_counterexample",
    "SectionUndefined", "forget_sum",
]
