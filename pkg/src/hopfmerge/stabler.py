"""Minimalist-grammar trees, external/internal Merge and the modified
Loday-Ronco structure adapted to the domain of internal Merge.

An MG tree is a planar binary tree whose internal vertices are labelled
``<`` or ``>`` (pointing to the head-containing child) and whose leaves
are ``MGLeaf`` objects.  Leaves are tracked by their left-to-right index.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .features import CAT, LSE, LSR, SEL, Feature, MGLeaf
from .linear import FormalSum
from .loday_ronco import (leaf_ranges, lr_coproduct, lr_coproduct_recursive, lr_product,
                          lr_product_graphical, multisplits_indexed, operad_gamma, split)
from .report import PASS, Skip
from .trees import Addr, PlanarTree, format_addr, planar_shapes

ARROWS = ("<", ">")
MATCH_MODES = ("first", "full")
SMC_MODES = ("unique", "sum-all")


class DomainError(ValueError):
    pass


class AmbiguityError(DomainError):
    pass


def validate_mg(t: PlanarTree) -> PlanarTree:
    if t.is_leaf:
        if not isinstance(t.label, MGLeaf):
            raise ValueError(f"MG leaf expected, found {t.label!r}")
        return t
    if t.vlabel not in ARROWS:
        raise ValueError(f"internal MG vertex must be labelled < or >, found {t.vlabel!r}")
    validate_mg(t.left)
    validate_mg(t.right)
    return t


def _check_modes(mode=None, smc=None) -> None:
    if mode is not None and mode not in MATCH_MODES:
        raise ValueError(f"unknown matching mode {mode!r}")
    if smc is not None and smc not in SMC_MODES:
        raise ValueError(f"unknown SMC mode {smc!r}")


# --------------------------------------------------------------------------
# heads and projections


def head_index(t: PlanarTree) -> int:
    i = 0
    while not t.is_leaf:
        if t.vlabel == ">":
            i += t.left.n_leaves
            t = t.right
        else:
            t = t.left
    return i


def head_address(t: PlanarTree) -> Addr:
    a = []
    while not t.is_leaf:
        if t.vlabel == ">":
            a.append(1)
            t = t.right
        else:
            a.append(0)
            t = t.left
    return tuple(a)


def head_leaf(t: PlanarTree) -> MGLeaf:
    return t.subtree_at(head_address(t)).label


def head_features(t: PlanarTree):
    lab = head_leaf(t)
    return lab.features if isinstance(lab, MGLeaf) else ()


def leaf_path(t: PlanarTree, i: int) -> Addr:
    a = []
    while not t.is_leaf:
        nl = t.left.n_leaves
        if i < nl:
            a.append(0)
            t = t.left
        else:
            a.append(1)
            i -= nl
            t = t.right
    return tuple(a)


def maximal_projection(t: PlanarTree, i: int) -> Addr:
    """Address of the largest subtree whose head is leaf ``i``."""
    path = leaf_path(t, i)
    for k in range(len(path) + 1):
        sub = t.subtree_at(path[:k])
        if leaf_path(sub, head_index(sub)) == path[k:]:
            return path[:k]
    return path


def map_leaf(t: PlanarTree, i: int, f) -> PlanarTree:
    if t.is_leaf:
        return PlanarTree.leaf(f(t.label))
    nl = t.left.n_leaves
    if i < nl:
        return PlanarTree.node(map_leaf(t.left, i, f), t.right, t.vlabel)
    return PlanarTree.node(t.left, map_leaf(t.right, i - nl, f), t.vlabel)


def consume_head(t: PlanarTree, k: int = 1) -> PlanarTree:
    """Drop the first ``k`` features of the head leaf."""
    return map_leaf(t, head_index(t), lambda lab: MGLeaf(lab.name, lab.features[k:]))


def remove_subtrees(t: PlanarTree, addrs: Sequence[Addr]) -> PlanarTree | None:
    """Delete the subtrees at ``addrs``; a vertex left with one child is
    replaced by that child."""
    addrs = tuple(addrs)
    if () in addrs:
        return None
    if not addrs or t.is_leaf:
        return t
    l = remove_subtrees(t.left, tuple(a[1:] for a in addrs if a[0] == 0))
    r = remove_subtrees(t.right, tuple(a[1:] for a in addrs if a[0] == 1))
    if l is None:
        return r
    if r is None:
        return l
    return PlanarTree.node(l, r, t.vlabel)


# --------------------------------------------------------------------------
# external merge


def em_mismatch(t1: PlanarTree, t2: PlanarTree, mode: str = "first") -> str | None:
    """Why (t1, t2) is outside the domain of external Merge, or None."""
    _check_modes(mode)
    h1, h2 = head_features(t1), head_features(t2)
    if not h1:
        return f"selector head of {t1} has no features"
    if h1[0].kind != SEL:
        return f"selector head starts with {h1[0]}, not a selection feature"
    if not h2:
        return f"selectee head of {t2} has no features"
    want = Feature(CAT, h1[0].base)
    if h2[0] != want:
        return f"{h1[0]} does not match selectee feature {h2[0]}"
    if mode == "full":
        rest1, rest2 = h1[1:len(h2)], h2[1:]
        if rest1 != rest2:
            a = " ".join(map(str, h1)) or "(empty)"
            b = " ".join(map(str, h2)) or "(empty)"
            return f"selector string '{a}' does not extend selectee string '{b}'"
    return None


def in_dom_em(t1: PlanarTree, t2: PlanarTree, mode: str = "first") -> bool:
    return em_mismatch(t1, t2, mode) is None


def external_merge(t1: PlanarTree, t2: PlanarTree, mode: str = "first") -> PlanarTree:
    why = em_mismatch(t1, t2, mode)
    if why:
        raise DomainError(why)
    a, b = consume_head(t1), consume_head(t2)
    if t1.is_leaf:
        return PlanarTree.node(a, b, "<")
    return PlanarTree.node(b, a, ">")


@lru_cache(maxsize=None)
def in_graft_domain(x: PlanarTree, y: PlanarTree, arrow: str, mode: str = "first") -> bool:
    """Is the grafting x ^_arrow y one that external Merge can produce?"""
    if arrow == "<":
        return x.is_leaf and in_dom_em(x, y, mode)
    return not y.is_leaf and in_dom_em(y, x, mode)


# --------------------------------------------------------------------------
# internal merge


@dataclass(frozen=True, order=True)
class IMCertificate:
    leaf: int
    projection: Addr
    base: str

    def to_json(self) -> dict:
        return {"leaf": self.leaf, "projection": format_addr(self.projection), "feature": self.base}


@lru_cache(maxsize=200_000)
def licensee_leaves(t: PlanarTree) -> tuple:
    """Indices of the leaves whose first feature matches the head's licensor."""
    hf = head_features(t)
    if not hf or hf[0].kind != LSR:
        return ()
    want = Feature(LSE, hf[0].base)
    h = head_index(t)
    return tuple(i for i, lab in enumerate(t.leaves())
                 if i != h and isinstance(lab, MGLeaf) and lab.first == want)


def im_certificates(t: PlanarTree) -> list[IMCertificate]:
    """Every licensee leaf matching the head's first licensor feature."""
    leaves = licensee_leaves(t)
    if not leaves:
        return []
    base = head_features(t)[0].base
    return [IMCertificate(i, maximal_projection(t, i), base) for i in leaves]


def in_dom_im(t: PlanarTree, smc: str = "unique") -> list[IMCertificate]:
    """Certificates for internal Merge; ambiguity is an error in unique mode."""
    _check_modes(smc=smc)
    certs = im_certificates(t)
    if smc == "unique" and len(certs) > 1:
        raise AmbiguityError(
            f"{len(certs)} licensee subtrees match in {t}: "
            + ", ".join(format_addr(c.projection) for c in certs))
    return certs


def is_dom_im(t: PlanarTree) -> bool:
    return bool(licensee_leaves(t))


def _apply_im(t: PlanarTree, cert: IMCertificate) -> PlanarTree:
    moved = consume_head(t.subtree_at(cert.projection))
    rest = consume_head(remove_subtrees(t, [cert.projection]))
    return PlanarTree.node(moved, rest, ">")


def internal_merge(t: PlanarTree, smc: str = "unique") -> FormalSum:
    certs = in_dom_im(t, smc)
    if not certs:
        hf = head_features(t)
        first = str(hf[0]) if hf else "nothing"
        raise DomainError(f"head of {t} starts with {first}; no licensee subtree to move")
    out = FormalSum()
    for c in certs:
        out.add_term(_apply_im(t, c))
    return out


# --------------------------------------------------------------------------
# the coproduct and product restricted to Dom(I)


def _licensees_for(t: PlanarTree, smc: str) -> list[int]:
    _check_modes(smc=smc)
    leaves = licensee_leaves(t)
    if smc == "unique" and len(leaves) > 1:
        raise AmbiguityError(f"{len(leaves)} licensee subtrees match in {t}")
    return leaves


def coproduct_I_terms(t: PlanarTree, smc: str = "unique") -> FormalSum:
    certs = _licensees_for(t, smc)
    if not certs:
        return lr_coproduct(t)
    h = head_index(t)
    out = FormalSum()
    for c in certs:
        for i in range(t.n_leaves):
            if (h <= i and c <= i) or (h >= i and c >= i):
                out.add_term(split(t, i))
    return out


def coproduct_I(a, smc: str = "unique") -> FormalSum:
    """Path-split coproduct keeping only cuts with h(T) and h(π_C T) on one side."""
    return FormalSum.of(a).map(lambda t: coproduct_I_terms(t, smc))


def decompositions_I(t: PlanarTree, t2: PlanarTree, smc: str = "unique"):
    """Yield ``(licensee leaf or None, cut leaves, pieces)`` admitted by the ⋆_I rule."""
    certs = _licensees_for(t, smc)
    h, slot = head_index(t), head_index(t2)
    for cuts, pieces in multisplits_indexed(t, t2.n_leaves):
        lo, hi = leaf_ranges(t.n_leaves, cuts)[slot]
        if not lo <= h <= hi:
            continue
        if not certs:
            yield None, cuts, pieces
            continue
        for c in certs:
            if lo <= c <= hi:
                yield c, cuts, pieces


def product_I_terms(t: PlanarTree, t2: PlanarTree, smc: str = "unique") -> FormalSum:
    out = FormalSum()
    for _, _, pieces in decompositions_I(t, t2, smc):
        out.add_term(operad_gamma(pieces, t2))
    return out


def product_I(a, b, smc: str = "unique") -> FormalSum:
    """Graphical product restricted to decompositions that put h(T) (and
    h(π_C T) when T is in Dom(I)) into the piece grafted at the head of T'."""
    out = FormalSum()
    for t, ca in FormalSum.of(a).items():
        for t2, cb in FormalSum.of(b).items():
            out += (ca * cb) * product_I_terms(t, t2, smc)
    return out


def intmergeprod_sides(t: PlanarTree, t2: PlanarTree, smc: str = "unique"):
    """Both sides of I(T ⋆_I T') = Σ π_C(T_h) ^> γ(..., ρ_C(T_h), ...; T').

    The left side applies ``internal_merge`` to each product term; the
    right side performs the movement inside the piece before grafting.
    """
    lhs, rhs = FormalSum(), FormalSum()
    slot = head_index(t2)
    for cert, cuts, pieces in decompositions_I(t, t2, smc):
        lhs += internal_merge(operad_gamma(pieces, t2), smc)
        lo, _ = leaf_ranges(t.n_leaves, cuts)[slot]
        piece = pieces[slot]
        proj = maximal_projection(piece, cert - lo)
        moved = consume_head(piece.subtree_at(proj))
        rest = list(pieces)
        rest[slot] = remove_subtrees(piece, [proj])
        body = consume_head(operad_gamma(rest, t2))
        rhs.add_term(PlanarTree.node(moved, body, ">"))
    return lhs, rhs


# --------------------------------------------------------------------------
# iterated internal merge


def _projections_disjoint(addrs: Sequence[Addr]) -> bool:
    for i, a in enumerate(addrs):
        for b in addrs[i + 1:]:
            if a[: len(b)] == b or b[: len(a)] == a:
                return False
    return True


def dom_im_n(t: PlanarTree, n: int) -> tuple[bool, list[tuple[IMCertificate, ...]]]:
    """Membership in the domain of the n-fold internal Merge.

    The head must start with n licensor features; each needs its own
    licensee leaf, with pairwise disjoint maximal projections.
    """
    if n < 1:
        raise ValueError("n must be positive")
    hf = head_features(t)
    if len(hf) < n or any(f.kind != LSR for f in hf[:n]):
        return False, []
    h = head_index(t)
    leaves = t.leaves()
    slots = []
    for f in hf[:n]:
        want = Feature(LSE, f.base)
        slots.append([i for i, lab in enumerate(leaves)
                      if i != h and isinstance(lab, MGLeaf) and lab.first == want])
    certs = []
    for choice in product(*slots):
        if len(set(choice)) != n:
            continue
        projs = [maximal_projection(t, i) for i in choice]
        if _projections_disjoint(projs):
            certs.append(tuple(IMCertificate(i, p, f.base)
                               for i, p, f in zip(choice, projs, hf[:n])))
    return bool(certs), certs


def iterated_internal_merge(t: PlanarTree, n: int, smc: str = "unique",
                            association: str = "right") -> FormalSum:
    """n-fold internal Merge in one step.

    The moved projections T_n^M, ..., T_1^M are grafted with ``^>`` above
    the remainder.  ``association='right'`` nests them as
    T_n ^ (T_{n-1} ^ (... ^ (T_1 ^ rho))), which is what n successive
    internal Merges produce; ``'left'`` folds them from the left first.
    """
    _check_modes(smc=smc)
    ok, certs = dom_im_n(t, n)
    if not ok:
        raise DomainError(f"{t} is not in the domain of {n}-fold internal Merge")
    if smc == "unique" and len(certs) > 1:
        raise AmbiguityError(f"{len(certs)} certificates for {n}-fold internal Merge on {t}")
    out = FormalSum()
    for cert in certs:
        moved = [consume_head(t.subtree_at(c.projection)) for c in cert]
        rho = consume_head(remove_subtrees(t, [c.projection for c in cert]), n)
        if association == "right":
            acc = rho
            for m in moved:
                acc = PlanarTree.node(m, acc, ">")
        elif association == "left":
            acc = moved[-1]
            for m in reversed(moved[:-1]):
                acc = PlanarTree.node(acc, m, ">")
            acc = PlanarTree.node(acc, rho, ">")
        else:
            raise ValueError(f"unknown association {association!r}")
        out.add_term(acc)
    return out


def sequential_internal_merge(t: PlanarTree, n: int, smc: str = "unique") -> FormalSum:
    cur = FormalSum.term(t)
    for _ in range(n):
        cur = cur.map(lambda s: internal_merge(s, smc))
    return cur


def coset_reduce(a, n: int = 1) -> FormalSum:
    """Drop the basis terms lying in the domain of n-fold internal Merge."""
    return FormalSum.of(a).filter(lambda t: not dom_im_n(t, n)[0])


# --------------------------------------------------------------------------
# enumeration of small MG trees


def label_leaves(shape: PlanarTree, labels: Sequence) -> PlanarTree:
    it = iter(labels)
    return shape.map_leaves(lambda _: next(it))


def arrow_shapes(n_leaves: int) -> list[PlanarTree]:
    return planar_shapes(n_leaves, "x", ARROWS)


def mg_trees(n_leaves: int, vocabulary: Sequence[MGLeaf]) -> Iterator[PlanarTree]:
    for shape in arrow_shapes(n_leaves):
        for labels in product(vocabulary, repeat=n_leaves):
            yield label_leaves(shape, labels)


def blank_mg_trees(n_leaves: int) -> list[PlanarTree]:
    """MG shapes whose leaves carry no features."""
    blank = MGLeaf("")
    return [label_leaves(s, [blank] * n_leaves) for s in arrow_shapes(n_leaves)]


def dom_trees(n_leaves: int, alphabet: Sequence[str] = ("A", "B"),
              smc: str = "unique", symmetric: bool = False) -> Iterator[PlanarTree]:
    """Trees in Dom(I) over the alphabet, up to first features.

    The head carries ``lsr(X)``; every other leaf carries ``lse(Y)`` for
    some Y or nothing.  In unique mode exactly one leaf matches X.  With
    ``symmetric`` only the first letter is used for X: every law checked
    here is invariant under renaming the alphabet.
    """
    blank = PlanarTree.leaf(MGLeaf(""))
    heads = list(alphabet[:1]) if symmetric else list(alphabet)
    cap = 1 if smc == "unique" else n_leaves
    for shape in arrow_shapes(n_leaves):
        h = head_index(shape)
        for x in heads:
            head = PlanarTree.leaf(MGLeaf("", (Feature(LSR, x),)))
            pool = [(PlanarTree.leaf(MGLeaf("", (Feature(LSE, y),))), int(y == x)) for y in alphabet]
            pool.append((blank, 0))
            choices = [[(head, 0)] if i == h else pool for i in range(n_leaves)]
            for t, hits in _labelings(shape, choices, 0, cap):
                if hits:
                    yield t


def _labelings(shape: PlanarTree, choices, start: int, cap: int) -> list:
    """All ways to fill the leaves of ``shape`` from per-position choices,
    as (tree, hits) with at most ``cap`` hits; subtrees are shared."""
    if shape.is_leaf:
        return choices[start]
    out = []
    right = _labelings(shape.right, choices, start + shape.left.n_leaves, cap)
    for lt, lh in _labelings(shape.left, choices, start, cap):
        for rt, rh in right:
            if lh + rh <= cap:
                out.append((PlanarTree.node(lt, rt, shape.vlabel), lh + rh))
    return out


# --------------------------------------------------------------------------
# per-instance law outcomes


def coideal_outcome(t: PlanarTree, smc: str = "unique"):
    try:
        terms = coproduct_I_terms(t, smc)
    except AmbiguityError:
        return Skip("ambiguous certificate")
    for a, b in terms.support():
        if not (is_dom_im(a) or is_dom_im(b)):
            return {"tree": str(t), "term": [str(a), str(b)]}
    return PASS


def right_ideal_outcome(t: PlanarTree, t2: PlanarTree, smc: str = "unique"):
    try:
        terms = product_I_terms(t, t2, smc)
    except AmbiguityError:
        return Skip("ambiguous certificate")
    for u in terms.support():
        if not is_dom_im(u):
            return {"pair": [str(t), str(t2)], "term": str(u)}
    return PASS


def left_ideal_outcome(t2: PlanarTree, t: PlanarTree, smc: str = "unique"):
    """Is T' ⋆_I T inside span Dom(I) for T in Dom(I)?  Escapes are witnesses."""
    try:
        terms = product_I(t2, t, smc)
    except AmbiguityError:
        return Skip("ambiguous certificate")
    for u, _ in terms.items():
        if not is_dom_im(u):
            hf = head_features(u)
            why = ("head of the product carries no licensor" if not hf or hf[0].kind != LSR
                   else "licensor of the head has no matching licensee")
            return {"pair": [str(t2), str(t)], "escaping term": str(u), "class": why}
    return PASS


def intmergeprod_outcome(t: PlanarTree, t2: PlanarTree, smc: str = "unique"):
    try:
        lhs, rhs = intmergeprod_sides(t, t2, smc)
    except AmbiguityError:
        return Skip("internal Merge not single-valued on a product term")
    if lhs == rhs:
        return PASS
    return {"pair": [str(t), str(t2)], "lhs": str(lhs), "rhs": str(rhs)}


def nested_domain_outcome(t: PlanarTree, n: int):
    ok_hi, certs_hi = dom_im_n(t, n + 1)
    if not ok_hi:
        return Skip(f"not in the domain of {n + 1}-fold internal Merge")
    ok_lo, certs_lo = dom_im_n(t, n)
    missing = [c[:n] for c in certs_hi if c[:n] not in certs_lo]
    if ok_lo and not missing:
        return PASS
    return {"tree": str(t), "n": n}


def coset_outcome(a: PlanarTree, b: PlanarTree, smc: str = "unique"):
    try:
        lhs = coset_reduce(product_I(a, b, smc))
        rhs = coset_reduce(product_I(coset_reduce(a), b, smc))
    except AmbiguityError:
        return Skip("ambiguous certificate")
    return PASS if lhs == rhs else {"pair": [str(a), str(b)], "lhs": str(lhs), "rhs": str(rhs)}


def nested_domain_trees(max_leaves: int, alphabet: Sequence[str] = ("A", "B")) -> Iterator[PlanarTree]:
    """Trees whose head starts with two licensors, for the nesting check."""
    pool = [(PlanarTree.leaf(MGLeaf("", (Feature(LSE, z),))), 0) for z in alphabet]
    pool.append((PlanarTree.leaf(MGLeaf("")), 0))
    for n in range(3, max_leaves + 1):
        for shape in arrow_shapes(n):
            h = head_index(shape)
            for x, y in product(alphabet, repeat=2):
                head = PlanarTree.leaf(MGLeaf("", (Feature(LSR, x), Feature(LSR, y))))
                choices = [[(head, 0)] if i == h else pool for i in range(n)]
                for t, _ in _labelings(shape, choices, 0, n):
                    yield t


# --------------------------------------------------------------------------
# the grafting identities with a partially defined ^


def _graft_vocabulary(alphabet: Sequence[str]) -> list[MGLeaf]:
    return [MGLeaf("", (f,)) for x in alphabet for f in (Feature(CAT, x), Feature(SEL, x))]


def cocycle_instances(max_leaves: int, domain: str, alphabet: Sequence[str]) -> list[PlanarTree]:
    if domain == "unrestricted":
        return [t for n in range(1, max_leaves + 1) for t in planar_shapes(n, "x", ARROWS)]
    vocab = _graft_vocabulary(alphabet)
    return [t for n in range(1, max_leaves + 1) for t in mg_trees(n, vocab)]


def _in_domain(x, y, arrow, domain, mode) -> bool:
    return domain == "unrestricted" or in_graft_domain(x, y, arrow, mode)


@lru_cache(maxsize=None)
def _prod_terms(a: PlanarTree, b: PlanarTree, form: str) -> tuple:
    prod = lr_product if form == "recursive" else lr_product_graphical
    return tuple(prod(a, b).items())


@lru_cache(maxsize=None)
def _cop_terms(t: PlanarTree, form: str) -> tuple:
    cop = lr_coproduct_recursive if form == "recursive" else lr_coproduct
    return tuple(cop(t).items())


def veeid_outcome(a: PlanarTree, b: PlanarTree, domain: str, mode: str = "first",
                  form: str = "recursive"):
    """a ⋆ b = a_l ^ (a_r ⋆ b) + (a ⋆ b_l) ^ b_r, with each ^ at the root label."""
    right, left = _prod_terms(a.right, b, form), _prod_terms(a, b.left, form)
    if not (all(_in_domain(a.left, u, a.vlabel, domain, mode) for u, _ in right)
            and all(_in_domain(u, b.right, b.vlabel, domain, mode) for u, _ in left)):
        return Skip("term outside the grafting domain")
    rhs = FormalSum()
    for u, c in right:
        rhs.add_term(PlanarTree.node(a.left, u, a.vlabel), c)
    for u, c in left:
        rhs.add_term(PlanarTree.node(u, b.right, b.vlabel), c)
    lhs = FormalSum(_prod_terms(a, b, form))
    return PASS if lhs == rhs else {"pair": [str(a), str(b)], "lhs": str(lhs), "rhs": str(rhs)}


def cocycle_outcome(a: PlanarTree, b: PlanarTree, arrow: str, domain: str,
                    mode: str = "first", form: str = "recursive"):
    """Δ(a ^ b) = (a ^ b) ⊗ 1 + Σ (a' ⋆ b') ⊗ (a'' ^ b'')."""
    ca_terms, cb_terms = _cop_terms(a, form), _cop_terms(b, form)
    if not all(_in_domain(x[1], y[1], arrow, domain, mode)
               for x, _ in ca_terms for y, _ in cb_terms):
        return Skip("term outside the grafting domain")
    t = PlanarTree.node(a, b, arrow)
    last = t
    while not last.is_leaf:
        last = last.right
    rhs = FormalSum.term((t, last))
    for (a1, a2), ca in ca_terms:
        for (b1, b2), cb in cb_terms:
            top = PlanarTree.node(a2, b2, arrow)
            for u, cu in _prod_terms(a1, b1, form):
                rhs.add_term((u, top), ca * cb * cu)
    lhs = FormalSum(_cop_terms(t, form))
    return PASS if lhs == rhs else {"pair": [str(a), str(b)], "arrow": arrow,
                                    "lhs": str(lhs), "rhs": str(rhs)}


def cocycle_checks(max_leaves: int = 4, domain: str = "external-merge", mode: str = "first",
                   form: str = "recursive", alphabet: Sequence[str] = ("A",)) -> dict:
    """Both grafting identities over trees with at most ``max_leaves`` leaves.

    An instance is skipped as soon as one of its grafts falls outside the
    domain of the partially defined ^.
    """
    from .report import collect

    if domain not in ("unrestricted", "external-merge"):
        raise ValueError(f"unknown domain {domain!r}")
    trees = cocycle_instances(max_leaves, domain, alphabet)
    internal = [t for t in trees
                if not t.is_leaf and _in_domain(t.left, t.right, t.vlabel, domain, mode)]

    def vee():
        for a in internal:
            for b in internal:
                yield veeid_outcome(a, b, domain, mode, form)

    def coc():
        for a in trees:
            for b in trees:
                for arrow in ARROWS:
                    if not _in_domain(a, b, arrow, domain, mode):
                        continue
                    yield cocycle_outcome(a, b, arrow, domain, mode, form)

    return {"veeid": collect("veeid", vee()), "cocycle": collect("cocycle", coc())}
