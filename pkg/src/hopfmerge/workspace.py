"""Workspaces (forests of syntactic objects), their coproduct and the
action of Merge on them.

The coproduct of a tree sums, over admissible cuts, the forest of
extracted subtrees tensored with the quotient; it extends to forests
multiplicatively.  ``merge_action`` applies Merge by locating matching
accessible terms directly; ``merge_action_algebraic`` obtains the same sum
by selecting terms of the coproduct and grafting them.  The graded
variants annotate each component with an integer ε-degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .linear import FormalSum
from .magma import b_plus, merge_m
from .trees import (UNIT, AbstractTree, Addr, admissible_cuts, canonicalize, format_addr,
                    parse_abstract, quotient)

EXTERNAL, INTERNAL, SIDEWARD, COUNTERCYCLIC = "External", "Internal", "Sideward", "Countercyclic"


class Workspace:
    """Finite multiset of abstract trees, kept sorted by text."""

    __slots__ = ("components", "text", "_hash")

    def __init__(self, components: Iterable = ()):
        comps = [c for c in components if c is not UNIT]
        self.components = tuple(sorted((canonicalize(c) for c in comps), key=lambda c: c.text))
        self.text = " | ".join(c.text for c in self.components) if self.components else "1"
        self._hash = hash(("W", self.text))

    @classmethod
    def parse(cls, text: str) -> "Workspace":
        text = text.strip()
        if text in ("", "1"):
            return cls()
        return cls(parse_abstract(part) for part in text.split("|"))

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, Workspace) and self.text == other.text

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Workspace") -> bool:
        return self.text < other.text

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"Workspace({self.text!r})"

    def union(self, other: "Workspace") -> "Workspace":
        return Workspace(self.components + other.components)

    @property
    def n_leaves(self) -> int:
        return sum(c.n_leaves for c in self.components)


def as_workspace(x) -> Workspace:
    if isinstance(x, Workspace):
        return x
    if isinstance(x, str):
        return Workspace.parse(x)
    if isinstance(x, AbstractTree):
        return Workspace([x])
    return Workspace(x)


@dataclass(frozen=True)
class AccessibleTerm:
    component: int
    addr: Addr
    depth: int
    tree: AbstractTree

    def to_json(self) -> dict:
        return {"component": self.component, "addr": format_addr(self.addr),
                "depth": self.depth, "tree": str(self.tree)}


def accessible_terms(f) -> list[AccessibleTerm]:
    """Every vertex of every component, roots included."""
    f = as_workspace(f)
    return [AccessibleTerm(i, a, len(a), t.subtree_at(a))
            for i, t in enumerate(f.components) for a in t.vertices()]


# --------------------------------------------------------------------------
# coproduct


@dataclass(frozen=True)
class CutTerm:
    """One admissible cut of one component."""

    cut: tuple
    extracted: tuple  # AbstractTree per cut vertex
    quotient: object  # AbstractTree or UNIT
    depth: int        # sum of the depths of the cut vertices


def cut_terms(t: AbstractTree, full_cover: bool = True) -> list[CutTerm]:
    out = []
    for cut in admissible_cuts(t):
        q = quotient(t, cut)
        if q is UNIT and cut != ((),) and not full_cover:
            continue
        out.append(CutTerm(cut, tuple(t.subtree_at(a) for a in cut), q, sum(len(a) for a in cut)))
    return out


def _forest_cuts(f: Workspace, full_cover: bool):
    per = [cut_terms(t, full_cover) for t in f.components]
    for combo in product(*per):
        yield combo


def ws_coproduct(f, full_cover: bool = True) -> FormalSum:
    """Σ F_v ⊗ F/F_v over admissible cuts of every component."""
    f = as_workspace(f)
    out = FormalSum()
    for combo in _forest_cuts(f, full_cover):
        ext = Workspace(x for ct in combo for x in ct.extracted)
        quo = Workspace(ct.quotient for ct in combo)
        out.add_term((ext, quo))
    return out


def ws_coproduct_2(f) -> FormalSum:
    """Single-subtree part: Σ over accessible terms T_v ⊗ F/T_v."""
    f = as_workspace(f)
    out = FormalSum()
    for at in accessible_terms(f):
        rest = [c for j, c in enumerate(f.components) if j != at.component]
        q = quotient(f.components[at.component], [at.addr])
        out.add_term((Workspace([at.tree]), Workspace(rest + [q])))
    return out


def graded_coproduct(f, full_cover: bool = True) -> FormalSum:
    """Coproduct with ε-degrees: keys are ``(extracted, quotient, d)`` and
    the two sides carry +d and −d."""
    f = as_workspace(f)
    out = FormalSum()
    for combo in _forest_cuts(f, full_cover):
        ext = Workspace(x for ct in combo for x in ct.extracted)
        quo = Workspace(ct.quotient for ct in combo)
        out.add_term((ext, quo, sum(ct.depth for ct in combo)))
    return out


def ws_product(a: FormalSum, b: FormalSum) -> FormalSum:
    """Disjoint union extended bilinearly (also on tensors, componentwise)."""
    out = FormalSum()
    for ka, ca in a.items():
        for kb, cb in b.items():
            if isinstance(ka, tuple):
                key = tuple(x.union(y) for x, y in zip(ka, kb))
            else:
                key = ka.union(kb)
            out.add_term(key, ca * cb)
    return out


def coassociativity_sides(f, full_cover: bool = True) -> tuple[FormalSum, FormalSum]:
    d = ws_coproduct(f, full_cover)
    left, right = FormalSum(), FormalSum()
    for (x, y), c in d.items():
        for (x1, x2), c1 in ws_coproduct(x, full_cover).items():
            left.add_term((x1, x2, y), c * c1)
        for (y1, y2), c2 in ws_coproduct(y, full_cover).items():
            right.add_term((x, y1, y2), c * c2)
    return left, right


# --------------------------------------------------------------------------
# the Merge action


@dataclass(frozen=True)
class MergeTerm:
    result: Workspace
    mtype: str
    degrees: tuple
    occurrences: tuple = ()

    def to_json(self) -> dict:
        return {"result": str(self.result), "mtype": self.mtype, "degrees": list(self.degrees),
                "occurrences": [o.to_json() for o in self.occurrences]}


@dataclass(frozen=True)
class UnsupportedNesting:
    """Two matches inside one component, one below the other, neither the root."""

    outer: AccessibleTerm
    inner: AccessibleTerm

    def to_json(self) -> dict:
        return {"marker": "unsupported nesting", "outer": self.outer.to_json(),
                "inner": self.inner.to_json()}


def _below(a: Addr, b: Addr) -> bool:
    return len(b) > len(a) and b[: len(a)] == a


def _graded_result(parts: Sequence[tuple]) -> tuple[Workspace, tuple]:
    parts = sorted(((t, d) for t, d in parts if t is not UNIT), key=lambda p: (p[0].text, p[1]))
    return Workspace(t for t, _ in parts), tuple(d for _, d in parts)


def merge_terms(s, s2, f) -> tuple[list[MergeTerm], list[UnsupportedNesting]]:
    """Apply Merge to every admissible pair of matching accessible terms."""
    s, s2, f = canonicalize(_tree(s)), canonicalize(_tree(s2)), as_workspace(f)
    acc = accessible_terms(f)
    first = [o for o in acc if o.tree == s]
    second = [o for o in acc if o.tree == s2]
    terms, nested = [], []
    for o1 in first:
        for o2 in second:
            if (o1.component, o1.addr) == (o2.component, o2.addr):
                continue
            rest = [(c, 0) for j, c in enumerate(f.components) if j not in (o1.component, o2.component)]
            if o1.component != o2.component:
                t1, t2 = f.components[o1.component], f.components[o2.component]
                parts = rest + [
                    (merge_m(o1.tree, o2.tree), abs(o1.depth + o2.depth)),
                    (quotient(t1, [o1.addr]), -o1.depth),
                    (quotient(t2, [o2.addr]), -o2.depth),
                ]
                kind = EXTERNAL if o1.depth == 0 and o2.depth == 0 else SIDEWARD
            else:
                t = f.components[o1.component]
                if o1.depth == 0 or o2.depth == 0:
                    inner = o2 if o1.depth == 0 else o1
                    q = quotient(t, [inner.addr])
                    parts = rest + [(merge_m(inner.tree, q), abs(inner.depth - inner.depth))]
                    kind = INTERNAL
                elif _below(o1.addr, o2.addr) or _below(o2.addr, o1.addr):
                    outer, inner = (o1, o2) if _below(o1.addr, o2.addr) else (o2, o1)
                    nested.append(UnsupportedNesting(outer, inner))
                    continue
                else:
                    q = quotient(t, [o1.addr, o2.addr])
                    parts = rest + [(merge_m(o1.tree, o2.tree), abs(o1.depth + o2.depth)),
                                    (q, -(o1.depth + o2.depth))]
                    kind = COUNTERCYCLIC
            ws, degs = _graded_result(parts)
            terms.append(MergeTerm(ws, kind, degs, (o1, o2)))
    return terms, nested


def _tree(x):
    return parse_abstract(x) if isinstance(x, str) else x


def merge_action(s, s2, f) -> FormalSum:
    """Sum of the workspaces produced by Merge(S, S'); F itself if nothing applies."""
    terms, _ = merge_terms(s, s2, f)
    if not terms:
        return FormalSum.term(as_workspace(f))
    out = FormalSum()
    for t in terms:
        out.add_term(t.result)
    return out


def merge_graded(s, s2, f) -> list[MergeTerm]:
    terms, _ = merge_terms(s, s2, f)
    return sorted(terms, key=lambda t: (t.result.text, t.mtype, t.degrees,
                                        [(o.component, o.addr) for o in t.occurrences]))


def minimal_search_filter(terms: Iterable[MergeTerm]) -> list[MergeTerm]:
    """Keep the terms that survive ε → 0: every component degree is 0."""
    return [t for t in terms if all(d == 0 for d in t.degrees)]


def merge_action_algebraic(s, s2, f) -> FormalSum:
    """⊔ ∘ (B ⊗ id) ∘ δ_{S,S'} ∘ Δ.

    The coproduct is enumerated cut by cut.  A term is selected when its
    extracted forest is exactly one copy of S and one of S', or when it
    is a single proper subtree matching one of them cut from a component
    that as a whole matches the other; in that case the co-factor
    quotient of that component is grafted with the extracted copy.
    """
    s, s2, f = canonicalize(_tree(s)), canonicalize(_tree(s2)), as_workspace(f)
    out = FormalSum()
    for combo in _forest_cuts(f, True):
        touched = [i for i, ct in enumerate(combo) if ct.cut]
        pieces = [x for ct in combo for x in ct.extracted]
        quos = [ct.quotient for ct in combo]
        if len(pieces) == 2:
            a, b = pieces
            n = (a == s and b == s2) + (b == s and a == s2)
            if n:
                out.add_term(Workspace(quos + [b_plus([a, b])]), n)
        elif len(pieces) == 1 and combo[touched[0]].cut != ((),):
            i = touched[0]
            whole = f.components[i]
            piece, q = pieces[0], quos[i]
            n = (piece == s and whole == s2) + (piece == s2 and whole == s)
            if n:
                rest = quos[:i] + quos[i + 1:]
                out.add_term(Workspace(rest + [b_plus([piece, q])]), n)
    if not out:
        return FormalSum.term(f)
    return out
