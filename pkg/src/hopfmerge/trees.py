"""Rooted trees: unordered (abstract) and planar, with text round-trip.

Abstract trees are kept in a canonical form in which the children of each
vertex are sorted by their text, so structural equality is string
equality.  Vertices are addressed by tuples of child indices read from
the root; ``()`` is the root.

Text forms::

    abstract := SYM | '{' abstract ' ' abstract '}'
    planar   := LEAF | '[' (LABEL ' ')? planar ' ' planar ']'
    LEAF     := SYM | SYM ':' '"' features '"' | '"' features '"'
"""
from __future__ import annotations

import re
from itertools import product
from typing import Iterable, Iterator, Sequence

from .features import MGLeaf, parse_features

Addr = tuple  # tuple[int, ...]

_SYM = r"[^\s{}\[\]\"<>:|()]+"
_SYM_RE = re.compile(rf"^{_SYM}$")


class TreeSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos


class _Unit:
    """The empty forest, printed as ``1``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "1"

    __str__ = __repr__

    def __reduce__(self):
        return (_Unit, ())


UNIT = _Unit()


def format_addr(addr: Addr) -> str:
    return "".join(str(i) for i in addr) if addr else "root"


def parse_addr(text: str) -> Addr:
    text = text.strip()
    if text in ("", "root", "()"):
        return ()
    if not set(text) <= set("0123456789"):
        raise ValueError(f"bad vertex address {text!r}")
    return tuple(int(c) for c in text)


# --------------------------------------------------------------------------
# abstract trees


class AbstractTree:
    __slots__ = ("label", "children", "text", "_hash", "n_leaves", "is_leaf")

    def __init__(self, label: str | None, children: tuple):
        self.is_leaf = not children
        self.label = label
        self.children = children
        if children:
            self.text = "{" + " ".join(c.text for c in children) + "}"
            self.n_leaves = sum(c.n_leaves for c in children)
        else:
            self.text = label
            self.n_leaves = 1
        self._hash = hash(("A", self.text))

    @classmethod
    def leaf(cls, label: str) -> "AbstractTree":
        if not isinstance(label, str) or not _SYM_RE.match(label):
            raise ValueError(f"invalid leaf symbol {label!r}")
        return cls(label, ())

    @classmethod
    def node(cls, *children: "AbstractTree") -> "AbstractTree":
        if not children:
            raise ValueError("a vertex needs at least one child")
        return cls(None, tuple(sorted(children, key=lambda c: c.text)))

    @property
    def is_binary(self) -> bool:
        if self.is_leaf:
            return True
        return len(self.children) == 2 and all(c.is_binary for c in self.children)

    def __eq__(self, other) -> bool:
        return isinstance(other, AbstractTree) and self.text == other.text

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "AbstractTree") -> bool:
        return self.text < other.text

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"AbstractTree({self.text!r})"

    def leaves(self) -> list[str]:
        if self.is_leaf:
            return [self.label]
        return [x for c in self.children for x in c.leaves()]

    def vertices(self) -> list[Addr]:
        """All vertex addresses in preorder."""
        out: list[Addr] = []

        def walk(t, a):
            out.append(a)
            for i, c in enumerate(t.children):
                walk(c, a + (i,))

        walk(self, ())
        return out

    def internal_vertices(self) -> list[Addr]:
        return [a for a in self.vertices() if not self.subtree_at(a).is_leaf]

    def leaf_addresses(self) -> list[Addr]:
        return [a for a in self.vertices() if self.subtree_at(a).is_leaf]

    def subtree_at(self, addr: Addr) -> "AbstractTree":
        t = self
        for i in addr:
            if i >= len(t.children):
                raise KeyError(f"no vertex at {format_addr(addr)} in {self.text}")
            t = t.children[i]
        return t

    def depth(self) -> int:
        return 0 if self.is_leaf else 1 + max(c.depth() for c in self.children)


def canonicalize(raw) -> AbstractTree:
    """Build the canonical binary abstract tree from nested data.

    ``raw`` may be a leaf symbol, a pair (list or tuple) of raw trees, an
    ``AbstractTree`` or a ``PlanarTree`` (whose order is forgotten).
    """
    if isinstance(raw, AbstractTree):
        if not raw.is_binary:
            raise ValueError(f"not a binary tree: {raw.text}")
        return raw
    if isinstance(raw, PlanarTree):
        return forget_planar(raw)
    if isinstance(raw, str):
        return AbstractTree.leaf(raw)
    if isinstance(raw, (tuple, list)):
        if len(raw) != 2:
            raise ValueError(f"vertex with {len(raw)} children; binary trees only")
        return AbstractTree.node(canonicalize(raw[0]), canonicalize(raw[1]))
    raise TypeError(f"cannot build a tree from {raw!r}")


def _check_cut(t, cut: Iterable[Addr]) -> tuple:
    cut = tuple(sorted(set(tuple(a) for a in cut)))
    for a in cut:
        t.subtree_at(a)
    for i, a in enumerate(cut):
        for b in cut[i + 1:]:
            if b[: len(a)] == a:
                raise ValueError(
                    f"cut is not an antichain: {format_addr(a)} lies above {format_addr(b)}")
    return cut


def quotient(t: AbstractTree, cut: Iterable[Addr]):
    """Remove the subtrees at ``cut`` and contract the vertices left unary.

    Returns ``UNIT`` when nothing remains.
    """
    cut = _check_cut(t, cut)
    r = _quotient(t, cut)
    return UNIT if r is None else r


def _quotient(t: AbstractTree, cut: tuple):
    if () in cut:
        return None
    if not cut:
        return t
    kept = []
    for i, c in enumerate(t.children):
        sub = tuple(a[1:] for a in cut if a[0] == i)
        r = _quotient(c, sub)
        if r is not None:
            kept.append(r)
    if not kept:
        return None
    if len(kept) == 1:
        return kept[0]
    return AbstractTree.node(*kept)


def elementary_cut(t: AbstractTree, v: Addr):
    """Cut the single edge above ``v``: returns ``(T_v, T/T_v)``."""
    return t.subtree_at(v), quotient(t, [v])


def _antichains(t: AbstractTree) -> list[tuple]:
    # every antichain of vertices of t, the root included
    if t.is_leaf:
        return [(), ((),)]
    per_child = []
    for i, c in enumerate(t.children):
        per_child.append([tuple((i,) + a for a in ac) for ac in _antichains(c)])
    out = [((),)]
    for combo in product(*per_child):
        out.append(tuple(a for part in combo for a in part))
    return out


def admissible_cuts(t: AbstractTree) -> list[tuple]:
    """All admissible cuts as sorted tuples of addresses.

    The empty cut ``()`` and the root cut ``((),)`` are included.
    """
    cuts = [tuple(sorted(c)) for c in _antichains(t)]
    return sorted(cuts, key=lambda c: (len(c), c))


# --------------------------------------------------------------------------
# planar trees


class PlanarTree:
    """Planar binary tree; internal vertices carry an optional label.

    Leaf labels are symbols or ``MGLeaf`` objects.
    """

    __slots__ = ("label", "left", "right", "vlabel", "text", "_hash", "n_leaves", "is_leaf", "_leaves")

    def __init__(self, label, left, right, vlabel):
        self.is_leaf = left is None
        self.label = label
        self.left = left
        self.right = right
        self.vlabel = vlabel
        if left is None:
            self.text = str(label)
            self.n_leaves = 1
        else:
            head = "[" if vlabel is None else f"[{vlabel} "
            self.text = head + left.text + " " + right.text + "]"
            self.n_leaves = left.n_leaves + right.n_leaves
        self._hash = hash(("P", self.text))
        self._leaves = None

    @classmethod
    def leaf(cls, label="x") -> "PlanarTree":
        if isinstance(label, str) and not _SYM_RE.match(label):
            raise ValueError(f"invalid leaf symbol {label!r}")
        return cls(label, None, None, None)

    @classmethod
    def node(cls, left: "PlanarTree", right: "PlanarTree", vlabel=None) -> "PlanarTree":
        return cls(None, left, right, vlabel)

    @property
    def degree(self) -> int:
        """Number of internal vertices."""
        return self.n_leaves - 1

    @property
    def children(self) -> tuple:
        return () if self.left is None else (self.left, self.right)

    def __eq__(self, other) -> bool:
        return isinstance(other, PlanarTree) and self.text == other.text

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "PlanarTree") -> bool:
        return self.text < other.text

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"PlanarTree({self.text!r})"

    def leaves(self) -> tuple:
        if self._leaves is None:
            self._leaves = ((self.label,) if self.is_leaf
                            else self.left.leaves() + self.right.leaves())
        return self._leaves

    def vertices(self) -> list[Addr]:
        out: list[Addr] = []

        def walk(t, a):
            out.append(a)
            if not t.is_leaf:
                walk(t.left, a + (0,))
                walk(t.right, a + (1,))

        walk(self, ())
        return out

    def leaf_addresses(self) -> list[Addr]:
        return [a for a in self.vertices() if self.subtree_at(a).is_leaf]

    def subtree_at(self, addr: Addr) -> "PlanarTree":
        t = self
        for i in addr:
            if t.is_leaf or i not in (0, 1):
                raise KeyError(f"no vertex at {format_addr(addr)} in {self.text}")
            t = t.left if i == 0 else t.right
        return t

    def replace_at(self, addr: Addr, new: "PlanarTree") -> "PlanarTree":
        if not addr:
            return new
        if self.is_leaf:
            raise KeyError(format_addr(addr))
        if addr[0] == 0:
            return PlanarTree.node(self.left.replace_at(addr[1:], new), self.right, self.vlabel)
        return PlanarTree.node(self.left, self.right.replace_at(addr[1:], new), self.vlabel)

    def map_leaves(self, f) -> "PlanarTree":
        if self.is_leaf:
            return PlanarTree.leaf(f(self.label))
        return PlanarTree.node(self.left.map_leaves(f), self.right.map_leaves(f), self.vlabel)


def forget_planar(p: PlanarTree) -> AbstractTree:
    """Forget the planar order (and vertex labels)."""
    if p.is_leaf:
        lab = p.label
        return AbstractTree.leaf(lab if isinstance(lab, str) else (lab.name or "_"))
    return AbstractTree.node(forget_planar(p.left), forget_planar(p.right))


def planar_embeddings(t: AbstractTree, vlabel=None) -> list[PlanarTree]:
    """All distinct planar trees whose underlying abstract tree is ``t``."""
    if t.is_leaf:
        return [PlanarTree.leaf(t.label)]
    if len(t.children) != 2:
        raise ValueError("planar embeddings are defined for binary trees")
    a, b = t.children
    ea = planar_embeddings(a, vlabel)
    eb = ea if a == b else planar_embeddings(b, vlabel)
    out = {PlanarTree.node(x, y, vlabel) for x in ea for y in eb}
    if a != b:
        out |= {PlanarTree.node(y, x, vlabel) for x in ea for y in eb}
    return sorted(out)


def asymmetric_vertex_count(t: AbstractTree) -> int:
    if t.is_leaf:
        return 0
    a, b = t.children
    return (a != b) + asymmetric_vertex_count(a) + asymmetric_vertex_count(b)


# --------------------------------------------------------------------------
# enumeration


def planar_shapes(n_leaves: int, leaf="x", vlabels: Sequence = (None,)) -> list[PlanarTree]:
    """All planar binary trees with ``n_leaves`` leaves and labelled vertices."""
    return list(_planar_shapes(n_leaves, leaf, tuple(vlabels)))


_shape_cache: dict = {}


def _planar_shapes(n: int, leaf, vlabels: tuple) -> tuple:
    key = (n, leaf, vlabels)
    if key in _shape_cache:
        return _shape_cache[key]
    if n == 1:
        res = (PlanarTree.leaf(leaf),)
    else:
        out = []
        for k in range(1, n):
            lefts = _planar_shapes(k, leaf, vlabels)
            rights = _planar_shapes(n - k, leaf, vlabels)
            for d in vlabels:
                for lt in lefts:
                    for rt in rights:
                        out.append(PlanarTree.node(lt, rt, d))
        res = tuple(out)
    _shape_cache[key] = res
    return res


def planar_trees(k_internal: int, vlabels: Sequence = (None,), leaf="x") -> list[PlanarTree]:
    return planar_shapes(k_internal + 1, leaf, vlabels)


def abstract_trees(n_leaves: int, alphabet: Sequence[str] = ("x",)) -> list[AbstractTree]:
    """All canonical abstract binary trees with ``n_leaves`` leaves."""
    return sorted(_abstract_trees(n_leaves, tuple(alphabet)))


_abs_cache: dict = {}


def _abstract_trees(n: int, alphabet: tuple) -> frozenset:
    key = (n, alphabet)
    if key in _abs_cache:
        return _abs_cache[key]
    if n == 1:
        res = frozenset(AbstractTree.leaf(a) for a in alphabet)
    else:
        out = set()
        for k in range(1, n // 2 + 1):
            for a in _abstract_trees(k, alphabet):
                for b in _abstract_trees(n - k, alphabet):
                    out.add(AbstractTree.node(a, b))
        res = frozenset(out)
    _abs_cache[key] = res
    return res


# --------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r'\s+|[{}\[\]]|"[^"]*"|:|<|>|' + _SYM)


def _tokenize(text: str) -> list[tuple[str, int]]:
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise TreeSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        if not m.group().isspace():
            toks.append((m.group(), pos))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def pos(self) -> int:
        return self.toks[self.i][1] if self.i < len(self.toks) else len(self.text)

    def take(self) -> str:
        if self.i >= len(self.toks):
            raise TreeSyntaxError("unexpected end of input", self.text, len(self.text))
        tok = self.toks[self.i][0]
        self.i += 1
        return tok

    def fail(self, msg: str):
        raise TreeSyntaxError(msg, self.text, self.pos())

    def finish(self):
        if self.i != len(self.toks):
            self.fail(f"trailing input {self.peek()!r}")

    def abstract(self) -> AbstractTree:
        tok = self.peek()
        if tok == "{":
            self.take()
            kids = []
            while self.peek() not in ("}", None):
                kids.append(self.abstract())
            if self.peek() is None:
                self.fail("missing '}'")
            if len(kids) != 2:
                self.fail(f"a vertex must have exactly 2 children, found {len(kids)}")
            self.take()
            return AbstractTree.node(*kids)
        if tok is None or not _SYM_RE.match(tok):
            self.fail(f"expected a leaf symbol or '{{', found {tok!r}")
        self.take()
        return AbstractTree.leaf(tok)

    def _leaf(self) -> PlanarTree:
        tok = self.take()
        if tok.startswith('"'):
            return PlanarTree.leaf(MGLeaf("", self._features(tok)))
        if not _SYM_RE.match(tok):
            self.i -= 1
            self.fail(f"expected a leaf, found {tok!r}")
        if self.peek() == ":":
            self.take()
            q = self.peek()
            if q is None or not q.startswith('"'):
                self.fail("expected a quoted feature string")
            self.take()
            return PlanarTree.leaf(MGLeaf(tok, self._features(q)))
        return PlanarTree.leaf(tok)

    def _features(self, quoted: str):
        try:
            return parse_features(quoted[1:-1])
        except ValueError as e:
            self.i -= 1
            self.fail(str(e))

    def planar(self) -> PlanarTree:
        tok = self.peek()
        if tok != "[":
            if tok in ("]", "{", "}", None, "<", ">", ":"):
                self.fail(f"expected a tree, found {tok!r}")
            return self._leaf()
        self.take()
        vlabel = None
        if self.peek() in ("<", ">"):
            vlabel = self.take()
        items: list = []
        while self.peek() not in ("]", None):
            items.append(self.planar())
        if self.peek() is None:
            self.fail("missing ']'")
        self.take()
        if vlabel is None and len(items) == 3:
            lab = items[0]
            if not (lab.is_leaf and isinstance(lab.label, str)):
                self.fail("a vertex label must be a bare symbol")
            vlabel, items = lab.label, items[1:]
        if len(items) != 2:
            self.fail(f"a vertex must have exactly 2 children, found {len(items)}")
        return PlanarTree.node(items[0], items[1], vlabel)


def parse_abstract(text: str) -> AbstractTree:
    p = _Parser(text)
    t = p.abstract()
    p.finish()
    return t


def parse_planar(text: str) -> PlanarTree:
    p = _Parser(text)
    t = p.planar()
    p.finish()
    return t


def parse_tree(text: str, dialect: str | None = None):
    """Parse a tree in the given dialect (abstract, planar or mg); without a
    dialect, decide by the first bracket."""
    if dialect == "abstract":
        return parse_abstract(text)
    if dialect == "planar":
        return parse_planar(text)
    if dialect == "mg":
        from .stabler import validate_mg

        return validate_mg(parse_planar(text))
    if dialect is not None:
        raise ValueError(f"unknown dialect {dialect!r}")
    s = text.lstrip()
    if s.startswith("["):
        return parse_planar(text)
    if s.startswith("{"):
        return parse_abstract(text)
    if ":" in s or s.startswith('"'):
        return parse_planar(text)
    return parse_abstract(text)


def iter_subtrees(t) -> Iterator[tuple[Addr, object]]:
    for a in t.vertices():
        yield a, t.subtree_at(a)
