"""Syntactic features and lexical leaves for minimalist-grammar trees.

A feature is a category ``X`` or one of the marked forms ``sel(X)``
(selector), ``lsr(X)`` (licensor) and ``lse(X)`` (licensee).  A leaf of an
MG tree carries a name and an ordered string of features.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Tuple

CAT, SEL, LSR, LSE = "cat", "sel", "lsr", "lse"
_KINDS = (SEL, LSR, LSE)
_BASE = r"[A-Za-z0-9_']+"
_FEATURE_RE = re.compile(rf"^(?:(sel|lsr|lse)\(({_BASE})\)|({_BASE}))$")


@dataclass(frozen=True, order=True)
class Feature:
    kind: str
    base: str

    def __str__(self) -> str:
        if self.kind == CAT:
            return self.base
        return f"{self.kind}({self.base})"

    @classmethod
    def parse(cls, token: str) -> "Feature":
        m = _FEATURE_RE.match(token)
        if not m:
            raise ValueError(f"malformed feature {token!r}")
        if m.group(3) is not None:
            if m.group(3) in _KINDS:
                raise ValueError(f"reserved word {token!r} used as a category")
            return cls(CAT, m.group(3))
        return cls(m.group(1), m.group(2))


FeatureString = Tuple[Feature, ...]


def parse_features(text: str) -> FeatureString:
    return tuple(Feature.parse(tok) for tok in text.split())


def format_features(fs: FeatureString) -> str:
    return " ".join(str(f) for f in fs)


@dataclass(frozen=True)
class MGLeaf:
    """Lexical item: a (possibly empty) name plus its feature string."""

    name: str
    features: FeatureString = ()

    def __post_init__(self):
        quoted = '"' + format_features(self.features) + '"'
        object.__setattr__(self, "_text", f"{self.name}:{quoted}" if self.name else quoted)

    def __str__(self) -> str:
        return self._text

    @property
    def first(self) -> Feature | None:
        return self.features[0] if self.features else None

    def consume(self) -> "MGLeaf":
        """Drop the first feature."""
        return MGLeaf(self.name, self.features[1:])


def mg_leaf(name: str, features: str = "") -> MGLeaf:
    return MGLeaf(name, parse_features(features))
