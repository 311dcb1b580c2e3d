"""Finite formal sums with exact rational coefficients.

Basis elements are any hashable objects with a stable ``str``; tuples are
used for tensors.  Iteration order is deterministic (sorted by text).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator


def sort_key(key) -> tuple:
    if isinstance(key, tuple):
        return tuple(str(k) for k in key)
    return (str(key),)


class FormalSum:
    __slots__ = ("_c",)

    def __init__(self, terms: dict | Iterable | None = None):
        self._c: dict = {}
        if terms is None:
            return
        items = terms.items() if isinstance(terms, dict) else terms
        for k, v in items:
            self._add(k, v)

    def _add(self, key: Hashable, coeff) -> None:
        # ints stay ints (the common case); anything else becomes a Fraction
        if not isinstance(coeff, (int, Fraction)):
            coeff = Fraction(coeff)
        c = self._c.get(key, 0) + coeff
        if c:
            self._c[key] = c
        else:
            self._c.pop(key, None)

    @classmethod
    def term(cls, key: Hashable, coeff=1) -> "FormalSum":
        return cls([(key, coeff)])

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls()

    @classmethod
    def of(cls, x) -> "FormalSum":
        return x if isinstance(x, FormalSum) else cls.term(x)

    def coeff(self, key: Hashable) -> Fraction:
        return Fraction(self._c.get(key, 0))

    def items(self) -> list[tuple]:
        return sorted(self._c.items(), key=lambda kv: sort_key(kv[0]))

    def support(self):
        """Basis elements with nonzero coefficient, in no particular order."""
        return self._c.keys()

    def keys(self) -> list:
        return [k for k, _ in self.items()]

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __contains__(self, key) -> bool:
        return key in self._c

    def __eq__(self, other) -> bool:
        if isinstance(other, FormalSum):
            return self._c == other._c
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = FormalSum()
        out._c = dict(self._c)
        for k, v in other._c.items():
            out._add(k, v)
        return out

    def __iadd__(self, other: "FormalSum") -> "FormalSum":
        for k, v in other._c.items():
            self._add(k, v)
        return self

    def add_term(self, key: Hashable, coeff=1) -> None:
        self._add(key, coeff)

    def __neg__(self) -> "FormalSum":
        return FormalSum((k, -v) for k, v in self._c.items())

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def __rmul__(self, scalar) -> "FormalSum":
        s = scalar if isinstance(scalar, (int, Fraction)) else Fraction(scalar)
        return FormalSum((k, s * v) for k, v in self._c.items())

    __mul__ = __rmul__

    def map(self, f: Callable) -> "FormalSum":
        """Extend ``f`` (basis -> FormalSum or basis element) linearly."""
        out = FormalSum()
        for k, v in self._c.items():
            img = f(k)
            if isinstance(img, FormalSum):
                for k2, v2 in img._c.items():
                    out._add(k2, v * v2)
            else:
                out._add(img, v)
        return out

    def filter(self, pred: Callable) -> "FormalSum":
        return FormalSum((k, v) for k, v in self._c.items() if pred(k))

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, v in self.items():
            body = " ⊗ ".join(str(x) for x in k) if isinstance(k, tuple) else str(k)
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            coef = "" if mag == 1 else f"{mag}*"
            parts.append(f"{sign} {coef}{body}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"FormalSum({str(self)!r})"

    def to_json(self) -> list[dict]:
        out = []
        for k, v in self.items():
            v = Fraction(v)
            entry = {"coeff": {"num": v.numerator, "den": v.denominator}}
            if isinstance(k, tuple):
                entry["term_pair" if len(k) == 2 else "tensor"] = [str(x) for x in k]
            else:
                entry["term"] = str(k)
            out.append(entry)
        return out


def bilinear(f: Callable, a: FormalSum, b: FormalSum) -> FormalSum:
    """Extend ``f`` (basis x basis -> FormalSum) bilinearly."""
    out = FormalSum()
    for ka, va in a._c.items():
        for kb, vb in b._c.items():
            img = FormalSum.of(f(ka, kb))
            for k, v in img._c.items():
                out._add(k, va * vb * v)
    return out


def tensor(a: FormalSum, b: FormalSum) -> FormalSum:
    """a ⊗ b, flattening nested tensor keys."""
    out = FormalSum()
    for ka, va in a._c.items():
        ta = ka if isinstance(ka, tuple) else (ka,)
        for kb, vb in b._c.items():
            tb = kb if isinstance(kb, tuple) else (kb,)
            out._add(ta + tb, va * vb)
    return out
