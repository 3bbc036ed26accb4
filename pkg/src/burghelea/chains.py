"""Sparse formal linear combinations over tuples of group elements.

A Chain maps basis tuples to exact rational coefficients and carries a
complex-kind tag plus a degree; the tag fixes the tuple arity:

    hochschild  degree n, arity n+1   (tensor generators)
    cprime      degree n, arity n     (inhomogeneous bar generators)
    cbar        degree n, arity n+1   (equivariant generators, leading e)
    e           degree n, arity n+1   (non-equivariant homogeneous generators)

Zero coefficients are never stored, so equality of chains is equality of
their term maps.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import KindMismatchError
from .groups import Element, GroupModel
from .metric import WordMetric

KINDS = ("hochschild", "cprime", "cbar", "e")

BasisTuple = tuple  # tuple of Element


def arity(kind: str, degree: int) -> int:
    if kind not in KINDS:
        raise KindMismatchError(f"unknown chain kind {kind!r}")
    if degree < 0:
        raise KindMismatchError("degree must be nonnegative")
    return degree if kind == "cprime" else degree + 1


class Chain:
    """Immutable finitely supported chain with Fraction coefficients."""

    __slots__ = ("kind", "degree", "terms")

    def __init__(self, kind: str, degree: int,
                 terms: Mapping[BasisTuple, Fraction] | Iterable[tuple[BasisTuple, Fraction]] = ()):
        n = arity(kind, degree)
        acc: dict[BasisTuple, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for t, q in items:
            if not (isinstance(t, tuple) and len(t) == n):
                raise KindMismatchError(
                    f"tuple {t!r} has arity {len(t) if isinstance(t, tuple) else '?'}, "
                    f"kind {kind!r} degree {degree} needs {n}")
            q = Fraction(q)
            if q:
                s = acc.get(t)
                if s is None:
                    acc[t] = q
                else:
                    s += q
                    if s:
                        acc[t] = s
                    else:
                        del acc[t]
        self.kind = kind
        self.degree = degree
        self.terms = acc

    @classmethod
    def zero(cls, kind: str, degree: int) -> "Chain":
        return cls(kind, degree)

    @classmethod
    def basis(cls, kind: str, degree: int, t: BasisTuple) -> "Chain":
        return cls(kind, degree, [(t, Fraction(1))])

    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: "Chain") -> None:
        if self.kind != other.kind or self.degree != other.degree:
            raise KindMismatchError(
                f"cannot combine {self.kind}/{self.degree} with {other.kind}/{other.degree}")

    def __add__(self, other: "Chain") -> "Chain":
        self._check_compatible(other)
        acc = dict(self.terms)
        for t, q in other.terms.items():
            s = acc.get(t)
            if s is None:
                acc[t] = q
            else:
                s += q
                if s:
                    acc[t] = s
                else:
                    del acc[t]
        out = Chain.__new__(Chain)
        out.kind, out.degree, out.terms = self.kind, self.degree, acc
        return out

    def __sub__(self, other: "Chain") -> "Chain":
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> "Chain":
        return self.scale(Fraction(-1))

    def scale(self, q) -> "Chain":
        q = Fraction(q)
        out = Chain.__new__(Chain)
        out.kind, out.degree = self.kind, self.degree
        out.terms = {} if not q else {t: c * q for t, c in self.terms.items()}
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, Chain) and self.kind == other.kind
                and self.degree == other.degree and self.terms == other.terms)

    def __repr__(self) -> str:
        return f"Chain({self.kind}, deg={self.degree}, {len(self.terms)} terms)"

    def sorted_terms(self, model: GroupModel) -> list[tuple[BasisTuple, Fraction]]:
        """Terms in the canonical (elementwise encoding-key) order."""
        def key(item):
            t, _ = item
            return tuple(model.element_key(x) for x in t)
        return sorted(self.terms.items(), key=key)


def linear_extend(c: Chain, kind: str, degree: int,
                  on_basis: Callable[[BasisTuple], Iterable[tuple[BasisTuple, Fraction]]]) -> Chain:
    """Extend a map given on basis tuples linearly over a chain."""
    items: list[tuple[BasisTuple, Fraction]] = []
    for t, q in c.terms.items():
        for u, r in on_basis(t):
            items.append((u, q * r))
    return Chain(kind, degree, items)


def tuple_diameter(wm: WordMetric, t: BasisTuple, mode: str = "pairwise") -> int:
    """diam of a tuple of group elements.

    ``pairwise`` (default): max over pairs i, j of |t_i^-1 t_j|.
    ``max_entry``: max over entries of |t_i| (a plausible alternative
    reading; both are kept available).
    """
    m = wm.model
    if mode == "max_entry":
        return max((wm.length(x) for x in t), default=0)
    if mode != "pairwise":
        raise ValueError(f"unknown diameter mode {mode!r}")
    best = 0
    for i in range(len(t)):
        inv_i = m.inv(t[i])
        for j in range(i + 1, len(t)):
            d = wm.length(m.mul(inv_i, t[j]))
            if d > best:
                best = d
    return best


def support_diameter(c: Chain, wm: WordMetric, mode: str = "pairwise") -> dict[BasisTuple, int]:
    """Per-tuple diameters of the support of a group-tuple chain."""
    return {t: tuple_diameter(wm, t, mode) for t in c.terms}


def convolve(model: GroupModel, f: Chain, g: Chain) -> Chain:
    """Convolution product of two group-algebra elements (degree-0 chains)."""
    if f.degree != 0 or g.degree != 0:
        raise KindMismatchError("convolution is defined on degree-0 chains")
    items = []
    for (a,), qa in f.terms.items():
        for (b,), qb in g.terms.items():
            items.append(((model.mul(a, b),), qa * qb))
    return Chain(f.kind, 0, items)


def chain_to_obj(model: GroupModel, c: Chain) -> list[dict]:
    """Serialize as a list of {"tuple": [...element strings], "coeff": "p/q"}."""
    return [{"tuple": [model.element_str(x) for x in t], "coeff": str(q)}
            for t, q in c.sorted_terms(model)]


def chain_from_obj(model: GroupModel, kind: str, degree: int, obj: Iterable[dict]) -> Chain:
    items = []
    for entry in obj:
        t = tuple(model.parse_element(s) for s in entry["tuple"])
        items.append((t, Fraction(entry["coeff"])))
    return Chain(kind, degree, items)
