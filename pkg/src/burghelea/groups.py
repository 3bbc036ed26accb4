"""Concrete computable models of finitely generated groups.

Five kinds are supported: finite multiplication tables, finite permutation
groups, free groups, free abelian groups, and direct products of these.
Elements are plain hashable encodings (ints or tuples); all arithmetic goes
through the owning model, which also validates membership:

==============  =====================================================
kind            element encoding
==============  =====================================================
finite_table    index into the multiplication table
finite_perm     tuple of images (0-based)
free            freely reduced word, tuple of nonzero ints (-i = inverse)
free_abelian    integer vector, tuple of length ``rank``
product         tuple with one component encoding per factor
==============  =====================================================

Canonical encodings are unique, so two elements are equal iff their
encodings are equal.
"""
from __future__ import annotations

import itertools
import json
from typing import Any, Hashable, Iterable, Sequence

from .errors import DescriptorError, GroupMismatchError

Element = Hashable

# Finite models are desk-scale: chain spaces grow as |G|**(n+1).
DEFAULT_MAX_ORDER = 24
# One lowercase letter per free generator.
MAX_FREE_RANK = 26

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def reduce_word(letters: Iterable[int]) -> tuple[int, ...]:
    """Freely reduce a word given as a sequence of nonzero signed letters."""
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def letter_rank(letter: int) -> int:
    # alphabet order a < a^-1 < b < b^-1 < ...
    return 2 * (abs(letter) - 1) + (1 if letter < 0 else 0)


class GroupModel:
    """Base class; subclasses implement the five supported kinds."""

    kind: str
    name: str
    identity: Element
    generators: tuple[Element, ...]

    # -- group law ---------------------------------------------------------

    def mul(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def inv(self, a: Element) -> Element:
        raise NotImplementedError

    def conj(self, r: Element, g: Element) -> Element:
        """r^-1 g r."""
        return self.mul(self.mul(self.inv(r), g), r)

    def commutes(self, a: Element, b: Element) -> bool:
        return self.mul(a, b) == self.mul(b, a)

    def power(self, a: Element, n: int) -> Element:
        if n < 0:
            return self.power(self.inv(a), -n)
        acc = self.identity
        for _ in range(n):
            acc = self.mul(acc, a)
        return acc

    # -- membership & ordering ---------------------------------------------

    def check_element(self, a: Element) -> None:
        """Raise GroupMismatchError unless ``a`` is a canonical encoding."""
        raise NotImplementedError

    def element_key(self, a: Element):
        """Deterministic total-order key on canonical encodings (no length)."""
        raise NotImplementedError

    # -- text form -----------------------------------------------------------

    def element_str(self, a: Element) -> str:
        raise NotImplementedError

    def parse_element(self, s: str) -> Element:
        raise NotImplementedError

    # -- finiteness ----------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return False

    def elements(self) -> tuple[Element, ...]:
        raise GroupMismatchError(f"{self.kind} model is not finite")

    @property
    def order(self) -> int:
        return len(self.elements())

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class FiniteTableGroup(GroupModel):
    """Finite group given by a full multiplication table over labels."""

    kind = "finite_table"

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[int]],
                 generator_labels: Sequence[str], name: str = "",
                 max_order: int = DEFAULT_MAX_ORDER):
        n = len(labels)
        if n == 0:
            raise DescriptorError("empty element list")
        if n > max_order:
            raise DescriptorError(f"table group exceeds order cap {max_order}")
        if len(set(labels)) != n:
            raise DescriptorError("duplicate element labels")
        if len(table) != n or any(len(row) != n for row in table):
            raise DescriptorError("table is not square of matching size")
        for row in table:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise DescriptorError("table entry out of range")
        self.labels = tuple(labels)
        self.table = tuple(tuple(row) for row in table)
        self.name = name or f"table[{n}]"

        # latin square: rows and columns are permutations
        full = set(range(n))
        for i in range(n):
            if set(self.table[i]) != full or {self.table[j][i] for j in range(n)} != full:
                raise DescriptorError("table rows/columns are not permutations")
        # identity
        ident = None
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise DescriptorError("table has no identity element")
        self.identity = ident
        # associativity, desk scale O(n^3)
        t = self.table
        for a in range(n):
            for b in range(n):
                tab = t[a][b]
                for c in range(n):
                    if t[tab][c] != t[a][t[b][c]]:
                        raise DescriptorError("non-associative table")
        self._inv = tuple(next(b for b in range(n) if t[a][b] == ident) for a in range(n))

        label_index = {lab: i for i, lab in enumerate(self.labels)}
        gens = []
        for lab in generator_labels:
            if lab not in label_index:
                raise DescriptorError(f"unknown generator label {lab!r}")
            gens.append(label_index[lab])
        if not gens:
            raise DescriptorError("empty generating set")
        if ident in gens:
            raise DescriptorError("identity listed as a generator")
        gen_set = set(gens)
        if any(self._inv[g] not in gen_set for g in gens):
            raise DescriptorError("non-symmetric generating set")
        # closure check: generators must generate the whole table
        reached = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = t[x][g]
                    if y not in reached:
                        reached.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(reached) != n:
            raise DescriptorError("generating set does not generate the group")
        self.generators = tuple(gens)

    def mul(self, a, b):
        self.check_element(a)
        self.check_element(b)
        return self.table[a][b]

    def inv(self, a):
        self.check_element(a)
        return self._inv[a]

    def check_element(self, a):
        if not isinstance(a, int) or not 0 <= a < len(self.labels):
            raise GroupMismatchError(f"{a!r} is not an index into {self.name}")

    def element_key(self, a):
        return a

    def element_str(self, a):
        return self.labels[a]

    def parse_element(self, s):
        try:
            return self.labels.index(s)
        except ValueError:
            raise GroupMismatchError(f"unknown element label {s!r}") from None

    @property
    def is_finite(self):
        return True

    def elements(self):
        return tuple(range(len(self.labels)))


class FinitePermGroup(GroupModel):
    """Finite permutation group generated by image-list permutations.

    Composition convention: (a*b)(i) = a[b[i]], i.e. b acts first.
    """

    kind = "finite_perm"

    def __init__(self, degree: int, generator_perms: Sequence[Sequence[int]],
                 name: str = "", max_order: int = DEFAULT_MAX_ORDER):
        if degree < 1:
            raise DescriptorError("degree must be positive")
        self.degree = degree
        self.identity = tuple(range(degree))
        gens = []
        for p in generator_perms:
            p = tuple(p)
            if sorted(p) != list(range(degree)):
                raise DescriptorError(f"malformed permutation {p!r}")
            gens.append(p)
        if not gens:
            raise DescriptorError("empty generating set")
        if self.identity in gens:
            raise DescriptorError("identity listed as a generator")
        gen_set = set(gens)
        if any(self._invert(g) not in gen_set for g in gens):
            raise DescriptorError("non-symmetric generating set")
        self.generators = tuple(gens)
        self.name = name or f"perm[{degree}]"

        elems = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = tuple(x[g[i]] for i in range(degree))
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
                        if len(elems) > max_order:
                            raise DescriptorError(
                                f"permutation group exceeds order cap {max_order}")
            frontier = nxt
        self._elements = tuple(sorted(elems))

    @staticmethod
    def _invert(p: tuple[int, ...]) -> tuple[int, ...]:
        out = [0] * len(p)
        for i, j in enumerate(p):
            out[j] = i
        return tuple(out)

    def mul(self, a, b):
        self.check_element(a)
        self.check_element(b)
        return tuple(a[b[i]] for i in range(self.degree))

    def inv(self, a):
        self.check_element(a)
        return self._invert(a)

    def check_element(self, a):
        if not (isinstance(a, tuple) and len(a) == self.degree
                and sorted(a) == list(range(self.degree))):
            raise GroupMismatchError(f"{a!r} is not a degree-{self.degree} permutation")

    def element_key(self, a):
        return a

    def element_str(self, a):
        return "[" + ",".join(map(str, a)) + "]"

    def parse_element(self, s):
        s = s.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise GroupMismatchError(f"malformed permutation string {s!r}")
        images = tuple(int(p) for p in s[1:-1].split(",")) if s != "[]" else ()
        self.check_element(images)
        return images

    @property
    def is_finite(self):
        return True

    def elements(self):
        return self._elements


class FreeGroup(GroupModel):
    """Free group of finite rank; elements are freely reduced words."""

    kind = "free"

    def __init__(self, rank: int, name: str = ""):
        if not 1 <= rank <= MAX_FREE_RANK:
            raise DescriptorError(f"free rank must be in 1..{MAX_FREE_RANK}")
        self.rank = rank
        self.identity = ()
        gens = []
        for i in range(1, rank + 1):
            gens.extend([(i,), (-i,)])
        self.generators = tuple(gens)
        self.name = name or f"F{rank}"

    def mul(self, a, b):
        self.check_element(a)
        self.check_element(b)
        # only the junction can cancel when both factors are reduced
        k = 0
        while k < len(a) and k < len(b) and a[len(a) - 1 - k] == -b[k]:
            k += 1
        return a[:len(a) - k] + b[k:]

    def inv(self, a):
        self.check_element(a)
        return tuple(-x for x in reversed(a))

    def check_element(self, a):
        if not isinstance(a, tuple):
            raise GroupMismatchError(f"{a!r} is not a word tuple")
        for i, x in enumerate(a):
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise GroupMismatchError(f"letter {x!r} outside alphabet of {self.name}")
            if i and a[i - 1] == -x:
                raise GroupMismatchError(f"word {a!r} is not freely reduced")

    def element_key(self, a):
        return tuple(letter_rank(x) for x in a)

    def element_str(self, a):
        if not a:
            return "e"
        return "".join(_LETTERS[x - 1] if x > 0 else _LETTERS[-x - 1].upper() for x in a)

    def parse_element(self, s):
        s = s.strip()
        if s in ("e", ""):
            return ()
        letters = []
        for ch in s:
            low = ch.lower()
            if low not in _LETTERS[:self.rank]:
                raise GroupMismatchError(f"letter {ch!r} outside alphabet of {self.name}")
            idx = _LETTERS.index(low) + 1
            letters.append(idx if ch.islower() else -idx)
        word = reduce_word(letters)
        return word


class FreeAbelianGroup(GroupModel):
    """Z^rank with generating set {±e_i}; elements are integer vectors."""

    kind = "free_abelian"

    def __init__(self, rank: int, name: str = ""):
        if rank < 1:
            raise DescriptorError("free_abelian rank must be positive")
        self.rank = rank
        self.identity = (0,) * rank
        gens = []
        for i in range(rank):
            e = [0] * rank
            e[i] = 1
            gens.append(tuple(e))
            e[i] = -1
            gens.append(tuple(e))
        self.generators = tuple(gens)
        self.name = name or f"Z^{rank}"

    def mul(self, a, b):
        self.check_element(a)
        self.check_element(b)
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        self.check_element(a)
        return tuple(-x for x in a)

    def check_element(self, a):
        if not (isinstance(a, tuple) and len(a) == self.rank
                and all(isinstance(x, int) for x in a)):
            raise GroupMismatchError(f"{a!r} is not a rank-{self.rank} vector")

    def element_key(self, a):
        return a

    def element_str(self, a):
        return "(" + ",".join(map(str, a)) + ")"

    def parse_element(self, s):
        s = s.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise GroupMismatchError(f"malformed vector string {s!r}")
        v = tuple(int(p) for p in s[1:-1].split(","))
        self.check_element(v)
        return v


class ProductGroup(GroupModel):
    """Direct product; componentwise law, componentwise generators."""

    kind = "product"

    def __init__(self, factors: Sequence[GroupModel], name: str = ""):
        if not factors:
            raise DescriptorError("product needs at least one factor")
        self.factors = tuple(factors)
        self.identity = tuple(f.identity for f in self.factors)
        gens = []
        for i, f in enumerate(self.factors):
            for g in f.generators:
                t = list(self.identity)
                t[i] = g
                gens.append(tuple(t))
        self.generators = tuple(gens)
        self.name = name or " x ".join(f.name for f in self.factors)

    def mul(self, a, b):
        self.check_element(a)
        self.check_element(b)
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def inv(self, a):
        self.check_element(a)
        return tuple(f.inv(x) for f, x in zip(self.factors, a))

    def check_element(self, a):
        if not (isinstance(a, tuple) and len(a) == len(self.factors)):
            raise GroupMismatchError(f"{a!r} has wrong number of components")
        for f, x in zip(self.factors, a):
            f.check_element(x)

    def element_key(self, a):
        return tuple(f.element_key(x) for f, x in zip(self.factors, a))

    def element_str(self, a):
        return "(" + "; ".join(f.element_str(x) for f, x in zip(self.factors, a)) + ")"

    def parse_element(self, s):
        s = s.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise GroupMismatchError(f"malformed product string {s!r}")
        parts = _split_top_level(s[1:-1], ";")
        if len(parts) != len(self.factors):
            raise GroupMismatchError("wrong number of product components")
        return tuple(f.parse_element(p) for f, p in zip(self.factors, parts))

    @property
    def is_finite(self):
        return all(f.is_finite for f in self.factors)

    def elements(self):
        if not self.is_finite:
            return super().elements()
        return tuple(itertools.product(*(f.elements() for f in self.factors)))


def _split_top_level(s: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_group(descriptor: Any, max_order: int = DEFAULT_MAX_ORDER) -> GroupModel:
    """Build a validated GroupModel from a JSON descriptor (dict or text).

    Schemas:
        {"type":"finite_table","elements":[...],"table":[[...]],"generators":[...]}
        {"type":"finite_perm","degree":n,"generators":[[image list],...]}
        {"type":"free","rank":k}
        {"type":"free_abelian","rank":k}
        {"type":"product","factors":[<descriptor>,...]}
    """
    if isinstance(descriptor, str):
        try:
            descriptor = json.loads(descriptor)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"descriptor is not valid JSON: {exc}") from exc
    if not isinstance(descriptor, dict):
        raise DescriptorError("descriptor must be a JSON object")
    kind = descriptor.get("type")
    name = descriptor.get("name", "")
    try:
        if kind == "finite_table":
            return FiniteTableGroup(descriptor["elements"], descriptor["table"],
                                    descriptor["generators"], name=name,
                                    max_order=max_order)
        if kind == "finite_perm":
            return FinitePermGroup(descriptor["degree"], descriptor["generators"],
                                   name=name, max_order=max_order)
        if kind == "free":
            return FreeGroup(descriptor["rank"], name=name)
        if kind == "free_abelian":
            return FreeAbelianGroup(descriptor["rank"], name=name)
        if kind == "product":
            factors = [parse_group(d, max_order=max_order) for d in descriptor["factors"]]
            return ProductGroup(factors, name=name)
    except KeyError as exc:
        raise DescriptorError(f"descriptor missing field {exc}") from exc
    raise DescriptorError(f"unknown group type {kind!r}")
