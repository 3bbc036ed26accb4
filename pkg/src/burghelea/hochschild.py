"""The Hochschild complex of a group algebra over Q.

Degree-n chains live on (n+1)-tuples of group elements; the boundary is

    b(g_0,...,g_n) = sum_{j=0}^{n-1} (-1)^j (g_0,...,g_j g_{j+1},...,g_n)
                     + (-1)^n (g_n g_0, g_1,...,g_{n-1}).

The complex splits over conjugacy classes of the product of entries, the
retraction pi_h localizes a class component into the centralizer of h, and
homology ranks of finite models are computed by exact rational elimination.
"""
from __future__ import annotations

import os
from fractions import Fraction
from typing import Callable, Optional

from .chains import Chain, linear_extend
from .errors import GroupMismatchError, ResourceCapError
from .groups import Element, GroupModel
from .linalg import RationalEchelon, clear_denominators
from .metric import (
    ConjugacyClass,
    CosetSection,
    WordMetric,
    conjugacy_class,
    conjugacy_classes,
    make_conjugator_provider,
)

ONE = Fraction(1)

DEFAULT_CAP_MB = 512


def memory_cap_mb() -> int:
    """Resource cap for chain-space enumeration, in megabytes."""
    env = os.environ.get("BURGHELEA_CAP_MB")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return DEFAULT_CAP_MB


def hochschild_boundary(model: GroupModel, c: Chain) -> Chain:
    if c.kind != "hochschild":
        raise GroupMismatchError("hochschild_boundary needs a hochschild chain")
    n = c.degree
    if n == 0:
        return Chain.zero("hochschild", 0)

    def faces(t):
        for j in range(n):
            merged = t[:j] + (model.mul(t[j], t[j + 1]),) + t[j + 2:]
            yield merged, ONE if j % 2 == 0 else -ONE
        cyc = (model.mul(t[n], t[0]),) + t[1:n]
        yield cyc, ONE if n % 2 == 0 else -ONE

    return linear_extend(c, "hochschild", n - 1, faces)


def entry_product(model: GroupModel, t: tuple) -> Element:
    p = model.identity
    for x in t:
        p = model.mul(p, x)
    return p


def split_by_class(model: GroupModel, wm: WordMetric, c: Chain) -> dict[ConjugacyClass, Chain]:
    """Decompose along conjugacy classes of the entry product.

    The components sum back to c, and the boundary restricts to each
    component, so this realizes the class splitting of the complex.
    """
    buckets: dict[ConjugacyClass, list] = {}
    for t, q in c.terms.items():
        x = conjugacy_class(model, wm, entry_product(model, t))
        buckets.setdefault(x, []).append((t, q))
    return {x: Chain(c.kind, c.degree, items) for x, items in buckets.items()}


def pi_h(model: GroupModel, section: CosetSection, c: Chain,
         conjugator: Optional[Callable[[Element], Element]] = None) -> Chain:
    """Localization C_n(QG)_x -> C_n(QZ_h)_[h] along the coset section of h.

    On a generator with entry product r^-1 h r the image is

        (p(r g_0...g_n)^-1 h p(r g_0), p(r g_0)^-1 p(r g_0 g_1), ...,
         p(r g_0...g_{n-1})^-1 p(r g_0...g_n))

    with p = p_h; the output does not depend on the choice of r, so any
    conjugator provider is acceptable.
    """
    if c.kind != "hochschild":
        raise GroupMismatchError("pi_h needs a hochschild chain")
    if conjugator is None:
        conjugator = make_conjugator_provider(section)
    m = model
    h = section.h
    p = section.retract

    def on_basis(t):
        r = conjugator(entry_product(m, t))
        prefixes = []
        acc = r
        for x in t:
            acc = m.mul(acc, x)
            prefixes.append(acc)
        retracts = [p(x) for x in prefixes]
        first = m.mul(m.mul(m.inv(retracts[-1]), h), retracts[0])
        entries = [first]
        for i in range(len(t) - 1):
            entries.append(m.mul(m.inv(retracts[i]), retracts[i + 1]))
        yield tuple(entries), ONE

    return linear_extend(c, "hochschild", c.degree, on_basis)


def iota_h(model: GroupModel, h: Element, c: Chain) -> Chain:
    """Inclusion C_n(QZ_h)_[h] -> C_n(QG)_x; identity on terms after
    checking that every entry centralizes h."""
    for t in c.terms:
        for x in t:
            if not model.commutes(x, h):
                raise GroupMismatchError(
                    f"entry {model.element_str(x)} lies outside the centralizer")
    return Chain(c.kind, c.degree, c.terms)


# ---------------------------------------------------------------------------
# homology ranks of finite models
# ---------------------------------------------------------------------------

def class_component_basis(model: GroupModel, wm: WordMetric, degree: int,
                          x: ConjugacyClass) -> list[tuple]:
    """Basis tuples of C_degree(QG)_x: entry product lies in x."""
    from .metric import class_members
    members = class_members(model, x.rep)
    elems = model.elements()
    basis = []

    def rec(prefix: tuple, prod: Element, remaining: int):
        if remaining == 0:
            for target in members:
                basis.append(prefix + (model.mul(model.inv(prod), target),))
            return
        for g in elems:
            rec(prefix + (g,), model.mul(prod, g), remaining - 1)

    rec((), model.identity, degree)
    basis.sort(key=lambda t: tuple(model.element_key(g) for g in t))
    return basis


def _check_space_cap(model: GroupModel, max_degree: int, class_size: int) -> None:
    order = model.order
    per_tuple_bytes = 80 + 16 * (max_degree + 2)
    total = sum(class_size * order ** n * per_tuple_bytes for n in range(max_degree + 2))
    cap = memory_cap_mb() * 1024 * 1024
    if total > cap:
        raise ResourceCapError(
            f"chain spaces need about {total // (1024 * 1024)} MB, cap is {memory_cap_mb()} MB "
            "(set BURGHELEA_CAP_MB to override)")


def _boundary_rank(model: GroupModel, basis_n: list[tuple], index_prev: dict) -> int:
    """Rank of b restricted to the span of basis_n, in coordinates of the
    previous degree's basis."""
    n = len(basis_n[0]) - 1 if basis_n else 0
    ech = RationalEchelon()
    for t in basis_n:
        col: dict[int, int] = {}

        def add(u: tuple, s: int):
            i = index_prev[u]
            v = col.get(i, 0) + s
            if v:
                col[i] = v
            elif i in col:
                del col[i]

        for j in range(n):
            merged = t[:j] + (model.mul(t[j], t[j + 1]),) + t[j + 2:]
            add(merged, 1 if j % 2 == 0 else -1)
        cyc = (model.mul(t[n], t[0]),) + t[1:n]
        add(cyc, 1 if n % 2 == 0 else -1)
        ech.insert(col)
    return ech.rank


def homology_ranks(model: GroupModel, wm: WordMetric, max_degree: int,
                   x: Optional[ConjugacyClass] = None, split: bool = True) -> list[dict]:
    """Exact Betti numbers of the Hochschild complex of a finite model.

    Returns one report per degree n <= max_degree:
        {degree, dim_chain_space, rank_boundary_out, rank_boundary_in, betti}
    where rank_boundary_out is the rank of b_n out of degree n and
    rank_boundary_in the rank of b_{n+1} into it.  With ``split`` the
    computation runs per class component and aggregates (the splitting is a
    direct sum of subcomplexes); otherwise one monolithic elimination is run.
    """
    if not model.is_finite:
        raise GroupMismatchError("homology ranks need a finite model")
    classes = [x] if x is not None else conjugacy_classes(model, wm)
    if not split and x is None:
        return _homology_ranks_full(model, wm, max_degree)
    from .metric import class_members
    per_degree = [
        {"degree": n, "dim_chain_space": 0, "rank_boundary_out": 0,
         "rank_boundary_in": 0, "betti": 0}
        for n in range(max_degree + 1)
    ]
    for cls in classes:
        _check_space_cap(model, max_degree, len(class_members(model, cls.rep)))
        bases = [class_component_basis(model, wm, n, cls) for n in range(max_degree + 2)]
        indexes = [{t: i for i, t in enumerate(b)} for b in bases]
        ranks = [0]  # b_0 = 0
        for n in range(1, max_degree + 2):
            ranks.append(_boundary_rank(model, bases[n], indexes[n - 1]))
        for n in range(max_degree + 1):
            rec = per_degree[n]
            rec["dim_chain_space"] += len(bases[n])
            rec["rank_boundary_out"] += ranks[n]
            rec["rank_boundary_in"] += ranks[n + 1]
            rec["betti"] += len(bases[n]) - ranks[n] - ranks[n + 1]
    return per_degree


def _homology_ranks_full(model: GroupModel, wm: WordMetric, max_degree: int) -> list[dict]:
    import itertools
    _check_space_cap(model, max_degree, model.order)
    elems = model.elements()
    bases = []
    for n in range(max_degree + 2):
        b = sorted(itertools.product(elems, repeat=n + 1),
                   key=lambda t: tuple(model.element_key(g) for g in t))
        bases.append(list(b))
    indexes = [{t: i for i, t in enumerate(b)} for b in bases]
    ranks = [0]
    for n in range(1, max_degree + 2):
        ranks.append(_boundary_rank(model, bases[n], indexes[n - 1]))
    return [
        {"degree": n, "dim_chain_space": len(bases[n]),
         "rank_boundary_out": ranks[n], "rank_boundary_in": ranks[n + 1],
         "betti": len(bases[n]) - ranks[n] - ranks[n + 1]}
        for n in range(max_degree + 1)
    ]
