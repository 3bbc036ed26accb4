"""The two standard complexes computing group homology over Q, and the
comparison maps into the class-restricted Hochschild complex.

C'_n(G) has basis G^n with

    d(g_1,...,g_n) = (g_2,...,g_n)
                     + sum_{k=1}^{n-1} (-1)^k (g_1,...,g_k g_{k+1},...,g_n)
                     + (-1)^n (g_1,...,g_{n-1})

while C_n(G) consists of equivariant chains on G^{n+1}, stored here by the
unique orbit representative with leading entry e; its boundary deletes one
entry at a time and renormalizes the 0-th face by left translation.

psi / psi_inv translate between the two; phi_g embeds C'_n(Z_g) into the
Hochschild component at the class of g.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from .chains import Chain, linear_extend
from .errors import GroupMismatchError
from .groups import Element, GroupModel
from .hochschild import entry_product, pi_h
from .linalg import RationalEchelon
from .metric import CosetSection

ONE = Fraction(1)


def boundary_cprime(model: GroupModel, c: Chain) -> Chain:
    if c.kind != "cprime":
        raise GroupMismatchError("boundary_cprime needs a cprime chain")
    n = c.degree
    if n == 0:
        return Chain.zero("cprime", 0)

    def faces(t):
        yield t[1:], ONE
        for k in range(1, n):
            merged = t[:k - 1] + (model.mul(t[k - 1], t[k]),) + t[k + 1:]
            yield merged, ONE if k % 2 == 0 else -ONE
        yield t[:-1], ONE if n % 2 == 0 else -ONE

    return linear_extend(c, "cprime", n - 1, faces)


def normalize_cbar_tuple(model: GroupModel, t: tuple) -> tuple:
    """Left-translate an orbit tuple so that its leading entry is e."""
    g0 = model.inv(t[0])
    return tuple(model.mul(g0, x) for x in t)


def boundary_cbar(model: GroupModel, c: Chain) -> Chain:
    if c.kind != "cbar":
        raise GroupMismatchError("boundary_cbar needs a cbar chain")
    n = c.degree
    if n == 0:
        return Chain.zero("cbar", 0)

    def faces(t):
        if t[0] != model.identity:
            raise GroupMismatchError("cbar tuples must have leading identity")
        for k in range(n + 1):
            face = t[:k] + t[k + 1:]
            sign = ONE if k % 2 == 0 else -ONE
            if k == 0:
                face = normalize_cbar_tuple(model, face)
            yield face, sign

    return linear_extend(c, "cbar", n - 1, faces)


def psi(model: GroupModel, c: Chain) -> Chain:
    """C'_n -> C_n: (g_1,...,g_n) -> (1, g_1, g_1 g_2, ..., g_1...g_n)."""
    if c.kind != "cprime":
        raise GroupMismatchError("psi needs a cprime chain")

    def on_basis(t):
        out = [model.identity]
        acc = model.identity
        for x in t:
            acc = model.mul(acc, x)
            out.append(acc)
        yield tuple(out), ONE

    return linear_extend(c, "cbar", c.degree, on_basis)


def psi_inv(model: GroupModel, c: Chain) -> Chain:
    """C_n -> C'_n: consecutive quotients of the orbit representative."""
    if c.kind != "cbar":
        raise GroupMismatchError("psi_inv needs a cbar chain")

    def on_basis(t):
        if t[0] != model.identity:
            raise GroupMismatchError("cbar tuples must have leading identity")
        out = [model.mul(model.inv(t[i]), t[i + 1]) for i in range(len(t) - 1)]
        yield tuple(out), ONE

    return linear_extend(c, "cprime", c.degree, on_basis)


def phi_g(model: GroupModel, g: Element, c: Chain) -> Chain:
    """C'_n(Z_g) -> C_n(QZ_g)_[g]: prepend (g_1...g_n)^-1 g.

    Entries must centralize g; the image tuple then has entry product g.
    """
    if c.kind != "cprime":
        raise GroupMismatchError("phi_g needs a cprime chain")

    def on_basis(t):
        for x in t:
            if not model.commutes(x, g):
                raise GroupMismatchError(
                    f"entry {model.element_str(x)} does not centralize g")
        lead = model.mul(model.inv(entry_product(model, t)), g)
        yield (lead,) + t, ONE

    return linear_extend(c, "hochschild", c.degree, on_basis)


def phi_g_inv(model: GroupModel, c: Chain) -> Chain:
    """Drop the leading entry of each generator."""
    if c.kind != "hochschild":
        raise GroupMismatchError("phi_g_inv needs a hochschild chain")

    def on_basis(t):
        yield t[1:], ONE

    return linear_extend(c, "cprime", c.degree, on_basis)


def localize_to_equivariant(model: GroupModel, section: CosetSection, c: Chain,
                            conjugator: Optional[Callable[[Element], Element]] = None) -> Chain:
    """Direct formula for psi . phi_h^-1 . pi_h on a class component.

    A generator with entry product r^-1 h r maps to the equivariant chain
    with value 1 on the orbit of (p(r g_0), p(r g_0 g_1), ..., p(r g_0...g_n)),
    stored by its leading-e representative.
    """
    if c.kind != "hochschild":
        raise GroupMismatchError("localize_to_equivariant needs a hochschild chain")
    from .metric import make_conjugator_provider
    if conjugator is None:
        conjugator = make_conjugator_provider(section)
    m = model
    p = section.retract

    def on_basis(t):
        r = conjugator(entry_product(m, t))
        out = []
        acc = r
        for x in t:
            acc = m.mul(acc, x)
            out.append(p(acc))
        yield normalize_cbar_tuple(m, tuple(out)), ONE

    return linear_extend(c, "cbar", c.degree, on_basis)


def composed_localization(model: GroupModel, section: CosetSection, c: Chain,
                          conjugator: Optional[Callable[[Element], Element]] = None) -> Chain:
    """The three-map composition psi(phi_h^-1(pi_h(c))), for cross-checks."""
    localized = pi_h(model, section, c, conjugator)
    return psi(model, phi_g_inv(model, localized))


# ---------------------------------------------------------------------------
# homology ranks of C'_.(H) for a finite (sub)group H
# ---------------------------------------------------------------------------

def bar_homology_ranks(elements: list[Element], mul: Callable[[Element, Element], Element],
                       max_degree: int) -> list[int]:
    """Betti numbers of C'_.(H) for a finite group given by its elements and
    multiplication; independent of the Hochschild machinery."""
    elems = sorted(elements)
    import itertools

    def basis(n: int) -> list[tuple]:
        return sorted(itertools.product(elems, repeat=n))

    bases = [basis(n) for n in range(max_degree + 2)]
    indexes = [{t: i for i, t in enumerate(b)} for b in bases]
    ranks = [0]
    for n in range(1, max_degree + 2):
        ech = RationalEchelon()
        for t in bases[n]:
            col: dict[int, int] = {}

            def add(u: tuple, s: int):
                i = indexes[n - 1][u]
                v = col.get(i, 0) + s
                if v:
                    col[i] = v
                elif i in col:
                    del col[i]

            add(t[1:], 1)
            for k in range(1, n):
                merged = t[:k - 1] + (mul(t[k - 1], t[k]),) + t[k + 1:]
                add(merged, 1 if k % 2 == 0 else -1)
            add(t[:-1], 1 if n % 2 == 0 else -1)
            ech.insert(col)
        ranks.append(ech.rank)
    return [len(bases[n]) - ranks[n] - ranks[n + 1] for n in range(max_degree + 1)]
