"""The auxiliary complex E_.(G), the retraction/inclusion pair onto E_.(Z_h),
the inductive chain homotopies, and the comparison map theta_h onto the
class-restricted Hochschild complex.

E_n(G) has basis G^{n+1} with the simplicial boundary

    d(g_0,...,g_n) = (g_1,...,g_n) + sum_{k=1}^n (-1)^k (g_0,...,^g_k,...,g_n).

p^E applies p_h entrywise, i^E is the inclusion, and

    D_0(g_0) = (g_0 s(Z_h g_0)^-1, g_0),
    D_n(g_0,...) = (g_0, (id - i^E p^E - D_{n-1} d_n)(g_0,...))

satisfies id - i^E p^E = D_{n-1} d_n + d_{n+1} D_n exactly.  theta_h sends
(g_0,...,g_n) to (g_n^-1 h g_0, g_0^-1 g_1, ..., g_{n-1}^-1 g_n); its kernel
is spanned by left Z_h-translation differences, so it identifies the
Z_h-coinvariants of E_.(G) with the class component of h.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Optional

from .chains import Chain, linear_extend
from .errors import GroupMismatchError
from .groups import Element, GroupModel
from .hochschild import entry_product, hochschild_boundary, iota_h, pi_h
from .linalg import RationalEchelon
from .metric import CosetSection, WordMetric, make_conjugator_provider

ONE = Fraction(1)


def boundary_e(model: GroupModel, c: Chain) -> Chain:
    if c.kind != "e":
        raise GroupMismatchError("boundary_e needs an e-complex chain")
    n = c.degree
    if n == 0:
        return Chain.zero("e", 0)

    def faces(t):
        for k in range(n + 1):
            yield t[:k] + t[k + 1:], ONE if k % 2 == 0 else -ONE

    return linear_extend(c, "e", n - 1, faces)


def p_e(model: GroupModel, section: CosetSection, c: Chain) -> Chain:
    """Entrywise retraction E_.(G) -> E_.(Z_h)."""
    if c.kind != "e":
        raise GroupMismatchError("p_e needs an e-complex chain")
    p = section.retract

    def on_basis(t):
        yield tuple(p(x) for x in t), ONE

    return linear_extend(c, "e", c.degree, on_basis)


def i_e(model: GroupModel, h: Element, c: Chain) -> Chain:
    """Inclusion E_.(Z_h) -> E_.(G); identity on terms after validation."""
    for t in c.terms:
        for x in t:
            if not model.commutes(x, h):
                raise GroupMismatchError(
                    f"entry {model.element_str(x)} lies outside the centralizer")
    return Chain(c.kind, c.degree, c.terms)


def homotopy_d(model: GroupModel, section: CosetSection, c: Chain) -> Chain:
    """The chain homotopy D_n : E_n(G) -> E_{n+1}(G) for id - i^E p^E.

    The inductive prepend is extended linearly over the inner chain.
    """
    if c.kind != "e":
        raise GroupMismatchError("homotopy_d needs an e-complex chain")
    n = c.degree
    m = model
    p = section.retract

    if n == 0:
        def d0(t):
            yield (p(t[0]), t[0]), ONE
        return linear_extend(c, "e", 1, d0)

    def dn(t):
        gen = Chain.basis("e", n, t)
        inner = gen - _ip(m, section, gen) - homotopy_d(m, section, boundary_e(m, gen))
        for u, q in inner.terms.items():
            yield (t[0],) + u, q

    return linear_extend(c, "e", n + 1, dn)


def _ip(model: GroupModel, section: CosetSection, c: Chain) -> Chain:
    return i_e(model, section.h, p_e(model, section, c))


def theta_h(model: GroupModel, h: Element, c: Chain) -> Chain:
    """E_n(G) -> C_n(QG)_x on generators:
    (g_0,...,g_n) -> (g_n^-1 h g_0, g_0^-1 g_1, ..., g_{n-1}^-1 g_n)."""
    if c.kind != "e":
        raise GroupMismatchError("theta_h needs an e-complex chain")
    m = model

    def on_basis(t):
        first = m.mul(m.mul(m.inv(t[-1]), h), t[0])
        rest = [m.mul(m.inv(t[i]), t[i + 1]) for i in range(len(t) - 1)]
        yield (first, *rest), ONE

    return linear_extend(c, "hochschild", c.degree, on_basis)


def theta_lift(model: GroupModel, section: CosetSection, c: Chain,
               conjugator: Optional[Callable[[Element], Element]] = None) -> Chain:
    """A section of theta_h: a generator with entry product r^-1 h r lifts to
    (r a_0, r a_0 a_1, ..., r a_0...a_n)."""
    if c.kind != "hochschild":
        raise GroupMismatchError("theta_lift needs a hochschild chain")
    if conjugator is None:
        conjugator = make_conjugator_provider(section)
    m = model

    def on_basis(t):
        r = conjugator(entry_product(m, t))
        out = []
        acc = r
        for x in t:
            acc = m.mul(acc, x)
            out.append(acc)
        yield tuple(out), ONE

    return linear_extend(c, "e", c.degree, on_basis)


def dbar(model: GroupModel, section: CosetSection, c: Chain,
         conjugator: Optional[Callable[[Element], Element]] = None) -> Chain:
    """The homotopy D pushed through theta_h onto the Hochschild side."""
    lifted = theta_lift(model, section, c, conjugator)
    return theta_h(model, section.h, homotopy_d(model, section, lifted))


def normalize_coinvariant(model: GroupModel, section: CosetSection, t: tuple) -> tuple:
    """Canonical representative of the left Z_h-translation orbit of t:
    translate by p_h(t_0)^-1, forcing the first entry into the image of s."""
    z = model.inv(section.retract(t[0]))
    return tuple(model.mul(z, x) for x in t)


def translate_tuple(model: GroupModel, z: Element, t: tuple) -> tuple:
    return tuple(model.mul(z, x) for x in t)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _e_generators(model: GroupModel, wm: WordMetric, degree: int,
                  sample: int, radius: int, rng: random.Random) -> list[tuple]:
    if model.is_finite and model.order ** (degree + 1) <= max(sample, 1):
        return list(itertools.product(model.elements(), repeat=degree + 1))
    ball = wm.ball(radius)
    return [tuple(rng.choice(ball) for _ in range(degree + 1)) for _ in range(sample)]


def verify_homotopy_square(model: GroupModel, wm: WordMetric, h: Element,
                           n_max: int, samples: int = 50, radius: int = 2,
                           seed: int = 0) -> dict:
    """Check the commuting square for theta_h and the transferred homotopy.

    Identities checked exactly, per degree n <= n_max, on quotient
    representatives (plus the E-level homotopy identity on raw generators):

        theta_h . p^E = pi_h . theta_h
        theta_h . i^E = iota_h . theta_h
        id - i^E p^E  = D d + d D           (on E_.(G))
        id - iota pi  = b Dbar + Dbar b     (on C_.(QG)_x)
        pi_h . iota_h = id

    Any failure is reported with the offending generator.
    """
    from .metric import coset_section
    rng = random.Random(seed)
    section = coset_section(model, wm, h)
    conj = make_conjugator_provider(section)
    m = model
    checks: list[dict] = []

    def record(name: str, degree: int, count: int, failures: list[str]):
        checks.append({"identity_name": name, "degree": degree,
                       "samples": count, "failures": failures})

    for n in range(n_max + 1):
        gens = _e_generators(m, wm, n, samples, radius, rng)
        reps = sorted({normalize_coinvariant(m, section, t) for t in gens},
                      key=lambda t: tuple(m.element_key(x) for x in t))

        failures = []
        for t in reps:
            c = Chain.basis("e", n, t)
            lhs = theta_h(m, h, p_e(m, section, c))
            rhs = pi_h(m, section, theta_h(m, h, c), conjugator=conj)
            if lhs != rhs:
                failures.append(_tuple_str(m, t))
        record("theta.pE == pi.theta", n, len(reps), failures)

        z_gens = [tuple(section.retract(x) for x in t) for t in reps]
        failures = []
        for t in z_gens:
            c = Chain.basis("e", n, t)
            lhs = theta_h(m, h, i_e(m, h, c))
            rhs = iota_h(m, h, theta_h(m, h, c))
            if lhs != rhs:
                failures.append(_tuple_str(m, t))
        record("theta.iE == iota.theta", n, len(z_gens), failures)

        failures = []
        for t in gens:
            c = Chain.basis("e", n, t)
            lhs = c - _ip(m, section, c)
            # the D(d c) addend is the zero map in degree 0
            rhs = boundary_e(m, homotopy_d(m, section, c))
            if n > 0:
                rhs = rhs + homotopy_d(m, section, boundary_e(m, c))
            if lhs != rhs:
                failures.append(_tuple_str(m, t))
        record("id - iE.pE == D.d + d.D", n, len(gens), failures)

        failures = []
        for t in reps:
            hh = theta_h(m, h, Chain.basis("e", n, t))
            lhs = hh - iota_h(m, h, pi_h(m, section, hh, conjugator=conj))
            rhs = hochschild_boundary(m, dbar(m, section, hh, conj))
            if n > 0:
                rhs = rhs + dbar(m, section, hochschild_boundary(m, hh), conj)
            if lhs != rhs:
                failures.append(_tuple_str(m, t))
        record("id - iota.pi == b.Dbar + Dbar.b", n, len(reps), failures)

        failures = []
        for t in z_gens:
            zc = theta_h(m, h, Chain.basis("e", n, t))
            if pi_h(m, section, iota_h(m, h, zc), conjugator=conj) != zc:
                failures.append(_tuple_str(m, t))
        record("pi.iota == id", n, len(z_gens), failures)

    return {
        "model": m.name,
        "h": m.element_str(h),
        "n_max": n_max,
        "checks": checks,
        "all_passed": all(not c["failures"] for c in checks),
    }


def theta_quotient_dims(model: GroupModel, wm: WordMetric, h: Element,
                        degree: int) -> dict:
    """Rank data for theta_h on a finite model: image rank, kernel rank, and
    the coinvariant basis count, against dim C_degree(QG)_x."""
    from .hochschild import class_component_basis
    from .metric import conjugacy_class, coset_section
    if not model.is_finite:
        raise GroupMismatchError("theta rank checks need a finite model")
    section = coset_section(model, wm, h)
    x = conjugacy_class(model, wm, h)
    target = class_component_basis(model, wm, degree, x)
    index = {t: i for i, t in enumerate(target)}
    tuples = list(itertools.product(model.elements(), repeat=degree + 1))

    ech = RationalEchelon()
    for t in tuples:
        img = theta_h(model, h, Chain.basis("e", degree, t))
        col: dict[int, int] = {}
        for u, q in img.terms.items():
            col[index[u]] = col.get(index[u], 0) + int(q)
        ech.insert({i: v for i, v in col.items() if v})
    image_rank = ech.rank

    zs = [z for z in model.elements() if model.commutes(z, h)]
    tindex = {t: i for i, t in enumerate(tuples)}
    kernel = RationalEchelon()
    for t in tuples:
        for z in zs:
            if z == model.identity:
                continue
            zt = translate_tuple(model, z, t)
            kernel.insert({tindex[zt]: 1, tindex[t]: -1} if zt != t else {})
    orbits = len({normalize_coinvariant(model, section, t) for t in tuples})

    return {
        "degree": degree,
        "dim_e": len(tuples),
        "dim_component": len(target),
        "image_rank": image_rank,
        "kernel_span_rank": kernel.rank,
        "coinvariant_basis": orbits,
    }


def _tuple_str(model: GroupModel, t: tuple) -> str:
    return "(" + ", ".join(model.element_str(x) for x in t) + ")"
