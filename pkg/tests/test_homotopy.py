import itertools
import random
from fractions import Fraction

import pytest

from burghelea import (
    GroupMismatchError,
    boundary_e,
    conjugacy_class,
    coset_section,
    dbar,
    hochschild_boundary,
    homotopy_d,
    i_e,
    iota_h,
    p_e,
    pi_h,
    theta_h,
    verify_homotopy_square,
)
from burghelea.chains import Chain
from burghelea.hochschild import class_component_basis, entry_product
from burghelea.homotopy import (
    normalize_coinvariant,
    theta_lift,
    theta_quotient_dims,
    translate_tuple,
)


def test_boundary_e_examples(f2):
    g0, g1 = (1,), (2,)
    out = boundary_e(f2, Chain.basis("e", 1, (g0, g1)))
    assert out == Chain("e", 0, [((g1,), Fraction(1)), ((g0,), Fraction(-1))])
    assert boundary_e(f2, Chain.basis("e", 1, (g0, g0))).is_zero()
    c = Chain.basis("e", 2, (g0, g1, (1, 2)))
    assert boundary_e(f2, boundary_e(f2, c)).is_zero()
    assert boundary_e(f2, Chain.basis("e", 0, (g0,))).is_zero()


def test_p_e_and_i_e(f2, zz, metrics):
    wm = metrics(f2)
    h = (1,)
    sec = coset_section(f2, wm, h)
    # all entries in Z_h stay put
    c = Chain.basis("e", 1, ((1, 1), (1,)))
    assert p_e(f2, sec, c) == c
    assert i_e(f2, h, c) == c
    # p_h(a^3 b) = a^3 entrywise
    c2 = Chain.basis("e", 1, ((1, 1, 1, 2), (1,)))
    assert p_e(f2, sec, c2) == Chain.basis("e", 1, ((1, 1, 1), (1,)))
    # abelian: identity
    zsec = coset_section(zz, metrics(zz), (1, 0))
    c3 = Chain.basis("e", 1, ((3, -1), (0, 2)))
    assert p_e(zz, zsec, c3) == c3
    with pytest.raises(GroupMismatchError):
        i_e(f2, h, Chain.basis("e", 0, ((2,),)))


def test_d0_examples(f2, zz, metrics):
    wm = metrics(f2)
    h = (1,)
    sec = coset_section(f2, wm, h)
    # g0 in Z_h: D0(g0) = (g0, g0), boundary vanishes like id - ip
    g0 = (1, 1)
    d0 = homotopy_d(f2, sec, Chain.basis("e", 0, (g0,)))
    assert d0 == Chain.basis("e", 1, (g0, g0))
    assert boundary_e(f2, d0).is_zero()
    # F2, h=a, g0=a^3 b: D0 = (a^3, a^3 b), dD0 = (a^3 b) - (a^3)
    g0 = (1, 1, 1, 2)
    d0 = homotopy_d(f2, sec, Chain.basis("e", 0, (g0,)))
    assert d0 == Chain.basis("e", 1, ((1, 1, 1), g0))
    out = boundary_e(f2, d0)
    assert out == Chain("e", 0, [((g0,), Fraction(1)), (((1, 1, 1),), Fraction(-1))])
    # abelian: p = id so id - ip = 0 and dD0 = 0
    zsec = coset_section(zz, metrics(zz), (1, 0))
    d0 = homotopy_d(zz, zsec, Chain.basis("e", 0, ((2, 3),)))
    assert boundary_e(zz, d0).is_zero()


def _ip(model, sec, c):
    return i_e(model, sec.h, p_e(model, sec, c))


@pytest.mark.parametrize("fixture,h", [("s3", (0, 2, 1)), ("z4", 1), ("f2", (1,)), ("zz", (1, 0))])
def test_homotopy_identity_degrees_up_to_three(fixture, h, request, metrics):
    m = request.getfixturevalue(fixture)
    wm = metrics(m)
    sec = coset_section(m, wm, h)
    rng = random.Random(37)
    ball = wm.ball(2)
    for n in range(4):
        if m.is_finite and m.order ** (n + 1) <= 300:
            gens = list(itertools.product(m.elements(), repeat=n + 1))
        else:
            gens = [tuple(rng.choice(ball) for _ in range(n + 1)) for _ in range(25)]
        for t in gens:
            c = Chain.basis("e", n, t)
            lhs = c - _ip(m, sec, c)
            rhs = boundary_e(m, homotopy_d(m, sec, c))
            if n > 0:
                rhs = rhs + homotopy_d(m, sec, boundary_e(m, c))
            assert lhs == rhs


def test_equivariance_exhaustive_s3(s3, metrics):
    wm = metrics(s3)
    h = (0, 2, 1)
    sec = coset_section(s3, wm, h)
    zs = [z for z in s3.elements() if s3.commutes(z, h)]
    for n in (0, 1):
        for t in itertools.product(s3.elements(), repeat=n + 1):
            c = Chain.basis("e", n, t)
            for z in zs:
                zt = translate_tuple(s3, z, t)
                zc = Chain.basis("e", n, zt)
                for f in (lambda x: p_e(s3, sec, x),
                          lambda x: homotopy_d(s3, sec, x)):
                    image_t = f(c)
                    image_zt = f(zc)
                    shifted = Chain(image_t.kind, image_t.degree,
                                    [(translate_tuple(s3, z, u), q)
                                     for u, q in image_t.terms.items()])
                    assert image_zt == shifted


def test_theta_examples(s3, metrics):
    h = (0, 2, 1)
    g0 = (1, 2, 0)
    out = theta_h(s3, h, Chain.basis("e", 0, (g0,)))
    assert out == Chain.basis("hochschild", 0, (s3.conj(g0, h),))
    # invariance under left Z_h translation
    t = ((1, 0, 2), (2, 1, 0))
    for z in s3.elements():
        if s3.commutes(z, h) :
            zt = translate_tuple(s3, z, t)
            assert theta_h(s3, h, Chain.basis("e", 1, zt)) == \
                theta_h(s3, h, Chain.basis("e", 1, t))


def test_theta_chain_map(s3, f2, metrics):
    rng = random.Random(41)
    for m, h in ((s3, (0, 2, 1)), (f2, (1, 2))):
        ball = metrics(m).ball(2)
        for n in (1, 2, 3):
            for _ in range(20):
                t = tuple(rng.choice(ball) for _ in range(n + 1))
                c = Chain.basis("e", n, t)
                assert hochschild_boundary(m, theta_h(m, h, c)) == \
                    theta_h(m, h, boundary_e(m, c))


def test_theta_lands_in_component_and_lift_sections(s3, metrics):
    wm = metrics(s3)
    h = (0, 2, 1)
    sec = coset_section(s3, wm, h)
    x = conjugacy_class(s3, wm, h)
    rng = random.Random(43)
    for n in (0, 1, 2):
        for _ in range(25):
            t = tuple(rng.choice(s3.elements()) for _ in range(n + 1))
            out = theta_h(s3, h, Chain.basis("e", n, t))
            for u in out.terms:
                assert conjugacy_class(s3, wm, entry_product(s3, u)) == x
            # lift is a section of theta
            assert theta_h(s3, h, theta_lift(s3, sec, out)) == out


def test_theta_surjectivity_rank(s3, metrics):
    d = theta_quotient_dims(s3, metrics(s3), (0, 2, 1), 1)
    assert d["dim_component"] == 18  # |x| * |G| = 3 * 6
    assert d["image_rank"] == 18     # surjective
    assert d["kernel_span_rank"] == d["dim_e"] - d["image_rank"]
    assert d["coinvariant_basis"] == d["dim_component"]


def test_coinvariant_normalization_fixed_point(s3, f2, metrics):
    rng = random.Random(47)
    for m, h in ((s3, (0, 2, 1)), (f2, (1,))):
        wm = metrics(m)
        sec = coset_section(m, wm, h)
        ball = wm.ball(2)
        for _ in range(40):
            t = tuple(rng.choice(ball) for _ in range(3))
            rep = normalize_coinvariant(m, sec, t)
            assert normalize_coinvariant(m, sec, rep) == rep
            # representative is a left translate by a centralizer element
            z = m.mul(t[0], m.inv(rep[0]))
            assert m.commutes(z, h)
            assert translate_tuple(m, z, rep) == t


def test_dbar_homotopy_on_s3_component(s3, metrics):
    wm = metrics(s3)
    h = (0, 2, 1)
    sec = coset_section(s3, wm, h)
    x = conjugacy_class(s3, wm, h)
    for n in (1, 2):
        basis = class_component_basis(s3, wm, n, x)
        for t in basis[::7]:
            c = Chain.basis("hochschild", n, t)
            lhs = c - iota_h(s3, h, pi_h(s3, sec, c))
            rhs = hochschild_boundary(s3, dbar(s3, sec, c)) \
                + dbar(s3, sec, hochschild_boundary(s3, c))
            assert lhs == rhs


def test_verify_homotopy_square_abelian_trivial(zz, z4, metrics):
    for m, h in ((zz, (1, 0)), (z4, 1)):
        report = verify_homotopy_square(m, metrics(m), h, n_max=2,
                                        samples=10, radius=2, seed=1)
        assert report["all_passed"]


def test_verify_homotopy_square_s3_exhaustive(s3, metrics):
    report = verify_homotopy_square(s3, metrics(s3), (0, 2, 1), n_max=2,
                                    samples=10 ** 6, radius=2, seed=0)
    assert report["all_passed"]
    # degree-2 checks on quotient representatives cover all 108 of them
    reps_checked = [c for c in report["checks"]
                    if c["degree"] == 2 and c["identity_name"].startswith("theta.pE")]
    assert reps_checked[0]["samples"] == 108
