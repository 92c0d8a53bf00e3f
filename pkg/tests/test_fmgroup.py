import random
from fractions import Fraction as F

import pytest

from stabwalls.errors import DegenerateGamma, NotInGHat
from stabwalls.fmgroup import (
    FMDescriptor,
    GMatrix,
    act_on_vector,
    charge_at_z,
    charge_compat_check,
    delta_matrix,
    dual_flip,
    g_inv,
    g_membership,
    g_mul,
    gamma0_check,
    generator_matrix,
    half_plane_image_check,
    identity_matrix,
    matrix_power,
    mobius,
    param_transform,
    psi_apply_to_wall,
    psi_map,
    swap_diagonal,
    theta_phi_convert,
)
from stabwalls.lattice import Context, MukaiVector, RHO, UNIT, pairing
from stabwalls.pell import solve_generator
from stabwalls.surd import QnComplex, QnNumber, Surd, qnc_rat
from stabwalls.walls import codim0_walls

C1 = Context(1)
C2 = Context(2)


def _rng_ghat(rng, n):
    """Random group element: a short product of Pell generators and the
    dualizing factor."""
    gens = []
    for ell in (2, 3, 5):
        if (ell * n) ** 0.5 % 1:
            pc = solve_generator(n, ell)
            gens.append(generator_matrix(pc))
    gens.append(delta_matrix())
    if n == 1:
        gens.append(GMatrix(Surd(1), Surd(1), Surd(0), Surd(1)))
    out = identity_matrix()
    for _ in range(rng.randint(1, 4)):
        out = out * rng.choice(gens)
    return out


# -- group structure ----------------------------------------------------------


def test_g_mul_examples():
    pc2 = solve_generator(1, 2)
    a2 = generator_matrix(pc2)
    sq = g_mul(a2, a2, C1)
    assert sq == GMatrix(Surd(3), Surd(4), Surd(2), Surd(3))
    a3 = generator_matrix(solve_generator(1, 3))
    conj = g_mul(g_mul(delta_matrix(), a3, C1), delta_matrix(), C1)
    assert conj == GMatrix(Surd(2), Surd(-3), Surd(-1), Surd(2))
    g = GMatrix(Surd(1, 2), Surd(1), Surd(1), Surd(1, 2))
    assert g_membership(g, C2) == 1


def test_membership_rejects():
    assert g_membership(GMatrix(Surd(1), Surd(1), Surd(1), Surd(1)), C1) is None  # det 0
    assert g_membership(GMatrix(Surd(2), Surd(0), Surd(0), Surd(1)), C1) is None  # det 2
    # mixed radicands across a diagonal
    bad = GMatrix(Surd(1, 2), Surd(1), Surd(1), Surd(1, 3))
    assert g_membership(bad, Context(6)) is None
    with pytest.raises(NotInGHat):
        g_mul(GMatrix(Surd(2), Surd(0), Surd(0), Surd(1)), identity_matrix(), C1)


def test_g_inv():
    rng = random.Random(8)
    for _ in range(50):
        g = _rng_ghat(rng, 1)
        assert g_mul(g, g_inv(g, C1), C1) in (identity_matrix(), -identity_matrix())


def test_act_examples():
    a2 = generator_matrix(solve_generator(1, 2))
    assert act_on_vector(RHO, a2, C1) == MukaiVector(1, 1, 1)
    assert act_on_vector(UNIT, a2, C1) == MukaiVector(1, 2, 4)
    v = MukaiVector(3, -1, 2)
    assert act_on_vector(v, identity_matrix(), C1) == v


def test_act_isometry_and_contravariance():
    rng = random.Random(99)
    for n in (1, 2):
        ctx = Context(n)
        for _ in range(250):
            g1, g2 = _rng_ghat(rng, n), _rng_ghat(rng, n)
            v = MukaiVector(rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(-5, 5))
            w = MukaiVector(rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(-5, 5))
            assert pairing(
                act_on_vector(v, g1, ctx), act_on_vector(w, g1, ctx), ctx
            ) == pairing(v, w, ctx)
            assert act_on_vector(act_on_vector(v, g1, ctx), g2, ctx) == act_on_vector(
                v, g_mul(g1, g2, ctx), ctx
            )


def test_theta_phi_convert():
    g = GMatrix(Surd(2), Surd(5), Surd(1), Surd(3))
    assert theta_phi_convert(theta_phi_convert(g, "swap"), "swap") == g
    assert theta_phi_convert(g, "dual") == GMatrix(Surd(2), Surd(-5), Surd(-1), Surd(3))
    sym = generator_matrix(solve_generator(1, 2))
    assert theta_phi_convert(sym, "swap") == sym  # equal diagonal entries


# -- half-plane action --------------------------------------------------------


def test_mobius_examples():
    a3sq = matrix_power(generator_matrix(solve_generator(1, 3)), 2)
    assert a3sq == GMatrix(Surd(7), Surd(12), Surd(4), Surd(7))
    img = mobius(a3sq, qnc_rat(0, 1, 1), C1)
    assert img == qnc_rat(F(112, 65), F(1, 65), 1)
    z = qnc_rat(F(5, 7), F(2, 3), 1)
    assert mobius(identity_matrix(), z, C1) == z
    assert mobius(delta_matrix(), qnc_rat(1, 1, 1), C1) == qnc_rat(-1, 1, 1)


def test_mobius_preserves_upper_half_plane_and_composes():
    rng = random.Random(13)
    count = 0
    for n in (1, 2):
        ctx = Context(n)
        for _ in range(100):
            g1, g2 = _rng_ghat(rng, n), _rng_ghat(rng, n)
            z = QnComplex(
                QnNumber(F(rng.randint(-6, 6), rng.randint(1, 3)), F(rng.randint(-2, 2), 3), n),
                QnNumber(F(rng.randint(1, 6), rng.randint(1, 3)), 0, n),
            )
            if z.im.sign() <= 0:
                continue
            left = mobius(g1, mobius(g2, z, ctx), ctx)
            right = mobius(g_mul(g1, g2, ctx), z, ctx)
            assert left == right
            assert left.im.sign() > 0
            count += 1
    assert count == 200


def test_charge_compat_golden_and_random():
    a3sq = matrix_power(generator_matrix(solve_generator(1, 3)), 2)
    assert charge_compat_check(a3sq, MukaiVector(1, 0, -3), qnc_rat(0, 1, 1), C1)
    assert charge_compat_check(
        identity_matrix(), MukaiVector(2, -1, 3), qnc_rat(F(1, 3), F(7, 2), 1), C1
    )
    rng = random.Random(4)
    count = 0
    while count < 200:
        n = rng.choice([1, 2])
        ctx = Context(n)
        g = _rng_ghat(rng, n)
        try:
            parity = g.det()
        except NotInGHat:
            continue
        if parity != 1:
            continue
        v = MukaiVector(rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(-4, 4))
        z = QnComplex(
            QnNumber(F(rng.randint(-5, 5), 2), F(rng.randint(-2, 2), 2), n),
            QnNumber(F(rng.randint(1, 5), 2), 0, n),
        )
        assert charge_compat_check(g, v, z, ctx)
        count += 1


def test_charge_compat_negative_control():
    # the wrong orientation (dual flip instead of swap) breaks the identity
    g = GMatrix(Surd(2), Surd(5), Surd(1), Surd(3))
    v, z = MukaiVector(1, 2, -1), qnc_rat(F(1, 2), F(3, 2), 1)
    lhs = charge_at_z(v, z, C1)
    z_img = mobius(g, z, C1)
    wrong = -act_on_vector(v, dual_flip(g), C1)
    cd = (g.c * g.d).as_fraction()
    zeta = (
        (z * z) * g.c.square()
        + z * qnc_rat(0, 0, 1).__class__(QnNumber(2 * cd, 0, 1), QnNumber(0, 0, 1))
        + qnc_rat(g.d.square(), 0, 1)
    )
    assert lhs != -(zeta * charge_at_z(wrong, z_img, C1))


# -- wall swapping ------------------------------------------------------------


def test_theta_psi_matrix_identity():
    for n, ell in [(1, 2), (1, 3), (2, 3)]:
        ctx = Context(n)
        pc = solve_generator(n, ell)
        a = generator_matrix(pc)
        for m in range(-5, 6):
            psi = psi_map(pc, m)
            assert psi.contravariant
            for k in range(-5, 6):
                lhs = g_mul(matrix_power(a, m + k), psi.matrix, ctx)
                rhs = g_mul(delta_matrix(), matrix_power(a, m - k), ctx)
                assert lhs == rhs or lhs == -rhs  # identity in G/{+-1}


def test_psi_wall_transport():
    pc2 = solve_generator(1, 2)
    fam = {w.label: w for w in codim0_walls(pc2, range(-3, 4))}
    t = psi_apply_to_wall(psi_map(pc2, 0), fam[-1], pc2, C1)
    assert t.shape == fam[1].shape and t.label == 1
    t = psi_apply_to_wall(psi_map(pc2, -1), fam[-2], pc2, C1)
    assert t.shape == fam[0].shape and t.label == 0
    t = psi_apply_to_wall(psi_map(pc2, -1), fam[-1], pc2, C1)
    assert t.shape == fam[-1].shape and t.label == -1


def test_psi_shift_notes():
    pc2 = solve_generator(1, 2)
    assert psi_map(pc2, -2).shift_note == 1
    assert psi_map(pc2, 0).shift_note == 1
    assert psi_map(pc2, 3).shift_note == -1


def test_remark_2m_composite():
    # theta of the there-and-back composite is +-A^{2m}
    for n, ell in [(1, 2), (1, 3)]:
        ctx = Context(n)
        pc = solve_generator(n, ell)
        a = generator_matrix(pc)
        for m in range(-3, 4):
            theta_back = matrix_power(a, m)
            if pc.epsilon**m == -1:
                theta_back = g_mul(delta_matrix(), theta_back, ctx)
            composite = g_mul(swap_diagonal(theta_back), theta_back, ctx)
            target = matrix_power(a, 2 * m)
            assert composite == target or composite == -target


# -- parameter transform ------------------------------------------------------


def test_param_transform_examples():
    assert param_transform(0, 1, -1, 1, C1) == (F(1, 2), F(1, 4))
    # circle |z - lam| = sqrt(2/(|r1|(H^2))) maps to the same-radius circle
    lam, r1 = F(0), 1
    target = F(2, 1 * 2)  # 2/(|r1|(H^2)) = 1 for n = 1
    for s in (F(1, 2), F(-3, 4), F(9, 10)):
        t_sq = target - (s - lam) ** 2
        if t_sq <= 0:
            continue
        sp, tp2 = param_transform(lam, r1, s, t_sq, C1)
        assert sp * sp + tp2 == target


def test_param_transform_against_mobius():
    # independent codepath: the half-plane action of a matching matrix
    cases = [
        (C1, GMatrix(Surd(2), Surd(5), Surd(1), Surd(3)), F(-1), 2),
        (C1, GMatrix(Surd(7), Surd(12), Surd(4), Surd(7)), F(0), 1),
        (C2, GMatrix(Surd(1, 2), Surd(1), Surd(1), Surd(1, 2)), F(1), 3),
        (C2, GMatrix(Surd(1), Surd(1, 2), Surd(1, 2), Surd(3)), F(-2), F(1, 2)),
    ]
    for ctx, g, s, t in cases:
        n = ctx.n
        gamma, srad = g.c.coef, g.c.rad
        lam = F(-g.d.coef, gamma * srad)
        lam_prime = F(g.a.coef, gamma * srad)
        r1 = gamma * gamma * srad
        sp, tp2 = param_transform(lam, r1, s, F(t) ** 2, ctx)
        z = QnComplex(QnNumber(0, s, n), QnNumber(0, F(t), n))  # sqrt(n)(s+ti)
        zi = mobius(g, z, ctx)
        s_abs = zi.re * QnNumber(0, 1, n) * F(1, n)
        t_abs = zi.im * QnNumber(0, 1, n) * F(1, n)
        assert s_abs == QnNumber(lam_prime + sp, 0, n)
        assert t_abs * t_abs == QnNumber(tp2, 0, n)


def test_half_plane_image_check():
    v = MukaiVector(1, 0, -2)
    assert half_plane_image_check(v, -1, 1, F(-3, 2), F(1, 100), C1)
    # boundary point (on the circle t^2 = (lam-s)(2+s)): equality holds
    assert half_plane_image_check(v, -1, 1, F(-3, 2), F(1, 4), C1)
    assert not half_plane_image_check(v, -1, 1, F(0), F(1), C1)
    with pytest.raises(DegenerateGamma):
        half_plane_image_check(v, 0, 1, F(1), F(1), C1)


def test_half_plane_matches_direct_disk_test():
    v, lam = MukaiVector(1, 0, -2), F(-1)
    # C_{v,lam}: t^2 = (lam - s)((a - d*lam*n)/(n(lam*r - d)) + s) = (-1-s)(2+s)
    rng = random.Random(55)
    for _ in range(120):
        s = F(rng.randint(-12, 6), 4)
        t_sq = F(rng.randint(1, 30), 10)
        direct = t_sq <= (lam - s) * (2 + s)
        assert half_plane_image_check(v, lam, 1, s, t_sq, C1) == direct


# -- modular conjugation ------------------------------------------------------


def test_gamma0_check():
    assert gamma0_check(identity_matrix(), C2)
    assert gamma0_check(GMatrix(Surd(1), Surd(1, 2), Surd(1, 2), Surd(3)), C2)
    assert not gamma0_check(GMatrix(Surd(1, 2), Surd(1), Surd(1), Surd(1, 2)), C2)
    assert not gamma0_check(delta_matrix(), C1)  # determinant -1
    # n=1: everything with det 1 conjugates into SL(2, Z) = Gamma_0(1)
    assert gamma0_check(GMatrix(Surd(2), Surd(5), Surd(1), Surd(3)), C1)


def test_param_transform_same_point():
    from stabwalls.errors import SamePoint

    with pytest.raises(SamePoint):
        param_transform(F(1), 1, F(1), F(0), C1)
    with pytest.raises(DegenerateGamma):
        param_transform(F(1), 0, F(0), F(1), C1)


def test_param_transform_pure_imaginary_direction():
    # s = lam: the image lands on the positive imaginary axis (s' = 0)
    sp, tp2 = param_transform(F(3, 2), 2, F(3, 2), F(1), C1)
    assert sp == 0 and tp2 > 0
