import random
from fractions import Fraction as F

import pytest

from stabwalls.errors import SquareCase
from stabwalls.lattice import Context, MukaiVector, RHO, UNIT, pairing, self_pairing
from stabwalls.pell import (
    PellMatrix,
    interval_index,
    iterate,
    numerical_solutions,
    presentation_report,
    sheaf_verdict,
    slope_endpoints,
    solve_generator,
    u_vectors,
)
from stabwalls.surd import Surd


# -- generators ---------------------------------------------------------------


@pytest.mark.parametrize(
    "n,ell,x,y,eps",
    [
        (1, 2, Surd(1), Surd(1), -1),
        (1, 3, Surd(1), Surd(2), 1),
        (1, 5, Surd(1), Surd(2), -1),
        (1, 6, Surd(2), Surd(5), 1),
        (2, 1, Surd(1), Surd(1, 2), 1),
        (2, 3, Surd(1), Surd(1, 2), -1),
    ],
)
def test_generators(n, ell, x, y, eps):
    pc = solve_generator(n, ell)
    assert pc.generator.x == x and pc.generator.y == y
    assert pc.epsilon == eps


def test_generator_2_1_against_small_brute_force():
    # independent oracle: minimal y + x over all shapes with a, b <= 10
    best = None
    for r, s in [(1, 2), (2, 1)]:
        for a in range(1, 11):
            for b in range(0, 11):
                x, y = Surd(a, r), Surd(b, s)
                if y.square() - x.square() in (1, -1):
                    phi = y.to_float() + x.to_float()
                    if phi > 1 and (best is None or phi < best[0]):
                        best = (phi, x, y)
    pc = solve_generator(2, 1)
    assert (pc.generator.x, pc.generator.y) == (best[1], best[2])


def test_generator_square_case():
    with pytest.raises(SquareCase):
        solve_generator(1, 4)
    with pytest.raises(SquareCase):
        solve_generator(1, 1)
    with pytest.raises(SquareCase):
        solve_generator(2, 2)


def test_torsion_reported_for_ell_1():
    pc = solve_generator(2, 1)
    assert pc.torsion is not None
    assert pc.torsion.y.is_zero() and pc.torsion.x == Surd(1)
    assert solve_generator(1, 2).torsion is None


def test_continued_fraction_path_agrees():
    # force the CF accelerator by shrinking the brute limit
    for n, ell in [(1, 13), (1, 19), (2, 3)]:
        brute = solve_generator(n, ell)
        cf = solve_generator(n, ell, brute_limit=1)
        assert (cf.generator.x, cf.generator.y) == (brute.generator.x, brute.generator.y)


# -- iterates -----------------------------------------------------------------


def test_iterate_examples():
    pc3 = solve_generator(1, 3)
    it = iterate(pc3, 2)
    assert (it.a, it.b) == (Surd(4), Surd(7))
    it = iterate(pc3, 0)
    assert (it.a, it.b) == (Surd(0), Surd(1))
    it = iterate(pc3, -1)
    assert (it.a, it.b) == (Surd(-1), Surd(2))


def test_iterate_group_law_and_det():
    for n, ell in [(1, 2), (1, 3), (2, 1), (2, 3)]:
        pc = solve_generator(n, ell)
        for m1 in range(-4, 5):
            for m2 in range(-3, 4):
                i1, i2 = iterate(pc, m1), iterate(pc, m2)
                prod = PellMatrix(i1.a, i1.b, ell) * PellMatrix(i2.a, i2.b, ell)
                tot = iterate(pc, m1 + m2)
                assert (prod.x, prod.y) == (tot.a, tot.b)
                assert PellMatrix(tot.a, tot.b, ell).norm() == pc.epsilon ** (m1 + m2)


# -- isotropic pairs ----------------------------------------------------------


def test_u_vector_examples():
    assert u_vectors(solve_generator(1, 2), -1)[0] == MukaiVector(1, -1, 1)
    assert u_vectors(solve_generator(1, 5), -1)[0] == MukaiVector(1, -2, 4)
    # (4,-10,25) is the value consistent with the l=6 circle
    # (s+49/20)^2 + t^2 = 1/400; its first component is 4 = a^2, not 25
    assert u_vectors(solve_generator(1, 6), -1)[0] == MukaiVector(4, -10, 25)
    assert u_vectors(solve_generator(1, 2), 0) == (RHO, UNIT)


def test_u_vector_invariants():
    for n, ell in [(1, 2), (1, 3), (1, 5), (1, 6), (2, 1), (2, 3)]:
        ctx = Context(n)
        pc = solve_generator(n, ell)
        v = MukaiVector(1, 0, -ell)
        for m in range(-8, 9):
            u, u_prime = u_vectors(pc, m)
            assert self_pairing(u, ctx) == 0
            assert self_pairing(u_prime, ctx) == 0
            assert pairing(u, u_prime, ctx) == -1
            combo = u.scale(ell) - u_prime
            assert combo == v or combo == -v


def test_slope_endpoints_are_rational_and_match_circles():
    pc = solve_generator(1, 2)
    lam1, lam2 = slope_endpoints(pc, -1)
    assert sorted([lam1, lam2]) == [F(-2), F(-1)]
    pc6 = solve_generator(1, 6)
    lam1, lam2 = slope_endpoints(pc6, -1)
    assert sorted([lam1, lam2]) == [F(-5, 2), F(-12, 5)]


def test_accumulation_monotonicity():
    # |b_m/(a_m sqrt(n)) * sqrt(n) - sqrt(l)| strictly decreasing in m
    for n, ell in [(1, 2), (1, 3), (2, 1)]:
        pc = solve_generator(n, ell)
        prev = None
        for m in range(1, 11):
            it = iterate(pc, m)
            # slope in the lambda coordinate: b_m/a_m, a surd; compare
            # (b_m/a_m)^2 vs l exactly through  (b^2 - l a^2) / a^2 = eps^m/a^2
            gap_num = abs(pc.epsilon**m)  # |b^2 s - l a^2 r| = 1
            gap_den = it.a.square()
            # |slope - sqrt(l)| = 1/(a_m^2 |slope + sqrt(l)|): strictly
            # decreasing iff a_m^2*(slope+sqrt(l)) increases; assert the
            # squared distance falls
            slope_sq = it.b.square() / it.a.square()
            dist = abs(slope_sq - ell)  # = 1/a_m^2
            if prev is not None:
                assert dist < prev
            prev = dist


# -- numerical solutions ------------------------------------------------------


def test_numerical_solution_examples():
    pc2 = solve_generator(1, 2)
    sols = {s.v1: s for s in numerical_solutions(pc2, range(-1, 2))}
    u_m1 = MukaiVector(1, -1, 1)
    assert u_m1 in sols
    s = sols[u_m1]
    assert (s.l1, s.l2) == (2, 1)
    assert s.v1.scale(2) - s.v2 in (MukaiVector(1, 0, -2), -MukaiVector(1, 0, -2))
    pc5 = solve_generator(1, 5)
    s5 = {s.v1: s for s in numerical_solutions(pc5, range(-1, 0))}[MukaiVector(1, -2, 4)]
    assert s5.v2 == MukaiVector(4, -10, 25)
    assert s5.v1.scale(5) - s5.v2 == MukaiVector(1, 0, -5)
    m0 = [s for s in numerical_solutions(pc2, range(0, 1))][0]
    assert (m0.v1, m0.v2, m0.l1, m0.l2) == (UNIT, RHO, 1, 2)


def test_presentation_report():
    assert presentation_report(1, 4) == {"count": 1, "both_presentations": False}
    rep = presentation_report(1, 2)
    assert rep["both_presentations"] and rep.get("infinite")
    # l*n a perfect square <=> sqrt(l/n) rational: unique solution
    assert presentation_report(1, 1)["count"] == 1
    assert presentation_report(2, 2)["count"] == 1
    assert presentation_report(2, 1).get("infinite")


# -- intervals ----------------------------------------------------------------


def test_interval_index_examples():
    pc2 = solve_generator(1, 2)
    # 0 is the closed left end of I_1 (and the open right end of I_0*)
    assert interval_index(pc2, F(0)) == {"m": 1, "starred": False}
    assert interval_index(pc2, F(1, 2)) == {"m": 1, "starred": True}
    assert interval_index(pc2, F(-3, 2)) == {"m": -2, "starred": False}
    assert interval_index(pc2, F(-1)) == {"m": 0, "starred": False}


def test_interval_partition_property():
    rng = random.Random(314)
    for n, ell in [(1, 2), (1, 3)]:  # eps = -1 and eps = +1
        pc = solve_generator(n, ell)
        for _ in range(500):
            lam = F(rng.randint(-400, 400), rng.randint(1, 40))
            idx = interval_index(pc, lam)
            # membership in exactly one interval: recheck neighbours
            hits = []
            for m in range(idx["m"] - 3, idx["m"] + 4):
                from stabwalls.pell import _member

                if _member(pc, Surd(lam), m, starred=False):
                    hits.append(m)
            assert hits == [idx["m"]]


def test_interval_star_vs_plain_disagree_only_on_endpoints():
    pc2 = solve_generator(1, 2)
    # -3/2 is a left endpoint: in I_-2 but not I_-2*
    from stabwalls.pell import _member

    assert _member(pc2, Surd(F(-3, 2)), -2, starred=False)
    assert not _member(pc2, Surd(F(-3, 2)), -2, starred=True)
    # and it lands in I_-1* instead (right-closed)
    assert _member(pc2, Surd(F(-3, 2)), -1, starred=True)


def test_sheaf_verdict_examples():
    pc2 = solve_generator(1, 2)
    v = sheaf_verdict(pc2, F(-3, 2), -2)
    assert v["verdict"] == "StableSheaf"  # endpoint: not in the starred twin
    v = sheaf_verdict(pc2, F(-1), -2)
    assert v["verdict"] == "Neither"
    # -2 is the open right end of I_0's first piece: starred-only there
    v = sheaf_verdict(pc2, F(-2), 0)
    assert v["verdict"] == "DualStableSheaf"
    # and the closed left end of I_-1: plain-only there
    v = sheaf_verdict(pc2, F(-2), -1)
    assert v["verdict"] == "StableSheaf"
    # interior points land in both
    v = sheaf_verdict(pc2, F(-22, 15), -2)
    assert v["verdict"] == "Both"


def test_interval_index_eps_plus_table():
    pc3 = solve_generator(1, 3)  # eps = +1
    # I_0 = [-inf, -b1/a1) u [-l a1/b1, 0) = [-inf, -2) u [-3/2, 0)
    assert interval_index(pc3, F(-1))["m"] == 0
    assert interval_index(pc3, F(-5, 2))["m"] == 0
    # between -2 and -3/2 sits the negative fan around -sqrt(3)
    assert interval_index(pc3, F(-2))["m"] == -1
    assert interval_index(pc3, F(0))["m"] == 1


def test_accumulation_point_error():
    # sqrt(l) rational while sqrt(l*n) is not: lambda = +-sqrt(l) is refused
    pc = solve_generator(2, 4)
    with pytest.raises(Exception) as exc:
        interval_index(pc, F(2))
    assert "AccumulationPoint" in type(exc.value).__name__
    with pytest.raises(Exception):
        interval_index(pc, F(-2))
    # nearby rationals still locate
    assert isinstance(interval_index(pc, F(199, 100))["m"], int)
