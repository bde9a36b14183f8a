from fractions import Fraction

import pytest

from qtoric.monomials import Monomial
from qtoric.recursion import (
    all_orbits,
    cotangent_euler,
    edge_euler_class,
    edge_euler_class_from_forms,
    orbit_data,
    root_context,
    verify_residue_recursion,
)
from qtoric.scalars import sample_context
from qtoric.series import truncation_box
from qtoric.toric import ToricData, degree_pairing, enumerate_fixed_points, fixed_point


def test_orbit_p1(p1):
    alpha = fixed_point(p1, (0,))
    orbit = orbit_data(p1, alpha, 1)
    assert orbit is not None
    assert orbit.beta.J == (1,)
    assert orbit.j0_prime == 0
    assert orbit.d_ab == (1,)
    # the cotangent character at the alpha end is U_2(alpha) = L1/L2
    assert orbit.lambda_char == Monomial((1, -1))


def test_orbit_f1_example(f1):
    alpha = fixed_point(f1, (0, 2))
    orbit = orbit_data(f1, alpha, 1)
    assert orbit is not None
    assert orbit.beta.J == (1, 2)
    assert orbit.j0_prime == 0
    assert degree_pairing(f1, orbit.d_ab) == (1, 1, 0, -1)
    assert degree_pairing(f1, orbit.d_ab)[orbit.j0_prime] == 1


def test_orbit_absent_direction():
    # A column with zero image: the swapped subset has a singular minor, so
    # no orbit leaves in that direction.
    data = ToricData(m=((1, 0, 1),), omega=(Fraction(1),))
    alpha = fixed_point(data, (0,))
    assert orbit_data(data, alpha, 1) is None
    assert orbit_data(data, alpha, 2) is not None


def test_orbit_edge_counts(all_models):
    expected = {"p1": 2, "p2": 6, "f1": 8, "p1xp1": 8}
    for data in all_models:
        assert len(all_orbits(data)) == expected[data.name]


def test_orbit_character_inverse_pairing(all_models):
    for data in all_models:
        for orbit in all_orbits(data):
            reverse = orbit_data(data, orbit.beta, orbit.j0_prime)
            assert reverse is not None
            assert reverse.beta.J == orbit.alpha.J
            assert reverse.j0_prime == orbit.j0
            assert (orbit.lambda_char * reverse.lambda_char).is_one


def test_orbit_monomial_power_rule(all_models):
    for data in all_models:
        for orbit in all_orbits(data):
            pairing = degree_pairing(data, orbit.d_ab)
            for j in range(data.N):
                ratio = orbit.alpha.u_monomials[j] / orbit.beta.u_monomials[j]
                assert ratio == orbit.lambda_char ** pairing[j]


def test_cotangent_euler_values(p1, f1):
    ctx = sample_context(p1.N, 3)
    alpha = fixed_point(p1, (0,))
    u = ctx.Lambda[0] / ctx.Lambda[1]
    assert cotangent_euler(p1, alpha, ctx) == 1 - u

    ctx4 = sample_context(f1.N, 3)
    a13 = fixed_point(f1, (0, 2))
    L = ctx4.Lambda
    expected = (1 - L[0] / L[1]) * (1 - L[2] / (L[0] * L[3]))
    assert cotangent_euler(f1, a13, ctx4) == expected


def test_cotangent_euler_point_is_one():
    # N = K: no off-point columns, empty product.
    data = ToricData(m=((1, 0), (0, 1)), omega=(Fraction(1), Fraction(1)))
    ctx = sample_context(2, 5)
    fp = enumerate_fixed_points(data)[0]
    assert cotangent_euler(data, fp, ctx) == 1


def test_root_context_realizes_power(p1):
    alpha = fixed_point(p1, (0,))
    orbit = orbit_data(p1, alpha, 1)
    for m in (1, 2, 3):
        ctx, mu = root_context(p1, orbit, m, seed=7)
        assert orbit.lambda_char.evaluate(ctx.Lambda) == mu ** m
    again, mu2 = root_context(p1, orbit, 2, seed=7)
    ctx2, mu3 = root_context(p1, orbit, 2, seed=7)
    assert again == ctx2 and mu2 == mu3


def test_euler_class_m1_p1_hand_value(p1):
    # C = (1 - lam)(1 - 1/lam) for the line with m = 1.
    alpha = fixed_point(p1, (0,))
    orbit = orbit_data(p1, alpha, 1)
    ctx, mu = root_context(p1, orbit, 1, seed=11)
    lam = orbit.lambda_char.evaluate(ctx.Lambda)
    c = edge_euler_class(p1, orbit, 1, ctx, mu)
    assert c == (1 - lam) * (1 - 1 / lam)


def test_euler_class_two_routes_agree(p1, f1):
    alpha = fixed_point(p1, (0,))
    orbit = orbit_data(p1, alpha, 1)
    for m in (1, 2, 3):
        ctx, mu = root_context(p1, orbit, m, seed=13)
        assert edge_euler_class(p1, orbit, m, ctx, mu) == \
            edge_euler_class_from_forms(p1, orbit, m, ctx, mu)
    for orbit in all_orbits(f1):
        for m in (1, 2):
            ctx, mu = root_context(f1, orbit, m, seed=17)
            assert edge_euler_class(f1, orbit, m, ctx, mu) == \
                edge_euler_class_from_forms(f1, orbit, m, ctx, mu)


def test_recursion_p1(p1):
    box = truncation_box(p1, 4)
    alpha = fixed_point(p1, (0,))
    for m in (1, 2):
        report = verify_residue_recursion(p1, alpha, 1, m, box, seed=19)
        assert report["ok"], report
        assert report["euler_oracle_agrees"]
        assert all(row["paths_agree"] for row in report["degrees"])


def test_recursion_f1_one_edge(f1):
    box = truncation_box(f1, 3)
    alpha = fixed_point(f1, (0, 2))
    report = verify_residue_recursion(f1, alpha, 1, 1, box, seed=23)
    assert report["ok"], report
    assert report["beta"] == [2, 3]


def test_recursion_support_consistency(p1):
    # Degrees below the shift must give zero on both sides: the report rows
    # for d < m carry lhs == rhs == 0.
    box = truncation_box(p1, 4)
    alpha = fixed_point(p1, (0,))
    report = verify_residue_recursion(p1, alpha, 1, 2, box, seed=29)
    for row in report["degrees"]:
        if row["degree"][0] < 2:
            assert row["lhs"] == "0" and row["rhs"] == "0"


def test_recursion_rejects_on_point_direction(p1):
    alpha = fixed_point(p1, (0,))
    with pytest.raises(ValueError):
        orbit_data(p1, alpha, 0)
