import random

import pytest

from cobweyl.fgl import (
    exp_series,
    fgl_additive,
    fgl_multiplicative,
    fgl_universal,
    lazard_basis,
    partition_numbers,
)
from cobweyl.series import Generator, PolyRing, substitute_series


def mring_of(law):
    return law.coefficient_ring()


class TestLawConstruction:
    def test_additive_is_exact(self):
        F = fgl_additive(5)
        R = F.ring
        assert F.F == R.gen("x") + R.gen("y")

    def test_multiplicative_is_exact(self):
        F = fgl_multiplicative(5)
        R = F.ring
        assert F.F == R.gen("x") + R.gen("y") + R.gen("beta") * R.gen("x") * R.gen("y")

    @pytest.mark.parametrize("make", [fgl_additive, fgl_multiplicative, fgl_universal])
    def test_unit_axiom(self, make):
        F = make(4)
        R = F.ring
        zero = R.zero()
        assert F.plus(R.gen("x"), zero) == R.gen("x")
        assert F.plus(zero, R.gen("y")) == R.gen("y")

    def test_exp_series_hand_oracle(self):
        # e(u) = u - m1 u^2 + (2 m1^2 - m2) u^3 + ...
        e = exp_series(2)
        R = e.ring
        x, m1, m2 = R.gen("x"), R.gen("m1"), R.gen("m2")
        assert e == x - m1 * x**2 + (2 * m1**2 - m2) * x**3

    def test_universal_degree_two_coefficient(self):
        F = fgl_universal(3)
        a11 = F.coefficient(1, 1)
        m = mring_of(F)
        assert a11 == -2 * m.gen("m1")

    def test_universal_xy_symmetric_coefficients(self):
        F = fgl_universal(4)
        for i in range(1, 3):
            for j in range(1, 3):
                assert F.coefficient(i, j) == F.coefficient(j, i)

    def test_setting_m_to_zero_recovers_additive(self):
        F = fgl_universal(4)
        xi, yi = F.ring.index("x"), F.ring.index("y")
        additive_part = {
            e: c
            for e, c in F.F.terms.items()
            if all(p == 0 for k, p in enumerate(e) if k not in (xi, yi))
        }
        R = F.ring
        assert R.poly(additive_part) == R.gen("x") + R.gen("y")

    @pytest.mark.parametrize("make", [fgl_additive, fgl_multiplicative, fgl_universal])
    def test_commutativity_and_associativity(self, make):
        F = make(4)
        R = F.ring
        x, y = R.gen("x"), R.gen("y")
        assert F.F == substitute_series(F.F, {"x": y, "y": x}, R)
        Rz = PolyRing(
            [
                Generator("x", 1, series=True),
                Generator("y", 1, series=True),
                Generator("z", 1, series=True),
            ]
            + list(F.coeff_gens),
            trunc=R.trunc,
        )
        x3, y3, z3 = Rz.gen("x"), Rz.gen("y"), Rz.gen("z")
        lhs = F.plus(F.plus(x3, y3), z3)
        rhs = F.plus(x3, F.plus(y3, z3))
        assert lhs == rhs


class TestFormalSums:
    def test_additive_n_series(self):
        F = fgl_additive(5)
        R = F.univariate_ring(trunc=5)
        t = R.gen("x")
        for n in range(-4, 5):
            assert F.n_series(n, t) == n * t

    def test_multiplicative_two_series(self):
        F = fgl_multiplicative(5)
        R = F.univariate_ring(trunc=5)
        t, b = R.gen("x"), R.gen("beta")
        assert F.n_series(2, t) == 2 * t + b * t**2

    def test_multiplicative_inverse_geometric_oracle(self):
        # [-1]_F t = ((1+bt)^{-1} - 1)/b = sum_{k>=1} (-1)^k b^(k-1) t^k
        N = 6
        F = fgl_multiplicative(N)
        R = F.univariate_ring(trunc=N)
        t, b = R.gen("x"), R.gen("beta")
        expected = R.zero()
        for k in range(1, N + 1):
            expected = expected + (-1) ** k * b ** (k - 1) * t**k
        assert F.inverse(t) == expected

    @pytest.mark.parametrize("make", [fgl_additive, fgl_multiplicative, fgl_universal])
    def test_inverse_axiom_randomized(self, make):
        rng = random.Random(21)
        F = make(5)
        R = F.univariate_ring(trunc=5)
        t = R.gen("x")
        for _ in range(5):
            a = t
            for k in range(2, 5):
                a = a + rng.randrange(-2, 3) * t**k
            assert F.plus(a, F.inverse(a)).is_zero()

    def test_n_series_composition_laws(self):
        F = fgl_universal(4)
        R = F.univariate_ring(trunc=4)
        t = R.gen("x")
        for n in range(-4, 5):
            for k in range(-4, 5):
                lhs = F.n_series(n, F.n_series(k, t))
                assert lhs == F.n_series(n * k, t)
                both = F.plus(F.n_series(n, t), F.n_series(k, t))
                assert both == F.n_series(n + k, t)

    @pytest.mark.parametrize("make", [fgl_additive, fgl_multiplicative, fgl_universal])
    def test_law_axioms_on_random_series(self, make):
        rng = random.Random(77)
        F = make(4)
        R = PolyRing(
            [
                Generator("u", 1, series=True),
                Generator("v", 1, series=True),
                Generator("w", 1, series=True),
            ]
            + list(F.coeff_gens),
            trunc=4,
        )

        def rand_series():
            p = R.zero()
            for name in ("u", "v", "w"):
                for k in range(1, 4):
                    p = p + rng.randrange(-2, 3) * R.gen(name) ** k
            return p

        for _ in range(4):
            a, b, c = rand_series(), rand_series(), rand_series()
            assert F.plus(a, b) == F.plus(b, a)
            assert F.plus(F.plus(a, b), c) == F.plus(a, F.plus(b, c))


class TestLazardBasis:
    def test_ranks_are_partition_numbers(self):
        lb = lazard_basis(5)
        assert lb.ranks() == partition_numbers(5) == [1, 1, 2, 3, 5, 7]

    def test_degree_one_basis(self):
        lb = lazard_basis(3)
        assert lb.basis_matrix(1).tolists() == [[2]]
        assert lb.basis_polys(1)[0] == 2 * lb.mring.gen("m1")

    def test_pn_classes(self):
        lb = lazard_basis(5)
        assert lb.pn(0) == 1
        assert lb.pn(1).poly == 2 * lb.mring.gen("m1")
        for n in range(6):
            assert lb.pn(n).is_integral()

    def test_p1_is_minus_a11(self):
        lb = lazard_basis(3)
        a11 = lb.law.coefficient(1, 1)
        assert lb.pn(1).poly == -a11

    def test_pn_dies_in_additive_specialization(self):
        # killing the augmentation ideal sends [P^n] to 0 for n >= 1
        lb = lazard_basis(4)
        for n in range(1, 5):
            assert lb.pn(n).poly.homogeneous_part(0).is_zero()

    def test_lattice_multiplicatively_closed(self):
        lb = lazard_basis(5)
        for i in range(0, 4):
            for j in range(0, 4):
                if i + j > 5:
                    continue
                for p in lb.basis_polys(i):
                    for q in lb.basis_polys(j):
                        assert lb.is_integral(p * q)

    def test_indecomposable_pivot_matches_binomial_gcd(self):
        # classical oracle: the projection of the degree-n lattice onto the
        # m_n coordinate is generated by gcd_{0<i<n+1} C(n+1, i), which is p
        # when n+1 is a power of the prime p and 1 otherwise
        from math import comb, gcd

        lb = lazard_basis(6)
        for n in range(1, 7):
            mono = lb.monomials(n)
            assert mono[0] == tuple(
                1 if g.name == f"m{n}" else 0 for g in lb.mring.gens
            )
            bgcd = 0
            for i in range(1, n + 1):
                bgcd = gcd(bgcd, comb(n + 1, i))
            assert lb.basis_matrix(n).data[0][0] == bgcd

    def test_membership_rejects_non_lattice(self):
        lb = lazard_basis(3)
        m1 = lb.mring.gen("m1")
        assert not lb.is_integral(m1)  # [P^1]/2 is not integral
        assert lb.is_integral(2 * m1)

    def test_decompose_roundtrip(self):
        lb = lazard_basis(4)
        rng = random.Random(5)
        for d in range(5):
            polys = lb.basis_polys(d)
            combo = lb.mring.zero()
            coeffs = [rng.randrange(-3, 4) for _ in polys]
            for c, p in zip(coeffs, polys):
                combo = combo + c * p
            if combo.is_zero():
                continue
            assert lb.integral_coords(combo) == {d: coeffs}
