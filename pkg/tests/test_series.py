import random
from fractions import Fraction

import pytest

from cobweyl.series import (
    CompositionError,
    ContextError,
    Generator,
    PolyRing,
    ReversionError,
    series_reverse,
    substitute_series,
)


def ring_xy(trunc=None):
    return PolyRing([Generator("x", 1, series=True), Generator("y", 1, series=True)], trunc)


def ring_x(trunc=None):
    return PolyRing([Generator("x", 1, series=True)], trunc)


# Independent oracle: Lagrange inversion for the compositional inverse of
# f = x + sum_{j>=2} f_j x^j, with plain rational one-variable arithmetic.
def lagrange_inverse(f_coeffs, order):
    """f_coeffs maps j -> coefficient of x^j (f_1 must be 1)."""
    assert f_coeffs.get(1, 0) == 1

    def mul(a, b):
        out = [0] * (order + 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y and i + j <= order:
                        out[i + j] += x * y
        return out

    # g_n = (1/n) [x^(n-1)] (x / f(x))^n ; x/f = 1 / (1 + sum f_j x^(j-1))
    h = [0] * (order + 1)  # h = sum_{j>=2} f_j x^(j-1)
    for j, c in f_coeffs.items():
        if j >= 2 and j - 1 <= order:
            h[j - 1] = Fraction(c)
    inv = [Fraction(0)] * (order + 1)  # 1/(1+h)
    inv[0] = Fraction(1)
    for n in range(1, order + 1):
        inv[n] = -sum(h[k] * inv[n - k] for k in range(1, n + 1))
    g = {1: Fraction(1)}
    power = [Fraction(1)] + [Fraction(0)] * order  # inv^n accumulates
    for n in range(1, order + 1):
        power = mul(power, inv) if n > 1 else inv[:]
        if n >= 2:
            g[n] = Fraction(power[n - 1], n)
    return g


class TestPolyBasics:
    def test_product_difference_of_squares(self):
        R = ring_xy()
        x, y = R.gen("x"), R.gen("y")
        assert (x + y) * (x - y) == x * x - y * y

    def test_multiplicative_identity(self):
        R = ring_xy()
        p = 3 * R.gen("x") + R.gen("y") ** 2 - 7
        assert p * R.one() == p

    def test_truncation_drops_high_order(self):
        R = ring_x(trunc=3)
        x = R.gen("x")
        p = x + x**2
        assert p * p == x**2 + 2 * x**3

    def test_mismatched_rings_raise(self):
        p = ring_x().gen("x")
        q = ring_xy().gen("x")
        with pytest.raises(ContextError):
            p * q

    def test_scalar_arithmetic_normalizes(self):
        R = ring_x()
        p = R.gen("x").scale(Fraction(4, 2))
        assert list(p.terms.values()) == [2]
        assert isinstance(list(p.terms.values())[0], int)

    def test_ring_axioms_randomized(self):
        rng = random.Random(7)
        R = ring_xy(trunc=6)

        def rand_poly():
            p = R.zero()
            for _ in range(5):
                e = (rng.randrange(0, 4), rng.randrange(0, 4))
                p = p + R.monomial(e, rng.randrange(-4, 5))
            return p

        for _ in range(25):
            a, b, c = rand_poly(), rand_poly(), rand_poly()
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c

    def test_truncation_coherence(self):
        # computing at order N then truncating to N' < N == computing at N'
        rng = random.Random(11)
        R6 = ring_xy(trunc=6)
        R4 = ring_xy(trunc=4)

        def rand_poly(R):
            p = R.zero()
            for _ in range(6):
                e = (rng.randrange(0, 3), rng.randrange(0, 3))
                p = p + R.monomial(e, rng.randrange(-3, 4))
            return p

        for _ in range(10):
            a = rand_poly(R6)
            b = rand_poly(R6)
            hi = (a * b).map_to(R4)
            lo = a.map_to(R4) * b.map_to(R4)
            assert hi == lo

    def test_homogeneous_components(self):
        R = PolyRing([Generator("m1", 1), Generator("m2", 2)])
        p = R.gen("m1") ** 2 + 3 * R.gen("m2") + R.one()
        comps = p.homogeneous_components()
        assert sorted(comps) == [0, 2]
        assert comps[2] == R.gen("m1") ** 2 + 3 * R.gen("m2")

    def test_str_is_canonical(self):
        R = ring_xy()
        p = R.gen("y") * 2 - R.gen("x") ** 2
        assert str(p) == "2*y - x^2"


class TestCompose:
    def test_square_of_sum(self):
        Rf = ring_x(trunc=6)
        Rt = ring_xy(trunc=6)
        f = Rf.gen("x") ** 2
        arg = Rt.gen("x") + Rt.gen("y")
        out = substitute_series(f, {"x": arg}, Rt)
        x, y = Rt.gen("x"), Rt.gen("y")
        assert out == x**2 + 2 * x * y + y**2

    def test_identity_substitution(self):
        R = ring_x(trunc=5)
        g = R.gen("x") + 3 * R.gen("x") ** 4
        assert substitute_series(R.gen("x"), {"x": g}, R) == g

    def test_compose_with_inverse_is_identity(self):
        # [DERIVED] the inverse of x + x^2 to order 4 is x - x^2 + 2x^3 - 5x^4
        # (Lagrange-inversion oracle below); composing recovers x.
        R = ring_x(trunc=4)
        x = R.gen("x")
        f = x + x**2
        arg = x - x**2 + 2 * x**3 - 5 * x**4
        assert substitute_series(f, {"x": arg}, R) == x

    def test_constant_term_rejected(self):
        R = ring_x(trunc=4)
        with pytest.raises(CompositionError):
            substitute_series(R.gen("x"), {"x": R.gen("x") + 1}, R)

    def test_target_cannot_exceed_source_order(self):
        R4 = ring_x(trunc=4)
        R6 = ring_x(trunc=6)
        with pytest.raises(ContextError):
            substitute_series(R4.gen("x"), {"x": R6.gen("x")}, R6)


class TestReverse:
    def test_reverse_identity(self):
        R = ring_x(trunc=5)
        assert series_reverse(R.gen("x")) == R.gen("x")

    def test_reverse_matches_lagrange_oracle(self):
        R = ring_x(trunc=4)
        x = R.gen("x")
        g = series_reverse(x + x**2)
        oracle = lagrange_inverse({1: 1, 2: 1}, 4)
        expected = sum((R.monomial((n,), c) for n, c in oracle.items()), R.zero())
        assert g == expected
        # frozen signed Catalan numbers
        assert g == x - x**2 + 2 * x**3 - 5 * x**4

    def test_reverse_with_symbolic_coefficients(self):
        R = PolyRing(
            [Generator("x", 1, series=True), Generator("m1", 1), Generator("m2", 2)],
            trunc=3,
        )
        x, m1, m2 = R.gen("x"), R.gen("m1"), R.gen("m2")
        g = series_reverse(x + m1 * x**2 + m2 * x**3)
        assert g == x - m1 * x**2 + (2 * m1**2 - m2) * x**3

    def test_reverse_roundtrip_randomized(self):
        rng = random.Random(3)
        R = ring_x(trunc=7)
        x = R.gen("x")
        for _ in range(10):
            f = x
            for k in range(2, 8):
                f = f + rng.randrange(-3, 4) * x**k
            g = series_reverse(f)
            assert series_reverse(g) == f
            assert substitute_series(g, {"x": f}, R) == x

    def test_nonunit_linear_coefficient_rejected(self):
        R = ring_x(trunc=4)
        x = R.gen("x")
        with pytest.raises(ReversionError):
            series_reverse(2 * x)
        with pytest.raises(ReversionError):
            series_reverse(x**2)
