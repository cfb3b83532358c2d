import random

import pytest

from cobweyl.schubert import (
    DivisionError,
    char_hom_schubert,
    degree_monomials,
    demazure_word,
    divided_difference,
    exact_div_linear,
    sym_ring,
    torsion_index,
    weyl_substitute,
)
from cobweyl.weyl import preset, weyl_group


def rand_poly(ring, rng, degree, nterms=4):
    rank = len(ring.gens)
    p = ring.zero()
    for _ in range(nterms):
        d = rng.randrange(0, degree + 1)
        exps = [0] * rank
        for _ in range(d):
            exps[rng.randrange(rank)] += 1
        p = p + ring.monomial(tuple(exps), rng.randrange(-4, 5))
    return p


def all_reduced_words(W, e):
    if e.length == 0:
        return [()]
    out = []
    for i in range(1, W.datum.nsimple + 1):
        prev = W.mul(W.simple(i), e)
        if prev.length < e.length:
            out.extend((i,) + u for u in all_reduced_words(W, prev))
    return out


class TestDividedDifference:
    def test_sl2_rank_one_identity(self):
        rd = preset("SL2")
        R = sym_ring(1)
        assert divided_difference(rd, 1, R.gen("l1")) == R.one()

    def test_kills_constants(self):
        for name in ("SL2", "SL3", "G2"):
            rd = preset(name)
            R = sym_ring(rd.rank)
            assert divided_difference(rd, 1, R.one()).is_zero()

    def test_sl3_square_hand_oracle(self):
        # (l1^2 - (l2-l1)^2) / (2 l1 - l2) = l2 by hand polynomial division
        rd = preset("SL3")
        R = sym_ring(2)
        assert divided_difference(rd, 1, R.gen("l1") ** 2) == R.gen("l2")

    def test_exact_division_error_on_nondivisible(self):
        R = sym_ring(2)
        with pytest.raises(DivisionError):
            exact_div_linear(R.gen("l1") + 1, R.gen("l2"))

    @pytest.mark.parametrize("name", ["SL2", "SL3", "Sp4", "G2", "GL3"])
    def test_squares_to_zero(self, name):
        rd = preset(name)
        R = sym_ring(rd.rank)
        rng = random.Random(hash(name) & 0xFFFF)
        for i in range(1, rd.nsimple + 1):
            for _ in range(5):
                f = rand_poly(R, rng, 5)
                assert demazure_word(rd, (i, i), f).is_zero()

    @pytest.mark.parametrize("name", ["SL3", "Sp4", "G2"])
    def test_leibniz_rule(self, name):
        rd = preset(name)
        R = sym_ring(rd.rank)
        W = weyl_group(rd)
        rng = random.Random(len(name))
        for i in range(1, rd.nsimple + 1):
            for _ in range(5):
                f = rand_poly(R, rng, 3)
                g = rand_poly(R, rng, 3)
                lhs = divided_difference(rd, i, f * g)
                rhs = divided_difference(rd, i, f) * g + weyl_substitute(
                    rd, W.simple(i), f
                ) * divided_difference(rd, i, g)
                assert lhs == rhs


class TestDemazureWords:
    def test_empty_word_is_identity(self):
        rd = preset("SL3")
        R = sym_ring(2)
        f = R.gen("l1") ** 2 * R.gen("l2")
        assert demazure_word(rd, (), f) == f

    def test_braid_relation_on_sl3(self):
        rd = preset("SL3")
        R = sym_ring(2)
        f = R.gen("l1") ** 2 * R.gen("l2")
        assert demazure_word(rd, (1, 2, 1), f) == demazure_word(rd, (2, 1, 2), f)

    @pytest.mark.parametrize("name", ["SL3", "Sp4", "G2"])
    def test_reduced_word_independence(self, name):
        rd = preset(name)
        W = weyl_group(rd)
        R = sym_ring(rd.rank)
        rng = random.Random(17)
        for e in W:
            words = all_reduced_words(W, e)
            if len(words) < 2:
                continue
            f = rand_poly(R, rng, e.length + 2)
            ref = demazure_word(rd, words[0], f)
            for word in words[1:]:
                assert demazure_word(rd, word, f) == ref

    def test_index_out_of_range(self):
        rd = preset("SL2")
        with pytest.raises(IndexError):
            demazure_word(rd, (3,), sym_ring(1).gen("l1"))


class TestCharacteristicMap:
    def test_sl2_weight_hits_cell(self):
        rd = preset("SL2")
        vec = char_hom_schubert(rd, sym_ring(1).gen("l1"))
        assert vec.entries == {(1,): 1}

    def test_pgl2_root_has_coefficient_two(self):
        rd = preset("PGL2")
        vec = char_hom_schubert(rd, sym_ring(1).gen("l1"))
        assert vec.entries == {(1,): 2}

    def test_unit_hits_identity_cell(self):
        for name in ("SL2", "SL3", "Sp4"):
            rd = preset(name)
            vec = char_hom_schubert(rd, sym_ring(rd.rank).one())
            assert vec.entries == {(): 1}

    def test_above_top_degree_is_empty(self):
        rd = preset("SL2")
        vec = char_hom_schubert(rd, sym_ring(1).gen("l1") ** 2)
        assert vec.entries == {}


class TestTorsionIndex:
    # values frozen from the independent pre-build oracle (sympy script):
    # SL2=1, SL3=1, GL2=1, GL3=1, Sp4=1, PGL2=2, G2=2
    @pytest.mark.parametrize(
        "name,expected",
        [
            ("SL2", 1),
            ("SL3", 1),
            ("GL2", 1),
            ("GL3", 1),
            ("Sp4", 1),
            ("PGL2", 2),
            ("G2", 2),
            ("Torus(1)", 1),
            ("Torus(3)", 1),
        ],
    )
    def test_preset_values(self, name, expected):
        assert torsion_index(preset(name)).tau == expected

    def test_g2_per_degree_profile(self):
        # frozen from the pre-build oracle: exponents 1,1,1,2,2,2,2 in degrees 0..6
        report = torsion_index(preset("G2"))
        assert [d.exponent for d in report.per_degree] == [1, 1, 1, 2, 2, 2, 2]

    def test_component_count_multiplier(self):
        report = torsion_index(preset("PGL2"), component_count=3)
        assert report.tau == 6
        assert report.connected_tau == 2

    def test_component_count_validated(self):
        with pytest.raises(ValueError):
            torsion_index(preset("SL2"), component_count=0)

    def test_degree_monomials_deterministic(self):
        mons = degree_monomials(2, 3)
        assert mons == [(0, 3), (1, 2), (2, 1), (3, 0)]
