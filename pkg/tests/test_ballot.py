from itertools import product

import pytest

from coidealbasis import hecke
from coidealbasis.ballot import (
    StripConfig,
    enumerate_configs,
    q_polynomial,
    render_config,
    rule1_configs,
    rule2_configs,
    rule2_tilings,
    rule2_weight_sum,
    skew_region,
    verify_inversion,
)
from coidealbasis.laurent import LaurentPoly, ONE, ZERO
from coidealbasis.paths import Shape, eta, is_below, parse_path


def t_pows(*exps):
    out = LaurentPoly()
    for e in exps:
        out = out + LaurentPoly.t_power(e)
    return out


class TestRegions:
    def test_region_size_is_area_difference(self):
        from coidealbasis.paths import area

        for a in product((1, -1), repeat=5):
            for b in product((1, -1), repeat=5):
                if is_below(a, b):
                    assert len(skew_region(a, b)) == area(a) - area(b)

    def test_incomparable_rejected(self):
        with pytest.raises(ValueError):
            skew_region(parse_path("+-"), parse_path("-+"))


class TestLooseRule:
    def test_reference_example(self):
        a, b = parse_path("--++-+"), parse_path("++++++")
        configs = rule1_configs(a, b)
        assert len(configs) == 5
        assert q_polynomial(a, b, "I", "-") == t_pows(-13, -11, -9, -9, -5)

    def test_equal_paths(self):
        a = parse_path("-+-+")
        assert q_polynomial(a, a, "I", "-") == ONE
        assert enumerate_configs(a, a, "I", "-") == [StripConfig(strips=())]

    def test_oracle_agreement(self):
        # loose stacking at eps=+ reproduces the plus parabolic KL polynomials
        for n in range(1, 6):
            mod = hecke.module(n, "+")
            for a in product((1, -1), repeat=n):
                for b in product((1, -1), repeat=n):
                    if is_below(b, a):
                        assert q_polynomial(a, b, "I", "+") == mod.kl_poly(a, b)


class TestTightRule:
    def test_reference_example(self):
        shape = Shape((2, 2, 2, 2))
        a, b = parse_path("-+-+-+-+"), parse_path("++++++--")
        configs = rule2_configs(a, b, shape)
        assert len(configs) == 2
        assert sorted(len(c.p_units) for c in configs) == [1, 3]
        assert q_polynomial(a, b, "II", "-", shape) == t_pows(-3, -5)

    def test_tiling_unique_per_projection_choice(self):
        shape = Shape((2, 2, 2, 2))
        a, b = parse_path("-+-+-+-+"), parse_path("++++++--")
        # exercised internally by rule2_configs; repeated here explicitly
        for g in [a]:
            assert len(rule2_tilings(g, b)) <= 1

    def test_oracle_agreement(self):
        # tiling weight equals the minus parabolic KL polynomial with its
        # argument negated, for every comparable pair
        for n in range(1, 6):
            mod = hecke.module(n, "-")
            for g in product((1, -1), repeat=n):
                for b in product((1, -1), repeat=n):
                    if is_below(g, b):
                        assert rule2_weight_sum(g, b) == mod.kl_poly(g, b).subs_neg()

    def test_no_projection_domain_for_unit_blocks(self):
        shape = Shape((1, 1, 1))
        a = eta((-1, -1, -1), shape)
        b = eta((1, 1, 1), shape)
        for c in rule2_configs(a, b, shape):
            assert not c.p_units

    def test_no_projection_domain_when_paths_agree(self):
        from coidealbasis.paths import min_path, paths_between, zeta

        shape = Shape((2, 2))
        k = (2, 2)
        a = eta(k, shape)
        assert zeta(k, shape) == a  # extreme index: both encodings agree
        b = eta((0, 2), shape)
        for c in rule2_configs(a, b, shape):
            assert not c.p_units

    def test_shape_required(self):
        with pytest.raises(ValueError):
            q_polynomial(parse_path("-+"), parse_path("+-"), "II", "-")


class TestTranspose:
    def test_transpose_symmetry(self):
        for n in range(1, 6):
            for a in product((1, -1), repeat=n):
                for b in product((1, -1), repeat=n):
                    if is_below(a, b):
                        assert q_polynomial(b, a, "I", "+") == q_polynomial(a, b, "I", "-")


class TestInversion:
    @pytest.mark.parametrize("shape", [(1, 1, 1, 1), (2, 2), (3, 1), (2, 1, 1), (2, 2, 2)])
    def test_inversion(self, shape):
        rep = verify_inversion(Shape(shape))
        assert rep.ok, rep.failures

    def test_diagonal_term(self):
        shape = Shape((2, 2))
        a = eta((0, 0), shape)
        assert q_polynomial(a, a, "I", "-", shape) * q_polynomial(a, a, "II", "-", shape) == ONE


class TestRendering:
    def test_render_covers_all_boxes(self):
        a, b = parse_path("--++-+"), parse_path("++++++")
        config = rule1_configs(a, b)[0]
        text = render_config(config, 6)
        assert sum(ch not in ". \n" for ch in text) == len(skew_region(a, b))

    def test_json(self):
        a, b = parse_path("--++-+"), parse_path("++++++")
        config = rule1_configs(a, b)[0]
        data = config.to_json()
        assert "strips" in data and "p_units" in data
