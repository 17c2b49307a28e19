"""Oracle-first tests for the quadrature module.

Frozen reference values were computed from closed forms (Gamma/Beta
integrals) independently of the implementation; scipy's Gauss rule
generators serve as independent oracles for nodes and weights.
"""

import json
import math

import numpy as np
import pytest
from scipy import special

from siegelpw import quadrature as q
from siegelpw.errors import InvalidParameterError

try:
    from hypothesis import given, settings
    from hypothesis import strategies as st

    HAS_HYPOTHESIS = True
except ImportError:  # pragma: no cover
    HAS_HYPOTHESIS = False


class TestHalfLineRule:
    def test_unit_mass_20_nodes(self):
        rule = q.gauss_laguerre(0.0, 1.0, 20)
        assert abs(q.integrate_halfline(rule, lambda x: np.ones_like(x)) - 1.0) < 1e-13

    def test_fractional_exponent_mass(self):
        # ∫_0^∞ x^2.5 e^{-2x} dx = Γ(3.5)/2^3.5
        rule = q.gauss_laguerre(2.5, 2.0, 30)
        exact = math.gamma(3.5) / 2.0**3.5
        got = q.integrate_halfline(rule, lambda x: np.ones_like(x))
        assert abs(got - exact) / exact < 1e-12

    def test_degree_nine_with_five_nodes(self):
        # 5-node Gauss is exact through degree 9: ∫ x^9 e^{-x} dx = 9!
        rule = q.gauss_laguerre(0.0, 1.0, 5)
        got = q.integrate_halfline(rule, lambda x: x**9)
        assert abs(got - math.factorial(9)) / math.factorial(9) < 1e-10

    def test_scale_two_mass(self):
        rule = q.gauss_laguerre(0.0, 2.0, 12)
        assert abs(q.integrate_halfline(rule, lambda x: np.ones_like(x)) - 0.5) < 1e-13

    def test_spectral_weight_shape(self):
        # Weight x^{n-ν-1} e^{-2hx} with n=1, ν=-0.5, h=0.7 has total mass
        # Γ(n-ν)/(2h)^{n-ν}.
        n, nu, h = 1, -0.5, 0.7
        rule = q.gauss_laguerre(n - nu - 1.0, 2.0 * h, 24)
        exact = math.gamma(n - nu) / (2.0 * h) ** (n - nu)
        got = q.integrate_halfline(rule, lambda x: np.ones_like(x))
        assert abs(got - exact) / exact < 1e-12

    def test_nodes_weights_match_scipy_oracle(self):
        # scipy.special.roots_genlaguerre is an independent construction.
        for a, count in [(0.0, 8), (1.75, 15), (3.0, 25)]:
            rule = q.gauss_laguerre(a, 1.0, count)
            ox, ow = special.roots_genlaguerre(count, a)
            np.testing.assert_allclose(rule.nodes, ox, rtol=1e-12, atol=1e-12)
            np.testing.assert_allclose(rule.weights, ow, rtol=1e-10, atol=1e-14)

    def test_plain_weights_integrate_bare_function(self):
        # Σ plain_w e^{-3x} = 1/3 once the rule's own density is divided out.
        # The bare integrand must share the rule's algebraic factor (here x^0)
        # for the division to leave a smooth function.
        rule = q.gauss_laguerre(0.0, 1.0, 40)
        got = float(np.sum(rule.plain_weights() * np.exp(-3.0 * rule.nodes)))
        assert abs(got - 1.0 / 3.0) < 1e-10

    def test_plain_weights_matched_fractional_exponent(self):
        # ∫ x^{0.5} e^{-3x} dx = Γ(1.5)/3^{1.5} via an exponent-matched rule.
        rule = q.gauss_laguerre(0.5, 1.0, 40)
        got = float(
            np.sum(rule.plain_weights() * rule.nodes**0.5 * np.exp(-3.0 * rule.nodes))
        )
        exact = math.gamma(1.5) / 3.0**1.5
        assert abs(got - exact) / exact < 1e-10

    @pytest.mark.parametrize(
        "bad",
        [dict(exponent=-1.0), dict(scale=0.0), dict(scale=-2.0), dict(node_count=0)],
    )
    def test_invalid_parameters_rejected(self, bad):
        kwargs = dict(exponent=0.0, scale=1.0, node_count=5)
        kwargs.update(bad)
        with pytest.raises(InvalidParameterError):
            q.gauss_laguerre(**kwargs)

    if HAS_HYPOTHESIS:

        @given(
            a=st.floats(min_value=-0.9, max_value=5.0),
            c=st.floats(min_value=0.1, max_value=8.0),
            count=st.integers(min_value=1, max_value=30),
            data=st.data(),
        )
        @settings(max_examples=60, deadline=None)
        def test_moment_invariant(self, a, c, count, data):
            # Gauss exactness: relative moment error < 1e-12 for k ≤ 2N-1.
            k = data.draw(st.integers(min_value=0, max_value=2 * count - 1))
            rule = q.gauss_laguerre(a, c, count)
            assert q.halfline_moment_error(rule, k) < 1e-12


class TestGaussianRule:
    def test_total_mass_r2(self):
        # ∫_{R^2} e^{-|x|^2/2} dx = 2π
        rule = q.gaussian_rule(1.0, 24, 2)
        got = q.integrate_gaussian(rule, lambda x, y: np.ones(np.broadcast(x, y).shape))
        assert abs(got - 2.0 * math.pi) / (2.0 * math.pi) < 1e-12

    def test_second_moment_with_scale(self):
        # ∫ x^2 e^{-x^2/(2 s^2)} dx = s^3 sqrt(2π) with s = 0.5
        rule = q.gaussian_rule(0.5, 20, 1)
        got = q.integrate_gaussian(rule, lambda x: x**2)
        exact = 0.5**3 * math.sqrt(2.0 * math.pi)
        assert abs(got - exact) / exact < 1e-12

    def test_hermite_nodes_match_scipy_oracle(self):
        nodes, weights = q.gauss_hermite_nodes(18)
        ox, ow = special.roots_hermite(18)
        np.testing.assert_allclose(nodes, ox, rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(weights, ow, rtol=1e-10, atol=1e-14)

    def test_entire_integrand(self):
        # ∫ e^{ix} e^{-x^2/2} dx = sqrt(2π) e^{-1/2}
        rule = q.gaussian_rule(1.0, 40, 1)
        got = q.integrate_gaussian(rule, lambda x: np.exp(1j * x))
        exact = math.sqrt(2.0 * math.pi) * math.exp(-0.5)
        assert abs(got - exact) < 1e-12


class TestBoxRule:
    def test_tan_axis_lorentzian(self):
        axis = q.tan_axis(scale=1.0, panels=6, order=20)
        rule = q.BoxRule(axes=(axis,))
        got = q.integrate_box(rule, lambda x: 1.0 / (1.0 + x**2))
        assert abs(got - math.pi) < 1e-12

    def test_tan_half_axis_lorentzian(self):
        axis = q.tan_half_axis(scale=1.0, panels=6, order=20)
        rule = q.BoxRule(axes=(axis,))
        got = q.integrate_box(rule, lambda x: 1.0 / (1.0 + x**2))
        assert abs(got - math.pi / 2.0) < 1e-12

    def test_power_tail_axis_beta_integral(self):
        # ∫_0^∞ x^0.5 (1+x)^{-4} dx = B(1.5, 2.5)
        axis = q.power_tail_axis(beta=0.5, split=1.0, panels=8, order=20)
        rule = q.BoxRule(axes=(axis,))
        got = q.integrate_box(rule, lambda x: (1.0 + x) ** -4.0)
        exact = special.beta(1.5, 2.5)
        assert abs(got - exact) / exact < 1e-10

    def test_jacobi_nodes_match_scipy_oracle(self):
        # Internal Gauss-Jacobi (weight u^beta on [0,1]) vs scipy's rule on
        # [-1,1] with weight (1-x)^0 (1+x)^beta, mapped.
        from siegelpw.quadrature import _gauss_jacobi_unit

        for beta, count in [(0.0, 9), (0.5, 14), (2.25, 20)]:
            u, w = _gauss_jacobi_unit(beta, count)
            ox, ow = special.roots_jacobi(count, 0.0, beta)
            np.testing.assert_allclose(u, (1.0 + ox) / 2.0, rtol=1e-12, atol=1e-13)
            np.testing.assert_allclose(w, ow * 2.0 ** (-beta - 1.0), rtol=1e-10)

    def test_power_tail_axis_gamma_integral(self):
        # ∫_0^∞ x^{1.25} e^{-x} dx = Γ(2.25)
        axis = q.power_tail_axis(beta=1.25, split=2.0, panels=10, order=24)
        rule = q.BoxRule(axes=(axis,))
        got = q.integrate_box(rule, lambda x: np.exp(-x))
        assert abs(got - math.gamma(2.25)) / math.gamma(2.25) < 1e-9

    def test_angle_axis_bessel(self):
        # (2π)^{-1} ∫_0^{2π} e^{cos θ} dθ = I_0(1); trapezoid is spectral here.
        axis = q.angle_axis(count=24)
        rule = q.BoxRule(axes=(axis,))
        got = q.integrate_box(rule, lambda t: np.exp(np.cos(t))) / (2.0 * math.pi)
        assert abs(got - special.i0(1.0)) < 1e-13

    def test_two_dimensional_gaussian(self):
        rule = q.BoxRule(axes=(q.tan_axis(1.0, 8, 20), q.tan_axis(1.0, 8, 20)))
        got = q.integrate_box(rule, lambda x, y: np.exp(-(x**2) - y**2))
        assert abs(got - math.pi) / math.pi < 1e-6

    def test_polar_disc_area(self):
        # ∫_0^1 ∫_0^{2π} r dθ dr = π via legendre × angle axes.
        r_axis = q.legendre_axis(0.0, 1.0, 2, 12)
        rule = q.BoxRule(axes=(r_axis, q.angle_axis(8)))
        got = q.integrate_box(rule, lambda r, t: r * np.ones_like(t))
        assert abs(got - math.pi) < 1e-12


class TestMonteCarlo:
    def test_gaussian_integral_within_three_sigma(self):
        # ∫_{R^2} e^{-|x|^2/2} dx = 2π, importance-sampled by a wider normal.
        est, err = q.monte_carlo(
            q.gaussian_sampler(2, scale=1.5),
            lambda x, y: np.exp(-(x**2 + y**2) / 2.0),
            40_000,
            seed=20260816,
        )
        assert abs(est - 2.0 * math.pi) < 3.0 * err
        assert err < 0.05

    def test_reproducible_by_seed(self):
        sampler = q.cauchy_sampler(1, scale=1.0)
        f = lambda x: 1.0 / (1.0 + x**4)
        a1 = q.monte_carlo(sampler, f, 5_000, seed=7)
        a2 = q.monte_carlo(sampler, f, 5_000, seed=7)
        b = q.monte_carlo(sampler, f, 5_000, seed=8)
        assert a1 == a2
        assert a1 != b

    def test_box_sampler_volume(self):
        est, err = q.monte_carlo(
            q.box_sampler([(0.0, 2.0), (-1.0, 1.0)]),
            lambda x, y: np.ones_like(x),
            1_000,
            seed=1,
        )
        assert abs(est - 4.0) < 1e-12 and err < 1e-12

    def test_half_cauchy_positive_coordinates(self):
        sampler = q.half_cauchy_sampler(1, scale=2.0)
        rng = np.random.Generator(np.random.Philox(key=3))
        coords, dens = sampler(rng, 1000)
        assert np.all(coords[0] > 0) and np.all(dens > 0)


class TestJsonRoundTrip:
    def test_halfline_roundtrip(self):
        rule = q.gauss_laguerre(1.5, 2.0, 14)
        doc = q.rule_to_json(rule, include_nodes=True)
        assert doc["kind"] == "halfline" and doc["mapping"] == "gauss_laguerre"
        back = q.rule_from_json(json.loads(json.dumps(doc)))
        np.testing.assert_allclose(back.nodes, rule.nodes)
        np.testing.assert_allclose(back.weights, rule.weights)

    def test_box_roundtrip(self):
        rule = q.BoxRule(
            axes=(
                q.tan_axis(2.0, 3, 10),
                q.power_tail_axis(0.5, 1.0, 4, 8),
                q.angle_axis(12),
            )
        )
        doc = q.rule_to_json(rule)
        back = q.rule_from_json(json.loads(json.dumps(doc)))
        assert [ax.mapping for ax in back.axes] == ["tan", "power_tail", "angle"]
        for ax_a, ax_b in zip(rule.axes, back.axes):
            np.testing.assert_allclose(ax_a.nodes, ax_b.nodes)
            np.testing.assert_allclose(ax_a.weights, ax_b.weights)

    def test_gaussian_roundtrip(self):
        rule = q.gaussian_rule(0.7, 9, 3)
        back = q.rule_from_json(q.rule_to_json(rule))
        np.testing.assert_allclose(back.nodes, rule.nodes)
        assert back.dimension == 3

    def test_unknown_kind_rejected(self):
        with pytest.raises(InvalidParameterError):
            q.rule_from_json({"kind": "simpson"})


def test_default_tolerances():
    assert q.DEFAULT_TOLERANCES.one_dimensional == 1e-10
    assert q.DEFAULT_TOLERANCES.tensor == 1e-6
