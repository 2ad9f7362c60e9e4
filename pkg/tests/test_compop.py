"""Composition operators: compose, criterion integrals, verdicts, probes."""

import math

import numpy as np
import pytest
import scipy.integrate

from blochdisk import (BlochParams, CriterionReport, HarmonicMap,
                       InadmissibleSymbolError, LIP_CONSTANT, Mobius,
                       ParameterRangeError, Polynomial, PowerKernel,
                       PowerMajorant, QuadraticExtremal, ScaledIdentity,
                       as_harmonic, bloch_functional, bloch_to_hardy_criterion,
                       bounded_below_probe, chi_ratio, classical_params,
                       compose, doubling_limits, doubling_ratio,
                       growth_bound_check, hardy_norm, hardy_to_bloch_q,
                       hardy_to_bloch_verdict, is_admissible_symbol,
                       lambda_f, mobius, schwarz_pick_ratio)
from blochdisk import test_function as kernel_test_function
from blochdisk.compop import PROBE_RADIUS_SUP

from conftest import disk_samples, random_polynomial_pair

CLASSICAL = classical_params()
IDENTITY = ScaledIdentity(1.0)
HALF = ScaledIdentity(0.5)
CONSTANT = Polynomial((0.3,))


class TestAdmissibility:
    def test_structural_kinds(self):
        assert is_admissible_symbol(Mobius(0.5 + 0.3j))
        assert is_admissible_symbol(IDENTITY)
        assert is_admissible_symbol(HALF)
        assert is_admissible_symbol(CONSTANT)
        assert is_admissible_symbol(Polynomial((0, 1)))

    def test_rejections(self):
        assert not is_admissible_symbol(Polynomial((0.5, 1)))
        assert not is_admissible_symbol(QuadraticExtremal())
        assert not is_admissible_symbol(PowerKernel(0.9, 2.0))
        assert not is_admissible_symbol(Polynomial((1.5,)))

    def test_compose_rejects_bad_symbol(self):
        f = as_harmonic(Polynomial((0, 1)))
        with pytest.raises(InadmissibleSymbolError):
            compose(f, Polynomial((0.5, 1)))


class TestCompose:
    def test_identity_symbol_is_noop(self, rng):
        f = random_polynomial_pair(rng)
        comp = compose(f, Polynomial((0, 1)))
        for z in disk_samples(rng, 30):
            assert abs(comp.eval(z) - f.eval(z)) < 1e-12

    def test_chain_rule_stretch(self):
        f = HarmonicMap(Polynomial((0, 1)), Polynomial((0, 0.5)))
        comp = compose(f, HALF)
        for z in (0j, 0.3 + 0.1j):
            assert lambda_f(comp, z) == pytest.approx(0.75, abs=1e-14)
            assert comp.eval(z) == pytest.approx(f.eval(0.5 * z))

    def test_chain_rule_general(self, rng):
        f = random_polynomial_pair(rng, degree=7)
        phi = Mobius(0.4 - 0.2j)
        comp = compose(f, phi)
        for z in disk_samples(rng, 50, r_max=0.95):
            expected = lambda_f(f, phi.eval(z)) * abs(phi.deriv(z))
            assert abs(lambda_f(comp, z) - expected) < 1e-10

    def test_canonical_anchor_preserved(self, rng):
        f = random_polynomial_pair(rng)
        comp = compose(f, Mobius(0.3 + 0.2j))
        assert abs(complex(comp.g.eval(0j))) < 1e-12
        for z in disk_samples(rng, 20):
            assert abs(comp.eval(z) - f.eval(Mobius(0.3 + 0.2j).eval(z))) < 1e-12

    def test_functional_invariance_quadratic_extremal(self, rng):
        eta = as_harmonic(QuadraticExtremal())
        a = 0.35 - 0.55j
        comp = compose(eta, mobius(a))
        for z in disk_samples(rng, 40, r_max=0.95):
            lhs = bloch_functional(comp, CLASSICAL, z)
            rhs = bloch_functional(eta, CLASSICAL, mobius(a).eval(z))
            assert abs(lhs - rhs) < 1e-10


class TestSchwarzPick:
    def test_bounded_by_one(self, rng):
        radii = np.linspace(0, 0.999, 100)
        angles = np.linspace(0, 2 * math.pi, 100, endpoint=False)
        z = radii[:, None] * np.exp(1j * angles)[None, :]
        for phi in (Polynomial((0.1, 0.4, 0.3)), HALF, Mobius(0.6)):
            vals = schwarz_pick_ratio(phi, z)
            assert float(np.max(vals)) <= 1.0 + 1e-10

    def test_equality_for_automorphisms(self, rng):
        z = disk_samples(rng, 200, r_max=0.99)
        for phi in (Mobius(0.5), Mobius(0.2 - 0.7j), ScaledIdentity(1j), IDENTITY):
            vals = schwarz_pick_ratio(phi, z)
            assert np.all(np.abs(vals - 1.0) < 1e-10)


class TestBlochToHardyCriterion:
    def test_constant_symbol(self):
        rep = bloch_to_hardy_criterion(CONSTANT, CLASSICAL, 2.0)
        assert rep.verdict == "convergent"
        assert rep.estimate == 0.0

    def test_half_identity_matches_quad_oracle(self):
        rep = bloch_to_hardy_criterion(HALF, CLASSICAL, 2.0)
        assert rep.verdict == "convergent"
        oracle, _ = scipy.integrate.quad(
            lambda r: 0.25 * (1 - r) / (1 - r * r / 4) ** 2, 0.0, 1.0)
        assert rep.estimate == pytest.approx(oracle, rel=1e-6)

    def test_identity_diverges_with_log_slope(self):
        rep = bloch_to_hardy_criterion(IDENTITY, CLASSICAL, 2.0)
        assert rep.verdict == "divergent"
        # inner integral grows like (1/4) log(1/(1-R))
        assert rep.diagnostics["growth_fit_slope"] == pytest.approx(0.25, rel=0.1)

    def test_automorphism_diverges_like_identity(self):
        rep = bloch_to_hardy_criterion(Mobius(0.3), CLASSICAL, 2.0)
        assert rep.verdict == "divergent"
        assert rep.diagnostics["growth_fit_slope"] == pytest.approx(0.25, rel=0.1)

    def test_scaled_identity_sweep(self):
        for c in (0.0, 0.3, 0.9):
            rep = bloch_to_hardy_criterion(ScaledIdentity(c), CLASSICAL, 2.0)
            assert rep.verdict == "convergent", c
        assert bloch_to_hardy_criterion(ScaledIdentity(1.0), CLASSICAL, 2.0) \
            .verdict == "divergent"

    def test_evidence_monotone(self):
        rep = bloch_to_hardy_criterion(HALF, CLASSICAL, 2.0)
        ks = [k for k, _ in rep.evidence]
        vals = [v for _, v in rep.evidence]
        assert ks == sorted(ks)
        assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))

    def test_small_p_supported(self):
        rep = bloch_to_hardy_criterion(HALF, CLASSICAL, 0.5)
        assert rep.verdict == "convergent"

    def test_power_majorant(self):
        params = BlochParams(1.0, 0.0, PowerMajorant(0.5))
        # omega(chi)^2 = 1 - r^2: integrand (1-r)/(1-r^2) bounded, convergent
        rep = bloch_to_hardy_criterion(IDENTITY, params, 2.0)
        assert rep.verdict == "convergent"

    def test_rejects_bad_p(self):
        with pytest.raises(ParameterRangeError):
            bloch_to_hardy_criterion(HALF, CLASSICAL, 0.0)


class TestHardyToBlochQ:
    def test_constant_symbol_zero(self):
        assert hardy_to_bloch_q(CONSTANT, CLASSICAL, 2.0, 0.3) == 0.0

    def test_identity_value_near_boundary(self):
        q = hardy_to_bloch_q(IDENTITY, CLASSICAL, 2.0, 0.99)
        assert q == pytest.approx((1 - 0.99 ** 2) ** -0.5, abs=1e-12)

    def test_half_identity_origin(self):
        assert hardy_to_bloch_q(HALF, CLASSICAL, 2.0, 0j) == \
            pytest.approx(0.5, abs=1e-14)

    def test_rejects_unsupported_params(self):
        with pytest.raises(ParameterRangeError):
            hardy_to_bloch_q(HALF, CLASSICAL, 1.0, 0j)  # p must exceed 1
        with pytest.raises(ParameterRangeError):
            hardy_to_bloch_q(HALF, BlochParams(1.0, 0.5), 2.0, 0j)
        with pytest.raises(ParameterRangeError):
            hardy_to_bloch_q(HALF, BlochParams(0.5, 0.0), 2.0, 0j)
        with pytest.raises(ParameterRangeError):
            # omega(t)/t unbounded at 0
            hardy_to_bloch_q(HALF, BlochParams(1.0, 0.0, PowerMajorant(0.5)),
                             2.0, 0j)

    def test_admissible_param_corner(self):
        assert hardy_to_bloch_q(HALF, BlochParams(1.0, -1.0), 2.0, 0j) >= 0.0
        assert hardy_to_bloch_q(HALF, BlochParams(2.0, 3.0), 2.0, 0j) >= 0.0


class TestHardyToBlochVerdict:
    def test_identity_unbounded(self):
        rep = hardy_to_bloch_verdict(IDENTITY, CLASSICAL, 2.0)
        assert rep.verdict == "unbounded"
        assert rep.diagnostics["bounded"] is False

    def test_half_identity_vacuously_compact(self):
        rep = hardy_to_bloch_verdict(HALF, CLASSICAL, 2.0)
        assert rep.verdict == "vacuously-compact"
        assert rep.diagnostics["bounded"] is True
        assert rep.diagnostics["sup_phi"] <= 0.5 + 1e-9
        assert rep.estimate is not None and math.isfinite(rep.estimate)

    def test_constant_vacuously_compact(self):
        rep = hardy_to_bloch_verdict(CONSTANT, CLASSICAL, 2.0)
        assert rep.verdict == "vacuously-compact"
        assert rep.estimate == pytest.approx(0.0, abs=1e-12)

    def test_boundary_touching_polynomial_non_compact(self):
        # phi(z) = (1+z)/2 touches the boundary at z -> 1 with Q blowing up
        rep = hardy_to_bloch_verdict(Polynomial((0.5, 0.5)), CLASSICAL, 2.0)
        assert rep.verdict in ("unbounded", "non-compact")

    def test_synthetic_compact_band_decay(self):
        # duck-typed symbol with |phi| -> 1 but Q -> 0 near the boundary
        class Damped:
            kind = "test-damped"

            def eval(self, z):
                return np.asarray(z, dtype=complex)

            def deriv(self, z):
                gap = 1.0 - np.abs(np.asarray(z, dtype=complex)) ** 2
                return gap ** 0.75 + 0j

        rep = hardy_to_bloch_verdict(Damped(), CLASSICAL, 2.0)
        assert rep.verdict == "compact"
        assert rep.diagnostics["band_decay_slope"] < -0.05
        bands = rep.diagnostics["band_maxima"]
        assert bands[-1] < bands[0]

    def test_evidence_running_sup_monotone(self):
        rep = hardy_to_bloch_verdict(HALF, CLASSICAL, 2.0)
        vals = [v for _, v in rep.evidence]
        assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))


class TestCriterionReport:
    def test_affirmative_requires_estimate(self):
        with pytest.raises(ValueError):
            CriterionReport("convergent", None, ())
        with pytest.raises(ValueError):
            CriterionReport("vacuously-compact", math.inf, ())
        with pytest.raises(ValueError):
            CriterionReport("nonsense", 1.0, ())


class TestTestFunction:
    def test_degenerate_center(self):
        f = kernel_test_function(0, 2.0)
        assert f.eval(0.5) == pytest.approx(1.0)
        assert float(hardy_norm(f, 2.0)) == pytest.approx(1.0, abs=1e-6)

    def test_unit_hardy_norm(self, rng):
        for _ in range(5):
            b = complex(disk_samples(rng, 1, r_max=0.95)[0])
            p = float(rng.uniform(0.7, 4.0))
            f = kernel_test_function(b, p)
            assert float(hardy_norm(f, p)) == pytest.approx(1.0, abs=1e-5)

    def test_hand_value(self):
        f = kernel_test_function(0.9, 2.0)
        assert abs(f.eval(0.9)) == pytest.approx((1 / 0.19) ** 0.5, abs=1e-10)


class TestGrowthBound:
    def test_identity_origin(self):
        f = as_harmonic(Polynomial((0, 1)))
        rec = growth_bound_check(f, 2.0, 0j)
        assert rec["lhs"] == pytest.approx(1.0)
        assert rec["rhs"] == pytest.approx(2.0, abs=1e-8)
        assert rec["ok"]

    def test_constant(self):
        rec = growth_bound_check(as_harmonic(Polynomial((5,))), 2.0, 0.3)
        assert rec["lhs"] == 0.0
        assert rec["ok"]

    def test_random_pairs(self, rng):
        for _ in range(10):
            f = random_polynomial_pair(rng, degree=6)
            for z in disk_samples(rng, 10, r_max=0.98):
                assert growth_bound_check(f, 2.5, z)["ok"]

    def test_rejects_small_p(self):
        with pytest.raises(ParameterRangeError):
            growth_bound_check(as_harmonic(Polynomial((0, 1))), 1.0, 0j)


class TestBoundedBelowProbe:
    def test_identity_full_fraction(self):
        rep = bounded_below_probe(IDENTITY, 0.2, 0.5, 100, seed=7)
        assert rep.fraction == 1.0
        assert rep.implied_constant == \
            pytest.approx((1 - LIP_CONSTANT * 0.2) * 0.5, abs=1e-12)

    def test_automorphism_full_fraction(self):
        rep = bounded_below_probe(Mobius(0.3), 0.2, 0.5, 100, seed=7)
        assert rep.fraction == 1.0
        assert rep.implied_constant is not None

    def test_constant_fraction_zero(self):
        rep = bounded_below_probe(CONSTANT, 0.2, 0.5, 50, seed=7)
        assert rep.fraction == 0.0
        assert rep.implied_constant is None
        assert len(rep.unmatched) > 0

    def test_range_errors(self):
        with pytest.raises(ParameterRangeError):
            bounded_below_probe(IDENTITY, 0.5, 0.5, 10)  # r past 2 sqrt(3)/9
        with pytest.raises(ParameterRangeError):
            bounded_below_probe(IDENTITY, PROBE_RADIUS_SUP, 0.5, 10)
        with pytest.raises(ParameterRangeError):
            bounded_below_probe(IDENTITY, 0.2, 0.0, 10)


class TestDoubling:
    @pytest.mark.parametrize("alpha,beta", [(1.0, 0.0), (2.0, 1.0), (1.0, -1.0)])
    def test_limits(self, alpha, beta):
        lim0, lim1 = doubling_limits(alpha, beta)
        assert lim0 == pytest.approx(2.0 ** alpha, abs=1e-4)
        expected1 = (4.0 / 3.0) ** alpha / (1.0 + math.log(4.0 / 3.0)) ** beta
        assert lim1 == pytest.approx(expected1, abs=1e-4)

    @pytest.mark.parametrize("alpha,beta", [(1.0, 0.0), (2.0, 1.0), (1.0, -1.0)])
    def test_ratio_uniformly_bounded(self, alpha, beta):
        # continuous on (0, 1] with finite endpoint limits, hence bounded;
        # the interior can overshoot both limits (it does for beta < 0)
        s = np.linspace(1e-6, 1.0, 400)
        vals = [chi_ratio(alpha, beta, float(x)) for x in s]
        cap = 1.5 * max(2.0 ** alpha,
                        (4.0 / 3.0) ** alpha / (1.0 + math.log(4.0 / 3.0)) ** beta)
        assert max(vals) <= cap

    def test_majorant_ratio_below_chi_ratio(self):
        params = BlochParams(1.5, 0.5, PowerMajorant(0.6))
        for s in (1e-4, 0.01, 0.3, 0.99, 1.0):
            assert doubling_ratio(params, s) <= \
                chi_ratio(1.5, 0.5, s) * (1.0 + 1e-12)

    def test_identity_majorant_ratios_coincide(self):
        params = BlochParams(2.0, 1.0)
        for s in (1e-5, 0.2, 1.0):
            assert doubling_ratio(params, s) == \
                pytest.approx(chi_ratio(2.0, 1.0, s), abs=1e-13)

    def test_range_error(self):
        with pytest.raises(ParameterRangeError):
            chi_ratio(1.0, 0.0, 0.0)
