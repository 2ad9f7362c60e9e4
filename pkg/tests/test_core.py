"""Core types: disk points, analytic kinds, harmonic pairs, majorants."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blochdisk import (AnalyticMap, Blaschke, BlochParams, HarmonicMap,
                       IdentityMajorant, MajorantValidationError, Mobius,
                       ParameterRangeError, Polynomial, PowerKernel,
                       PowerMajorant, QuadraticExtremal, ScaledIdentity,
                       TabulatedMajorant, as_harmonic, classical_params,
                       disk_point, in_unit_disk, lambda_f, validate_majorant)
from blochdisk.extremal import AntiderivativeExtremal

SQ3 = math.sqrt(3.0)


class TestDiskPoint:
    def test_interior_accepted(self):
        assert disk_point(0.3 + 0.4j) == 0.3 + 0.4j

    @pytest.mark.parametrize("z", [1.0, -1.0, 1j, 2.0, 0.8 + 0.7j])
    def test_boundary_and_exterior_rejected(self, z):
        with pytest.raises(ValueError):
            disk_point(z)

    def test_in_unit_disk(self):
        assert in_unit_disk(0.999)
        assert not in_unit_disk(1.0)


class TestEval:
    def test_identity_polynomial(self):
        f = Polynomial((0, 1))
        assert f.eval(0.3 + 0.4j) == 0.3 + 0.4j

    def test_mobius_at_origin_center(self):
        assert Mobius(0).eval(0.5) == -0.5

    def test_power_kernel_degenerates_to_one(self):
        f = PowerKernel(0, 2.0)
        assert f.eval(0.7) == pytest.approx(1.0)
        assert f.exponent == 0.5

    def test_power_kernel_value(self):
        # ((1 - 0.81)/(1 - 0.81)^2)^(1/2) = (1/0.19)^(1/2)
        f = PowerKernel(0.9, 2.0)
        assert f.eval(0.9) == pytest.approx((1 / 0.19) ** 0.5, abs=1e-12)

    def test_power_kernel_continuity_along_path(self):
        # single-valued principal branch: small steps give small changes
        f = PowerKernel(0.6 + 0.3j, 1.5)
        t = np.linspace(0.0, 1.0, 400)
        path = 0.95 * np.exp(1j * (2 * np.pi * t)) * t  # spiral through the disk
        vals = f.eval(path)
        steps = np.abs(np.diff(vals))
        assert float(steps.max()) < 0.25


class TestDeriv:
    def test_quadratic_extremal(self):
        eta = QuadraticExtremal()
        assert eta.deriv(0.2) == pytest.approx(-(1.5 * SQ3) * 0.2, abs=1e-14)

    def test_mobius_derivative_magnitude(self):
        assert abs(Mobius(0.5).deriv(0)) == pytest.approx(0.75, abs=1e-15)

    def test_extremal_antiderivative_initial_slope(self):
        for beta in (0.2, 0.49012, 0.9, 1.0):
            f = AntiderivativeExtremal(beta)
            assert complex(f.deriv(0j)) == pytest.approx(beta, abs=1e-12)


@settings(max_examples=250, deadline=None)
@given(st.floats(-0.7, 0.7), st.floats(-0.7, 0.7), st.integers(0, 7))
def test_centered_difference_matches_deriv(x, y, which):
    from blochdisk import Composed
    from blochdisk.extremal import AntiderivativeExtremal

    z = complex(x, y)
    if abs(z) > 1 - 1e-3:
        return
    maps = [
        Polynomial((0.3, -1j, 0.2, 0.7j)),
        Mobius(0.4 - 0.2j),
        Blaschke((0.3, -0.5j), rotation=1j),
        ScaledIdentity(0.8j),
        PowerKernel(0.4 + 0.1j, 3.0),
        QuadraticExtremal(),
        AntiderivativeExtremal(0.6),
        Composed(Polynomial((0.1, 1j, -0.4)), Mobius(0.25), offset=2 - 1j),
    ]
    f = maps[which]
    h = 1e-6
    approx = (f.eval(z + h) - f.eval(z - h)) / (2 * h)
    exact = f.deriv(z)
    assert abs(approx - exact) <= 1e-5 * max(1.0, abs(exact))


class TestLambda:
    def test_mixed_pair_constant_stretch(self):
        f = HarmonicMap(Polynomial((0, 1)), Polynomial((0, 0.5)))
        for z in (0j, 0.3 + 0.1j, -0.8j):
            assert lambda_f(f, z) == pytest.approx(1.5, abs=1e-15)

    def test_analytic_case(self):
        f = as_harmonic(Polynomial((0, 1)))
        assert lambda_f(f, 0.5j) == pytest.approx(1.0)

    def test_quadratic_extremal_stretch(self):
        f = as_harmonic(QuadraticExtremal())
        z = 1 / SQ3
        assert lambda_f(f, z) == pytest.approx(1.5, abs=1e-14)

    def test_invariant_under_constants_in_h(self, rng):
        f = HarmonicMap(Polynomial((0, 1j, 0.3)), Polynomial((0, 0.2)))
        g = HarmonicMap(Polynomial((5 - 2j, 1j, 0.3)), Polynomial((0, 0.2)))
        for z in rng.uniform(-0.6, 0.6, 20) + 1j * rng.uniform(-0.6, 0.6, 20):
            assert lambda_f(f, z) == pytest.approx(lambda_f(g, z), abs=1e-14)
            assert lambda_f(f, z) >= 0.0


class TestHarmonicMap:
    def test_rejects_nonvanishing_g(self):
        with pytest.raises(ValueError):
            HarmonicMap(Polynomial((0, 1)), Polynomial((0.5, 1)))

    def test_eval_combines_conjugate(self):
        f = HarmonicMap(Polynomial((0, 1)), Polynomial((0, 1j)))
        z = 0.3 + 0.2j
        assert f.eval(z) == pytest.approx(z + np.conjugate(1j * z))


class TestSelfMapGrid:
    @pytest.mark.parametrize("phi", [
        Mobius(0.7 - 0.1j),
        Blaschke((0.5, -0.3j, 0.2 + 0.2j)),
        ScaledIdentity(0.99),
    ])
    def test_symbol_kinds_stay_inside(self, phi):
        radii = np.linspace(0.0, 1.0 - 2.0 ** -20, 64)
        angles = np.linspace(0.0, 2 * np.pi, 157, endpoint=False)
        z = radii[:, None] * np.exp(1j * angles)[None, :]
        assert z.size >= 10_000
        assert float(np.max(np.abs(phi.eval(z)))) < 1.0


class TestMajorants:
    def test_identity_accepted(self):
        omega = validate_majorant("id")
        assert isinstance(omega, IdentityMajorant)
        assert omega(0.0) == 0.0

    def test_power_accepted(self):
        omega = validate_majorant("pow:0.5")
        assert isinstance(omega, PowerMajorant)
        assert omega(4.0) == pytest.approx(2.0)

    def test_superlinear_tabulation_rejected(self):
        ts = np.geomspace(1e-6, 4.0, 80)
        with pytest.raises(MajorantValidationError) as err:
            TabulatedMajorant(ts, ts ** 2)
        assert err.value.reason == "ratio-increasing"
        assert err.value.witness is not None

    def test_decreasing_tabulation_rejected(self):
        ts = np.linspace(0.5, 4.0, 64)
        vals = np.concatenate([np.linspace(0.1, 1.0, 32),
                               np.linspace(1.0, 0.5, 32)])
        with pytest.raises(MajorantValidationError) as err:
            TabulatedMajorant(ts, vals)
        assert err.value.reason == "not-increasing"

    def test_power_out_of_range(self):
        with pytest.raises(ParameterRangeError):
            PowerMajorant(2.0)

    def test_tabulated_identity_accepted(self):
        ts = np.geomspace(1e-6, 4.0, 128)
        omega = TabulatedMajorant(ts, ts)
        assert omega(2.0) == pytest.approx(2.0)
        assert omega.ratio_limit_at_zero() == pytest.approx(1.0)

    def test_ratio_limit(self):
        assert IdentityMajorant().ratio_limit_at_zero() == pytest.approx(1.0)
        assert PowerMajorant(0.5).ratio_limit_at_zero() is None
        assert PowerMajorant(1.0).ratio_limit_at_zero() == pytest.approx(1.0)


class TestBlochParams:
    def test_alpha_must_be_positive(self):
        with pytest.raises(ParameterRangeError):
            BlochParams(0.0, 0.0)

    def test_defaults_to_identity_majorant(self):
        params = BlochParams(2.0, -1.0)
        assert isinstance(params.omega, IdentityMajorant)

    def test_classical(self):
        params = classical_params()
        assert params.alpha == 1.0 and params.beta == 0.0


def test_abstract_base_raises():
    base = AnalyticMap()
    with pytest.raises(NotImplementedError):
        base.eval(0j)
