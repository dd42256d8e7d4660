import numpy as np
import pytest

from accrete import cylinder
from accrete.errors import DomainError
from accrete.kinematics import MaterialModel
from accrete.numerics import TimeSeries
from accrete.rates import RateFunction


class TestScenarioValidation:
    def test_pressure_must_start_at_zero(self, neo):
        with pytest.raises(ValueError):
            cylinder.CylinderScenario(
                1.0, 1.3, RateFunction.constant(0.5), RateFunction.ramp(0.1, 1.0), neo
            )

    def test_growth_must_stay_positive(self, neo):
        with pytest.raises(ValueError):
            cylinder.CylinderScenario(
                1.0, 1.3, RateFunction.constant(0.0), RateFunction.constant(0.0), neo
            )
        with pytest.raises(ValueError):
            cylinder.CylinderScenario(
                1.0,
                1.3,
                RateFunction.table([0.0, 1.0], [0.5, 0.0]),
                RateFunction.constant(0.0),
                neo,
            )

    def test_radius_ordering(self, neo):
        with pytest.raises(ValueError):
            cylinder.CylinderScenario(
                1.3, 1.0, RateFunction.constant(0.5), RateFunction.constant(0.0), neo
            )

    def test_general_material_accepted(self):
        mat = MaterialModel.general(1.0, lambda i1, i2: 0.4, lambda i1, i2: 0.1)
        s = cylinder.CylinderScenario(
            1.0, 1.3, RateFunction.constant(0.5), RateFunction.constant(0.0), mat
        )
        assert s.material.kind == "general"


class TestHistoryValidation:
    def test_series_must_share_nodes(self):
        t1 = TimeSeries(np.array([0.0, 1.0]), np.array([1.0, 1.0]))
        t2 = TimeSeries(np.array([0.0, 2.0]), np.array([1.3, 1.4]))
        a = TimeSeries(np.array([0.0, 1.0]), np.array([0.0, 0.5]))
        with pytest.raises(ValueError):
            cylinder.GeometryHistory(t1, t2, a, 1.0, 1.3)

    def test_identity_violation_rejected(self):
        t = np.array([0.0, 1.0])
        rin = TimeSeries(t, np.array([1.0, 1.0]))
        rout = TimeSeries(t, np.array([1.3, 1.31]))  # far off 2A growth
        a = TimeSeries(t, np.array([0.0, 0.65]))
        with pytest.raises(ValueError):
            cylinder.GeometryHistory(rin, rout, a, 1.0, 1.3)


class TestZeroLoad:
    def test_inner_radius_pinned_exactly(self, cyl_zero_history):
        assert np.all(cyl_zero_history.r_in.values == 1.0)

    def test_outer_radius_is_initial_plus_deposit(self, cyl_zero_history):
        h = cyl_zero_history
        expect = 1.3 + 0.5 * h.times
        assert np.max(np.abs(h.r_out.values - expect)) < 1e-12

    def test_velocity_vanishes(self, cyl_zero_history):
        assert cylinder.velocity(cyl_zero_history, 1.2, 0.7) == 0.0

    def test_deformation_is_identity(self, cyl_zero_history, rng):
        # node times: between nodes the history is a linear interpolant
        # and deformation picks up the interpolant's O(dt^2) gap
        h = cyl_zero_history
        for _ in range(100):
            t = float(rng.choice(h.times))
            r = float(rng.uniform(h.r_in(t), h.r_out(t)))
            f = cylinder.elastic_deformation(h, r, t)
            assert f.components == pytest.approx((1.0, 1.0), abs=1e-12)

    def test_interpolated_times_stay_close(self, cyl_zero_history, rng):
        # off-node sampling is still well behaved, just not exact
        h = cyl_zero_history
        for _ in range(50):
            t = float(rng.uniform(0.0, 1.0))
            r = float(rng.uniform(h.r_in(t), h.r_out(t)))
            f = cylinder.elastic_deformation(h, r, t)
            assert f.components == pytest.approx((1.0, 1.0), abs=1e-6)

    def test_stress_free(self, cyl_zero_history, cyl_zero_scenario, rng):
        h, s = cyl_zero_history, cyl_zero_scenario
        for _ in range(20):
            t = float(rng.choice(h.times))
            r = float(rng.uniform(h.r_in(t), h.r_out(t)))
            sig, p = cylinder.stress(h, s, r, t)
            assert sig.components == pytest.approx((0.0, 0.0), abs=1e-10)
            assert p == pytest.approx(1.0, abs=1e-10)

    def test_momentum_residuals_zero(self, cyl_zero_history):
        assert np.max(np.abs(cyl_zero_history.pressure_residuals)) == 0.0


class TestPressurizedHistory:
    def test_regression_anchors(self, cyl_history):
        # values pinned from a dt = 1e-3 march; drift means the stepper,
        # the quadrature or the root polish changed behaviour
        assert cyl_history.r_in(1.0) == pytest.approx(1.047814581855645, rel=1e-10)
        assert cyl_history.r_out(1.0) == pytest.approx(1.8318432311373052, rel=1e-10)

    def test_cavity_expands_under_pressure(self, cyl_history):
        assert np.all(np.diff(cyl_history.r_in.values) > 0.0)

    def test_global_area_identity_at_every_node(self, cyl_history):
        h = cyl_history
        gap = (
            h.r_out.values**2
            - h.r_in.values**2
            - 2.0 * h.growth_integral.values
            - (1.3**2 - 1.0**2)
        )
        assert np.max(np.abs(gap)) < 1e-12

    def test_accepted_residuals_within_gate(self, cyl_history):
        assert np.max(np.abs(cyl_history.pressure_residuals)) <= 1e-10

    def test_momentum_residual_recomputed(self, cyl_history, cyl_scenario):
        for t in (0.25, 0.5, 1.0):
            res = cylinder.pressure_residual(cyl_history, cyl_scenario, t)
            assert abs(res) < 1e-10

    def test_inner_boundary_condition(self, cyl_history, cyl_scenario):
        for t in (0.3, 1.0):
            rin = cyl_history.r_in(t)
            sig, _ = cylinder.stress(cyl_history, cyl_scenario, rin, t)
            assert sig.rr == pytest.approx(-cyl_scenario.inner_pressure(t), abs=1e-12)

    def test_plane_strain_stress_convention(self, cyl_history, cyl_scenario):
        r, t = 1.4, 0.9
        f = cylinder.elastic_deformation(cyl_history, r, t)
        sig, p = cylinder.stress(cyl_history, cyl_scenario, r, t)
        for sc, fc in zip(sig.components, f.components):
            assert sc == pytest.approx(-p + fc * fc, rel=1e-11, abs=1e-11)


class TestInterface:
    def test_starts_at_reference_outer_radius(self, cyl_history):
        assert cylinder.interface_radius(cyl_history, 0.0) == pytest.approx(
            1.3, rel=1e-14
        )

    def test_is_a_pathline(self, cyl_history):
        # r^2 - r_in^2 is conserved following the body, so the interface
        # must keep r^2 - r_in^2 = R1^2 - R0^2 at all times
        h = cyl_history
        for t in (0.2, 0.6, 1.0):
            rhat = cylinder.interface_radius(h, t)
            assert rhat**2 - h.r_in(t) ** 2 == pytest.approx(
                1.3**2 - 1.0, rel=1e-14
            )

    def test_deformation_continuous_across(self, cyl_history):
        h = cyl_history
        for t in (0.4, 1.0):
            rhat = cylinder.interface_radius(h, t)
            below = cylinder.elastic_deformation(h, rhat * (1.0 - 1e-9), t)
            above = cylinder.elastic_deformation(h, rhat * (1.0 + 1e-9), t)
            assert below.rr == pytest.approx(above.rr, abs=1e-8)

    def test_attachment_bounds(self, cyl_history):
        h = cyl_history
        t = 1.0
        assert cylinder.attachment_time(h, h.r_out(t), t) == pytest.approx(
            t, abs=1e-12
        )
        rhat = cylinder.interface_radius(h, t)
        assert cylinder.attachment_time(h, rhat, t) == pytest.approx(0.0, abs=1e-9)

    def test_attachment_inverts_attached_radius(self, cyl_history, rng):
        h = cyl_history
        t = 1.0
        rhat = cylinder.interface_radius(h, t)
        for _ in range(50):
            r = float(rng.uniform(rhat * 1.001, h.r_out(t)))
            tau = cylinder.attachment_time(h, r, t)
            # the particle sat on the outer surface when it attached, and
            # r^2 - r_in^2 rode along its pathline since
            lhs = cylinder.attached_radius(h, tau) ** 2 - h.r_in(tau) ** 2
            assert lhs == pytest.approx(r * r - h.r_in(t) ** 2, rel=1e-10)

    def test_initial_region_rejected_by_attachment(self, cyl_history):
        with pytest.raises(DomainError):
            cylinder.attachment_time(cyl_history, cyl_history.r_in(1.0), 1.0)


class TestDeformation:
    def test_unimodular(self, cyl_history, rng):
        h = cyl_history
        for _ in range(300):
            t = float(rng.uniform(0.0, 1.0))
            r = float(rng.uniform(h.r_in(t), h.r_out(t)))
            f = cylinder.elastic_deformation(h, r, t)
            assert f.det() == pytest.approx(1.0, abs=1e-13)

    def test_fresh_material_unstretched(self, cyl_history):
        h = cyl_history
        for t in (0.3, 0.8):
            f = cylinder.elastic_deformation(h, h.r_out(t), t)
            assert f.components == pytest.approx((1.0, 1.0), abs=1e-10)

    def test_outside_body_raises(self, cyl_history):
        with pytest.raises(DomainError):
            cylinder.elastic_deformation(cyl_history, 0.9, 0.5)

    def test_inverse_motion_cross_check(self, cyl_history):
        h = cyl_history
        t = 1.0
        radii = np.linspace(h.r_in(t) * 1.001, h.r_out(t) * 0.999, 12)
        direct = np.array(
            [cylinder.elastic_deformation(h, float(r), t).components for r in radii]
        )
        marched = cylinder.inverse_motion_deformation(h, radii, t)
        assert np.max(np.abs(marched - direct)) < 1e-8

    def test_inverse_motion_scalar_form(self, cyl_history):
        f = cylinder.inverse_motion_deformation(cyl_history, 1.4, 1.0)
        g = cylinder.elastic_deformation(cyl_history, 1.4, 1.0)
        assert f.rr == pytest.approx(g.rr, abs=1e-9)


class TestBoundaryBookkeeping:
    def test_growth_flux(self, cyl_history, cyl_scenario):
        gf = cylinder.growth_flux(cyl_scenario, cyl_history, 0.5)
        assert gf.regime == "accretion"
        assert gf.mass_rate == pytest.approx(0.5)

    def test_inner_traction(self, cyl_scenario):
        tr = cylinder.inner_traction(cyl_scenario, 1.0)
        assert tr.location == "inner"
        assert tr.traction == pytest.approx(0.05)


class TestEvolveValidation:
    def test_bad_arguments(self, cyl_scenario):
        with pytest.raises(ValueError):
            cylinder.evolve_geometry(cyl_scenario, t_end=0.0, dt=1e-3)
        with pytest.raises(ValueError):
            cylinder.evolve_geometry(cyl_scenario, t_end=1.0, dt=-1.0)
