import numpy as np
import pytest

from accrete import cylinder, sphere, transport
from accrete.characteristics import VelocityField
from accrete.errors import CFLError
from accrete.kinematics import DiagTensor, Frame
from accrete.transport import (
    FieldSnapshot,
    MovingGrid,
    TransportProblem,
    cfl_dt,
    cylinder_transport,
    max_abs_error,
    solve,
    sphere_transport,
    step,
)


def _static_problem(v_const=0.0):
    field = VelocityField(
        v_r=lambda r, t: v_const + 0.0 * np.asarray(r),
        dv_dr=lambda r, t: 0.0 * np.asarray(r),
        domain=lambda t: (1.0, 2.0),
    )
    return TransportProblem(
        velocity=field,
        domain_rates=lambda t: (0.0, 0.0),
        inflow_side="inner",
        inflow_f=DiagTensor.identity(Frame.POLAR),
        initial_f=lambda nodes, t: np.column_stack(
            [1.0 + 0.2 * np.sin(nodes), 1.0 / (1.0 + 0.2 * np.sin(nodes))]
        ),
        frame=Frame.POLAR,
    )


class TestContainers:
    def test_grid_needs_enough_cells(self):
        with pytest.raises(ValueError):
            MovingGrid(np.linspace(0.0, 1.0, 8), 0.0)
        MovingGrid(np.linspace(0.0, 1.0, 9), 0.0)

    def test_grid_must_increase(self):
        nodes = np.linspace(0.0, 1.0, 10)
        nodes[4] = nodes[5]
        with pytest.raises(ValueError):
            MovingGrid(nodes, 0.0)

    def test_n_cells(self):
        assert MovingGrid(np.linspace(0.0, 1.0, 11), 0.0).n_cells == 10

    def test_snapshot_shape_check(self):
        grid = MovingGrid(np.linspace(1.0, 2.0, 10), 0.0)
        with pytest.raises(ValueError):
            FieldSnapshot(grid, np.ones((10, 3)), Frame.POLAR)
        with pytest.raises(ValueError):
            FieldSnapshot(grid, np.ones((9, 2)), Frame.POLAR)

    def test_snapshot_rejects_nonpositive_field(self):
        grid = MovingGrid(np.linspace(1.0, 2.0, 10), 0.0)
        f = np.ones((10, 2))
        f[3, 1] = 0.0
        with pytest.raises(ValueError):
            FieldSnapshot(grid, f, Frame.POLAR)

    def test_determinant(self):
        grid = MovingGrid(np.linspace(1.0, 2.0, 10), 0.0)
        f = np.column_stack([np.full(10, 2.0), np.full(10, 0.5)])
        snap = FieldSnapshot(grid, f, Frame.POLAR)
        assert np.all(snap.determinant() == 1.0)

    def test_problem_validation(self):
        field = VelocityField(
            v_r=lambda r, t: 0.0,
            dv_dr=lambda r, t: 0.0,
            domain=lambda t: (1.0, 2.0),
        )
        with pytest.raises(ValueError):
            TransportProblem(
                velocity=field,
                domain_rates=lambda t: (0.0, 0.0),
                inflow_side="above",
                inflow_f=DiagTensor.identity(Frame.POLAR),
                initial_f=lambda nodes, t: np.ones((nodes.size, 2)),
                frame=Frame.POLAR,
            )
        with pytest.raises(ValueError):
            TransportProblem(
                velocity=field,
                domain_rates=lambda t: (0.0, 0.0),
                inflow_side="inner",
                inflow_f=DiagTensor.identity(Frame.SPHERICAL),
                initial_f=lambda nodes, t: np.ones((nodes.size, 2)),
                frame=Frame.POLAR,
            )


class TestStep:
    def test_static_field_is_fixed_point(self):
        problem = _static_problem(0.0)
        snaps = solve(problem, n_cells=32, t_end=1.0)
        final = snaps[-1]
        expect = problem.initial_f(final.grid.nodes, 0.0)
        expect[0, :] = (1.0, 1.0)  # pinned inflow node
        assert np.max(np.abs(final.f - expect)) < 1e-13

    def test_courant_guard(self):
        problem = _static_problem(1.0)
        nodes = np.linspace(1.0, 2.0, 17)
        snap = FieldSnapshot(
            MovingGrid(nodes, 0.0), problem.initial_f(nodes, 0.0), Frame.POLAR
        )
        with pytest.raises(CFLError) as err:
            step(snap, problem, dt=1.0)
        assert err.value.dt_suggested < 1.0
        step(snap, problem, dt=err.value.dt_suggested)

    def test_cfl_dt_static(self):
        problem = _static_problem(0.0)
        nodes = np.linspace(1.0, 2.0, 17)
        snap = FieldSnapshot(
            MovingGrid(nodes, 0.0), problem.initial_f(nodes, 0.0), Frame.POLAR
        )
        assert cfl_dt(problem, snap) == np.inf

    def test_inflow_node_pinned(self):
        problem = _static_problem(0.0)
        snaps = solve(problem, n_cells=16, t_end=0.5)
        assert tuple(snaps[-1].f[0]) == (1.0, 1.0)

    def test_rejects_nonpositive_dt(self):
        problem = _static_problem(0.0)
        nodes = np.linspace(1.0, 2.0, 17)
        snap = FieldSnapshot(
            MovingGrid(nodes, 0.0), problem.initial_f(nodes, 0.0), Frame.POLAR
        )
        with pytest.raises(ValueError):
            step(snap, problem, dt=0.0)


class TestSolve:
    def test_argument_validation(self):
        problem = _static_problem(0.0)
        with pytest.raises(ValueError):
            solve(problem, n_cells=4, t_end=1.0)
        with pytest.raises(ValueError):
            solve(problem, n_cells=16, t_end=0.0)
        with pytest.raises(ValueError):
            solve(problem, n_cells=16, t_end=1.0, cfl=0.95)

    def test_output_times_are_hit_exactly(self):
        problem = _static_problem(0.0)
        snaps = solve(problem, n_cells=16, t_end=1.0, output_times=(0.25, 0.5))
        assert [s.t for s in snaps] == [0.25, 0.5, 1.0]

    def test_grid_follows_the_domain(self, cyl_history):
        problem = cylinder_transport(cyl_history)
        snaps = solve(problem, n_cells=32, t_end=1.0)
        nodes = snaps[-1].grid.nodes
        assert nodes[0] == pytest.approx(cyl_history.r_in(1.0), rel=1e-12)
        assert nodes[-1] == pytest.approx(cyl_history.r_out(1.0), rel=1e-12)

    def test_interface_node_present(self, cyl_history):
        problem = cylinder_transport(cyl_history)
        snaps = solve(problem, n_cells=32, t_end=1.0)
        rhat = cylinder.interface_radius(cyl_history, 1.0)
        gap = np.min(np.abs(snaps[-1].grid.nodes - rhat))
        assert gap < 1e-9


class TestAgainstClosedForm:
    def test_sphere_accuracy_and_refinement(self, sphere_basic):
        s = sphere_basic
        problem = sphere_transport(s, t_start=0.2)

        def reference(r, t):
            return sphere.elastic_deformation(s, r, t).components

        errs = []
        for n in (64, 128):
            snap = solve(problem, n_cells=n, t_end=1.0)[-1]
            errs.append(max_abs_error(snap, reference))
        assert errs[0] < 2e-3
        assert errs[1] < 0.62 * errs[0]

    def test_cylinder_accuracy_and_refinement(self, cyl_history):
        h = cyl_history
        problem = cylinder_transport(h)

        def reference(r, t):
            return cylinder.elastic_deformation(h, r, t).components

        errs = []
        for n in (64, 128):
            snap = solve(problem, n_cells=n, t_end=1.0)[-1]
            errs.append(max_abs_error(snap, reference))
        assert errs[0] < 5e-4
        assert errs[1] < 0.62 * errs[0]

    def test_sphere_determinant_stays_unimodular(self, sphere_basic):
        problem = sphere_transport(sphere_basic, t_start=0.2)
        snap = solve(problem, n_cells=64, t_end=1.0)[-1]
        # the scheme is not exactly isochoric, but close at this resolution
        assert np.max(np.abs(snap.determinant() - 1.0)) < 5e-3

    def test_ablating_sphere_needs_radius_series(self, sphere_ablating):
        grid = np.linspace(0.0, 1.0, 201)
        r1 = sphere.outer_radius(sphere_ablating, grid)
        problem = sphere_transport(sphere_ablating, r1=r1, t_start=0.2)
        snap = solve(problem, n_cells=64, t_end=1.0)[-1]

        def reference(r, t):
            return sphere.elastic_deformation(sphere_ablating, r, t, r1).components

        assert max_abs_error(snap, reference) < 2e-3
