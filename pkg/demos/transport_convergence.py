"""Check the grid transport solver against the closed forms.

The library carries two independent routes to the elastic deformation:
exact expressions built from characteristics, and a semi-Lagrangian
solver that only knows the velocity field and the inflow condition.
Running the grid solver at a few resolutions against the exact fields
should show clean first-order convergence; if it ever stops converging,
one of the two routes is wrong.

Run:  python3 demos/transport_convergence.py
Writes transport_convergence.png next to this script.
"""

import pathlib
import time

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from accrete import MaterialModel, RateFunction, cylinder, sphere, transport
from accrete.cylinder import CylinderScenario
from accrete.sphere import InitialBody, SphereScenario

HERE = pathlib.Path(__file__).resolve().parent
CELLS = (32, 64, 128, 256, 512)


def study(problem, t_end, reference, label):
    errs = []
    t0 = time.perf_counter()
    for n in CELLS:
        snap = transport.solve(problem, n_cells=n, t_end=t_end)[-1]
        errs.append(transport.max_abs_error(snap, reference))
    wall = time.perf_counter() - t0
    order = float(np.polyfit(np.log(CELLS), np.log(errs), 1)[0] * -1.0)
    print(f"\n{label}:  ({wall:.2f} s)")
    print(f"  {'cells':>6} {'max |F - exact|':>16} {'ratio':>7}")
    for i, (n, e) in enumerate(zip(CELLS, errs)):
        ratio = f"{errs[i] / errs[i - 1]:7.3f}" if i else "      -"
        print(f"  {n:>6} {e:16.3e} {ratio}")
    print(f"  fitted order: {order:.3f}")
    return errs, order


# sphere, started after some material exists so the inflow sees history
s_scn = SphereScenario(
    inner_radius=1.0,
    material=MaterialModel.neo_hookean(1.0),
    accretion_speed=RateFunction.constant(1.0),
    initial_body=InitialBody(outer_radius=1.3),
)
s_prob = transport.sphere_transport(s_scn)


def s_exact(r, t):
    return sphere.elastic_deformation(s_scn, float(r), float(t)).components


s_errs, s_order = study(s_prob, 1.0, lambda r, t=1.0: s_exact(r, t), "sphere")

# cylinder, wound under a pressure ramp
c_scn = CylinderScenario(
    inner_radius=1.0,
    outer_radius=1.3,
    material=MaterialModel.neo_hookean(1.0),
    growth_speed=RateFunction.constant(0.5),
    inner_pressure=RateFunction.ramp(0.0, 0.05),
)
c_hist = cylinder.evolve_geometry(c_scn, t_end=1.0, dt=1e-3)
c_prob = transport.cylinder_transport(c_hist)


def c_exact(r, t=1.0):
    return cylinder.elastic_deformation(c_hist, float(r), t).components


c_errs, c_order = study(c_prob, 1.0, c_exact, "cylinder")

fig, ax = plt.subplots(figsize=(6, 4.5))
ax.loglog(CELLS, s_errs, "o-", label=f"sphere (order {s_order:.2f})")
ax.loglog(CELLS, c_errs, "s-", label=f"cylinder (order {c_order:.2f})")
ref = s_errs[0] * CELLS[0] / np.array(CELLS)
ax.loglog(CELLS, ref, "k--", lw=0.8, label="first order")
ax.set_xlabel("cells")
ax.set_ylabel("max |F - exact| at t=1")
ax.legend()
ax.set_title("grid transport vs closed form")
fig.tight_layout()
out = HERE / "transport_convergence.png"
fig.savefig(out, dpi=130)
print(f"\nwrote {out}")
