"""Wind material onto a pressurized cylindrical liner.

Layers land on the outer surface while the bore carries internal pressure.
The cavity radius is an unknown here: each new layer arrives relaxed, so
the load is held by an ever-changing subset of the cross section and the
bore creeps outward as winding continues.  Plane strain throughout.

Run:  python3 demos/cylinder_winding.py
Writes cylinder_winding.png next to this script.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from accrete import MaterialModel, RateFunction, cylinder
from accrete.cylinder import CylinderScenario

HERE = pathlib.Path(__file__).resolve().parent

scenario = CylinderScenario(
    inner_radius=1.0,
    outer_radius=1.3,
    material=MaterialModel.neo_hookean(1.0),
    growth_speed=RateFunction.constant(0.5),
    # pressure ramps from zero so the initial state is the natural one
    inner_pressure=RateFunction.ramp(0.0, 0.08),
)

history = cylinder.evolve_geometry(scenario, t_end=2.0, dt=1e-3)

print("cavity and outer radius under combined winding and pressurization")
print(f"{'t':>6} {'r_in':>10} {'r_out':>10} {'interface':>10}")
for t in (0.0, 0.5, 1.0, 1.5, 2.0):
    print(f"{t:6.2f} {history.r_in(t):10.6f} {history.r_out(t):10.6f} "
          f"{cylinder.interface_radius(history, t):10.6f}")

worst = float(np.max(np.abs(history.pressure_residuals)))
print(f"worst accepted momentum residual: {worst:.2e}")

fig, (ax_r, ax_s) = plt.subplots(1, 2, figsize=(10, 4))

ax_r.plot(history.times, history.r_in.values, label="cavity")
ax_r.plot(history.times, history.r_out.values, label="outer surface")
ax_r.plot(history.times,
          [cylinder.interface_radius(history, t) for t in history.times],
          "--", label="original/wound interface")
ax_r.set_xlabel("t")
ax_r.set_ylabel("radius")
ax_r.legend()

for t in (0.5, 1.0, 2.0):
    rin = history.r_in(t)
    rout = history.r_out(t)
    rr = np.linspace(rin, rout, 300)
    hoop = np.array([cylinder.stress(history, scenario, r, t)[0].tt for r in rr])
    ax_s.plot(rr, hoop, label=f"t={t}")
ax_s.set_xlabel("r")
ax_s.set_ylabel("hoop stress / G")
ax_s.axhline(0.0, color="k", lw=0.5)
ax_s.legend()

fig.suptitle("winding onto a pressurized cylinder")
fig.tight_layout()
out = HERE / "cylinder_winding.png"
fig.savefig(out, dpi=130)
print(f"wrote {out}")

# The wound region remembers when each shell attached.  Show the map from
# current position to attachment time at the final instant.
t = 2.0
rhat = cylinder.interface_radius(history, t)
rr = np.linspace(rhat, history.r_out(t), 7)
print("\nattachment time across the wound region at t=2")
for r in rr:
    tau = cylinder.attachment_time(history, float(r), t)
    print(f"  r={r:8.5f}  attached at tau={tau:7.4f}")
