"""A pulse crossing a periodic box on top of a background field.

Runs the 1+1 solver for Maxwell and for Born-Infeld, measures how fast the
pulse centroid moves, and compares with 1/sqrt(1 + kappa^2 B0^2).  Finishes
with a short grid-convergence study against the exact solution.
"""
import numpy as np

from nledlab import exact
from nledlab.solver import RunConfig, convergence_study, measure_phase_speed, run

base = RunConfig(kind="born_infeld", kappa=1.0, n=512, z0=-10, z1=10,
                 profile="gaussian", amplitude=0.5, width=1.0, B0=0.75,
                 cfl=0.5, t_end=5.0, output_every=20)

for cfg in (base.with_(kind="maxwell", kappa=0.0), base):
    res = run(cfg, keep_snapshots=False)
    v = measure_phase_speed(res)
    print(f"{cfg.kind:12s} measured v = {v:.5f}  expected {exact.phase_speed(cfg.kappa, cfg.B0):.5f}"
          f"  energy drift {res.energy_drift():.2e}")

study = convergence_study(base.with_(t_end=1.0, width=1.5), [128, 256, 512])
for row in study["levels"]:
    print(f"n={row['n']:4d}  L2 error {row['l2_error']:.3e}")
print(f"fitted order {study['order']:.3f}")

res = run(base.with_(t_end=2.0, output_every=0))
Ex = res.state.E_x
print(f"\npeak E_x after t=2: {np.max(Ex):.4f} at z = {res.config.grid.z[np.argmax(Ex)]:+.3f}")
