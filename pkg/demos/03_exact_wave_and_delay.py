"""Exact travelling waves in a background magnetic field, and the lab delay.

Any profile rides at the slowed speed v = 1/sqrt(1 + kappa^2 B^2), whatever
its amplitude.  In SI units the same slowdown gives a transit delay through
a magnet of length L0; we compare it with the smallest timing resolution
and invert for the kappa that could be excluded.
"""
import json

import numpy as np

from nledlab import exact, forms
from nledlab.exact import ExactSolutionSpec, ExperimentDesign, make_profile

for B in (0.0, 0.5, 1.0, 2.0):
    print(f"kappa=1, B={B:3.1f}: v = {exact.phase_speed(1.0, B):.6f}")

spec = ExactSolutionSpec(make_profile("gaussian", amplitude=3.0, width=0.4), B=0.75, kappa=1.0)
z = np.linspace(-3, 3, 7)
F = exact.sample_fields(spec, z, t=1.0)
print("\nX along the pulse (constant, the wave is null up to the background):",
      np.round(forms.invariant_X(F), 12))

design = ExperimentDesign(L0=1.0, B_tesla=10.0,
                          kappa_si=exact.kappa_from_electron_radius(),
                          timing_resolution=1e-12)
print("\nlaboratory estimate:")
print(json.dumps(exact.experiment_report(design), indent=2, default=float))
