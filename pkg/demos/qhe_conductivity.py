"""Cavity-dressed quantum Hall conductivity.

The dc Hall conductivity stays quantized for any light-matter coupling,
while the longitudinal optical response splits into Landau polaritons.
"""

import numpy as np

from cavity_response import QheSpec, landau_polaritons, qhe_conductivity, qhe_dc_conductivity

print("dc Hall conductivity (units e^2 nu / h), broadening 1e-8")
for wp in (0.0, 0.5, 1.0, 2.0):
    spec = QheSpec(cavity_freq=1.0, plasma_freq=wp, cyclotron_freq=1.0)
    print(f"  omega_p = {wp:3.1f}: sigma_xy = {qhe_conductivity(spec, 1e-8j).sigma_xy.real:.10f}"
          f"  (closed form {qhe_dc_conductivity(spec, 0.0).sigma_xy.real:.10f})")

spec = QheSpec(cavity_freq=1.0, plasma_freq=0.5, cyclotron_freq=1.0, broadening=1e-2)
omega = np.linspace(0.05, 2.0, 3901)
re_xx = qhe_conductivity(spec, omega).sigma_xx.real
peaks = omega[1:-1][(re_xx[1:-1] > re_xx[:-2]) & (re_xx[1:-1] > re_xx[2:])]
print("\nRe sigma_xx peaks:", " ".join(f"{p:.4f}" for p in peaks))
print("Landau polaritons:", " ".join(f"{p:.4f}" for p in landau_polaritons(spec)))
