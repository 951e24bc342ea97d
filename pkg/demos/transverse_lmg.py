"""Transverse Dicke-LMG model: order parameter and polaritons across the transition.

At zero fields the ground state jumps between the z- and x-polarized
states.  A small transverse field smooths the jump into a crossover.  The
polaritons from the pole search are checked against the bosonization
route at each coupling.
"""

import numpy as np

from cavity_response import InteractionChannel, ModelSpec, bosonization_polaritons, solve_mean_field, spin_model_poles

J = 0.25
for omega_x, omega_z in [(0.0, 0.0), (0.3, 0.4)]:
    print(f"omega_x = {omega_x}, omega_z = {omega_z}, J = {J}")
    print("  lam    m_x     m_z     poles                     bosonization")
    for lam in np.linspace(0.1, 1.0, 10):
        spec = ModelSpec("lmg_transverse", omega_z=omega_z, omega_x=omega_x, J=J, channel=InteractionChannel(lam))
        s = solve_mean_field(spec)
        poles = spin_model_poles(spec, which=("photon", "z"))
        oracle = bosonization_polaritons(spec) if omega_z >= 0 else ()
        fmt = lambda xs: " ".join(f"{x:.6f}" for x in xs)  # noqa: E731
        print(f"  {lam:4.2f}  {s.m_x:6.3f}  {s.m_z:6.3f}  {fmt(poles):24s}  {fmt(oracle)}")
    print()
