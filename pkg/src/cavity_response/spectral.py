"""Brute-force zero-temperature response of a single spin by spectral sum.

Used as an independent check of the closed-form free-spin susceptibility.
"""

from __future__ import annotations

import numpy as np

from .core import Frequency, as_wplus
from .errors import DegenerateSpinError

__all__ = ["PAULI", "spin_hamiltonian", "spectral_susceptibility"]

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def spin_hamiltonian(omega_x: float, omega_z: float) -> np.ndarray:
    """``(omega_x sigma_x + omega_z sigma_z) / 2`` as a dense matrix."""
    return 0.5 * (omega_x * PAULI["x"] + omega_z * PAULI["z"])


def spectral_susceptibility(
    omega_x: float, omega_z: float, w: Frequency, labels: tuple[str, ...] = ("x", "z")
) -> np.ndarray:
    """Response matrix from the Lehmann sum over excited states.

    ``chi_rs(w) = sum_n <0|r|n><n|s|0> / (E_n - w) + <0|s|n><n|r|0> / (E_n + w)``
    with ``E_n`` measured from the ground state.  Sign convention: a static
    field lowers the energy, so ``chi_rr(0) > 0``.
    """
    evals, evecs = np.linalg.eigh(spin_hamiltonian(omega_x, omega_z))
    exc = evals - evals[0]
    if exc[1] <= 0:
        raise DegenerateSpinError("degenerate spin ground state")
    wp = as_wplus(w)
    ops = [evecs.conj().T @ PAULI[r] @ evecs for r in labels]
    n = len(labels)
    out = np.zeros(wp.shape + (n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            for k in range(1, len(exc)):
                a = ops[i][0, k] * ops[j][k, 0]
                b = ops[j][0, k] * ops[i][k, 0]
                out[..., i, j] += a / (exc[k] - wp) + b / (exc[k] + wp)
    return out
