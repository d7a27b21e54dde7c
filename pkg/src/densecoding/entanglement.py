"""Wootters concurrence and the three-tangle of pure three-qubit states."""

from __future__ import annotations

import numpy as np

from . import qmath
from .capacity import SNAP
from .errors import DomainError, NotPure
from .states import as_density

PURITY_TOL = 1e-8
SPECTRUM_FLOOR = 1e-14

_YY = np.kron(qmath.PAULI_Y, qmath.PAULI_Y)


def _sqrt_psd(rho: np.ndarray) -> np.ndarray:
    w, v = qmath.hermitian_eigh(rho)
    # round-off eigenvalues of a rank-deficient rho would enter as sqrt(1e-16) = 1e-8
    w = np.where(w > SNAP, w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def concurrence(rho_ab) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    Uses the Hermitian matrix ``sqrt(rho) rho~ sqrt(rho)``, whose spectrum
    equals that of ``rho rho~`` with ``rho~ = (Y x Y) rho* (Y x Y)``.
    """
    rho = qmath.as_matrix(rho_ab)
    if rho.shape != (4, 4):
        raise DomainError(f"concurrence needs a 4x4 matrix, got {rho.shape}")
    root = _sqrt_psd(0.5 * (rho + rho.conj().T))
    flipped = _YY @ rho.conj() @ _YY
    mu = qmath.hermitian_eigenvalues(root @ flipped @ root)
    # zero eigenvalues come back as +-1e-17; their square roots would bias C by 1e-8
    r = np.sqrt(np.where(mu > SPECTRUM_FLOOR, mu, 0.0))
    return float(min(max(r[0] - r[1] - r[2] - r[3], 0.0), 1.0))


def _pure_density(s) -> np.ndarray:
    rho = as_density(s)
    if rho.shape != (8, 8):
        raise DomainError(f"expected a three-qubit state, got shape {rho.shape}")
    if np.ndim(s) == 2:
        second = qmath.hermitian_eigenvalues(rho)[1]
        if second > PURITY_TOL:
            raise NotPure(f"state is mixed (second eigenvalue {second:.3g})")
    return rho


def three_tangle(s, j: int = 1) -> float:
    """Residual tangle ``C^2_{j(kl)} - C^2_{jk} - C^2_{jl}``, clamped to [0, 1].

    Raises :class:`NotPure` for a density matrix with a second eigenvalue
    above 1e-8.
    """
    rho = _pure_density(s)
    k, l = (q for q in (1, 2, 3) if q != j)
    # C^2_{j(kl)} = 4 det(rho_j) for a pure state
    one_vs_rest = 4.0 * np.linalg.det(qmath.partial_trace(rho, (j,))).real
    tau = (one_vs_rest - concurrence(qmath.partial_trace(rho, (j, k))) ** 2
           - concurrence(qmath.partial_trace(rho, (j, l))) ** 2)
    return float(min(max(tau, 0.0), 1.0))
