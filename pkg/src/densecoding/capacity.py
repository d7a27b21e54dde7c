"""Entropies and the dense-coding capacity of a shared two-qubit state.

All quantities are in bits.  This module owns the clamping policy: a
probability or eigenvalue within ``SNAP`` of 0 or 1 is snapped to the
boundary before any logarithm is taken.
"""

from __future__ import annotations

import math

import numpy as np

from . import qmath
from .errors import DomainError, NotPSD

SNAP = 1e-12
NEGATIVE_EIGEN_TOL = 1e-10


def binary_entropy(x: float) -> float:
    """Shannon entropy of a two-outcome distribution ``(x, 1 - x)``."""
    x = float(x)
    if not (-SNAP <= x <= 1.0 + SNAP) or math.isnan(x):
        raise DomainError(f"binary entropy needs x in [0, 1], got {x!r}")
    if x <= SNAP or x >= 1.0 - SNAP:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def entropy_of_spectrum(eigenvalues) -> float:
    """``-sum(p log2 p)`` over a spectrum, with zero-clamping.

    Eigenvalues in ``[-1e-10, 1e-12]`` count as zero; anything more negative
    means the input was not positive semidefinite.
    """
    w = np.asarray(eigenvalues, dtype=float)
    if w.size and w.min() < -NEGATIVE_EIGEN_TOL:
        raise NotPSD(f"spectrum has eigenvalue {w.min():.3g} < 0")
    w = w[w > SNAP]
    return float(-np.sum(w * np.log2(w))) + 0.0


def von_neumann_entropy(rho) -> float:
    """``S(rho) = -Tr rho log2 rho`` from the Jacobi spectrum."""
    return entropy_of_spectrum(qmath.hermitian_eigenvalues(rho))


def _check_two_qubit(rho) -> np.ndarray:
    rho = qmath.as_matrix(rho)
    if rho.shape != (4, 4):
        raise DomainError(f"expected a 4x4 two-qubit matrix, got {rho.shape}")
    return rho


def coherent_information(rho_ab) -> float:
    """``S(rho_B) - S(rho_AB)`` where B is the second tensor factor."""
    rho_ab = _check_two_qubit(rho_ab)
    return von_neumann_entropy(qmath.partial_trace(rho_ab, (2,))) - von_neumann_entropy(rho_ab)


def dc_capacity(rho_ab) -> float:
    """Dense-coding capacity ``1 + S(rho_B) - S(rho_AB)`` in bits.

    The first tensor factor belongs to the sender, the second to the
    receiver.  Values below 1 are possible for strongly mixed states.
    """
    return 1.0 + coherent_information(rho_ab)
