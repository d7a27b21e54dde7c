"""Small complex linear-algebra kernel for one to three qubits.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Qubit 1 is the
most significant bit of the basis ordering, so ``|q1 q2 q3>`` maps to index
``4*q1 + 2*q2 + q3``.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    NoConvergence,
    NotHermitian,
    ResultDimUnsupported,
)

SUPPORTED_DIMS = (2, 4, 8)
HERMITIAN_TOL = 1e-9
OFFDIAG_TOL = 1e-12
MAX_SWEEPS = 100

_PAIRS = {n: [(p, q) for p in range(n - 1) for q in range(p + 1, n)] for n in (1, 2, 4, 8)}


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a square complex array, validating its dimension."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] not in SUPPORTED_DIMS:
        raise DimensionMismatch(f"dimension {a.shape[0]} not in {SUPPORTED_DIMS}")
    return a


def hermiticity_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - np.conj(np.swapaxes(m, -1, -2))), initial=0.0))


def jacobi_sweeps(a: np.ndarray, vectors: bool = False, tol: float = OFFDIAG_TOL,
                  max_sweeps: int = MAX_SWEEPS):
    """Diagonalize a stack of Hermitian matrices with cyclic Jacobi rotations.

    ``a`` has shape ``(..., n, n)``.  Every matrix in the stack is rotated in
    lockstep until the largest off-diagonal Frobenius norm drops below ``tol``.

    Returns the unsorted diagonal (real, shape ``(..., n)``) and, when
    ``vectors`` is set, the accumulated unitary whose columns are the
    eigenvectors.
    """
    a = np.array(a, dtype=complex, copy=True)
    batch_shape = a.shape[:-2]
    n = a.shape[-1]
    a = a.reshape(-1, n, n)
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy() if vectors else None

    offmask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps + 1):
        off = np.sqrt(np.sum(np.abs(a[:, offmask]) ** 2, axis=1))
        if off.size == 0 or np.max(off) < tol:
            break
        for p, q in _PAIRS[n]:
            apq = a[:, p, q]
            mag = np.abs(apq)
            active = mag > 1e-280
            if not np.any(active):
                continue
            safe = np.where(active, mag, 1.0)
            e = np.where(active, apq / safe, 1.0)
            theta = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
            big = np.abs(theta) > 1e150
            t = np.where(big, 0.5 / np.where(big, theta, 1.0),
                         np.sign(theta + (theta == 0)) / (np.abs(theta) + np.hypot(theta, 1.0)))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            eb = np.conj(e)

            cp = a[:, :, p].copy()
            cq = a[:, :, q].copy()
            a[:, :, p] = c[:, None] * cp - (s * eb)[:, None] * cq
            a[:, :, q] = s[:, None] * cp + (c * eb)[:, None] * cq
            rp = a[:, p, :].copy()
            rq = a[:, q, :].copy()
            a[:, p, :] = c[:, None] * rp - (s * e)[:, None] * rq
            a[:, q, :] = s[:, None] * rp + (c * e)[:, None] * rq
            a[:, p, q] = 0.0
            a[:, q, p] = 0.0
            if vectors:
                vp = v[:, :, p].copy()
                vq = v[:, :, q].copy()
                v[:, :, p] = c[:, None] * vp - (s * eb)[:, None] * vq
                v[:, :, q] = s[:, None] * vp + (c * eb)[:, None] * vq
    else:
        raise NoConvergence(f"Jacobi iteration exceeded {max_sweeps} sweeps")

    w = np.diagonal(a, axis1=1, axis2=2).real.reshape(batch_shape + (n,))
    if vectors:
        return w, v.reshape(batch_shape + (n, n))
    return w


def hermitian_eigenvalues(m) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted in descending order.

    Parameters
    ----------
    m : array_like
        Square complex matrix of dimension 2, 4 or 8.

    Returns
    -------
    numpy.ndarray
        Real eigenvalues, largest first.

    Raises
    ------
    NotHermitian
        If ``max |m - m^H|`` exceeds 1e-9.
    NoConvergence
        If the Jacobi iteration runs out of sweeps.
    """
    a = as_matrix(m)
    err = hermiticity_error(a)
    if err > HERMITIAN_TOL:
        raise NotHermitian(f"matrix is not Hermitian (max |m - m^H| = {err:.3g})")
    a = 0.5 * (a + a.conj().T)
    w = jacobi_sweeps(a)
    return np.sort(w)[::-1]


def hermitian_eigh(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and matching eigenvector columns."""
    a = as_matrix(m)
    err = hermiticity_error(a)
    if err > HERMITIAN_TOL:
        raise NotHermitian(f"matrix is not Hermitian (max |m - m^H| = {err:.3g})")
    a = 0.5 * (a + a.conj().T)
    w, v = jacobi_sweeps(a, vectors=True)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def batch_eigenvalues(stack: np.ndarray) -> np.ndarray:
    """Eigenvalues of a stack ``(..., n, n)`` of Hermitian matrices, unsorted.

    No Hermiticity check; callers construct the stack themselves.
    """
    stack = np.asarray(stack, dtype=complex)
    if stack.shape[-1] == 1:
        return stack[..., 0].real
    herm = 0.5 * (stack + np.conj(np.swapaxes(stack, -1, -2)))
    return jacobi_sweeps(herm)


def eigenvalues_2x2(m) -> tuple[float, float]:
    """Closed form for a 2x2 Hermitian matrix (one exact Jacobi rotation).

    Returns ``(larger, smaller)``.  The smaller root is formed from the
    determinant to avoid cancellation when it is close to zero.
    """
    a = m[0][0].real
    d = m[1][1].real
    b = m[0][1]
    half_tr = 0.5 * (a + d)
    radius = math.hypot(0.5 * (a - d), abs(b))
    big = half_tr + radius
    det = a * d - abs(b) ** 2
    small = det / big if big > 0.0 else half_tr - radius
    return big, small


def _num_qubits(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or 2 ** n != dim:
        raise DimensionMismatch(f"dimension {dim} is not a power of two")
    return n


def partial_trace(m, keep: Sequence[int]) -> np.ndarray:
    """Trace out every qubit not listed in ``keep``.

    ``keep`` holds 1-based qubit indices.  The tensor factors of the result
    follow the order given in ``keep``, so ``keep=(3, 1)`` yields a matrix on
    qubits 3 and 1 with qubit 3 as the most significant bit.
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    n = _num_qubits(a.shape[0])
    keep = [int(k) for k in keep]
    if not keep or len(set(keep)) != len(keep) or any(k < 1 or k > n for k in keep):
        raise DimensionMismatch(f"invalid qubit selection {tuple(keep)} for {n} qubits")

    kept = [k - 1 for k in keep]
    traced = [q for q in range(n) if q not in kept]
    order = kept + traced
    t = a.reshape((2,) * (2 * n)).transpose(order + [q + n for q in order])
    dk, dt = 2 ** len(kept), 2 ** len(traced)
    return np.einsum("aibi->ab", t.reshape(dk, dt, dk, dt))


def tensor(a, b) -> np.ndarray:
    """Kronecker product, restricted to results of dimension 2, 4 or 8."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    out = np.kron(a, b)
    if out.shape[0] not in SUPPORTED_DIMS:
        raise ResultDimUnsupported(f"product dimension {out.shape[0]} not in {SUPPORTED_DIMS}")
    return out


def trace(m) -> complex:
    return complex(np.trace(np.asarray(m, dtype=complex)))


def projector(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
