"""Controlled dense coding: the controller's measurement, control power and MCP.

A state is either a length-8 vector (pure) or an 8x8 density matrix.  Pure
inputs take an exact shortcut: after a rank-one measurement the sender and
receiver share a pure state, so its capacity is ``1 + S(receiver)`` and only
a 2x2 spectrum is needed.  Matrix inputs go through the compiled Jacobi
kernel.  :func:`measure_controller` and :func:`avg_capacity` are the plain
reference route built on :mod:`qmath` and :mod:`capacity`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels, qmath
from .capacity import SNAP, dc_capacity
from .errors import OptimizerFailure, ParseError
from .states import (
    ALL_ASSIGNMENTS,
    PartyAssignment,
    as_density,
    as_pure_state,
    is_pure_vector,
    validate_density,
)

GRID = 64
N_STARTS = 3
NM_XTOL = 1e-9
NM_MAX_ITER = 500
ZERO_PROB = 1e-12
TIE_TOL = 1e-9
# canonical bases always scored next to the grid: computational and X
ANCHORS = ((0.0, 0.0), (math.pi / 2, 0.0))

TWO_PI = 2.0 * math.pi


class MeasurementBasis(NamedTuple):
    """Orthonormal qubit basis on the Bloch sphere.

    ``b0 = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`` and
    ``b1 = sin(theta/2)|0> - e^{i phi} cos(theta/2)|1>``.
    """

    theta: float
    phi: float

    def vectors(self) -> tuple[np.ndarray, np.ndarray]:
        c, s = math.cos(self.theta / 2), math.sin(self.theta / 2)
        e = cmath.exp(1j * self.phi)
        return np.array([c, e * s]), np.array([s, -e * c])

    def normalized(self) -> "MeasurementBasis":
        """Same projectors with ``theta`` in [0, pi] and ``phi`` in [0, 2 pi)."""
        theta, phi = self.theta % TWO_PI, self.phi
        if theta > math.pi:
            theta, phi = TWO_PI - theta, phi + math.pi
        phi = phi % TWO_PI
        if phi >= TWO_PI:  # tiny negative phi rounds up to exactly 2 pi
            phi = 0.0
        return MeasurementBasis(float(theta), float(phi))


@dataclass(frozen=True)
class MeasurementOutcome:
    probability: float
    post_state: np.ndarray | None  # None when the outcome never occurs

    @property
    def absent(self) -> bool:
        return self.post_state is None


def _basis_vectors(basis) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(basis, MeasurementBasis):
        return basis.vectors()
    if isinstance(basis, tuple) and len(basis) == 2 and np.ndim(basis[0]) == 0:
        return MeasurementBasis(*basis).vectors()
    u = np.asarray(basis, dtype=complex)
    if u.shape != (2, 2):
        raise ParseError("a measurement is a MeasurementBasis or a 2x2 unitary")
    if np.max(np.abs(u @ u.conj().T - np.eye(2))) > 1e-9:
        raise ParseError("measurement matrix is not unitary")
    # outcome i projects onto U^dagger|i>
    return u[0].conj(), u[1].conj()


def _assignment_blocks(rho: np.ndarray, a: PartyAssignment) -> np.ndarray:
    """``blocks[x, y]`` = 4x4 (k, l) block of ``rho`` at controller indices x, y."""
    j, k, l = a
    t = rho.reshape((2,) * 6).transpose(j - 1, k - 1, l - 1, j + 2, k + 2, l + 2)
    return np.ascontiguousarray(t.reshape(2, 4, 2, 4).transpose(0, 2, 1, 3))


def measure_controller(state, a, basis) -> tuple[MeasurementOutcome, MeasurementOutcome]:
    """Projective measurement of the controller qubit.

    Parameters
    ----------
    state : array_like
        Length-8 vector or 8x8 density matrix.
    a : PartyAssignment or label
        ``(j, k, l)``: controller, sender, receiver.
    basis : MeasurementBasis, (theta, phi) or 2x2 unitary
        With a unitary ``U`` outcome ``i`` has probability
        ``<i|U rho_j U^dagger|i>``.

    Returns
    -------
    tuple of MeasurementOutcome
        Post-measurement states are 4x4, ordered (sender, receiver).
        Outcomes with probability below 1e-12 carry ``post_state=None``.
    """
    a = PartyAssignment.parse(a)
    blocks = _assignment_blocks(as_density(state), a)
    outcomes = []
    for b in _basis_vectors(basis):
        sigma = np.einsum("x,xyij,y->ij", b.conj(), blocks, b)
        p = float(np.trace(sigma).real)
        if p < ZERO_PROB:
            outcomes.append(MeasurementOutcome(max(p, 0.0), None))
        else:
            post = sigma / p
            outcomes.append(MeasurementOutcome(p, 0.5 * (post + post.conj().T)))
    return tuple(outcomes)


def avg_capacity(state, a, basis) -> float:
    """Outcome-weighted capacity after the controller measures in ``basis``."""
    return sum(o.probability * dc_capacity(o.post_state)
               for o in measure_controller(state, a, basis) if not o.absent)


# --- optimizer ---------------------------------------------------------------

def _h(x: float) -> float:
    if x <= SNAP:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


_NO_BLOCKS = np.zeros((2, 2, 4, 4), dtype=complex)
_NO_AMPS = np.zeros((2, 4), dtype=complex)


class Objective:
    """Average capacity as a function of ``(theta, phi)`` for one assignment.

    Pure vectors use the closed form for pure post-measurement states; 8x8
    matrices diagonalize each 4x4 post state.
    """

    def __init__(self, state, a):
        a = PartyAssignment.parse(a)
        j, k, l = a
        self.pure = is_pure_vector(state)
        if self.pure:
            t = np.asarray(state, dtype=complex).reshape(2, 2, 2).transpose(j - 1, k - 1, l - 1)
            self.amps = np.ascontiguousarray(t.reshape(2, 4))
            self.blocks = _NO_BLOCKS
        else:
            self.amps = _NO_AMPS
            self.blocks = _assignment_blocks(np.asarray(state, dtype=complex), a)

    def __call__(self, theta: float, phi: float) -> float:
        return _kernels.evaluate(self.pure, self.amps, self.blocks, float(theta), float(phi))

    def grid(self, thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
        return _kernels.evaluate_grid(self.pure, self.amps, self.blocks,
                                      np.asarray(thetas, dtype=float), np.asarray(phis, dtype=float))

    def polish(self, theta: float, phi: float, steps: Sequence[float],
               xtol: float = NM_XTOL, max_iter: int = NM_MAX_ITER):
        """Nelder-Mead ascent from ``(theta, phi)``.

        Returns ``(theta, phi, value, iterations)``.
        """
        return _kernels.maximize_nm(self.pure, self.amps, self.blocks, float(theta), float(phi),
                                    float(steps[0]), float(steps[1]), xtol, max_iter)


def _maximize(objective: Objective, grid: int = GRID, starts: int = N_STARTS):
    thetas = np.linspace(0.0, math.pi, grid)
    phis = np.linspace(0.0, TWO_PI, grid, endpoint=False)
    values = objective.grid(thetas, phis).reshape(-1)
    points = np.stack(np.meshgrid(thetas, phis, indexing="ij"), axis=-1).reshape(-1, 2)
    points = np.vstack([points, ANCHORS])
    values = np.concatenate([values, [objective(*p) for p in ANCHORS]])

    ranked = np.argsort(-values, kind="stable")
    best_x, best_f = tuple(points[ranked[0]]), float(values[ranked[0]])
    steps = (math.pi / (grid - 1), TWO_PI / grid)
    for idx in ranked[:starts]:
        theta, phi, fx, _ = objective.polish(*points[idx], steps)
        if fx > best_f:
            best_x, best_f = (theta, phi), float(fx)
    if not np.isfinite(best_f):
        raise OptimizerFailure("measurement optimization produced a non-finite capacity")
    return best_f, MeasurementBasis(float(best_x[0]), float(best_x[1])).normalized()


def assisted_capacity(state, a, *, grid: int = GRID, starts: int = N_STARTS):
    """Controller-assisted capacity: the best average capacity over bases.

    A ``grid x grid`` scan over ``(theta, phi)`` plus the computational and X
    bases, followed by Nelder-Mead polishing from the ``starts`` best points.

    Returns ``(capacity, basis)``.
    """
    a = PartyAssignment.parse(a)
    return _maximize(Objective(state, a), grid, starts)


def _single_qubit_entropy(rho2) -> float:
    big, small = qmath.eigenvalues_2x2(rho2)
    return _h(min(max(small, 0.0), 0.5)) if big <= 1.0 + SNAP else _h(0.0)


def unassisted_capacity(state, a) -> float:
    """Capacity of the sender-receiver marginal, ordered (k, l)."""
    a = PartyAssignment.parse(a)
    if is_pure_vector(state):
        # pure global state: S(rho_kl) = S(rho_j)
        t = np.asarray(state, dtype=complex).reshape(2, 2, 2)
        t_l = np.moveaxis(t, a.l - 1, 0).reshape(2, 4)
        t_j = np.moveaxis(t, a.j - 1, 0).reshape(2, 4)
        return (1.0 + _single_qubit_entropy(t_l @ t_l.conj().T)
                - _single_qubit_entropy(t_j @ t_j.conj().T))
    rho_kl = qmath.partial_trace(np.asarray(state, dtype=complex), (a.k, a.l))
    return float(_kernels.dc_capacity(np.ascontiguousarray(rho_kl)))


def control_power(state, a) -> float:
    """Assisted minus unassisted capacity for one assignment."""
    return assisted_capacity(state, a)[0] - unassisted_capacity(state, a)


@dataclass(frozen=True)
class AssignmentRecord:
    assignment: PartyAssignment
    with_assist: float
    without_assist: float
    cp: float
    optimal_basis: MeasurementBasis

    def to_dict(self) -> dict:
        return {
            "jkl": self.assignment.label,
            "c_with": self.with_assist,
            "c_without": self.without_assist,
            "cp": self.cp,
            "theta": self.optimal_basis.theta,
            "phi": self.optimal_basis.phi,
        }


@dataclass(frozen=True)
class ControlReport:
    records: tuple[AssignmentRecord, ...]
    mcp: float
    argmin: PartyAssignment
    extras: dict = field(default_factory=dict, compare=False)

    def record(self, a) -> AssignmentRecord:
        a = PartyAssignment.parse(a)
        for r in self.records:
            if r.assignment == a:
                return r
        raise KeyError(a.label)

    @property
    def argmin_record(self) -> AssignmentRecord:
        return self.record(self.argmin)

    def to_dict(self) -> dict:
        out = {
            "assignments": [r.to_dict() for r in self.records],
            "mcp": self.mcp,
            "argmin": self.argmin.label,
        }
        out.update(self.extras)
        return out


def minimal_control_power(state, *, grid: int = GRID, starts: int = N_STARTS) -> ControlReport:
    """Control power for all six assignments and their minimum.

    Ties for the minimum (within 1e-9) go to the lexicographically smallest
    ``(j, k, l)``.
    """
    pure = is_pure_vector(state)
    state = as_pure_state(state) if pure else validate_density(state)
    cache: dict[int, tuple[float, MeasurementBasis]] = {}
    records = []
    for a in ALL_ASSIGNMENTS:
        # pure post-measurement states give the same capacity for (j,k,l) and (j,l,k)
        if pure and a.j in cache:
            c_with, basis = cache[a.j]
        else:
            c_with, basis = assisted_capacity(state, a, grid=grid, starts=starts)
            cache[a.j] = (c_with, basis)
        c_without = unassisted_capacity(state, a)
        records.append(AssignmentRecord(a, c_with, c_without, c_with - c_without, basis))
    mcp = min(r.cp for r in records)
    argmin = next(r.assignment for r in records if r.cp <= mcp + TIE_TOL)
    return ControlReport(tuple(records), mcp, argmin)
