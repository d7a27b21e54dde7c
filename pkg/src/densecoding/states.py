"""Three-qubit state families, validation, qubit permutation and sampling.

Pure states are length-8 complex vectors indexed by ``|q1 q2 q3>`` (qubit 1
most significant); mixed states are 8x8 density matrices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import qmath
from .errors import (
    BadNormalization,
    InvalidPermutation,
    NegativeCoefficient,
    NotHermitian,
    NotPSD,
    ParseError,
)

NORM_TOL = 1e-10
PSD_TOL = 1e-8

# basis index of each ket label
KET = {f"{i:03b}": i for i in range(8)}

FAMILY_ARITY = {
    "extended_ghz": 3,
    "generalized_ghz": 2,
    "maximal_slice": 2,
    "generalized_w": 3,
    "extended_w": 4,
    "standard_ghz": 0,
    "standard_w": 0,
    "custom": 8,
}

# kets carrying each coefficient, in parameter order
_FAMILY_KETS = {
    "extended_ghz": ("000", "110", "111"),
    "generalized_ghz": ("000", "111"),
    "maximal_slice": ("110", "111"),
    "generalized_w": ("100", "010", "001"),
    "extended_w": ("000", "100", "010", "001"),
}

MEASURES = ("sphere", "simplex")


@dataclass(frozen=True)
class StateFamily:
    """A named state family together with its real coefficients."""

    tag: str
    params: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))


@dataclass(frozen=True)
class PartyAssignment:
    """Controller, sender and receiver qubit indices (1-based)."""

    j: int
    k: int
    l: int

    def __post_init__(self):
        if sorted((self.j, self.k, self.l)) != [1, 2, 3]:
            raise InvalidPermutation(f"({self.j},{self.k},{self.l}) is not a permutation of 1,2,3")

    @classmethod
    def parse(cls, label) -> "PartyAssignment":
        if isinstance(label, PartyAssignment):
            return label
        if isinstance(label, str):
            digits = [c for c in label if c.isdigit()]
            if len(digits) != 3:
                raise InvalidPermutation(f"cannot read assignment {label!r}")
            return cls(*(int(c) for c in digits))
        j, k, l = label
        return cls(int(j), int(k), int(l))

    @property
    def label(self) -> str:
        return f"{self.j}{self.k}{self.l}"

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.j, self.k, self.l)

    def mapped(self, perm: Sequence[int]) -> "PartyAssignment":
        """The assignment seen after ``permute_qubits(state, perm)``."""
        return PartyAssignment(perm[self.j - 1], perm[self.k - 1], perm[self.l - 1])

    def __iter__(self):
        return iter((self.j, self.k, self.l))

    def __lt__(self, other):
        return self.as_tuple() < other.as_tuple()


ALL_ASSIGNMENTS = tuple(
    PartyAssignment(j, k, l)
    for j in (1, 2, 3) for k in (1, 2, 3) for l in (1, 2, 3)
    if len({j, k, l}) == 3
)


def _check_coefficients(params: Sequence[float], offset: float = 0.0) -> None:
    if any(p < 0 for p in params):
        raise NegativeCoefficient(f"coefficients must be nonnegative, got {tuple(params)}")
    total = offset + sum(p * p for p in params)
    if abs(total - 1.0) > NORM_TOL:
        raise BadNormalization(f"sum of squared coefficients is {total!r}, expected 1")


def build(family: StateFamily) -> np.ndarray:
    """Amplitude vector of a member of one of the named families.

    ``maximal_slice`` takes the two free coefficients (of ``|110>`` and
    ``|111>``); the ``|000>`` coefficient is fixed at ``1/sqrt(2)``.
    ``custom`` takes eight real amplitudes.
    """
    tag = family.tag.replace("-", "_")
    params = family.params
    if tag not in FAMILY_ARITY:
        raise ParseError(f"unknown state family {family.tag!r}")
    if len(params) != FAMILY_ARITY[tag]:
        raise ParseError(f"family {tag} takes {FAMILY_ARITY[tag]} coefficients, got {len(params)}")

    psi = np.zeros(8, dtype=complex)
    if tag == "standard_ghz":
        psi[[0, 7]] = 1 / math.sqrt(2)
    elif tag == "standard_w":
        psi[[4, 2, 1]] = 1 / math.sqrt(3)
    elif tag == "custom":
        psi[:] = params
        norm = float(np.vdot(psi, psi).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise BadNormalization(f"state norm squared is {norm!r}, expected 1")
    elif tag == "maximal_slice":
        _check_coefficients(params, offset=0.5)
        psi[0] = 1 / math.sqrt(2)
        psi[[KET[k] for k in _FAMILY_KETS[tag]]] = params
    else:
        _check_coefficients(params)
        psi[[KET[k] for k in _FAMILY_KETS[tag]]] = params
    return psi


def basis_state(label: str) -> np.ndarray:
    """Computational basis vector, e.g. ``basis_state("101")``."""
    if label not in KET:
        raise ParseError(f"not a three-qubit basis label: {label!r}")
    v = np.zeros(8, dtype=complex)
    v[KET[label]] = 1.0
    return v


def standard_ghz() -> np.ndarray:
    return build(StateFamily("standard_ghz"))


def standard_w() -> np.ndarray:
    return build(StateFamily("standard_w"))


def extended_ghz(l1, l2, l3) -> np.ndarray:
    return build(StateFamily("extended_ghz", (l1, l2, l3)))


def generalized_ghz(l1, l3) -> np.ndarray:
    return build(StateFamily("generalized_ghz", (l1, l3)))


def maximal_slice(l2, l3) -> np.ndarray:
    return build(StateFamily("maximal_slice", (l2, l3)))


def generalized_w(l1, l2, l3) -> np.ndarray:
    return build(StateFamily("generalized_w", (l1, l2, l3)))


def extended_w(l0, l1, l2, l3) -> np.ndarray:
    return build(StateFamily("extended_w", (l0, l1, l2, l3)))


def as_pure_state(s) -> np.ndarray:
    psi = np.asarray(s, dtype=complex).reshape(-1)
    if psi.shape != (8,):
        raise ParseError(f"a pure three-qubit state has 8 amplitudes, got {psi.size}")
    norm = float(np.vdot(psi, psi).real)
    if abs(norm - 1.0) > NORM_TOL:
        raise BadNormalization(f"state norm squared is {norm!r}, expected 1")
    return psi


def density(s) -> np.ndarray:
    """Rank-one density matrix of a pure state vector."""
    return qmath.projector(s)


def is_pure_vector(state) -> bool:
    return np.ndim(state) == 1


def as_density(state) -> np.ndarray:
    """Density matrix of either a state vector or an 8x8 matrix."""
    if is_pure_vector(state):
        return density(state)
    return np.asarray(state, dtype=complex)


def validate_density(rho) -> np.ndarray:
    """Check an 8x8 matrix is Hermitian, unit trace and PSD (within 1e-8)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (8, 8):
        raise ParseError(f"a three-qubit density matrix is 8x8, got {rho.shape}")
    err = qmath.hermiticity_error(rho)
    if err > qmath.HERMITIAN_TOL:
        raise NotHermitian(f"density matrix is not Hermitian (max |m - m^H| = {err:.3g})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > NORM_TOL:
        raise BadNormalization(f"density matrix trace is {tr!r}, expected 1")
    lowest = qmath.hermitian_eigenvalues(rho)[-1]
    if lowest < -PSD_TOL:
        raise NotPSD(f"density matrix has eigenvalue {lowest:.3g} < 0")
    return 0.5 * (rho + rho.conj().T)


# --- permutations -----------------------------------------------------------

def _check_perm(perm: Sequence[int]) -> tuple[int, int, int]:
    try:
        perm = tuple(int(p) for p in perm)
    except (TypeError, ValueError):
        raise InvalidPermutation(f"invalid permutation {perm!r}") from None
    if sorted(perm) != [1, 2, 3]:
        raise InvalidPermutation(f"{perm} is not a permutation of (1, 2, 3)")
    return perm


def compose(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, int, int]:
    """Permutation ``outer o inner``: apply ``inner`` first."""
    outer, inner = _check_perm(outer), _check_perm(inner)
    return tuple(outer[inner[i] - 1] for i in range(3))


def permute_qubits(s, perm: Sequence[int]):
    """Relabel qubits: the qubit at position ``i`` moves to ``perm[i-1]``.

    Works on state vectors and on 8x8 density matrices.  An assignment
    ``(j, k, l)`` on the input corresponds to ``(perm[j-1], perm[k-1],
    perm[l-1])`` on the output.
    """
    perm = _check_perm(perm)
    src = [0, 1, 2]
    dst = [p - 1 for p in perm]
    a = np.asarray(s, dtype=complex)
    if a.ndim == 1:
        return np.moveaxis(a.reshape(2, 2, 2), src, dst).reshape(8)
    t = a.reshape((2,) * 6)
    t = np.moveaxis(t, src + [3, 4, 5], dst + [d + 3 for d in dst])
    return t.reshape(8, 8)


# --- sampling ---------------------------------------------------------------

def _index_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _draw_coefficients(rng: np.random.Generator, measure: str) -> np.ndarray:
    if measure == "sphere":
        x = np.abs(rng.standard_normal(4))
        return x / np.linalg.norm(x)
    if measure == "simplex":
        return np.sqrt(rng.dirichlet(np.ones(4)))
    raise ValueError(f"unknown sampling measure {measure!r}; choose from {MEASURES}")


def sample_extended_w_coefficients(seed: int, count: int, measure: str = "sphere",
                                   start: int = 0) -> np.ndarray:
    """Coefficients ``(l0, l1, l2, l3)`` of random extended-W states.

    Each index draws from its own generator seeded by ``(seed, index)``, so
    any slice ``[start, start + count)`` reproduces the same rows no matter
    how the work is split.

    ``measure="sphere"`` is uniform on the nonnegative orthant of the unit
    3-sphere; ``measure="simplex"`` makes the squared coefficients uniform on
    the probability simplex.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    out = np.empty((count, 4))
    for i in range(count):
        out[i] = _draw_coefficients(_index_rng(seed, start + i), measure)
    return out


def sample_extended_w(seed: int, count: int, measure: str = "sphere", start: int = 0) -> np.ndarray:
    """Random extended-W state vectors, shape ``(count, 8)``."""
    lam = sample_extended_w_coefficients(seed, count, measure, start)
    states = np.zeros((count, 8), dtype=complex)
    states[:, [KET[k] for k in _FAMILY_KETS["extended_w"]]] = lam
    return states


def random_pure_state(rng: np.random.Generator, dim: int = 8) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_density(rng: np.random.Generator, dim: int = 8, rank: int | None = None) -> np.ndarray:
    """Ginibre-ensemble density matrix of the given rank (random if omitted)."""
    if rank is None:
        rank = int(rng.integers(1, dim + 1))
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def random_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def biseparable_state(rng: np.random.Generator, single: int) -> np.ndarray:
    """Random pure state where qubit ``single`` is a product factor.

    The other two qubits share a random (generically entangled) pure state.
    """
    pair = random_pure_state(rng, 4)
    lone = random_pure_state(rng, 2)
    psi = np.kron(lone, pair)  # qubit order (single, a, b)
    others = [q for q in (1, 2, 3) if q != single]
    # position 1 -> single, 2 -> others[0], 3 -> others[1]
    return permute_qubits(psi, (single, others[0], others[1]))


# --- state documents --------------------------------------------------------

def _complex_entry(x) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in x):
        return complex(x[0], x[1])
    raise ParseError(f"expected a number or a [re, im] pair, got {x!r}")


def parse_state(document):
    """Validate a JSON state document and return a vector or 8x8 matrix.

    Accepted shapes::

        {"kind": "pure", "amplitudes": [[re, im], ...]}            # 8 entries
        {"kind": "mixed", "matrix": [[[re, im], ...], ...]}        # 8x8

    ``document`` may be a JSON string or an already-decoded mapping.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise ParseError("state document must be a JSON object")
    kind = document.get("kind")
    if kind == "pure":
        amps = document.get("amplitudes")
        if not isinstance(amps, list) or len(amps) != 8:
            raise ParseError("'amplitudes' must be a list of 8 entries")
        return as_pure_state([_complex_entry(a) for a in amps])
    if kind == "mixed":
        rows = document.get("matrix")
        if not isinstance(rows, list) or len(rows) != 8 or any(
                not isinstance(r, list) or len(r) != 8 for r in rows):
            raise ParseError("'matrix' must be an 8x8 nested list")
        rho = np.array([[_complex_entry(x) for x in r] for r in rows], dtype=complex)
        return validate_density(rho)
    raise ParseError(f"'kind' must be 'pure' or 'mixed', got {kind!r}")


def state_document(state) -> dict:
    """Inverse of :func:`parse_state`."""
    a = np.asarray(state, dtype=complex)
    if a.ndim == 1:
        return {"kind": "pure", "amplitudes": [[float(z.real), float(z.imag)] for z in a]}
    return {"kind": "mixed",
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in a]}


def mixture(states: Iterable[np.ndarray], weights: Iterable[float]) -> np.ndarray:
    return sum(w * as_density(s) for s, w in zip(states, weights))
