"""Control power of controlled dense coding for three-qubit states.

A controller measures one qubit and announces the outcome; the other two
parties then run dense coding.  The package computes the dense coding
capacity with and without that help, the control power (CP) for each of
the six role assignments, and the minimum control power (MCP).
"""

from .analytic import eghz_analytic, gghz_analytic, gw_analytic, maximal_slice_analytic
from .capacity import binary_entropy, coherent_information, dc_capacity, von_neumann_entropy
from .control import (
    ControlReport,
    MeasurementBasis,
    assisted_capacity,
    avg_capacity,
    control_power,
    measure_controller,
    minimal_control_power,
    unassisted_capacity,
)
from .entanglement import concurrence, three_tangle
from .errors import DenseCodingError
from .qmath import hermitian_eigenvalues, partial_trace, tensor
from .states import ALL_ASSIGNMENTS, PartyAssignment, StateFamily, build, permute_qubits

__version__ = "0.1.0"

__all__ = [
    "ALL_ASSIGNMENTS", "ControlReport", "DenseCodingError", "MeasurementBasis",
    "PartyAssignment", "StateFamily", "assisted_capacity", "avg_capacity", "binary_entropy",
    "build", "coherent_information", "concurrence", "control_power", "dc_capacity",
    "eghz_analytic", "gghz_analytic", "gw_analytic", "hermitian_eigenvalues",
    "maximal_slice_analytic", "measure_controller", "minimal_control_power", "partial_trace",
    "permute_qubits", "tensor", "three_tangle", "unassisted_capacity", "von_neumann_entropy",
]
