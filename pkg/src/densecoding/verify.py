"""Self-check suites run by ``mcp verify``.

Each suite draws random states, compares the numerical pipeline with an
independent expectation, and reports the largest deviation it saw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import analytic, capacity, control, entanglement, states
from .states import ALL_ASSIGNMENTS

ORACLE_TOL = 1e-5
BOUNDS_TOL = 1e-7
TANGLE_TOL = 1e-6
BASIS_TOL = 1e-6
ENTROPY_TOL = 1e-9

FAMILIES = ("extended_ghz", "generalized_ghz", "maximal_slice", "generalized_w")

# assignments whose optimal controller basis is X for every extended GHZ state
EGHZ_X_OPTIMAL = tuple(a for a in ALL_ASSIGNMENTS if a.j in (1, 2))


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    max_deviation: float
    tolerance: float
    samples: int

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.name:<9} samples={self.samples:<6d} "
                f"max_dev={self.max_deviation:.3e} tol={self.tolerance:.0e}")


def _unit(rng: np.random.Generator, n: int) -> np.ndarray:
    x = np.abs(rng.standard_normal(n))
    return x / np.linalg.norm(x)


def random_member(family: str, rng: np.random.Generator):
    """Random state of a family and its closed-form result."""
    if family == "extended_ghz":
        lam = _unit(rng, 3)
        return states.extended_ghz(*lam), analytic.eghz_analytic(*lam)
    if family == "generalized_ghz":
        lam = _unit(rng, 2)
        return states.generalized_ghz(*lam), analytic.gghz_analytic(*lam)
    if family == "maximal_slice":
        lam = _unit(rng, 2) / math.sqrt(2.0)
        return states.maximal_slice(*lam), analytic.maximal_slice_full(*lam)
    if family == "generalized_w":
        lam = _unit(rng, 3)
        return states.generalized_w(*lam), analytic.gw_analytic(*lam)
    raise ValueError(f"no closed form for family {family!r}")


def oracle_deviation(psi, expected: analytic.AnalyticResult) -> float:
    report = control.minimal_control_power(psi)
    dev = abs(report.mcp - expected.mcp)
    for rec in report.records:
        a = rec.assignment.as_tuple()
        dev = max(dev, abs(rec.with_assist - expected.with_assist[a]),
                  abs(rec.without_assist - expected.without_assist[a]),
                  abs(rec.cp - expected.cp[a]))
    return dev


def suite_oracle(samples: int, rng: np.random.Generator) -> SuiteResult:
    dev = 0.0
    for family in FAMILIES:
        for _ in range(samples):
            dev = max(dev, oracle_deviation(*random_member(family, rng)))
    return SuiteResult("oracle", dev < ORACLE_TOL, dev, ORACLE_TOL, samples * len(FAMILIES))


def bounds_violation(report: control.ControlReport) -> float:
    values = [r.cp for r in report.records] + [report.mcp]
    return max(0.0, -min(values), max(values) - 1.0)


def suite_bounds(samples: int, rng: np.random.Generator) -> SuiteResult:
    dev = 0.0
    for _ in range(samples):
        dev = max(dev, bounds_violation(control.minimal_control_power(states.random_density(rng))))
        dev = max(dev, bounds_violation(control.minimal_control_power(states.random_pure_state(rng))))
    return SuiteResult("bounds", dev <= BOUNDS_TOL, dev, BOUNDS_TOL, 2 * samples)


def tangle_deviation(psi) -> float:
    tau = entanglement.three_tangle(psi)
    expected = capacity.binary_entropy((1.0 + math.sqrt(1.0 - tau)) / 2.0)
    return abs(control.minimal_control_power(psi).mcp - expected)


def suite_tangle(samples: int, rng: np.random.Generator) -> SuiteResult:
    dev = max(tangle_deviation(states.extended_ghz(*_unit(rng, 3))) for _ in range(samples))
    return SuiteResult("tangle", dev < TANGLE_TOL, dev, TANGLE_TOL, samples)


def basis_gap(psi, assignments, basis) -> float:
    """How far ``basis`` falls short of the optimized capacity."""
    gap = 0.0
    for a in assignments:
        best, _ = control.assisted_capacity(psi, a)
        gap = max(gap, best - control.avg_capacity(psi, a, basis))
    return gap


def suite_basis(samples: int, rng: np.random.Generator) -> SuiteResult:
    dev = 0.0
    for _ in range(samples):
        dev = max(dev, basis_gap(states.extended_ghz(*_unit(rng, 3)), EGHZ_X_OPTIMAL,
                                 control.MeasurementBasis(math.pi / 2, 0.0)))
        dev = max(dev, basis_gap(states.generalized_w(*_unit(rng, 3)), ALL_ASSIGNMENTS,
                                 control.MeasurementBasis(0.0, 0.0)))
    return SuiteResult("basis", dev < BASIS_TOL, dev, BASIS_TOL, 2 * samples)


def mixture_slack(rng: np.random.Generator, dim: int = 4) -> float:
    """Largest violation of the entropy mixing bounds and of coherent-info convexity.

    Draws ``p``, ``rho0``, ``rho1`` at random; a positive return value means an
    inequality failed by that much.
    """
    p = float(rng.uniform())
    r0 = states.random_density(rng, dim)
    r1 = states.random_density(rng, dim)
    mix = p * r0 + (1 - p) * r1
    s0, s1, sm = (capacity.von_neumann_entropy(r) for r in (r0, r1, mix))
    avg = p * s0 + (1 - p) * s1
    worst = max(avg - sm, sm - (avg + capacity.binary_entropy(p)))
    if dim == 4:
        i_avg = p * capacity.coherent_information(r0) + (1 - p) * capacity.coherent_information(r1)
        worst = max(worst, capacity.coherent_information(mix) - i_avg)
    return worst


def suite_entropy(samples: int, rng: np.random.Generator) -> SuiteResult:
    dev = max(0.0, max(mixture_slack(rng, dim=(2, 4, 8)[i % 3]) for i in range(samples)))
    return SuiteResult("entropy", dev <= ENTROPY_TOL, dev, ENTROPY_TOL, samples)


SUITES: dict[str, Callable[[int, np.random.Generator], SuiteResult]] = {
    "oracle": suite_oracle,
    "bounds": suite_bounds,
    "tangle": suite_tangle,
    "basis": suite_basis,
    "entropy": suite_entropy,
}

DEFAULT_SAMPLES = {"oracle": 200, "bounds": 100, "tangle": 100, "basis": 100, "entropy": 1000}


def run_suites(names=None, samples: int | None = None, seed: int = 0) -> list[SuiteResult]:
    names = list(SUITES) if names is None else list(names)
    results = []
    for name in names:
        # stream fixed per suite so a single suite reproduces the full run
        rng = np.random.default_rng([seed, list(SUITES).index(name)])
        n = samples if samples is not None else DEFAULT_SAMPLES[name]
        results.append(SUITES[name](n, rng))
    return results
