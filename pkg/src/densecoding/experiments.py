"""Parameter sweeps and random-state experiments, plus their CSV output."""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import states
from .control import minimal_control_power

SWEEP_HEADER = ("lambda1sq", "c_with", "c_without", "mcp")
RANDOM_HEADER = ("lambda0sq", "lambda1sq", "lambda2sq", "lambda3sq", "mcp", "argmin")
CURVE_A_HEADER = ("lambda0sq", "mcp")
CURVE_B_HEADER = ("lambda1sq", "mcp")


def fmt(x: float) -> str:
    """Fixed 9 significant digits, locale independent.

    Round-off residue below 1e-13 is written as 0.
    """
    x = float(x)
    if abs(x) < 1e-13:
        x = 0.0
    return format(x, ".9g")


def worker_count(threads: int | None = None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("MCP_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def parallel_map(fn: Callable, items: Sequence, threads: int | None = None) -> list:
    """``[fn(x) for x in items]``, fanned out over processes, in input order."""
    n = worker_count(threads)
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * n))
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _mcp_summary(psi: np.ndarray) -> tuple[float, str, float, float]:
    report = minimal_control_power(psi)
    rec = report.argmin_record
    return report.mcp, report.argmin.label, rec.with_assist, rec.without_assist


# --- generalized GHZ sweep ---------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    lambda1sq: float
    c_with: float
    c_without: float
    mcp: float
    argmin: str

    def cells(self) -> list[str]:
        return [fmt(self.lambda1sq), fmt(self.c_with), fmt(self.c_without), fmt(self.mcp)]


def _gghz_state(x: float) -> np.ndarray:
    return states.generalized_ghz(math.sqrt(x), math.sqrt(1.0 - x))


def gghz_sweep(grid: int, threads: int | None = None) -> list[SweepRow]:
    """Capacities and MCP of generalized GHZ states at ``lambda1^2 = i / grid``."""
    if grid < 2:
        raise ValueError("grid must be at least 2")
    xs = [i / grid for i in range(grid + 1)]
    results = parallel_map(_mcp_summary, [_gghz_state(x) for x in xs], threads)
    return [SweepRow(x, cw, cwo, m, arg) for x, (m, arg, cw, cwo) in zip(xs, results)]


# --- extended W experiment ---------------------------------------------------

def curve_a_state(lambda0sq: float) -> np.ndarray:
    """Extended W state with ``l1 = l2 = l3`` at the given ``l0^2``."""
    r = math.sqrt(max(1.0 - lambda0sq, 0.0) / 3.0)
    return states.extended_w(math.sqrt(lambda0sq), r, r, r)


def curve_b_state(lambda1sq: float) -> np.ndarray:
    """Extended W state with ``l0 = 0`` and ``l2 = l3`` at the given ``l1^2``."""
    r = math.sqrt(max(1.0 - lambda1sq, 0.0) / 2.0)
    return states.extended_w(0.0, math.sqrt(lambda1sq), r, r)


def _curve_a_value(x: float) -> float:
    return minimal_control_power(curve_a_state(x)).mcp


def _curve_b_value(x: float) -> float:
    return minimal_control_power(curve_b_state(x)).mcp


def boundary_curve(which: str, xs: Iterable[float], threads: int | None = None) -> np.ndarray:
    fn = {"a": _curve_a_value, "b": _curve_b_value}[which]
    return np.asarray(parallel_map(fn, [float(x) for x in xs], threads))


@dataclass
class RandomEWResult:
    coefficients: np.ndarray  # (count, 4): l0..l3
    mcp: np.ndarray
    argmin: list[str]

    @property
    def squared(self) -> np.ndarray:
        return self.coefficients ** 2

    def rows(self) -> list[list[str]]:
        return [[fmt(v) for v in sq] + [fmt(m), arg]
                for sq, m, arg in zip(self.squared, self.mcp, self.argmin)]


def random_extended_w(count: int, seed: int, measure: str = "sphere",
                      threads: int | None = None) -> RandomEWResult:
    """MCP of ``count`` random extended W states drawn with the given measure."""
    coeffs = states.sample_extended_w_coefficients(seed, count, measure)
    psis = [states.extended_w(*c) for c in coeffs]
    results = parallel_map(_mcp_summary, psis, threads)
    return RandomEWResult(coeffs, np.array([r[0] for r in results]), [r[1] for r in results])


def boundary_excess(result: RandomEWResult, threads: int | None = None):
    """``mcp - curve`` at each sample's own ``l0^2`` (curve a) and ``l1^2`` (curve b)."""
    sq = result.squared
    excess_a = result.mcp - boundary_curve("a", sq[:, 0], threads)
    excess_b = result.mcp - boundary_curve("b", sq[:, 1], threads)
    return excess_a, excess_b


# --- files -------------------------------------------------------------------

def write_csv(path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def curve_paths(out) -> tuple[Path, Path]:
    out = Path(out)
    return (out.with_name(f"{out.stem}_curve_a{out.suffix or '.csv'}"),
            out.with_name(f"{out.stem}_curve_b{out.suffix or '.csv'}"))
