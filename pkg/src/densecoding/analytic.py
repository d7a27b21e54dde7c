"""Closed-form capacities and control powers of the named state families.

Every function takes the real coefficients of its family and returns values
keyed by assignment ``(j, k, l)``.  These formulas are the oracle that the
numerical optimizer in :mod:`densecoding.control` is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .capacity import binary_entropy as h
from .errors import BadNormalization, NegativeCoefficient
from .states import ALL_ASSIGNMENTS, NORM_TOL

Assignment = tuple[int, int, int]
_ALL = tuple(a.as_tuple() for a in ALL_ASSIGNMENTS)


@dataclass(frozen=True)
class AnalyticResult:
    with_assist: dict[Assignment, float]
    without_assist: dict[Assignment, float]
    cp: dict[Assignment, float]
    mcp: float


def _check(coeffs, offset: float = 0.0) -> None:
    if any(c < 0 for c in coeffs):
        raise NegativeCoefficient(f"coefficients must be nonnegative, got {tuple(coeffs)}")
    total = offset + sum(c * c for c in coeffs)
    if abs(total - 1.0) > NORM_TOL:
        raise BadNormalization(f"sum of squared coefficients is {total!r}, expected 1")


def _tangle_entropy(l1sq: float, l3sq: float) -> float:
    """``h((1 + sqrt(1 - 4 l1^2 l3^2)) / 2)``."""
    return h((1.0 + math.sqrt(max(1.0 - 4.0 * l1sq * l3sq, 0.0))) / 2.0)


def eghz_analytic(l1: float, l2: float, l3: float) -> AnalyticResult:
    """Extended GHZ state ``l1|000> + l2|110> + l3|111>``."""
    _check((l1, l2, l3))
    a1, a3 = l1 * l1, l3 * l3
    ht = _tangle_entropy(a1, a3)
    h1 = h(a1)

    with_assist = {a: (1.0 + h1 if a[0] == 3 else 1.0 + ht) for a in _ALL}
    without_assist = {
        (3, 1, 2): 1.0 + h1 - ht, (3, 2, 1): 1.0 + h1 - ht,
        (1, 2, 3): 1.0 - h1 + ht, (2, 1, 3): 1.0 - h1 + ht,
        (2, 3, 1): 1.0, (1, 3, 2): 1.0,
    }
    cp = {a: with_assist[a] - without_assist[a] for a in _ALL}
    assert ht <= h1 + 1e-12, "closed-form ordering of the extended GHZ control powers violated"
    return AnalyticResult(with_assist, without_assist, cp, ht)


def gghz_analytic(l1: float, l3: float) -> AnalyticResult:
    """Generalized GHZ state ``l1|000> + l3|111>``."""
    _check((l1, l3))
    h1 = h(l1 * l1)
    return AnalyticResult(
        {a: 1.0 + h1 for a in _ALL},
        {a: 1.0 for a in _ALL},
        {a: h1 for a in _ALL},
        h1,
    )


def maximal_slice_analytic(l2: float, l3: float) -> float:
    """MCP of ``|000>/sqrt(2) + l2|110> + l3|111>``."""
    _check((l2, l3), offset=0.5)
    return h(min((1.0 + math.sqrt(2.0) * l2) / 2.0, 1.0))


def maximal_slice_full(l2: float, l3: float) -> AnalyticResult:
    """Per-assignment values for a maximal slice state (an extended GHZ member)."""
    _check((l2, l3), offset=0.5)
    l1 = math.sqrt(max(1.0 - l2 * l2 - l3 * l3, 0.0))
    res = eghz_analytic(l1, l2, l3)
    return AnalyticResult(res.with_assist, res.without_assist, res.cp,
                          maximal_slice_analytic(l2, l3))


def _weighted_h(x: float, y: float) -> float:
    """``(x + y) h(x / (x + y))``; zero when both weights vanish."""
    total = x + y
    if total <= 0.0:
        return 0.0
    return total * h(min(x / total, 1.0))


def gw_analytic(l1: float, l2: float, l3: float) -> AnalyticResult:
    """Generalized W state ``l1|100> + l2|010> + l3|001>``.

    The minimum control power is attained by the pair of qubits that
    excludes the largest squared coefficient.
    """
    _check((l1, l2, l3))
    sq = {1: l1 * l1, 2: l2 * l2, 3: l3 * l3}
    with_assist, without_assist, cp = {}, {}, {}
    for j, k, l in _ALL:
        with_assist[(j, k, l)] = 1.0 + _weighted_h(sq[k], sq[l])
        without_assist[(j, k, l)] = 1.0 + h(sq[l]) - h(sq[j])
        cp[(j, k, l)] = _weighted_h(sq[j], sq[k])
    largest = max(sq, key=sq.get)
    j, k = (q for q in (1, 2, 3) if q != largest)
    return AnalyticResult(with_assist, without_assist, cp, _weighted_h(sq[j], sq[k]))
