"""Closed-form extremal numbers, evaluated exactly.

Integer formulas use Python integers throughout, so no value overflows.
Values outside the range where the formula is known to hold are still
returned, tagged with a ``flag`` describing the range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

PROVEN = "proven"
MOON_RANGE = "valid-per-moon-below-stated-range"
UNPROVEN = "unproven-range"


@dataclass(frozen=True)
class FormulaValue:
    name: str
    params: dict
    value: int | Fraction | float
    flag: str = PROVEN
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        v = self.value
        if isinstance(v, Fraction):
            v = str(v) if v.denominator != 1 else v.numerator
        return {"name": self.name, "params": self.params, "value": v, "flag": self.flag, **self.extra}


def _ex_tc3_value(n: int, t: int) -> int:
    m = n - t + 1
    return math.comb(t - 1, 2) + (t - 1) * m + m * m // 4


def ex_tc3_range_flag(n: int, t: int) -> str:
    if n >= (19 * t - 9) // 2:
        return PROVEN
    if 2 * n > 9 * t - 11:
        return MOON_RANGE
    return UNPROVEN


def ex_tC3(n: int, t: int) -> FormulaValue:
    """Maximum edges of an n-vertex graph without t disjoint triangles."""
    if t < 1 or n < t:
        raise ValueError(f"ex_tC3 needs n >= t >= 1, got n={n}, t={t}")
    return FormulaValue("ex-tc3", {"n": n, "t": t}, _ex_tc3_value(n, t), ex_tc3_range_flag(n, t))


def erdos_moon_edges(n: int, t: int) -> int:
    """Edge count of K_{t-1} + T(n-t+1, 2), counted part by part."""
    if t < 1 or n < t:
        raise ValueError(f"need n >= t >= 1, got n={n}, t={t}")
    m = n - t + 1
    return math.comb(t - 1, 2) + (m * m) // 4 + (t - 1) * m


def chvatal_hanson(nu: int, delta: int) -> FormulaValue:
    """Maximum edges with matching number <= nu and maximum degree <= delta."""
    if nu < 1 or delta < 1:
        raise ValueError("nu and delta must be at least 1")
    value = delta * nu + (delta // 2) * (nu // -(-delta // 2))
    if value > nu * (delta + 1):
        raise AssertionError(f"f({nu},{delta})={value} exceeds nu*(delta+1)")
    return FormulaValue("chvatal-hanson", {"nu": nu, "delta": delta}, value)


def erdos_gallai_path_bound(n: int, l: int) -> FormulaValue:
    """Upper bound (l-2)n/2 on edges of an n-vertex graph with no path on l vertices."""
    if not n >= l >= 2:
        raise ValueError(f"need n >= l >= 2, got n={n}, l={l}")
    return FormulaValue(
        "erdos-gallai-path",
        {"n": n, "l": l},
        Fraction((l - 2) * n, 2),
        extra={"equality_attainable": path_bound_attained(n, l)},
    )


def path_bound_attained(n: int, l: int) -> bool:
    """Equality needs n to split into disjoint copies of K_{l-1}."""
    return n % (l - 1) == 0


def even_cycle_bound(n: int, l: int) -> FormulaValue:
    """Upper bound (l-1) n (n^(1/l) + 16) on edges of a C_{2l}-free graph."""
    if l < 2 or n < 1:
        raise ValueError("need l >= 2 and n >= 1")
    root = round(n ** (1 / l))
    nth = float(root) if root**l == n else n ** (1 / l)
    return FormulaValue("even-cycle", {"n": n, "l": l}, (l - 1) * n * (nth + 16))


def theorem11_threshold(t: int, l: int) -> int:
    """Order from which K_{t-1} + T(n-t+1, 2) is the unique tC_{2l+1} extremal graph."""
    if t < 2 or l < 2:
        raise ValueError("threshold defined for t, l >= 2")
    a = 8 * t * l + 4 * l + 3 * t - 6
    return a * a // (4 * (t // 2)) + 8 * t * l + 4 * t + 4 * l - 5


def peel_threshold(t: int, k: int) -> int:
    """Minimum order for which min-degree peeling cannot run down to k vertices."""
    return (k - t) ** 2 // (4 * ((t + 1) // 2)) + k + 1


def growth_threshold(t: int, l: int) -> int:
    """Minimum order under which the layered odd-cycle growth is guaranteed."""
    return 8 * t * l + 4 * l + 4 * t - 6


def degree_square_bound(n: int, lam: int) -> int:
    """2 lam n^2: strict upper bound on the sum of squared degrees."""
    return 2 * lam * n * n


def edge_power_bound(n: int, l: int) -> float:
    """l n^(1 + 1/l): upper bound on edges of a tC_{2l}-free extremal graph."""
    return l * n ** (1 + 1 / l)


FORMULAS = {
    "ex-tc3": (ex_tC3, ("n", "t")),
    "erdos-moon-edges": (lambda n, t: FormulaValue("erdos-moon-edges", {"n": n, "t": t}, erdos_moon_edges(n, t), ex_tc3_range_flag(n, t)), ("n", "t")),
    "chvatal-hanson": (chvatal_hanson, ("nu", "delta")),
    "erdos-gallai-path": (erdos_gallai_path_bound, ("n", "l")),
    "even-cycle": (even_cycle_bound, ("n", "l")),
    "theorem11-threshold": (lambda t, l: FormulaValue("theorem11-threshold", {"t": t, "l": l}, theorem11_threshold(t, l)), ("t", "l")),
}
