"""Power moments of the enumerated distribution against the published five-equation moment system."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .code import WeightDistribution, five_weights
from .errors import ParameterError


def power_sum(dist: WeightDistribution, r: int) -> int:
    """sum over nonzero weights w of w^r * A_w."""
    if not 0 <= r <= 4:
        raise ParameterError("power sums are defined here for 0 <= r <= 4")
    return sum(w ** r * c for w, c in dist.counts.items() if w)


def binary_length(m: int) -> int:
    return (1 << (m + 1)) * ((1 << m) - 1)


def claimed_dual_counts(m: int) -> tuple[int, int]:
    """Published dual counts (A_2^perp, A_4^perp) = (3(2^m - 1)2^m, (2^m - 1)2^(2m+2))."""
    return 3 * ((1 << m) - 1) * (1 << m), ((1 << m) - 1) << (2 * m + 2)


def system_rhs(m: int, a2d: int, a4d: int) -> list[Fraction]:
    """Right-hand sides of the five published equations, n the binary length."""
    n = binary_length(m)
    k = 4 * m
    rhs = [
        Fraction(2 ** k - 1),
        Fraction(2 ** (k - 1) * n),
        Fraction(2 ** (k - 2) * (n * (n + 1) + 2 * a2d)),
        Fraction(2 ** (k - 3) * (n * n * (n + 3) + 6 * n * a2d)),
        Fraction(
            2 ** (k - 4)
            * (n * (n + 1) * (n * n + 5 * n - 2) + 4 * (3 * n * n + 3 * n - 4) * a2d + 24 * a4d)
        ),
    ]
    return rhs


def paper_system_residuals(dist: WeightDistribution, a2d: int, a4d: int, m: int) -> list[int]:
    """Left minus right for each published equation, with enumerated frequencies substituted."""
    ws = five_weights(m)
    extra = set(dist.support()) - set(ws)
    if extra:
        raise ParameterError(f"distribution has weights {sorted(extra)} outside the five-weight set")
    rhs = system_rhs(m, a2d, a4d)
    out = []
    for r in range(5):
        lhs = sum(w ** r * dist[w] for w in ws)
        diff = lhs - rhs[r]
        if diff.denominator != 1:
            raise ArithmeticError("integer system produced a fraction")
        out.append(int(diff))
    return out


def solve_exact(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Gauss-Jordan over the rationals; raises on a singular matrix."""
    size = len(rhs)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(size):
        piv = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


def moment_matrix(m: int) -> list[list[Fraction]]:
    ws = five_weights(m)
    return [[Fraction(w) ** r for w in ws] for r in range(5)]


@dataclass
class SystemSolution:
    weights: list[int]
    values: list[Fraction]

    @property
    def integral(self) -> list[bool]:
        return [v.denominator == 1 and v >= 0 for v in self.values]

    def to_json(self) -> dict:
        return {
            "weights": [str(w) for w in self.weights],
            "solution": [
                {"numerator": str(v.numerator), "denominator": str(v.denominator)}
                for v in self.values
            ],
            "nonnegative_integer": self.integral,
        }


def solve_paper_system(m: int, a2d: int, a4d: int) -> SystemSolution:
    return SystemSolution(five_weights(m), solve_exact(moment_matrix(m), system_rhs(m, a2d, a4d)))


def solve_from_power_sums(m: int, dist: WeightDistribution) -> SystemSolution:
    """Solve the same Vandermonde system with the enumerated power sums on the right."""
    rhs = [Fraction(power_sum(dist, r)) for r in range(5)]
    return SystemSolution(five_weights(m), solve_exact(moment_matrix(m), rhs))


@dataclass
class MomentReport:
    power_sums: list[int]
    runs: dict[str, dict]
    round_trip: bool

    def to_json(self) -> dict:
        return {
            "power_sums": [str(p) for p in self.power_sums],
            "runs": self.runs,
            "round_trip": self.round_trip,
        }


def moment_report(
    m: int,
    dist: WeightDistribution,
    dual_counts: Optional[dict[str, tuple[int, int]]] = None,
) -> MomentReport:
    """Residuals and exact solutions of the published system, once per dual-count source.

    ``dual_counts`` maps a run name to (A_2^perp, A_4^perp); the published
    counts are always included as run "claimed".
    """
    runs_in = {"claimed": claimed_dual_counts(m)}
    runs_in.update(dual_counts or {})
    runs = {}
    for name, (a2d, a4d) in runs_in.items():
        sol = solve_paper_system(m, a2d, a4d)
        runs[name] = {
            "a2_dual": str(a2d),
            "a4_dual": str(a4d),
            "residuals": [str(r) for r in paper_system_residuals(dist, a2d, a4d, m)],
            "system_solution": sol.to_json(),
        }
    rt = solve_from_power_sums(m, dist)
    round_trip = rt.values == [Fraction(dist[w]) for w in rt.weights]
    return MomentReport([power_sum(dist, r) for r in range(5)], runs, round_trip)


def griesmer_bound(k: int, d: int) -> int:
    if k < 1:
        raise ParameterError("Griesmer bound needs k >= 1")
    return sum(-(-d // (1 << i)) for i in range(k))


def griesmer_check(n: int, k: int, d: int) -> tuple[bool, int]:
    """(n >= bound, bound) for a binary [n, k, d] code."""
    bound = griesmer_bound(k, d)
    return n >= bound, bound
