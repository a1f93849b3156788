"""Floating-point evaluation of ``y(x) = x^lam * sum_k c[k] x^k``.

Coefficients stay exact until the last moment: each one is converted to
float, multiplied by ``x^k`` and added in ascending ``k``.  The factor
``x^lam`` is applied once at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .closed_form import SubSeriesTable
from .errors import ArityError, DomainError
from .recurrence import CoefficientSequence, RecurrenceSpec

TOTAL = "total"
PER_SUBSERIES = "per_subseries"


@dataclass(frozen=True)
class EvalRequest:
    x: float
    lam: float = 0.0
    k_max: int = 0
    mode: str = TOTAL

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "lam", float(self.lam))
        if self.k_max < 0:
            raise ValueError("k_max must be >= 0")
        if self.mode not in (TOTAL, PER_SUBSERIES):
            raise ValueError(f"mode must be {TOTAL!r} or {PER_SUBSERIES!r}")


def prefactor(x: float, lam: float) -> float:
    """``x ** lam``, refusing arguments where the real power is undefined."""
    if lam == 0:
        return 1.0
    if lam.is_integer():
        if x == 0 and lam < 0:
            raise DomainError(f"x=0 with negative exponent {lam}", operation="eval")
        return x ** int(lam)
    if x <= 0:
        raise DomainError(f"x={x} must be > 0 for non-integer exponent {lam}", operation="eval")
    return x ** lam


def _power_sum(pairs, x: float) -> float:
    total = 0.0
    for k, c in pairs:
        total += float(c) * x ** k
    return total


def eval_partial(seq: CoefficientSequence, req: EvalRequest) -> float:
    if len(seq) <= req.k_max:
        raise ValueError(f"sequence has {len(seq)} terms, k_max={req.k_max} needs more")
    pre = prefactor(req.x, req.lam)
    return pre * _power_sum(((k, seq[k]) for k in range(req.k_max + 1)), req.x)


def partial_sums(seq: CoefficientSequence, req: EvalRequest) -> list[float]:
    """Every partial sum ``x^lam * sum_{k<=K} c[k] x^k`` for ``K = 0 .. k_max``."""
    pre = prefactor(req.x, req.lam)
    out, total = [], 0.0
    for k in range(req.k_max + 1):
        total += float(seq[k]) * req.x ** k
        out.append(pre * total)
    return out


@dataclass(frozen=True)
class SplitResult:
    per_n: dict
    total: float


def eval_subseries_split(tables: list[SubSeriesTable], req: EvalRequest) -> SplitResult:
    """Evaluate each ``y_N`` over powers ``<= k_max``, plus the total.

    The total is not the float sum of the ``y_N`` values: sub-series can
    cancel heavily at a given power, so coefficients are first added exactly
    per power and then summed in ascending power like :func:`eval_partial`.
    """
    pre = prefactor(req.x, req.lam)
    have = {t.N for t in tables}
    missing = [N for N in range(req.k_max + 1) if N not in have]
    if missing:
        raise ValueError(f"tables for N={missing} are required for k_max={req.k_max}")
    per_n = {}
    by_power: dict = {}
    for table in sorted(tables, key=lambda t: t.N):
        pairs = [(k, table.entries[k]) for k in table.powers() if k <= req.k_max]
        per_n[table.N] = pre * _power_sum(pairs, req.x)
        for k, c in pairs:
            by_power[k] = by_power[k] + c if k in by_power else c
    total = pre * _power_sum(sorted(by_power.items()), req.x)
    return SplitResult(per_n, total)


@dataclass(frozen=True)
class ConvergenceReport:
    x: float
    scaled_ratios: tuple  # (n, |K_n x| or None)
    last_term: float
    last_terms_decreasing: bool
    limit_estimate: float | None
    divergent: bool

    def as_dict(self) -> dict:
        return {
            "x": self.x,
            "scaled_ratios": [{"n": n, "value": v} for n, v in self.scaled_ratios],
            "last_term": self.last_term,
            "last_terms_decreasing": self.last_terms_decreasing,
            "limit_estimate": self.limit_estimate,
            "divergent": self.divergent,
        }


def convergence_report(seq: CoefficientSequence, spec: RecurrenceSpec, x: float,
                       window: int = 5) -> ConvergenceReport:
    """Heuristic look at ``|c[n+1]/c[n] * x|`` and the size of the last terms.

    ``divergent`` is set when the last defined scaled ratio exceeds 1.  This
    is a diagnostic only; nothing is proven.
    """
    if spec.arity != 3:
        raise ArityError(f"convergence_report needs arity 3, got {spec.arity}",
                         operation="convergence_report")
    x = float(x)
    ratios = []
    for n in range(len(seq) - 1):
        if seq[n] == 0:
            ratios.append((n, None))
        else:
            ratios.append((n, abs(float(seq[n + 1] / seq[n]) * x)))
    terms = [abs(float(c)) * abs(x) ** k for k, c in enumerate(seq.values)]
    tail = terms[-window:]
    decreasing = len(tail) > 1 and all(b < a for a, b in zip(tail, tail[1:]))
    defined = [v for _, v in ratios if v is not None]
    limit = defined[-1] if defined else None
    divergent = limit is not None and limit > 1 and not math.isclose(limit, 1.0)
    return ConvergenceReport(x, tuple(ratios), terms[-1] if terms else 0.0,
                             decreasing, limit, divergent)
