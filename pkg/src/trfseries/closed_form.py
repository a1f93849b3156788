"""Closed-form sub-series of a three-term recurrence.

Grouping the terms of every ``c[k]`` by how many A-factors they contain
splits the series into sub-series ``y_N``; ``y_N`` only touches powers
``x^(2n + N + lam)``.  Coefficients are computed here from nested sums of
A-values and runs of B-products, never by running the recurrence, so they
can be checked against :func:`~trfseries.recurrence.direct_expand`.

Notation used in the code: the ``N`` A-factors sit at indices
``2 i_k + (k - 1)`` for ``0 <= i_1 <= ... <= i_N <= n``, and the B-run
between the ``l``-th and ``(l+1)``-th A-factor is
``prod_{j=i_l}^{i_{l+1}-1} B(2 j + l + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import (ArityError, IncompleteCoverage, ProfileOrderError,
                     RuleEvaluationError, SeedError, TerminationViolation)
from .recurrence import CoefficientSequence, RecurrenceSpec, Scalar, one, zero


@dataclass(frozen=True)
class SubSeriesTable:
    """Coefficients of ``y_N`` keyed by power offset ``k`` (exponent ``k + lam``)."""

    N: int
    entries: dict = field(default_factory=dict)
    n_max: int = 0

    def powers(self) -> list[int]:
        return sorted(self.entries)

    def get(self, power: int, default=None):
        return self.entries.get(power, default)


@dataclass(frozen=True)
class TerminationProfile:
    """Indices ``beta_i`` with ``B(2 beta_i + i + 1) == 0``, non-decreasing in ``i``."""

    betas: tuple[int, ...]

    def __post_init__(self):
        betas = tuple(int(b) for b in self.betas)
        object.__setattr__(self, "betas", betas)
        if any(b < 0 for b in betas):
            raise ProfileOrderError(f"betas must be non-negative, got {betas}")
        for i in range(1, len(betas)):
            if betas[i] < betas[i - 1]:
                raise ProfileOrderError(
                    f"betas must be non-decreasing: beta_{i - 1}={betas[i - 1]} > "
                    f"beta_{i}={betas[i]}", index=i)

    def zero_index(self, i: int) -> int:
        return 2 * self.betas[i] + i + 1


def _require_three_term(spec: RecurrenceSpec, operation: str) -> None:
    if spec.arity != 3:
        raise ArityError(f"{operation} needs a three-term recurrence, got arity {spec.arity}",
                         operation=operation)
    if not spec.seed.is_canonical:
        raise SeedError(f"{operation} requires the canonical seed c1 = A0 c0",
                        operation=operation)


def _b_run(spec: RecurrenceSpec, offset: int, lo: int, hi: int) -> Scalar:
    """``prod_{j=lo}^{hi-1} B(2 j + offset)``; 1 when the range is empty.

    Memoized on the spec; each product extends the one ending one step earlier.
    """
    if hi <= lo:
        return one(spec.mode)
    key = ("brun", offset, lo, hi)
    cache = spec._cache
    try:
        return cache[key]
    except KeyError:
        pass
    value = _b_run(spec, offset, lo, hi - 1) * spec.B(2 * (hi - 1) + offset)
    cache[key] = value
    return value


def _with_operation(operation: str):
    def decorate(func):
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except RuleEvaluationError as exc:
                exc.operation = exc.operation or operation
                raise
        wrapper.__name__ = func.__name__
        wrapper.__qualname__ = func.__qualname__
        wrapper.__doc__ = func.__doc__
        return wrapper
    return decorate


def _general_coefficient(spec: RecurrenceSpec, N: int, n: int) -> Scalar:
    """Inner nested sum for ``y_N`` at power ``2n + N`` (without ``c0``)."""

    @lru_cache(maxsize=None)
    def level(k: int, prev: int) -> Scalar:
        # k-th A-factor (1-based) chosen at 2 i + (k - 1), with i >= prev.
        if k > N:
            return _b_run(spec, N + 1, prev, n)
        total = zero(spec.mode)
        for i in range(prev, n + 1):
            total += spec.A(2 * i + k - 1) * _b_run(spec, k, prev, i) * level(k + 1, i)
        return total

    return level(1, 0)


@_with_operation("subseries_infinite")
def subseries_infinite(spec: RecurrenceSpec, N: int, n_max: int) -> SubSeriesTable:
    """Coefficients of ``y_N`` at powers ``2n + N`` for ``n = 0 .. n_max``."""
    _require_three_term(spec, "subseries_infinite")
    if N < 0 or n_max < 0:
        raise ValueError("N and n_max must be >= 0")
    entries = {2 * n + N: spec.c0 * _general_coefficient(spec, N, n)
               for n in range(n_max + 1)}
    return SubSeriesTable(N, entries, n_max)


@_with_operation("subseries_literal")
def subseries_literal(spec: RecurrenceSpec, N: int, n_max: int) -> SubSeriesTable:
    """Hand-unrolled ``y_0 .. y_3`` with explicit loops, one per case.

    Kept independent of :func:`subseries_infinite` so the two can be
    compared.
    """
    _require_three_term(spec, "subseries_literal")
    if N not in (0, 1, 2, 3):
        raise ValueError(f"literal forms exist for N = 0..3 only, got {N}")
    A, B, mode = spec.A, spec.B, spec.mode

    def prod_b(lo, hi, offset):
        out = one(mode)
        for j in range(lo, hi):
            out *= B(2 * j + offset)
        return out

    entries = {}
    for n in range(n_max + 1):
        if N == 0:
            s = prod_b(0, n, 1)
        elif N == 1:
            s = zero(mode)
            for i1 in range(0, n + 1):
                s += A(2 * i1) * prod_b(0, i1, 1) * prod_b(i1, n, 2)
        elif N == 2:
            s = zero(mode)
            for i1 in range(0, n + 1):
                inner = zero(mode)
                for i2 in range(i1, n + 1):
                    inner += (A(2 * i2 + 1) * prod_b(0, i1, 1) * prod_b(i1, i2, 2)
                              * prod_b(i2, n, 3))
                s += A(2 * i1) * inner
        else:
            s = zero(mode)
            for i1 in range(0, n + 1):
                mid = zero(mode)
                for i2 in range(i1, n + 1):
                    inner = zero(mode)
                    for i3 in range(i2, n + 1):
                        inner += (A(2 * i3 + 2) * prod_b(0, i1, 1) * prod_b(i1, i2, 2)
                                  * prod_b(i2, i3, 3) * prod_b(i3, n, 4))
                    mid += A(2 * i2 + 1) * inner
                s += A(2 * i1) * mid
        entries[2 * n + N] = spec.c0 * s
    return SubSeriesTable(N, entries, n_max)


def _bounded_nesting(spec: RecurrenceSpec, N: int, bounds: Sequence[int]) -> dict:
    """Nested sums with a separate upper bound on each summation index.

    The outermost index places the first A-factor at ``2 i_0``; each further
    level ``k`` places an A-factor at ``2 i + k`` and multiplies in the B-run
    since the previous one; the innermost level fixes the power
    ``2 i_N + N`` and closes with the trailing B-run.  Contributions are
    accumulated by that final index.
    """
    mode = spec.mode
    entries = {2 * i + N: zero(mode) for i in range(bounds[N] + 1)}

    def close(prev: int, weight: Scalar) -> None:
        for i in range(prev, bounds[N] + 1):
            entries[2 * i + N] += weight * _b_run(spec, N + 1, prev, i)

    def nest(k: int, prev: int, weight: Scalar) -> None:
        # k-th further A-factor, k = 1 .. N-1
        if k == N:
            close(prev, weight)
            return
        for i in range(prev, bounds[k] + 1):
            nest(k + 1, i, weight * spec.A(2 * i + k) * _b_run(spec, k + 1, prev, i))

    if N == 0:
        for i in range(bounds[0] + 1):
            entries[2 * i] += _b_run(spec, 1, 0, i)
    else:
        for i0 in range(bounds[0] + 1):
            nest(1, i0, spec.A(2 * i0) * _b_run(spec, 1, 0, i0))
    return {power: spec.c0 * value for power, value in entries.items()}


@dataclass(frozen=True)
class TerminationReport:
    entries: tuple  # (i, beta_i, index, B value, is_zero)
    passed: bool

    def as_dicts(self) -> list[dict]:
        return [dict(zip(("i", "beta", "index", "value", "zero"), e)) for e in self.entries]


@_with_operation("verify_termination")
def verify_termination(spec: RecurrenceSpec, profile: TerminationProfile,
                       upto: int | None = None) -> TerminationReport:
    """Evaluate ``B(2 beta_i + i + 1)`` for each ``i`` (optionally ``i <= upto``)."""
    if spec.arity != 3:
        raise ArityError(f"verify_termination needs arity 3, got {spec.arity}",
                         operation="verify_termination")
    count = len(profile.betas) if upto is None else min(upto + 1, len(profile.betas))
    rows = []
    for i in range(count):
        idx = profile.zero_index(i)
        value = spec.B(idx)
        rows.append((i, profile.betas[i], idx, value, value == 0))
    return TerminationReport(tuple(rows), all(r[4] for r in rows))


@_with_operation("subseries_polynomial")
def subseries_polynomial(spec: RecurrenceSpec, N: int,
                         profile: TerminationProfile) -> SubSeriesTable:
    """Finite ``y_N`` when B vanishes on ``profile``; highest power ``2 beta_N + N``."""
    _require_three_term(spec, "subseries_polynomial")
    if N < 0:
        raise ValueError("N must be >= 0")
    if len(profile.betas) < N + 1:
        raise ProfileOrderError(
            f"y_{N} needs beta_0..beta_{N}, profile has {len(profile.betas)} entries",
            operation="subseries_polynomial")
    report = verify_termination(spec, profile, upto=N)
    if not report.passed:
        bad = [r for r in report.entries if not r[4]]
        raise TerminationViolation(
            "B does not vanish at " + ", ".join(f"n={r[2]} (i={r[0]})" for r in bad),
            operation="subseries_polynomial", index=bad[0][2])
    entries = _bounded_nesting(spec, N, profile.betas[:N + 1])
    return SubSeriesTable(N, entries, profile.betas[N])


@_with_operation("subseries_limit_form")
def subseries_limit_form(spec: RecurrenceSpec, N: int, n_max: int) -> SubSeriesTable:
    """The bounded nesting with every bound set to ``n_max``.

    Must agree entry for entry with :func:`subseries_infinite`.
    """
    _require_three_term(spec, "subseries_limit_form")
    if N < 0 or n_max < 0:
        raise ValueError("N and n_max must be >= 0")
    entries = _bounded_nesting(spec, N, [n_max] * (N + 1))
    return SubSeriesTable(N, entries, n_max)


def assemble_coefficients(tables: Sequence[SubSeriesTable], k_max: int) -> CoefficientSequence:
    """``c[k] = sum_N y_N[k]`` for ``k = 0 .. k_max``."""
    if not tables:
        raise IncompleteCoverage("no tables given", operation="assemble_coefficients")
    by_n = {t.N: t for t in tables}
    any_value = next(iter(tables[0].entries.values()), None)
    base = zero("approx") if isinstance(any_value, float) else zero("exact")
    values = []
    for k in range(k_max + 1):
        total = base
        for N in range(k % 2, k + 1, 2):
            table = by_n.get(N)
            if table is None:
                raise IncompleteCoverage(f"missing table y_{N} needed for power {k}",
                                         operation="assemble_coefficients", index=k)
            if k not in table.entries:
                raise IncompleteCoverage(
                    f"y_{N} lacks power {k} (n_max={table.n_max})",
                    operation="assemble_coefficients", index=k)
            total += table.entries[k]
        values.append(total)
    return CoefficientSequence(values, "trf")


def subseries_tables(spec: RecurrenceSpec, k_max: int) -> list[SubSeriesTable]:
    """Just enough ``y_0 .. y_{k_max}`` to cover every power up to ``k_max``."""
    return [subseries_infinite(spec, N, (k_max - N) // 2) for N in range(k_max + 1)]


def trf_expand(spec: RecurrenceSpec, k_max: int) -> CoefficientSequence:
    return assemble_coefficients(subseries_tables(spec, k_max), k_max)
