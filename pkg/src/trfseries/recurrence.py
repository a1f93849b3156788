"""Recurrence specifications and direct forward expansion.

A recurrence of arity ``m`` (2 to 5) links ``m`` consecutive coefficients::

    c[n+1] = A(n) c[n] + B(n) c[n-1] + C(n) c[n-2] + D(n) c[n-3]

keeping only the first ``m - 1`` rules.  Coefficients are exact
:class:`~fractions.Fraction` values by default; an approximate float mode
exists for evaluating series at real arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

from .errors import ArityError, RuleEvaluationError, SeedError

Scalar = Union[Fraction, float]

RULE_LABELS = ("A", "B", "C", "D")
EXACT = "exact"
APPROX = "approx"
MODES = (EXACT, APPROX)

# Guard on memory for a single forward expansion.
DIRECT_CAP = 10_000


def to_scalar(value, mode: str) -> Scalar:
    """Coerce ``value`` to the scalar type of ``mode``.

    Exact mode refuses floats: a float has already lost the exactness the
    verification paths depend on.
    """
    if mode == EXACT:
        if isinstance(value, float):
            raise TypeError(f"float {value!r} given where an exact rational is required")
        return Fraction(value)
    out = float(value)
    if not math.isfinite(out):
        raise ValueError(f"non-finite value {out!r}")
    return out


def zero(mode: str) -> Scalar:
    return Fraction(0) if mode == EXACT else 0.0


def one(mode: str) -> Scalar:
    return Fraction(1) if mode == EXACT else 1.0


@dataclass(frozen=True)
class CoefficientRule:
    """One coefficient function ``n -> value`` labelled A, B, C or D."""

    label: str
    func: Callable[[int], object]

    def __post_init__(self):
        if self.label not in RULE_LABELS:
            raise ValueError(f"rule label must be one of {RULE_LABELS}, got {self.label!r}")

    def evaluate(self, n: int, mode: str = EXACT) -> Scalar:
        try:
            raw = self.func(n)
        except ZeroDivisionError as exc:
            raise RuleEvaluationError(self.label, n, f"division by zero ({exc})") from exc
        try:
            return to_scalar(raw, mode)
        except (TypeError, ValueError) as exc:
            raise RuleEvaluationError(self.label, n, str(exc)) from exc

    @classmethod
    def constant(cls, label: str, value) -> "CoefficientRule":
        return cls(label, _Constant(value))


class _Constant:
    # A plain lambda would make specs unpicklable and uncomparable in reprs.
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __call__(self, n):
        return self.value

    def __repr__(self):
        return f"const({self.value})"


@dataclass(frozen=True)
class SeedRule:
    """How the first ``arity - 1`` coefficients are obtained.

    ``values=None`` is the canonical seed: the recurrence itself with every
    term of negative index dropped (``c1 = A0 c0``, ``c2 = (A0 A1 + B1) c0``
    and so on).  Otherwise ``values`` lists ``c1 .. c_{m-2}`` explicitly.
    """

    values: tuple | None = None

    @property
    def is_canonical(self) -> bool:
        return self.values is None

    @classmethod
    def canonical(cls) -> "SeedRule":
        return cls(None)

    @classmethod
    def explicit(cls, *values) -> "SeedRule":
        return cls(tuple(values))

    def describe(self) -> str:
        if self.is_canonical:
            return "canonical"
        return "explicit:" + ",".join(str(v) for v in self.values)


@dataclass(frozen=True)
class RecurrenceSpec:
    rules: tuple[CoefficientRule, ...]
    c0: Scalar = Fraction(1)
    seed: SeedRule = field(default_factory=SeedRule.canonical)
    lam: Scalar = Fraction(0)
    mode: str = EXACT
    name: str = "custom"
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        rules = tuple(self.rules)
        object.__setattr__(self, "rules", rules)
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not 2 <= len(rules) + 1 <= 5:
            raise ArityError(f"arity must be in 2..5, got {len(rules) + 1}")
        for rule, label in zip(rules, RULE_LABELS):
            if rule.label != label:
                raise ValueError(f"rule in position {label} is labelled {rule.label}")
        object.__setattr__(self, "c0", to_scalar(self.c0, self.mode))
        object.__setattr__(self, "lam", to_scalar(self.lam, self.mode))
        if self.seed.is_canonical:
            if self.c0 == 0:
                raise SeedError("canonical seeds need c0 != 0")
        else:
            if len(self.seed.values) != self.arity - 2:
                raise SeedError(
                    f"arity {self.arity} needs {self.arity - 2} explicit seed values "
                    f"(c1..c{self.arity - 2}), got {len(self.seed.values)}")
            vals = tuple(to_scalar(v, self.mode) for v in self.seed.values)
            object.__setattr__(self, "seed", SeedRule(vals))

    @property
    def arity(self) -> int:
        return len(self.rules) + 1

    def coeff(self, k: int, n: int) -> Scalar:
        """Value of rule ``k`` (0 = A, 1 = B, ...) at index ``n``, memoized."""
        key = (k, n)
        try:
            return self._cache[key]
        except KeyError:
            pass
        value = self.rules[k].evaluate(n, self.mode)
        self._cache[key] = value
        return value

    def A(self, n: int) -> Scalar:
        return self.coeff(0, n)

    def B(self, n: int) -> Scalar:
        return self.coeff(1, n)

    def with_mode(self, mode: str) -> "RecurrenceSpec":
        seed = self.seed
        if not seed.is_canonical:
            seed = SeedRule(tuple(_convert(v, mode) for v in seed.values))
        return RecurrenceSpec(self.rules, _convert(self.c0, mode), seed,
                              _convert(self.lam, mode), mode, self.name)


def _convert(value: Scalar, mode: str) -> Scalar:
    if mode == APPROX:
        return float(value)
    if isinstance(value, float):
        return Fraction(value)
    return value


@dataclass(frozen=True)
class CoefficientSequence:
    values: tuple
    method: str

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def seed_coefficients(spec: RecurrenceSpec) -> list[Scalar]:
    """Return ``[c0, ..., c_{m-2}]`` for the spec's seed rule."""
    if not spec.seed.is_canonical:
        return [spec.c0, *spec.seed.values]
    values = [spec.c0]
    for j in range(1, spec.arity - 1):
        n = j - 1
        total = zero(spec.mode)
        for k in range(min(spec.arity - 1, n + 1)):
            total += spec.coeff(k, n) * values[n - k]
        values.append(total)
    return values


def _wrap_operation(exc: RuleEvaluationError, operation: str) -> RuleEvaluationError:
    if exc.operation is None:
        exc.operation = operation
    return exc


def direct_expand(spec: RecurrenceSpec, n_max: int, *, cap: int = DIRECT_CAP) -> CoefficientSequence:
    """Forward recursion ``c[n+1] = sum_k rule_k(n) c[n-k]`` up to ``c[n_max]``."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if n_max > cap:
        raise ValueError(f"n_max={n_max} exceeds the direct-expansion cap {cap}")
    try:
        values = seed_coefficients(spec)
        m1 = spec.arity - 1
        for n in range(m1 - 1, n_max):
            total = zero(spec.mode)
            for k in range(m1):
                total += spec.coeff(k, n) * values[n - k]
            values.append(total)
    except RuleEvaluationError as exc:
        raise _wrap_operation(exc, "direct_expand")
    return CoefficientSequence(values[:n_max + 1], "direct")


def recurrence_residuals(seq: CoefficientSequence, spec: RecurrenceSpec) -> list[tuple[int, Scalar]]:
    """``(n, c[n+1] - sum_k rule_k(n) c[n-k])`` for every ``n`` where the
    full recurrence applies (all referenced indices non-negative)."""
    out = []
    m1 = spec.arity - 1
    for n in range(m1 - 1, len(seq) - 1):
        rhs = zero(spec.mode)
        for k in range(m1):
            rhs += spec.coeff(k, n) * seq[n - k]
        out.append((n, seq[n + 1] - rhs))
    return out


@dataclass(frozen=True)
class RatioEntry:
    index: int
    ratio: Scalar | None
    residual: Scalar | None

    @property
    def defined(self) -> bool:
        return self.ratio is not None


def ratio_sequence(seq: CoefficientSequence, spec: RecurrenceSpec) -> list[RatioEntry]:
    """Successive ratios ``K[n] = c[n+1] / c[n]`` with the continued-fraction
    residual ``K[n] - (A(n) + B(n) / K[n-1])`` for ``n >= 1``.

    Entries that would divide by zero are reported with ``ratio=None`` (or
    ``residual=None``) instead of raising.
    """
    if spec.arity != 3:
        raise ArityError(f"ratio_sequence needs arity 3, got {spec.arity}",
                         operation="ratio_sequence")
    ratios: list[Scalar | None] = []
    for n in range(len(seq) - 1):
        ratios.append(seq[n + 1] / seq[n] if seq[n] != 0 else None)
    out = []
    for n, k in enumerate(ratios):
        residual = None
        if n >= 1 and k is not None:
            prev = ratios[n - 1]
            if prev is not None and prev != 0:
                residual = k - (spec.A(n) + spec.B(n) / prev)
        out.append(RatioEntry(n, k, residual))
    return out


def make_spec(rules: Sequence, c0=1, seed: SeedRule | None = None, lam=0,
              mode: str = EXACT, name: str = "custom") -> RecurrenceSpec:
    """Build a spec from plain callables or constants, labelling them A, B, ...

    >>> fib = make_spec([1, 1])
    >>> direct_expand(fib, 6).values[-1]
    Fraction(13, 1)
    """
    built = []
    for label, rule in zip(RULE_LABELS, rules):
        if isinstance(rule, CoefficientRule):
            built.append(rule)
        elif callable(rule):
            built.append(CoefficientRule(label, rule))
        else:
            built.append(CoefficientRule.constant(label, rule))
    if len(rules) > len(RULE_LABELS):
        raise ArityError(f"at most {len(RULE_LABELS)} rules, got {len(rules)}")
    return RecurrenceSpec(tuple(built), c0, seed or SeedRule.canonical(), lam, mode, name)
