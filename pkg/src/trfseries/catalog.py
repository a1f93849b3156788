"""Concrete recurrences: Lamé, k-nacci counting sequences, Lucas, identity.

Also the two-term product solution and reference Taylor coefficients of
the Fibonacci and identity generating functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .errors import ArityError, ConfigError, RuleEvaluationError, TerminationViolation
from .recurrence import (CoefficientRule, CoefficientSequence, RecurrenceSpec,
                         SeedRule, make_spec, one, zero, EXACT)


@dataclass(frozen=True)
class LameParams:
    a: Fraction
    b: Fraction
    c: Fraction
    alpha: Fraction
    beta_acc: Fraction
    lam: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "alpha", "beta_acc", "lam"):
            value = getattr(self, name)
            if isinstance(value, float):
                raise TypeError(f"Lamé parameter {name} must be exact, got float {value!r}")
            object.__setattr__(self, name, Fraction(value))
        if len({self.a, self.b, self.c}) != 3:
            raise ValueError(f"branch points must be distinct, got a={self.a}, b={self.b}, c={self.c}")

    @property
    def denom_const(self) -> Fraction:
        return 4 * (self.a - self.b) * (self.a - self.c)


class _LameA:
    def __init__(self, p: LameParams):
        self.p = p

    def __call__(self, n: int) -> Fraction:
        p = self.p
        s = n + p.lam
        num = (p.alpha * (p.alpha + 1) * p.a + p.beta_acc) - 4 * (2 * p.a - p.b - p.c) * s ** 2
        return num / (p.denom_const * (s + 1) * (s + Fraction(1, 2)))


class _LameB:
    def __init__(self, p: LameParams):
        self.p = p

    def __call__(self, n: int) -> Fraction:
        p = self.p
        s = n + p.lam
        num = (p.alpha + 2 * s - 1) * (p.alpha - 2 * s + 2)
        return num / (p.denom_const * (s + 1) * (s + Fraction(1, 2)))


def lame_rules(params: LameParams) -> tuple[CoefficientRule, CoefficientRule]:
    """A and B rules of the Lamé equation expanded about ``t = a``."""
    return CoefficientRule("A", _LameA(params)), CoefficientRule("B", _LameB(params))


def lame_spec(params: LameParams, c0=1, mode: str = EXACT) -> RecurrenceSpec:
    return RecurrenceSpec(lame_rules(params), c0, SeedRule.canonical(), params.lam, mode, "lame")


LAME_PARAMETERS = ("a", "b", "c", "alpha", "beta")


def lame_from_mapping(params: Mapping[str, Fraction], lam, mode: str = EXACT) -> RecurrenceSpec:
    if lam is None:
        raise ConfigError("the Lamé entry needs an explicit indicial root (lambda)")
    missing = [k for k in LAME_PARAMETERS if k not in params]
    if missing:
        raise ConfigError(f"the Lamé entry needs parameters {', '.join(missing)}")
    try:
        p = LameParams(params["a"], params["b"], params["c"], params["alpha"], params["beta"], lam)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    return lame_spec(p, params.get("c0", 1), mode)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    build: Callable[..., RecurrenceSpec]
    reference_values: tuple = ()
    parameters: tuple = ()

    @property
    def parameterized(self) -> bool:
        return bool(self.parameters)

    @property
    def spec(self) -> RecurrenceSpec | None:
        return None if self.parameterized else self.build()


def _fixed(rules, c0=1, seed=None, name=""):
    def build(params=None, lam=None, mode=EXACT):
        return make_spec(rules, c0=c0, seed=seed, lam=0 if lam is None else lam,
                         mode=mode, name=name)
    return build


def _lame_build(params=None, lam=None, mode=EXACT):
    return lame_from_mapping(params or {}, lam, mode)


_ENTRIES = (
    CatalogEntry("fibonacci", "A=B=1, c0=1, canonical seed c1=A0 c0=1",
                 _fixed([1, 1], name="fibonacci"),
                 (1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144)),
    CatalogEntry("fibonacci_gf", "A=B=1 with seeds c0=0, c1=1; Taylor series of x/(1-x-x^2)",
                 _fixed([1, 1], c0=0, seed=SeedRule.explicit(1), name="fibonacci_gf"),
                 (0, 1, 1, 2, 3, 5, 8, 13)),
    CatalogEntry("lucas", "A=B=1 with seeds c0=2, c1=1",
                 _fixed([1, 1], c0=2, seed=SeedRule.explicit(1), name="lucas"),
                 (2, 1, 3, 4, 7, 11, 18, 29)),
    CatalogEntry("identity", "two-term c[n+1] = c[n], c0=1; Taylor series of 1/(1-x)",
                 _fixed([1], name="identity"),
                 (1, 1, 1, 1, 1, 1)),
    CatalogEntry("tribonacci_count", "four-term, all rules 1, seeds 0,1,1",
                 _fixed([1, 1, 1], c0=0, seed=SeedRule.explicit(1, 1), name="tribonacci_count"),
                 (0, 1, 1, 2, 4, 7, 13, 24, 44)),
    CatalogEntry("tetranacci_count", "five-term, all rules 1, seeds 0,1,1,2",
                 _fixed([1, 1, 1, 1], c0=0, seed=SeedRule.explicit(1, 1, 2), name="tetranacci_count"),
                 (0, 1, 1, 2, 4, 8, 15, 29, 56, 108)),
    CatalogEntry("tribonacci", "four-term, all rules 1, canonical seeds",
                 _fixed([1, 1, 1], name="tribonacci"),
                 (1, 1, 2, 4, 7, 13, 24, 44)),
    CatalogEntry("tetranacci", "five-term, all rules 1, canonical seeds",
                 _fixed([1, 1, 1, 1], name="tetranacci"),
                 (1, 1, 2, 4, 8, 15, 29, 56, 108, 208)),
    CatalogEntry("lame", "Lamé equation about t=a; needs a, b, c, alpha, beta and lambda",
                 _lame_build, (), LAME_PARAMETERS + ("lambda",)),
)


def catalog_specs() -> list[CatalogEntry]:
    return list(_ENTRIES)


def get_entry(name: str) -> CatalogEntry:
    for entry in _ENTRIES:
        if entry.name == name:
            return entry
    raise ConfigError(f"unknown catalog entry {name!r}; known: "
                      + ", ".join(e.name for e in _ENTRIES))


def two_term_series(spec: RecurrenceSpec, n_max: int, alpha0: int | None = None) -> CoefficientSequence:
    """``c[n] = c0 * prod_{i<n} A(i)``, optionally as the degree-``alpha0`` polynomial.

    With ``alpha0`` given, ``A(alpha0)`` must vanish and every coefficient
    past ``alpha0`` is zero.
    """
    if spec.arity != 2:
        raise ArityError(f"two_term_series needs arity 2, got {spec.arity}",
                         operation="two_term_series")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    try:
        if alpha0 is not None and spec.A(alpha0) != 0:
            raise TerminationViolation(f"A({alpha0}) = {spec.A(alpha0)} is not zero",
                                       operation="two_term_series", index=alpha0)
        top = n_max if alpha0 is None else min(n_max, alpha0)
        values = []
        prod = one(spec.mode)
        for n in range(top + 1):
            values.append(spec.c0 * prod)
            if n < top:
                prod *= spec.A(n)
    except RuleEvaluationError as exc:
        exc.operation = exc.operation or "two_term_series"
        raise
    values.extend([zero(spec.mode)] * (n_max - top))
    return CoefficientSequence(values, "two_term_product")


def taylor_coefficients(numerator, denominator, n_max: int) -> list[Fraction]:
    """First ``n_max + 1`` Taylor coefficients of ``numerator / denominator``
    (coefficient lists, lowest degree first) by exact long division."""
    num = [Fraction(v) for v in numerator]
    den = [Fraction(v) for v in denominator]
    if not den or den[0] == 0:
        raise ValueError("denominator must have a nonzero constant term")
    out: list[Fraction] = []
    for k in range(n_max + 1):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / den[0])
    return out


_GENERATING = {
    "fibonacci": ((0, 1), (1, -1, -1)),
    "identity": ((1,), (1, -1)),
}


def generating_reference(kind: str, n_max: int) -> list[Fraction]:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    try:
        num, den = _GENERATING[kind]
    except KeyError:
        raise ValueError(f"kind must be one of {sorted(_GENERATING)}, got {kind!r}") from None
    return taylor_coefficients(num, den, n_max)
