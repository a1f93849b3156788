"""Symbolic expansion of ``c[n]`` as a sum of products of rule values.

Unrolling the recurrence writes ``c[n] / c0`` as a sum over tilings of the
positions ``0 .. n-1`` by steps of size 1 to ``arity - 1``.  A step of size
``s`` that ends at position ``p`` contributes the factor ``rule_{s-1}(p)``;
for arity 3 the term ``A2 B1`` is the tiling "B over 0..1, then A at 2".
Term counts are therefore k-nacci numbers.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass

from .errors import ArityError, CapExceeded, RuleEvaluationError, SeedError
from .recurrence import RULE_LABELS, RecurrenceSpec, Scalar, one, zero

DEFAULT_CENSUS_CAP = 30
CAP_ENV = "TRF_CENSUS_CAP"


def census_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_CENSUS_CAP


def _check_arity(arity: int) -> None:
    if arity not in (3, 4, 5):
        raise ArityError(f"term census supports arity 3..5, got {arity}")


@dataclass(frozen=True)
class SymbolicTerm:
    """One tiling, stored as ``((size, end_position), ...)`` left to right."""

    steps: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return sum(size for size, _ in self.steps)

    @property
    def size_string(self) -> str:
        return "".join(str(size) for size, _ in self.steps)

    def factors(self) -> list[tuple[str, int]]:
        """``(label, index)`` pairs sorted by label, then index."""
        return sorted((RULE_LABELS[size - 1], end) for size, end in self.steps)

    def is_valid_tiling(self) -> bool:
        pos = 0
        for size, end in self.steps:
            if size < 1 or end != pos + size - 1:
                return False
            pos = end + 1
        return True

    def value(self, spec: RecurrenceSpec) -> Scalar:
        out = one(spec.mode)
        for size, end in self.steps:
            out *= spec.coeff(size - 1, end)
        return out

    def __str__(self) -> str:
        if not self.steps:
            return "1"
        return "*".join(f"{label}{idx}" for label, idx in self.factors())

    def compact(self) -> str:
        """Grouped form, e.g. ``A2,3*B1`` for ``A2 A3 B1``."""
        if not self.steps:
            return "1"
        groups: dict[str, list[int]] = defaultdict(list)
        for label, idx in self.factors():
            groups[label].append(idx)
        return "*".join(label + ",".join(map(str, idxs)) for label, idxs in groups.items())


@dataclass(frozen=True)
class TermList:
    n: int
    arity: int
    terms: tuple[SymbolicTerm, ...]

    def __len__(self):
        return len(self.terms)


def _compositions(n: int, max_part: int, start: int = 0):
    # Parts tried in increasing size order, which yields lexicographic
    # order of the size strings.
    if n == 0:
        yield ()
        return
    for size in range(1, min(max_part, n) + 1):
        head = (size, start + size - 1)
        for rest in _compositions(n - size, max_part, start + size):
            yield (head,) + rest


def enumerate_terms(n: int, arity: int, *, cap: int | None = None) -> TermList:
    if n < 0:
        raise ValueError("n must be >= 0")
    _check_arity(arity)
    cap = census_cap() if cap is None else cap
    if n > cap:
        raise CapExceeded(
            f"census of c{n} ({count_terms(n, arity)} terms) exceeds cap n <= {cap}",
            operation="enumerate_terms", index=n)
    terms = tuple(SymbolicTerm(steps) for steps in _compositions(n, arity - 1))
    return TermList(n, arity, terms)


def count_terms(n: int, arity: int) -> int:
    """Number of terms in ``c[n]``: the k-nacci recurrence with ``k = arity - 1``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    _check_arity(arity)
    k = arity - 1
    counts = [1]
    for i in range(1, n + 1):
        counts.append(sum(counts[max(0, i - k):i]))
    return counts[n]


def evaluate_terms(terms: TermList, spec: RecurrenceSpec) -> Scalar:
    """``c0 * sum(prod(factors))`` over the term list."""
    if spec.arity != terms.arity:
        raise ArityError(f"term list has arity {terms.arity}, spec has {spec.arity}",
                         operation="evaluate_terms")
    if not spec.seed.is_canonical:
        raise SeedError("term expansion assumes the canonical seed c1 = A0 c0",
                        operation="evaluate_terms")
    total = zero(spec.mode)
    try:
        for term in terms.terms:
            total += term.value(spec)
    except RuleEvaluationError as exc:
        exc.operation = exc.operation or "evaluate_terms"
        raise
    return total * spec.c0
