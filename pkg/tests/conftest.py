import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from trfseries import make_spec


class PolyRatio:
    """(p0 + p1 n + p2 n^2) / (q0 + q1 n) with q0 >= 1, q1 >= 0: no poles at n >= 0."""

    def __init__(self, p, q):
        self.p, self.q = tuple(p), tuple(q)

    def __call__(self, n):
        num = self.p[0] + self.p[1] * n + self.p[2] * n * n
        return num / (self.q[0] + self.q[1] * n)

    def __repr__(self):
        return f"PolyRatio({self.p}, {self.q})"


def random_rule(rng: random.Random) -> PolyRatio:
    p = [Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(3)]
    q = [Fraction(rng.randint(1, 4)), Fraction(rng.randint(0, 3))]
    return PolyRatio(p, q)


def random_spec(rng: random.Random, arity: int = 3):
    rules = [random_rule(rng) for _ in range(arity - 1)]
    c0 = Fraction(rng.choice([-3, -1, 1, 2, 5]), rng.randint(1, 3))
    return make_spec(rules, c0=c0, name="random")


def random_specs(count: int, seed: int, arity: int = 3):
    rng = random.Random(seed)
    return [random_spec(rng, arity) for _ in range(count)]


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def rule_strategy(draw):
    p = [draw(small_fractions) for _ in range(3)]
    q = [Fraction(draw(st.integers(1, 4))), Fraction(draw(st.integers(0, 3)))]
    return PolyRatio(p, q)


@st.composite
def spec_strategy(draw, arity=3):
    rules = [draw(rule_strategy()) for _ in range(arity - 1)]
    c0 = draw(small_fractions.filter(lambda v: v != 0))
    return make_spec(rules, c0=c0, name="hypothesis")


@pytest.fixture
def fib():
    return make_spec([1, 1], name="fibonacci")
