from fractions import Fraction

import pytest

from trfseries.expr import parse_inline_equation, parse_rational, parse_rule


def test_rule_exact():
    rule = parse_rule("(n - a)/(n + 1) + 2*n**2 - 0.25", {"a": Fraction(3)})
    assert rule(5) == Fraction(2, 6) + 50 - Fraction(1, 4)


def test_unary_minus():
    assert parse_rule("-n + 1")(4) == -3


@pytest.mark.parametrize("bad", ["__import__('os')", "n ** n", "n % 2", "x + 1", "'a'",
                                 "lambda: 1", "n.real", "True"])
def test_rejects(bad):
    with pytest.raises(ValueError):
        parse_rule(bad)


def test_division_by_zero_propagates():
    with pytest.raises(ZeroDivisionError):
        parse_rule("1/(n-2)")(2)


def test_inline_equation():
    rules = parse_inline_equation("A=1; B = n - 3")
    assert [r(5) for r in rules] == [1, 2]


def test_inline_requires_prefix():
    with pytest.raises(ValueError):
        parse_inline_equation("B=1")
    with pytest.raises(ValueError):
        parse_inline_equation("A=1;A=2")


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-2") == -2
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("abc")
