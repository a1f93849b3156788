from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_specs, spec_strategy
from trfseries import (ArityError, IncompleteCoverage, LameParams, ProfileOrderError,
                       SeedError, SeedRule, SubSeriesTable, TerminationProfile,
                       TerminationViolation, assemble_coefficients, direct_expand, lame_spec,
                       make_spec, subseries_infinite, subseries_limit_form, subseries_literal,
                       subseries_polynomial, subseries_tables, trf_expand, verify_termination)

A_VALS = {i: Fraction(p) for i, p in enumerate([2, 3, 5, 7, 11, 13, 17, 19, 23, 29])}
B_VALS = {i: Fraction(p, 2) for i, p in enumerate([31, 37, 41, 43, 47, 53, 59, 61, 67, 71])}


@pytest.fixture
def generic():
    return make_spec([A_VALS.__getitem__, B_VALS.__getitem__], c0=Fraction(3, 5))


def test_y0_all_ones():
    table = subseries_infinite(make_spec([1, 1]), 0, 4)
    assert table.entries == {0: 1, 2: 1, 4: 1, 6: 1, 8: 1}


def test_y1_first_two_entries(generic):
    table = subseries_infinite(generic, 1, 2)
    a, b, c0 = A_VALS, B_VALS, generic.c0
    assert table.entries[1] == a[0] * c0
    assert table.entries[3] == (a[0] * b[2] + a[2] * b[1]) * c0


def test_y2_c4_listing(generic):
    # two A-factors in c4: A0 A1 B3, A0 A3 B2, A2 A3 B1
    a, b, c0 = A_VALS, B_VALS, generic.c0
    table = subseries_infinite(generic, 2, 1)
    assert table.entries[4] == (a[0] * a[1] * b[3] + a[0] * a[3] * b[2] + a[2] * a[3] * b[1]) * c0


def test_y_split_sums_to_c6_fibonacci(fib):
    total = sum(subseries_infinite(fib, N, 3).entries.get(6, 0) for N in range(7))
    assert total == 13 == direct_expand(fib, 6)[6]


@pytest.mark.parametrize("N", range(6))
def test_parity(N):
    spec = random_specs(1, seed=N)[0]
    assert all(k % 2 == N % 2 for k in subseries_infinite(spec, N, 5).entries)


def test_assemble_fibonacci(fib):
    seq = assemble_coefficients(subseries_tables(fib, 11), 11)
    assert seq.values == (1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144)
    assert seq.method == "trf"


def test_assemble_two_term_product():
    a = lambda n: Fraction(n + 2, n + 3)
    spec = make_spec([a, 0], c0=2)
    tables = subseries_tables(spec, 8)
    prod = Fraction(2)
    for k in range(9):
        assert tables[k].entries[k] == prod
        for N in range(k):
            if k in tables[N].entries:
                assert tables[N].entries[k] == 0
        prod *= a(k)


def test_assemble_random_matches_direct():
    for spec in random_specs(10, seed=77):
        assert trf_expand(spec, 10).values == direct_expand(spec, 10).values


def test_assemble_incomplete(fib):
    tables = subseries_tables(fib, 6)
    with pytest.raises(IncompleteCoverage):
        assemble_coefficients(tables[:-1], 6)
    short = [subseries_infinite(fib, N, 1) for N in range(7)]
    with pytest.raises(IncompleteCoverage):
        assemble_coefficients(short, 6)


@pytest.mark.parametrize("N", [0, 1, 2, 3])
def test_literal_small_n(N):
    for spec in random_specs(5, seed=100 + N):
        assert subseries_infinite(spec, N, 7).entries == subseries_literal(spec, N, 7).entries


def test_literal_rejects_large_n(fib):
    with pytest.raises(ValueError):
        subseries_literal(fib, 4, 3)


def test_limit_form_n0_identical(fib):
    assert subseries_limit_form(fib, 0, 6).entries == subseries_infinite(fib, 0, 6).entries


@pytest.mark.parametrize("N", range(5))
def test_limit_form_random(N):
    for spec in random_specs(4, seed=200 + N):
        assert subseries_limit_form(spec, N, 6).entries == subseries_infinite(spec, N, 6).entries


def test_limit_form_fibonacci_power9(fib):
    assert subseries_limit_form(fib, 3, 3).entries[9] == subseries_literal(fib, 3, 3).entries[9]


def test_closed_forms_reject_explicit_seed():
    lucas = make_spec([1, 1], c0=2, seed=SeedRule.explicit(1))
    for op in (subseries_infinite, subseries_limit_form, subseries_literal):
        with pytest.raises(SeedError):
            op(lucas, 1, 3)


def test_closed_forms_reject_other_arity():
    with pytest.raises(ArityError):
        subseries_infinite(make_spec([1, 1, 1]), 0, 3)


# termination

def test_profile_order():
    with pytest.raises(ProfileOrderError):
        TerminationProfile((2, 1))
    with pytest.raises(ProfileOrderError):
        TerminationProfile((-1,))


def test_verify_root_placement():
    spec = make_spec([1, lambda n: n - 3])
    report = verify_termination(spec, TerminationProfile((1,)))
    assert report.passed
    assert report.entries[0][2] == 3


def test_verify_fails_for_constant_b():
    report = verify_termination(make_spec([1, 1]), TerminationProfile((0, 1, 2)))
    assert not report.passed
    assert not any(e[4] for e in report.entries)


def test_polynomial_beta0_zero():
    spec = make_spec([1, lambda n: n - 1], c0=Fraction(5, 2))
    table = subseries_polynomial(spec, 0, TerminationProfile((0,)))
    assert table.entries == {0: Fraction(5, 2)}


def test_polynomial_beta0_one():
    spec = make_spec([1, lambda n: Fraction(n - 3, n + 1)], c0=2)
    table = subseries_polynomial(spec, 0, TerminationProfile((1,)))
    assert table.entries == {0: 2, 2: spec.B(1) * 2}


def test_polynomial_violation():
    spec = make_spec([1, lambda n: n - 3])
    with pytest.raises(TerminationViolation):
        subseries_polynomial(spec, 0, TerminationProfile((2,)))


def test_polynomial_profile_too_short():
    spec = make_spec([1, lambda n: n - 3])
    with pytest.raises(ProfileOrderError):
        subseries_polynomial(spec, 1, TerminationProfile((1,)))


def _b_vanishing_from(start, base):
    def b(n):
        return Fraction(0) if n >= start else base(n)
    return b


def _profile_for(start, N):
    betas, prev = [], 0
    for i in range(N + 1):
        beta = max(prev, -(-(start - i - 1) // 2), 0)
        betas.append(beta)
        prev = beta
    return TerminationProfile(tuple(betas))


@pytest.mark.parametrize("N", range(5))
def test_polynomial_equals_truncated_infinite(N):
    for spec0 in random_specs(4, seed=300 + N):
        spec = make_spec([spec0.rules[0], _b_vanishing_from(5, spec0.rules[1].func)],
                         c0=spec0.c0)
        profile = _profile_for(5, N)
        assert verify_termination(spec, profile).passed
        poly = subseries_polynomial(spec, N, profile)
        top = 2 * profile.betas[N] + N
        assert max(poly.entries) <= top
        inf = subseries_infinite(spec, N, profile.betas[N] + 3)
        for k, v in inf.entries.items():
            assert poly.entries.get(k, 0) == v


def test_lame_polynomial_two_chains():
    # alpha = 5/2, lambda = -7/4 puts the B roots at n = 1 and n = 4
    p = LameParams(3, 1, -2, Fraction(5, 2), Fraction(1, 3), Fraction(-7, 4))
    spec = lame_spec(p)
    assert spec.B(1) == 0 and spec.B(4) == 0
    profile = TerminationProfile((0, 1))
    assert verify_termination(spec, profile).passed
    for N in (0, 1):
        poly = subseries_polynomial(spec, N, profile)
        inf = subseries_infinite(spec, N, 6)
        for k, v in inf.entries.items():
            assert poly.entries.get(k, 0) == v


@settings(max_examples=40, deadline=None)
@given(spec_strategy(), st.integers(0, 4), st.integers(0, 5))
def test_limit_form_matches_infinite_property(spec, N, n_max):
    assert subseries_limit_form(spec, N, n_max).entries == subseries_infinite(spec, N, n_max).entries


@settings(max_examples=30, deadline=None)
@given(spec_strategy(), st.integers(0, 10))
def test_subseries_assemble_to_direct_property(spec, k):
    tables = subseries_tables(spec, k)
    assert sum(t.entries.get(k, 0) for t in tables) == direct_expand(spec, k)[k]


def test_table_helpers():
    t = SubSeriesTable(1, {3: Fraction(1), 1: Fraction(2)}, 1)
    assert t.powers() == [1, 3]
    assert t.get(5) is None
