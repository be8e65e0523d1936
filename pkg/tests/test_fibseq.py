import math

import numpy as np
import pytest
from sympy import primerange

from pyFibCodes.exceptions import NotApplicableError, NotPrimeError
from pyFibCodes.fibseq import (
    extended_period_sequence,
    extended_polynomial,
    fib_period_sequence,
    fibonacci_polynomial,
    generalized_period_sequence,
    generalized_polynomial,
    generalized_term,
    pair_classes,
    pisano_period,
    table1,
    wall_vajda_check,
)
from pyFibCodes.galois import PrimePoly, poly_gcd

SWEEP_PRIMES = [p for p in primerange(3, 300) if p != 5]

# p, l, alpha, s, beta
TABLE_ROWS = [
    (7, 16, 8, 6, 2),
    (11, 10, 10, 1, 1),
    (13, 28, 7, 8, 4),
    (17, 36, 9, 4, 4),
    (19, 18, 18, 1, 1),
    (23, 48, 24, 22, 2),
]

PERIOD_7 = (0, 1, 1, 2, 3, 5, 1, 6, 0, 6, 6, 5, 4, 2, 6, 1)
PERIOD_11 = (0, 1, 1, 2, 3, 5, 8, 2, 10, 1)
PERIOD_19 = (0, 1, 1, 2, 3, 5, 8, 13, 2, 15, 17, 13, 11, 5, 16, 2, 18, 1)


@pytest.mark.parametrize(("p", "l", "alpha", "s", "beta"), TABLE_ROWS)
def test_profile_table_rows(p, l, alpha, s, beta):
    """Invariants of the tabulated primes."""
    profile = fib_period_sequence(p)
    assert (profile.l, profile.alpha, profile.s, profile.beta) == (l, alpha, s, beta)
    assert profile.zeros == beta
    assert pisano_period(p) == l


@pytest.mark.parametrize(("p", "terms"), [(7, PERIOD_7), (11, PERIOD_11), (19, PERIOD_19)])
def test_period_terms(p, terms):
    """Full periods of the worked examples."""
    assert fib_period_sequence(p).period_terms == terms


def test_small_primes():
    """p = 2 and p = 3 are handled."""
    two = fib_period_sequence(2)
    assert two.period_terms == (0, 1, 1)
    assert (two.l, two.alpha, two.beta) == (3, 3, 1)
    three = fib_period_sequence(3)
    assert (three.l, three.alpha, three.s, three.beta) == (8, 4, 2, 2)


def test_profile_rejects_non_prime():
    """Composite moduli are rejected."""
    with pytest.raises(NotPrimeError):
        fib_period_sequence(10)


@pytest.mark.parametrize("p", SWEEP_PRIMES)
def test_profile_invariants(p):
    """Structural facts about the period hold for every odd prime."""
    profile = fib_period_sequence(p)
    l, alpha, beta = profile.l, profile.alpha, profile.beta

    # Verify the period decomposes into beta blocks of length alpha
    assert l == alpha * beta
    assert beta in (1, 2, 4)
    assert l % 2 == 0
    assert l == math.gcd(2, beta) * (alpha * 2 // math.gcd(alpha, 2))

    # Verify beta is fixed by alpha mod 4
    expected_beta = {2: 1, 0: 2}.get(alpha % 4, 4)
    assert beta == expected_beta

    # Verify the zeros sit at multiples of alpha
    zeros = [i for i, t in enumerate(profile.period_terms) if t == 0]
    assert zeros == list(range(0, l, alpha))


@pytest.mark.parametrize("p", SWEEP_PRIMES)
def test_wall_vajda(p):
    """Wall's divisibility and Vajda's congruences hold."""
    report = wall_vajda_check(p)
    assert report.passed
    if p % 10 in (1, 9):
        assert report.divisibility_clause == "l | p-1"
    else:
        assert report.divisibility_clause == "l | 2(p+1)"


@pytest.mark.parametrize("p", [2, 5])
def test_wall_vajda_not_applicable(p):
    """2 and 5 lie outside both residue classes."""
    with pytest.raises(NotApplicableError):
        wall_vajda_check(p)


def test_wall_vajda_report_dict():
    """The report serialises its verdict."""
    row = wall_vajda_check(7).to_dict()
    assert row["p"] == 7
    assert row["residue_mod_10"] == 7
    assert row["passed"] is True


@pytest.mark.parametrize("p", SWEEP_PRIMES)
def test_fibonacci_polynomial_identity(p):
    """f(x)(x^2 + x - 1) = x^(l+1) - x and gcd(f, x^l - 1) = f/x."""
    f = fibonacci_polynomial(p)
    l = pisano_period(p)
    product = f * PrimePoly(p, (p - 1, 1, 1))
    assert product == PrimePoly.monomial(p, l + 1) - PrimePoly.monomial(p, 1)
    h = poly_gcd(f, PrimePoly.cyclic_modulus(p, l))
    assert h == PrimePoly(p, f.coeffs[1:])
    assert h * PrimePoly(p, (p - 1, 1, 1)) == PrimePoly.cyclic_modulus(p, l)


def test_generalized_term():
    """Seeded terms follow a*F_{i-1} + b*F_i."""
    assert generalized_term(11, 0, 1, 8) == 10
    assert generalized_term(11, 2, 1, 0) == 2
    assert generalized_term(11, 2, 1, 1) == 1
    # Lucas numbers 2, 1, 3, 4, 7, 11, 18, 29
    assert [generalized_term(31, 2, 1, i) for i in range(8)] == [2, 1, 3, 4, 7, 11, 18, 29]


@pytest.mark.parametrize(("p", "a", "b", "i", "expected"), [(11, 2, 3, 2, 5), (11, 2, 3, 0, 2), (7, 0, 1, 5, 5)])
def test_generalized_term_examples(p, a, b, i, expected):
    """Small seeded terms computed by hand."""
    assert generalized_term(p, a, b, i) == expected


@pytest.mark.parametrize("p", list(primerange(2, 24)))
def test_generalized_term_shift_identity(p):
    """Seeding with (F_k, F_k+1) shifts the Fibonacci sequence by k."""
    profile = fib_period_sequence(p)
    terms, l = profile.period_terms, profile.l
    for k in range(l):
        for i in range(l):
            assert generalized_term(p, terms[k], terms[(k + 1) % l], i) == terms[(i + k) % l]


@pytest.mark.parametrize("p", [3, 7, 11, 13, 29, 47])
def test_generalized_term_is_linear_in_seed(p):
    """Scaling the seed scales every term."""
    rng = np.random.default_rng(p)
    l = pisano_period(p)
    for _ in range(10):
        k, a, b = (int(v) for v in rng.integers(0, p, size=3))
        for i in range(l):
            assert generalized_term(p, k * a, k * b, i) == k * generalized_term(p, a, b, i) % p


def test_generalized_term_negative_index():
    """Negative indices are rejected."""
    with pytest.raises(ValueError):
        generalized_term(7, 1, 1, -1)


def test_generalized_period_sequence():
    """The (0, 1) seed reproduces the Fibonacci period."""
    assert generalized_period_sequence(11, 0, 1) == PERIOD_11
    lucas = generalized_period_sequence(11, 2, 1)
    assert lucas[:5] == (2, 1, 3, 4, 7)
    assert len(lucas) == 10
    assert generalized_polynomial(11, 0, 1) == fibonacci_polynomial(11)


def test_extended_sequence_p3():
    """Tribonacci period modulo 3."""
    profile = extended_period_sequence(3, 3)
    assert profile.l == 13
    assert profile.period_terms == (0, 1, 1, 2, 1, 1, 1, 0, 2, 0, 2, 1, 0)
    assert profile.zeros == 4


def test_extended_sequence_p7():
    """Tribonacci period modulo 7."""
    profile = extended_period_sequence(7, 3)
    assert profile.l == 48
    assert profile.zeros == 12
    assert profile.period_terms[:11] == (0, 1, 1, 2, 4, 0, 6, 3, 2, 4, 2)
    assert profile.period_terms[-15:] == (2, 2, 4, 1, 0, 5, 6, 4, 1, 4, 2, 0, 6, 1, 0)


def test_extended_sequence_p13():
    """Tribonacci period modulo 13."""
    profile = extended_period_sequence(13, 3)
    assert profile.l == 168
    assert profile.zeros == 18
    assert profile.period_terms[:14] == (0, 1, 1, 2, 4, 7, 0, 11, 5, 3, 6, 1, 10, 4)
    assert profile.period_terms[-8:] == (4, 1, 10, 2, 0, 12, 1, 0)
    assert extended_polynomial(13, 3).degree <= 167


def test_extended_two_step_is_fibonacci():
    """r = 2 is the ordinary Fibonacci sequence."""
    assert extended_period_sequence(11, 2).period_terms == PERIOD_11


@pytest.mark.parametrize("r", [1, 6, 0])
def test_extended_step_range(r):
    """Step counts outside 2..5 are rejected."""
    with pytest.raises(ValueError):
        extended_period_sequence(7, r)


@pytest.mark.parametrize("p", SWEEP_PRIMES)
def test_pair_classes(p):
    """Enumerated pair classes agree with (l - beta)/beta - 1."""
    profile = fib_period_sequence(p)
    assert pair_classes(p) == profile.alpha - 2


def test_pair_classes_p2():
    """p = 2 has no pair classes."""
    with pytest.raises(NotApplicableError):
        pair_classes(2)


def test_table1():
    """The default table reproduces the tabulated invariants."""
    frame = table1()
    assert list(frame.columns) == ["p", "l", "alpha", "s", "beta", "sequence"]
    rows = [tuple(int(v) for v in row) for row in frame[["p", "l", "alpha", "s", "beta"]].values]
    assert rows == TABLE_ROWS
    assert frame.loc[frame["p"] == 11, "sequence"].iloc[0] == list(PERIOD_11)


def test_table1_custom_primes():
    """Rows follow the input order."""
    frame = table1([19, 3])
    assert frame["p"].tolist() == [19, 3]
    assert frame["l"].tolist() == [18, 8]
