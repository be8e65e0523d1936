"""
Fibonacci-type sequences modulo a prime and their period invariants.

The central object is :class:`SequenceProfile`, one period of the Fibonacci
sequence over F_p together with the Pisano period ``l``, the index ``alpha``
of the first zero, the residue ``s`` following it and ``beta``, the order of
``s``. Everything in :mod:`pyFibCodes.fibcodes` is built on these numbers.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Iterable, Tuple

import pandas as pd

from pyFibCodes.exceptions import InvariantError, NotApplicableError, ParameterError
from pyFibCodes.galois import ModulusLike, PrimePoly, ff_inv, ff_order, modulus_value

logger = logging.getLogger(__name__)

#: Step counts accepted by the r-step (extended) recurrence.
EXTENDED_STEPS = range(2, 6)


@dataclass(frozen=True)
class SequenceProfile:
    """
    One Pisano period of the Fibonacci sequence over F_p.

    Attributes
    ----------
    p : int
        The prime modulus.
    l : int
        Pisano period.
    alpha : int
        Index of the first zero with positive index.
    s : int
        Least residue of ``F_{alpha+1}``.
    beta : int
        Multiplicative order of ``s``; equals the number of zeros per period.
    period_terms : tuple of int
        ``F_0, ..., F_{l-1}`` reduced mod p.
    """

    p: int
    l: int
    alpha: int
    s: int
    beta: int
    period_terms: Tuple[int, ...]

    @property
    def zeros(self) -> int:
        return self.period_terms.count(0)

    def to_dict(self) -> dict:
        row = asdict(self)
        row["period_terms"] = list(self.period_terms)
        return row


@dataclass(frozen=True)
class ExtendedProfile:
    """One period of the r-step sequence ``E_n = E_{n-1} + ... + E_{n-r}`` over F_p."""

    p: int
    r: int
    l: int
    zeros: int
    period_terms: Tuple[int, ...]

    def to_dict(self) -> dict:
        row = asdict(self)
        row["period_terms"] = list(self.period_terms)
        return row


@dataclass(frozen=True)
class WallVajdaReport:
    """
    Outcome of the classical divisibility and congruence checks for one prime.

    ``divisibility_clause`` names the Wall condition that applies to ``p``
    (``"l | p-1"`` or ``"l | 2(p+1)"``) and ``vajda_clause`` the matching pair
    of Fibonacci congruences.
    """

    p: int
    l: int
    residue_mod_10: int
    divisibility_clause: str
    divisibility_holds: bool
    vajda_clause: str
    vajda_holds: bool

    @property
    def passed(self) -> bool:
        return self.divisibility_holds and self.vajda_holds

    def to_dict(self) -> dict:
        row = asdict(self)
        row["passed"] = self.passed
        return row


def _fibonacci_cycle(p: int) -> list:
    cap = 6 * p + 2
    terms = []
    a, b = 0, 1
    for _ in range(cap):
        terms.append(a)
        a, b = b, (a + b) % p
        if a == 0 and b == 1:
            return terms
    raise InvariantError(f"Fibonacci sequence mod {p} did not return to (0, 1) within {cap} steps")


@lru_cache(maxsize=None)
def _profile(p: int) -> SequenceProfile:
    terms = _fibonacci_cycle(p)
    l = len(terms)
    alpha = next((i for i in range(1, l) if terms[i] == 0), l)
    s = terms[(alpha + 1) % l]
    beta = ff_order(p, s)
    profile = SequenceProfile(p, l, alpha, s, beta, tuple(terms))
    _check_profile(profile)
    logger.debug("p=%d: l=%d alpha=%d s=%d beta=%d", p, l, alpha, s, beta)
    return profile


def _check_profile(profile: SequenceProfile) -> None:
    terms = profile.period_terms
    broken = []
    if terms[0] != 0 or (profile.l >= 2 and terms[1] != 1):
        broken.append("period does not start with 0, 1")
    if profile.l != profile.alpha * profile.beta:
        broken.append(f"l={profile.l} != alpha*beta={profile.alpha * profile.beta}")
    if profile.zeros != profile.beta:
        broken.append(f"{profile.zeros} zeros per period but beta={profile.beta}")
    if profile.p > 2:
        if profile.beta not in (1, 2, 4):
            broken.append(f"beta={profile.beta} not in {{1, 2, 4}}")
        if profile.l % 2:
            broken.append(f"odd period l={profile.l}")
    if broken:
        raise InvariantError(f"profile of p={profile.p} is inconsistent: " + "; ".join(broken))


def fib_period_sequence(p: ModulusLike) -> SequenceProfile:
    """
    Compute the Fibonacci profile of a prime.

    The recurrence is iterated until the state pair returns to ``(0, 1)``.

    Parameters
    ----------
    p : int or FieldModulus
        The prime modulus.

    Returns
    -------
    SequenceProfile
        Period, invariants and one full period of terms.

    Raises
    ------
    NotPrimeError
        If ``p`` is not prime.
    InvariantError
        If the period search exceeds ``6p + 2`` steps or a profile invariant fails.

    Examples
    --------
    >>> fib_period_sequence(7).l
    16
    """
    return _profile(modulus_value(p))


def pisano_period(p: ModulusLike) -> int:
    """Pisano period ``l_p``."""
    return fib_period_sequence(p).l


def wall_vajda_check(p: ModulusLike) -> WallVajdaReport:
    """
    Check Wall's divisibility and Vajda's congruences for ``p``.

    For ``p = +-1 (mod 10)`` the period divides ``p - 1`` and
    ``F_{p-1} = 0, F_p = 1``; for ``p = +-3 (mod 10)`` the period divides
    ``2(p + 1)`` and ``F_p = -1, F_{p+1} = 0``.

    Raises
    ------
    NotApplicableError
        For ``p`` in ``{2, 5}``, which fall in neither residue class.
    """
    q = modulus_value(p)
    if q in (2, 5):
        raise NotApplicableError(f"p={q} lies in neither residue class of the Wall theorem")
    profile = fib_period_sequence(q)

    def fib(i: int) -> int:
        return profile.period_terms[i % profile.l]

    residue = q % 10
    if residue in (1, 9):
        divisibility = ("l | p-1", (q - 1) % profile.l == 0)
        vajda = ("F_{p-1} = 0, F_p = 1", fib(q - 1) == 0 and fib(q) == 1)
    else:
        divisibility = ("l | 2(p+1)", (2 * (q + 1)) % profile.l == 0)
        vajda = ("F_p = -1, F_{p+1} = 0", fib(q) == q - 1 and fib(q + 1) == 0)
    return WallVajdaReport(q, profile.l, residue, *divisibility, *vajda)


def generalized_term(p: ModulusLike, a: int, b: int, i: int) -> int:
    """
    ``i``-th term of the Fibonacci recurrence seeded with ``(a, b)``.

    Uses ``G(a, b, i) = a*F_{i-1} + b*F_i`` with ``F_{-1} = 1``.

    Examples
    --------
    >>> generalized_term(11, 0, 1, 8)
    10
    """
    if i < 0:
        raise ParameterError(f"term index must be non-negative, got {i}")
    profile = fib_period_sequence(p)
    terms = profile.period_terms
    return (a * terms[(i - 1) % profile.l] + b * terms[i % profile.l]) % profile.p


def generalized_period_sequence(p: ModulusLike, a: int, b: int) -> Tuple[int, ...]:
    """The seeded sequence ``G(a, b, 0..l_p-1)``; its period divides ``l_p``."""
    profile = fib_period_sequence(p)
    return tuple(generalized_term(profile.p, a, b, i) for i in range(profile.l))


def generalized_polynomial(p: ModulusLike, a: int, b: int) -> PrimePoly:
    """Polynomial with coefficient ``G(a, b, i)`` at ``x**i`` over one Pisano period."""
    q = modulus_value(p)
    return PrimePoly(q, generalized_period_sequence(q, a, b))


@lru_cache(maxsize=None)
def _extended(p: int, r: int) -> ExtendedProfile:
    start = (0,) + (1,) * (r - 1)
    cap = p**r + r
    terms = list(start)
    for _ in range(cap):
        terms.append(sum(terms[-r:]) % p)
        if tuple(terms[-r:]) == start:
            break
    else:
        raise InvariantError(f"{r}-step sequence mod {p} did not recur within {cap} steps")
    period = tuple(terms[: len(terms) - r])
    profile = ExtendedProfile(p, r, len(period), period.count(0), period)
    logger.debug("p=%d r=%d: extended period %d with %d zeros", p, r, profile.l, profile.zeros)
    return profile


def extended_period_sequence(p: ModulusLike, r: int) -> ExtendedProfile:
    """
    One period of the r-step Fibonacci sequence over F_p.

    Starts from the state ``(0, 1, ..., 1)`` and iterates until it recurs.

    Parameters
    ----------
    p : int or FieldModulus
        The prime modulus.
    r : int
        Number of summed predecessors, ``2 <= r <= 5``.

    Raises
    ------
    ParameterError
        If ``r`` is out of range.
    InvariantError
        If the state does not recur within ``p**r + r`` steps.
    """
    if r not in EXTENDED_STEPS:
        raise ParameterError(f"step count r must be between 2 and 5, got {r}")
    return _extended(modulus_value(p), r)


def fibonacci_polynomial(p: ModulusLike) -> PrimePoly:
    """``f(x) = sum F_i x^i`` over one Pisano period."""
    profile = fib_period_sequence(p)
    return PrimePoly(profile.p, profile.period_terms)


def extended_polynomial(p: ModulusLike, r: int) -> PrimePoly:
    """``t(x) = sum E_i x^i`` over one period of the r-step sequence."""
    profile = extended_period_sequence(p, r)
    return PrimePoly(profile.p, profile.period_terms)


def pair_classes(p: ModulusLike) -> int:
    """
    Number of scalar classes of consecutive nonzero term pairs.

    The closed form ``(l - beta)/beta - 1`` is compared with a direct count:
    every pair ``(F_i, F_{i+1})`` with both entries nonzero is normalised to
    first entry 1 and the distinct normalised pairs are counted.

    Raises
    ------
    NotApplicableError
        For ``p = 2``.
    InvariantError
        If the two counts disagree.
    """
    profile = fib_period_sequence(p)
    q = profile.p
    if q == 2:
        raise NotApplicableError("pair classes are defined for odd primes only")
    formula = (profile.l - profile.beta) // profile.beta - 1
    terms = profile.period_terms
    classes = set()
    for i, a in enumerate(terms):
        b = terms[(i + 1) % profile.l]
        if a and b:
            classes.add(b * ff_inv(q, a) % q)
    if len(classes) != formula:
        raise InvariantError(
            f"p={q}: {len(classes)} enumerated pair classes but the closed form gives {formula}"
        )
    return formula


def table1(primes: Iterable[int] = (7, 11, 13, 17, 19, 23)) -> pd.DataFrame:
    """
    Period invariants of several primes as a table.

    Returns
    -------
    pandas.DataFrame
        Columns ``p, l, alpha, s, beta, sequence``; one row per prime, in input order.
    """
    rows = []
    for p in primes:
        profile = fib_period_sequence(p)
        rows.append(
            {
                "p": profile.p,
                "l": profile.l,
                "alpha": profile.alpha,
                "s": profile.s,
                "beta": profile.beta,
                "sequence": list(profile.period_terms),
            }
        )
    return pd.DataFrame(rows, columns=["p", "l", "alpha", "s", "beta", "sequence"])
