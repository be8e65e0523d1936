"""
Cyclic codes generated by Fibonacci-type polynomials.

Codes are ideals of F_p[x]/(x^n - 1) stored through their monic generator
``g``. Parameters and weight distributions are computed exactly, by
enumerating all ``p**k`` codewords or, when that is too many, through the
MacWilliams transform of the dual. Closed-form predictions for the Fibonacci
codes live next to the exact routines so the two can be compared.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Dict, Iterator, Mapping, Optional, Sequence

import numpy as np
import pandas as pd
from scipy.special import comb
from sympy import discrete_log, primitive_root

from pyFibCodes.config import ENUMERATION_CHUNK, enumeration_cap
from pyFibCodes.exceptions import (
    DimensionMismatchError,
    InconsistentDistributionError,
    ModulusMismatchError,
    NotApplicableError,
    NotCyclicGeneratorError,
    ParameterError,
    TooLargeError,
)
from pyFibCodes.fibseq import (
    SequenceProfile,
    extended_period_sequence,
    extended_polynomial,
    fib_period_sequence,
    fibonacci_polynomial,
    generalized_polynomial,
)
from pyFibCodes.galois import FpMatrix, ModulusLike, PrimePoly, modulus_value, poly_divmod, poly_gcd

logger = logging.getLogger(__name__)

#: (p, r) pairs for which the extended construction has proven parameters.
EXTENDED_THEOREM_CASES = frozenset({(7, 3), (13, 3)})


class Regime(str, Enum):
    """Parameter regime of a code relative to the Pisano period of its field."""

    FIB_MDS = "FIB_MDS"
    FIB_PM1 = "FIB_PM1"
    FIB_2P2 = "FIB_2P2"
    EXTENDED = "EXTENDED"
    GENERIC = "GENERIC"


@dataclass(frozen=True)
class CyclicCode:
    """
    Cyclic code of length ``n`` over F_p generated by ``g``.

    Attributes
    ----------
    p : int
        Field modulus.
    n : int
        Code length.
    g : PrimePoly
        Monic generator, a divisor of ``x**n - 1``.
    source : PrimePoly, optional
        The polynomial the code was derived from (for example the Fibonacci polynomial).
    origin : str
        One of ``fibonacci``, ``extended``, ``generalized``, ``dual`` or ``custom``.
    experimental : bool
        True when the construction has no proven parameters.
    """

    p: int
    n: int
    g: PrimePoly
    source: Optional[PrimePoly] = field(default=None, compare=False, repr=False)
    origin: str = field(default="custom", compare=False)
    experimental: bool = field(default=False, compare=False)

    @property
    def k(self) -> int:
        return self.n - self.g.degree

    @property
    def size(self) -> int:
        """Number of codewords, ``p**k``."""
        return self.p**self.k

    @cached_property
    def parity_polynomial(self) -> PrimePoly:
        """``h(x) = (x^n - 1) / g(x)``."""
        return poly_divmod(PrimePoly.cyclic_modulus(self.p, self.n), self.g)[0]

    @cached_property
    def generator_matrix(self) -> FpMatrix:
        """``k x n`` matrix whose row ``i`` holds the coefficients of ``x^i g(x)``."""
        rows = np.zeros((self.k, self.n), dtype=np.int64)
        coeffs = np.array(self.g.coeffs, dtype=np.int64)
        for i in range(self.k):
            rows[i, i : i + len(coeffs)] = coeffs
        return FpMatrix(self.p, rows)

    @property
    def label(self) -> str:
        return f"[{self.n},{self.k}]_{self.p}"

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "k": self.k,
            "generator": list(self.g.coeffs),
            "origin": self.origin,
            "experimental": self.experimental,
        }


@dataclass(frozen=True)
class WeightDistribution:
    """
    Exact Hamming weight distribution of a code of length ``n``.

    Only nonzero multiplicities are stored; :meth:`count` returns 0 for the rest.
    """

    n: int
    counts: Mapping[int, int]

    def __post_init__(self):
        clean: Dict[int, int] = {}
        for w, a in sorted(self.counts.items()):
            w, a = int(w), int(a)
            if not 0 <= w <= self.n:
                raise InconsistentDistributionError(f"weight {w} outside [0, {self.n}]")
            if a < 0:
                raise InconsistentDistributionError(f"negative multiplicity {a} at weight {w}")
            if a:
                clean[w] = a
        object.__setattr__(self, "counts", clean)

    def count(self, w: int) -> int:
        return self.counts.get(w, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def nonzero_weights(self) -> list:
        return [w for w in self.counts if w]

    @property
    def min_weight(self) -> Optional[int]:
        weights = self.nonzero_weights
        return weights[0] if weights else None

    @property
    def max_weight(self) -> Optional[int]:
        weights = self.nonzero_weights
        return weights[-1] if weights else None

    def polynomial(self) -> str:
        """
        Homogeneous weight enumerator ``sum A_w u^(n-w) v^w``.

        Examples
        --------
        >>> WeightDistribution(10, {0: 1, 9: 100, 10: 20}).polynomial()
        'u^10+100uv^9+20v^10'
        """

        def power(var: str, e: int) -> str:
            if e == 0:
                return ""
            return var if e == 1 else f"{var}^{e}"

        terms = []
        for w, a in self.counts.items():
            monomial = power("u", self.n - w) + power("v", w)
            coeff = "" if a == 1 and monomial else str(a)
            terms.append(coeff + monomial)
        return "+".join(terms) if terms else "0"

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"weight": list(self.counts), "count": list(self.counts.values())},
            columns=["weight", "count"],
        )

    def to_json_dict(self) -> dict:
        return {str(w): a for w, a in self.counts.items()}


@dataclass(frozen=True)
class CodeClassification:
    """Bound arithmetic for an ``[n, k, d]`` code."""

    n: int
    k: int
    d: int
    is_mds: bool
    singleton_defect: int
    meets_griesmer: bool
    griesmer_lhs: int
    griesmer_rhs: int
    regime: Regime

    def to_dict(self) -> dict:
        row = asdict(self)
        row["regime"] = self.regime.value
        return row


@dataclass(frozen=True)
class RegimePrediction:
    """
    Parameters a theorem predicts for a Fibonacci-type code.

    ``n``, ``k`` and ``d`` are None when the regime is GENERIC.
    """

    p: int
    regime: Regime
    l: int
    beta: int
    n: Optional[int]
    k: Optional[int]
    d: Optional[int]
    is_mds: bool
    meets_griesmer: bool

    def to_dict(self) -> dict:
        row = asdict(self)
        row["regime"] = self.regime.value
        return row


# --------------------------------------------------------------------------
# construction


def canonical_generator(f: PrimePoly, n: int) -> PrimePoly:
    """
    Monic generator of the cyclic code spanned by ``f`` in F_p[x]/(x^n - 1).

    Returns ``gcd(f, x^n - 1)``.

    Raises
    ------
    NotCyclicGeneratorError
        If ``f`` is the zero polynomial.
    """
    if f.is_zero:
        raise NotCyclicGeneratorError("the zero polynomial does not generate a cyclic code")
    return poly_gcd(f, PrimePoly.cyclic_modulus(f.p, n))


def build_cyclic_code(
    p: ModulusLike,
    n: int,
    g: PrimePoly,
    *,
    source: Optional[PrimePoly] = None,
    origin: str = "custom",
    experimental: bool = False,
) -> CyclicCode:
    """
    Cyclic code of length ``n`` generated by the monic divisor ``g`` of ``x^n - 1``.

    Raises
    ------
    ModulusMismatchError
        If ``g`` lives over a different field.
    ParameterError
        If ``g`` is not monic.
    NotCyclicGeneratorError
        If ``g`` does not divide ``x^n - 1``.
    """
    q = modulus_value(p)
    if g.p != q:
        raise ModulusMismatchError(f"generator over F_{g.p} for a code over F_{q}")
    if n < 1:
        raise ParameterError(f"code length must be positive, got {n}")
    if g.is_zero:
        raise NotCyclicGeneratorError("the zero polynomial does not generate a cyclic code")
    if not g.is_monic:
        raise ParameterError(f"generator must be monic, leading coefficient is {g.leading}")
    remainder = poly_divmod(PrimePoly.cyclic_modulus(q, n), g)[1]
    if not remainder.is_zero:
        raise NotCyclicGeneratorError(f"{g} does not divide x^{n} - 1 over F_{q}")
    return CyclicCode(q, n, g, source=source, origin=origin, experimental=experimental)


def fibonacci_code(p: ModulusLike) -> CyclicCode:
    """
    Cyclic code of length ``l_p`` generated by the Fibonacci polynomial.

    Raises
    ------
    NotApplicableError
        For ``p = 2``.
    """
    q = modulus_value(p)
    if q == 2:
        raise NotApplicableError("Fibonacci codes are defined for odd primes")
    return _fibonacci_code(q)


@lru_cache(maxsize=None)
def _fibonacci_code(p: int) -> CyclicCode:
    profile = fib_period_sequence(p)
    f = fibonacci_polynomial(profile.p)
    g = canonical_generator(f, profile.l)
    code = build_cyclic_code(profile.p, profile.l, g, source=f, origin="fibonacci")
    logger.info("Fibonacci code over F_%d: %s", profile.p, code.label)
    return code


def extended_fibonacci_code(p: ModulusLike, r: int) -> CyclicCode:
    """
    Cyclic code generated by the r-step Fibonacci polynomial.

    Pairs outside the proven cases ``(7, 3)`` and ``(13, 3)`` are flagged
    ``experimental`` and their parameters come only from computation.
    """
    profile = extended_period_sequence(p, r)
    t = extended_polynomial(profile.p, r)
    g = canonical_generator(t, profile.l)
    experimental = (profile.p, r) not in EXTENDED_THEOREM_CASES
    if experimental:
        logger.warning(
            "extended code for p=%d, r=%d has no proven parameters; results are experimental",
            profile.p,
            r,
        )
    return build_cyclic_code(
        profile.p, profile.l, g, source=t, origin="extended", experimental=experimental
    )


def generalized_fibonacci_code(p: ModulusLike, a: int, b: int) -> CyclicCode:
    """
    Cyclic code of length ``l_p`` generated by the sequence seeded with ``(a, b)``.

    The seeds ``(0, 1)`` give :func:`fibonacci_code` and ``(2, 1)`` the Lucas code.
    A geometric seed (``b = a*r`` with ``r^2 = r + 1``) collapses to dimension 1.
    """
    q = modulus_value(p)
    if q == 2:
        raise NotApplicableError("Fibonacci codes are defined for odd primes")
    f = generalized_polynomial(q, a, b)
    n = fib_period_sequence(q).l
    g = canonical_generator(f, n)
    return build_cyclic_code(q, n, g, source=f, origin="generalized")


def dual_code(c: CyclicCode) -> CyclicCode:
    """Dual code, generated by the monic reciprocal of ``h = (x^n - 1)/g``."""
    g_dual = c.parity_polynomial.reciprocal().monic()
    return CyclicCode(
        c.p, c.n, g_dual, source=c.g, origin="dual", experimental=c.experimental
    )


def is_codeword(c: CyclicCode, word: Sequence[int]) -> bool:
    """True if ``word`` (length n) is divisible by ``g`` as a polynomial."""
    if len(word) != c.n:
        raise DimensionMismatchError(f"word of length {len(word)} for a code of length {c.n}")
    return poly_divmod(PrimePoly(c.p, tuple(int(x) for x in word)), c.g)[1].is_zero


# --------------------------------------------------------------------------
# enumeration


def _check_size(c: CyclicCode, cap: int) -> None:
    if c.size > cap:
        raise TooLargeError(
            f"{c.label} has {c.p}^{c.k} codewords, above the enumeration cap of {cap}; "
            "use macwilliams_transform on the dual or resolve_weight_distribution"
        )


def iter_codewords(
    c: CyclicCode, *, chunk: int = ENUMERATION_CHUNK, cap: Optional[int] = None
) -> Iterator[np.ndarray]:
    """
    Yield all codewords in blocks of at most ``chunk`` rows.

    Message ``m`` is the base-p expansion of its index, so the order is
    deterministic: block 0 starts with the zero word.

    Raises
    ------
    TooLargeError
        If ``p**k`` exceeds the cap.
    """
    _check_size(c, enumeration_cap() if cap is None else cap)
    p, k = c.p, c.k
    G = c.generator_matrix.entries
    total = c.size
    powers = np.array([p**j for j in range(k)], dtype=np.int64)
    for start in range(0, total, chunk):
        index = np.arange(start, min(start + chunk, total), dtype=np.int64)
        messages = (index[:, None] // powers[None, :]) % p
        words = np.zeros((index.size, c.n), dtype=np.int64)
        for j in range(k):
            words = (words + messages[:, j : j + 1] * G[j]) % p
        yield words


def codewords(c: CyclicCode, *, cap: Optional[int] = None) -> np.ndarray:
    """All ``p**k`` codewords stacked into one ``(p**k, n)`` array."""
    blocks = list(iter_codewords(c, cap=cap))
    if not blocks:
        return np.zeros((0, c.n), dtype=np.int64)
    return np.vstack(blocks)


def weight_distribution(c: CyclicCode, *, cap: Optional[int] = None) -> WeightDistribution:
    """
    Weight distribution by full enumeration.

    Raises
    ------
    TooLargeError
        If ``p**k`` is above the enumeration cap.
    """
    counts = np.zeros(c.n + 1, dtype=np.int64)
    for block_number, block in enumerate(iter_codewords(c, cap=cap)):
        counts += np.bincount(np.count_nonzero(block, axis=1), minlength=c.n + 1)
        if block_number and block_number % 64 == 0:
            logger.debug("%s: %d codewords counted", c.label, int(counts.sum()))
    return WeightDistribution(c.n, {w: int(a) for w, a in enumerate(counts) if a})


@lru_cache(maxsize=None)
def _binom(n: int, r: int) -> int:
    return int(comb(n, r, exact=True))


def _krawtchouk(p: int, n: int, j: int, w: int) -> int:
    return sum(
        (-1) ** s * (p - 1) ** (j - s) * _binom(w, s) * _binom(n - w, j - s)
        for s in range(min(w, j) + 1)
    )


def macwilliams_transform(wd: WeightDistribution, p: ModulusLike, n: int, k: int) -> WeightDistribution:
    """
    Dual weight distribution from the MacWilliams identity.

    Computes ``B_j = p^-k sum_w A_w K_j(w)`` with Krawtchouk polynomials
    ``K_j``, in exact integer arithmetic.

    Raises
    ------
    InconsistentDistributionError
        If ``wd`` does not describe an ``[n, k]`` code over F_p, or the
        transform is not integral and nonnegative.
    """
    q = modulus_value(p)
    size = q**k
    if wd.n != n:
        raise InconsistentDistributionError(f"distribution has length {wd.n}, expected {n}")
    if wd.total != size or wd.count(0) != 1:
        raise InconsistentDistributionError(
            f"distribution sums to {wd.total} with A_0={wd.count(0)}; expected {q}^{k} with A_0=1"
        )
    dual = {}
    for j in range(n + 1):
        numerator = sum(a * _krawtchouk(q, n, j, w) for w, a in wd.counts.items())
        b, rest = divmod(numerator, size)
        if rest or b < 0:
            raise InconsistentDistributionError(
                f"transform is not a distribution at weight {j}: {numerator}/{size}"
            )
        dual[j] = b
    return WeightDistribution(n, dual)


def resolve_weight_distribution(c: CyclicCode, *, cap: Optional[int] = None) -> WeightDistribution:
    """
    Weight distribution by enumeration, falling back to the dual.

    Raises
    ------
    TooLargeError
        If neither the code nor its dual can be enumerated.
    """
    cap = enumeration_cap() if cap is None else cap
    if c.size <= cap:
        return weight_distribution(c, cap=cap)
    dual = dual_code(c)
    if dual.size > cap:
        raise TooLargeError(
            f"neither {c.label} nor its dual {dual.label} fits under the enumeration cap of {cap}"
        )
    logger.warning("%s is above the enumeration cap; using the MacWilliams transform of its dual", c.label)
    return macwilliams_transform(weight_distribution(dual, cap=cap), c.p, c.n, dual.k)


def min_distance(c: CyclicCode, *, cap: Optional[int] = None) -> int:
    """
    Smallest nonzero weight of the code.

    Raises
    ------
    ParameterError
        For the zero code.
    TooLargeError
        If neither the code nor its dual can be enumerated.
    """
    if c.k == 0:
        raise ParameterError(f"{c.label} is the zero code and has no minimum distance")
    return resolve_weight_distribution(c, cap=cap).min_weight


# --------------------------------------------------------------------------
# bounds and regimes


def griesmer_sum(d: int, p: int, k: int) -> int:
    """``sum_{i<k} ceil(d / p^i)``."""
    return sum(-(-d // p**i) for i in range(k))


def profile_regime(profile: SequenceProfile) -> Regime:
    """Regime of the Fibonacci code of a profile, from ``l`` and ``beta``."""
    p, l, beta = profile.p, profile.l, profile.beta
    if p in (2, 5):
        return Regime.GENERIC
    if l == p - 1:
        if beta == 1:
            return Regime.FIB_MDS
        if beta in (2, 4):
            return Regime.FIB_PM1
    if l == 2 * p + 2 and beta in (2, 4):
        return Regime.FIB_2P2
    return Regime.GENERIC


def code_regime(c: CyclicCode) -> Regime:
    """
    Regime of an arbitrary code.

    Extended codes are EXTENDED. Otherwise a FIB_* regime is reported only
    when the code has length ``l_p`` and the generator of the Fibonacci code.
    """
    if c.origin == "extended":
        return Regime.EXTENDED
    if c.p in (2, 5):
        return Regime.GENERIC
    profile = fib_period_sequence(c.p)
    if c.n != profile.l or c.g != fibonacci_code(c.p).g:
        return Regime.GENERIC
    return profile_regime(profile)


def classify_code(c: CyclicCode, *, cap: Optional[int] = None) -> CodeClassification:
    """Singleton and Griesmer bound arithmetic for ``c``."""
    d = min_distance(c, cap=cap)
    defect = c.n + 1 - c.k - d
    rhs = griesmer_sum(d, c.p, c.k)
    return CodeClassification(
        n=c.n,
        k=c.k,
        d=d,
        is_mds=defect == 0,
        singleton_defect=defect,
        meets_griesmer=c.n == rhs,
        griesmer_lhs=c.n,
        griesmer_rhs=rhs,
        regime=code_regime(c),
    )


def predict_regime(p: ModulusLike) -> RegimePrediction:
    """
    Theorem-predicted parameters of the Fibonacci code over F_p.

    In every theorem regime the code is ``[l, 2, l - beta]``.

    Raises
    ------
    NotApplicableError
        For ``p`` in ``{2, 5}``.
    """
    q = modulus_value(p)
    if q in (2, 5):
        raise NotApplicableError(f"no theorem regime applies to p={q}")
    profile = fib_period_sequence(q)
    regime = profile_regime(profile)
    if regime is Regime.GENERIC:
        return RegimePrediction(q, regime, profile.l, profile.beta, None, None, None, False, False)
    n, k, d = profile.l, 2, profile.l - profile.beta
    return RegimePrediction(
        q,
        regime,
        profile.l,
        profile.beta,
        n,
        k,
        d,
        is_mds=n + 1 == k + d,
        meets_griesmer=n == griesmer_sum(d, q, k),
    )


def predict_extended(p: ModulusLike, r: int) -> RegimePrediction:
    """
    Proven parameters ``[p^(r-1) - 1, r, p^(r-1) - 1 - beta]`` of an extended code.

    Raises
    ------
    NotApplicableError
        Outside the cases ``(7, 3)`` and ``(13, 3)``.
    """
    q = modulus_value(p)
    if (q, r) not in EXTENDED_THEOREM_CASES:
        raise NotApplicableError(f"no proven parameters for the extended code with p={q}, r={r}")
    profile = extended_period_sequence(q, r)
    n = q ** (r - 1) - 1
    d = n - profile.zeros
    return RegimePrediction(
        q,
        Regime.EXTENDED,
        profile.l,
        profile.zeros,
        n,
        r,
        d,
        is_mds=n + 1 == r + d,
        meets_griesmer=n == griesmer_sum(d, q, r),
    )


def predicted_weight_distribution(p: ModulusLike) -> WeightDistribution:
    """
    Closed-form weight distribution of the Fibonacci code.

    Weight ``l - beta`` occurs ``2(p-1) + ((l-beta)/beta - 1)(p-1)`` times and
    every other nonzero codeword has full weight ``l``.

    Raises
    ------
    NotApplicableError
        Outside the theorem regimes.
    """
    prediction = predict_regime(p)
    if prediction.regime is Regime.GENERIC:
        raise NotApplicableError(f"p={prediction.p} is not in a theorem regime")
    q, l, beta = prediction.p, prediction.l, prediction.beta
    low = 2 * (q - 1) + ((l - beta) // beta - 1) * (q - 1)
    return WeightDistribution(l, {0: 1, l - beta: low, l: q * q - 1 - low})


def rs_check(c: CyclicCode) -> bool:
    """
    True if ``c`` is a Reed-Solomon code.

    The roots of ``g`` must be ``deg g`` distinct elements of F_p forming a
    run of consecutive powers of some primitive element.

    Raises
    ------
    NotApplicableError
        If ``n != p - 1``.
    """
    p = c.p
    if c.n != p - 1:
        raise NotApplicableError(f"Reed-Solomon codes over F_{p} have length {p - 1}, not {c.n}")
    m = c.g.degree
    if not 1 <= m <= p - 2:
        return False
    roots = c.g.roots()
    if len(roots) != m:
        return False
    order = p - 1
    base = int(primitive_root(p))
    logs = [int(discrete_log(p, r, base)) for r in roots]
    for t in range(1, order):
        if math.gcd(t, order) != 1:
            continue
        # base^t is primitive; log to that base is log_base * t^-1.
        t_inv = pow(t, -1, order)
        exponents = {e * t_inv % order for e in logs}
        for start in exponents:
            if {(start + i) % order for i in range(m)} == exponents:
                logger.debug("%s: roots are consecutive powers of %d", c.label, pow(base, t, p))
                return True
    return False
