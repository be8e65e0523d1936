"""
Exact arithmetic over prime fields F_p.

The module carries three value types used everywhere else in the package:
:class:`FieldModulus` (a validated prime), :class:`PrimePoly` (a dense
univariate polynomial over F_p, coefficients stored constant term first) and
:class:`FpMatrix` (a numpy-backed matrix with entries reduced mod p). All of
them are immutable once built.

Polynomial arithmetic is delegated to ``sympy.polys.galoistools``, which works
on dense coefficient lists with the leading term first; elimination runs on
sympy ``DomainMatrix`` objects over ``GF(p)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import isprime
from sympy.ntheory import n_order
from sympy.polys.domains import GF, ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_div,
    gf_eval,
    gf_gcd,
    gf_monic,
    gf_mul,
    gf_mul_ground,
    gf_neg,
    gf_sub,
)
from sympy.polys.matrices import DomainMatrix

from pyFibCodes.config import MODULUS_LIMIT
from pyFibCodes.exceptions import (
    DimensionMismatchError,
    FieldDivisionError,
    ModulusMismatchError,
    NotPrimeError,
    ParameterError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldModulus:
    """
    The characteristic of a prime field F_p.

    Parameters
    ----------
    p : int
        A prime with ``2 <= p < 2**31``.

    Raises
    ------
    NotPrimeError
        If ``p`` is not a prime in the supported range.
    """

    p: int

    def __post_init__(self):
        object.__setattr__(self, "p", _checked_modulus(_as_int(self.p)))

    def __int__(self) -> int:
        return self.p

    def __index__(self) -> int:
        return self.p

    def __str__(self) -> str:
        return f"F_{self.p}"


ModulusLike = Union[int, FieldModulus]


def _as_int(value) -> int:
    if isinstance(value, FieldModulus):
        return value.p
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise NotPrimeError(f"modulus must be an integer, not {type(value).__name__}")
    return int(value)


@lru_cache(maxsize=None)
def _checked_modulus(p: int) -> int:
    if not 2 <= p < MODULUS_LIMIT:
        raise NotPrimeError(f"modulus {p} is outside the supported range [2, 2^31)")
    if not isprime(p):
        raise NotPrimeError(f"{p} is not a prime")
    return p


def as_modulus(p: ModulusLike) -> FieldModulus:
    """Validate ``p`` and wrap it as a :class:`FieldModulus`."""
    if isinstance(p, FieldModulus):
        return p
    return FieldModulus(_as_int(p))


def modulus_value(p: ModulusLike) -> int:
    """Validate ``p`` and return it as a plain integer."""
    return _checked_modulus(_as_int(p))


# --------------------------------------------------------------------------
# scalars


def ff_inv(p: ModulusLike, a: int) -> int:
    """
    Multiplicative inverse of ``a`` in F_p.

    Parameters
    ----------
    p : int or FieldModulus
        Field modulus.
    a : int
        Residue; reduced mod p before inversion.

    Returns
    -------
    int
        ``b`` in ``[1, p)`` with ``a*b = 1 (mod p)``.

    Raises
    ------
    FieldDivisionError
        If ``a = 0 (mod p)``.
    """
    q = modulus_value(p)
    a = int(a) % q
    if a == 0:
        raise FieldDivisionError(f"0 has no inverse modulo {q}")
    return pow(a, -1, q)


def ff_order(p: ModulusLike, a: int) -> int:
    """
    Multiplicative order of ``a`` modulo ``p``.

    Returns the smallest ``m >= 1`` with ``a**m = 1 (mod p)``; it always divides ``p - 1``.

    Raises
    ------
    FieldDivisionError
        If ``a = 0 (mod p)``.
    """
    q = modulus_value(p)
    a = int(a) % q
    if a == 0:
        raise FieldDivisionError(f"the order of 0 modulo {q} is undefined")
    return int(n_order(a, q))


# --------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class PrimePoly:
    """
    Dense polynomial over F_p.

    ``coeffs[i]`` is the coefficient of ``x**i``. Coefficients are reduced
    into ``[0, p)`` and trailing zeros are trimmed on construction, so the
    zero polynomial is the empty tuple and has degree -1.

    Examples
    --------
    >>> g = PrimePoly(11, (10, 1, 1))  # x^2 + x - 1 over F_11
    >>> g.degree
    2
    """

    p: int
    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        p = modulus_value(self.p)
        coeffs = [int(c) % p for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_dense(cls, p: int, dense: Sequence[int]) -> PrimePoly:
        """Build from a galoistools coefficient list (leading coefficient first)."""
        return cls(p, tuple(int(c) for c in reversed(dense)))

    def dense(self) -> List[int]:
        """Coefficients leading term first, as galoistools expects."""
        return [ZZ(c) for c in reversed(self.coeffs)]

    @classmethod
    def zero(cls, p: ModulusLike) -> PrimePoly:
        return cls(modulus_value(p), ())

    @classmethod
    def one(cls, p: ModulusLike) -> PrimePoly:
        return cls(modulus_value(p), (1,))

    @classmethod
    def monomial(cls, p: ModulusLike, degree: int, coeff: int = 1) -> PrimePoly:
        """``coeff * x**degree``."""
        return cls(modulus_value(p), (0,) * degree + (coeff,))

    @classmethod
    def cyclic_modulus(cls, p: ModulusLike, n: int) -> PrimePoly:
        """``x**n - 1``."""
        if n < 1:
            raise ParameterError(f"code length must be positive, got {n}")
        q = modulus_value(p)
        return cls(q, (q - 1,) + (0,) * (n - 1) + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def monic(self) -> PrimePoly:
        """Scale to leading coefficient 1; the zero polynomial is returned unchanged."""
        if self.is_zero or self.is_monic:
            return self
        return PrimePoly.from_dense(self.p, gf_monic(self.dense(), self.p, ZZ)[1])

    def scale(self, c: int) -> PrimePoly:
        return PrimePoly.from_dense(self.p, gf_mul_ground(self.dense(), ZZ(int(c) % self.p), self.p, ZZ))

    def reciprocal(self) -> PrimePoly:
        """``x**deg * f(1/x)``, i.e. the coefficient list reversed."""
        return PrimePoly(self.p, tuple(reversed(self.coeffs)))

    def shift(self, k: int) -> PrimePoly:
        """Multiply by ``x**k``."""
        if self.is_zero:
            return self
        return PrimePoly(self.p, (0,) * k + self.coeffs)

    def __call__(self, x: int) -> int:
        return int(gf_eval(self.dense(), ZZ(int(x) % self.p), self.p, ZZ)) % self.p

    def roots(self) -> Tuple[int, ...]:
        """Distinct roots in F_p, found by trial evaluation."""
        return tuple(x for x in range(self.p) if self(x) == 0)

    def to_list(self) -> list:
        return list(self.coeffs)

    def padded(self, length: int) -> np.ndarray:
        """Coefficient vector zero-padded to ``length`` entries."""
        if self.degree >= length:
            raise DimensionMismatchError(
                f"degree {self.degree} polynomial does not fit in length {length}"
            )
        out = np.zeros(length, dtype=np.int64)
        out[: len(self.coeffs)] = self.coeffs
        return out

    def __add__(self, other: PrimePoly) -> PrimePoly:
        _same_field(self, other)
        return PrimePoly.from_dense(self.p, gf_add(self.dense(), other.dense(), self.p, ZZ))

    def __neg__(self) -> PrimePoly:
        return PrimePoly.from_dense(self.p, gf_neg(self.dense(), self.p, ZZ))

    def __sub__(self, other: PrimePoly) -> PrimePoly:
        _same_field(self, other)
        return PrimePoly.from_dense(self.p, gf_sub(self.dense(), other.dense(), self.p, ZZ))

    def __mul__(self, other):
        if isinstance(other, PrimePoly):
            return poly_mul(self, other)
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        return NotImplemented

    __rmul__ = __mul__

    def __divmod__(self, other: PrimePoly):
        return poly_divmod(self, other)

    def __floordiv__(self, other: PrimePoly) -> PrimePoly:
        return poly_divmod(self, other)[0]

    def __mod__(self, other: PrimePoly) -> PrimePoly:
        return poly_divmod(self, other)[1]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            head = "" if c == 1 else str(c)
            terms.append(f"{head}x" if i == 1 else f"{head}x^{i}")
        return " + ".join(terms)


def _same_field(a: PrimePoly, b: PrimePoly) -> None:
    if a.p != b.p:
        raise ModulusMismatchError(f"polynomials over F_{a.p} and F_{b.p} cannot be combined")


def poly_mul(a: PrimePoly, b: PrimePoly) -> PrimePoly:
    """
    Exact product in F_p[x].

    Raises
    ------
    ModulusMismatchError
        If the operands live over different fields.
    """
    _same_field(a, b)
    return PrimePoly.from_dense(a.p, gf_mul(a.dense(), b.dense(), a.p, ZZ))


def poly_divmod(a: PrimePoly, b: PrimePoly) -> Tuple[PrimePoly, PrimePoly]:
    """
    Division with remainder ``a = q*b + r`` with ``deg r < deg b``.

    Raises
    ------
    FieldDivisionError
        If ``b`` is the zero polynomial.
    ModulusMismatchError
        If the operands live over different fields.
    """
    _same_field(a, b)
    if b.is_zero:
        raise FieldDivisionError("polynomial division by zero")
    quot, rem = gf_div(a.dense(), b.dense(), a.p, ZZ)
    return PrimePoly.from_dense(a.p, quot), PrimePoly.from_dense(a.p, rem)


def poly_gcd(a: PrimePoly, b: PrimePoly) -> PrimePoly:
    """
    Monic greatest common divisor.

    ``gcd(a, 0)`` is the monic normalisation of ``a``.

    Raises
    ------
    FieldDivisionError
        If both arguments are zero.
    """
    _same_field(a, b)
    if a.is_zero and b.is_zero:
        raise FieldDivisionError("gcd(0, 0) is undefined")
    return PrimePoly.from_dense(a.p, gf_gcd(a.dense(), b.dense(), a.p, ZZ))


# --------------------------------------------------------------------------
# matrices


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """
    Matrix over F_p stored as a read-only ``int64`` numpy array.

    Parameters
    ----------
    p : int or FieldModulus
        Field modulus.
    entries : array_like
        Two-dimensional array of integers; reduced mod p on construction.
    """

    p: int
    entries: np.ndarray

    def __post_init__(self):
        p = modulus_value(self.p)
        arr = np.array(self.entries, dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatchError(f"FpMatrix needs a 2-D array, got {arr.ndim}-D")
        arr %= p
        arr.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_rows(cls, p: ModulusLike, rows: Iterable[Sequence[int]], cols: int) -> FpMatrix:
        data = [list(r) for r in rows]
        arr = np.array(data, dtype=np.int64).reshape(len(data), cols)
        return cls(modulus_value(p), arr)

    @classmethod
    def identity(cls, p: ModulusLike, size: int) -> FpMatrix:
        return cls(modulus_value(p), np.eye(size, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j]

    def transpose(self) -> FpMatrix:
        return FpMatrix(self.p, self.entries.T)

    def __matmul__(self, other: FpMatrix) -> FpMatrix:
        if self.p != other.p:
            raise ModulusMismatchError(f"matrices over F_{self.p} and F_{other.p}")
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        prod = self.entries.astype(object) @ other.entries.astype(object)
        return FpMatrix(self.p, np.asarray(prod % self.p, dtype=np.int64).reshape(self.rows, other.cols))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.p, self.shape, self.entries.tobytes()))

    def tolist(self) -> list:
        return self.entries.tolist()


def vecmat(p: ModulusLike, vector: Sequence[int], matrix: FpMatrix) -> np.ndarray:
    """
    Row vector times matrix over F_p without int64 overflow.

    Accumulates one row at a time and reduces after every step, so the
    intermediate never exceeds ``p + (p-1)**2``.
    """
    q = modulus_value(p)
    if len(vector) != matrix.rows:
        raise DimensionMismatchError(
            f"vector of length {len(vector)} does not match {matrix.rows} matrix rows"
        )
    acc = np.zeros(matrix.cols, dtype=np.int64)
    for coeff, row in zip(vector, matrix.entries):
        c = int(coeff) % q
        if c:
            acc = (acc + c * row) % q
    return acc


def _rref(entries: np.ndarray, p: int) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Reduced row echelon form of an integer array over GF(p) and its pivot columns."""
    rows, cols = entries.shape
    if rows == 0 or cols == 0:
        return entries.copy(), ()
    field = GF(p)
    dm = DomainMatrix([[field(int(v)) for v in row] for row in entries.tolist()], (rows, cols), field)
    reduced, pivots = dm.rref()
    # GF(p) elements may convert to symmetric residues
    out = np.array([[int(v) % p for v in row] for row in reduced.to_list()], dtype=np.int64)
    return out.reshape(rows, cols), tuple(int(c) for c in pivots)


def row_reduce(matrix: FpMatrix) -> Tuple[FpMatrix, Tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns."""
    reduced, pivots = _rref(matrix.entries, matrix.p)
    return FpMatrix(matrix.p, reduced), pivots


def rank(matrix: FpMatrix) -> int:
    """Rank over F_p."""
    return len(row_reduce(matrix)[1])


def same_row_space(a: FpMatrix, b: FpMatrix) -> bool:
    """True if both matrices span the same subspace of F_p^n."""
    if a.p != b.p or a.cols != b.cols:
        return False
    ra = rank(a)
    if ra != rank(b):
        return False
    stacked = FpMatrix(a.p, np.vstack([a.entries, b.entries]))
    return rank(stacked) == ra


def solve_linear(matrix: FpMatrix, rhs: Sequence[int]) -> Optional[np.ndarray]:
    """
    Solve ``A x = b`` over F_p by Gaussian elimination.

    The augmented matrix is brought to its (unique) reduced row echelon
    form and free variables are set to zero, so the returned solution is
    deterministic.

    Parameters
    ----------
    matrix : FpMatrix
        Coefficient matrix ``A`` (r x c).
    rhs : sequence of int
        Right-hand side ``b`` of length r.

    Returns
    -------
    numpy.ndarray or None
        A solution vector of length c, or None if the system is inconsistent.

    Raises
    ------
    DimensionMismatchError
        If ``len(rhs)`` differs from the number of rows.
    """
    p = matrix.p
    b = np.asarray(rhs, dtype=np.int64).reshape(-1)
    if b.shape[0] != matrix.rows:
        raise DimensionMismatchError(
            f"right-hand side has {b.shape[0]} entries for {matrix.rows} equations"
        )
    augmented = np.concatenate([matrix.entries, (b % p).reshape(-1, 1)], axis=1)
    reduced, pivots = _rref(augmented, p)
    # a pivot in the right-hand column means 0 = 1
    if matrix.cols in pivots:
        return None
    x = np.zeros(matrix.cols, dtype=np.int64)
    for i, col in enumerate(pivots):
        x[col] = reduced[i, matrix.cols]
    return x
