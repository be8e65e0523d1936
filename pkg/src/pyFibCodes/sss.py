"""
Massey secret sharing on the dual of a cyclic code.

For a code ``C`` the dealing code is ``D = C^perp``. The dealer picks a
random codeword of ``D`` whose coordinate 0 is the secret and hands
coordinate ``i`` to participant ``P_i``. A set of participants can recover
the secret exactly when ``C`` has a codeword with first coordinate 1 whose
remaining support lies inside the set; the minimal such supports are the
minimal access sets.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from hashlib import sha256
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import numpy as np

from pyFibCodes.config import COVERING_CHUNK, MINIMAL_VECTOR_CAP
from pyFibCodes.exceptions import (
    FibCodesError,
    InvariantError,
    MissingShareError,
    NotApplicableError,
    ParameterError,
    SchemeUndefinedError,
    ShareFileError,
    TooLargeError,
    UnauthorizedSetError,
)
from pyFibCodes.fibcodes import (
    CyclicCode,
    Regime,
    build_cyclic_code,
    codewords,
    dual_code,
    predict_regime,
    resolve_weight_distribution,
)
from pyFibCodes.galois import FpMatrix, ModulusLike, PrimePoly, ff_inv, solve_linear, vecmat

logger = logging.getLogger(__name__)

SHARE_FILE_FORMAT = "pyfibcodes-shares/1"

PathLike = Union[str, Path]


@dataclass(frozen=True)
class AccessStructure:
    """
    Minimal access sets of the scheme dealt on the dual of a code.

    Attributes
    ----------
    p, n : int
        Field modulus and code length; participants are ``1..n-1``.
    minimal_sets : tuple of tuple of int
        Sorted participant indices, listed in lexicographic order.
    dictatorial : tuple of int
        Participants present in every minimal set.
    frequency : dict
        Participant index to the number of minimal sets containing it.
    """

    p: int
    n: int
    minimal_sets: Tuple[Tuple[int, ...], ...]
    dictatorial: Tuple[int, ...]
    frequency: Mapping[int, int] = field(compare=False)

    @property
    def count(self) -> int:
        return len(self.minimal_sets)

    def other_frequencies(self) -> set:
        """Distinct frequencies of the non-dictatorial participants."""
        return {f for i, f in self.frequency.items() if i not in self.dictatorial}

    def is_antichain(self) -> bool:
        sets = [set(s) for s in self.minimal_sets]
        return not any(a < b for a in sets for b in sets)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "count": self.count,
            "minimal_sets": [list(s) for s in self.minimal_sets],
            "dictatorial": list(self.dictatorial),
            "frequency": {str(i): f for i, f in self.frequency.items()},
        }


@dataclass(frozen=True)
class AccessPrediction:
    """Closed-form access counts for a Fibonacci code."""

    p: int
    regime: Regime
    count: int
    dictatorial: Tuple[int, ...]
    frequency: int

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "regime": self.regime.value,
            "count": self.count,
            "dictatorial": list(self.dictatorial),
            "frequency": self.frequency,
        }


@dataclass(frozen=True)
class ShareSet:
    """
    Shares of one dealt secret, one for each participant ``1..n-1``.

    ``generator`` holds the coefficients of the generator of the code whose
    dual deals the shares; ``scheme_code_id`` fingerprints that dealing code.

    Raises
    ------
    ParameterError
        If a participant or value is out of range, or a share is missing.
    """

    p: int
    n: int
    shares: Mapping[int, int]
    generator: Tuple[int, ...]
    scheme_code_id: str
    seed: Optional[int] = None
    secret_index: int = 0

    def __post_init__(self):
        clean: Dict[int, int] = {}
        for participant, value in sorted(self.shares.items()):
            participant, value = int(participant), int(value)
            if not 1 <= participant <= self.n - 1:
                raise ParameterError(f"participant {participant} outside 1..{self.n - 1}")
            if not 0 <= value < self.p:
                raise ParameterError(f"share {value} of participant {participant} outside [0, {self.p})")
            clean[participant] = value
        if len(clean) != self.n - 1:
            raise ParameterError(f"{len(clean)} shares given; a share set holds exactly {self.n - 1}")
        if self.secret_index != 0:
            raise ParameterError(f"the secret sits at coordinate 0, not {self.secret_index}")
        object.__setattr__(self, "shares", clean)
        object.__setattr__(self, "generator", tuple(int(c) for c in self.generator))

    def scheme_code(self) -> CyclicCode:
        return build_cyclic_code(self.p, self.n, PrimePoly(self.p, self.generator))

    def holdings(self, participants: Iterable[int]) -> Dict[int, int]:
        """The shares held by ``participants`` only."""
        wanted = set(participants)
        return {i: v for i, v in self.shares.items() if i in wanted}


class ShareRNG:
    """
    Seeded generator for share dealing.

    Draws 64-bit words from numpy's ``PCG64`` bit generator seeded with
    ``seed`` and maps them to ``[0, p)`` by rejection: words at or above
    ``floor(2**64 / p) * p`` are discarded, the rest are reduced mod p.
    """

    def __init__(self, seed: int):
        if not 0 <= int(seed) < 2**64:
            raise ParameterError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self._bits = np.random.PCG64(int(seed))

    def residue(self, p: int) -> int:
        limit = (2**64 // p) * p
        while True:
            raw = int(self._bits.random_raw())
            if raw < limit:
                return raw % p

    def vector(self, p: int, size: int) -> List[int]:
        return [self.residue(p) for _ in range(size)]


def scheme_code_id(c: CyclicCode) -> str:
    """Short fingerprint of the dealing code ``C^perp``."""
    d = dual_code(c)
    text = f"{d.p}:{d.n}:" + ",".join(str(x) for x in d.g.coeffs)
    return sha256(text.encode()).hexdigest()[:16]


# --------------------------------------------------------------------------
# minimal codewords and access structures


def minimal_vectors(c: CyclicCode) -> np.ndarray:
    """
    Nonzero codewords that cover only their own scalar multiples.

    ``v`` covers ``u`` when ``supp(u)`` is a subset of ``supp(v)``. Each
    nonzero codeword is compared against all others through the product of
    complement and support indicator matrices, processed in row blocks.

    Returns
    -------
    numpy.ndarray
        One minimal vector per row, in enumeration order.

    Raises
    ------
    TooLargeError
        If the code has more than ``MINIMAL_VECTOR_CAP`` codewords.
    """
    if c.size > MINIMAL_VECTOR_CAP:
        raise TooLargeError(
            f"{c.label} has {c.size} codewords; the covering check is limited to {MINIMAL_VECTOR_CAP}"
        )
    words = codewords(c)[1:]
    if words.shape[0] == 0:
        return words
    support = (words != 0).astype(np.float32)
    outside = 1.0 - support
    covered = np.empty(words.shape[0], dtype=np.int64)
    for start in range(0, words.shape[0], COVERING_CHUNK):
        stop = start + COVERING_CHUNK
        # zero overlap with the complement means supp(u) lies inside supp(v)
        overlap = outside[start:stop] @ support.T
        covered[start:stop] = np.count_nonzero(overlap == 0, axis=1)
    minimal = words[covered == c.p - 1]
    logger.debug("%s: %d of %d nonzero codewords are minimal", c.label, len(minimal), len(words))
    return minimal


@lru_cache(maxsize=64)
def _minimal_codewords(c: CyclicCode) -> np.ndarray:
    vectors = minimal_vectors(c)
    vectors = vectors[vectors[:, 0] != 0] if vectors.size else vectors.reshape(0, c.n)
    if vectors.shape[0] == 0:
        result = np.zeros((0, c.n), dtype=np.int64)
    else:
        inverses = np.array([ff_inv(c.p, int(a)) for a in vectors[:, 0]], dtype=np.int64)
        result = np.unique(vectors * inverses[:, None] % c.p, axis=0)
    result.setflags(write=False)
    return result


def minimal_codewords(c: CyclicCode) -> np.ndarray:
    """
    Minimal vectors with a nonzero first coordinate, scaled so it equals 1.

    Rows are distinct and sorted lexicographically.
    """
    return _minimal_codewords(c)


def access_structure(c: CyclicCode) -> AccessStructure:
    """
    Access structure of the Massey scheme dealt on ``C^perp``.

    Each minimal codeword ``w`` of ``c`` gives the minimal access set
    ``supp(w) \\ {0}``.
    """
    sets = sorted(tuple(int(i) for i in np.flatnonzero(w) if i) for w in minimal_codewords(c))
    if sets:
        common = reduce(lambda a, b: a & b, (set(s) for s in sets))
    else:
        common = set()
    frequency = {i: 0 for i in range(1, c.n)}
    for s in sets:
        for i in s:
            frequency[i] += 1
    return AccessStructure(c.p, c.n, tuple(sets), tuple(sorted(common)), frequency)


def predict_access_counts(p: ModulusLike) -> AccessPrediction:
    """
    Closed-form number of minimal access sets, dictators and frequency.

    Raises
    ------
    NotApplicableError
        Outside the theorem regimes.
    """
    prediction = predict_regime(p)
    q, regime, beta = prediction.p, prediction.regime, prediction.beta
    if regime is Regime.FIB_MDS:
        return AccessPrediction(q, regime, q - 2, (), q - 3)
    if regime is Regime.FIB_PM1 and beta == 2:
        return AccessPrediction(q, regime, (q - 3) // 2, ((q - 1) // 2,), (q - 5) // 2)
    if regime is Regime.FIB_PM1 and beta == 4:
        quarter = (q - 1) // 4
        return AccessPrediction(q, regime, (q - 5) // 4, (quarter, 2 * quarter, 3 * quarter), (q - 9) // 4)
    if regime is Regime.FIB_2P2 and beta == 2:
        return AccessPrediction(q, regime, q, (q + 1,), q - 1)
    if regime is Regime.FIB_2P2 and beta == 4:
        half = (q + 1) // 2
        return AccessPrediction(q, regime, (q - 1) // 2, (half, 2 * half, 3 * half), (q - 3) // 2)
    raise NotApplicableError(f"p={q} is not in a theorem regime")


def ab_minimality_check(c: CyclicCode) -> bool:
    """
    Ashikhmin-Barg sufficient condition ``w_min / w_max > (p - 1) / p``.

    Evaluated as ``w_min * p > w_max * (p - 1)``.
    """
    wd = resolve_weight_distribution(c)
    if wd.min_weight is None:
        raise ParameterError(f"{c.label} has no nonzero codewords")
    return wd.min_weight * c.p > wd.max_weight * (c.p - 1)


# --------------------------------------------------------------------------
# dealing and reconstruction


def massey_deal(matrix: FpMatrix, secret: int, seed: int) -> np.ndarray:
    """
    Random codeword ``u G`` of the code spanned by ``matrix`` with first entry ``secret``.

    All components of ``u`` are drawn from :class:`ShareRNG`; the component
    at the first nonzero entry of column 0 is then solved for so that
    ``u . g_0 = secret``.

    The result is uniform over the valid ``u``, the same distribution as
    redrawing ``u`` until ``u . g_0 = secret``, but it takes a fixed number of
    draws. A given seed therefore yields different shares than such a
    redraw loop would.

    Raises
    ------
    SchemeUndefinedError
        If column 0 of ``matrix`` is zero.
    ParameterError
        If ``secret`` is not in ``[0, p)``.
    """
    p = matrix.p
    if not 0 <= secret < p:
        raise ParameterError(f"secret must lie in [0, {p}), got {secret}")
    column = matrix.column(0)
    nonzero = np.flatnonzero(column)
    if nonzero.size == 0:
        raise SchemeUndefinedError("column 0 of the dealing matrix is zero; no secret can be embedded")
    pivot = int(nonzero[0])
    u = ShareRNG(seed).vector(p, matrix.rows)
    rest = sum(u[i] * int(column[i]) for i in range(matrix.rows) if i != pivot)
    u[pivot] = (secret - rest) * ff_inv(p, int(column[pivot])) % p
    word = vecmat(p, u, matrix)
    if int(word[0]) != secret:
        raise InvariantError("dealt codeword does not carry the secret")
    return word


def deal_shares(c: CyclicCode, secret: int, seed: int) -> ShareSet:
    """
    Deal ``secret`` with the scheme based on ``C^perp``.

    Raises
    ------
    SchemeUndefinedError
        If the dual has dimension 0 or its generator matrix has a zero first column.
    """
    dealing = dual_code(c)
    if dealing.k == 0:
        raise SchemeUndefinedError(f"the dual of {c.label} is the zero code")
    word = massey_deal(dealing.generator_matrix, secret, seed)
    shares = {i: int(word[i]) for i in range(1, c.n)}
    logger.info("dealt %d shares over %s", len(shares), dealing.label)
    return ShareSet(c.p, c.n, shares, c.g.coeffs, scheme_code_id(c), seed=seed)


def _normalise_access(c: CyclicCode, access: Iterable[int], shares: Mapping[int, int]) -> Tuple[int, ...]:
    members = tuple(sorted({int(i) for i in access}))
    for i in members:
        if not 1 <= i <= c.n - 1:
            raise ParameterError(f"participant {i} outside 1..{c.n - 1}")
    missing = [i for i in members if i not in shares]
    if missing:
        raise MissingShareError(f"no share for participant(s) {', '.join(map(str, missing))}")
    return members


def _recover_by_minimal_codewords(c: CyclicCode, members: Tuple[int, ...], shares: Mapping[int, int]) -> List[int]:
    allowed = np.zeros(c.n, dtype=bool)
    allowed[0] = True
    allowed[list(members)] = True
    results = []
    for w in minimal_codewords(c):
        support = np.flatnonzero(w)
        if allowed[support].all():
            results.append(-sum(int(w[i]) * shares[int(i)] for i in support if i) % c.p)
    return results


def _recover_by_elimination(c: CyclicCode, members: Tuple[int, ...], shares: Mapping[int, int]) -> Optional[int]:
    G = dual_code(c).generator_matrix
    if not members:
        return None
    columns = FpMatrix(c.p, G.entries[:, list(members)])
    x = solve_linear(columns, G.column(0))
    if x is None:
        return None
    return sum(int(xj) * shares[i] for xj, i in zip(x, members)) % c.p


def reconstruct_secret(
    c: CyclicCode, access: Iterable[int], shares: Mapping[int, int], *, verify: bool = False
) -> int:
    """
    Recover the secret from the shares of ``access``.

    Minimal codewords of ``c`` are searched first in lexicographic order; if
    the code is too large to enumerate, the first column of the dealing
    matrix is expressed through the columns of ``access`` by elimination.

    Parameters
    ----------
    c : CyclicCode
        The code whose dual dealt the shares.
    access : iterable of int
        Participant indices.
    shares : mapping
        Participant index to share value; must cover ``access``.
    verify : bool
        Also compute every other recovery and check that they agree.

    Raises
    ------
    MissingShareError
        If a participant in ``access`` has no share.
    UnauthorizedSetError
        If ``access`` cannot recover the secret.
    """
    members = _normalise_access(c, access, shares)
    candidates: List[int] = []
    if c.size <= MINIMAL_VECTOR_CAP:
        candidates = _recover_by_minimal_codewords(c, members, shares)
    if verify or not candidates:
        solved = _recover_by_elimination(c, members, shares)
        if solved is not None:
            candidates.append(solved)
    if not candidates:
        raise UnauthorizedSetError(f"participants {list(members)} form an unauthorized set")
    if verify and len(set(candidates)) > 1:
        raise InvariantError(f"recoveries disagree: {sorted(set(candidates))}")
    return candidates[0]


# --------------------------------------------------------------------------
# share files


def share_file_document(share_set: ShareSet, *, keep_seed: bool = False) -> dict:
    document = {
        "format": SHARE_FILE_FORMAT,
        "p": share_set.p,
        "n": share_set.n,
        "scheme": {
            "prime": share_set.p,
            "generator": list(share_set.generator),
            "code_id": share_set.scheme_code_id,
        },
        "secret_index": share_set.secret_index,
    }
    if keep_seed and share_set.seed is not None:
        document["seed"] = share_set.seed
    document["shares"] = [{"participant": i, "value": v} for i, v in share_set.shares.items()]
    return document


def write_share_file(path: PathLike, share_set: ShareSet, *, keep_seed: bool = False) -> Path:
    """
    Write ``share_set`` as a JSON share file.

    The seed is omitted unless ``keep_seed`` is set.

    Raises
    ------
    ShareFileError
        If the file cannot be written.
    """
    path = Path(path)
    text = json.dumps(share_file_document(share_set, keep_seed=keep_seed), indent=2)
    try:
        path.write_text(text + "\n", encoding="utf-8")
    except OSError as err:
        raise ShareFileError(f"cannot write share file {path}: {err}") from err
    logger.info("wrote %d shares to %s", len(share_set.shares), path)
    return path


def read_share_file(path: PathLike) -> ShareSet:
    """
    Read and validate a JSON share file.

    Raises
    ------
    ShareFileError
        If the file is not valid JSON, misses fields, or describes an
        inconsistent scheme.
    """
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as err:
        raise ShareFileError(f"cannot read share file {path}: {err}") from err
    if not isinstance(document, dict) or document.get("format") != SHARE_FILE_FORMAT:
        raise ShareFileError(f"{path} is not a {SHARE_FILE_FORMAT} share file")
    try:
        p, n = int(document["p"]), int(document["n"])
        scheme = document["scheme"]
        generator = tuple(int(x) for x in scheme["generator"])
        code_id = str(scheme["code_id"])
        if int(scheme["prime"]) != p:
            raise ShareFileError("scheme prime differs from p")
        if int(document["secret_index"]) != 0:
            raise ShareFileError("only secret_index 0 is supported")
        shares = {}
        for entry in document["shares"]:
            participant = int(entry["participant"])
            if participant in shares:
                raise ShareFileError(f"participant {participant} appears twice")
            shares[participant] = int(entry["value"])
        seed = document.get("seed")
        share_set = ShareSet(p, n, shares, generator, code_id, seed=None if seed is None else int(seed))
        code = share_set.scheme_code()
    except ShareFileError:
        raise
    except (KeyError, TypeError, ValueError, FibCodesError) as err:
        raise ShareFileError(f"malformed share file {path}: {err}") from err
    if scheme_code_id(code) != code_id:
        raise ShareFileError(f"code_id {code_id} does not match the scheme generator")
    return share_set
