import json
import os

import numpy as np
import pytest
from sympy import primerange

from pyFibCodes import sss
from pyFibCodes.exceptions import (
    MissingShareError,
    SchemeUndefinedError,
    ShareFileError,
    TooLargeError,
    UnauthorizedSetError,
)
from pyFibCodes.fibcodes import (
    Regime,
    build_cyclic_code,
    dual_code,
    fibonacci_code,
    is_codeword,
    predict_regime,
)
from pyFibCodes.fibseq import fib_period_sequence
from pyFibCodes.galois import FpMatrix, PrimePoly
from pyFibCodes.sss import (
    SHARE_FILE_FORMAT,
    ShareRNG,
    ShareSet,
    ab_minimality_check,
    access_structure,
    deal_shares,
    massey_deal,
    minimal_codewords,
    minimal_vectors,
    predict_access_counts,
    read_share_file,
    reconstruct_secret,
    write_share_file,
)

THEOREM_PRIMES = [p for p in primerange(7, 100) if predict_regime(p).regime is not Regime.GENERIC]

ACCESS_SETS_7 = [
    {2, 3, 4, 5, 6, 7, 8, 10, 11, 12, 13, 14, 15},
    {1, 2, 3, 4, 5, 6, 8, 9, 10, 11, 12, 13, 14},
    {1, 2, 3, 4, 5, 7, 8, 9, 10, 11, 12, 13, 15},
    {1, 2, 4, 5, 6, 7, 8, 9, 10, 12, 13, 14, 15},
    {1, 2, 3, 5, 6, 7, 8, 9, 10, 11, 13, 14, 15},
    {1, 2, 3, 4, 6, 7, 8, 9, 10, 11, 12, 14, 15},
    {1, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15},
]

ACCESS_SETS_11 = [
    {2, 3, 4, 5, 6, 7, 8, 9},
    {1, 2, 3, 4, 5, 6, 7, 8},
    {1, 2, 3, 4, 5, 6, 7, 9},
    {1, 2, 3, 5, 6, 7, 8, 9},
    {1, 2, 4, 5, 6, 7, 8, 9},
    {1, 2, 3, 4, 6, 7, 8, 9},
    {1, 2, 3, 4, 5, 6, 8, 9},
    {1, 2, 3, 4, 5, 7, 8, 9},
    {1, 3, 4, 5, 6, 7, 8, 9},
]

# Complements within 1..27 of the minimal access sets for p = 13
MISSING_13 = [
    {1, 8, 15, 22},
    {6, 13, 20, 27},
    {5, 12, 19, 26},
    {3, 10, 17, 24},
    {4, 11, 18, 25},
    {2, 9, 16, 23},
]
ACCESS_SETS_13 = [set(range(1, 28)) - missing for missing in MISSING_13]


def _as_sets(structure):
    return {frozenset(s) for s in structure.minimal_sets}


def test_minimal_vectors_counts():
    """Minimal vectors are the codewords containing a zero."""
    assert len(minimal_vectors(fibonacci_code(11))) == 100
    assert len(minimal_vectors(fibonacci_code(7))) == 48
    assert all(np.count_nonzero(v) == 9 for v in minimal_vectors(fibonacci_code(11)))


@pytest.mark.parametrize("p", [7, 11, 13])
def test_minimal_vectors_closed_under_scaling(p):
    """Nonzero multiples of minimal vectors are minimal."""
    vectors = minimal_vectors(fibonacci_code(p))
    found = {tuple(v) for v in vectors}
    for v in vectors[:20]:
        for scale in range(2, p):
            assert tuple(int(x) for x in v * scale % p) in found


def test_minimal_vectors_zero_code():
    """The zero code has no minimal vectors."""
    code = build_cyclic_code(5, 4, PrimePoly.cyclic_modulus(5, 4))
    assert len(minimal_vectors(code)) == 0
    assert access_structure(code).count == 0


def test_minimal_vectors_cap(monkeypatch):
    """The covering check refuses large codes."""
    monkeypatch.setattr(sss, "MINIMAL_VECTOR_CAP", 100)
    with pytest.raises(TooLargeError):
        minimal_vectors(fibonacci_code(11))


def test_minimal_codewords_normalised():
    """Minimal codewords start with 1, are distinct and lie in the code."""
    code = fibonacci_code(13)
    words = minimal_codewords(code)
    assert words.shape == (6, 28)
    assert (words[:, 0] == 1).all()
    assert len({tuple(w) for w in words}) == 6
    assert all(is_codeword(code, w) for w in words)
    assert words.tolist() == sorted(words.tolist())


@pytest.mark.parametrize(
    ("p", "expected", "dictatorial", "frequency"),
    [
        (7, ACCESS_SETS_7, (8,), 6),
        (11, ACCESS_SETS_11, (), 8),
        (13, ACCESS_SETS_13, (7, 14, 21), 5),
    ],
)
def test_access_structure_examples(p, expected, dictatorial, frequency):
    """Minimal access sets of the worked examples."""
    structure = access_structure(fibonacci_code(p))
    assert _as_sets(structure) == {frozenset(s) for s in expected}
    assert structure.dictatorial == dictatorial
    assert structure.other_frequencies() == {frequency}
    assert all(structure.frequency[i] == structure.count for i in dictatorial)


def test_access_structure_to_dict():
    """Serialised structures use string participant keys."""
    row = access_structure(fibonacci_code(7)).to_dict()
    assert row["count"] == 7
    assert row["dictatorial"] == [8]
    assert row["frequency"]["8"] == 7


@pytest.mark.parametrize("p", THEOREM_PRIMES)
def test_access_structure_sweep(p):
    """Enumerated access structures match the closed forms."""
    profile = fib_period_sequence(p)
    structure = access_structure(fibonacci_code(p))
    predicted = predict_access_counts(p)

    assert structure.count == predicted.count == profile.alpha - 1
    assert structure.dictatorial == predicted.dictatorial
    assert structure.dictatorial == tuple(range(profile.alpha, profile.l, profile.alpha))
    assert structure.other_frequencies() == {predicted.frequency}
    assert predicted.frequency == profile.alpha - 2
    assert structure.is_antichain()


@pytest.mark.parametrize(
    ("p", "count", "dictatorial", "frequency"),
    [
        (7, 7, (8,), 6),
        (11, 9, (), 8),
        (13, 6, (7, 14, 21), 5),
        (17, 8, (9, 18, 27), 7),
        (19, 17, (), 16),
        (23, 23, (24,), 22),
        (41, 19, (20,), 18),
        (61, 14, (15, 30, 45), 13),
    ],
)
def test_predict_access_counts(p, count, dictatorial, frequency):
    """Closed-form access counts."""
    predicted = predict_access_counts(p)
    assert (predicted.count, predicted.dictatorial, predicted.frequency) == (
        count,
        dictatorial,
        frequency,
    )


@pytest.mark.parametrize(("p", "expected"), [(3, True), (7, True), (11, False), (13, False)])
def test_ab_minimality_check(p, expected):
    """The sufficient condition holds for the one-weight codes only."""
    assert ab_minimality_check(fibonacci_code(p)) is expected


@pytest.mark.parametrize("p", [3, 7])
def test_ab_condition_implies_all_minimal(p):
    """When the condition holds every nonzero codeword is minimal."""
    code = fibonacci_code(p)
    assert len(minimal_vectors(code)) == code.size - 1
    assert len(minimal_codewords(code)) == p ** (code.k - 1)


def test_share_rng_deterministic():
    """Equal seeds give equal draws in range."""
    a = ShareRNG(2024).vector(13, 50)
    b = ShareRNG(2024).vector(13, 50)
    assert a == b
    assert all(0 <= x < 13 for x in a)
    assert a != ShareRNG(2025).vector(13, 50)


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_share_rng_seed_range(seed):
    """Seeds must fit in 64 unsigned bits."""
    with pytest.raises(ValueError):
        ShareRNG(seed)


def test_massey_deal_embeds_secret():
    """The dealt word carries the secret and lies in the dealing code."""
    code = fibonacci_code(11)
    dealing = dual_code(code)
    for secret in range(11):
        word = massey_deal(dealing.generator_matrix, secret, seed=secret + 100)
        assert word[0] == secret
        assert is_codeword(dealing, word)


def test_massey_deal_zero_column():
    """A dealing matrix with zero first column cannot embed a secret."""
    with pytest.raises(SchemeUndefinedError):
        massey_deal(FpMatrix(7, [[0, 1], [0, 2]]), 3, seed=1)


@pytest.mark.parametrize("secret", [-1, 11])
def test_massey_deal_secret_range(secret):
    """Secrets must be field elements."""
    dealing = dual_code(fibonacci_code(11))
    with pytest.raises(ValueError):
        massey_deal(dealing.generator_matrix, secret, seed=0)


def test_deal_is_deterministic():
    """The same seed deals the same shares."""
    code = fibonacci_code(13)
    assert deal_shares(code, 5, 42) == deal_shares(code, 5, 42)


def test_deal_zero_dual():
    """The full space has a zero dual and no scheme."""
    code = build_cyclic_code(7, 6, PrimePoly.one(7))
    with pytest.raises(SchemeUndefinedError):
        deal_shares(code, 1, 0)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_reconstruct_round_trip(p):
    """Every minimal access set recovers every secret."""
    code = fibonacci_code(p)
    structure = access_structure(code)
    for seed in range(20):
        for secret in range(p):
            share_set = deal_shares(code, secret, seed)
            assert len(share_set.shares) == code.n - 1
            for members in structure.minimal_sets:
                assert reconstruct_secret(code, members, share_set.shares) == secret


@pytest.mark.parametrize("p", [7, 11, 13])
def test_reconstruct_verify(p):
    """Verification cross-checks against elimination."""
    code = fibonacci_code(p)
    share_set = deal_shares(code, p - 1, 7)
    members = access_structure(code).minimal_sets[0]
    assert reconstruct_secret(code, members, share_set.shares, verify=True) == p - 1
    everyone = range(1, code.n)
    assert reconstruct_secret(code, everyone, share_set.shares, verify=True) == p - 1


@pytest.mark.parametrize("p", [7, 11, 13])
def test_proper_subsets_are_unauthorized(p):
    """Removing any member from a minimal set makes it unauthorized, whatever the dealing."""
    code = fibonacci_code(p)
    minimal_sets = access_structure(code).minimal_sets
    for seed in range(20):
        share_set = deal_shares(code, seed % p, seed)
        for members in minimal_sets:
            for dropped in members:
                subset = [i for i in members if i != dropped]
                with pytest.raises(UnauthorizedSetError):
                    reconstruct_secret(code, subset, share_set.shares)


def test_unauthorized_small_set():
    """Three participants cannot recover a secret dealt over F_7."""
    code = fibonacci_code(7)
    share_set = deal_shares(code, 4, 9)
    with pytest.raises(UnauthorizedSetError):
        reconstruct_secret(code, [1, 2, 3], share_set.shares)
    with pytest.raises(UnauthorizedSetError):
        reconstruct_secret(code, [], share_set.shares)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_reconstruct_supersets(p):
    """Random supersets of minimal sets are authorized."""
    code = fibonacci_code(p)
    minimal_sets = access_structure(code).minimal_sets
    rng = np.random.default_rng(p)
    for seed in range(20):
        secret = int(rng.integers(0, p))
        share_set = deal_shares(code, secret, seed)
        for _ in range(20):
            members = minimal_sets[int(rng.integers(len(minimal_sets)))]
            outside = [i for i in range(1, code.n) if i not in members]
            size = int(rng.integers(1, len(outside) + 1))
            extra = rng.choice(outside, size=size, replace=False)
            superset = set(members) | {int(i) for i in extra}
            assert reconstruct_secret(code, superset, share_set.shares) == secret


def test_reconstruct_by_elimination(monkeypatch):
    """Elimination recovers the same secret when minimal codewords are unavailable."""
    code = fibonacci_code(13)
    share_set = deal_shares(code, 9, 5)
    members = access_structure(code).minimal_sets[2]
    monkeypatch.setattr(sss, "MINIMAL_VECTOR_CAP", 0)
    assert reconstruct_secret(code, members, share_set.shares) == 9
    with pytest.raises(UnauthorizedSetError):
        reconstruct_secret(code, members[1:], share_set.shares)


def test_reconstruct_missing_share():
    """A member without a share is reported."""
    code = fibonacci_code(7)
    held = deal_shares(code, 2, 1).holdings([1, 2, 3])
    assert sorted(held) == [1, 2, 3]
    with pytest.raises(MissingShareError):
        reconstruct_secret(code, [1, 2, 4], held)


def test_reconstruct_participant_range():
    """Participant 0 holds the secret and is not a shareholder."""
    code = fibonacci_code(7)
    share_set = deal_shares(code, 2, 1)
    with pytest.raises(ValueError):
        reconstruct_secret(code, [0, 1, 2], share_set.shares)


def test_share_set_validation():
    """Shares outside the field or participant range, and incomplete sets, are rejected."""
    g = fibonacci_code(7).g.coeffs
    full = {i: 0 for i in range(1, 16)}
    assert len(ShareSet(7, 16, full, g, "x").shares) == 15
    with pytest.raises(ValueError):
        ShareSet(7, 16, {**full, 16: 1}, g, "x")
    with pytest.raises(ValueError):
        ShareSet(7, 16, {**full, 1: 7}, g, "x")
    with pytest.raises(ValueError):
        ShareSet(7, 16, {1: 1}, g, "x")
    with pytest.raises(ValueError):
        ShareSet(7, 16, full, g, "x", secret_index=1)


def test_share_file_round_trip(tmp_path):
    """Written share files read back identically; the seed is kept only on request."""
    code = fibonacci_code(11)
    share_set = deal_shares(code, 3, 77)

    path = write_share_file(os.path.join(tmp_path, "shares.json"), share_set)
    document = json.loads(path.read_text())
    assert document["format"] == SHARE_FILE_FORMAT
    assert list(document) == ["format", "p", "n", "scheme", "secret_index", "shares"]
    loaded = read_share_file(path)
    assert loaded.shares == share_set.shares
    assert loaded.seed is None
    assert loaded.scheme_code() == code

    kept = write_share_file(tmp_path / "seeded.json", share_set, keep_seed=True)
    assert read_share_file(kept).seed == 77


def test_share_file_unwritable_path(tmp_path):
    """A missing target directory surfaces as a share-file error."""
    share_set = deal_shares(fibonacci_code(7), 3, 2)
    target = tmp_path / "missing" / "shares.json"
    with pytest.raises(ShareFileError, match="cannot write"):
        write_share_file(target, share_set)
    assert not target.exists()


def test_share_file_recovers_from_holdings(tmp_path):
    """A minimal set's holdings from a loaded file recover the secret."""
    code = fibonacci_code(13)
    share_set = deal_shares(code, 10, 4)
    members = access_structure(code).minimal_sets[-1]
    loaded = read_share_file(write_share_file(tmp_path / "shares.json", share_set))
    held = loaded.holdings(members)
    assert reconstruct_secret(loaded.scheme_code(), members, held) == 10


def test_share_file_errors(tmp_path):
    """Malformed and tampered files are rejected."""
    share_set = deal_shares(fibonacci_code(7), 1, 2)
    path = write_share_file(tmp_path / "shares.json", share_set)
    document = json.loads(path.read_text())

    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ShareFileError):
        read_share_file(broken)

    with pytest.raises(ShareFileError):
        read_share_file(tmp_path / "absent.json")

    def rewrite(**changes):
        target = tmp_path / "edited.json"
        target.write_text(json.dumps({**document, **changes}))
        return target

    with pytest.raises(ShareFileError):
        read_share_file(rewrite(format="other/1"))
    with pytest.raises(ShareFileError):
        read_share_file(rewrite(scheme={**document["scheme"], "code_id": "0" * 16}))
    with pytest.raises(ShareFileError):
        read_share_file(rewrite(scheme={**document["scheme"], "generator": [1, 1]}))
    with pytest.raises(ShareFileError):
        read_share_file(rewrite(secret_index=3))
    with pytest.raises(ShareFileError):
        read_share_file(rewrite(shares=document["shares"] + document["shares"][:1]))
    with pytest.raises(ShareFileError):
        read_share_file(rewrite(shares=document["shares"][1:]))
    with pytest.raises(ShareFileError):
        read_share_file(rewrite(p=12))
