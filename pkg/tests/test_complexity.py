# tests/test_complexity.py
import itertools

import numpy as np
import pytest

from metrics.complexity import SymbolSequence, concatenate_encode, encode_joint, interleave_encode, joint_decode, \
    joint_encode, lz_complexity, normalized_lz


def brute_force_lz(symbols) -> int:
    """Phrase-by-phrase LZ76 parsing with naive substring search."""
    s = "".join(chr(ord("a") + int(v)) for v in symbols)
    n = len(s)
    count, i = 0, 0
    while i < n:
        length = 1
        # extend while s[i:i+length] already occurs starting before position i
        while i + length <= n and s[i:i + length] in s[:i + length - 1]:
            length += 1
        count += 1
        i += length
    return count


@pytest.mark.parametrize("text, expected", [
    ("0001101001000101", 6),
    ("0000000000", 2),
    ("0", 1),
    ("01", 2),
    ("0101010101", 3),
])
def test_known_parsings(text, expected):
    assert lz_complexity([int(c) for c in text]) == expected


def test_matches_brute_force_on_all_short_binary_strings():
    for n in range(1, 15):
        for bits in itertools.product((0, 1), repeat=n):
            assert lz_complexity(SymbolSequence(np.array(bits), 2)) == brute_force_lz(bits), bits


def test_matches_brute_force_on_random_quaternary_strings(rng):
    for _ in range(1000):
        symbols = rng.integers(0, 4, size=rng.integers(1, 201))
        assert lz_complexity(SymbolSequence(symbols, 4)) == brute_force_lz(symbols)


def test_empty_sequence_rejected():
    with pytest.raises(ValueError):
        lz_complexity(SymbolSequence(np.array([], dtype=np.uint8), 2))
    with pytest.raises(ValueError):
        normalized_lz(SymbolSequence(np.array([1]), 2))


def test_symbol_sequence_validation():
    with pytest.raises(ValueError):
        SymbolSequence(np.array([0, 2]), 2)
    with pytest.raises(ValueError):
        SymbolSequence(np.array([0, 1]), 1)


def test_constant_sequence_is_simple():
    assert normalized_lz(SymbolSequence(np.zeros(10_000), 2)) < 0.01


@pytest.mark.parametrize("k", [2, 4])
def test_iid_uniform_normalizes_near_one(k):
    values = []
    for seed in range(4):
        symbols = np.random.default_rng(seed).integers(0, k, size=100_000)
        values.append(normalized_lz(SymbolSequence(symbols, k)))
    assert 0.9 <= np.mean(values) <= 1.1


def test_sparse_events_have_low_complexity():
    symbols = (np.random.default_rng(1).random(100_000) < 0.003).astype(np.uint8)
    assert normalized_lz(SymbolSequence(symbols, 2)) < 0.1


def test_joint_encoding_is_a_bijection():
    r1 = np.array([0, 0, 1, 1])
    r2 = np.array([0, 1, 0, 1])
    joint = joint_encode(r1, r2)
    assert joint.alphabet_size == 4
    assert joint.symbols.tolist() == [0, 1, 2, 3]
    d1, d2 = joint_decode(joint)
    assert d1.symbols.tolist() == r1.tolist()
    assert d2.symbols.tolist() == r2.tolist()


def test_alternative_encodings():
    r1 = np.array([1, 0, 1])
    r2 = np.array([0, 0, 1])
    assert interleave_encode(r1, r2).symbols.tolist() == [1, 0, 0, 0, 1, 1]
    assert concatenate_encode(r1, r2).symbols.tolist() == [1, 0, 1, 0, 0, 1]
    assert encode_joint(r1, r2, "symbol").symbols.tolist() == [2, 0, 3]
    with pytest.raises(ValueError):
        encode_joint(r1, r2, "zip")


def test_joint_encoding_rejects_mismatched_channels():
    with pytest.raises(ValueError):
        joint_encode(np.array([0, 1]), np.array([0, 1, 1]))
    with pytest.raises(ValueError):
        joint_encode(np.array([0, 2]), np.array([0, 1]))
