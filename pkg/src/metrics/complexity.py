# src/metrics/complexity.py
"""
Lempel-Ziv (1976) complexity of symbol sequences and the joint encodings of
two emission channels.

A phrase ends at the first symbol that makes it absent from everything scanned
before that symbol, so a copy may overlap the phrase itself; the final,
possibly incomplete phrase is counted.
"""
from dataclasses import dataclass

import numpy as np

JOINT_ENCODINGS = ("symbol", "interleave", "concatenate")


@dataclass(frozen=True)
class SymbolSequence:
    symbols: np.ndarray
    alphabet_size: int = 2

    def __post_init__(self):
        symbols = np.asarray(self.symbols)
        if symbols.ndim != 1:
            raise ValueError(f"SymbolSequence: symbols must be one-dimensional, got shape {symbols.shape}.")
        if self.alphabet_size < 2 or self.alphabet_size > 256:
            raise ValueError(f"SymbolSequence: alphabet size must be in [2, 256], got {self.alphabet_size}.")
        if symbols.size and (symbols.min() < 0 or symbols.max() >= self.alphabet_size):
            raise ValueError(f"SymbolSequence: symbols must lie in [0, {self.alphabet_size}).")
        object.__setattr__(self, "symbols", symbols.astype(np.uint8))

    def __len__(self) -> int:
        return self.symbols.size


def as_sequence(values, alphabet_size: int | None = None) -> SymbolSequence:
    if isinstance(values, SymbolSequence):
        return values
    symbols = np.asarray(values, dtype=np.int64)
    if alphabet_size is None:
        alphabet_size = max(2, int(symbols.max()) + 1) if symbols.size else 2
    return SymbolSequence(symbols, alphabet_size)


def _longest_copy(text: bytes, start: int) -> int:
    """Largest L such that text[start:start+L] occurs inside text[:start+L-1]."""
    limit = len(text) - start

    def reproducible(length: int) -> bool:
        return text.find(text[start:start + length], 0, start + length - 1) >= 0

    if not reproducible(1):
        return 0
    # prefixes of a reproducible phrase are reproducible: gallop, then bisect
    lo, step = 1, 1
    while True:
        candidate = min(lo + step, limit)
        if candidate == lo:
            return lo
        if not reproducible(candidate):
            hi = candidate
            break
        lo, step = candidate, step * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if reproducible(mid):
            lo = mid
        else:
            hi = mid
    return lo


def lz_complexity(seq) -> int:
    """Number of phrases in the exhaustive-history LZ76 parsing."""
    seq = as_sequence(seq)
    if len(seq) == 0:
        raise ValueError("lz_complexity: sequence is empty.")
    text = seq.symbols.tobytes()
    complexity = 1
    start = 1
    while start < len(text):
        complexity += 1
        start += _longest_copy(text, start) + 1
    return complexity


def normalized_lz(seq, alphabet_size: int | None = None) -> float:
    """c(n) log_k(n) / n, which tends to 1 for i.i.d. uniform symbols."""
    seq = as_sequence(seq, alphabet_size)
    n = len(seq)
    if n < 2:
        raise ValueError(f"normalized_lz: sequence length must be >= 2, got {n}.")
    return lz_complexity(seq) * np.log(n) / np.log(seq.alphabet_size) / n


def _binary_pair(r1, r2, name: str) -> tuple[np.ndarray, np.ndarray]:
    a = as_sequence(r1, 2)
    b = as_sequence(r2, 2)
    if a.alphabet_size != 2 or b.alphabet_size != 2:
        raise ValueError(f"{name}: both channels must be binary.")
    if len(a) != len(b):
        raise ValueError(f"{name}: channel lengths differ ({len(a)} vs {len(b)}).")
    return a.symbols, b.symbols


def joint_encode(r1, r2) -> SymbolSequence:
    """Per-step 4-symbol encoding 2 r1[t] + r2[t]."""
    a, b = _binary_pair(r1, r2, "joint_encode")
    return SymbolSequence(2 * a + b, 4)


def joint_decode(seq: SymbolSequence) -> tuple[SymbolSequence, SymbolSequence]:
    seq = as_sequence(seq, 4)
    if seq.alphabet_size != 4:
        raise ValueError(f"joint_decode: expected a 4-symbol sequence, got alphabet size {seq.alphabet_size}.")
    return SymbolSequence(seq.symbols // 2, 2), SymbolSequence(seq.symbols % 2, 2)


def interleave_encode(r1, r2) -> SymbolSequence:
    """r1[0], r2[0], r1[1], r2[1], ..."""
    a, b = _binary_pair(r1, r2, "interleave_encode")
    return SymbolSequence(np.column_stack([a, b]).ravel(), 2)


def concatenate_encode(r1, r2) -> SymbolSequence:
    a, b = _binary_pair(r1, r2, "concatenate_encode")
    return SymbolSequence(np.concatenate([a, b]), 2)


def encode_joint(r1, r2, encoding: str = "symbol") -> SymbolSequence:
    encoders = {"symbol": joint_encode, "interleave": interleave_encode, "concatenate": concatenate_encode}
    if encoding not in encoders:
        raise ValueError(f"encode_joint: encoding must be one of {JOINT_ENCODINGS}, got {encoding!r}.")
    return encoders[encoding](r1, r2)
