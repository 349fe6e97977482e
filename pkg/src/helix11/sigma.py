"""The Z11 -> trinucleotide bijection, its induced metric, and the
run-breaking flip map.
"""

from __future__ import annotations

import numpy as np

from . import dna, zmod11
from .errors import NotInAlphabet, ShapeError

# the 11-block alphabet, indexed by the residue it encodes
S_BLOCKS = ("CCC", "CCA", "CAC", "CAA", "ACC", "ACA",
            "AAC", "AAA", "TCC", "CTC", "TCA")

_BLOCK_TO_SYM = {b: i for i, b in enumerate(S_BLOCKS)}

# (11, 3) base-code table for bulk mapping
BLOCK_CODES = np.stack([dna.seq_to_codes(b) for b in S_BLOCKS])


def _build_induced_table() -> np.ndarray:
    t = np.zeros((11, 11), dtype=np.int8)
    for a in range(11):
        for b in range(11):
            t[a, b] = dna.hamming_distance(S_BLOCKS[a], S_BLOCKS[b])
    return t


# d(a, b) = Hamming distance of the blocks; symmetric, zero diagonal
INDUCED_TABLE = _build_induced_table()


def phi(word) -> str:
    """Blockwise image of a Z11 word; output length is 3x the input."""
    return "".join(S_BLOCKS[int(s) % 11] for s in word)


def phi_inv(seq: str):
    if len(seq) % 3 != 0:
        raise NotInAlphabet(f"length {len(seq)} not divisible by 3")
    out = []
    for bi in range(0, len(seq), 3):
        block = seq[bi:bi + 3]
        sym = _BLOCK_TO_SYM.get(block)
        if sym is None:
            raise NotInAlphabet(f"block {block} not in alphabet",
                                block_index=bi // 3 + 1)
        out.append(sym)
    return tuple(out)


def phi_batch(words: np.ndarray) -> np.ndarray:
    """(B, k) Z11 array -> (B, 3k) base-code array."""
    B, k = words.shape
    return BLOCK_CODES[words].reshape(B, 3 * k)


def induced_distance(x, y) -> int:
    if len(x) != len(y):
        raise ShapeError(f"length mismatch {len(x)} vs {len(y)}")
    return sum(int(INDUCED_TABLE[int(a) % 11, int(b) % 11])
               for a, b in zip(x, y))


def f_flip(seq: str, threshold: int = 4) -> str:
    """Break homopolymer runs: in every maximal constant run of length
    >= threshold, flip the bases at offsets 4, 8, ... from the run
    start to T.  Output length equals input length.
    """
    out = list(seq)
    for start, length, _ in dna.runs(seq):
        if length >= threshold:
            # 1-based offset j within the run flips when j % 4 == 0
            for j in range(4, length + 1, 4):
                out[start - 1 + j - 1] = "T"
    return "".join(out)


def f_flip_codes(codes: np.ndarray, threshold: int = 4) -> np.ndarray:
    """f_flip on a base-code vector; returns a flipped copy."""
    out = codes.copy()
    n = len(codes)
    T = 3
    i = 0
    while i < n:
        j = i
        while j < n and codes[j] == codes[i]:
            j += 1
        if j - i >= threshold:
            out[i + 3:j:4] = T
        i = j
    return out
