"""DNA alphabet primitives.

Sequences are plain uppercase ACGT strings.  Bulk routines work on
numpy uint8 code arrays (A=0, C=1, G=2, T=3).  All user-visible
positions are 1-based.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import EmptyInput, ShapeError

BASES = "ACGT"
_CODE = {b: i for i, b in enumerate(BASES)}
_COMPLEMENT = str.maketrans("ACGT", "TGCA")

# secondary-complement options per base: reverse complement relaxed by
# the G-T wobble, so T and G each admit two partners
SC_OPTIONS = {"A": "T", "C": "G", "T": "AG", "G": "CT"}

# negative-interaction pairs of the folding model, as an unordered relation
_SC_PAIRS = {("C", "G"), ("G", "C"), ("A", "T"), ("T", "A"), ("T", "G"), ("G", "T")}


def normalize(seq: str) -> str:
    s = seq.strip().upper()
    for ch in s:
        if ch not in _CODE:
            raise ValueError(f"not a DNA base: {ch!r}")
    return s


def complement(seq: str) -> str:
    return seq.translate(_COMPLEMENT)


def reverse(seq: str) -> str:
    return seq[::-1]


def reverse_complement(seq: str) -> str:
    return seq.translate(_COMPLEMENT)[::-1]


def hamming_distance(x: str, y: str) -> int:
    if len(x) != len(y):
        raise ShapeError(f"length mismatch {len(x)} vs {len(y)}")
    return sum(a != b for a, b in zip(x, y))


def gc_content(seq: str) -> Fraction:
    if not seq:
        raise EmptyInput("gc_content of empty sequence")
    return Fraction(seq.count("G") + seq.count("C"), len(seq))


def runs(seq: str):
    """Maximal constant runs as (start, length, base), start 1-based."""
    out = []
    i = 0
    n = len(seq)
    while i < n:
        j = i
        while j < n and seq[j] == seq[i]:
            j += 1
        out.append((i + 1, j - i, seq[i]))
        i = j
    return out


def max_homopolymer_run(seq: str) -> int:
    if not seq:
        raise EmptyInput("empty sequence")
    return max(length for _, length, _ in runs(seq))


def is_sc_pair(a: str, b: str) -> bool:
    return (a, b) in _SC_PAIRS


class ScSet:
    """The set of secondary complements of a sequence.

    Membership and size are O(n); iteration enumerates the full set,
    which has 2^(#T + #G) elements, so iterate with care.
    """

    def __init__(self, seq: str):
        self.seq = seq
        # sc reverses the sequence and substitutes per-base options
        self._options = [SC_OPTIONS[b] for b in reversed(seq)]

    def __len__(self):
        n = 1
        for opts in self._options:
            n *= len(opts)
        return n

    def __contains__(self, other: str) -> bool:
        if len(other) != len(self.seq):
            return False
        return all(ch in opts for ch, opts in zip(other, self._options))

    def __iter__(self):
        import itertools

        for combo in itertools.product(*self._options):
            yield "".join(combo)


def secondary_complements(seq: str) -> ScSet:
    return ScSet(seq)


def seq_to_codes(seq: str) -> np.ndarray:
    return np.array([_CODE[c] for c in seq], dtype=np.uint8)


def codes_to_seq(codes: np.ndarray) -> str:
    return "".join(BASES[int(c)] for c in codes)


# 4x4 lookup tables over base codes
COMPLEMENT_LUT = np.array([3, 2, 1, 0], dtype=np.uint8)  # A<->T, C<->G

SC_PAIR_LUT = np.zeros((4, 4), dtype=bool)
for _a, _b in _SC_PAIRS:
    SC_PAIR_LUT[_CODE[_a], _CODE[_b]] = True
