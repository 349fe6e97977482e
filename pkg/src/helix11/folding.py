"""Nussinov-Jackson folding: free-energy DP, stem detection, and the
exhaustive concatenation certifier.

Energies are exact integers.  The bifurcation index of the recursion
runs over i < k <= j.  No minimum hairpin-loop length is imposed:
adjacent positions may pair, matching the E(l-1,l) = 0 initial
condition of the model.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import dna
from .errors import BadArgument, BudgetExceeded, EmptyInput, NotInAlphabet


@dataclass(frozen=True)
class EnergyModel:
    """Pair interaction energies; pairs absent from the map cost 0."""

    pairs: tuple = (
        (("C", "G"), -5), (("G", "C"), -5),
        (("T", "A"), -4), (("A", "T"), -4),
        (("T", "G"), -1), (("G", "T"), -1),
    )

    def mu(self, a: str, b: str) -> int:
        return dict(self.pairs).get((a, b), 0)

    def mu_lut(self) -> np.ndarray:
        lut = np.zeros((4, 4), dtype=np.int32)
        for (a, b), e in self.pairs:
            lut[dna.BASES.index(a), dna.BASES.index(b)] = e
        return lut


DEFAULT_MODEL = EnergyModel()


@dataclass
class FoldReport:
    min_free_energy: int
    max_stem_length: int
    stem_witness: list | None  # 1-based (i, j) pairs, nested chain


def min_free_energy(seq: str, model: EnergyModel = DEFAULT_MODEL) -> int:
    """E(1,n) of the free-energy recursion; O(n^3) time."""
    n = len(seq)
    if n == 0:
        raise EmptyInput("empty sequence")
    mu = model.mu_lut()
    x = dna.seq_to_codes(seq)
    # E[i][j], 0-based, with E[i][j] = 0 whenever j <= i
    E = np.zeros((n + 1, n + 1), dtype=np.int64)
    for length in range(2, n + 1):
        for i in range(0, n - length + 1):
            j = i + length - 1
            best = (E[i + 1][j - 1] if j - 1 > i + 1 else 0) + mu[x[i], x[j]]
            # bifurcation: E(i,k-1) + E(k,j) for i < k <= j
            for k in range(i + 1, j + 1):
                left = E[i][k - 1] if k - 1 > i else 0
                right = E[k][j] if j > k else 0
                cand = left + right
                if cand < best:
                    best = cand
            E[i][j] = best
    return int(E[0][n - 1])


def min_free_energy_batch(arr: np.ndarray, model: EnergyModel = DEFAULT_MODEL) -> np.ndarray:
    """Vectorized E(1,n) over a (B, n) array of base codes."""
    B, n = arr.shape
    if n == 0:
        raise EmptyInput("empty sequences")
    mu = model.mu_lut()
    # E[:, i, j] with zero padding for j <= i
    E = np.zeros((B, n, n), dtype=np.int32)
    for length in range(2, n + 1):
        for i in range(0, n - length + 1):
            j = i + length - 1
            inner = E[:, i + 1, j - 1] if j - 1 > i + 1 else np.zeros(B, np.int32)
            best = inner + mu[arr[:, i], arr[:, j]]
            # E(i, k-1) for k=i+1..j lives in E[:, i, i:j]; E(k, j) in E[:, i+1:j+1, j]
            split = E[:, i, i:j] + E[:, i + 1:j + 1, j]
            np.minimum(best, split.min(axis=1), out=best)
            E[:, i, j] = best
    return E[:, 0, n - 1].astype(np.int64)


def _stem_table(seq: str, model: EnergyModel):
    n = len(seq)
    mu = model.mu_lut()
    x = dna.seq_to_codes(seq)
    L = [[0] * n for _ in range(n)]
    for gap in range(1, n):
        for i in range(0, n - gap):
            j = i + gap
            if mu[x[i], x[j]] < 0:
                L[i][j] = 1 + (L[i + 1][j - 1] if i + 1 < j - 1 else 0)
    return L


def max_stem_length(seq: str, model: EnergyModel = DEFAULT_MODEL):
    """Longest nested chain of negative-energy pairs with both
    coordinates stepping by one; returns (length, witness) with the
    witness as 1-based (i, j) pairs, or (0, None) if nothing pairs.
    """
    n = len(seq)
    L = _stem_table(seq, model)
    best, bi, bj = 0, -1, -1
    for i in range(n):
        for j in range(i + 1, n):
            if L[i][j] > best:
                best, bi, bj = L[i][j], i, j
    if best == 0:
        return 0, None
    witness = [(bi + t + 1, bj - t + 1) for t in range(best)]
    return best, witness


def max_stem_batch(arr: np.ndarray, model: EnergyModel = DEFAULT_MODEL) -> np.ndarray:
    """Max stem length per row of a (B, n) base-code array."""
    B, n = arr.shape
    lut = model.mu_lut() < 0
    P = lut[arr[:, :, None], arr[:, None, :]]  # (B, n, n) bool
    L = np.zeros((B, n, n), dtype=np.int16)
    for gap in range(1, n):
        i = np.arange(n - gap)
        j = i + gap
        if gap >= 3:
            chain = 1 + L[:, i + 1, j - 1]
        else:
            chain = np.ones((B, n - gap), dtype=np.int16)
        L[:, i, j] = np.where(P[:, i, j], chain, 0)
    return L.reshape(B, -1).max(axis=1)


def has_disjoint_sc_subsequence(seq: str, l: int):
    """Is some length-l window a secondary complement of a disjoint
    earlier window?  Returns (found, (i, j)) with 1-based starts,
    earliest pair in lexicographic order, or (False, None).
    """
    n = len(seq)
    if l < 1 or l > n // 2:
        raise BadArgument(f"l={l} out of range for length {n}")
    for i in range(0, n - 2 * l + 1):
        for j in range(i + l, n - l + 1):
            if all(dna.is_sc_pair(seq[i + t], seq[j + l - 1 - t]) for t in range(l)):
                return True, (i + 1, j + 1)
    return False, None


def fold(seq: str, model: EnergyModel = DEFAULT_MODEL) -> FoldReport:
    energy = min_free_energy(seq, model)
    stem, witness = max_stem_length(seq, model)
    return FoldReport(energy, stem, witness)


def check_energy_bound(seq: str, model: EnergyModel = DEFAULT_MODEL) -> bool:
    """Free-energy floor for concatenations of alphabet blocks:
    E(1,3n) >= -4n."""
    from .sigma import S_BLOCKS

    if len(seq) % 3 != 0:
        raise NotInAlphabet("length not divisible by 3")
    blocks = [seq[i:i + 3] for i in range(0, len(seq), 3)]
    for bi, b in enumerate(blocks):
        if b not in S_BLOCKS:
            raise NotInAlphabet(f"block {b} not in alphabet", block_index=bi + 1)
    return min_free_energy(seq, model) >= -4 * len(blocks)


@dataclass
class CertReport:
    alphabet_size: int
    block_length: int
    window: int
    max_stem_found: int
    witness_word: tuple | None  # block indices, odometer order
    witness_index: int | None
    enumerated_count: int
    elapsed: float
    l_max: int | None = None

    @property
    def within_l_max(self):
        return None if self.l_max is None else self.max_stem_found <= self.l_max

    def to_dict(self):
        return {
            "alphabet_size": self.alphabet_size,
            "block_length": self.block_length,
            "window": self.window,
            "max_stem_found": self.max_stem_found,
            "witness_word": list(self.witness_word) if self.witness_word else None,
            "witness_index": self.witness_index,
            "enumerated_count": self.enumerated_count,
            "elapsed": self.elapsed,
            "l_max": self.l_max,
        }


def _digits_for(idxs: np.ndarray, base: int, window: int) -> np.ndarray:
    digits = np.empty((idxs.shape[0], window), dtype=np.int64)
    rem = idxs.copy()
    for pos in range(window - 1, -1, -1):
        digits[:, pos] = rem % base
        rem //= base
    return digits


def _scan_range(block_lut, base, window, lo, hi, batch_size, model):
    """Max stem and first index achieving it over enumeration [lo, hi)."""
    best = -1
    best_idx = None
    m = block_lut.shape[1]
    for a in range(lo, hi, batch_size):
        b = min(a + batch_size, hi)
        idxs = np.arange(a, b, dtype=np.int64)
        digits = _digits_for(idxs, base, window)
        seqs = block_lut[digits].reshape(b - a, window * m)
        stems = max_stem_batch(seqs, model)
        batch_best = int(stems.max())
        if batch_best > best:
            best = batch_best
            best_idx = a + int(np.argmax(stems == batch_best))
    return best, best_idx


def certify_concatenations(alphabet, window: int, l_max: int | None = None,
                           budget: int | None = None, start: int = 0,
                           batch_size: int = 50_000, workers: int | None = None,
                           model: EnergyModel = DEFAULT_MODEL) -> CertReport:
    """Enumerate every window-fold concatenation of alphabet blocks in
    odometer order and report the global max stem length with the first
    witness word.

    Raises BudgetExceeded (carrying a resume token and the partial
    report) if the enumeration range exceeds `budget`.
    """
    if window < 1:
        raise BadArgument("window must be >= 1")
    m = len(alphabet[0])
    if any(len(b) != m for b in alphabet):
        raise BadArgument("alphabet blocks must share one length")
    base = len(alphabet)
    total = base ** window
    end = total
    budget_hit = False
    if budget is not None and total - start > budget:
        end = start + budget
        budget_hit = True
    if workers is None:
        workers = max(1, int(os.environ.get("HELIX_THREADS", "1")))

    block_lut = np.stack([dna.seq_to_codes(b) for b in alphabet])
    t0 = time.time()
    if workers > 1 and end - start > batch_size:
        bounds = np.linspace(start, end, workers + 1, dtype=np.int64)
        ranges = [(int(bounds[i]), int(bounds[i + 1])) for i in range(workers)
                  if bounds[i] < bounds[i + 1]]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(
                _scan_worker,
                [(block_lut, base, window, lo, hi, batch_size, model)
                 for lo, hi in ranges]))
        best, best_idx = -1, None
        for b, bi in parts:
            if b > best:
                best, best_idx = b, bi
    else:
        best, best_idx = _scan_range(block_lut, base, window, start, end,
                                     batch_size, model)
    elapsed = time.time() - t0
    witness = None
    if best_idx is not None:
        witness = tuple(int(d) for d in _digits_for(
            np.array([best_idx], dtype=np.int64), base, window)[0])
    report = CertReport(base, m, window, best, witness, best_idx,
                        end - start, elapsed, l_max)
    if budget_hit:
        raise BudgetExceeded(
            f"enumeration budget exhausted at index {end} of {total}",
            resume_token=end, partial=report)
    return report


def _scan_worker(args):
    return _scan_range(*args)
