"""Code constructions over Z11 and their distance engines."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import dna, sigma, zmod11
from .errors import BadArgument, BudgetExceeded, ShapeError

Q = 11
DEFAULT_CAP = 200_000


@dataclass
class LinearCode:
    n: int
    k: int
    G: np.ndarray
    H: np.ndarray | None = None
    family: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.G.shape != (self.k, self.n):
            raise ShapeError(f"G shape {self.G.shape} != ({self.k}, {self.n})")
        if self.H is not None and (self.G @ self.H.T % Q).any():
            raise ShapeError("G H^T != 0")

    @property
    def size_exponent(self):
        return self.k

    def spec_string(self):
        p = self.params
        if self.family == "family1":
            return f"family1:k={self.k}"
        if self.family == "hamming":
            return f"hamming:r={p['r']}"
        if self.family == "rs":
            return f"rs:delta={p['delta']},alpha={p['alpha']},a={p['a']}"
        return "custom"


@dataclass
class DistanceCert:
    metric: str
    kind: str  # "exact" or "bounded"
    lower: int
    upper: int | None
    witness_pair: tuple | None = None  # two Z11 words

    @property
    def value(self):
        return self.lower if self.kind == "exact" else None

    def to_dict(self):
        return {
            "metric": self.metric,
            "kind": self.kind,
            "lower": self.lower,
            "upper": self.upper,
            "witness_pair": (
                [zmod11.word_to_str(w) for w in self.witness_pair]
                if self.witness_pair else None),
        }


def family1(k: int) -> LinearCode:
    """Length 4^(k-1), dimension k; top row of each step is the constant
    blocks 1..4, the lower rows tile the previous generator four times."""
    if not 2 <= k <= 5:
        raise BadArgument("family1 requires 2 <= k <= 5")
    G = zmod11.matrix([[1, 1, 1, 1], [1, 5, 9, 10]])
    for i in range(2, k):
        width = 4 ** (i - 1)
        top = np.concatenate([np.full(width, v) for v in (1, 2, 3, 4)])
        G = np.vstack([top, np.hstack([G] * 4)]) % Q
    return LinearCode(4 ** (k - 1), k, G, family="family1", params={"k": k})


def hamming(r: int, size_budget: int = 10 ** 6) -> LinearCode:
    """q-ary Hamming code: one parity column per projective point,
    normalized so the first nonzero coordinate is 1, in lexicographic
    order of the full vector."""
    if r < 2:
        raise BadArgument("hamming requires r >= 2")
    n = (Q ** r - 1) // (Q - 1)
    if n > size_budget:
        raise BudgetExceeded(f"hamming r={r} needs {n} columns")
    cols = [v for v in itertools.product(range(Q), repeat=r)
            if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1]
    cols.sort()
    H = np.array(cols, dtype=np.int64).T
    G = zmod11.nullspace(H)
    return LinearCode(n, n - r, G, H, family="hamming", params={"r": r})


def reed_solomon(delta: int, alpha: int = 2, a: int = 0) -> LinearCode:
    """BCH-style Reed-Solomon [10, 11-delta, delta] over Z11, generated
    by g(x) with roots alpha^(a+1) .. alpha^(a+delta-1)."""
    if not 2 <= delta <= Q - 1:
        raise BadArgument("delta must be in [2, 10]")
    if not zmod11.is_primitive(alpha):
        raise BadArgument(f"alpha={alpha} is not primitive mod 11")
    n = Q - 1
    k = Q - delta
    g = (1,)
    for t in range(1, delta):
        root = zmod11.power(alpha, a + t)
        g = zmod11.poly_mul(g, (-root % Q, 1))
    G = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        G[i, i:i + len(g)] = g
    # syndrome rows: evaluation at each root of g
    H = np.zeros((delta - 1, n), dtype=np.int64)
    for t in range(1, delta):
        root = zmod11.power(alpha, a + t)
        H[t - 1] = [zmod11.power(root, j) for j in range(n)]
    return LinearCode(n, k, G, H, family="rs",
                      params={"delta": delta, "alpha": alpha, "a": a,
                              "g": g})


def enumerate_codewords(code: LinearCode, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All 11^k codewords, lexicographic in the message; raises
    BudgetExceeded beyond the cap."""
    if Q ** code.k > cap:
        raise BudgetExceeded(f"11^{code.k} codewords exceed cap {cap}")
    return zmod11.encode_batch(zmod11.all_messages(code.k), code.G)


def is_enumerable(code: LinearCode, cap: int = DEFAULT_CAP) -> bool:
    return Q ** code.k <= cap


def is_codeword(code: LinearCode, w) -> bool:
    v = np.asarray(zmod11.reduce_word(w), dtype=np.int64)
    if v.shape[0] != code.n:
        raise ShapeError(f"word length {v.shape[0]} != n {code.n}")
    if code.H is not None:
        return not (code.H @ v % Q).any()
    stacked = np.vstack([code.G, v])
    return zmod11.rank(stacked) == zmod11.rank(code.G)


def griesmer_check(code: LinearCode, d: int) -> bool:
    if d < 1:
        raise BadArgument("d must be >= 1")
    return code.n == sum(math.ceil(d / Q ** i) for i in range(code.k))


def design_distance(code: LinearCode):
    if code.family == "family1":
        return 3 * 4 ** (code.k - 2) if code.k >= 2 else None
    if code.family == "hamming":
        return 3
    if code.family == "rs":
        return code.params["delta"]
    return None


# -- low-weight search on the parity-check matrix --

def smallest_column_dependency(code: LinearCode, w_max: int = 3):
    """Smallest set of <= w_max linearly dependent H columns, returned
    as a weight-w codeword, or (w_max + 1, None) if none exists."""
    H = code.H
    if H is None:
        raise BadArgument("needs a parity-check matrix")
    n = code.n
    cols = H.T % Q  # (n, r)
    # w = 1: a zero column
    zero = np.flatnonzero(~cols.any(axis=1))
    if zero.size:
        w = np.zeros(n, dtype=np.int64)
        w[zero[0]] = 1
        return 1, w
    # projective normalization: scale each column so its first nonzero
    # entry is 1; two columns are dependent iff they normalize equally
    first = (cols != 0).argmax(axis=1)
    lead = cols[np.arange(n), first]
    inv_lut = np.array([0] + [zmod11.inv(a) for a in range(1, Q)],
                       dtype=np.int64)
    norm = cols * inv_lut[lead][:, None] % Q
    order = np.lexsort(norm.T[::-1])
    sn = norm[order]
    dup = np.flatnonzero((sn[1:] == sn[:-1]).all(axis=1))
    if dup.size:
        i, j = sorted((int(order[dup[0]]), int(order[dup[0] + 1])))
        # c_i = (lead_i / lead_j) c_j
        w = np.zeros(n, dtype=np.int64)
        w[i] = 1
        w[j] = -(lead[i] * inv_lut[lead[j]]) % Q
        return 2, w
    if w_max < 3:
        return w_max + 1, None
    # w = 3: look up c_i + lam c_j among the normalized columns
    index = {tuple(v): i for i, v in enumerate(norm)}
    for i in range(n):
        for j in range(i + 1, n):
            for lam in range(1, Q):
                v = (cols[i] + lam * cols[j]) % Q
                nz = np.flatnonzero(v)
                if nz.size == 0:
                    continue  # impossible here, pairs are independent
                lead_v = int(v[nz[0]])
                k = index.get(tuple(v * inv_lut[lead_v] % Q))
                if k is not None and k not in (i, j):
                    w = np.zeros(n, dtype=np.int64)
                    w[i] = 1
                    w[j] = lam
                    w[k] = -(lead_v * inv_lut[lead[k]]) % Q
                    return 3, w
    return 4, None


def _diff_min_table():
    """For each symbol difference v, the cheapest induced step
    min_a d(a, a+v) and an `a` achieving it."""
    vals = np.zeros(Q, dtype=np.int64)
    args = np.zeros(Q, dtype=np.int64)
    for v in range(1, Q):
        best, arg = None, 0
        for a in range(Q):
            d = int(sigma.INDUCED_TABLE[a, (a + v) % Q])
            if best is None or d < best:
                best, arg = d, a
        vals[v], args[v] = best, arg
    return vals, args


_DIFF_MIN, _DIFF_ARG = _diff_min_table()


def _witness_with_support(code: LinearCode, support: np.ndarray,
                          bases: np.ndarray):
    """A codeword x with x[support] = bases, or None.  Uses the parity
    checks when available (cheap for long codes), else the generator."""
    if code.H is not None:
        rest = np.setdiff1d(np.arange(code.n), support)
        rhs = (-(code.H[:, support] @ bases)) % Q
        y = zmod11.solve(code.H[:, rest], rhs)
        if y is None:
            return None
        x = np.zeros(code.n, dtype=np.int64)
        x[support] = bases
        x[rest] = y
        return x
    m = zmod11.solve(code.G[:, support].T, bases)
    if m is None:
        return None
    return np.asarray(zmod11.encode(tuple(m), code.G), dtype=np.int64)


def _induced_upper_from_codeword(code: LinearCode, codeword: np.ndarray):
    """Upper bound for the min induced distance from a low-weight
    codeword: per-coordinate cheapest base symbols, realized as an
    actual codeword pair when the support values are attainable."""
    best, best_pair = None, None
    support = np.flatnonzero(codeword)
    for lam in range(1, Q):
        c = codeword * lam % Q
        steps = _DIFF_MIN[c[support]]
        cand = int(steps.sum())
        if best is not None and cand >= best:
            continue
        bases = _DIFF_ARG[c[support]]
        x = _witness_with_support(code, support, bases)
        if x is not None:
            y = (x + c) % Q
            best, best_pair = cand, (tuple(x), tuple(y))
        else:
            # fall back to the zero-based pair
            cand0 = sigma.induced_distance(np.zeros(code.n, int), c)
            if best is None or cand0 < best:
                best, best_pair = cand0, (tuple(np.zeros(code.n, int)),
                                          tuple(c))
    return best, best_pair


# -- exact pairwise engines over enumerated codebooks --

def _min_pairwise(A: np.ndarray, B: np.ndarray, table: np.ndarray | None,
                  exclude: str, chunk: int = 256):
    """Min distance over ordered pairs (A[i], B[j]).

    table: per-symbol distance lookup, or None for plain Hamming.
    exclude: "index" drops i == j, "zero" drops zero distances.
    Returns (value, (i, j)) with the lexicographically first witness.
    """
    M = A.shape[0]
    best, wit = None, None
    for lo in range(0, M, chunk):
        hi = min(lo + chunk, M)
        Ai = A[lo:hi]
        if table is not None:
            D = table[Ai[:, None, :], B[None, :, :]].sum(axis=2, dtype=np.int32)
        else:
            D = (Ai[:, None, :] != B[None, :, :]).sum(axis=2, dtype=np.int32)
        if exclude == "index":
            idx = np.arange(lo, hi)
            D[np.arange(hi - lo), idx] = np.iinfo(np.int32).max
        else:
            D[D == 0] = np.iinfo(np.int32).max
        m = int(D.min())
        if best is None or m < best:
            i, j = np.unravel_index(int(np.argmin(D)), D.shape)
            best, wit = m, (lo + int(i), int(j))
    if best is None or best == np.iinfo(np.int32).max:
        return None, None
    return best, wit


def dna_images(code: LinearCode, cap: int = DEFAULT_CAP, apply_f: bool = False,
               flip_threshold: int = 4) -> np.ndarray:
    """(M, 3n) base-code array of the codebook's DNA sequences."""
    cws = enumerate_codewords(code, cap)
    seqs = sigma.phi_batch(cws)
    if apply_f:
        seqs = np.stack([sigma.f_flip_codes(row, flip_threshold) for row in seqs])
    return seqs


def min_distance(code: LinearCode, metric: str = "hamming_z11",
                 cap: int = DEFAULT_CAP, apply_f: bool = False,
                 flip_threshold: int = 4, w_max: int = 3) -> DistanceCert:
    """Certify the minimum distance of a code under one of the metrics
    hamming_z11, induced, reverse, reverse_complement, or
    dna_hamming_after_f.  Exact when the codebook is enumerable,
    a bound certificate otherwise (never raises)."""
    enumerable = is_enumerable(code, cap)
    if metric == "hamming_z11":
        if enumerable:
            cws = enumerate_codewords(code, cap)
            weights = (cws != 0).sum(axis=1)
            nz = weights[weights > 0]
            d = int(nz.min())
            i = int(np.argmax((weights == d)))
            return DistanceCert(metric, "exact", d, d,
                               (tuple(np.zeros(code.n, int)), tuple(cws[i])))
        w, cw = smallest_column_dependency(code, w_max)
        if cw is not None:
            return DistanceCert(metric, "exact", w, w,
                               (tuple(np.zeros(code.n, int)), tuple(cw)))
        return DistanceCert(metric, "bounded", w, None)

    if metric == "induced":
        if enumerable:
            cws = enumerate_codewords(code, cap)
            d, (i, j) = _min_pairwise(cws, cws, sigma.INDUCED_TABLE, "index")
            return DistanceCert(metric, "exact", d, d,
                               (tuple(cws[i]), tuple(cws[j])))
        ham = min_distance(code, "hamming_z11", cap=cap, w_max=w_max)
        lower = ham.lower  # each differing symbol contributes >= 1
        upper, wit = None, None
        if ham.kind == "exact" and ham.witness_pair is not None:
            cw = np.array(ham.witness_pair[1], dtype=np.int64)
            upper, wit = _induced_upper_from_codeword(code, cw)
        if upper is not None and upper == lower:
            return DistanceCert(metric, "exact", lower, upper, wit)
        return DistanceCert(metric, "bounded", lower, upper, wit)

    if metric in ("reverse", "reverse_complement"):
        if not enumerable:
            lower = code.n if metric == "reverse_complement" else 0
            return DistanceCert(metric, "bounded", lower, None)
        cws = enumerate_codewords(code, cap)
        seqs = dna_images(code, cap, apply_f, flip_threshold)
        other = seqs[:, ::-1]
        if metric == "reverse_complement":
            other = dna.COMPLEMENT_LUT[other]
        d, wit = _min_pairwise(seqs, other, None, "zero")
        if d is None:
            return DistanceCert(metric, "exact", 0, 0)
        i, j = wit
        return DistanceCert(metric, "exact", d, d,
                           (tuple(cws[i]), tuple(cws[j])))

    if metric == "dna_hamming_after_f":
        if enumerable:
            cws = enumerate_codewords(code, cap)
            seqs = dna_images(code, cap, apply_f=True,
                              flip_threshold=flip_threshold)
            d, (i, j) = _min_pairwise(seqs, seqs, None, "index")
            return DistanceCert(metric, "exact", d, d,
                               (tuple(cws[i]), tuple(cws[j])))
        ind = min_distance(code, "induced", cap=cap, w_max=w_max)
        d = ind.lower
        lower = math.ceil(3 * d / 4)
        upper = math.ceil((3 * code.n + 3 * d) / 4)
        return DistanceCert(metric, "bounded", lower, upper)

    raise BadArgument(f"unknown metric {metric!r}")


def parse_family_spec(text: str) -> LinearCode:
    """Builds a code from a spec string: family1:k=3, hamming:r=2, or
    rs:delta=3,alpha=2,a=0."""
    name, _, argstr = text.partition(":")
    kwargs = {}
    if argstr:
        for part in argstr.split(","):
            key, _, val = part.partition("=")
            if not val:
                raise BadArgument(f"malformed spec part {part!r}")
            kwargs[key.strip()] = int(val)
    if name == "family1":
        return family1(kwargs.pop("k"))
    if name == "hamming":
        return hamming(kwargs.pop("r"))
    if name == "rs":
        return reed_solomon(kwargs.pop("delta"), kwargs.pop("alpha", 2),
                            kwargs.pop("a", 0))
    raise BadArgument(f"unknown family {name!r}")
