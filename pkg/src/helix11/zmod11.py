"""Exact arithmetic over Z11, the prime field with 11 elements.

Words are tuples of residues, matrices are numpy integer arrays, and
polynomials are tuples of coefficients in ascending power order.  All
operations reduce mod 11 and stay exact.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import ShapeError

P = 11

# Residue ten prints as 'X' so words are fixed-width digit strings.
_DIGITS = "0123456789X"


def reduce_word(word) -> tuple:
    return tuple(int(s) % P for s in word)


def add(a: int, b: int) -> int:
    return (a + b) % P


def sub(a: int, b: int) -> int:
    return (a - b) % P


def mul(a: int, b: int) -> int:
    return (a * b) % P


def inv(a: int) -> int:
    a %= P
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod 11")
    return pow(a, P - 2, P)


def power(a: int, e: int) -> int:
    a %= P
    if a == 0 and e < 0:
        raise ZeroDivisionError("0 has no inverse mod 11")
    if e < 0:
        return pow(inv(a), -e, P)
    return pow(a, e, P)


def multiplicative_order(a: int) -> int:
    """Smallest t >= 1 with a^t = 1; a is primitive iff the order is 10."""
    a %= P
    if a == 0:
        raise ZeroDivisionError("0 has no multiplicative order")
    t, x = 1, a
    while x != 1:
        x = (x * a) % P
        t += 1
    return t


def is_primitive(a: int) -> bool:
    return a % P != 0 and multiplicative_order(a) == P - 1


def word_to_str(word) -> str:
    """Fixed-width digit string; residue ten is written 'X' (e.g. 159X)."""
    return "".join(_DIGITS[int(s) % P] for s in word)


def word_from_str(text: str) -> tuple:
    out = []
    for ch in text.strip():
        if ch in "0123456789":
            out.append(int(ch))
        elif ch in "Xx":
            out.append(10)
        else:
            raise ValueError(f"bad Z11 digit {ch!r}")
    return tuple(out)


def matrix(rows) -> np.ndarray:
    m = np.asarray(rows, dtype=np.int64) % P
    if m.ndim != 2:
        raise ShapeError("matrix needs two dimensions")
    return m


def encode(msg, G: np.ndarray) -> tuple:
    """Codeword = message x generator matrix over Z11."""
    v = np.asarray(reduce_word(msg), dtype=np.int64)
    if v.shape[0] != G.shape[0]:
        raise ShapeError(f"message length {v.shape[0]} != G rows {G.shape[0]}")
    return tuple(int(x) for x in (v @ G) % P)


def encode_batch(msgs: np.ndarray, G: np.ndarray) -> np.ndarray:
    if msgs.shape[1] != G.shape[0]:
        raise ShapeError(f"message width {msgs.shape[1]} != G rows {G.shape[0]}")
    return (msgs.astype(np.int64) @ G) % P


def all_messages(k: int) -> np.ndarray:
    """All 11^k messages of length k in lexicographic order."""
    grids = np.meshgrid(*([np.arange(P)] * k), indexing="ij")
    return np.stack(grids, axis=-1).reshape(-1, k)


# -- polynomials: tuple of coefficients, index i = coefficient of x^i --

def poly_normalize(coeffs) -> tuple:
    c = [int(x) % P for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(p, q) -> tuple:
    p, q = poly_normalize(p), poly_normalize(q)
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = (out[i + j] + a * b) % P
    return poly_normalize(out)


def poly_eval(p, x: int) -> int:
    acc = 0
    for c in reversed(poly_normalize(p)):
        acc = (acc * x + c) % P
    return acc


def nullspace(H: np.ndarray) -> np.ndarray:
    """Basis of {v : H v = 0} over Z11, one vector per row.

    Plain Gaussian elimination; H is small for every construction here.
    """
    H = H.copy() % P
    rows, cols = H.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for rr in range(r, rows):
            if H[rr, c] != 0:
                piv = rr
                break
        if piv is None:
            continue
        H[[r, piv]] = H[[piv, r]]
        H[r] = (H[r] * inv(int(H[r, c]))) % P
        for rr in range(rows):
            if rr != r and H[rr, c] != 0:
                H[rr] = (H[rr] - H[rr, c] * H[r]) % P
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for pr, pc in enumerate(pivots):
            basis[i, pc] = (-H[pr, fc]) % P
    return basis


def solve(A: np.ndarray, b: np.ndarray):
    """One solution x of A x = b over Z11, or None if inconsistent."""
    A = A % P
    b = np.asarray(b, dtype=np.int64) % P
    rows, cols = A.shape
    aug = np.hstack([A, b.reshape(-1, 1)])
    r = 0
    pivots = []
    for c in range(cols):
        piv = None
        for rr in range(r, rows):
            if aug[rr, c] != 0:
                piv = rr
                break
        if piv is None:
            continue
        aug[[r, piv]] = aug[[piv, r]]
        aug[r] = (aug[r] * inv(int(aug[r, c]))) % P
        for rr in range(rows):
            if rr != r and aug[rr, c] != 0:
                aug[rr] = (aug[rr] - aug[rr, c] * aug[r]) % P
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for rr in range(r, rows):
        if aug[rr, cols] != 0:
            return None
    x = np.zeros(cols, dtype=np.int64)
    for pr, pc in enumerate(pivots):
        x[pc] = aug[pr, cols]
    return x


def rank(M: np.ndarray) -> int:
    return M.shape[1] - nullspace(M).shape[0]


def iter_words(n: int):
    """All Z11 words of length n, lexicographic."""
    return itertools.product(range(P), repeat=n)
