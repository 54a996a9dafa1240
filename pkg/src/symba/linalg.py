"""Exact linear algebra over Z/p, p prime. Plain Gaussian elimination.

All matrices are numpy int64 arrays with entries reduced mod p. Sizes here
are desk scale (hundreds of rows), so no pivoting strategy beyond "first
nonzero" is needed, and determinism matters more than speed.
"""

from __future__ import annotations

import numpy as np

from .errors import UnsupportedModulusError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def require_prime(p: int, context: str) -> None:
    if not is_prime(p):
        raise UnsupportedModulusError(f"{context} needs a prime modulus, got {p}")


def _inv_mod(a: int, p: int) -> int:
    return pow(int(a), p - 2, p)


def row_reduce(A: np.ndarray, p: int):
    """Reduced row echelon form of A mod p.

    Returns (R, pivot_cols); rows of R below len(pivot_cols) are zero.
    """
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivot_cols = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hits = np.nonzero(R[r:, c])[0]
        if hits.size == 0:
            continue
        lead = r + int(hits[0])
        if lead != r:
            R[[r, lead]] = R[[lead, r]]
        R[r] = (R[r] * _inv_mod(R[r, c], p)) % p
        other = np.nonzero(R[:, c])[0]
        for i in other:
            if i != r:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivot_cols.append(c)
        r += 1
    return R, pivot_cols


def solve(A: np.ndarray, B: np.ndarray, p: int):
    """One solution X of A @ X = B mod p, or None when inconsistent.

    B may be a vector or a matrix (solved column by column in one sweep).
    Free variables are set to zero, so the solution is deterministic.
    """
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    vector = B.ndim == 1
    if vector:
        B = B[:, None]
    rows, cols = A.shape
    aug = np.concatenate([A, B], axis=1)
    R, pivot_cols = row_reduce(aug, p)
    rank = len([c for c in pivot_cols if c < cols])
    for i in range(rank, rows):
        if R[i, cols:].any():
            return None
    X = np.zeros((cols, B.shape[1]), dtype=np.int64)
    for i, c in enumerate(pivot_cols):
        if c < cols:
            X[c] = R[i, cols:]
    return X[:, 0] if vector else X


def nullspace_basis(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of the kernel of A mod p, one vector per row (may be empty)."""
    A = np.asarray(A, dtype=np.int64) % p
    rows, cols = A.shape
    R, pivot_cols = row_reduce(A, p)
    pivot_set = set(pivot_cols)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, c in enumerate(pivot_cols):
            basis[k, c] = (-R[i, fc]) % p
    return basis


def invert(A: np.ndarray, p: int):
    """Inverse of a square matrix mod p, or None when singular."""
    A = np.asarray(A, dtype=np.int64) % p
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"matrix must be square, got {A.shape}")
    X = solve(A, np.eye(n, dtype=np.int64), p)
    if X is None or not np.array_equal((A @ X) % p, np.eye(n, dtype=np.int64)):
        return None
    return X


def rank(A: np.ndarray, p: int) -> int:
    _, pivot_cols = row_reduce(A, p)
    return len(pivot_cols)
