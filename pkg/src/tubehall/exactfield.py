"""
Exact linear algebra over prime fields F_p.

Matrices are plain numpy int64 arrays with entries reduced into [0, p).
Everything here is built on a single batched row-reduction routine so that
the one-matrix helpers and the vectorised orbit canonicalisation share the
same pivoting rule (first nonzero entry, no scaling heuristics).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_p; ``q`` is its order."""

    modulus: int

    def __post_init__(self) -> None:
        if not is_prime(self.modulus):
            raise ValueError(f"modulus must be prime, got {self.modulus}")

    @property
    def q(self) -> int:
        return self.modulus


@lru_cache(maxsize=None)
def _inverse_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        table[x] = pow(x, -1, p)
    return table


def as_matrix(a, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    m = np.array(a, dtype=np.int64)
    if shape is not None:
        m = m.reshape(shape)
    return m % p


def rref_batch(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form of a stack of matrices.

    ``a`` has shape (batch, rows, cols).  Returns ``(R, pivots)`` where
    ``pivots[b, r]`` is the pivot column of row ``r`` of ``R[b]`` or -1.
    """
    a = np.array(a, dtype=np.int64) % p
    if a.ndim != 3:
        raise ValueError("rref_batch expects a 3-d array")
    n_b, n_r, n_c = a.shape
    pivots = np.full((n_b, n_r), -1, dtype=np.int64)
    if n_b == 0 or n_r == 0 or n_c == 0:
        return a, pivots
    inv = _inverse_table(p)
    row = np.zeros(n_b, dtype=np.int64)
    ridx = np.arange(n_r)
    for col in range(n_c):
        cand = (a[:, :, col] != 0) & (ridx[None, :] >= row[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        r = row[b]
        src = cand[b].argmax(axis=1)
        top = a[b, r].copy()
        a[b, r] = a[b, src]
        a[b, src] = top
        a[b, r] = (a[b, r] * inv[a[b, r, col]][:, None]) % p
        factors = a[b, :, col].copy()
        factors[np.arange(len(b)), r] = 0
        a[b] = (a[b] - factors[:, :, None] * a[b, r][:, None, :]) % p
        pivots[b, r] = col
        row[b] += 1
        if (row >= n_r).all():
            break
    return a, pivots


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    m = as_matrix(a, p)
    if m.ndim != 2:
        raise ValueError("rref expects a matrix")
    r, piv = rref_batch(m[None], p)
    return r[0], [int(c) for c in piv[0] if c >= 0]


def rank(a, p: int) -> int:
    m = as_matrix(a, p)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def rank_batch(a: np.ndarray, p: int) -> np.ndarray:
    _, piv = rref_batch(a, p)
    return (piv >= 0).sum(axis=1)


def kernel_basis(a, p: int) -> list[np.ndarray]:
    """Basis of {v : a v = 0}.

    Each basis vector is 1 at its own free column and 0 at every other free
    column, so the coordinates of a kernel vector are read off at the free
    columns (see :func:`free_columns`).
    """
    m = as_matrix(a, p)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return [np.eye(cols, dtype=np.int64)[i] for i in range(cols)]
    r, piv = rref(m, p)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for row, pc in enumerate(piv):
            v[pc] = (-r[row, f]) % p
        basis.append(v)
    return basis


def free_columns(a, p: int) -> list[int]:
    m = as_matrix(a, p)
    if m.shape[0] == 0:
        return list(range(m.shape[1]))
    piv = rref(m, p)[1]
    return [c for c in range(m.shape[1]) if c not in piv]


def solve(a, b, p: int) -> np.ndarray | None:
    """A particular solution of a x = b, or None when inconsistent."""
    m = as_matrix(a, p)
    rhs = as_matrix(b, p).reshape(-1)
    if rhs.shape[0] != m.shape[0]:
        raise ValueError(
            f"right-hand side has length {rhs.shape[0]}, expected {m.shape[0]}"
        )
    cols = m.shape[1]
    if m.shape[0] == 0:
        return np.zeros(cols, dtype=np.int64)
    aug = np.concatenate([m, rhs[:, None]], axis=1)
    r, piv = rref(aug, p)
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, pc in enumerate(piv):
        x[pc] = r[row, cols]
    return x


def inverse(a, p: int) -> np.ndarray:
    m = as_matrix(a, p)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("only square matrices are invertible")
    r, piv = rref(np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


def enumerate_space(basis: Sequence[np.ndarray], p: int, length: int | None = None) -> Iterator[np.ndarray]:
    """All p**k linear combinations of ``basis``, lexicographic in the coefficients."""
    basis = [as_matrix(v, p).reshape(-1) for v in basis]
    if basis:
        length = basis[0].shape[0]
        if any(v.shape[0] != length for v in basis):
            raise ValueError("basis vectors must share one length")
    elif length is None:
        length = 0
    stacked = np.array(basis, dtype=np.int64).reshape(len(basis), length)
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        yield (np.array(coeffs, dtype=np.int64) @ stacked) % p


def all_coefficient_vectors(k: int, p: int) -> np.ndarray:
    """Every vector of F_p^k as rows, in the same order as :func:`enumerate_space`."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((p,) * k).reshape(k, -1).T
    return grids.astype(np.int64)


def quotient_projection(sub_rows, dim: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Projection F_p^dim -> F_p^dim / span(sub_rows) and a linear section.

    The complement is spanned by the unit vectors at the non-pivot columns of
    rref(sub_rows); the projection sends v to the non-pivot entries of v
    reduced against that rref.
    """
    if dim == 0:
        return np.zeros((0, 0), dtype=np.int64), np.zeros((0, 0), dtype=np.int64)
    sub = as_matrix(sub_rows, p).reshape(-1, dim)
    if sub.shape[0]:
        r, piv = rref(sub, p)
    else:
        r, piv = sub, []
    keep = [c for c in range(dim) if c not in piv]
    # reduced @ v subtracts v[pc] * (pivot row) for every pivot, which is the
    # full reduction of v because rref rows vanish at the other pivots
    reduced = np.eye(dim, dtype=np.int64)
    for row, pc in enumerate(piv):
        reduced[:, pc] = (reduced[:, pc] - r[row]) % p
    proj = reduced[keep, :]
    section = np.eye(dim, dtype=np.int64)[:, keep]
    return proj % p, section


def orbit_keys(vectors: np.ndarray, maps: Sequence[np.ndarray], p: int) -> tuple[np.ndarray, np.ndarray]:
    """Canonical keys for the sets k^x v + span{M v : M in maps}.

    For a local endomorphism ring acting on the right, the orbit of v is
    exactly k^x v + v.rad, so two vectors lie in one orbit iff their keys
    coincide.  Returns ``(keys, ranks)`` with ``ranks[i] = dim span{M v_i}``.
    """
    v = np.array(vectors, dtype=np.int64) % p
    n, d = v.shape
    k = len(maps)
    if d == 0:
        return np.zeros((n, 0), dtype=np.int64), np.zeros(n, dtype=np.int64)
    if k:
        w = np.stack([v @ np.asarray(m, dtype=np.int64).T for m in maps], axis=1) % p
        r, piv = rref_batch(w, p)
        rows = np.arange(n)
        for j in range(k):
            pc = piv[:, j]
            sel = rows[pc >= 0]
            if sel.size == 0:
                continue
            coef = v[sel, pc[sel]]
            v[sel] = (v[sel] - coef[:, None] * r[sel, j]) % p
        ranks = (piv >= 0).sum(axis=1)
        flat = r.reshape(n, k * d)
    else:
        ranks = np.zeros(n, dtype=np.int64)
        flat = np.zeros((n, 0), dtype=np.int64)
    nz = v != 0
    has = nz.any(axis=1)
    lead = nz.argmax(axis=1)
    scale = np.ones(n, dtype=np.int64)
    scale[has] = _inverse_table(p)[v[has, lead[has]]]
    v = (v * scale[:, None]) % p
    return np.concatenate([flat, v], axis=1), ranks


def group_orbits(vectors: np.ndarray, maps: Sequence[np.ndarray], p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Group ``vectors`` into orbits of v -> k^x v + span{M v}.

    Returns ``(first, labels, ranks)``: ``first[g]`` is the index of the first
    vector of group ``g`` (groups ordered by first occurrence), ``labels[i]``
    is the group of vector ``i`` and ``ranks[i]`` as in :func:`orbit_keys`.
    """
    keys, ranks = orbit_keys(vectors, maps, p)
    if keys.shape[0] == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    _, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    relabel = np.empty_like(order)
    relabel[order] = np.arange(order.size)
    return first[order], relabel[inverse.reshape(-1)], ranks


@dataclass(frozen=True)
class OrbitTable:
    """All vectors of F_p^dim grouped into orbits of a local-ring action.

    ``vectors[first[g]]`` is the lexicographically first member of orbit g,
    ``labels[i]`` the orbit of vector i and ``sizes[g]`` the orbit size.
    """

    vectors: np.ndarray
    first: np.ndarray
    labels: np.ndarray
    sizes: np.ndarray

    @property
    def count(self) -> int:
        return int(self.first.size)

    def representatives(self) -> np.ndarray:
        return self.vectors[self.first]


def enumerate_orbits(dim: int, maps: Sequence[np.ndarray], p: int) -> OrbitTable:
    """Orbits of F_p^dim under v -> a v + (radical action), a in k^x.

    ``maps`` are the dim x dim matrices of the radical basis acting on
    coordinates.  The size of every orbit is checked against
    (p - 1) * p**rank(span{M v}), which holds exactly when the acting ring is
    local with the given radical.
    """
    vectors = all_coefficient_vectors(dim, p)
    first, labels, ranks = group_orbits(vectors, maps, p)
    sizes = np.bincount(labels, minlength=first.size)
    expected = np.where(vectors[first].any(axis=1), (p - 1) * np.power(p, ranks[first]), 1)
    if not np.array_equal(sizes, expected):
        raise AssertionError("orbit sizes disagree with the local-ring orbit formula")
    return OrbitTable(vectors, first, labels, sizes)
