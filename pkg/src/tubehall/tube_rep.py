"""
Nilpotent representations of the cyclic quiver over F_p.

Vertices are labelled 1..n in the public interface and stored 0-based.  The
arrow ``alpha_i`` goes from vertex i to vertex i+1 (mod n), so
``rep.maps[i]`` is a ``dims[i+1] x dims[i]`` matrix.

An indecomposable is uniserial: a chain of one-dimensional pieces
``top -> ... -> socle`` following the arrows.  It is named by its socle
vertex and its length.  For n = 2 the signed integer m names (socle 1,
length m) and -m names (socle 2, length m).

With arrows pointing i -> i+1 one has Ext^1(S_i, S_{i+1}) != 0, so the
Auslander-Reiten translate moves the socle one step *forward*:
tau(socle s, l) = (socle s+1, l).  The rotation ``tau_rep`` realises this
on representations: (tau M)_i = M_{i-1}.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache, total_ordering
from typing import Iterable, Sequence

import numpy as np

from . import exactfield as ef


@dataclass(frozen=True)
class CyclicQuiver:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a cyclic quiver needs at least one vertex")

    def arrows(self) -> list[tuple[int, int]]:
        """Arrows as (source, target) in 1-based labels."""
        return [(i, i % self.n + 1) for i in range(1, self.n + 1)]


@total_ordering
@dataclass(frozen=True)
class IndecLabel:
    socle: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError(f"length must be positive, got {self.length}")
        if self.socle < 1:
            raise ValueError(f"socle vertex must be >= 1, got {self.socle}")

    def sort_key(self) -> tuple[int, int]:
        return (self.length, self.socle)

    def __lt__(self, other: "IndecLabel") -> bool:
        return self.sort_key() < other.sort_key()

    def check(self, n: int) -> "IndecLabel":
        if not 1 <= self.socle <= n:
            raise ValueError(f"socle vertex {self.socle} out of range for n={n}")
        return self

    @staticmethod
    def from_signed(m: int) -> "IndecLabel":
        """The rank-2 naming: m > 0 is socle 1, m < 0 is socle 2."""
        if m == 0:
            raise ValueError("<0> is not an indecomposable")
        return IndecLabel(1 if m > 0 else 2, abs(m))

    def to_signed(self) -> int:
        if self.socle not in (1, 2):
            raise ValueError("signed labels only exist for n = 2")
        return self.length if self.socle == 1 else -self.length

    def __str__(self) -> str:
        return f"(socle {self.socle}, length {self.length})"


def ar_translate(label: IndecLabel, n: int) -> IndecLabel:
    label.check(n)
    return IndecLabel(label.socle % n + 1, label.length)


def ar_translate_inv(label: IndecLabel, n: int) -> IndecLabel:
    label.check(n)
    return IndecLabel((label.socle - 2) % n + 1, label.length)


def _zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


@dataclass(frozen=True, eq=False)
class NilpRep:
    n: int
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]
    p: int

    def __post_init__(self) -> None:
        if len(self.dims) != self.n or len(self.maps) != self.n:
            raise ValueError("need one dimension and one arrow map per vertex")
        fixed = []
        for i, a in enumerate(self.maps):
            a = np.asarray(a, dtype=np.int64).reshape(self.dims[(i + 1) % self.n], self.dims[i]) % self.p
            a.setflags(write=False)
            fixed.append(a)
        object.__setattr__(self, "maps", tuple(fixed))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if not self.is_nilpotent():
            raise ValueError("representation is not nilpotent")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def path(self, start: int, length: int) -> np.ndarray:
        """Composite of ``length`` consecutive arrow maps leaving vertex ``start`` (0-based)."""
        v = start % self.n
        acc = np.eye(self.dims[v], dtype=np.int64)
        for step in range(length):
            acc = (self.maps[(v + step) % self.n] @ acc) % self.p
        return acc

    def is_nilpotent(self) -> bool:
        t = self.total_dim
        return all(not self.path(s, t).any() for s in range(self.n))

    def equals(self, other: "NilpRep") -> bool:
        return (
            self.n == other.n
            and self.p == other.p
            and self.dims == other.dims
            and all(np.array_equal(a, b) for a, b in zip(self.maps, other.maps))
        )


@dataclass(frozen=True, eq=False)
class RepMorphism:
    source: NilpRep
    target: NilpRep
    comps: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        p = self.source.p
        fixed = tuple(
            np.asarray(c, dtype=np.int64).reshape(self.target.dims[i], self.source.dims[i]) % p
            for i, c in enumerate(self.comps)
        )
        object.__setattr__(self, "comps", fixed)

    def is_valid(self) -> bool:
        M, N, p = self.source, self.target, self.source.p
        for i in range(M.n):
            j = (i + 1) % M.n
            if not np.array_equal((N.maps[i] @ self.comps[i]) % p, (self.comps[j] @ M.maps[i]) % p):
                return False
        return True

    def is_zero(self) -> bool:
        return not any(c.any() for c in self.comps)

    def is_iso(self) -> bool:
        p = self.source.p
        return self.source.dims == self.target.dims and all(
            ef.rank(c, p) == c.shape[0] for c in self.comps
        )


@dataclass(frozen=True, eq=False)
class ExtCocycle:
    """Components c_i : M_i -> N_{i+1}, one per arrow; M is the quotient, N the sub."""

    source: NilpRep
    target: NilpRep
    comps: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        n, p = self.source.n, self.source.p
        fixed = tuple(
            np.asarray(c, dtype=np.int64).reshape(self.target.dims[(i + 1) % n], self.source.dims[i]) % p
            for i, c in enumerate(self.comps)
        )
        object.__setattr__(self, "comps", fixed)


# ---------------------------------------------------------------- construction


def _chain_layout(n: int, label: IndecLabel) -> list[tuple[int, int]]:
    """(vertex, position in vertex block) of each chain element e_0 (socle) .. e_{l-1} (top)."""
    s0 = label.socle - 1
    seen = [0] * n
    out = []
    for k in range(label.length):
        v = (s0 - k) % n
        out.append((v, seen[v]))
        seen[v] += 1
    return out


def build_indec(n: int | CyclicQuiver, label: IndecLabel, p: int) -> NilpRep:
    if isinstance(n, CyclicQuiver):
        n = n.n
    label.check(n)
    layout = _chain_layout(n, label)
    dims = [0] * n
    for v, _ in layout:
        dims[v] += 1
    maps = [_zeros(dims[(i + 1) % n], dims[i]) for i in range(n)]
    for k in range(1, label.length):
        v, pos = layout[k]
        w, wpos = layout[k - 1]
        maps[v][wpos, pos] = 1
    return NilpRep(n, tuple(dims), tuple(maps), p)


def top_position(n: int, label: IndecLabel) -> tuple[int, int]:
    """Vertex and block position of the generator of ``build_indec(label)``."""
    return _chain_layout(n, label)[-1]


def zero_rep(n: int, p: int) -> NilpRep:
    return NilpRep(n, (0,) * n, tuple(_zeros(0, 0) for _ in range(n)), p)


def direct_sum(reps: Sequence[NilpRep]) -> NilpRep:
    if not reps:
        raise ValueError("direct_sum needs at least one summand")
    n, p = reps[0].n, reps[0].p
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(n))
    maps = []
    for i in range(n):
        j = (i + 1) % n
        blk = _zeros(dims[j], dims[i])
        ro = co = 0
        for r in reps:
            blk[ro:ro + r.dims[j], co:co + r.dims[i]] = r.maps[i]
            ro += r.dims[j]
            co += r.dims[i]
        maps.append(blk)
    return NilpRep(n, dims, tuple(maps), p)


def build_sum(n: int, labels: Iterable[IndecLabel], p: int) -> NilpRep:
    labels = list(labels)
    if not labels:
        return zero_rep(n, p)
    return direct_sum([build_indec(n, lab, p) for lab in labels])


def conjugate(M: NilpRep, g: Sequence[np.ndarray]) -> NilpRep:
    """The representation g M g^{-1} (isomorphic to M for invertible g_i)."""
    n, p = M.n, M.p
    inv = [ef.inverse(gi, p) if gi.size else gi for gi in g]
    maps = [(np.asarray(g[(i + 1) % n]) @ M.maps[i] @ inv[i]) % p for i in range(n)]
    return NilpRep(n, M.dims, tuple(maps), p)


def tau_rep(M: NilpRep) -> NilpRep:
    """(tau M)_i = M_{i-1}: rotates every socle one vertex forward."""
    n = M.n
    dims = tuple(M.dims[(i - 1) % n] for i in range(n))
    maps = tuple(M.maps[(i - 1) % n] for i in range(n))
    return NilpRep(n, dims, maps, M.p)


def tau_inv_rep(M: NilpRep) -> NilpRep:
    n = M.n
    dims = tuple(M.dims[(i + 1) % n] for i in range(n))
    maps = tuple(M.maps[(i + 1) % n] for i in range(n))
    return NilpRep(n, dims, maps, M.p)


def tau_inv_morphism(f: RepMorphism) -> RepMorphism:
    n = f.source.n
    comps = tuple(f.comps[(i + 1) % n] for i in range(n))
    return RepMorphism(tau_inv_rep(f.source), tau_inv_rep(f.target), comps)


def identity(M: NilpRep) -> RepMorphism:
    return RepMorphism(M, M, tuple(np.eye(d, dtype=np.int64) for d in M.dims))


def zero_morphism(M: NilpRep, N: NilpRep) -> RepMorphism:
    return RepMorphism(M, N, tuple(_zeros(N.dims[i], M.dims[i]) for i in range(M.n)))


def compose(g: RepMorphism, f: RepMorphism) -> RepMorphism:
    """g o f."""
    p = f.source.p
    return RepMorphism(f.source, g.target, tuple((a @ b) % p for a, b in zip(g.comps, f.comps)))


# ---------------------------------------------------------------- Hom and Ext


class HomExt:
    """Hom(M, N) and Ext^1(M, N) computed from one coboundary matrix.

    Unknowns h = (h_i) with h_i : M_i -> N_i are flattened vertex by vertex
    (row-major).  The coboundary D sends h to (N.maps[i] h_i - h_{i+1} M.maps[i])_i,
    flattened arrow by arrow.  Hom = ker D and Ext^1 = coker D.
    """

    def __init__(self, M: NilpRep, N: NilpRep):
        if M.n != N.n or M.p != N.p:
            raise ValueError("representations live on different quivers or fields")
        self.M, self.N = M, N
        n, p = M.n, M.p
        self.p = p
        self.h_off = np.cumsum([0] + [N.dims[i] * M.dims[i] for i in range(n)])
        self.c_off = np.cumsum([0] + [N.dims[(i + 1) % n] * M.dims[i] for i in range(n)])
        D = _zeros(int(self.c_off[-1]), int(self.h_off[-1]))
        for i in range(n):
            j = (i + 1) % n
            rows = slice(self.c_off[i], self.c_off[i + 1])
            D[rows, self.h_off[i]:self.h_off[i + 1]] += np.kron(N.maps[i], np.eye(M.dims[i], dtype=np.int64))
            D[rows, self.h_off[j]:self.h_off[j + 1]] -= np.kron(np.eye(N.dims[j], dtype=np.int64), M.maps[i].T)
        self.D = D % p
        basis = ef.kernel_basis(self.D, p)
        self.hom_vectors = np.array(basis, dtype=np.int64).reshape(len(basis), D.shape[1])
        self.hom_free = ef.free_columns(self.D, p)
        cdim = D.shape[0]
        self.ext_proj, self.ext_section = ef.quotient_projection(self.D.T, cdim, p)

    @property
    def hom_dim(self) -> int:
        return self.hom_vectors.shape[0]

    @property
    def ext_dim(self) -> int:
        return self.ext_proj.shape[0]

    # vectors <-> morphisms
    def hom_from_coords(self, coords: Sequence[int]) -> RepMorphism:
        vec = (np.asarray(coords, dtype=np.int64) @ self.hom_vectors) % self.p
        return self.hom_from_vector(vec)

    def hom_from_vector(self, vec: np.ndarray) -> RepMorphism:
        M, N = self.M, self.N
        comps = [vec[self.h_off[i]:self.h_off[i + 1]].reshape(N.dims[i], M.dims[i]) for i in range(M.n)]
        return RepMorphism(M, N, tuple(comps))

    def hom_vector(self, f: RepMorphism) -> np.ndarray:
        return np.concatenate([c.reshape(-1) for c in f.comps]).astype(np.int64)

    def hom_coords(self, f: RepMorphism) -> np.ndarray:
        return self.hom_vector(f)[self.hom_free] % self.p

    def cocycle_from_vector(self, vec: np.ndarray) -> ExtCocycle:
        M, N, n = self.M, self.N, self.M.n
        comps = [vec[self.c_off[i]:self.c_off[i + 1]].reshape(N.dims[(i + 1) % n], M.dims[i]) for i in range(n)]
        return ExtCocycle(M, N, tuple(comps))

    def ext_from_coords(self, coords: Sequence[int]) -> ExtCocycle:
        vec = (self.ext_section @ np.asarray(coords, dtype=np.int64)) % self.p
        return self.cocycle_from_vector(vec)

    def cocycle_vector(self, c: ExtCocycle) -> np.ndarray:
        return np.concatenate([x.reshape(-1) for x in c.comps]).astype(np.int64)

    def ext_coords(self, c: ExtCocycle) -> np.ndarray:
        return (self.ext_proj @ self.cocycle_vector(c)) % self.p

    def hom_basis(self) -> list[RepMorphism]:
        return [self.hom_from_vector(v) for v in self.hom_vectors]

    def ext_basis(self) -> list[ExtCocycle]:
        return [self.cocycle_from_vector(self.ext_section[:, k]) for k in range(self.ext_dim)]

    def is_coboundary(self, c: ExtCocycle) -> bool:
        return not self.ext_coords(c).any()


def hom_basis(M: NilpRep, N: NilpRep) -> list[RepMorphism]:
    return HomExt(M, N).hom_basis()


def ext_basis(M: NilpRep, N: NilpRep) -> list[ExtCocycle]:
    return HomExt(M, N).ext_basis()


@lru_cache(maxsize=None)
def indec_homext(n: int, src: IndecLabel, tgt: IndecLabel, p: int) -> HomExt:
    return HomExt(build_indec(n, src, p), build_indec(n, tgt, p))


def hom_dim(n: int, src: IndecLabel, tgt: IndecLabel, p: int) -> int:
    return indec_homext(n, src, tgt, p).hom_dim


def ext_dim(n: int, src: IndecLabel, tgt: IndecLabel, p: int) -> int:
    return indec_homext(n, src, tgt, p).ext_dim


# ---------------------------------------------------------------- cocycle calculus


def pullback_cocycle(c: ExtCocycle, f: RepMorphism) -> ExtCocycle:
    """Restrict the extension c of M by N along f : M' -> M."""
    p = f.source.p
    return ExtCocycle(f.source, c.target, tuple((ci @ fi) % p for ci, fi in zip(c.comps, f.comps)))


def pushout_cocycle(g: RepMorphism, c: ExtCocycle) -> ExtCocycle:
    """Push the extension c of M by N out along g : N -> N'."""
    n, p = c.source.n, c.source.p
    comps = tuple((g.comps[(i + 1) % n] @ c.comps[i]) % p for i in range(n))
    return ExtCocycle(c.source, g.target, comps)


def extension_middle(c: ExtCocycle) -> tuple[NilpRep, RepMorphism, RepMorphism]:
    """Middle term E of 0 -> N -> E -> M -> 0 with arrows [[n_i, c_i], [0, m_i]]."""
    M, N = c.source, c.target
    n, p = M.n, M.p
    dims = tuple(N.dims[i] + M.dims[i] for i in range(n))
    maps = []
    for i in range(n):
        j = (i + 1) % n
        top = np.concatenate([N.maps[i], c.comps[i]], axis=1)
        bot = np.concatenate([_zeros(M.dims[j], N.dims[i]), M.maps[i]], axis=1)
        maps.append(np.concatenate([top, bot], axis=0))
    E = NilpRep(n, dims, tuple(maps), p)
    iota = RepMorphism(N, E, tuple(
        np.concatenate([np.eye(N.dims[i], dtype=np.int64), _zeros(M.dims[i], N.dims[i])], axis=0) for i in range(n)
    ))
    pi = RepMorphism(E, M, tuple(
        np.concatenate([_zeros(M.dims[i], N.dims[i]), np.eye(M.dims[i], dtype=np.int64)], axis=1) for i in range(n)
    ))
    return E, iota, pi


def kernel_cokernel(f: RepMorphism) -> tuple[NilpRep, RepMorphism, NilpRep, RepMorphism]:
    M, N = f.source, f.target
    n, p = M.n, M.p
    ker_cols = []
    for i in range(n):
        kb = ef.kernel_basis(f.comps[i], p) if M.dims[i] else []
        ker_cols.append(np.array(kb, dtype=np.int64).reshape(len(kb), M.dims[i]).T)
    kdims = tuple(k.shape[1] for k in ker_cols)
    kmaps = []
    for i in range(n):
        j = (i + 1) % n
        img = (M.maps[i] @ ker_cols[i]) % p
        cols = []
        for col in img.T:
            x = ef.solve(ker_cols[j], col, p)
            if x is None:
                raise AssertionError("kernel is not a subrepresentation")
            cols.append(x)
        kmaps.append(np.array(cols, dtype=np.int64).reshape(kdims[i], kdims[j]).T)
    K = NilpRep(n, kdims, tuple(kmaps), p)
    incl = RepMorphism(K, M, tuple(ker_cols))

    projs, sections = [], []
    for i in range(n):
        pr, sec = ef.quotient_projection(f.comps[i].T, N.dims[i], p)
        projs.append(pr)
        sections.append(sec)
    cdims = tuple(pr.shape[0] for pr in projs)
    cmaps = tuple((projs[(i + 1) % n] @ N.maps[i] @ sections[i]) % p for i in range(n))
    C = NilpRep(n, cdims, cmaps, p)
    proj = RepMorphism(N, C, tuple(projs))
    return K, incl, C, proj


# ---------------------------------------------------------------- decomposition


def rank_table(M: NilpRep, max_len: int | None = None) -> np.ndarray:
    """r[s, k] = rank of the path of length k leaving vertex s (r[s, 0] = dim M_s)."""
    t = M.total_dim if max_len is None else max_len
    table = np.zeros((M.n, t + 2), dtype=np.int64)
    for s in range(M.n):
        acc = np.eye(M.dims[s], dtype=np.int64)
        table[s, 0] = M.dims[s]
        for k in range(1, t + 2):
            acc = (M.maps[(s + k - 1) % M.n] @ acc) % M.p
            table[s, k] = ef.rank(acc, M.p)
            if table[s, k] == 0:
                break
    return table


def decompose(M: NilpRep) -> list[IndecLabel]:
    """Krull-Schmidt decomposition read off from path ranks.

    G(t, l) = r(t, l-1) - r(t-1, l) counts summands with top at t and length
    at least l; the second difference in l gives exact multiplicities.
    """
    n, t = M.n, M.total_dim
    r = rank_table(M)

    def G(top: int, length: int) -> int:
        if length > t + 1:
            return 0
        return int(r[top, length - 1] - r[(top - 1) % n, length])

    out: list[IndecLabel] = []
    for top in range(n):
        for length in range(1, t + 1):
            mult = G(top, length) - G(top, length + 1)
            if mult < 0:
                raise AssertionError("negative multiplicity; rank table inconsistent")
            socle = (top + length - 1) % n + 1
            out.extend([IndecLabel(socle, length)] * mult)
    if sum(lab.length for lab in out) != t:
        raise AssertionError("decomposition does not account for every dimension")
    return sorted(out)


def decompose_counter(M: NilpRep) -> Counter:
    return Counter(decompose(M))


# ---------------------------------------------------------------- oracles and helpers


def endo_scalar(n: int, label: IndecLabel, f: RepMorphism) -> int:
    """Scalar part of an endomorphism of build_indec(label): its action on the generator."""
    v, pos = top_position(n, label)
    return int(f.comps[v][pos, pos])


def all_homs(space: HomExt) -> np.ndarray:
    """Every element of Hom(M, N) as flattened vectors, rows in coefficient order."""
    coeffs = ef.all_coefficient_vectors(space.hom_dim, space.p)
    return (coeffs @ space.hom_vectors) % space.p


def isomorphic_bruteforce(M: NilpRep, N: NilpRep) -> bool:
    """Search Hom(M, N) exhaustively for a vertexwise invertible element."""
    if M.dims != N.dims:
        return False
    space = HomExt(M, N)
    vecs = all_homs(space)
    ok = np.ones(vecs.shape[0], dtype=bool)
    for i in range(M.n):
        d = M.dims[i]
        if d == 0:
            continue
        blocks = vecs[:, space.h_off[i]:space.h_off[i + 1]].reshape(-1, d, d)
        ok &= ef.rank_batch(blocks, M.p) == d
        if not ok.any():
            return False
    return bool(ok.any())


def all_nilpotent_reps(n: int, total: int, p: int) -> Iterable[NilpRep]:
    """Every nilpotent representation (as matrices, not up to iso) of total dimension ``total``."""
    for dims in itertools.product(range(total + 1), repeat=n):
        if sum(dims) != total:
            continue
        shapes = [(dims[(i + 1) % n], dims[i]) for i in range(n)]
        sizes = [a * b for a, b in shapes]
        for entries in itertools.product(range(p), repeat=sum(sizes)):
            maps, off = [], 0
            for (a, b), s in zip(shapes, sizes):
                maps.append(np.array(entries[off:off + s], dtype=np.int64).reshape(a, b))
                off += s
            try:
                yield NilpRep(n, dims, tuple(maps), p)
            except ValueError:
                continue


def random_invertible(d: int, p: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        g = rng.integers(0, p, size=(d, d))
        if ef.rank(g, p) == d:
            return g.astype(np.int64)


@lru_cache(maxsize=None)
def radical_basis(n: int, label: IndecLabel, p: int) -> tuple[RepMorphism, ...]:
    """Basis of the radical of End(build_indec(label)): endomorphisms with zero scalar part."""
    space = indec_homext(n, label, label, p)
    basis = space.hom_basis()
    eps = [endo_scalar(n, label, b) for b in basis]
    k0 = next(k for k, e in enumerate(eps) if e)
    inv0 = pow(eps[k0], -1, p)
    out = []
    for k, b in enumerate(basis):
        if k == k0:
            continue
        t = (eps[k] * inv0) % p
        comps = tuple((x - t * y) % p for x, y in zip(b.comps, basis[k0].comps))
        out.append(RepMorphism(b.source, b.target, comps))
    return tuple(out)
