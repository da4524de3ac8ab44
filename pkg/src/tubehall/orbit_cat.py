"""
The two 2-periodic orbit categories built from tubes.

``CLUSTER``: the cluster tube D^b(T_2)/tau^{-1} Sigma.  Objects are the
T_2-modules <m> (m != 0, sign = socle vertex) and

    C(X, L) = Hom(X, L)  (+)  Ext^1(X, tau^{-1} L).

``ROOT``: the root category D^b(T_1)/Sigma^2.  Objects are <n> (the module
of length n) and <-n> = Sigma<n>; morphism spaces are pure: Hom of modules
when the two objects have equal shift, Ext^1 of modules otherwise.

Morphisms are stored as coordinate vectors ``[degree-0 coords | degree-1
coords]`` in a :class:`HomSpace`.  Composition follows

    (g0 + g1)(f0 + f1) = g0 f0 + (g1 f0 + tau^{-1}(g0) f1),

where g1 f0 is a pullback and tau^{-1}(g0) f1 a pushout of cocycles, and the
product of two degree-1 parts vanishes.

Cone convention: for f = f0 + g in the cluster tube let Z be the middle
term of the extension of ker(f0) by cok(tau^{-1} f0) induced from g.  Then
Sigma Z is the cone of f, and since Sigma = tau on objects of the cluster
tube, :func:`cone` returns the labels of Z with their signs flipped.  With
this convention every triangle X -> L -> Y -> Sigma X satisfies
[L] = [X] + [Y] in the Grothendieck group.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import exactfield as ef
from . import tube_rep as tr
from .tube_rep import IndecLabel

DEFAULT_MAX_LENGTH = 12


class Variant(str, Enum):
    CLUSTER = "cluster"
    ROOT = "root"

    @property
    def n(self) -> int:
        return 2 if self is Variant.CLUSTER else 1


def label_key(m: int) -> tuple[int, int]:
    """Canonical order of signed labels: by length, then positive before negative."""
    return (abs(m), 0 if m > 0 else 1)


def sort_labels(labels) -> tuple[int, ...]:
    return tuple(sorted(labels, key=label_key))


def suspend_label(m: int) -> int:
    """Sigma<m> = <-m> in both variants."""
    return -m


def module_label(variant: Variant, m: int) -> IndecLabel:
    if m == 0:
        raise ValueError("<0> is not an object")
    if variant is Variant.CLUSTER:
        return IndecLabel.from_signed(m)
    return IndecLabel(1, abs(m))


def shift_of(variant: Variant, m: int) -> int:
    """Degree of the module representative (always 0 in the cluster tube)."""
    return 0 if variant is Variant.CLUSTER or m > 0 else 1


def signed_from_module(variant: Variant, label: IndecLabel, shift: int) -> int:
    if variant is Variant.CLUSTER:
        m = label.to_signed()
        return m if shift % 2 == 0 else -m
    return label.length if shift % 2 == 0 else -label.length


def _check_bound(m: int, bound: int) -> None:
    if abs(m) > bound:
        raise ValueError(f"label {m} exceeds the configured length bound {bound}")


@dataclass(frozen=True, eq=False)
class OrbitMorphism:
    """f0 (module map or None) plus f1 (cocycle or None) between two objects."""

    variant: Variant
    source: int
    target: int
    f0: tr.RepMorphism | None
    f1: tr.ExtCocycle | None


class HomSpace:
    """Coordinates on the morphism space X -> L of one orbit category."""

    def __init__(self, variant: Variant, x: int, l: int, p: int, bound: int = DEFAULT_MAX_LENGTH):
        _check_bound(x, bound)
        _check_bound(l, bound)
        self.variant, self.x, self.l, self.p = variant, x, l, p
        n = variant.n
        self.n = n
        self.X = module_label(variant, x)
        self.L = module_label(variant, l)
        if variant is Variant.CLUSTER:
            self.h0 = tr.indec_homext(n, self.X, self.L, p)
            self.h1 = tr.indec_homext(n, self.X, tr.ar_translate_inv(self.L, n), p)
            self.dim0 = self.h0.hom_dim
            self.dim1 = self.h1.ext_dim
        else:
            space = tr.indec_homext(n, self.X, self.L, p)
            if shift_of(variant, x) == shift_of(variant, l):
                self.h0, self.h1 = space, None
                self.dim0, self.dim1 = space.hom_dim, 0
            else:
                self.h0, self.h1 = None, space
                self.dim0, self.dim1 = 0, space.ext_dim
        self.dim = self.dim0 + self.dim1

    # coordinates <-> morphisms
    def element(self, coords) -> OrbitMorphism:
        c = np.asarray(coords, dtype=np.int64) % self.p
        f0 = self.h0.hom_from_coords(c[:self.dim0]) if self.h0 is not None else None
        f1 = self.h1.ext_from_coords(c[self.dim0:]) if self.h1 is not None else None
        return OrbitMorphism(self.variant, self.x, self.l, f0, f1)

    def coords(self, f: OrbitMorphism) -> np.ndarray:
        parts = []
        if self.h0 is not None:
            parts.append(self.h0.hom_coords(f.f0) if f.f0 is not None else np.zeros(self.dim0, dtype=np.int64))
        if self.h1 is not None:
            parts.append(self.h1.ext_coords(f.f1) if f.f1 is not None else np.zeros(self.dim1, dtype=np.int64))
        if not parts:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate(parts) % self.p

    def basis(self) -> list[OrbitMorphism]:
        eye = np.eye(self.dim, dtype=np.int64)
        return [self.element(eye[k]) for k in range(self.dim)]

    def zero(self) -> OrbitMorphism:
        return self.element(np.zeros(self.dim, dtype=np.int64))

    def degree0_mask(self) -> np.ndarray:
        mask = np.zeros(self.dim, dtype=bool)
        mask[:self.dim0] = True
        return mask


@lru_cache(maxsize=None)
def hom_space(variant: Variant, x: int, l: int, p: int) -> HomSpace:
    return HomSpace(variant, x, l, p)


def hom_dim(variant: Variant, x: int, l: int, p: int = 2) -> int:
    return hom_space(variant, x, l, p).dim


def _add_cocycles(a: tr.ExtCocycle | None, b: tr.ExtCocycle | None) -> tr.ExtCocycle | None:
    if a is None:
        return b
    if b is None:
        return a
    p = a.source.p
    return tr.ExtCocycle(a.source, a.target, tuple((u + v) % p for u, v in zip(a.comps, b.comps)))


def compose(g: OrbitMorphism, f: OrbitMorphism, p: int) -> OrbitMorphism:
    """g o f for f : X -> Y and g : Y -> Z."""
    if f.target != g.source or f.variant is not g.variant:
        raise ValueError("morphisms are not composable")
    variant = f.variant
    out_space = hom_space(variant, f.source, g.target, p)
    f0, f1, g0, g1 = f.f0, f.f1, g.f0, g.f1
    h0 = tr.compose(g0, f0) if (f0 is not None and g0 is not None) else None
    h1 = None
    if variant is Variant.CLUSTER:
        if g1 is not None and f0 is not None:
            h1 = _add_cocycles(h1, tr.pullback_cocycle(g1, f0))
        if g0 is not None and f1 is not None:
            h1 = _add_cocycles(h1, tr.pushout_cocycle(tr.tau_inv_morphism(g0), f1))
    else:
        if g1 is not None and f0 is not None:
            h1 = tr.pullback_cocycle(g1, f0)
        elif g0 is not None and f1 is not None:
            h1 = tr.pushout_cocycle(g0, f1)
    if out_space.h0 is None:
        h0 = None
    if out_space.h1 is None:
        h1 = None
    return OrbitMorphism(variant, f.source, g.target, h0, h1)


def identity(variant: Variant, x: int, p: int) -> OrbitMorphism:
    space = hom_space(variant, x, x, p)
    M = tr.build_indec(variant.n, space.X, p)
    return OrbitMorphism(variant, x, x, tr.identity(M), space.zero().f1)


def radical_basis(variant: Variant, x: int, p: int) -> list[OrbitMorphism]:
    """Radical of End(X): non-invertible degree-0 part plus every degree-1 endomorphism."""
    space = hom_space(variant, x, x, p)
    zero1 = space.zero().f1
    zero0 = space.zero().f0
    out = [OrbitMorphism(variant, x, x, r, zero1) for r in tr.radical_basis(variant.n, space.X, p)]
    if space.h1 is not None:
        out += [OrbitMorphism(variant, x, x, zero0, c) for c in space.h1.ext_basis()]
    return out


def scalar_part(f: OrbitMorphism) -> int:
    """Scalar of an endomorphism modulo the radical."""
    if f.f0 is None:
        return 0
    label = module_label(f.variant, f.source)
    return tr.endo_scalar(f.variant.n, label, f.f0)


def radical_actions(space: HomSpace) -> list[np.ndarray]:
    """Matrices of phi -> phi o r on coordinates of X -> L, r over rad End(X)."""
    rad = radical_basis(space.variant, space.x, space.p)
    basis = space.basis()
    mats = []
    for r in rad:
        cols = [space.coords(compose(b, r, space.p)) for b in basis]
        mats.append(np.array(cols, dtype=np.int64).reshape(len(basis), space.dim).T % space.p)
    return mats


def aut_elements(variant: Variant, x: int, p: int) -> Iterator[OrbitMorphism]:
    """Every unit of End(X): elements whose scalar part is nonzero."""
    space = hom_space(variant, x, x, p)
    for v in ef.all_coefficient_vectors(space.dim, p):
        f = space.element(v)
        if scalar_part(f) % p:
            yield f


# ---------------------------------------------------------------- cones


def cone(f: OrbitMorphism, p: int) -> tuple[int, ...]:
    """Signed labels of the indecomposable summands of the cone of f, sorted."""
    space = hom_space(f.variant, f.source, f.target, p)
    n = f.variant.n
    if f.variant is Variant.CLUSTER:
        X = tr.build_indec(n, space.X, p)
        f0 = f.f0 if f.f0 is not None else tr.zero_morphism(X, tr.build_indec(n, space.L, p))
        K, incl, _, _ = tr.kernel_cokernel(f0)
        _, _, Q, proj = tr.kernel_cokernel(tr.tau_inv_morphism(f0))
        g = f.f1 if f.f1 is not None else space.zero().f1
        z = tr.pushout_cocycle(proj, tr.pullback_cocycle(g, incl))
        Z, _, _ = tr.extension_middle(z)
        return sort_labels(-lab.to_signed() for lab in tr.decompose(Z))
    sx = shift_of(f.variant, f.source)
    if f.f0 is not None:
        K, _, C, _ = tr.kernel_cokernel(f.f0)
        out = [signed_from_module(f.variant, lab, sx) for lab in tr.decompose(C)]
        out += [signed_from_module(f.variant, lab, sx + 1) for lab in tr.decompose(K)]
        return sort_labels(out)
    E, _, _ = tr.extension_middle(f.f1)
    return sort_labels(signed_from_module(f.variant, lab, sx + 1) for lab in tr.decompose(E))


def cone_of_coords(space: HomSpace, coords) -> tuple[int, ...]:
    return cone(space.element(coords), space.p)


def z_term(f: OrbitMorphism, p: int) -> tuple[int, ...]:
    """Labels of Z (before the final suspension) for a cluster-tube morphism."""
    if f.variant is not Variant.CLUSTER:
        raise ValueError("the Z term is only defined for the cluster tube")
    return sort_labels(-m for m in cone(f, p))


# ---------------------------------------------------------------- orbit tables


@dataclass(frozen=True)
class OrbitRecord:
    cone: tuple[int, ...]
    size: int
    cell: int  # 1: meets the pure degree-0 part, 3: degree-0 part zero, 2: otherwise
    rep: tuple[int, ...]


@lru_cache(maxsize=None)
def orbit_records(variant: Variant, x: int, l: int, p: int) -> tuple[OrbitRecord, ...]:
    """One record per Aut(X)-orbit of morphisms X -> L.

    Orbits are found with the local-ring key of :func:`exactfield.orbit_keys`;
    the cone is computed once per orbit on its first member.
    """
    space = hom_space(variant, x, l, p)
    table = ef.enumerate_orbits(space.dim, radical_actions(space), p)
    vecs = table.vectors
    pure0 = ~vecs[:, space.dim0:].any(axis=1)
    meets_pure0 = np.zeros(table.count, dtype=bool)
    np.logical_or.at(meets_pure0, table.labels, pure0)
    out = []
    for g in range(table.count):
        v = vecs[table.first[g]]
        if meets_pure0[g]:
            cell = 1
        elif not v[:space.dim0].any():
            cell = 3
        else:
            cell = 2
        out.append(OrbitRecord(cone_of_coords(space, v), int(table.sizes[g]), cell, tuple(int(t) for t in v)))
    return tuple(out)


def orbits_bruteforce(variant: Variant, x: int, l: int, p: int) -> list[frozenset]:
    """Aut(X)-orbits computed by applying every automorphism; the minimum member names each orbit."""
    space = hom_space(variant, x, l, p)
    auts = list(aut_elements(variant, x, p))
    seen: dict[tuple, frozenset] = {}
    for v in ef.all_coefficient_vectors(space.dim, p):
        key = tuple(int(t) for t in v)
        if key in seen:
            continue
        f = space.element(v)
        orbit = frozenset(tuple(int(t) for t in space.coords(compose(f, a, p))) for a in auts)
        for member in orbit:
            seen[member] = orbit
    return sorted(set(seen.values()), key=min)


def orbit_partition(variant: Variant, x: int, l: int, y: int, q: int) -> tuple[int, int, int]:
    """(|S1|, |S2|, |S3|) for orbits of maps X -> L with cone <y>."""
    counts = [0, 0, 0]
    for rec in orbit_records(variant, x, l, q):
        if rec.cone == (y,):
            counts[rec.cell - 1] += 1
    return tuple(counts)


def cone_counts(variant: Variant, x: int, l: int, q: int) -> Counter:
    return Counter(rec.cone for rec in orbit_records(variant, x, l, q))


def example_morphism(p: int) -> OrbitMorphism:
    """The map <4> -> <3> of the cluster tube: f0 factors through <2>, g is the class of <-7>.

    f0 is the composite <4> ->> <2> >-> <3>; g is an extension
    0 -> <-3> -> E -> <4> -> 0 with E indecomposable of length 7.
    """
    space = hom_space(Variant.CLUSTER, 4, 3, p)
    f0 = None
    for v in ef.all_coefficient_vectors(space.h0.hom_dim, p):
        h = space.h0.hom_from_coords(v)
        K, _, C, _ = tr.kernel_cokernel(h)
        if tr.decompose(K) == [IndecLabel.from_signed(2)] and tr.decompose(C) == [IndecLabel.from_signed(1)]:
            f0 = h
            break
    g = None
    for v in ef.all_coefficient_vectors(space.h1.ext_dim, p):
        c = space.h1.ext_from_coords(v)
        E, _, _ = tr.extension_middle(c)
        if tr.decompose(E) == [IndecLabel.from_signed(-7)]:
            g = c
            break
    if f0 is None or g is None:
        raise AssertionError("the example morphism does not exist")
    return OrbitMorphism(Variant.CLUSTER, 4, 3, f0, g)
