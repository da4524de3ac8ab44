"""
Stalk-complex model of the bounded derived category of a tube.

The tube is hereditary, so every object is a finite sum of shifted modules
and Hom(Sigma^s A, Sigma^t B) is Hom(A, B) for t = s, Ext^1(A, B) for
t = s + 1 and zero otherwise.  Cones:

* a module map f : A -> B sitting in degree s has cone Sigma^s(cok f) plus
  Sigma^{s+1}(ker f);
* an extension class A -> Sigma B with middle term E has cone Sigma^{s+1} E.

Hall-type counts |V(X, Y; Z)| are obtained by enumerating Hom(X, Z),
grouping it into Aut(X)-orbits and computing one cone per orbit.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from . import exactfield as ef
from . import tube_rep as tr
from .tube_rep import IndecLabel

MAX_LENGTH = 12


@dataclass(frozen=True)
class StalkObject:
    """A finite direct sum of shifted indecomposable modules, kept sorted."""

    summands: tuple[tuple[int, IndecLabel], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "summands", tuple(sorted(self.summands, key=lambda s: (s[0], s[1].sort_key()))))

    @staticmethod
    def of(label: IndecLabel, shift: int = 0) -> "StalkObject":
        return StalkObject(((shift, label),))

    @staticmethod
    def zero() -> "StalkObject":
        return StalkObject(())

    def suspend(self, k: int = 1) -> "StalkObject":
        return StalkObject(tuple((s + k, lab) for s, lab in self.summands))

    def __add__(self, other: "StalkObject") -> "StalkObject":
        return StalkObject(self.summands + other.summands)

    def is_indecomposable(self) -> bool:
        return len(self.summands) == 1

    def single(self) -> tuple[int, IndecLabel]:
        if len(self.summands) != 1:
            raise ValueError("object is not indecomposable")
        return self.summands[0]


def _check_length(label: IndecLabel, bound: int = MAX_LENGTH) -> None:
    if label.length > bound:
        raise ValueError(f"length {label.length} exceeds the configured bound {bound}")


def hom_dim_derived(X: StalkObject, Y: StalkObject, n: int, p: int = 2) -> int:
    total = 0
    for s, a in X.summands:
        for t, b in Y.summands:
            if t == s:
                total += tr.hom_dim(n, a, b, p)
            elif t == s + 1:
                total += tr.ext_dim(n, a, b, p)
    return total


def shifted_modules(labels: Iterable[IndecLabel], shift: int) -> StalkObject:
    return StalkObject(tuple((shift, lab) for lab in labels))


def cone_of_map(f: tr.RepMorphism, shift: int) -> StalkObject:
    """Cone of a module map placed in degree ``shift``."""
    K, _, C, _ = tr.kernel_cokernel(f)
    return shifted_modules(tr.decompose(C), shift) + shifted_modules(tr.decompose(K), shift + 1)


def cone_of_extension(c: tr.ExtCocycle, shift: int) -> StalkObject:
    """Cone of the morphism A -> Sigma B named by the cocycle c, A in degree ``shift``."""
    E, _, _ = tr.extension_middle(c)
    return shifted_modules(tr.decompose(E), shift + 1)


class DerivedHom:
    """Hom_D(Sigma^s A, Sigma^t B) for indecomposable modules A, B, with coordinates."""

    def __init__(self, n: int, src: tuple[int, IndecLabel], tgt: tuple[int, IndecLabel], p: int):
        (s, a), (t, b) = src, tgt
        _check_length(a)
        _check_length(b)
        self.n, self.p, self.src, self.tgt = n, p, src, tgt
        self.rel = t - s
        self.space = tr.indec_homext(n, a, b, p)
        if self.rel == 0:
            self.dim = self.space.hom_dim
        elif self.rel == 1:
            self.dim = self.space.ext_dim
        else:
            self.dim = 0

    def element(self, coords: np.ndarray):
        if self.rel == 0:
            return self.space.hom_from_coords(coords)
        if self.rel == 1:
            return self.space.ext_from_coords(coords)
        return None

    def coords(self, elem) -> np.ndarray:
        if self.rel == 0:
            return self.space.hom_coords(elem)
        return self.space.ext_coords(elem)

    def cone(self, coords: np.ndarray) -> StalkObject:
        s, a = self.src
        t, b = self.tgt
        if self.rel == 0:
            return cone_of_map(self.element(coords), s)
        if self.rel == 1:
            return cone_of_extension(self.element(coords), s)
        # the zero map between objects with no morphisms: split cone
        return StalkObject.of(b, t) + StalkObject.of(a, s + 1)

    def radical_actions(self) -> list[np.ndarray]:
        """Matrices of phi -> phi o r on coordinates, r running over rad End(A)."""
        if self.dim == 0:
            return []
        _, a = self.src
        eye = np.eye(self.dim, dtype=np.int64)
        mats = []
        for r in tr.radical_basis(self.n, a, self.p):
            cols = []
            for k in range(self.dim):
                e = self.element(eye[k])
                if self.rel == 0:
                    cols.append(self.coords(tr.compose(e, r)))
                else:
                    cols.append(self.coords(tr.pullback_cocycle(e, r)))
            mats.append(np.array(cols, dtype=np.int64).T % self.p)
        return mats


@lru_cache(maxsize=None)
def orbit_cones(n: int, src: tuple[int, IndecLabel], tgt: tuple[int, IndecLabel], p: int) -> tuple[tuple[StalkObject, int], ...]:
    """One (cone, orbit size) pair per Aut(src)-orbit of Hom_D(src, tgt)."""
    h = DerivedHom(n, src, tgt, p)
    table = ef.enumerate_orbits(h.dim, h.radical_actions(), p)
    reps = table.representatives()
    return tuple((h.cone(reps[g]), int(table.sizes[g])) for g in range(table.count))


def _as_pair(obj) -> tuple[int, IndecLabel]:
    if isinstance(obj, StalkObject):
        return obj.single()
    if isinstance(obj, IndecLabel):
        return (0, obj)
    return obj


def _normalize(*objs: tuple[int, IndecLabel]) -> list[tuple[int, IndecLabel]]:
    """Shift so the first object sits in degree 0 (counts only see relative shifts)."""
    base = objs[0][0]
    return [(s - base, lab) for s, lab in objs]


def v_number(X, Y, Z, q: int, n: int = 2) -> int:
    """|V(X, Y; Z)|: Aut(X)-orbits of maps X -> Z whose cone is isomorphic to Y."""
    x, y, z = _normalize(_as_pair(X), _as_pair(Y), _as_pair(Z))
    target = StalkObject((y,))
    return sum(1 for cone, _ in orbit_cones(n, x, z, q) if cone == target)


def triangle_exists(X, Y, Z, q: int, n: int = 2) -> bool:
    """Whether some morphism X -> Z has cone Y, by scanning every morphism."""
    x, y, z = _normalize(_as_pair(X), _as_pair(Y), _as_pair(Z))
    h = DerivedHom(n, x, z, q)
    target = StalkObject((y,))
    return any(h.cone(v) == target for v in ef.all_coefficient_vectors(h.dim, q))


def aut_order(X, q: int, n: int = 2) -> int:
    _, a = _as_pair(X)
    return (q - 1) * q ** len(tr.radical_basis(n, a, q))


def hom_order(X, Y, q: int, n: int = 2) -> int:
    x, y = _as_pair(X), _as_pair(Y)
    return q ** hom_dim_derived(StalkObject((x,)), StalkObject((y,)), n, q)


@dataclass(frozen=True)
class Rotations:
    v: int
    v_rot2: int
    v_rot3: int
    aut_x: int
    aut_y: int
    aut_z: int
    hom_zx: int
    hom_yx: int
    hom_yz: int

    def identity2_holds(self) -> bool:
        return self.v_rot2 * self.aut_z * self.hom_yx == self.v * self.aut_y * self.hom_zx ** 2

    def identity3_holds(self) -> bool:
        return self.v_rot3 * self.aut_z * self.hom_yx == self.v * self.aut_x * self.hom_yz ** 2

    # Orbit-stabiliser versions.  For an epimorphism g : Z -> Y with kernel X
    # the stabiliser of g in Aut(Z) is 1 + Hom(Z, X); for a nonsplit class in
    # Ext^1(Y, X) with middle term Z the stabiliser in Aut(Y) has order
    # |Hom(Y, Z)| / |Hom(Y, X)|.  Counting orbits then gives the two
    # relations below, which the brute-force counts satisfy on every triple.
    def stabilizer_identity2_holds(self) -> bool:
        return self.v_rot2 * self.aut_z == self.v * self.aut_y * self.hom_zx

    def stabilizer_identity3_holds(self) -> bool:
        return self.v_rot3 * self.aut_z == self.v * self.aut_x * self.hom_yz


def v_rotations(X, Y, Z, q: int, n: int = 2) -> Rotations:
    """Three independently counted |V| numbers plus the cardinalities relating them."""
    x, y, z = _as_pair(X), _as_pair(Y), _as_pair(Z)
    sx = (x[0] + 1, x[1])
    y_down = (y[0] - 1, y[1])
    return Rotations(
        v=v_number(x, y, z, q, n),
        v_rot2=v_number(z, sx, y, q, n),
        v_rot3=v_number(y_down, z, x, q, n),
        aut_x=aut_order(x, q, n),
        aut_y=aut_order(y, q, n),
        aut_z=aut_order(z, q, n),
        hom_zx=hom_order(z, x, q, n),
        hom_yx=hom_order(y, x, q, n),
        hom_yz=hom_order(y, z, q, n),
    )


def cone_counter(n: int, src, tgt, q: int) -> Counter:
    """Number of orbits per cone for maps src -> tgt."""
    s, t = _normalize(_as_pair(src), _as_pair(tgt))
    return Counter(cone for cone, _ in orbit_cones(n, s, t, q))
