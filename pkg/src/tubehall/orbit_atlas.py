"""
Classification arithmetic for the orbit categories of w-spherical objects.

Given (w, n) and nonzero scalars a, b, the derived data are

    d = 1 - w,  m = gcd(n, |d|)  (m = n when d = 0),
    n' = n / m,  d' = d / m,  c = d'^{-1} mod n'  (c = 0 when n' = 1).

Two graded algebras k<s, r, r^{-1}>/(s^2, s r = lambda r s) are attached to
the two sides of the equivalence, and the equivalence criterion is
a = ((-1)^d b)^{n'}.  Scalars live in the rationals or in F_p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class ScalarField:
    """The rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    @staticmethod
    def parse(spec: str) -> "ScalarField":
        spec = spec.strip().lower()
        if spec in ("q", "rationals"):
            return ScalarField(None)
        if spec.startswith("p") and spec[1:].isdigit():
            from .exactfield import FieldSpec

            return ScalarField(FieldSpec(int(spec[1:])).modulus)
        raise ValueError(f"unknown field {spec!r}; use 'q' or 'pP' with P prime")

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F_{self.p}"

    def elem(self, x) -> Scalar:
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ValueError(f"{x} is not defined in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def nonzero(self, x) -> Scalar:
        v = self.elem(x)
        if v == 0:
            raise ValueError("scalar must be nonzero")
        return v

    def mul(self, x: Scalar, y: Scalar) -> Scalar:
        return self.elem(x * y)

    def power(self, x: Scalar, k: int) -> Scalar:
        if self.p is None:
            return Fraction(x) ** k
        return pow(int(x), k, self.p) if k >= 0 else pow(pow(int(x), -1, self.p), -k, self.p)

    def sign(self, k: int) -> Scalar:
        """(-1)^k in the field."""
        return self.elem(-1 if k % 2 else 1)

    def inv(self, x: Scalar) -> Scalar:
        return self.power(x, -1)

    def elements(self) -> list[Scalar]:
        if self.p is None:
            raise ValueError("the rationals cannot be enumerated")
        return list(range(self.p))

    def to_json(self, x: Scalar):
        if isinstance(x, Fraction):
            return int(x) if x.denominator == 1 else str(x)
        return int(x)


QQ = ScalarField(None)


@dataclass(frozen=True)
class OrbitParams:
    w: int
    n: int
    a: Scalar
    b: Scalar
    field: ScalarField = QQ

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "a", self.field.nonzero(self.a))
        object.__setattr__(self, "b", self.field.nonzero(self.b))

    @property
    def d(self) -> int:
        return 1 - self.w

    @property
    def m(self) -> int:
        return self.n if self.d == 0 else math.gcd(self.n, abs(self.d))

    @property
    def n_prime(self) -> int:
        return self.n // self.m

    @property
    def d_prime(self) -> int:
        return self.d // self.m

    @property
    def c(self) -> int:
        if self.n_prime == 1:
            return 0
        return pow(self.d_prime, -1, self.n_prime)

    def to_json(self) -> dict:
        return {"d": self.d, "m": self.m, "n_prime": self.n_prime, "d_prime": self.d_prime, "c": self.c}


def derive_params(w: int, n: int, a=1, b=1, field: ScalarField = QQ) -> OrbitParams:
    return OrbitParams(w, n, a, b, field)


@dataclass(frozen=True)
class GradedPresentation:
    """k<s, r, r^{-1}> / (s^2, s r = lam r s) with |s| = deg_s, |r| = deg_r."""

    deg_s: int
    deg_r: int
    lam: Scalar

    def __post_init__(self) -> None:
        if self.deg_r < 1:
            raise ValueError("deg_r must be positive")

    def to_json(self, field: ScalarField = QQ) -> dict:
        return {"deg_s": self.deg_s, "deg_r": self.deg_r, "lambda": field.to_json(self.lam)}


def lambda_tilde(w: int, a, n: int, field: ScalarField = QQ) -> GradedPresentation:
    return GradedPresentation(w, n, field.mul(field.sign(n * w), field.nonzero(a)))


def lambda_tilde_prime(n_prime: int, b, m: int, d_prime: int, field: ScalarField = QQ) -> GradedPresentation:
    lam = field.mul(field.sign(n_prime * m), field.power(field.nonzero(b), n_prime))
    return GradedPresentation(1 - m * d_prime, n_prime * m, lam)


def presentations_isomorphic(P: GradedPresentation, Q: GradedPresentation, field: ScalarField = QQ) -> bool:
    """Degree-preserving generator changes only rescale s and r, which fixes lambda."""
    return P.deg_s == Q.deg_s and P.deg_r == Q.deg_r and field.elem(P.lam) == field.elem(Q.lam)


def presentations(params: OrbitParams) -> tuple[GradedPresentation, GradedPresentation]:
    f = params.field
    return (
        lambda_tilde(params.w, params.a, params.n, f),
        lambda_tilde_prime(params.n_prime, params.b, params.m, params.d_prime, f),
    )


def equivalent(params: OrbitParams) -> bool:
    f = params.field
    rhs = f.power(f.mul(f.sign(params.d), params.b), params.n_prime)
    return f.elem(params.a) == rhs


def parity_identity(w: int, n: int) -> bool:
    """n'm + nw = d n' (mod 2)."""
    P = derive_params(w, n)
    return (P.n_prime * P.m + n * w - P.d * P.n_prime) % 2 == 0


def ar_shape(params: OrbitParams) -> tuple[int, int]:
    """(number of tubes, rank of each tube)."""
    if params.w == 1:
        return (params.n, 1)
    return (params.m, params.n_prime)


# ---------------------------------------------------------------- Picard groups


@dataclass(frozen=True)
class PicardElementS:
    """An element (a, k) of k^x x Z."""

    scalar: Scalar
    shift: int
    field: ScalarField = QQ

    def __post_init__(self) -> None:
        object.__setattr__(self, "scalar", self.field.nonzero(self.scalar))


@dataclass(frozen=True)
class PicardElementT:
    """An element (a, r, k) of k^x x Z/n x Z."""

    scalar: Scalar
    rotation: int
    shift: int
    n: int
    field: ScalarField = QQ

    def __post_init__(self) -> None:
        object.__setattr__(self, "scalar", self.field.nonzero(self.scalar))
        object.__setattr__(self, "rotation", self.rotation % self.n)


def picard_compose_s(x: PicardElementS, y: PicardElementS) -> PicardElementS:
    if x.field != y.field:
        raise ValueError("elements live over different fields")
    return PicardElementS(x.field.mul(x.scalar, y.scalar), x.shift + y.shift, x.field)


def picard_compose_t(x: PicardElementT, y: PicardElementT) -> PicardElementT:
    if x.field != y.field or x.n != y.n:
        raise ValueError("elements live in different groups")
    return PicardElementT(x.field.mul(x.scalar, y.scalar), x.rotation + y.rotation, x.shift + y.shift, x.n, x.field)


def picard_identity_s(field: ScalarField = QQ) -> PicardElementS:
    return PicardElementS(1, 0, field)


def picard_identity_t(n: int, field: ScalarField = QQ) -> PicardElementT:
    return PicardElementT(1, 0, 0, n, field)


def picard_inverse_s(x: PicardElementS) -> PicardElementS:
    return PicardElementS(x.field.inv(x.scalar), -x.shift, x.field)


def picard_inverse_t(x: PicardElementT) -> PicardElementT:
    return PicardElementT(x.field.inv(x.scalar), -x.rotation, -x.shift, x.n, x.field)


def suspension_s(field: ScalarField = QQ) -> PicardElementS:
    """Image of the suspension functor."""
    return PicardElementS(1, 1, field)


def ar_translation_t(n: int, field: ScalarField = QQ) -> PicardElementT:
    """Image of the AR translation of the tube of rank n."""
    return PicardElementT(1, 1, 0, n, field)


def suspension_t(n: int, field: ScalarField = QQ) -> PicardElementT:
    return PicardElementT(1, 0, 1, n, field)


# ---------------------------------------------------------------- report


def classify(w: int, n: int, a, b, field: ScalarField = QQ) -> dict:
    P = derive_params(w, n, a, b, field)
    lt, ltp = presentations(P)
    tubes, rank = ar_shape(P)
    return {
        **P.to_json(),
        "field": field.name,
        "equivalent": equivalent(P),
        "presentation": lt.to_json(field),
        "presentation_prime": ltp.to_json(field),
        "presentations_isomorphic": presentations_isomorphic(lt, ltp, field),
        "ar_shape": {"tubes": tubes, "rank": rank},
    }


def ar_quiver_dot(w: int, n: int, height: int) -> str:
    """DOT rendering of the AR quiver: ar_shape tubes, each truncated at ``height``.

    A vertex "t:s/l" is the indecomposable of socle s and length l in tube t.
    Solid edges are irreducible maps, dashed edges point from X to tau X.
    """
    tubes, rank = ar_shape(derive_params(w, n))
    lines = ["digraph ar_quiver {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for t in range(tubes):
        lines.append(f"  subgraph cluster_{t} {{")
        lines.append(f'    label="tube {t} (rank {rank})";')
        for length in range(1, height + 1):
            for s in range(1, rank + 1):
                lines.append(f'    "{t}:{s}/{length}" [label="({s},{length})"];')
        for length in range(1, height + 1):
            for s in range(1, rank + 1):
                v = f'"{t}:{s}/{length}"'
                if length < height:
                    lines.append(f'    {v} -> "{t}:{s}/{length + 1}";')
                if length > 1:
                    # quotient by the socle: the new socle sits one vertex back
                    s2 = (s - 2) % rank + 1
                    lines.append(f'    {v} -> "{t}:{s2}/{length - 1}";')
                tau = s % rank + 1
                lines.append(f'    {v} -> "{t}:{tau}/{length}" [style=dashed, constraint=false];')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
