"""
Ringel-Hall Lie algebras of the cluster tube and of the root category.

Basis: the symbol ``"z"`` (the Grothendieck class of <1>) and integers m != 0
standing for u_<m>.  Brute-force brackets are assembled from Hall numbers

    F^L_{YX} = number of Aut(X)-orbits of maps X -> L with cone Y,

via [u_X, u_Y] = sum_L (F^L_{YX} - F^L_{XY}) u_L - delta_{X, Sigma Y} h_X and
[z, u_Y] = I(z, h_Y) u_Y, where I is the symmetric Euler form.  Every
indecomposable has a one-dimensional top (End/rad = k), so no h_X/d(X)
rescaling is needed.

Closed-form tables for both variants live next to the brute force so that
they can be compared, lifted to the integers across several primes, checked
for the Jacobi identity and pushed to the quotient by the center.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from . import orbit_cat as oc
from .orbit_cat import Variant

Basis = Union[str, int]
Z = "z"


def basis_key(b: Basis) -> tuple:
    return (0, 0, 0) if b == Z else (1,) + oc.label_key(b)


def basis_str(b: Basis) -> str:
    return Z if b == Z else f"u{b}"


@dataclass(frozen=True)
class LieElement:
    """Finite combination of basis symbols; coefficients reduced mod ``modulus`` (None = integral)."""

    coeffs: tuple[tuple[Basis, object], ...] = ()
    modulus: int | None = None

    @staticmethod
    def make(coeffs: Mapping[Basis, object] | Iterable[tuple[Basis, object]], modulus: int | None = None) -> "LieElement":
        acc: dict[Basis, object] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for b, c in items:
            acc[b] = acc.get(b, 0) + c
        out = []
        for b in sorted(acc, key=basis_key):
            c = acc[b]
            if modulus is not None:
                c = int(c) % modulus
            if c != 0:
                out.append((b, c))
        return LieElement(tuple(out), modulus)

    @staticmethod
    def basis(b: Basis, modulus: int | None = None) -> "LieElement":
        return LieElement.make({b: 1}, modulus)

    def as_dict(self) -> dict[Basis, object]:
        return dict(self.coeffs)

    def coeff(self, b: Basis):
        return self.as_dict().get(b, 0)

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement.make(list(self.coeffs) + list(other.coeffs), self._mod(other))

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + other.scale(-1)

    def scale(self, t) -> "LieElement":
        return LieElement.make([(b, c * t) for b, c in self.coeffs], self.modulus)

    def reduce(self, modulus: int) -> "LieElement":
        return LieElement.make(self.coeffs, modulus)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _mod(self, other: "LieElement") -> int | None:
        if self.modulus != other.modulus and self.coeffs and other.coeffs:
            raise ValueError("cannot combine elements with different moduli")
        return self.modulus if self.modulus is not None else other.modulus

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{basis_str(b)}" for b, c in self.coeffs)

    def to_json(self) -> dict:
        """{"z": c, "u": {"m": c, ...}} with the u keys in canonical order."""
        d = self.as_dict()
        out: dict = {}
        if Z in d:
            out["z"] = _jsonable(d[Z])
        us = [(b, c) for b, c in self.coeffs if b != Z]
        if us:
            out["u"] = {str(b): _jsonable(c) for b, c in us}
        return out


def _jsonable(c):
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else int(c)
    return int(c)


def basis_elements(max_index: int, with_z: bool = True) -> list[Basis]:
    out: list[Basis] = [Z] if with_z else []
    for k in range(1, max_index + 1):
        out += [k, -k]
    return out


# ---------------------------------------------------------------- Grothendieck classes


def groth_class(variant: Variant, m: int) -> int:
    """Class of <m> as a multiple of z."""
    if m == 0:
        raise ValueError("<0> is not an object")
    if variant is Variant.CLUSTER:
        return (1 if m > 0 else -1) * (abs(m) % 2)
    return m


def euler_form_objects(variant: Variant, x: int, y: int, p: int = 2) -> int:
    """I(h_X, h_Y) = dim(X,Y) - dim(X,Sigma Y) + dim(Y,X) - dim(Y,Sigma X)."""
    d = oc.hom_dim
    return d(variant, x, y, p) - d(variant, x, -y, p) + d(variant, y, x, p) - d(variant, y, -x, p)


def euler_form(variant: Variant, a: int, b: int, q: int | None = None) -> int:
    """I(a z, b z), computed as a*b*I(h_<1>, h_<1>); reduced mod q-1 when q is given."""
    val = a * b * euler_form_objects(variant, 1, 1)
    return val % (q - 1) if q is not None else val


# ---------------------------------------------------------------- brute force


def _check_q(q: int) -> None:
    if q < 3:
        raise ValueError("Hall-number verification needs q >= 3 (Z/(q-1) is trivial at q = 2)")


def hall_count(variant: Variant, y: int, x: int, l: int, q: int) -> int:
    """F^L_{YX} as an integer (before reduction mod q-1)."""
    return sum(oc.orbit_partition(variant, x, l, y, q))


def hall_F(variant: Variant, y: int, x: int, l: int, q: int) -> int:
    _check_q(q)
    return hall_count(variant, y, x, l, q) % (q - 1)


def _bracket_uu(variant: Variant, x: int, y: int, q: int, drop_s2: bool = False) -> LieElement:
    mod = q - 1
    terms: dict[Basis, int] = {}
    bound = abs(x) + abs(y)
    for l in itertools.chain(range(1, bound + 1), range(-1, -bound - 1, -1)):
        fyx = fxy = 0
        for rec in oc.orbit_records(variant, x, l, q):
            if rec.cone == (y,) and not (drop_s2 and rec.cell == 2):
                fyx += 1
        for rec in oc.orbit_records(variant, y, l, q):
            if rec.cone == (x,) and not (drop_s2 and rec.cell == 2):
                fxy += 1
        if fyx != fxy:
            terms[l] = fyx - fxy
    if x == -y:
        terms[Z] = terms.get(Z, 0) - groth_class(variant, x)
    return LieElement.make(terms, mod)


def bracket_basis(variant: Variant, a: Basis, b: Basis, q: int, drop_s2: bool = False) -> LieElement:
    """Brute-force bracket of two basis symbols."""
    _check_q(q)
    mod = q - 1
    if a == Z and b == Z:
        return LieElement((), mod)
    if a == Z:
        return LieElement.make({b: euler_form_objects(variant, 1, b, q)}, mod)
    if b == Z:
        return LieElement.make({a: -euler_form_objects(variant, 1, a, q)}, mod)
    return _bracket_uu(variant, a, b, q, drop_s2)


def bracket(variant: Variant, A: LieElement, B: LieElement, q: int) -> LieElement:
    """Bilinear extension of :func:`bracket_basis`."""
    out = LieElement((), q - 1)
    for a, ca in A.coeffs:
        for b, cb in B.coeffs:
            out = out + bracket_basis(variant, a, b, q).scale(int(ca) * int(cb))
    return out


def bracket_table(variant: Variant, q: int, max_index: int) -> dict[tuple[Basis, Basis], LieElement]:
    basis = basis_elements(max_index)
    return {(a, b): bracket_basis(variant, a, b, q) for a in basis for b in basis}


def table_to_json(variant: Variant, q: int | None, max_index: int,
                  table: Mapping[tuple[Basis, Basis], LieElement]) -> dict:
    """{variant, q, max_index, brackets: [{x, y, terms: [{basis, coeff}]}]} in canonical order."""
    rows = []
    for (a, b) in sorted(table, key=lambda k: (basis_key(k[0]), basis_key(k[1]))):
        terms = [{"basis": str(s), "coeff": _jsonable(c)} for s, c in table[(a, b)].coeffs]
        rows.append({"x": str(a), "y": str(b), "terms": terms})
    return {"variant": variant.value, "q": q, "max_index": max_index, "brackets": rows}


# ---------------------------------------------------------------- closed forms


def _u(*pairs) -> dict:
    out: dict = {}
    for b, c in pairs:
        out[b] = out.get(b, 0) + c
    return out


def _cluster_closed(a: Basis, b: Basis) -> dict:
    if a == Z and b == Z:
        return {}
    if a == Z:
        if b % 2 == 0:
            return {}
        return {b: 4 if b > 0 else -4}
    if b == Z:
        return {k: -v for k, v in _cluster_closed(Z, a).items()}
    ea, eb = a % 2 == 0, b % 2 == 0
    if ea and eb:
        return {}
    if not ea and not eb:
        if (a > 0) == (b > 0):
            return {}
        if a < 0:
            return {k: -v for k, v in _cluster_closed(b, a).items()}
        x, y = (a + 1) // 2, (-b + 1) // 2  # a = 2x-1, b = -2y+1
        if x < y:
            return _u((2 * x + 2 * y - 2, 1), (-2 * x - 2 * y + 2, -1), (2 * x - 2 * y, 1), (2 * y - 2 * x, -1))
        if x == y:
            return _u((Z, -1), (4 * x - 2, 1), (-4 * x + 2, -1))
        return _u((2 * x + 2 * y - 2, 1), (-2 * x - 2 * y + 2, -1), (2 * y - 2 * x, 1), (2 * x - 2 * y, -1))
    if not ea:
        return {k: -v for k, v in _cluster_closed(b, a).items()}
    # a even, b odd
    x = abs(a) // 2
    if b > 0:
        y = (b + 1) // 2  # b = 2y-1
        if a > 0:  # relation 3
            if x < y:
                return _u((2 * (x + y) - 1, 1), (2 * (y - x) - 1, 1))
            return _u((2 * (x + y) - 1, 1), (2 * (x - y) + 1, -1))
        if x < y:  # relation 5
            return _u((2 * (x + y) - 1, -1), (2 * (y - x) - 1, -1))
        return _u((2 * (x + y) - 1, -1), (2 * (x - y) + 1, 1))
    y = (-b + 1) // 2  # b = -2y+1
    if a > 0:  # relation 4
        if x < y:
            return _u((-2 * (x + y) + 1, -1), (2 * (x - y) + 1, -1))
        return _u((-2 * (x + y) + 1, -1), (2 * (y - x) - 1, 1))
    if x < y:  # relation 6
        return _u((-2 * (x + y) + 1, 1), (2 * (x - y) + 1, 1))
    return _u((-2 * (x + y) + 1, 1), (2 * (y - x) - 1, -1))


def _root_closed(a: Basis, b: Basis) -> dict:
    if a == Z or b == Z:
        return {}
    if a == -b:
        return {Z: -a}
    return {}


def closed_form(variant: Variant, a: Basis, b: Basis, modulus: int | None = None) -> LieElement:
    """Structure constant [a, b] from the closed-form tables (integral unless ``modulus``)."""
    f = _cluster_closed if variant is Variant.CLUSTER else _root_closed
    return LieElement.make(f(a, b), modulus)


def closed_bracket(variant: Variant, A: LieElement, B: LieElement) -> LieElement:
    out = LieElement((), A.modulus)
    for a, ca in A.coeffs:
        for b, cb in B.coeffs:
            out = out + closed_form(variant, a, b, A.modulus).scale(ca * cb)
    return out


# ---------------------------------------------------------------- verification


@dataclass
class Report:
    variant: str
    q: int | None
    max_index: int
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "q": self.q,
            "max_index": self.max_index,
            "checked": self.checked,
            "mismatches": self.mismatches,
        }


def verify_constants(variant: Variant, max_index: int, q: int, drop_s2: bool = False) -> Report:
    _check_q(q)
    rep = Report(variant.value, q, max_index)
    basis = basis_elements(max_index)
    for a in basis:
        for b in basis:
            got = bracket_basis(variant, a, b, q, drop_s2)
            want = closed_form(variant, a, b, q - 1)
            rep.checked += 1
            if got != want:
                rep.mismatches.append({"x": str(a), "y": str(b), "computed": got.to_json(), "expected": want.to_json()})
    return rep


def center_witnesses(variant: Variant, max_index: int, q: int | None = None, x_max: int | None = None) -> Report:
    """[u_{2x} + u_{-2x}, b] for every basis b; brute force when q is given, closed form otherwise."""
    rep = Report(variant.value, q, max_index)
    x_max = max_index // 2 if x_max is None else x_max
    for x in range(1, x_max + 1):
        for b in basis_elements(max_index):
            if q is None:
                val = closed_form(variant, 2 * x, b) + closed_form(variant, -2 * x, b)
            else:
                val = bracket_basis(variant, 2 * x, b, q) + bracket_basis(variant, -2 * x, b, q)
            rep.checked += 1
            if not val.is_zero():
                rep.mismatches.append({"x": x, "y": str(b), "value": val.to_json()})
    return rep


def jacobi_check(variant: Variant, max_index: int) -> Report:
    """Jacobi identity of the closed-form integral constants on all basis triples."""
    rep = Report(variant.value, None, max_index)
    basis = basis_elements(max_index)
    elems = {b: LieElement.basis(b) for b in basis}
    for a, b, c in itertools.combinations(basis, 3):
        A, B, C = elems[a], elems[b], elems[c]
        total = (
            closed_bracket(variant, A, closed_bracket(variant, B, C))
            + closed_bracket(variant, B, closed_bracket(variant, C, A))
            + closed_bracket(variant, C, closed_bracket(variant, A, B))
        )
        rep.checked += 1
        if not total.is_zero():
            rep.mismatches.append({"triple": [str(a), str(b), str(c)], "value": total.to_json()})
    return rep


# ---------------------------------------------------------------- integral lifting


def crt_lift(residues: Mapping[int, int], bound: int) -> int:
    """The unique integer c with |c| <= bound and c = r_m mod m for every modulus m.

    Moduli need not be coprime; inconsistent residues raise ValueError, as
    does a bound too large for the moduli to pin c down.
    """
    value, mod = 0, 1
    for m, r in residues.items():
        g = math.gcd(mod, m)
        if (r - value) % g:
            raise ValueError(f"residues are inconsistent: {dict(residues)}")
        lcm = mod // g * m
        # solve value + mod*t = r (mod m)
        t = ((r - value) // g * pow(mod // g, -1, m // g)) % (m // g) if m // g > 1 else 0
        value = (value + mod * t) % lcm
        mod = lcm
    if 2 * bound >= mod:
        raise ValueError(f"moduli with lcm {mod} cannot separate integers of magnitude {bound}")
    c = value if value <= mod // 2 else value - mod
    if abs(c) > bound:
        raise ValueError(f"lifted value {c} exceeds the magnitude bound {bound}")
    return c


def closed_form_bound(variant: Variant, max_index: int) -> int:
    basis = basis_elements(max_index)
    return max(
        [abs(c) for a in basis for b in basis for _, c in closed_form(variant, a, b).coeffs] + [1]
    )


def lift_integral(variant: Variant, primes: Iterable[int], max_index: int,
                  pairs: Iterable[tuple[Basis, Basis]] | None = None) -> dict[tuple[Basis, Basis], LieElement]:
    """Integral constants from brute-force residues mod p-1 across ``primes``.

    Each pair is lifted with the magnitude bound of its own closed-form
    constants, so two primes suffice for pairs whose constants are small.
    ``pairs`` restricts the table; by default every pair with indices up to
    ``max_index`` is lifted.
    """
    primes = sorted(set(primes))
    if len(primes) < 2 or any(p < 3 for p in primes):
        raise ValueError("need at least two odd primes")
    if pairs is None:
        basis = basis_elements(max_index)
        pairs = [(a, b) for a in basis for b in basis]
    out = {}
    for key in pairs:
        vals = {p: bracket_basis(variant, key[0], key[1], p) for p in primes}
        bound = max([abs(c) for _, c in closed_form(variant, *key).coeffs] + [1])
        symbols = set()
        for v in vals.values():
            symbols |= set(v.as_dict())
        coeffs = {s: crt_lift({p - 1: int(vals[p].coeff(s)) for p in primes}, bound) for s in symbols}
        out[key] = LieElement.make(coeffs)
    return out


def closed_table(variant: Variant, max_index: int) -> dict[tuple[Basis, Basis], LieElement]:
    basis = basis_elements(max_index)
    return {(a, b): closed_form(variant, a, b) for a in basis for b in basis}


# ---------------------------------------------------------------- quotient by the center


def _quot_symbol(kind: str, v: Fraction) -> str:
    return f"{kind}{v}"


def to_quotient(b: Basis) -> dict[str, Fraction]:
    """Image of a basis symbol in the quotient by the span of u_{2x} + u_{-2x}."""
    if b == Z:
        return {_quot_symbol("a", Fraction(0)): Fraction(2)}
    if b % 2 == 0:
        x = Fraction(abs(b), 2)
        return {_quot_symbol("a", x): Fraction(1 if b > 0 else -1)}
    y = Fraction(abs(b), 2)
    return {_quot_symbol("b" if b > 0 else "c", y): Fraction(1)}


def from_quotient(kind: str, v: Fraction) -> dict[Basis, Fraction]:
    """A lift of a quotient basis element to the integral algebra (over Q)."""
    if kind == "a":
        if v == 0:
            return {Z: Fraction(1, 2)}
        return {int(2 * v): Fraction(1)}
    return {int(2 * v) if kind == "b" else -int(2 * v): Fraction(1)}


def _push(element: Mapping[Basis, Fraction]) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    for b, c in element.items():
        for s, t in to_quotient(b).items():
            out[s] = out.get(s, Fraction(0)) + c * t
    return {s: c for s, c in out.items() if c != 0}


def quotient_bracket(kind1: str, v1: Fraction, kind2: str, v2: Fraction,
                     table=None) -> dict[str, Fraction]:
    """[e1, e2] in the quotient, computed by lifting, bracketing integrally and projecting."""
    lift1, lift2 = from_quotient(kind1, v1), from_quotient(kind2, v2)
    acc: dict[Basis, Fraction] = {}
    for a, ca in lift1.items():
        for b, cb in lift2.items():
            val = table[(a, b)] if table is not None else closed_form(Variant.CLUSTER, a, b)
            for s, c in val.coeffs:
                acc[s] = acc.get(s, Fraction(0)) + ca * cb * c
    return _push(acc)


def quotient_expected(kind1: str, v1: Fraction, kind2: str, v2: Fraction) -> dict[str, Fraction]:
    """The quotient constants in terms of a, b, c."""
    def sgn(r: Fraction) -> int:
        return 1 if r > 0 else -1

    def lin(*pairs) -> dict[str, Fraction]:
        out: dict[str, Fraction] = {}
        for s, c in pairs:
            out[s] = out.get(s, Fraction(0)) + Fraction(c)
        return {s: c for s, c in out.items() if c != 0}

    if kind1 == kind2:
        return {}
    if kind1 != "a" and kind2 == "a":
        return {s: -c for s, c in quotient_expected(kind2, v2, kind1, v1).items()}
    if kind1 == "c" and kind2 == "b":
        return {s: -c for s, c in quotient_expected(kind2, v2, kind1, v1).items()}
    if kind1 == "a":
        x, y = v1, v2
        s = sgn(y - x)
        if kind2 == "b":
            return lin((_quot_symbol("b", y + x), 1), (_quot_symbol("b", abs(y - x)), s))
        return lin((_quot_symbol("c", y + x), -1), (_quot_symbol("c", abs(y - x)), -s))
    y, y2 = v1, v2
    return lin((_quot_symbol("a", y + y2), 2), (_quot_symbol("a", abs(y - y2)), -2))


def quotient_elements(max_index: int) -> list[tuple[str, Fraction]]:
    out = [("a", Fraction(x)) for x in range(0, max_index + 1)]
    for k in range(1, max_index + 1):
        y = Fraction(2 * k - 1, 2)
        out += [("b", y), ("c", y)]
    return out


def quotient_by_center(max_index: int, table=None) -> dict:
    """All quotient brackets for a_x (x <= max_index) and b_y, c_y (y <= max_index - 1/2).

    Before projecting, the span of u_{2x} + u_{-2x} is checked to be central
    (otherwise the substitution would not define a quotient).
    """
    for x in range(1, 2 * max_index + 1):
        for b in basis_elements(2 * max_index + 1):
            if table is not None and ((2 * x, b) not in table or (-2 * x, b) not in table):
                continue
            val = (table[(2 * x, b)] + table[(-2 * x, b)]) if table is not None else (
                closed_form(Variant.CLUSTER, 2 * x, b) + closed_form(Variant.CLUSTER, -2 * x, b))
            if not val.is_zero():
                raise ValueError(f"u_{2*x} + u_{-2*x} is not central: bracket with {b} is {val}")
    out = {}
    elems = quotient_elements(max_index)
    for (k1, v1), (k2, v2) in itertools.product(elems, repeat=2):
        out[(_quot_symbol(k1, v1), _quot_symbol(k2, v2))] = quotient_bracket(k1, v1, k2, v2, table)
    return out


def quotient_mismatches(max_index: int, table=None) -> list:
    got = quotient_by_center(max_index, table)
    bad = []
    for (k1, v1), (k2, v2) in itertools.product(quotient_elements(max_index), repeat=2):
        key = (_quot_symbol(k1, v1), _quot_symbol(k2, v2))
        want = quotient_expected(k1, v1, k2, v2)
        if got[key] != want:
            bad.append({"pair": list(key), "computed": _fmt(got[key]), "expected": _fmt(want)})
    return bad


def _fmt(d: Mapping[str, Fraction]) -> dict[str, str]:
    return {s: str(c) for s, c in sorted(d.items())}


# ---------------------------------------------------------------- Heisenberg


def heisenberg_check(max_index: int, table=None) -> Report:
    """Chevalley basis check for the root category.

    e_n = -(1/n) u_n, f_n = u_{-n} (n >= 1) and z must satisfy [e_n, f_n] = z
    with every other bracket of basis elements zero.
    """
    rep = Report(Variant.ROOT.value, None, max_index)

    def const(a: Basis, b: Basis) -> dict[Basis, Fraction]:
        val = table[(a, b)] if table is not None else closed_form(Variant.ROOT, a, b)
        return {s: Fraction(c) for s, c in val.coeffs}

    chev: list[tuple[str, dict[Basis, Fraction]]] = [("z", {Z: Fraction(1)})]
    for k in range(1, max_index + 1):
        chev.append((f"e{k}", {k: Fraction(-1, k)}))
        chev.append((f"f{k}", {-k: Fraction(1)}))
    for (na, A), (nb, B) in itertools.product(chev, repeat=2):
        acc: dict[Basis, Fraction] = {}
        for a, ca in A.items():
            for b, cb in B.items():
                for s, c in const(a, b).items():
                    acc[s] = acc.get(s, Fraction(0)) + ca * cb * c
        acc = {s: c for s, c in acc.items() if c != 0}
        if na[0] == "e" and nb == "f" + na[1:]:
            want = {Z: Fraction(1)}
        elif na[0] == "f" and nb == "e" + na[1:]:
            want = {Z: Fraction(-1)}
        else:
            want = {}
        rep.checked += 1
        if acc != want:
            rep.mismatches.append({"x": na, "y": nb, "computed": {str(s): str(c) for s, c in acc.items()}})
    return rep


# ---------------------------------------------------------------- invariants


def additivity_violations(variant: Variant, q: int, max_index: int) -> list:
    """Triangles X -> L -> cone found in Hall counting that break [L] = [X] + [cone]."""
    bad = []
    for x in basis_elements(max_index, with_z=False):
        for l in basis_elements(2 * max_index, with_z=False):
            for rec in oc.orbit_records(variant, x, l, q):
                total = groth_class(variant, x) + sum(groth_class(variant, y) for y in rec.cone)
                if total != groth_class(variant, l):
                    bad.append({"x": x, "l": l, "cone": list(rec.cone)})
    return bad


@lru_cache(maxsize=None)
def d_of(variant: Variant, m: int, p: int) -> int:
    """dim End(<m>) / rad End(<m>)."""
    space = oc.hom_space(variant, m, m, p)
    return space.dim - len(oc.radical_basis(variant, m, p))
