"""
Acceptance criteria 1-11.

Each criterion is a function returning (ok, detail).  Under pytest every
criterion is a test and the PASS/FAIL lines are printed in the terminal
summary; ``python tests/test_acceptance.py`` prints the same lines directly.

Tolerances: every comparison is exact (integer or Fraction equality, or
equality of residues mod q-1).  There is no floating point anywhere.

Criteria 3 and 4 are checked literally and are expected to FAIL; the tests
are marked xfail(strict=True) so an unexpected pass is reported too.  The
companion "corrected" checks assert the versions that do hold.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction

import pytest

from tubehall import covering as cv
from tubehall import derived_tube as dt
from tubehall import hall_lie as hl
from tubehall import orbit_atlas as oa
from tubehall import orbit_cat as oc
from tubehall import tube_rep as tr
from tubehall.derived_tube import StalkObject
from tubehall.orbit_cat import Variant
from tubehall.tube_rep import IndecLabel

C, R = Variant.CLUSTER, Variant.ROOT
RESULTS: dict[str, str] = {}


def _record(num: int, ok: bool, detail: str, seconds: float) -> None:
    RESULTS[f"{num:02d}"] = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  ({seconds:.1f}s)  {detail}"


def _timed(num):
    def wrap(fn):
        def inner():
            t = time.perf_counter()
            ok, detail = fn()
            _record(num, ok, detail, time.perf_counter() - t)
            return ok, detail
        inner.__name__ = fn.__name__
        inner.__doc__ = fn.__doc__
        return inner
    return wrap


@_timed(1)
def criterion_1():
    """Cluster tube brute force vs relations 1)-8): q=3 at |m|<=6 (mod 2), q=5 at |m|<=4 (mod 4)."""
    r3 = hl.verify_constants(C, 6, 3)
    r5 = hl.verify_constants(C, 4, 5)
    return r3.ok and r5.ok, f"q=3: {r3.checked} pairs, {len(r3.mismatches)} mismatches; q=5: {r5.checked} pairs, {len(r5.mismatches)} mismatches"


@_timed(2)
def criterion_2():
    """Root category brute force at q=3,5 for |n|<=6 vs [u_n, u_-n] = -n z, all else 0."""
    reps = [hl.verify_constants(R, 6, q) for q in (3, 5)]
    return all(r.ok for r in reps), "; ".join(f"q={r.q}: {len(r.mismatches)} mismatches" for r in reps)


@_timed(3)
def criterion_3():
    """Literal: cone(f0 + g) = {<-3>} and the S2 cell for Y = <-3> is nonempty, divisible by q-1, at q=3,5."""
    parts, ok = [], True
    for q in (3, 5):
        f = oc.example_morphism(q)
        cone = oc.cone(f, q)
        s2 = oc.orbit_partition(C, 4, 3, -3, q)[1]
        good = cone == (-3,) and s2 > 0 and s2 % (q - 1) == 0
        ok &= good
        parts.append(f"q={q}: cone={list(cone)} S2(Y=-3)={s2}")
    return ok, "; ".join(parts)


def criterion_3_corrected():
    """The recipe's intermediate term is <-3>; the cone itself is its suspension <3>, whose S2 cell is nonempty."""
    for q in (3, 5):
        f = oc.example_morphism(q)
        if oc.z_term(f, q) != (-3,) or oc.cone(f, q) != (3,):
            return False
        s2 = oc.orbit_partition(C, 4, 3, 3, q)[1]
        if not (s2 > 0 and s2 % (q - 1) == 0):
            return False
    return True


MODULES4 = [IndecLabel.from_signed(m) for m in range(-4, 5) if m]


def _rotations_q3():
    return {t: dt.v_rotations(*t, 3) for t in itertools.product(MODULES4, repeat=3)}


@_timed(4)
def criterion_4():
    """Literal: |V| in {0,1} iff a triangle exists, and the squared-Hom identities, on all triples of length <= 4 at q=3."""
    rot = _rotations_q3()
    part1 = [t for t, r in rot.items()
             if r.v not in (0, 1) or (r.v == 1) != dt.triangle_exists(*t, 3)]
    bad = [tuple(lab.to_signed() for lab in t) for t, r in rot.items()
           if not (r.identity2_holds() and r.identity3_holds())]
    return not part1 and not bad, f"{len(rot)} triples; part 1 violations {len(part1)}; identity violations {len(bad)}: {sorted(bad)}"


def criterion_4_corrected():
    rot = _rotations_q3()
    return all(r.stabilizer_identity2_holds() and r.stabilizer_identity3_holds() for r in rot.values())


@_timed(5)
def criterion_5():
    """I(z,z) = 4; I(h_<2k>, h_Y) = 0 for lengths <= 6; [z, u_Y] matches relation 8) for |Y| <= 6 at q=3,5."""
    labels = [m for m in range(-6, 7) if m]
    izz = hl.euler_form_objects(C, 1, 1)
    even = [(x, y) for x in labels if x % 2 == 0 for y in labels if hl.euler_form_objects(C, x, y) != 0]
    rel8 = [(q, y) for q in (3, 5) for y in labels
            if hl.bracket_basis(C, hl.Z, y, q) != hl.closed_form(C, hl.Z, y, q - 1)]
    return izz == 4 and not even and not rel8, f"I(z,z)={izz}; even-class violations {len(even)}; relation 8 violations {len(rel8)}"


@_timed(6)
def criterion_6():
    """Jacobi identity for the closed-form integral constants, both variants, indices <= 10."""
    reps = [hl.jacobi_check(v, 10) for v in (C, R)]
    return all(r.ok for r in reps), "; ".join(f"{r.variant}: {r.checked} triples, {len(r.mismatches)} failures" for r in reps)


@_timed(7)
def criterion_7():
    """[u_2x + u_-2x, u_m] = 0 integrally for x, |m| <= 10; quotient constants for indices <= 10."""
    center = hl.center_witnesses(C, 10, x_max=10)
    bad = hl.quotient_mismatches(10)
    F = Fraction
    bc = all(
        hl.quotient_bracket("b", F(2 * y + 1, 2), "c", F(2 * z + 1, 2))
        == hl.quotient_expected("b", F(2 * y + 1, 2), "c", F(2 * z + 1, 2))
        for y in range(10) for z in range(10)
    )
    return center.ok and not bad and bc, f"center: {len(center.mismatches)} nonzero of {center.checked}; quotient mismatches {len(bad)}; [b,c] rule {'ok' if bc else 'broken'}"


@_timed(8)
def criterion_8():
    """CRT over {3,5,7} reproduces the closed tables; Heisenberg check for n <= 10.

    The moduli q-1 in {2,4,6} have lcm 12, which separates integers of
    magnitude at most 5.  The root constant [u_6, u_-6] = -6z lies beyond that,
    so lifting is checked for the root category at |n| <= 5 and the cluster
    tube at |m| <= 4; the Heisenberg check at n <= 10 uses the closed form.
    """
    root = hl.lift_integral(R, [3, 5, 7], 5) == hl.closed_table(R, 5)
    cluster = hl.lift_integral(C, [3, 5, 7], 4) == hl.closed_table(C, 4)
    heis = hl.heisenberg_check(10)
    heis_lift = hl.heisenberg_check(5, hl.lift_integral(R, [3, 5, 7], 5))
    ok = root and cluster and heis.ok and heis_lift.ok
    return ok, f"root lift |n|<=5 {root}; cluster lift |m|<=4 {cluster}; Heisenberg n<=10 {heis.ok}; lifted Heisenberg n<=5 {heis_lift.ok}"


@_timed(9)
def criterion_9():
    """Classification sweep over w in [-3,4], n in [1,6], F_5 and a rational sample."""
    F5 = oa.ScalarField(5)
    checked, bad, parity_bad = 0, [], []
    for w, n in itertools.product(range(-3, 5), range(1, 7)):
        if not oa.parity_identity(w, n):
            parity_bad.append((w, n))
        for field, scalars in ((F5, range(1, 5)), (oa.QQ, (1, -1, 2, -2))):
            for a, b in itertools.product(scalars, repeat=2):
                P = oa.derive_params(w, n, a, b, field)
                checked += 1
                if oa.equivalent(P) != oa.presentations_isomorphic(*oa.presentations(P), field):
                    bad.append((w, n, a, b, field.name))
    ex = oa.equivalent(oa.derive_params(2, 2, 1, 1)) and not oa.equivalent(oa.derive_params(2, 3, 1, 1))
    return not bad and not parity_bad and ex, f"{checked} cases, {len(bad)} disagreements, {len(parity_bad)} parity failures, examples {'ok' if ex else 'wrong'}"


def _random_stalks(rng, ctx):
    return [StalkObject(tuple((rng.randint(-1, 1), IndecLabel(rng.randint(1, ctx.n_prime), rng.randint(1, 3)))
                              for _ in range(rng.randint(0, 3)))) for _ in range(ctx.m)]


@_timed(10)
def criterion_10():
    """Covering diagrams for |d| <= 4, n <= 6, window 50; sigma-bar^m; orbit-map identity; 100 psi pairs."""
    rng = random.Random(2024)
    diag_bad, bar_bad, orbit_bad = [], [], []
    for d, n in itertools.product([k for k in range(-4, 5) if k], range(1, 7)):
        ctx = cv.CoverContext(d, n)
        if not cv.check_diagrams(ctx, 50).ok:
            diag_bad.append((d, n))
        for u in cv.bar_vertices(ctx):
            if cv.bar_sigma_power(ctx, u, ctx.m) != cv.VertexBarQ(u.j, (u.i + ctx.c) % ctx.n_prime):
                bar_bad.append((d, n, u))
        for _ in range(5):
            X = {cv.VertexQ(rng.randrange(ctx.copies), rng.randint(-8, 8)): rng.randint(1, 3) for _ in range(3)}
            vertices = cv.window_vertices(ctx, 12 + 2 * n)
            if cv.pull_back(ctx, cv.push_down(ctx, X), vertices) != cv.orbit_sum(ctx, X, vertices):
                orbit_bad.append((d, n))
    small = [cv.CoverContext(d, n) for d, n in itertools.product([k for k in range(-4, 5) if k], range(1, 7))]
    small = [c for c in small if c.m <= 3 and c.n_prime <= 3]
    psi_bad = 0
    for _ in range(100):
        ctx = rng.choice(small)
        lhs, rhs = cv.psi_dim_identity(ctx, _random_stalks(rng, ctx), _random_stalks(rng, ctx))
        psi_bad += lhs != rhs
    ok = not (diag_bad or bar_bad or orbit_bad or psi_bad)
    return ok, f"diagram failures {len(diag_bad)}; sigma-bar^m failures {len(bar_bad)}; orbit-map failures {len(orbit_bad)}; psi unequal pairs {psi_bad}/100"


def _chain_labels(n, max_len):
    return [IndecLabel(s, l) for s in range(1, n + 1) for l in range(1, max_len + 1)]


@_timed(11)
def criterion_11():
    """decompose vs exhaustive isomorphism search (dim <= 3, F_2); Ext = AR-dual Hom (length <= 4, F_2 and F_3)."""
    dec_checked, dec_bad = 0, 0
    for n in (1, 2, 3):
        for total in range(1, 4):
            for M in tr.all_nilpotent_reps(n, total, 2):
                dec_checked += 1
                N = tr.build_sum(n, tr.decompose(M), 2)
                dec_bad += not (N.dims == M.dims and tr.isomorphic_bruteforce(M, N))
    ar_checked, ar_bad = 0, 0
    for n, p in itertools.product((1, 2, 3), (2, 3)):
        for a, b in itertools.product(_chain_labels(n, 4), repeat=2):
            ar_checked += 1
            ar_bad += tr.ext_dim(n, a, b, p) != tr.hom_dim(n, b, tr.ar_translate(a, n), p)
    return not dec_bad and not ar_bad, f"decompose {dec_bad}/{dec_checked} disagreements; AR duality {ar_bad}/{ar_checked} disagreements"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]

LITERAL_FAIL = {
    3: "the stated cone is the recipe's intermediate term; the cone of this map is its suspension <3>",
    4: "the squared-Hom identities fail on four triples; the orbit-stabiliser forms hold",
}


PARAMS = [
    pytest.param(k, marks=pytest.mark.xfail(strict=True, reason=LITERAL_FAIL[k])) if k in LITERAL_FAIL else k
    for k in range(1, 12)
]


@pytest.mark.parametrize("num", PARAMS)
def test_criterion(num):
    ok, detail = CRITERIA[num - 1]()
    assert ok, detail


def test_criterion_3_corrected():
    assert criterion_3_corrected()


def test_criterion_4_corrected():
    assert criterion_4_corrected()


def main() -> int:
    failed = 0
    for num, fn in enumerate(CRITERIA, start=1):
        ok, _ = fn()
        failed += not ok
        print(RESULTS[f"{num:02d}"], flush=True)
    print(f"corrected criterion 3: {'PASS' if criterion_3_corrected() else 'FAIL'}")
    print(f"corrected criterion 4: {'PASS' if criterion_4_corrected() else 'FAIL'}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
