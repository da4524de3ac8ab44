import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tubehall import hall_lie as hl
from tubehall.hall_lie import LieElement, Z
from tubehall.orbit_cat import Variant

C, R = Variant.CLUSTER, Variant.ROOT


def E(d, mod=None):
    return LieElement.make(d, mod)


# ---------------------------------------------------------------- Lie elements


def test_lie_element_canonical():
    a = E({3: 1, Z: 2, -1: 0, 1: 5})
    assert a.coeffs == ((Z, 2), (1, 5), (3, 1))
    assert E({1: 3}, 2) == E({1: 1}, 2)
    assert (a - a).is_zero()
    assert a.to_json() == {"z": 2, "u": {"1": 5, "3": 1}}
    with pytest.raises(ValueError):
        E({1: 1}, 2) + E({1: 1}, 4)


# ---------------------------------------------------------------- Hall numbers


def test_hall_numbers_relation3():
    assert hl.hall_F(C, 3, 2, 5, 3) == 1  # l = 2(x+y)-1 with x = 1, y = 2
    assert hl.hall_F(C, 3, 2, 1, 3) == 1  # x < y, l = 2(y-x)-1


def test_hall_number_relation7():
    assert hl.hall_F(C, -1, 1, 2, 3) == 1


def test_q2_rejected():
    with pytest.raises(ValueError):
        hl.hall_F(C, 1, 1, 2, 2)
    with pytest.raises(ValueError):
        hl.bracket_basis(C, 1, -1, 2)


# ---------------------------------------------------------------- brackets


@pytest.mark.parametrize("q", [3, 5])
def test_bracket_examples(q):
    m = q - 1
    assert hl.bracket_basis(C, 2, 1, q) == E({3: 1, 1: -1}, m)
    assert hl.bracket_basis(C, 1, -1, q) == E({Z: -1, 2: 1, -2: -1}, m)
    for n in range(1, 5):
        assert hl.bracket_basis(R, n, -n, q) == E({Z: -n}, m)


def test_bracket_bilinear():
    A = E({1: 1, 2: 1}, 2)
    B = E({-1: 1}, 2)
    assert hl.bracket(C, A, B, 3) == hl.bracket_basis(C, 1, -1, 3) + hl.bracket_basis(C, 2, -1, 3)


@pytest.mark.parametrize("variant,q", [(C, 3), (C, 5), (R, 3), (R, 5)])
def test_bracket_antisymmetric(variant, q):
    basis = hl.basis_elements(4)
    for a, b in itertools.product(basis, repeat=2):
        assert (hl.bracket_basis(variant, a, b, q) + hl.bracket_basis(variant, b, a, q)).is_zero()


@pytest.mark.parametrize("variant,q,top", [(C, 3, 4), (C, 5, 3), (R, 3, 4), (R, 5, 4)])
def test_s2_never_matters(variant, q, top):
    basis = hl.basis_elements(top, with_z=False)
    for a, b in itertools.product(basis, repeat=2):
        assert hl.bracket_basis(variant, a, b, q, drop_s2=True) == hl.bracket_basis(variant, a, b, q)


@pytest.mark.parametrize("variant,q,top", [(C, 3, 4), (C, 5, 3), (R, 3, 4), (R, 5, 4)])
def test_verify_constants_small(variant, q, top):
    rep = hl.verify_constants(variant, top, q)
    assert rep.ok, rep.mismatches[:3]
    assert rep.checked == (2 * top + 1) ** 2


# ---------------------------------------------------------------- Euler form and classes


def test_euler_form_examples():
    assert hl.euler_form_objects(C, 1, 1) == 4
    assert hl.euler_form(C, 1, 1) == 4
    assert hl.euler_form_objects(C, 2, 1) == 0
    assert hl.euler_form_objects(R, 1, 1) == 0


@pytest.mark.parametrize("variant", [C, R])
def test_euler_form_depends_on_classes_only(variant):
    labels = [m for m in range(-6, 7) if m]
    base = hl.euler_form_objects(variant, 1, 1)
    for x, y in itertools.product(labels, repeat=2):
        cx, cy = hl.groth_class(variant, x), hl.groth_class(variant, y)
        assert hl.euler_form_objects(variant, x, y) == cx * cy * base, (x, y)


@pytest.mark.parametrize("q", [3, 5])
def test_z_bracket_matches_relation8(q):
    for n in [m for m in range(-8, 9) if m]:
        want = 0 if n % 2 == 0 else (4 if n > 0 else -4)
        assert hl.bracket_basis(C, Z, n, q) == E({n: want}, q - 1)


def test_grothendieck_classes():
    assert [hl.groth_class(C, m) for m in (1, -1, 2, -2, 3, -5)] == [1, -1, 0, 0, 1, -1]
    assert [hl.groth_class(R, m) for m in (1, -1, 4, -3)] == [1, -1, 4, -3]


@pytest.mark.parametrize("variant", [C, R])
def test_endomorphism_tops_are_one_dimensional(variant):
    for m in [k for k in range(-5, 6) if k]:
        assert hl.d_of(variant, m, 3) == 1


# ---------------------------------------------------------------- closed forms


@pytest.mark.parametrize("variant", [C, R])
def test_closed_form_antisymmetric(variant):
    basis = hl.basis_elements(10)
    for a, b in itertools.product(basis, repeat=2):
        assert (hl.closed_form(variant, a, b) + hl.closed_form(variant, b, a)).is_zero()


@pytest.mark.parametrize("variant", [C, R])
def test_jacobi_small(variant):
    assert hl.jacobi_check(variant, 5).ok


def test_center():
    assert hl.center_witnesses(C, 10, x_max=10).ok
    assert hl.center_witnesses(C, 4, q=3, x_max=2).ok


@given(st.integers(1, 10), st.integers(1, 10))
def test_even_generators_commute(x, y):
    for a, b in ((2 * x, 2 * y), (2 * x, -2 * y), (-2 * x, -2 * y)):
        assert hl.closed_form(C, a, b).is_zero()


# ---------------------------------------------------------------- integral lifting


def test_crt_lift():
    assert hl.crt_lift({2: 1, 6: 5}, 2) == -1
    assert hl.crt_lift({2: 1, 4: 1, 6: 3}, 5) == -3
    with pytest.raises(ValueError):
        hl.crt_lift({2: 0, 4: 1}, 1)  # inconsistent
    with pytest.raises(ValueError):
        hl.crt_lift({2: 1, 4: 1}, 2)  # lcm 4 cannot separate magnitude 2


@given(st.integers(-5, 5))
def test_crt_lift_roundtrip(c):
    assert hl.crt_lift({m: c % m for m in (2, 4, 6)}, 5) == c


def test_lift_relation7_two_primes():
    table = hl.lift_integral(C, [3, 7], 1, pairs=[(1, -1)])
    assert table[(1, -1)] == E({Z: -1, 2: 1, -2: -1})
    # [z, u_1] = 4 u_1 is too large for the moduli {2, 6}
    with pytest.raises(ValueError):
        hl.lift_integral(C, [3, 7], 1, pairs=[(Z, 1)])


def test_lift_root_three_primes():
    table = hl.lift_integral(R, [3, 5, 7], 3)
    assert table[(3, -3)] == E({Z: -3})
    assert table == hl.closed_table(R, 3)


def test_lift_matches_closed_cluster():
    assert hl.lift_integral(C, [3, 5, 7], 2) == hl.closed_table(C, 2)


# ---------------------------------------------------------------- quotient


def Q(kind, v):
    return (kind, Fraction(v))


def test_quotient_examples():
    br = hl.quotient_bracket
    assert br("b", Fraction(1, 2), "c", Fraction(1, 2)) == {"a1": 2, "a0": -2}
    assert br("a", Fraction(1), "b", Fraction(1, 2)) == {"b3/2": 1, "b1/2": -1}
    for x, y in itertools.product(range(0, 6), repeat=2):
        assert br("a", Fraction(x), "a", Fraction(y)) == {}


def test_quotient_matches_expected():
    assert hl.quotient_mismatches(6) == []


def test_quotient_from_lifted_table():
    table = hl.lift_integral(C, [3, 5, 7], 2)
    assert hl.quotient_mismatches(1, table) == []


def test_quotient_rejects_noncentral_table():
    table = dict(hl.closed_table(C, 4))
    table[(2, 1)] = E({3: 7})
    with pytest.raises(ValueError):
        hl.quotient_by_center(1, table)


# ---------------------------------------------------------------- Heisenberg


def test_heisenberg_closed():
    assert hl.heisenberg_check(10).ok


def test_heisenberg_lifted():
    assert hl.heisenberg_check(3, hl.lift_integral(R, [3, 5, 7], 3)).ok


def test_heisenberg_examples():
    assert hl.closed_form(R, 1, -1) == E({Z: -1})  # [-u_1, u_{-1}] = z
    assert hl.closed_form(R, 2, -3).is_zero()
    assert hl.closed_form(R, Z, 5).is_zero()


def test_table_json_schema():
    out = hl.table_to_json(R, 3, 1, hl.bracket_table(R, 3, 1))
    assert set(out) == {"variant", "q", "max_index", "brackets"}
    row = next(r for r in out["brackets"] if r["x"] == "1" and r["y"] == "-1")
    assert row["terms"] == [{"basis": "z", "coeff": 1}]  # -1 mod 2
