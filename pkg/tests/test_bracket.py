from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gerst.algebra import TwistSpec
from gerst.bracket import (SCHOUTEN_SIGN, arity2_keys, bracket, calibrate_schouten_sign,
                           derivation_commutator_oracle, engine, euler_cocycle, hh_representatives,
                           jacobiator, phi, psi, schouten_oracle, sigma, sigma_eq9,
                           verify_homotopy_equation, verify_lie, verify_schouten,
                           verify_sigma_condition)
from gerst.cohomology import Cochain, degree_piece, is_coboundary

J = TwistSpec(1, 1)
C = TwistSpec(1, 0)
U, X, Y = (0, 0), (1, 0), (0, 1)
G00, G01, G10, G11 = (0, 0), (0, 1), (1, 0), (1, 1)

F = Cochain(J, 1, {G01: {Y: 1}, G10: {X: 1}})
G = Cochain(J, 2, {G11: {(0, 3): 1}})


def test_worked_example():
    prov = {}
    out = engine(J).bracket(F, G, reduce=False, provenance=prov)
    a, b = prov[G11]
    assert a.terms == {(0, 3): 3}
    assert b.terms == {(0, 3): 2}
    assert out == G
    assert bracket(F, G) == G


def test_psi_values():
    # psi_g lands in degree 2 - 2 + 1 = 1, psi_f in degree 2 - 1 + 1 = 2
    assert psi(G, G11) and psi(F, G11)
    assert all(sum(h) == 1 for _, h, _ in psi(G, G11))
    assert all(sum(h) == 2 for _, h, _ in psi(F, G11))


def test_sigma_examples():
    assert sigma((U, G00, U, G00, U), J) == {((0, 0, 0, 0, 0), (0, 0, 0, 0, 0)): 1}
    # the y^3 in the middle passes to the Q side
    assert sigma((U, G00, (0, 3), G00, U), J) == {((0, 0, 0, 0, 0), (0, 0, 3, 0, 0)): 1}
    # middle pair e1' e1 picks up tau_2 = -1
    assert sigma((U, G01, U, G10, U), J) == {((0, 0, 0, 1, 0), (0, 1, 0, 0, 0)): -1}


def test_phi_examples():
    y2 = (0, 2)
    assert phi({(U, G00, (0, 3), G00, U): 1}, J) == {(y2, G01, U): 1, (Y, G01, Y): 1, (U, G01, y2): 1}
    assert phi({(U, G00, U, G00, U): 1}, J) == {}
    assert phi({(U, G00, (1, 0), G00, U): 1}, J) == {(U, G10, U): 1}


@pytest.mark.parametrize("twist", [TwistSpec(2, 0), C, TwistSpec(3, 0)], ids=str)
def test_sigma_matches_letter_by_letter_construction(twist):
    for key in arity2_keys(4, max_hom=4):
        assert sigma(key, twist) == sigma_eq9(key, twist), key


def test_letter_by_letter_needs_strong_grading():
    with pytest.raises(NotImplementedError):
        sigma_eq9((U, G00, U, G00, U), J)


@pytest.mark.parametrize("twist,N", [(J, 6), (C, 6), (TwistSpec(3, 0), 6), (TwistSpec(2, 0), 6),
                                     (TwistSpec(Fraction(-3, 2), 5), 4)], ids=str)
def test_sigma_condition(twist, N):
    report = verify_sigma_condition(twist, N)
    assert report.passed, report.failures[:3]


@pytest.mark.parametrize("twist,N", [(J, 5), (C, 5), (TwistSpec(2, 0), 5),
                                     (TwistSpec(Fraction(-3, 2), 5), 4)], ids=str)
def test_homotopy_equation(twist, N):
    report = verify_homotopy_equation(twist, N, direct_N=3)
    assert report.passed, report.failures[:3]


# Lie structure ---------------------------------------------------------------------

def test_self_bracket_of_one_cocycles_vanishes():
    for f in hh_representatives(J, 1, 4):
        assert bracket(f, f, reduce=False).is_zero()


def test_two_cocycles_bracket_to_zero():
    out = bracket(G, G)
    assert out.degree == 3 and out.is_zero()


@pytest.mark.parametrize("twist", [J, C, TwistSpec(2, 0)], ids=str)
def test_antisymmetry(twist):
    reps = hh_representatives(twist, 1, 3) + hh_representatives(twist, 2, 3)
    for f in reps:
        for g in reps:
            if f.degree + g.degree > 3:
                continue
            sign = -1 if (f.degree - 1) * (g.degree - 1) % 2 else 1
            assert bracket(f, g, reduce=False) == bracket(g, f, reduce=False).scale(-sign)


def test_euler_property():
    e = euler_cocycle(J)
    for m in (1, 2):
        for d in range(-m, 6):
            for g in degree_piece(J, m, d).representatives:
                diff = bracket(e, g, reduce=False) - g.scale(d)
                assert is_coboundary(diff) is not None, (m, d)


def test_commutator_equals_bracket_exactly():
    reps = hh_representatives(J, 1, 5)
    assert len(reps) == 8
    for f in reps:
        for g in reps:
            assert bracket(f, g, reduce=False) == derivation_commutator_oracle(f, g)


def test_commutator_oracle_examples():
    e = euler_cocycle(J)
    adx = Cochain(J, 1, {G01: {(2, 0): -1}})
    assert derivation_commutator_oracle(e, adx) == adx
    assert derivation_commutator_oracle(e, e).is_zero()
    f = Cochain(J, 1, {G01: {U: 1}})
    g = Cochain(J, 1, {G01: {Y: 1}})
    assert derivation_commutator_oracle(f, g).values == {G01: {U: 1}}


def test_jacobi_small():
    pool = hh_representatives(J, 1, 1) + [G]
    for f in pool:
        for g in pool:
            for h in pool:
                J3 = jacobiator(f, g, h)
                assert J3 is None or is_coboundary(J3) is not None


def test_verify_lie_jordan_small():
    report = verify_lie(J, 3, jacobi_N=1, hh2_powers=2)
    assert report.passed, report.failures[:3]


def test_verify_lie_commutative():
    report = verify_lie(C, 3, jacobi_N=1, hh2_powers=2)
    assert report.passed, report.failures[:3]


# Schouten ----------------------------------------------------------------------------

def test_schouten_oracle_examples():
    assert schouten_oracle(C, {X: 1}, {}, {(1, 1): 1}).is_zero()
    assert schouten_oracle(C, {}, {}, {(3, 2): 1}).is_zero()
    assert schouten_oracle(C, {}, {Y: 1}, {(0, 2): 1}).terms == {(0, 2): 1}
    with pytest.raises(NotImplementedError):
        schouten_oracle(J, {}, {}, {})


def test_schouten_sign_calibration():
    assert calibrate_schouten_sign() == SCHOUTEN_SIGN == 1


def test_x_dx_with_xy():
    f = Cochain(C, 1, {G10: {X: 1}})
    g = Cochain(C, 2, {G11: {(1, 1): 1}})
    assert bracket(f, g).is_zero()


def test_schouten_comparison():
    report = verify_schouten(3)
    assert report.passed, report.failures[:3]


coeffs = st.lists(st.integers(-2, 2), min_size=1, max_size=6)


@settings(max_examples=25)
@given(coeffs, coeffs)
def test_commutative_brackets_match_schouten_on_combinations(a, b):
    H1 = hh_representatives(C, 1, 2)
    H2 = hh_representatives(C, 2, 2)
    f = Cochain.zero(C, 1)
    for rep, k in zip(H1, a):
        f = f + rep.scale(k)
    g = Cochain.zero(C, 2)
    for rep, k in zip(H2, b):
        g = g + rep.scale(k)
    want = schouten_oracle(C, f.values.get(G10, {}), f.values.get(G01, {}), g.values.get(G11, {}))
    assert bracket(f, g, reduce=False).value(G11) == want
