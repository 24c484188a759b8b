from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gerst.algebra import TwistSpec, twisted_algebra
from gerst.cohomology import (Cochain, cochain_basis, degree_piece, derivation_canonical_form,
                              derivation_cochain, hh_dimensions, hom_differential, is_coboundary,
                              is_cocycle, reassemble_derivation, reduce_mod_coboundaries)

J = TwistSpec(1, 1)
X, Y = (1, 0), (0, 1)
G01, G10, G11 = (0, 1), (1, 0), (1, 1)


def ym(k):
    return {(0, k): Fraction(1)}


def test_hom_differential_examples():
    one = Cochain(J, 0, {(0, 0): {(0, 0): 1}})
    assert hom_differential(one).is_zero()
    c = Cochain(J, 0, {(0, 0): {X: 1}})
    dc = hom_differential(c)
    assert dc.values == {G01: {(2, 0): 1}}      # yx - xy = x^2, xx - xx = 0
    with pytest.raises(ValueError, match="top degree"):
        hom_differential(Cochain(J, 2, {G11: {X: 1}}))


def test_hom_differential_on_u():
    # u(e1 e0') = x: d*u(e1 e1') = x*x + x*x - y*x + x*y over the d2 coefficients
    u = Cochain(J, 1, {G10: {X: 1}})
    assert hom_differential(u).values == {G11: {(2, 0): 1}}


def test_is_cocycle_and_coboundary_examples():
    f = Cochain(J, 1, {G01: {Y: 1}, G10: {X: 1}})
    assert is_cocycle(f)
    assert is_coboundary(Cochain.zero(J, 2)).is_zero()
    g = Cochain(J, 2, {G11: {X: 1}})
    w = is_coboundary(g)
    assert w is not None and hom_differential(w) == g
    assert is_coboundary(Cochain(J, 2, {G11: ym(3)})) is None
    assert is_coboundary(Cochain(J, 0, {(0, 0): {(0, 0): 1}})) is None


def test_hh_jordan():
    report = hh_dimensions(J, 10)
    assert report.dims(0) == {0: 1, **{d: 0 for d in range(1, 11)}}
    assert report.dims(1) == {-1: 1, 0: 2, **{d: 1 for d in range(1, 11)}}
    assert report.dims(2) == {d: 1 for d in range(-2, 11)}


def test_hh_jordan_representatives_are_y_powers():
    for d in range(-2, 6):
        (rep,) = hh_dimensions(J, 6).representatives(2, d)
        assert rep.values == {G11: {(0, d + 2): 1}}


def test_hh_commutative():
    # polyvector fields on k[x, y]: d+1, 2(d+2), d+3 in internal degree d
    report = hh_dimensions(TwistSpec(1, 0), 4)
    assert report.dims(0) == {d: d + 1 for d in range(5)}
    assert report.dims(1) == {d: 2 * (d + 2) for d in range(-1, 5)}
    assert report.dims(2) == {d: d + 3 for d in range(-2, 5)}


def test_hh_quantum_q2():
    report = hh_dimensions(TwistSpec(2, 0), 6)
    assert report.dims(0) == {0: 1, **{d: 0 for d in range(1, 7)}}
    assert sum(report.dims(1).values()) <= 4
    assert all(n == 0 for d, n in report.dims(1).items() if d > 0)
    assert all(n == 0 for d, n in report.dims(2).items() if d > 0)


def test_reduce_examples():
    g = Cochain(J, 2, {G11: {(0, 3): 1, (1, 1): 1}})
    assert reduce_mod_coboundaries(g) == Cochain(J, 2, {G11: ym(3)})
    z = Cochain.zero(J, 2)
    assert reduce_mod_coboundaries(z) == z
    with pytest.raises(ValueError):
        reduce_mod_coboundaries(Cochain(J, 1, {G10: {X: 1}}))


def test_derivation_canonical_forms():
    alg = twisted_algebra(J)
    euler = Cochain(J, 1, {G01: {Y: 1}, G10: {X: 1}})
    assert derivation_canonical_form(euler) == (0, alg.y(), alg.element())
    ax = Cochain(J, 1, {G01: {X: 1}})
    assert derivation_canonical_form(ax) == (1, alg.element(), alg.element())
    adx = Cochain(J, 1, {G01: {(2, 0): -1}})
    assert derivation_canonical_form(adx) == (0, alg.element(), alg.x())
    with pytest.raises(NotImplementedError):
        derivation_canonical_form(Cochain(TwistSpec(1, 0), 1, {G10: {X: 1}}))


def test_derivation_round_trip():
    for d in range(-1, 7):
        for c in degree_piece(J, 1, d).representatives:
            alpha, p, w = derivation_canonical_form(c)
            back = reassemble_derivation(J, alpha, p, w)
            assert back == c or is_coboundary(back - c) is not None


def test_center_is_constants():
    for d in range(1, 7):
        assert degree_piece(J, 0, d).dimension == 0


def test_cochain_validation():
    with pytest.raises(ValueError):
        Cochain(J, 1, {G11: {X: 1}})
    with pytest.raises(ValueError):
        Cochain(J, 4)
    c = Cochain(J, 1, {"e1*e0'": {X: 1}})
    assert c.values == {G10: {X: 1}}
    assert c.to_dict() == {"hom_degree": 1, "values": {"e1*e0'": "x"}}


# properties --------------------------------------------------------------------

TWISTS = [J, TwistSpec(1, 0), TwistSpec(2, 0), TwistSpec(Fraction(-3, 2), 5)]


def random_cochain(twist, m, d, coeffs):
    keys = cochain_basis(twist, m, d)
    vec = {k: Fraction(c) for k, c in zip(keys, coeffs) if c}
    return Cochain.from_vector(twist, m, vec)


coeff_lists = st.lists(st.integers(-3, 3), min_size=0, max_size=20)


@given(st.sampled_from(TWISTS), st.integers(-1, 8), coeff_lists)
def test_d_star_squared_zero(twist, d, coeffs):
    c = random_cochain(twist, 0, d, coeffs)
    assert hom_differential(hom_differential(c)).is_zero()


@given(st.sampled_from(TWISTS), st.integers(0, 4), coeff_lists)
def test_reduce_kills_coboundaries(twist, d, coeffs):
    u = random_cochain(twist, 1, d, coeffs)
    assert reduce_mod_coboundaries(hom_differential(u)).is_zero()
    w = is_coboundary(hom_differential(u))
    assert w is not None and hom_differential(w) == hom_differential(u)


@given(st.sampled_from(TWISTS), st.integers(-2, 5), coeff_lists)
def test_reduce_is_a_projection(twist, d, coeffs):
    c = random_cochain(twist, 2, d, coeffs)
    r = reduce_mod_coboundaries(c)
    assert reduce_mod_coboundaries(r) == r
    assert reduce_mod_coboundaries(c - r).is_zero()
    assert is_coboundary(c - r) is not None


@given(st.integers(-1, 5), coeff_lists)
def test_jordan_one_cocycles_have_canonical_form(d, coeffs):
    basis = degree_piece(J, 1, d).representatives
    c = Cochain.zero(J, 1)
    for rep, k in zip(basis, coeffs):
        c = c + rep.scale(k)
    u = random_cochain(J, 0, d, coeffs[::-1])
    c = c + hom_differential(u)
    alpha, p, w = derivation_canonical_form(c)
    assert reassemble_derivation(J, alpha, p, w) == c
