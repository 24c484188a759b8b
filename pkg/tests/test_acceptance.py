"""The seven acceptance criteria, one test each, with one pass/fail line per criterion.

Each test starts from cold caches so the runtime limits are measured honestly.
Criterion 4 has a documented conflict with criterion 3 (see the Delta test).
"""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from gerst import clear_caches
from gerst.algebra import TwistSpec, check_twist_axioms
from gerst.bracket import (derivation_commutator_oracle, engine, hh_representatives,
                           verify_homotopy_equation, verify_lie, verify_schouten,
                           verify_sigma_condition)
from gerst.cohomology import (Cochain, degree_piece, derivation_canonical_form, hh_dimensions,
                              is_coboundary, reassemble_derivation)
from gerst.koszul import verify_compatibility
from gerst.resolution import (delta, delta_composite, generator, solve_chain_lift,
                              verify_chain_lift, verify_coalgebra, verify_exactness)

J = TwistSpec(1, 1)
U = (0, 0)
G00, G01, G10, G11 = (0, 0), (0, 1), (1, 0), (1, 1)


def record(n, ok, detail, seconds):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({seconds:.2f} s) {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


class Timer:
    def __enter__(self):
        clear_caches()
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def test_criterion_1_worked_bracket():
    f = Cochain(J, 1, {G01: {(0, 1): 1}, G10: {(1, 0): 1}})
    g = Cochain(J, 2, {G11: {(0, 3): 1}})
    with Timer() as t:
        prov = {}
        result = engine(J).bracket(f, g, provenance=prov)
        a, b = prov[G11]
    ok = (a.terms == {(0, 3): 3} and b.terms == {(0, 3): 2} and result == g and t.seconds < 1)
    record(1, ok, f"f psi_g = {a}, g psi_f = {b}, [f,g] = {result.value(G11)}", t.seconds)
    assert ok


def test_criterion_2_hh_jordan():
    with Timer() as t:
        report = hh_dimensions(J, 10)
    want0 = {d: int(d == 0) for d in range(0, 11)}
    want1 = {-1: 1, 0: 2, **{d: 1 for d in range(1, 11)}}
    want2 = {d: 1 for d in range(-2, 11)}
    ok = (report.dims(0) == want0 and report.dims(1) == want1 and report.dims(2) == want2
          and t.seconds < 10)
    record(2, ok, f"HH^1 {report.dims(1)}, HH^2 all ones from d=-2", t.seconds)
    assert ok


def structural_suites(twist, N=8):
    return [
        check_twist_axioms(twist, N),
        verify_compatibility(twist, N),
        verify_exactness(twist, N),
        verify_exactness(twist, N, flipped=True),
        verify_chain_lift(twist, N),
        verify_sigma_condition(twist, N),
        verify_homotopy_equation(twist, N),
        verify_coalgebra(twist, N),
    ]


def test_criterion_3_structural_suites():
    with Timer() as t:
        reports = []
        for twist in (J, TwistSpec(1, 0), TwistSpec(2, 0)):
            reports += structural_suites(twist)
    failed = [r.name for r in reports if not r.passed]
    ok = not failed and t.seconds < 60
    record(3, ok, f"{len(reports)} suites at N=8, failed: {failed or 'none'}", t.seconds)
    assert ok


DISPLAYS = {
    G00: {(U, G00, U, G00, U): 1},
    G10: {(U, G00, U, G10, U): 1, (U, G10, U, G00, U): 1},
    G01: {(U, G01, U, G00, U): 1, (U, G00, U, G01, U): 1},
    G11: {(U, G00, U, G11, U): 1, (U, G01, U, G10, U): -1,
          (U, G10, U, G01, U): 1, (U, G11, U, G00, U): 1},
}


def test_criterion_4_chain_lift():
    clear_caches()
    lift = solve_chain_lift(J)
    ok = (lift[G00] == {(U, G00, U): 1} and lift[G10] == {(U, G01, U): 1}
          and lift[G01] == {(U, G10, U): 1} and lift[G11] == {(U, G11, U): -1})
    composite_ok = all(delta_composite(generator(g), J) == v for g, v in DISPLAYS.items())
    assert ok and composite_ok


@pytest.mark.xfail(strict=True, reason="the displayed Delta(e1 e1') is not a chain map; "
                                       "the production Delta adds (e1 e0') (x) (e1 e0')")
def test_criterion_4_delta_displays():
    with Timer() as t:
        lift = solve_chain_lift(J)
        mismatched = [g for g, v in DISPLAYS.items() if delta(generator(g), J) != v]
    lift_ok = lift[G11] == {(U, G11, U): -1}
    ok = lift_ok and not mismatched
    detail = ("chain lift exact; composite Delta equals the four displays, but the production "
              "Delta (a chain map) differs on e1*e1' by +(e1*e0')(x)(e1*e0')"
              if mismatched == [G11] else f"mismatch on {mismatched}")
    record(4, ok, detail, t.seconds)
    assert ok


def test_criterion_5_oracles():
    with Timer() as t:
        reps = hh_representatives(J, 1, 5)
        pairs = 0
        exact = 0
        bad = []
        for f in reps:
            for g in reps:
                diff = engine(J).bracket(f, g, reduce=False) - derivation_commutator_oracle(f, g)
                pairs += 1
                exact += diff.is_zero()
                if is_coboundary(diff) is None:
                    bad.append((f, g))
        schouten = verify_schouten(4)
    ok = not bad and schouten.passed
    record(5, ok, f"(a) {pairs - len(bad)}/{pairs} pairs agree ({exact} exactly); "
                  f"(b) {schouten.summary()}", t.seconds)
    assert ok


def test_criterion_6_lie_axioms():
    with Timer() as t:
        report = verify_lie(J, 5, jacobi_N=3, hh2_powers=5)
    record(6, report.passed, report.summary(), t.seconds)
    assert report.passed, report.failures[:3]


def test_criterion_7_derivation_round_trip():
    with Timer() as t:
        failures = []
        count = 0
        for d in range(-1, 7):
            for c in degree_piece(J, 1, d).representatives:
                count += 1
                try:
                    alpha, p, w = derivation_canonical_form(c)
                except ArithmeticError:
                    failures.append(c)
                    continue
                diff = reassemble_derivation(J, alpha, p, w) - c
                if is_coboundary(diff) is None:
                    failures.append(c)
    ok = not failures and count == 9
    record(7, ok, f"{count - len(failures)}/{count} HH^1 representatives round trip", t.seconds)
    assert ok
