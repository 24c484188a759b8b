"""
Two-term Koszul resolutions of k[u] as a bimodule,

    0 -> A e_1 A --d--> A e_0 A --mu--> A -> 0,    d(e_1) = u e_0 - e_0 u,

and the lifted twisting maps that let the other algebra's generator cross
them.

An element of P_p is a dict ``{(a, b): c}`` standing for sum c * u^a e_p u^b;
the degree p travels separately.  P_2 = 0, so there is no degree-2 data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .algebra import ONE, ZERO, add_term, twisted_algebra
from .linalg import Echelon, kernel, rank_of_vectors, solve
from .report import Report


def p_differential(p, el):
    """d(u^a e_1 u^b) = u^(a+1) e_0 u^b - u^a e_0 u^(b+1); zero on degree 0."""
    if p == 0:
        return {}
    out = {}
    for (a, b), c in el.items():
        add_term(out, (a + 1, b), c)
        add_term(out, (a, b + 1), -c)
    return out


q_differential = p_differential


def augment(p, el):
    """u^a e_0 u^b -> u^(a+b), returned as {power: coeff}."""
    if p != 0:
        raise ValueError("augmentation undefined above degree 0")
    out = {}
    for (a, b), c in el.items():
        add_term(out, a + b, c)
    return out


augment_P = augment_Q = augment


def koszul_homotopy(t, left=0, right=0):
    """Contracting homotopy on u^left (e_0 (x)_A u^t e_0) u^right, landing in P_1."""
    return {(left + i, t - i - 1 + right): ONE for i in range(t)}


koszul_homotopy_P = koszul_homotopy_Q = koszul_homotopy


class Crossing:
    """Powers of a foreign letter v moving across P_p = A e_p A, A = k[u].

    ``side="left"`` realises B (x) P_p -> P_p (x) B:  v^s (x) m -> sum m' (x) v^t,
    keyed ``((a, b), t)``.  ``side="right"`` realises P_p (x) B -> B (x) P_p:
    m (x) v^s -> sum v^t (x) m', keyed ``(t, (a, b))``.

    ``ring`` performs the plain crossings v u^a (left; ring letters (u, v)) or
    u^a v (right; ring letters (v, u)).  ``rule`` is the value on a single v
    next to the bare generator e_1; for e_0 the crossing is the plain one.
    Everything else follows from the compatibility diagram: cross the letters
    one at a time, and within a letter cross u^a, then e_p, then u^b.
    """

    def __init__(self, ring, side, rule):
        if side not in ("left", "right"):
            raise ValueError(side)
        self.ring = ring
        self.side = side
        self.rule = dict(rule)
        self._memo = {}

    def cross(self, p, s, m):
        """Crossing of v^s over the basis element m = (a, b) of P_p."""
        key = (p, s, m)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if s == 0:
            out = {(m, 0) if self.side == "left" else (0, m): ONE}
        elif s == 1:
            out = self._cross_one(p, m)
        else:
            out = {}
            for k1, c1 in self.cross(p, 1, m).items():
                m1, t1 = (k1 if self.side == "left" else k1[::-1])
                for k2, c2 in self.cross(p, s - 1, m1).items():
                    m2, t2 = (k2 if self.side == "left" else k2[::-1])
                    t = t1 + t2
                    add_term(out, (m2, t) if self.side == "left" else (t, m2), c1 * c2)
        self._memo[key] = out
        return out

    def _bare(self, p, d):
        if d == 0 or p == 0:
            return {((0, 0), d) if self.side == "left" else (d, (0, 0)): ONE}
        return self.cross(p, d, (0, 0)) if d > 1 else self.rule

    def _cross_one(self, p, m):
        a, b = m
        out = {}
        if self.side == "left":
            # v u^a -> u^c v^d, then v^d past e_p, then the remaining v's past u^b
            for (c, d), k1 in self.ring.swap(1, a).items():
                for ((al, be), g), k2 in self._bare(p, d).items():
                    for (c2, d2), k3 in self.ring.swap(g, b).items():
                        add_term(out, ((c + al, be + c2), d2), k1 * k2 * k3)
        else:
            # u^b v -> v^c u^d, then v^c past e_p, then past u^a
            for (c, d), k1 in self.ring.swap(b, 1).items():
                for (g, (al, be)), k2 in self._bare(p, c).items():
                    for (c2, d2), k3 in self.ring.swap(a, g).items():
                        add_term(out, (c2, (d2 + al, be + d)), k1 * k2 * k3)
        return out

    def apply(self, p, s, el):
        out = {}
        for m, c in el.items():
            for k, v in self.cross(p, s, m).items():
                add_term(out, k, c * v)
        return out


def _ansatz(side):
    """Basis of the degree-one target for a single crossing at e_1."""
    if side == "left":
        return [((1, 0), 0), ((0, 1), 0), ((0, 0), 1)]
    return [(0, (1, 0)), (0, (0, 1)), (1, (0, 0))]


def _key_parts(side, k):
    return k if side == "left" else (k[1], k[0])


def _solve_rule(columns, target, order, unknowns, what):
    sol = solve(columns, target, order)
    if sol is None:
        raise ArithmeticError(f"no lift exists for {what}")
    free = len(kernel(columns, order))
    return {unknowns[k]: c for k, c in sol.items() if c}, free


def _solve_chain_rule(ring, side):
    """Single-step rule at e_1 making the crossing a chain map over the e_0 crossing."""
    plain = Crossing(ring, side, {})
    unknowns = _ansatz(side)
    columns = []
    for k in unknowns:
        m, t = _key_parts(side, k)
        col = {}
        for mm, c in p_differential(1, {m: ONE}).items():
            add_term(col, (mm, t), c)
        columns.append(col)
    target = {}
    for mm, c in p_differential(1, {(0, 0): ONE}).items():
        for k, v in plain.cross(0, 1, mm).items():
            add_term(target, _key_parts(side, k), c * v)
    order = sorted({k for col in columns for k in col} | set(target))
    return _solve_rule(columns, target, order, unknowns, f"{side} crossing")


def _solve_inverse_rule(forward, inv_side):
    """Single-step inverse rule: the preimage of the bare crossing under ``forward``."""
    unknowns = _ansatz(inv_side)
    columns = []
    for k in unknowns:
        m, t = _key_parts(inv_side, k)
        col = {}
        for kk, c in forward.cross(1, t, m).items():
            add_term(col, _key_parts(forward.side, kk), c)
        columns.append(col)
    target = {((0, 0), 1): ONE}
    order = sorted({k for col in columns for k in col} | set(target))
    return _solve_rule(columns, target, order, unknowns, f"inverse {inv_side} crossing")


@dataclass
class TwistTable:
    """Lifted twisting maps for the Koszul resolutions P of k[x] and Q of k[y].

    ``B_P``: tau_{B,p}, y crossing P from the left.   ``A_Q``: tau_{q,A}, x
    crossing Q from the right.  ``B_P_inv`` and ``A_Q_inv`` are their inverses
    (y leaving P to the left, x leaving Q to the right).
    """

    twist: object
    B_P: Crossing
    A_Q: Crossing
    B_P_inv: Crossing
    A_Q_inv: Crossing
    free_parameters: int = 0


@lru_cache(maxsize=None)
def lift_twist(twist):
    """Solve the chain-map equations for the single-crossing rules at e_1, e'_1."""
    alg = twisted_algebra(twist)
    rule_B, free1 = _solve_chain_rule(alg, "left")
    rule_A, free2 = _solve_chain_rule(alg, "right")
    B_P = Crossing(alg, "left", rule_B)
    A_Q = Crossing(alg, "right", rule_A)
    rule_B_inv, free3 = _solve_inverse_rule(B_P, "right")
    rule_A_inv, free4 = _solve_inverse_rule(A_Q, "left")
    B_P_inv = Crossing(alg.opposite, "right", rule_B_inv)
    A_Q_inv = Crossing(alg.opposite, "left", rule_A_inv)
    return TwistTable(twist, B_P, A_Q, B_P_inv, A_Q_inv, free1 + free2 + free3 + free4)


def expected_rules(twist):
    """Closed forms of the single-step rules for yx -> q xy + alpha x^2."""
    q, al = twist.q, twist.alpha
    tau_B1 = {((0, 0), 1): q, ((1, 0), 0): al, ((0, 1), 0): al}
    tau_1A = {(1, (0, 0)): q}
    tau_B1_inv = {(1, (0, 0)): 1 / q, (0, (1, 0)): -al / q, (0, (0, 1)): -al / q}
    tau_1A_inv = {((0, 0), 1): 1 / q}
    return {k: {kk: Fraction(v) for kk, v in d.items() if v}
            for k, d in dict(tau_B1=tau_B1, tau_1A=tau_1A,
                             tau_B1_inv=tau_B1_inv, tau_1A_inv=tau_1A_inv).items()}


def _basis(N):
    for s, a, b in product(range(N + 1), repeat=3):
        if s + a + b <= N:
            yield s, (a, b)


def verify_crossing(crossing, name, N, inverse=None):
    side = crossing.side
    report = Report(name)
    ring = crossing.ring
    for s, m in _basis(N):
        a, b = m
        # chain map: (d (x) 1) cross = cross (1 (x) d)
        lhs = {}
        for k, c in crossing.cross(1, s, m).items():
            mm, t = _key_parts(side, k)
            for dm, dc in p_differential(1, {mm: ONE}).items():
                add_term(lhs, (dm, t), c * dc)
        rhs = {}
        for dm, dc in p_differential(1, {m: ONE}).items():
            for k, c in crossing.cross(0, s, dm).items():
                add_term(rhs, _key_parts(side, k), c * dc)
        report.check(lhs == rhs, lambda: f"chain map fails at s={s}, m={m}: {lhs} != {rhs}")
        # lifts the plain twist through the augmentation
        aug = {}
        for k, c in crossing.cross(0, s, m).items():
            (a2, b2), t = _key_parts(side, k)
            add_term(aug, (a2 + b2, t), c)
        if side == "left":
            plain = {(c_, d_): v for (c_, d_), v in ring.swap(s, a + b).items()}
        else:
            plain = {(d_, c_): v for (c_, d_), v in ring.swap(a + b, s).items()}
        report.check(aug == plain, lambda: f"does not lift tau at s={s}, m={m}")
        # letters cross one at a time, in either grouping
        for p in (0, 1):
            for s1 in range(1, s):
                two = {}
                for k1, c1 in crossing.cross(p, s1, m).items():
                    m1, t1 = _key_parts(side, k1)
                    for k2, c2 in crossing.cross(p, s - s1, m1).items():
                        m2, t2 = _key_parts(side, k2)
                        add_term(two, (m2, t1 + t2), c1 * c2)
                one = {}
                for k, c in crossing.cross(p, s, m).items():
                    add_term(one, _key_parts(side, k), c)
                report.check(one == two, lambda: f"crossing v^{s} as v^{s1} v^{s - s1} differs at p={p}, m={m}")
            if inverse is not None:
                back = {}
                for k, c in crossing.cross(p, s, m).items():
                    mm, t = _key_parts(side, k)
                    for kk, cc in inverse.cross(p, t, mm).items():
                        add_term(back, _key_parts(inverse.side, kk), c * cc)
                report.check(back == {(m, s): ONE}, lambda: f"inverse fails at p={p}, s={s}, m={m}")
    # bijective in every internal degree
    for p in (0, 1):
        for n in range(N + 1):
            cols = []
            for s, m in _basis(n):
                if s + sum(m) == n:
                    cols.append({_key_parts(side, k): c for k, c in crossing.cross(p, s, m).items()})
            order = sorted({k for col in cols for k in col})
            report.check(rank_of_vectors(cols, order) == len(cols),
                         lambda: f"not bijective for p={p} in degree {n}")
    return report


def verify_compatibility(twist, N=8, table=None):
    """Chain-map, compatibility and bijectivity checks for the lifted twists."""
    if N < 2:
        raise ValueError("degree bound must be at least 2")
    table = table or lift_twist(twist)
    report = Report(f"resolution compatibility ({twist})")
    report.merge(verify_crossing(table.B_P, "tau_{B,*}", N, table.B_P_inv))
    report.merge(verify_crossing(table.A_Q, "tau_{*,A}", N, table.A_Q_inv))
    report.merge(verify_crossing(table.B_P_inv, "tau_{B,*}^-1", N, table.B_P))
    report.merge(verify_crossing(table.A_Q_inv, "tau_{*,A}^-1", N, table.A_Q))
    return report


def corrupted_table(twist, drop=((1, 0), 0)):
    """A copy of the lifted table with one term removed from tau_{B,1}(y (x) e_1)."""
    good = lift_twist(twist)
    rule = {k: v for k, v in good.B_P.rule.items() if k != drop}
    bad = Crossing(good.B_P.ring, "left", rule)
    return TwistTable(twist, bad, good.A_Q, good.B_P_inv, good.A_Q_inv)
