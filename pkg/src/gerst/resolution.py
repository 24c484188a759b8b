"""
The total complex K = P (x)_tau Q resolving R = A (x)_tau B, and the flipped
complex Q (x)_{tau^-1} P.

Each P_p (x) Q_q is free of rank one over R^e on e_p (x) e'_q, so an element is
stored canonically as ``{(mL, (p, q), mR): c}`` with mL, mR normal monomials
of R.  The differential is computed in natural coordinates

    (a, a2, b, b2)  <->  u^a e_p u^a2 (x) v^b f_q v^b2

(u the letter of the first factor, v of the second) and converted back.  The
flipped complex is the same construction with the letters swapped; its
monomials are in the y-first basis y^j x^i, keyed ``(j, i)``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .algebra import ONE, AlgebraElement, add_term, twisted_algebra
from .koszul import lift_twist
from .linalg import Echelon, kernel, solve
from .report import Report

GENERATORS = {0: [(0, 0)], 1: [(0, 1), (1, 0)], 2: [(1, 1)]}
ALL_GENERATORS = [g for k in (0, 1, 2) for g in GENERATORS[k]]
UNIT = (0, 0)


def gen_degree(g):
    return g[0] + g[1]


def gen_name(g, flipped=False):
    p, q = g
    return f"e{p}'*e{q}" if flipped else f"e{p}*e{q}'"


def parse_gen(text):
    """Accepts forms like ``e1*e0'``, ``e1⊗e0'`` or ``e1 e0'``."""
    s = text.replace("⊗", "*").replace(" ", "").replace("_", "")
    for g in ALL_GENERATORS:
        if s in (f"e{g[0]}*e{g[1]}'", f"e{g[0]}e{g[1]}'"):
            return g
    raise ValueError(f"unknown generator {text!r}")


def monomials(n):
    """Normal monomials of total degree n."""
    return [(i, n - i) for i in range(n, -1, -1)]


class TwistedResolution:
    """Canonical coordinates and differential of the twisted tensor product resolution."""

    def __init__(self, twist, flipped=False):
        self.twist = twist
        self.flipped = flipped
        self.algebra = twisted_algebra(twist)
        table = lift_twist(twist)
        if flipped:
            self.ring = self.algebra.opposite
            self.left, self.right = table.A_Q_inv, table.B_P_inv
        else:
            self.ring = self.algebra
            self.left, self.right = table.B_P, table.A_Q
        self._nat_right = {}
        self._nat = {}
        self._C = {}
        self._d = {}

    def __repr__(self):
        kind = "flipped" if self.flipped else "forward"
        return f"TwistedResolution({self.twist}, {kind})"

    # ring conversions ---------------------------------------------------

    def to_ring(self, r):
        """Dict of monomials in this complex's basis from an AlgebraElement or dict."""
        if isinstance(r, AlgebraElement):
            return self.algebra.tau_inv(r.terms) if self.flipped else dict(r.terms)
        return dict(r)

    def to_algebra(self, terms):
        """AlgebraElement (x-first) from a dict in this complex's basis."""
        return AlgebraElement(self.algebra, self.algebra.tau(terms) if self.flipped else terms)

    def _ycount(self, nat_key):
        a, a2, b, b2 = nat_key
        return a + a2 if self.flipped else b + b2

    # natural coordinates ------------------------------------------------

    def natural(self, key):
        """Natural coordinates of the basis element mL (g) mR."""
        hit = self._nat.get(key)
        if hit is not None:
            return hit
        (i, j), g, mR = key
        out = {}
        for (a, a2, b, b2), c in self._natural_right(g, mR).items():
            for ((a_, a2_), t), c2 in self.left.cross(g[0], j, (a, a2)).items():
                add_term(out, (a_ + i, a2_, b + t, b2), c * c2)
        self._nat[key] = out
        return out

    def _natural_right(self, g, mR):
        key = (g, mR)
        hit = self._nat_right.get(key)
        if hit is None:
            k, l = mR
            hit = {}
            for (t, (b, b2)), c in self.right.cross(g[1], k, (0, 0)).items():
                add_term(hit, (0, t, b, b2 + l), c)
            self._nat_right[key] = hit
        return hit

    def canonical(self, g, nat):
        """Canonical form of a natural element of P_p (x) Q_q, g = (p, q)."""
        out = {}
        for (a, a2, b, b2), c in nat.items():
            for ((i, j), gg, (k, l)), c2 in self._core(g, a2, b).items():
                add_term(out, ((i + a, j), gg, (k, l + b2)), c * c2)
        return out

    def _core(self, g, a2, b):
        """Canonical form of e_p u^a2 (x) v^b f_q, by triangular recursion."""
        key = (g, a2, b)
        hit = self._C.get(key)
        if hit is not None:
            return hit
        top = ((0, b), g, (a2, 0))
        nat = dict(self.natural(top))
        lead_key = (0, a2, b, 0)
        lead = nat.pop(lead_key)
        out = {top: 1 / lead}
        ymax = self._ycount(lead_key)
        for nk, c in nat.items():
            assert self._ycount(nk) < ymax, "crossing did not lower the y-count"
            for ck, c2 in self.canonical(g, {nk: ONE}).items():
                add_term(out, ck, -c * c2 / lead)
        self._C[key] = out
        return out

    # bimodule structure -------------------------------------------------

    def sandwich(self, left, el, right):
        """left * el * right for ring dicts left, right."""
        out = {}
        mul = self.ring.mono_mul
        for (mL, g, mR), c in el.items():
            for l, cl in left.items():
                for mL2, c1 in mul(l, mL).items():
                    for r, cr in right.items():
                        for mR2, c2 in mul(mR, r).items():
                            add_term(out, (mL2, g, mR2), c * cl * cr * c1 * c2)
        return out

    def left_action(self, r, el):
        return self.sandwich(self.to_ring(r), el, {UNIT: ONE})

    def right_action(self, el, r):
        return self.sandwich({UNIT: ONE}, el, self.to_ring(r))

    # differential and augmentation --------------------------------------

    def differential_of_generator(self, g):
        hit = self._d.get(g)
        if hit is not None:
            return hit
        p, q = g
        out = {}
        if p == 1:
            for k, c in self.canonical((0, q), {(1, 0, 0, 0): ONE, (0, 1, 0, 0): -ONE}).items():
                add_term(out, k, c)
        if q == 1:
            s = -ONE if p else ONE
            for k, c in self.canonical((p, 0), {(0, 0, 1, 0): s, (0, 0, 0, 1): -s}).items():
                add_term(out, k, c)
        self._d[g] = out
        return out

    def differential(self, el):
        out = {}
        mul = self.ring.mono_mul
        for (mL, g, mR), c in el.items():
            for (nL, h, nR), c2 in self.differential_of_generator(g).items():
                for l, c3 in mul(mL, nL).items():
                    for r, c4 in mul(nR, mR).items():
                        add_term(out, (l, h, r), c * c2 * c3 * c4)
        return out

    def augmentation(self, el):
        """mu(mL (e0 (x) e'0) mR) = mL mR, as a dict in this complex's basis."""
        out = {}
        for (mL, g, mR), c in el.items():
            if g != UNIT:
                raise ValueError("augmentation undefined above degree 0")
            for m, c2 in self.ring.mono_mul(mL, mR).items():
                add_term(out, m, c * c2)
        return out

    def basis(self, k, n):
        """Canonical basis keys of homological degree k and internal degree n."""
        keys = []
        for g in GENERATORS[k]:
            rest = n - k
            for dl in range(rest + 1):
                for mL in monomials(dl):
                    for mR in monomials(rest - dl):
                        keys.append((mL, g, mR))
        return keys


@lru_cache(maxsize=None)
def resolution(twist, flipped=False):
    return TwistedResolution(twist, flipped)


def total_differential(el, twist):
    return resolution(twist).differential(el)


def flipped_differential(el, twist):
    return resolution(twist, True).differential(el)


def left_action(r, el, twist):
    return resolution(twist).left_action(r, el)


def right_action(el, r, twist):
    return resolution(twist).right_action(el, r)


def generator(g, coeff=ONE):
    return {(UNIT, g, UNIT): coeff}


# exactness --------------------------------------------------------------

def _rank_and_kernel(res, cols, order):
    ech = Echelon(order)
    nul = 0
    for col in cols:
        if not ech.add(col):
            nul += 1
    return len(ech), nul


def verify_exactness(twist, N=8, flipped=False):
    """Homology of the truncated complex, one internal degree at a time."""
    if N < 2:
        raise ValueError("degree bound must be at least 2")
    res = resolution(twist, flipped)
    report = Report(f"exactness ({twist}{', flipped' if flipped else ''}, N={N})")
    for n in range(N + 1):
        B0, B1, B2 = res.basis(0, n), res.basis(1, n), res.basis(2, n)
        mu_cols = [res.augmentation({k: ONE}) for k in B0]
        d1_cols = [res.differential({k: ONE}) for k in B1]
        d2_cols = [res.differential({k: ONE}) for k in B2]
        r_mu, _ = _rank_and_kernel(res, mu_cols, monomials(n))
        r1, _ = _rank_and_kernel(res, d1_cols, B0)
        r2, _ = _rank_and_kernel(res, d2_cols, B1)
        report.check(r_mu == n + 1, f"augmentation not onto R_{n}")
        report.check(len(B0) - r_mu == r1, f"H_0 nonzero in degree {n}")
        report.check(len(B1) - r1 == r2, f"H_1 nonzero in degree {n}")
        report.check(len(B2) == r2, f"H_2 nonzero in degree {n}")
        for k, col in zip(B1, d1_cols):
            report.check(not res.augmentation(col), lambda: f"mu d != 0 on {k}")
        for k, col in zip(B2, d2_cols):
            report.check(not res.differential(col), lambda: f"d d != 0 on {k}")
    return report


def verify_bimodule_axioms(twist, N=3, flipped=False):
    """(r el) s = r (el s), 1 el = el and (rs) el = r (s el) on monomials of degree <= N."""
    res = resolution(twist, flipped)
    report = Report(f"bimodule axioms ({twist}{', flipped' if flipped else ''})")
    monos = [m for n in range(N + 1) for m in monomials(n)]
    for g in ALL_GENERATORS:
        el = generator(g)
        report.check(res.sandwich({UNIT: ONE}, el, {UNIT: ONE}) == el, "unit fails")
        for r, s in product(monos, repeat=2):
            rd, sd = {r: ONE}, {s: ONE}
            a = res.sandwich({UNIT: ONE}, res.sandwich(rd, el, {UNIT: ONE}), sd)
            b = res.sandwich(rd, res.sandwich({UNIT: ONE}, el, sd), {UNIT: ONE})
            report.check(a == b, lambda: f"left and right actions do not commute at {r}, {s}, {g}")
            rs = res.ring.mono_mul(r, s)
            a = res.sandwich(rs, el, {UNIT: ONE})
            b = res.sandwich(rd, res.sandwich(sd, el, {UNIT: ONE}), {UNIT: ONE})
            report.check(a == b, lambda: f"left action not associative at {r}, {s}, {g}")
            # natural coordinates must agree with acting letter by letter
            nat = res.natural((r, g, s))
            report.check(res.canonical(g, nat) == {(r, g, s): ONE},
                         lambda: f"coordinate round trip fails at {(r, g, s)}")
    return report


# the chain lift Q (x)_{tau^-1} P -> P (x)_tau Q ---------------------------

def flipped_to_forward(el, twist, lift):
    """Apply a chain lift given on generators to a flipped canonical element."""
    alg = twisted_algebra(twist)
    fwd = resolution(twist)
    out = {}
    for (mL, g, mR), c in el.items():
        image = lift[g]
        if not image:
            continue
        part = fwd.sandwich(alg.tau({mL: ONE}), image, alg.tau({mR: ONE}))
        for k, v in part.items():
            add_term(out, k, c * v)
    return out


class ChainLift(dict):
    """tau_n on the flipped generators: ``{flipped gen: forward canonical element}``."""

    free_parameters = 0

    def value(self, g):
        return self[g]


@lru_cache(maxsize=None)
def solve_chain_lift(twist):
    """Solve d tau_n = tau_{n-1} d-hat on generators, starting from tau_0 = 1."""
    fwd, flip = resolution(twist), resolution(twist, True)
    lift = ChainLift({UNIT: generator(UNIT)})
    for n in (1, 2):
        for h in GENERATORS[n]:
            target = flipped_to_forward(flip.differential(generator(h)), twist, lift)
            unknowns = GENERATORS[n]
            cols = [fwd.differential(generator(g)) for g in unknowns]
            order = sorted({k for col in cols for k in col} | set(target))
            sol = solve(cols, target, order)
            if sol is None:
                raise ArithmeticError(f"no chain lift exists at {gen_name(h, True)}")
            lift.free_parameters += len(kernel(cols, order))
            lift[h] = {(UNIT, unknowns[k], UNIT): c for k, c in sol.items() if c}
    return lift


def verify_chain_lift(twist, N=8):
    """d tau = tau d-hat on all flipped basis elements of internal degree <= N."""
    lift = solve_chain_lift(twist)
    fwd, flip = resolution(twist), resolution(twist, True)
    report = Report(f"chain lift ({twist})")
    for n in range(N + 1):
        for k in (1, 2):
            for key in flip.basis(k, n):
                el = {key: ONE}
                lhs = fwd.differential(flipped_to_forward(el, twist, lift))
                rhs = flipped_to_forward(flip.differential(el), twist, lift)
                report.check(lhs == rhs, lambda: f"chain lift fails on {key}")
        for key in flip.basis(0, n):
            el = {key: ONE}
            lhs = fwd.to_algebra(fwd.augmentation(flipped_to_forward(el, twist, lift)))
            rhs = flip.to_algebra(flip.augmentation(el))
            report.check(lhs == rhs, lambda: f"chain lift does not lift the identity on {key}")
    return report


@lru_cache(maxsize=None)
def inverse_chain_lift(twist):
    """tau_n^-1 on forward generators, as {forward gen: {flipped gen: coeff}}."""
    lift = solve_chain_lift(twist)
    out = {}
    for n in (0, 1, 2):
        gens = GENERATORS[n]
        cols = [{k[1]: c for k, c in lift[h].items()} for h in gens]
        for g in gens:
            sol = solve(cols, {g: ONE}, gens)
            if sol is None:
                raise ArithmeticError("chain lift is not invertible on generators")
            out[g] = {gens[k]: c for k, c in sol.items() if c}
    return out


# the diagonal K -> K (x)_R K ----------------------------------------------

_SPLITS = {0: [(0, 0)], 1: [(0, 1), (1, 0)]}


def _apply_table(table, ring, el):
    out = {}
    for (mL, g, mR), c in el.items():
        for k, v in tensor_sandwich(ring, {mL: ONE}, table[g], {mR: ONE}).items():
            add_term(out, k, c * v)
    return out


@lru_cache(maxsize=None)
def _composite_generators(twist):
    """Delta'_P (x) Delta'_Q followed by tau^-1 on the middle pair, on generators."""
    inv = inverse_chain_lift(twist)
    table = {}
    for g in ALL_GENERATORS:
        out = {}
        p, q = g
        for p1, p2 in _SPLITS[p]:
            for q1, q2 in _SPLITS[q]:
                for (s, t), c in inv[(p2, q1)].items():
                    add_term(out, (UNIT, (p1, s), UNIT, (t, q2), UNIT), c)
        table[g] = out
    return table


@lru_cache(maxsize=None)
def delta_correction(twist):
    """Terms added to the composite so that Delta commutes with the differentials.

    Generators sit in internal degree equal to their homological degree, so a
    correction on g lives in the span of generator pairs of total degree |g|;
    the chain-map equation is solved there degree by degree.
    """
    res = resolution(twist)
    table = dict(_composite_generators(twist))
    corrections = {}
    for g in ALL_GENERATORS:
        target = _apply_table(table, res.ring, res.differential(generator(g)))
        have = tensor_differential(table[g], twist)
        residual = dict(target)
        for k, c in have.items():
            add_term(residual, k, -c)
        if not residual:
            continue
        pairs = [(a, b) for a in ALL_GENERATORS for b in ALL_GENERATORS
                 if gen_degree(a) + gen_degree(b) == gen_degree(g) and UNIT not in (a, b)]
        cols = [tensor_differential({(UNIT, a, UNIT, b, UNIT): ONE}, twist) for a, b in pairs]
        order = sorted({k for col in cols for k in col} | set(residual))
        sol = solve(cols, residual, order)
        if sol is None:
            raise ArithmeticError(f"no diagonal map through {gen_name(g)}")
        corr = {(UNIT, pairs[k][0], UNIT, pairs[k][1], UNIT): c for k, c in sol.items() if c}
        corrections[g] = corr
        table[g] = dict(table[g])
        for k, c in corr.items():
            add_term(table[g], k, c)
    return corrections


@lru_cache(maxsize=None)
def _delta_generators(twist):
    table = {g: dict(v) for g, v in _composite_generators(twist).items()}
    for g, corr in delta_correction(twist).items():
        for k, c in corr.items():
            add_term(table[g], k, c)
    return table


def tensor_sandwich(ring, left, el, right):
    """left * el * right on arity-n tensor elements (outer monomials only)."""
    out = {}
    mul = ring.mono_mul
    for key, c in el.items():
        for l, cl in left.items():
            for m0, c1 in mul(l, key[0]).items():
                for r, cr in right.items():
                    for mn, c2 in mul(key[-1], r).items():
                        add_term(out, (m0,) + key[1:-1] + (mn,), c * cl * cr * c1 * c2)
    return out


def delta(el, twist):
    """Diagonal map K -> K (x)_R K, keys (m0, g1, m1, g2, m2)."""
    return _apply_table(_delta_generators(twist), twisted_algebra(twist), el)


def delta_composite(el, twist):
    """The uncorrected composite (1 (x) tau^-1 (x) 1)(Delta'_P (x) Delta'_Q)."""
    return _apply_table(_composite_generators(twist), twisted_algebra(twist), el)


def delta_tensor_left(t, twist):
    """(Delta (x) 1) on an arity-2 element."""
    alg = twisted_algebra(twist)
    table = _delta_generators(twist)
    out = {}
    for (m0, g1, m1, g2, m2), c in t.items():
        for k, v in tensor_sandwich(alg, {m0: ONE}, table[g1], {m1: ONE}).items():
            add_term(out, k + (g2, m2), c * v)
    return out


def delta_tensor_right(t, twist):
    """(1 (x) Delta) on an arity-2 element."""
    alg = twisted_algebra(twist)
    table = _delta_generators(twist)
    out = {}
    for (m0, g1, m1, g2, m2), c in t.items():
        for k, v in tensor_sandwich(alg, {m1: ONE}, table[g2], {m2: ONE}).items():
            add_term(out, (m0, g1) + k, c * v)
    return out


def delta2(el, twist):
    """(Delta (x) 1) Delta, keys (m0, g1, m1, g2, m2, g3, m3)."""
    return delta_tensor_left(delta(el, twist), twist)


def _mu_slot(t, slot, ring):
    """Apply mu to the generator in position ``slot`` (0-based) of a tensor key."""
    out = {}
    i = 2 * slot + 1
    for key, c in t.items():
        if key[i] != UNIT:
            continue
        for m, c2 in ring.mono_mul(key[i - 1], key[i + 1]).items():
            add_term(out, key[:i - 1] + (m,) + key[i + 2:], c * c2)
    return out


def tensor_differential(t, twist):
    """(d (x) 1 + 1 (x) d) on arity-2 elements, Koszul sign on the second slot."""
    res = resolution(twist)
    alg = res.algebra
    out = {}
    for (m0, g1, m1, g2, m2), c in t.items():
        for (nL, h, nR), v in res.differential({(m0, g1, m1): ONE}).items():
            add_term(out, (nL, h, nR, g2, m2), c * v)
        s = -c if gen_degree(g1) % 2 else c
        for (nL, h, nR), v in res.differential({(m1, g2, m2): ONE}).items():
            add_term(out, (m0, g1, nL, h, nR), s * v)
    return out


def verify_coalgebra(twist, N=8):
    """Coassociativity, counit and chain-map laws of Delta on basis elements of degree <= N."""
    res = resolution(twist)
    alg = res.algebra
    report = Report(f"coalgebra ({twist}, N={N})")
    for g, corr in delta_correction(twist).items():
        report.notes.append(f"diagonal on {gen_name(g)} corrected by {corr}")
    for n in range(N + 1):
        for k in (0, 1, 2):
            for key in res.basis(k, n):
                el = {key: ONE}
                d = delta(el, twist)
                report.check(delta_tensor_left(d, twist) == delta_tensor_right(d, twist),
                             lambda: f"not coassociative on {key}")
                report.check(_mu_slot(d, 0, alg) == el, lambda: f"left counit fails on {key}")
                report.check(_mu_slot(d, 1, alg) == el, lambda: f"right counit fails on {key}")
                report.check(tensor_differential(d, twist) == delta(res.differential(el), twist),
                             lambda: f"Delta is not a chain map on {key}")
    return report
