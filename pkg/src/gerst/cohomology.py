"""
The hom complex Hom_{R^e}(K, R), its cohomology per internal degree, and the
classification of derivations of the Jordan plane.

Since each K_m is free on generators, an m-cochain is just a choice of value in
R for each generator of degree m.  Its internal degree is deg(value) - |g|.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ONE, AlgebraElement, add_term, format_terms, twisted_algebra
from .linalg import Echelon
from .resolution import GENERATORS, gen_name, monomials, parse_gen, resolution


class Cochain:
    """An m-cochain: ``values`` maps generators of degree m to dicts over x^i y^j."""

    __slots__ = ("twist", "degree", "values")

    def __init__(self, twist, degree, values=None):
        if not -1 <= degree <= 3:
            raise ValueError(f"homological degree {degree} is out of range")
        self.twist = twist
        self.degree = degree
        self.values = {}
        for g, v in (values or {}).items():
            if isinstance(g, str):
                g = parse_gen(g)
            if g not in GENERATORS.get(degree, []):
                raise ValueError(f"{gen_name(g)} is not a generator of degree {degree}")
            terms = v.terms if isinstance(v, AlgebraElement) else v
            terms = {m: Fraction(c) for m, c in terms.items() if c}
            if terms:
                self.values[g] = terms

    @classmethod
    def zero(cls, twist, degree):
        return cls(twist, degree)

    def value(self, g):
        return AlgebraElement(twisted_algebra(self.twist), self.values.get(g, {}))

    def is_zero(self):
        return not self.values

    def __bool__(self):
        return bool(self.values)

    def _combine(self, other, s):
        if self.degree != other.degree:
            raise ValueError("cochains of different degrees")
        out = {g: dict(v) for g, v in self.values.items()}
        for g, v in other.values.items():
            d = out.setdefault(g, {})
            for m, c in v.items():
                add_term(d, m, s * c)
        return Cochain(self.twist, self.degree, out)

    def __add__(self, other):
        return self._combine(other, ONE)

    def __sub__(self, other):
        return self._combine(other, -ONE)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return Cochain(self.twist, self.degree,
                       {g: {m: c * v for m, v in t.items()} for g, t in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.degree == other.degree and self.values == other.values

    def __hash__(self):
        return hash((self.degree, frozenset((g, frozenset(t.items())) for g, t in self.values.items())))

    def internal_degrees(self):
        return sorted({m[0] + m[1] - g[0] - g[1] for g, t in self.values.items() for m in t})

    def homogeneous_part(self, d):
        return Cochain(self.twist, self.degree,
                       {g: {m: c for m, c in t.items() if m[0] + m[1] - g[0] - g[1] == d}
                        for g, t in self.values.items()})

    def vector(self):
        return {(g, m): c for g, t in self.values.items() for m, c in t.items()}

    @classmethod
    def from_vector(cls, twist, degree, vec):
        values = {}
        for (g, m), c in vec.items():
            values.setdefault(g, {})[m] = c
        return cls(twist, degree, values)

    def to_dict(self):
        return {"hom_degree": self.degree,
                "values": {gen_name(g): format_terms(t) for g, t in sorted(self.values.items())}}

    def __repr__(self):
        inner = ", ".join(f"{gen_name(g)}: {format_terms(t)}" for g, t in sorted(self.values.items()))
        return f"Cochain[{self.degree}]({inner})"


def cochain_basis(twist, m, d):
    """Coordinates (g, monomial) of the m-cochains of internal degree d, pivot order.

    x-rich monomials come first so that images are eliminated there and
    y-powers survive as representatives.
    """
    if m < 0:
        return []
    keys = []
    n = d + m
    if n < 0:
        return []
    for g in GENERATORS[m]:
        for mono in monomials(n):
            keys.append((g, mono))
    return sorted(keys, key=lambda k: (-k[1][0], GENERATORS[m].index(k[0])))


def hom_differential(c):
    """(d* c)(g) = c(d g), with R acting on itself on both sides."""
    if c.degree >= 2:
        raise ValueError("top degree: there is no cochain of degree 3")
    res = resolution(c.twist)
    mul = res.ring.mul
    out = {}
    for h in GENERATORS[c.degree + 1]:
        val = {}
        for (nL, g, nR), coef in res.differential_of_generator(h).items():
            v = c.values.get(g)
            if v:
                for m, x in mul(mul({nL: ONE}, v), {nR: ONE}).items():
                    add_term(val, m, coef * x)
        out[h] = val
    return Cochain(c.twist, c.degree + 1, out)


def is_cocycle(c):
    return c.degree == 2 or hom_differential(c).is_zero()


@dataclass
class DegreePiece:
    """Cohomology in one bidegree (m, d)."""

    hom_degree: int
    internal_degree: int
    dimension: int
    representatives: list
    coboundaries: Echelon = field(repr=False)
    cocycle_dimension: int = 0

    def to_dict(self):
        return {"hom_degree": self.hom_degree, "internal_degree": self.internal_degree,
                "dimension": self.dimension,
                "representatives": [r.to_dict() for r in self.representatives]}


_pieces = {}


def degree_piece(twist, m, d):
    """Kernel of d* modulo image of d* in bidegree (m, d), with reduced representatives."""
    key = (twist, m, d)
    hit = _pieces.get(key)
    if hit is not None:
        return hit
    order = cochain_basis(twist, m, d)
    image = Echelon(order)
    for u in cochain_basis(twist, m - 1, d):
        du = hom_differential(Cochain.from_vector(twist, m - 1, {u: ONE}))
        image.add(du.vector(), {u: ONE})
    cocycles = []
    if m == 2:
        cocycles = [{k: ONE} for k in order]
    else:
        target = cochain_basis(twist, m + 1, d)
        ech = Echelon(target)
        for k in order:
            dk = hom_differential(Cochain.from_vector(twist, m, {k: ONE}))
            rest, combo = ech.reduce(dk.vector(), {k: ONE})
            if rest:
                ech.add(rest, combo)
            else:
                cocycles.append(combo)
    quotient = Echelon(order)
    for z in cocycles:
        quotient.add(image.reduce(z)[0])
    reps = [Cochain.from_vector(twist, m, quotient.rows[p][0]) for p in quotient.pivots()]
    piece = DegreePiece(m, d, len(reps), reps, image, len(cocycles))
    _pieces[key] = piece
    return piece


def is_coboundary(c):
    """A witness u with d* u = c, or None."""
    if c.is_zero():
        return Cochain.zero(c.twist, max(c.degree - 1, -1))
    if c.degree <= 0:
        return None
    total = Cochain.zero(c.twist, c.degree - 1)
    for d in c.internal_degrees():
        piece = degree_piece(c.twist, c.degree, d)
        combo = piece.coboundaries.solve(c.homogeneous_part(d).vector())
        if combo is None:
            return None
        total = total + Cochain.from_vector(c.twist, c.degree - 1, combo)
    return total


def reduce_mod_coboundaries(c, check=True):
    """Canonical representative of the class of a cocycle."""
    if check and not is_cocycle(c):
        raise ValueError("reduction is only defined for cocycles")
    out = Cochain.zero(c.twist, c.degree)
    for d in c.internal_degrees():
        piece = degree_piece(c.twist, c.degree, d)
        rest, _ = piece.coboundaries.reduce(c.homogeneous_part(d).vector())
        out = out + Cochain.from_vector(c.twist, c.degree, rest)
    return out


@dataclass
class GradedCohomologyReport:
    twist: object
    N: int
    pieces: dict

    def dims(self, m):
        return {d: p.dimension for (mm, d), p in sorted(self.pieces.items()) if mm == m}

    def representatives(self, m, d):
        return self.pieces[(m, d)].representatives

    def to_dict(self):
        return {"twist": str(self.twist), "N": self.N,
                "pieces": [p.to_dict() for _, p in sorted(self.pieces.items())]}


def hh_dimensions(twist, N=8):
    """HH^0, HH^1, HH^2 in each internal degree d from -m up to N."""
    if N < 0:
        raise ValueError("degree bound must be nonnegative")
    pieces = {}
    for m in (0, 1, 2):
        for d in range(-m, N + 1):
            pieces[(m, d)] = degree_piece(twist, m, d)
    return GradedCohomologyReport(twist, N, pieces)


# derivations of the Jordan plane ------------------------------------------

def derivation_cochain(twist, dx, dy):
    """The 1-cochain of the derivation with x -> dx, y -> dy."""
    return Cochain(twist, 1, {(1, 0): dx, (0, 1): dy})


def _y_derivative(p):
    return {(0, j - 1): c * j for (i, j), c in p.items() if j}


def reassemble_derivation(twist, alpha, p, w):
    """Cochain of d(y) = alpha x + p + ad w(y), d(x) = p' x + ad w(x), ad w(v) = wv - vw."""
    alg = twisted_algebra(twist)
    p = p.terms if isinstance(p, AlgebraElement) else p
    w = w.terms if isinstance(w, AlgebraElement) else w
    x, y = {(1, 0): ONE}, {(0, 1): ONE}
    dx = alg.mul(_y_derivative(p), x)
    dy = dict(p)
    add_term(dy, (1, 0), Fraction(alpha))
    for v, out in ((x, dx), (y, dy)):
        for m, c in alg.mul(w, v).items():
            add_term(out, m, c)
        for m, c in alg.mul(v, w).items():
            add_term(out, m, -c)
    return derivation_cochain(twist, dx, dy)


def derivation_canonical_form(c):
    """Solve for (alpha, p(y), w) with w free of constant term; Jordan plane only."""
    from .linalg import solve

    if not c.twist.is_jordan:
        raise NotImplementedError("the derivation classification is for the Jordan plane (1,1)")
    if c.degree != 1:
        raise ValueError("derivations are 1-cochains")
    if not is_cocycle(c):
        raise ValueError("not a cocycle")
    twist = c.twist
    alg = twisted_algebra(twist)
    top = max([m[0] + m[1] for t in c.values.values() for m in t], default=0) + 1
    unknowns = [("alpha",)]
    unknowns += [("p", j) for j in range(top + 1)]
    unknowns += [("w", m) for n in range(1, top + 1) for m in monomials(n)]
    cols = []
    for u in unknowns:
        if u[0] == "alpha":
            col = reassemble_derivation(twist, 1, {}, {})
        elif u[0] == "p":
            col = reassemble_derivation(twist, 0, {(0, u[1]): ONE}, {})
        else:
            col = reassemble_derivation(twist, 0, {}, {u[1]: ONE})
        cols.append(col.vector())
    target = c.vector()
    order = sorted({k for col in cols for k in col} | set(target),
                   key=lambda k: (-k[1][0] - k[1][1], -k[1][0], k[0]))
    sol = solve(cols, target, order)
    if sol is None:
        raise ArithmeticError("derivation does not have the classified form")
    alpha = Fraction(0)
    p, w = {}, {}
    for k, v in sol.items():
        u = unknowns[k]
        if u[0] == "alpha":
            alpha = v
        elif u[0] == "p":
            p[(0, u[1])] = v
        else:
            w[u[1]] = v
    return alpha, AlgebraElement(alg, p), AlgebraElement(alg, w)
