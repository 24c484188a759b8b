"""
Exact arithmetic in the one-relation family

    R = k<x, y> / (yx - q*xy - alpha*x^2),    q != 0,

realised as the twisted tensor product k[x] (x)_tau k[y] with normal-form
basis x^i y^j.  Also the twisting map tau : B(x)A -> A(x)B, its inverse, and
a brute-force check of the twisting-map axioms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .report import Report

ZERO = Fraction(0)
ONE = Fraction(1)


def add_term(d, key, c):
    """d[key] += c, dropping the key if the coefficient cancels."""
    if not c:
        return
    v = d.get(key, ZERO) + c
    if v:
        d[key] = v
    else:
        d.pop(key, None)


def add_scaled(d, other, c=ONE):
    for k, v in other.items():
        add_term(d, k, c * v)
    return d


def as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


class OreAlgebra:
    """Two-letter algebra with normal form ``first^i second^j``.

    The single rewrite rule is

        second*first -> c_fs*first*second + c_ff*first^2 + c_ss*second^2

    Monomials are pairs ``(i, j)``; elements are dicts ``{(i, j): Fraction}``.
    Nothing here checks that the rule is confluent; that is what
    :func:`check_twist_axioms` is for.
    """

    def __init__(self, c_fs, c_ff=0, c_ss=0, letters=("x", "y")):
        self.c_fs = as_fraction(c_fs)
        self.c_ff = as_fraction(c_ff)
        self.c_ss = as_fraction(c_ss)
        self.letters = tuple(letters)
        self._single = {0: {(0, 1): ONE}}
        self._swap = {}
        self._mono = {}
        self._pending = set()

    def __repr__(self):
        f, s = self.letters
        return (f"OreAlgebra({s}{f} -> {self.c_fs}*{f}{s} + {self.c_ff}*{f}^2"
                f" + {self.c_ss}*{s}^2)")

    def _second_times_first_power(self, p):
        # second * first^p
        hit = self._single.get(p)
        if hit is not None:
            return hit
        if p in self._pending:
            raise ValueError(f"rewriting does not terminate for {self!r}")
        self._pending.add(p)
        prev = self._second_times_first_power(p - 1)
        # second*first^p = (c_fs first second + c_ff first^2 + c_ss second^2) first^(p-1)
        out = {}
        for (a, b), c in prev.items():
            add_term(out, (a + 1, b), self.c_fs * c)
        add_term(out, (p + 1, 0), self.c_ff)
        if self.c_ss:
            # second * (second * first^(p-1))
            for (a, b), c in prev.items():
                for (a2, b2), c2 in self._second_times_first_power(a).items():
                    add_term(out, (a2, b2 + b), self.c_ss * c * c2)
        self._pending.discard(p)
        self._single[p] = out
        return out

    def swap(self, b, a):
        """Normal form of ``second^b first^a``."""
        key = (b, a)
        hit = self._swap.get(key)
        if hit is not None:
            return hit
        if b == 0 or a == 0:
            out = {(a, b): ONE}
        else:
            out = {}
            for (i, j), c in self.swap(b - 1, a).items():
                for (i2, j2), c2 in self._second_times_first_power(i).items():
                    add_term(out, (i2, j2 + j), c * c2)
        self._swap[key] = out
        return out

    def mono_mul(self, m, n):
        key = (m, n)
        hit = self._mono.get(key)
        if hit is not None:
            return hit
        (i, j), (k, l) = m, n
        out = {(i + a, b + l): c for (a, b), c in self.swap(j, k).items()}
        self._mono[key] = out
        return out

    def mul(self, u, v):
        out = {}
        for m, a in u.items():
            for n, b in v.items():
                for mn, c in self.mono_mul(m, n).items():
                    add_term(out, mn, a * b * c)
        return out

    def normalize_word(self, word):
        """Normal form of a word over the two letters (a string or a sequence)."""
        first, second = self.letters
        out = {(0, 0): ONE}
        for ch in word:
            if ch == first:
                letter = {(1, 0): ONE}
            elif ch == second:
                letter = {(0, 1): ONE}
            else:
                raise ValueError(f"unknown letter {ch!r}")
            out = self.mul(out, letter)
        return out


@dataclass(frozen=True)
class TwistSpec:
    """The rewrite rule ``yx -> q*xy + alpha*x^2``."""

    q: Fraction = ONE
    alpha: Fraction = ONE

    def __post_init__(self):
        object.__setattr__(self, "q", as_fraction(self.q))
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        if self.q == 0:
            raise ValueError("q must be nonzero")

    @classmethod
    def parse(cls, text):
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 2:
            raise ValueError(f"twist must look like 'q,alpha', got {text!r}")
        return cls(Fraction(parts[0]), Fraction(parts[1]))

    def __str__(self):
        return f"{self.q},{self.alpha}"

    @property
    def is_jordan(self):
        return self.q == 1 and self.alpha == 1

    def algebra(self):
        return twisted_algebra(self)


def is_strongly_graded(twist):
    """tau(B_j (x) A_i) = A_i (x) B_j, which for this family means alpha = 0."""
    return twist.alpha == 0


class TwistedAlgebra(OreAlgebra):
    """R = A (x)_tau B with A = k[x], B = k[y]."""

    def __init__(self, twist):
        super().__init__(twist.q, twist.alpha, 0, ("x", "y"))
        self.twist = twist
        # B (x)_{tau^-1} A: basis y^b x^a, rule xy -> q^-1 yx - q^-1 alpha x^2
        self.opposite = OreAlgebra(1 / twist.q, 0, -twist.alpha / twist.q, ("y", "x"))

    def element(self, terms=None):
        return AlgebraElement(self, terms or {})

    def one(self):
        return AlgebraElement(self, {(0, 0): ONE})

    def x(self, n=1):
        return AlgebraElement(self, {(n, 0): ONE})

    def y(self, n=1):
        return AlgebraElement(self, {(0, n): ONE})

    def tau(self, t):
        """tau on B(x)A; ``t`` maps (y-power, x-power) to coefficients."""
        out = {}
        for (j, i), c in t.items():
            add_scaled(out, self.swap(j, i), c)
        return out

    def tau_inv(self, t):
        """tau^-1 on A(x)B; ``t`` maps (x-power, y-power) to coefficients."""
        out = {}
        for (i, j), c in t.items():
            add_scaled(out, self.opposite.swap(i, j), c)
        return out


@lru_cache(maxsize=None)
def twisted_algebra(twist):
    return TwistedAlgebra(twist)


def normalize_word(word, twist):
    alg = twisted_algebra(twist)
    return AlgebraElement(alg, alg.normalize_word(word))


def multiply(a, b, twist=None):
    alg = twisted_algebra(twist) if twist is not None else a.alg
    return AlgebraElement(alg, alg.mul(a.terms, b.terms))


def tau(t, twist):
    return twisted_algebra(twist).tau(t)


def tau_inv(t, twist):
    return twisted_algebra(twist).tau_inv(t)


class AlgebraElement:
    """Finitely supported rational combination of normal monomials x^i y^j."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {k: as_fraction(v) for k, v in terms.items() if v}

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            return other.terms
        return {(0, 0): as_fraction(other)} if other else {}

    def __add__(self, other):
        return AlgebraElement(self.alg, add_scaled(dict(self.terms), self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return AlgebraElement(self.alg, add_scaled(dict(self.terms), self._coerce(other), -ONE))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return AlgebraElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.alg, self.alg.mul(self.terms, other.terms))
        c = as_fraction(other)
        return AlgebraElement(self.alg, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        c = as_fraction(other)
        return AlgebraElement(self.alg, {k: c * v for k, v in self.terms.items()})

    def __pow__(self, n):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.terms == other.terms
        return self.terms == self._coerce(other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({i + j for i, j in self.terms})

    def homogeneous_part(self, n):
        return AlgebraElement(self.alg, {m: c for m, c in self.terms.items() if sum(m) == n})

    def __repr__(self):
        return f"AlgebraElement({format_terms(self.terms)!r})"

    def __str__(self):
        return format_terms(self.terms)


def monomial_key(m):
    """Display order: total degree descending, then x-power ascending."""
    i, j = m
    return (-(i + j), i)


def format_monomial(m, letters=("x", "y")):
    parts = []
    for letter, e in zip(letters, m):
        if e == 1:
            parts.append(letter)
        elif e > 1:
            parts.append(f"{letter}^{e}")
    return " ".join(parts)


def format_terms(terms, letters=("x", "y")):
    if not terms:
        return "0"
    out = []
    for m in sorted(terms, key=monomial_key):
        c = terms[m]
        mono = format_monomial(m, letters)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a} {mono}"
        out.append((sign, body))
    first_sign, first_body = out[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def check_twist_axioms(twist_or_tau, N=6):
    """Brute-force check of the twisting-map axioms in total degree <= N.

    ``twist_or_tau`` is a :class:`TwistSpec` or any callable sending a pair
    ``(j, i)`` (meaning y^j (x) x^i) to a dict ``{(a, b): c}`` (meaning
    x^a (x) y^b).  Checks the unit conditions, the hexagon

        tau (m_B (x) m_A) = (m_A (x) m_B)(1 (x) tau (x) 1)(tau (x) tau)(1 (x) tau (x) 1)

    on every basis tensor y^j1 (x) y^j2 (x) x^i1 (x) x^i2, and bijectivity of
    tau in every total degree.
    """
    from .linalg import rank

    if N < 2:
        raise ValueError("degree bound must be at least 2")
    if isinstance(twist_or_tau, TwistSpec):
        alg = twisted_algebra(twist_or_tau)
        tau_fn = lambda j, i: alg.swap(j, i)  # noqa: E731
        name = f"twist axioms ({twist_or_tau})"
    else:
        name = "twist axioms (custom tau)"
    report = Report(name)
    if not isinstance(twist_or_tau, TwistSpec):
        raw = twist_or_tau

        def tau_fn(j, i):
            try:
                return raw(j, i)
            except ValueError as exc:
                report.check(False, f"tau(y^{j} (x) x^{i}) undefined: {exc}")
                return {}

    for n in range(N + 1):
        report.check(tau_fn(0, n) == {(n, 0): ONE}, f"tau(1 (x) x^{n}) != x^{n} (x) 1")
        report.check(tau_fn(n, 0) == {(0, n): ONE}, f"tau(y^{n} (x) 1) != 1 (x) y^{n}")

    for j1, j2, i1, i2 in product(range(N + 1), repeat=4):
        if j1 + j2 + i1 + i2 > N:
            continue
        lhs = tau_fn(j1 + j2, i1 + i2)
        rhs = {}
        for (a, b), c1 in tau_fn(j2, i1).items():
            for (c, d), c2 in tau_fn(j1, a).items():
                for (e, f), c3 in tau_fn(b, i2).items():
                    for (g, h), c4 in tau_fn(d, e).items():
                        add_term(rhs, (c + g, h + f), c1 * c2 * c3 * c4)
        report.check(lhs == rhs, f"hexagon fails on y^{j1} y^{j2} x^{i1} x^{i2}: {lhs} vs {rhs}")

    for n in range(N + 1):
        cols = [tau_fn(j, n - j) for j in range(n + 1)]
        rows = [(a, n - a) for a in range(n + 1)]
        mat = [[col.get(r, ZERO) for col in cols] for r in rows]
        report.check(rank(mat) == n + 1, f"tau not bijective in degree {n}")
    return report
