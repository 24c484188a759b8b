"""
Exact linear algebra over Q for the small graded pieces we meet.

Vectors are sparse dicts ``{coordinate: Fraction}``; coordinates are any
hashable keys, ordered by an explicit list so pivoting is deterministic.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)


class Echelon:
    """Incrementally built reduced row-echelon basis of a subspace.

    ``order`` fixes the coordinate order: the pivot of a vector is its first
    nonzero coordinate in that order.  Each stored row has a 1 at its pivot
    and zeros at every other pivot.  A row may carry a ``tag`` vector (for
    example the preimage it came from), transformed alongside it.
    """

    def __init__(self, order):
        self.index = {c: k for k, c in enumerate(order)}
        self.rows = {}  # pivot -> (row, tag)

    def __len__(self):
        return len(self.rows)

    def _pivot(self, v):
        return min(v, key=self.index.__getitem__) if v else None

    def reduce(self, v, tag=None):
        """Return ``(v', tag')`` with v' = v - (combination of rows), no pivots left."""
        v = dict(v)
        tag = dict(tag) if tag is not None else None
        for p in sorted((p for p in v if p in self.rows), key=self.index.__getitem__):
            c = v.get(p)
            if not c:
                continue
            row, rtag = self.rows[p]
            _axpy(v, row, -c)
            if tag is not None and rtag is not None:
                _axpy(tag, rtag, -c)
        return v, tag

    def add(self, v, tag=None):
        """Insert ``v``; return True if it was independent of the rows so far."""
        v, tag = self.reduce(v, tag)
        if not v:
            return False
        p = self._pivot(v)
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        if tag is not None:
            tag = {k: c * inv for k, c in tag.items()}
        for q, (row, rtag) in self.rows.items():
            c = row.get(p)
            if c:
                _axpy(row, v, -c)
                if rtag is not None and tag is not None:
                    _axpy(rtag, tag, -c)
        self.rows[p] = (v, tag)
        return True

    def contains(self, v):
        return not self.reduce(v)[0]

    def solve(self, v):
        """If v lies in the span, return the tag combination producing it, else None.

        Every row must have been added with a tag.
        """
        rest, combo = self.reduce(v, {})
        if rest:
            return None
        return {k: -c for k, c in combo.items() if c}

    def pivots(self):
        return sorted(self.rows, key=self.index.__getitem__)


def _axpy(y, x, a):
    for k, c in x.items():
        v = y.get(k, ZERO) + a * c
        if v:
            y[k] = v
        else:
            y.pop(k, None)


def rank(rows):
    """Rank of a dense matrix given as a list of lists."""
    ncols = max((len(r) for r in rows), default=0)
    ech = Echelon(range(ncols))
    for r in rows:
        ech.add({k: Fraction(c) for k, c in enumerate(r) if c})
    return len(ech)


def rank_of_vectors(vectors, order):
    ech = Echelon(order)
    for v in vectors:
        ech.add(v)
    return len(ech)


def kernel(columns, order):
    """Basis of {c : sum_k c_k columns[k] = 0}; columns are sparse vectors.

    Returns sparse dicts over column indices.
    """
    ech = Echelon(order)
    basis = []
    for k, col in enumerate(columns):
        rest, combo = ech.reduce(col, {k: Fraction(1)})
        if rest:
            ech.add(rest, combo)
        else:
            basis.append(combo)
    return basis


def solve(columns, target, order):
    """Some c with sum_k c_k columns[k] = target, or None."""
    ech = Echelon(order)
    for k, col in enumerate(columns):
        ech.add(col, {k: Fraction(1)})
    return ech.solve(target)
