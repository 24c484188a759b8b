"""Independent reference implementations used by the tests."""

import random
from fractions import Fraction


def rewrite_word(word, q, alpha, pick="left", rng=None):
    """Normal form of a word in x, y by naive string rewriting yx -> q xy + alpha xx.

    ``pick`` chooses which occurrence of "yx" is rewritten at each step.
    Returns {(i, j): c} for x^i y^j.
    """
    q, alpha = Fraction(q), Fraction(alpha)
    todo = {word: Fraction(1)}
    done = {}
    while todo:
        w, c = todo.popitem()
        spots = [k for k in range(len(w) - 1) if w[k:k + 2] == "yx"]
        if not spots:
            key = (w.count("x"), w.count("y"))
            done[key] = done.get(key, 0) + c
            continue
        if pick == "left":
            k = spots[0]
        elif pick == "right":
            k = spots[-1]
        else:
            k = (rng or random).choice(spots)
        for new, s in ((w[:k] + "xy" + w[k + 2:], q), (w[:k] + "xx" + w[k + 2:], alpha)):
            if s:
                todo[new] = todo.get(new, 0) + c * s
    return {m: c for m, c in done.items() if c}


def all_words(n):
    if n == 0:
        yield ""
        return
    for w in all_words(n - 1):
        yield w + "x"
        yield w + "y"


def word_of(m):
    i, j = m
    return "x" * i + "y" * j


def product_oracle(u, v, q, alpha):
    """u * v for dicts over x^i y^j, through string rewriting of concatenated words."""
    out = {}
    for m, a in u.items():
        for n, b in v.items():
            for k, c in rewrite_word(word_of(m) + word_of(n), q, alpha).items():
                out[k] = out.get(k, 0) + a * b * c
    return {k: c for k, c in out.items() if c}
