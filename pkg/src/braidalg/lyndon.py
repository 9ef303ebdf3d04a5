"""Lyndon words and their standard bracketings: a basis of the free Lie algebra."""

from __future__ import annotations

from itertools import product

from .series import Alphabet, TruncatedSeries, generator


def lyndon_words(m: int, k: int) -> list:
    """All Lyndon words of length k over the ordered alphabet {0..m-1}.

    A word is Lyndon when it is strictly smaller than all of its proper
    rotations; brute force is fine at the sizes used here (m <= 12, k <= 6).
    """
    if k == 1:
        return [(g,) for g in range(m)]
    out = []
    for w in product(range(m), repeat=k):
        if all(w < w[i:] + w[:i] for i in range(1, k)):
            out.append(w)
    return out


def standard_factorization(w: tuple) -> tuple:
    """Chen-Fox-Lyndon factorization w = (u, v), v the smallest proper suffix."""
    v = min(w[i:] for i in range(1, len(w)))
    return w[: len(w) - len(v)], v


def lyndon_bracket(alphabet: Alphabet, cap: int, w: tuple) -> TruncatedSeries:
    """The bracketing of a Lyndon word, recursively [b(u), b(v)], as a series."""
    if len(w) == 1:
        return generator(alphabet, cap, w[0])
    u, v = standard_factorization(w)
    bu = lyndon_bracket(alphabet, cap, u)
    bv = lyndon_bracket(alphabet, cap, v)
    return bu * bv - bv * bu


def lie_basis(alphabet: Alphabet, cap: int, degree: int) -> list:
    """(word, bracket series) pairs for the free-Lie basis in one degree."""
    return [
        (w, lyndon_bracket(alphabet, cap, w))
        for w in lyndon_words(alphabet.size, degree)
    ]
