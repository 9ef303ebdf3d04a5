"""Finite-type machinery for welded braids.

The group ring of the braid-permutation group carries the filtration by
powers of the ideal generated by sigma_i - s_i; the universal representation
into the oriented braid algebra identifies its associated graded with the
graded oriented algebra, so the filtration order of an element is read off
as the vanishing order of its image.  This module computes those orders,
distinguishes welded words by truncated invariants with the automorphism
oracle as cross-check, compares the chord and oriented graded algebras
through the map t_ij -> v_ij + v_ji, and tabulates dimensions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import affine_solve
from .quotient import (
    GradedQuotientBasis,
    build_graded_basis,
    infinitesimal_artin,
    oriented_artin,
)
from .reps import eval_welded
from .sdseries import SemidirectSeries
from .series import TruncatedSeries, generator, substitute_generators, word_key
from .words import (
    GroupRingElement,
    WeldedWord,
    WordError,
    a as a_token,
    s as s_token,
    sigma as sigma_token,
    words_equal_in_bp,
)


def eval_group_ring(xi: GroupRingElement, cap: int, basis=None, cache_dir=None) -> SemidirectSeries:
    """Linear extension of the welded representation to the group ring."""
    if basis is None:
        basis = build_graded_basis(oriented_artin(xi.n), cap, cache_dir)
    out = SemidirectSeries.zero(basis, cap)
    for w, c in xi.terms.items():
        out = out + eval_welded(w, cap, basis).scale(c)
    return out


@dataclass
class FiltrationReport:
    """An element, its image, and its vanishing order (None = above the cap)."""

    element: GroupRingElement
    cap: int
    image: SemidirectSeries
    order: int | None

    @property
    def above_cap(self) -> bool:
        return self.order is None


def vassiliev_degree(xi: GroupRingElement, cap: int, basis=None, cache_dir=None) -> FiltrationReport:
    """Least degree with a nonzero image component across all permutation parts."""
    image = eval_group_ring(xi, cap, basis, cache_dir)
    return FiltrationReport(xi, cap, image, image.min_degree())


@dataclass
class DistinguishReport:
    cap: int
    first_difference_degree: int | None  # None = images equal to the cap
    oracle_equal: bool

    @property
    def images_equal_to_cap(self) -> bool:
        return self.first_difference_degree is None


def distinguish(w1: WeldedWord, w2: WeldedWord, cap: int, cache_dir=None) -> DistinguishReport:
    """First degree where truncated invariants differ, plus the exact verdict."""
    if w1.n != w2.n:
        raise WordError(f"strand mismatch: {w1.n} vs {w2.n}")
    basis = build_graded_basis(oriented_artin(w1.n), cap, cache_dir)
    diff = eval_welded(w1, cap, basis) - eval_welded(w2, cap, basis)
    return DistinguishReport(cap, diff.min_degree(), words_equal_in_bp(w1, w2))


# -- the chord-to-oriented comparison map ----------------------------------------


def delta_map(s: TruncatedSeries, target: GradedQuotientBasis) -> TruncatedSeries:
    """t_ij -> v_ij + v_ji on words, reduced in the oriented quotient."""
    alph = s.alphabet
    if alph.kind != "chord" or target.alphabet.kind != "oriented" or alph.n != target.alphabet.n:
        raise WordError("delta maps a chord series into the oriented quotient of the same n")
    images = [
        generator(target.alphabet, s.cap, (i, j)) + generator(target.alphabet, s.cap, (j, i))
        for (i, j) in alph.pairs
    ]
    return target.normal_form(substitute_generators(s, images))


@dataclass
class DeltaKernelReport:
    n: int
    degree: int
    domain_dimension: int
    kernel_dimension: int
    kernel_basis: list  # chord-algebra series spanning the kernel

    @property
    def injective(self) -> bool:
        return self.kernel_dimension == 0


# Exact echelon on a slice with more words than this is a deliberate choice,
# not a default: pass force=True to run it anyway.
KERNEL_WORD_LIMIT = 25_000


def delta_kernel(n: int, k: int, cache_dir=None, force=False) -> DeltaKernelReport:
    """Exact kernel of the induced map on degree-k graded pieces."""
    oriented_words = (n * (n - 1)) ** k
    if oriented_words > KERNEL_WORD_LIMIT and not force:
        raise WordError(
            f"degree-{k} slice on {n} strands has {oriented_words} words "
            f"(> {KERNEL_WORD_LIMIT}); pass force=True to run it anyway"
        )
    chord_basis = build_graded_basis(infinitesimal_artin(n), k, cache_dir)
    oriented_basis = build_graded_basis(oriented_artin(n), k, cache_dir)
    domain_words = chord_basis.normal_words(k)
    columns = []
    for w in domain_words:
        src = TruncatedSeries.from_terms(chord_basis.alphabet, k, {w: Fraction(1)})
        columns.append(delta_map(src, oriented_basis).slices[k])
    _, kernel = affine_solve(columns, None, key=word_key)
    kernel_basis = []
    for coeffs in kernel:
        vec = {w: c for w, c in zip(domain_words, coeffs) if c}
        kernel_basis.append(TruncatedSeries.from_terms(chord_basis.alphabet, k, vec))
    return DeltaKernelReport(n, k, len(domain_words), len(kernel), kernel_basis)


# -- dimension tables ---------------------------------------------------------------


@dataclass
class HilbertTable:
    """Side-by-side graded dimensions for one strand count."""

    n: int
    cap: int
    chord_dims: list
    oriented_dims: list
    weight_factor: int  # n!, the group-algebra dimension

    def rows(self):
        yield ("degree", list(range(self.cap + 1)))
        yield ("chord", self.chord_dims)
        yield ("oriented", self.oriented_dims)
        yield ("chord weight systems", [d * self.weight_factor for d in self.chord_dims])
        yield ("oriented weight systems", [d * self.weight_factor for d in self.oriented_dims])


def hilbert_table(n: int, cap: int, cache_dir=None) -> HilbertTable:
    chord = build_graded_basis(infinitesimal_artin(n), cap, cache_dir)
    oriented = build_graded_basis(oriented_artin(n), cap, cache_dir)
    factorial = 1
    for i in range(2, n + 1):
        factorial *= i
    return HilbertTable(
        n,
        cap,
        [chord.dimension(k) for k in range(cap + 1)],
        [oriented.dimension(k) for k in range(cap + 1)],
        factorial,
    )


# -- the splitting identity ----------------------------------------------------------


@dataclass
class SplittingCase:
    description: str
    order_plain: int | None
    order_twisted: int | None
    passed: bool


@dataclass
class SplittingReport:
    n: int
    cap: int
    cases: list

    @property
    def passed(self) -> bool:
        return all(case.passed for case in self.cases)


def _random_conjugating_word(rng: random.Random, n: int, max_len: int) -> WeldedWord:
    letters = []
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    for _ in range(rng.randint(1, max_len)):
        i, j = rng.choice(pairs)
        letters.append(a_token(i, j, rng.choice((1, -1))))
    return WeldedWord(n, tuple(letters))


def _random_permutation_word(rng: random.Random, n: int, max_len: int) -> WeldedWord:
    letters = tuple(s_token(rng.randint(1, n - 1)) for _ in range(rng.randint(0, max_len)))
    return WeldedWord(n, letters)


def check_splitting_identity(n: int, cap: int, samples: int, seed: int = 0, cache_dir=None) -> SplittingReport:
    """Permutation factors do not change vanishing orders; a_ij - 1 has order 1.

    Samples (c - 1)^k for conjugating words c and compares the order of
    (c - 1)^k s against (c - 1)^k; also pins the order of every a_ij - 1.
    """
    basis = build_graded_basis(oriented_artin(n), cap, cache_dir)
    rng = random.Random(seed)
    cases = []
    unit = GroupRingElement.one(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            elt = GroupRingElement.from_word(WeldedWord(n, (a_token(i, j),))) - unit
            order = vassiliev_degree(elt, cap, basis).order
            cases.append(SplittingCase(f"a{i}{j} - 1", order, order, order == 1))
    for _ in range(samples):
        c = _random_conjugating_word(rng, n, 3)
        sw = _random_permutation_word(rng, n, 3)
        k = rng.randint(1, min(3, cap))
        base = (GroupRingElement.from_word(c) - unit) ** k
        twisted = base * GroupRingElement.from_word(sw)
        order_plain = vassiliev_degree(base, cap, basis).order
        order_twisted = vassiliev_degree(twisted, cap, basis).order
        cases.append(
            SplittingCase(
                f"(({c.text()}) - 1)^{k} * [{sw.text()}]",
                order_plain,
                order_twisted,
                order_plain == order_twisted,
            )
        )
    return SplittingReport(n, cap, cases)


# -- random words (shared by property tests and the CLI) -------------------------------


def random_welded_word(rng: random.Random, n: int, length: int) -> WeldedWord:
    letters = []
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    for _ in range(length):
        kind = rng.choice(("a", "s", "sigma"))
        if kind == "a":
            i, j = rng.choice(pairs)
            letters.append(a_token(i, j, rng.choice((1, -1))))
        elif kind == "s":
            letters.append(s_token(rng.randint(1, n - 1)))
        else:
            letters.append(sigma_token(rng.randint(1, n - 1), rng.choice((1, -1))))
    return WeldedWord(n, tuple(letters))
