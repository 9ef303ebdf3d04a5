import random
from fractions import Fraction

import pytest

from braidalg import AB, TruncatedSeries, generator


def make_rng(seed):
    return random.Random(seed)


def random_series(rng, alphabet, cap, nterms=6, denom=6, zero_constant=False):
    terms = {}
    for _ in range(nterms):
        deg = rng.randint(1 if zero_constant else 0, cap)
        word = tuple(rng.randrange(alphabet.size) for _ in range(deg))
        terms[word] = Fraction(rng.randint(-denom, denom), rng.randint(1, denom))
    if zero_constant:
        terms.pop((), None)
    return TruncatedSeries.from_terms(alphabet, cap, terms)


def ab_commutator(cap):
    A = generator(AB, cap, "A")
    B = generator(AB, cap, "B")
    return A * B - B * A


def psi24(cap):
    """exp([A,B]/24) at the requested cap."""
    return ab_commutator(cap).scale(Fraction(1, 24)).exp()


@pytest.fixture
def rng():
    return make_rng(20240817)


@pytest.fixture(scope="session")
def semi_associator_deg5():
    from braidalg import bootstrap_semi_associator

    return bootstrap_semi_associator(5)
