"""Semi-associator axioms, the Yang-Baxter checker, and degree-wise extension.

The axioms are transcribed once, here, and nowhere else:

  (AE)  Phi = exp(phi) with phi a Lie series with no degree-1 part;
  (AS)  swapping A and B sends Phi to Phi^-1;
  (H1)  exp((t12+t13)/2) = (231.Phi_t)^-1 exp(t13/2) (213.Phi_t) exp(t12/2) Phi_t^-1;
  (H3)  exp((t13+t23)/2) = (312.Phi_t) exp(t13/2) (132.Phi_t)^-1 exp(t23/2) Phi_t;
  (P)   Phi(t12,t23+t24) Phi(t13+t23,t34)
            = Phi(t23,t34) Phi(t12+t13,t24+t34) Phi(t12,t23),

with Phi_t = Phi(t12, t23); (H1) and (H3) live in the 3-strand chord algebra,
(P) in the 4-strand one.  Sign conventions for hexagons differ across the
literature; everything downstream derives from the five lines above.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import affine_solve
from .lyndon import lie_basis
from .perms import Permutation
from .quotient import build_graded_basis, infinitesimal_artin
from .reps import central_element, eval_drinfeld, eval_rho3, require_normalized_group_like, rho3_delta
from .sdseries import SemidirectSeries
from .series import (
    Alphabet,
    ConstantTermError,
    SeriesError,
    TruncatedSeries,
    generator,
    left_bracketing,
    one,
    substitute,
    word_key,
    zero,
)
from .words import WeldedWord, sigma

AB = Alphabet.abstract("A", "B")
AXIOMS = ("AE", "AS", "H1", "H3", "P")
HALF = Fraction(1, 2)


class AssociatorError(SeriesError):
    pass


@dataclass
class AxiomResult:
    axiom: str
    cap: int
    passed: bool
    first_failure_degree: int | None
    residual: TruncatedSeries | None

    def __bool__(self):
        return self.passed


def swap_letters(phi: TruncatedSeries) -> TruncatedSeries:
    """The involution A <-> B of the two-variable algebra."""
    if phi.alphabet != AB:
        raise AssociatorError("expected a series over {A, B}")
    slices = []
    for sl in phi.slices:
        slices.append({tuple(1 - g for g in w): c for w, c in sl.items()})
    return TruncatedSeries(AB, phi.cap, tuple(slices))


def _result(axiom: str, cap: int, residual: TruncatedSeries) -> AxiomResult:
    degree = residual.min_degree()
    return AxiomResult(axiom, cap, residual.is_zero(), degree, residual)


def _prepare(phi: TruncatedSeries, cap: int) -> TruncatedSeries:
    if phi.alphabet != AB:
        raise AssociatorError("associator candidates live over {A, B}")
    if phi.constant_term != 1:
        raise ConstantTermError("associator candidates have constant term 1")
    if phi.cap < cap:
        raise AssociatorError(f"series known to degree {phi.cap} < requested cap {cap}")
    return phi.truncated(cap)


def ae_residual(phi: TruncatedSeries, cap: int) -> TruncatedSeries:
    """Defect of exponential type: degree-1 part of log plus its non-Lie parts."""
    phi = _prepare(phi, cap)
    logphi = phi.log()
    residual = logphi.homogeneous_part(1) if cap >= 1 else zero(AB, cap)
    bracketed = left_bracketing(logphi)
    for k in range(2, cap + 1):
        defect = logphi.homogeneous_part(k) - bracketed.homogeneous_part(k).scale(Fraction(1, k))
        residual = residual + defect
    return residual


def as_residual(phi: TruncatedSeries, cap: int) -> TruncatedSeries:
    phi = _prepare(phi, cap)
    return swap_letters(phi) - phi.inverse()


def _hexagon_residual(phi: TruncatedSeries, cap: int, variant: str, basis) -> TruncatedSeries:
    phi = _prepare(phi, cap)
    alph = basis.alphabet
    t12 = generator(alph, cap, (1, 2))
    t13 = generator(alph, cap, (1, 3))
    t23 = generator(alph, cap, (2, 3))
    phi_t = substitute(phi, t12, t23)

    def perm(txt):
        return Permutation.from_one_line(txt)

    if variant == "H1":
        lhs = (t12 + t13).scale(HALF).exp()
        rhs = (
            phi_t.act(perm("231")).inverse()
            * t13.scale(HALF).exp()
            * phi_t.act(perm("213"))
            * t12.scale(HALF).exp()
            * phi_t.inverse()
        )
    else:
        lhs = (t13 + t23).scale(HALF).exp()
        rhs = (
            phi_t.act(perm("312"))
            * t13.scale(HALF).exp()
            * phi_t.act(perm("132")).inverse()
            * t23.scale(HALF).exp()
            * phi_t
        )
    return basis.normal_form(rhs - lhs)


def pentagon_residual(phi: TruncatedSeries, cap: int, basis) -> TruncatedSeries:
    phi = _prepare(phi, cap)
    alph = basis.alphabet

    def t(i, j):
        return generator(alph, cap, (i, j))

    lhs = substitute(phi, t(1, 2), t(2, 3) + t(2, 4)) * substitute(phi, t(1, 3) + t(2, 3), t(3, 4))
    rhs = (
        substitute(phi, t(2, 3), t(3, 4))
        * substitute(phi, t(1, 2) + t(1, 3), t(2, 4) + t(3, 4))
        * substitute(phi, t(1, 2), t(2, 3))
    )
    return basis.normal_form(lhs - rhs)


def check_axiom(phi: TruncatedSeries, axiom: str, cap: int, cache_dir=None) -> AxiomResult:
    """Check one axiom at the cap; failures carry the lowest failing degree."""
    if axiom == "AE":
        return _result("AE", cap, ae_residual(phi, cap))
    if axiom == "AS":
        return _result("AS", cap, as_residual(phi, cap))
    if axiom in ("H1", "H3"):
        basis = build_graded_basis(infinitesimal_artin(3), cap, cache_dir)
        return _result(axiom, cap, _hexagon_residual(phi, cap, axiom, basis))
    if axiom == "P":
        basis = build_graded_basis(infinitesimal_artin(4), cap, cache_dir)
        return _result("P", cap, pentagon_residual(phi, cap, basis))
    raise AssociatorError(f"unknown axiom {axiom!r}; choose from {AXIOMS}")


def is_semi_associator(phi: TruncatedSeries, cap: int, cache_dir=None) -> bool:
    return all(check_axiom(phi, ax, cap, cache_dir).passed for ax in ("AE", "AS", "H3"))


# -- degree-by-degree extension ---------------------------------------------------


@dataclass
class ExtensionStep:
    """Affine solution set of Lie corrections at one degree.

    Solutions are coordinates over the Lyndon bracket basis; the set is
    particular + span(kernel).  ``correction``/``extended`` realize a chosen
    coordinate vector as a series.
    """

    degree: int
    lyndon_words: list
    particular: list
    kernel: list
    base: TruncatedSeries

    @property
    def kernel_dimension(self) -> int:
        return len(self.kernel)

    def correction(self, coords=None) -> TruncatedSeries:
        coords = self.particular if coords is None else coords
        out = zero(AB, self.degree)
        for c, (_, bracket) in zip(coords, lie_basis(AB, self.degree, self.degree)):
            out = out + bracket.scale(c)
        return out

    def extended(self, coords=None) -> TruncatedSeries:
        """exp(lifted log + correction): the chosen solution as a group-like series."""
        return (self.base.log().lifted(self.degree) + self.correction(coords)).exp()


def extend_semi_associator(phi: TruncatedSeries, cache_dir=None) -> ExtensionStep:
    """Extend a semi-associator valid to degree d = phi.cap by one degree.

    The unknown is a homogeneous Lie element of degree d+1; (AS) and (H3) at
    degree d+1 are affine in it.  Raises naming the axiom and degree when phi
    fails a hypothesis.  Solvability through any finite degree is expected
    since rational associators exist.
    """
    d = phi.cap
    for axiom in ("AE", "AS", "H3"):
        result = check_axiom(phi, axiom, d, cache_dir)
        if not result.passed:
            raise AssociatorError(
                f"candidate fails ({axiom}) at degree {result.first_failure_degree}"
            )
    degree = d + 1
    basis3 = build_graded_basis(infinitesimal_artin(3), degree, cache_dir)
    # Group-like lift: zero-pad the logarithm, not the series, so the new
    # degree-(d+1) slice of the candidate is exp(phi)'s before correction.
    lifted = phi.log().lifted(degree).exp()
    basis = lie_basis(AB, degree, degree)
    base_res = _residual_labels(lifted, degree, basis3)
    columns = [
        _label_delta(_residual_labels(lifted + bracket.lifted(degree), degree, basis3), base_res)
        for _, bracket in basis
    ]
    rhs = {label: -c for label, c in base_res.items()}
    particular, kernel = affine_solve(columns, rhs, key=_label_key)
    if particular is None:
        raise AssociatorError(f"no Lie correction exists at degree {degree}")
    return ExtensionStep(degree, [w for w, _ in basis], particular, kernel, phi)


def _residual_labels(candidate: TruncatedSeries, degree: int, basis3) -> dict:
    """Top-degree AS and H3 residual coordinates, labelled by (axiom, word)."""
    vec = {}
    for w, c in as_residual(candidate, degree).slices[degree].items():
        vec[("AS", w)] = c
    for w, c in _hexagon_residual(candidate, degree, "H3", basis3).slices[degree].items():
        vec[("H3", w)] = c
    return vec


def _label_delta(col: dict, base: dict) -> dict:
    for label, c in base.items():
        c2 = col.get(label, Fraction(0)) - c
        if c2:
            col[label] = c2
        else:
            col.pop(label, None)
    return col


def _label_key(label):
    return (label[0], word_key(label[1]))


def _revised_coordinates(prev: ExtensionStep, cache_dir=None):
    """Coordinates in prev's solution set from which one more degree extends.

    A truncated solution need not lift: the affine set at one degree can
    contain dead ends for the next.  The kernel coordinates of the previous
    step still enter the next degree's residual affinely, so a joint solve
    over (previous kernel, next Lie correction) finds a continuable choice.
    """
    degree = prev.degree + 1
    basis3 = build_graded_basis(infinitesimal_artin(3), degree, cache_dir)
    base_log = prev.base.log().lifted(degree) + prev.correction().lifted(degree)
    base = base_log.exp()
    r0 = _residual_labels(base, degree, basis3)
    columns = []
    for kvec in prev.kernel:
        cand = (base_log + prev.correction(kvec).lifted(degree)).exp()
        columns.append(_label_delta(_residual_labels(cand, degree, basis3), r0))
    for _, bracket in lie_basis(AB, degree, degree):
        columns.append(_label_delta(_residual_labels(base + bracket, degree, basis3), r0))
    rhs = {label: -c for label, c in r0.items()}
    solution, _ = affine_solve(columns, rhs, key=_label_key)
    if solution is None:
        raise AssociatorError(
            f"no degree-{prev.degree} choice continues to degree {degree} "
            "within one degree of lookback"
        )
    tcoords = solution[: len(prev.kernel)]
    return [
        p + sum(t * kvec[i] for t, kvec in zip(tcoords, prev.kernel))
        for i, p in enumerate(prev.particular)
    ]


def bootstrap_semi_associator(to_degree: int, cache_dir=None) -> TruncatedSeries:
    """Particular semi-associator built from 1 by repeated extension.

    When the greedy particular solution at some degree turns out not to
    extend, the previous degree is re-solved jointly with the new one.
    """
    phi = one(AB, 1)
    prev = None
    while phi.cap < to_degree:
        try:
            step = extend_semi_associator(phi, cache_dir)
        except AssociatorError:
            if prev is None:
                raise
            phi = prev.extended(_revised_coordinates(prev, cache_dir))
            step = extend_semi_associator(phi, cache_dir)
        phi = step.extended()
        prev = step
    return phi


# -- Yang-Baxter and the equivalence report ------------------------------------------


@dataclass
class YangBaxterResult:
    cap: int
    passed: bool
    first_failure_degree: int | None
    residual: SemidirectSeries | None

    def __bool__(self):
        return self.passed


def check_yang_baxter(psi: TruncatedSeries, cap: int, cache_dir=None) -> YangBaxterResult:
    """Test rho(Delta) = rho(sigma_2) rho(sigma_1) rho(sigma_2) for the 3-strand family."""
    require_normalized_group_like(psi if psi.cap <= cap else psi.truncated(cap))
    basis = build_graded_basis(infinitesimal_artin(3), cap, cache_dir)
    lhs = rho3_delta(psi, cap, basis)
    rhs = eval_rho3(WeldedWord(3, (sigma(2), sigma(1), sigma(2))), psi, cap, basis)
    diff = rhs - lhs
    if diff.is_zero():
        return YangBaxterResult(cap, True, None, None)
    return YangBaxterResult(cap, False, diff.min_degree(), diff)


@dataclass
class EquivalenceReport:
    """Cross-checks between the Yang-Baxter equation and the axioms."""

    cap: int
    yb: YangBaxterResult
    h3: AxiomResult
    h1: AxiomResult
    as_: AxiomResult
    delta_squared_central: bool | None
    drinfeld_compatible: bool | None

    @property
    def yb_iff_h3(self) -> bool:
        return self.yb.passed == self.h3.passed

    @property
    def h1_iff_h3(self) -> bool | None:
        # The two hexagons are only claimed equivalent in the presence of (AS).
        if not self.as_.passed:
            return None
        return self.h1.passed == self.h3.passed

    @property
    def yb_implies_as(self) -> bool:
        return (not self.yb.passed) or self.as_.passed


def check_equivalences(psi: TruncatedSeries, cap: int, cache_dir=None) -> EquivalenceReport:
    yb = check_yang_baxter(psi, cap, cache_dir)
    h3 = check_axiom(psi, "H3", cap, cache_dir)
    h1 = check_axiom(psi, "H1", cap, cache_dir)
    as_ = check_axiom(psi, "AS", cap, cache_dir)

    delta_central = None
    if yb.passed:
        basis = build_graded_basis(infinitesimal_artin(3), cap, cache_dir)
        delta = rho3_delta(psi, cap, basis)
        dsq = delta * delta
        expected = SemidirectSeries.term(
            basis, cap, central_element(cap).scale(2).exp(), Permutation.identity(3)
        )
        delta_central = dsq == expected

    compatible = None
    if as_.passed and h3.passed:
        w = WeldedWord(3, (sigma(2),))
        compatible = eval_rho3(w, psi, cap, cache_dir=cache_dir) == eval_drinfeld(
            w, psi, cap, cache_dir=cache_dir
        )
    return EquivalenceReport(cap, yb, h3, h1, as_, delta_central, compatible)
