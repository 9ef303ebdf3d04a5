"""Semidirect products of quotient algebras with symmetric group algebras.

Elements are finitely supported maps pi -> series with the twisted product
(a (x) x) * (b (x) y) = a * (x.b) (x) xy, extended bilinearly.  Components
are kept in quotient normal form eagerly after every product, so equality
is plain component-wise comparison.
"""

from __future__ import annotations

from fractions import Fraction

from .perms import Permutation
from .quotient import GradedQuotientBasis
from .series import TruncatedSeries, one, substitute_generators, generator, zero


class ContextMismatch(ValueError):
    """Semidirect elements over different presets, strand counts or caps."""


class SemidirectSeries:
    """An element of (quotient algebra) x| Q[Sigma_n], components in normal form."""

    __slots__ = ("basis", "cap", "terms")

    def __init__(self, basis: GradedQuotientBasis, cap: int, terms: dict, *, _normalized=False):
        if cap > basis.cap:
            raise ContextMismatch(f"cap {cap} exceeds basis cap {basis.cap}")
        self.basis = basis
        self.cap = cap
        if _normalized:
            self.terms = terms
        else:
            clean = {}
            for perm, series in terms.items():
                if perm.n != basis.alphabet.n and basis.alphabet.kind != "abstract":
                    raise ContextMismatch(f"permutation size {perm.n} vs n={basis.alphabet.n}")
                if series.cap != cap:
                    raise ContextMismatch(f"component cap {series.cap} vs {cap}")
                nf = basis.normal_form(series)
                if not nf.is_zero():
                    clean[perm] = nf
            self.terms = clean

    @property
    def n(self) -> int:
        return self.basis.alphabet.n

    # -- constructors ----------------------------------------------------

    @staticmethod
    def term(basis, cap, series, perm) -> "SemidirectSeries":
        return SemidirectSeries(basis, cap, {perm: series})

    @staticmethod
    def unit(basis, cap) -> "SemidirectSeries":
        n = basis.alphabet.n
        return SemidirectSeries(
            basis, cap, {Permutation.identity(n): one(basis.alphabet, cap)}
        )

    @staticmethod
    def zero(basis, cap) -> "SemidirectSeries":
        return SemidirectSeries(basis, cap, {}, _normalized=True)

    # -- structure ---------------------------------------------------------

    def _check_context(self, other: "SemidirectSeries"):
        if self.basis.preset != other.basis.preset:
            raise ContextMismatch(
                f"presets differ: {self.basis.preset.key()} vs {other.basis.preset.key()}"
            )
        if self.cap != other.cap:
            raise ContextMismatch(f"caps differ: {self.cap} vs {other.cap}")

    def __add__(self, other):
        if not isinstance(other, SemidirectSeries):
            return NotImplemented
        self._check_context(other)
        terms = dict(self.terms)
        for perm, series in other.terms.items():
            s = terms.get(perm)
            s = series if s is None else s + series
            if s.is_zero():
                terms.pop(perm, None)
            else:
                terms[perm] = s
        return SemidirectSeries(self.basis, self.cap, terms, _normalized=True)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, SemidirectSeries):
            return NotImplemented
        return self + other.scale(-1)

    def scale(self, c) -> "SemidirectSeries":
        c = c if isinstance(c, Fraction) else Fraction(c)
        if not c:
            return SemidirectSeries.zero(self.basis, self.cap)
        return SemidirectSeries(
            self.basis,
            self.cap,
            {perm: series.scale(c) for perm, series in self.terms.items()},
            _normalized=True,
        )

    def __mul__(self, other):
        """Twisted product; components are re-normalized eagerly."""
        if not isinstance(other, SemidirectSeries):
            return NotImplemented
        self._check_context(other)
        acc: dict = {}
        for x, a in self.terms.items():
            for y, b in other.terms.items():
                key = x.compose(y)
                prod = a * b.act(x)
                cur = acc.get(key)
                acc[key] = prod if cur is None else cur + prod
        return SemidirectSeries(self.basis, self.cap, acc)

    def inverse(self) -> "SemidirectSeries":
        """Inverse of a single term g (x) pi with invertible g."""
        if len(self.terms) != 1:
            raise ContextMismatch("only single-term elements are inverted")
        ((perm, series),) = self.terms.items()
        if not series.constant_term:
            raise ContextMismatch("component with zero constant term is not invertible")
        ipi = perm.inverse()
        return SemidirectSeries(self.basis, self.cap, {ipi: series.inverse().act(ipi)})

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def min_degree(self):
        """Lowest degree with a nonzero coefficient across all components."""
        degrees = [s.min_degree() for s in self.terms.values()]
        degrees = [d for d in degrees if d is not None]
        return min(degrees) if degrees else None

    def degree_slice(self, k: int) -> dict:
        """{permutation: {word: coeff}} at one degree, zero slices dropped."""
        out = {}
        for perm, series in self.terms.items():
            sl = series.slices[k]
            if sl:
                out[perm] = dict(sl)
        return out

    def project_permutations(self) -> dict:
        """Augmentation to the group algebra: {pi: constant term}; multiplicative."""
        out = {}
        for perm, series in self.terms.items():
            c = series.constant_term
            if c:
                out[perm] = c
        return out

    def component(self, perm: Permutation) -> TruncatedSeries:
        return self.terms.get(perm, zero(self.basis.alphabet, self.cap))

    # -- stabilization ---------------------------------------------------------

    def stabilize(self, target_basis: GradedQuotientBasis) -> "SemidirectSeries":
        """Embed into the same preset family on more strands, fixing the new ones."""
        src, dst = self.basis.alphabet, target_basis.alphabet
        if src.kind != dst.kind or dst.n < src.n:
            raise ContextMismatch(f"cannot embed {src!r} into {dst!r}")
        images = [generator(dst, self.cap, pair) for pair in src.pairs]
        terms = {}
        for perm, series in self.terms.items():
            terms[perm.extend(dst.n)] = substitute_generators(series, images)
        return SemidirectSeries(target_basis, self.cap, terms)

    # -- text form ----------------------------------------------------------------

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for perm in sorted(self.terms):
            parts.append(f"({self.terms[perm].text()}) ⊗ {perm.one_line()}")
        return " + ".join(parts)

    @staticmethod
    def parse(text: str, basis: GradedQuotientBasis, cap: int) -> "SemidirectSeries":
        text = text.strip()
        if text == "0":
            return SemidirectSeries.zero(basis, cap)
        # Split on '+' outside parentheses only; component series carry signs inside.
        chunks = []
        depth = 0
        cur: list = []
        for ch in text:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "+" and depth == 0:
                chunks.append("".join(cur))
                cur = []
            else:
                cur.append(ch)
        chunks.append("".join(cur))
        terms: dict = {}
        for chunk in chunks:
            body, _, perm_txt = chunk.rpartition("⊗")
            if not perm_txt:
                raise ValueError(f"missing permutation part in {chunk!r}")
            body = body.strip()
            if body.startswith("(") and body.endswith(")"):
                body = body[1:-1]
            series = TruncatedSeries.parse(body, basis.alphabet, cap)
            perm = Permutation.from_one_line(perm_txt.strip())
            cur = terms.get(perm)
            terms[perm] = series if cur is None else cur + series
        return SemidirectSeries(basis, cap, terms)

    def __eq__(self, other):
        if not isinstance(other, SemidirectSeries):
            return NotImplemented
        return (
            self.basis.preset == other.basis.preset
            and self.cap == other.cap
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"<sd {self.text()} | cap {self.cap} over {self.basis.preset.key()}>"


def sd_mul(u: SemidirectSeries, v: SemidirectSeries) -> SemidirectSeries:
    return u * v


def sd_inverse(u: SemidirectSeries) -> SemidirectSeries:
    return u.inverse()
