"""Welded braid words, group-ring elements, and the Aut(F_n) equality oracle.

The braid-permutation group consists of the automorphisms of the free group
sending each generator x_i to a conjugate of some x_{s(i)}.  Words in the
tokens a(i,j), s(i), sigma(i) are evaluated to such automorphisms; equality
of automorphisms (reduced image words compared letter-by-letter) is the
exact equality oracle for the group.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .perms import Permutation


class WordError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Token:
    """One letter of a welded word: a(i,j)^e, s(i) or sigma(i)^e with e = +-1."""

    kind: str  # "a" | "s" | "sigma"
    i: int
    j: int = 0
    power: int = 1

    def __post_init__(self):
        if self.kind not in ("a", "s", "sigma"):
            raise WordError(f"unknown token kind {self.kind!r}")
        if self.power not in (1, -1):
            raise WordError("token powers must be expanded to +-1")
        if self.kind == "s" and self.power != 1:
            raise WordError("s(i) is its own inverse; use power 1")
        if self.kind == "a" and (self.i == self.j or self.i < 1 or self.j < 1):
            raise WordError(f"a({self.i},{self.j}) needs distinct positive labels")
        if self.kind in ("s", "sigma") and self.i < 1:
            raise WordError(f"{self.kind}({self.i}) needs a positive index")

    def inverse(self) -> "Token":
        if self.kind == "s":
            return self
        return Token(self.kind, self.i, self.j, -self.power)

    def text(self) -> str:
        if self.kind == "a":
            base = f"a{self.i}{self.j}"
        elif self.kind == "s":
            return f"s{self.i}"
        else:
            base = f"sig{self.i}"
        return base if self.power == 1 else base + "^-1"


def a(i: int, j: int, power: int = 1) -> Token:
    return Token("a", i, j, power)


def s(i: int) -> Token:
    return Token("s", i)


def sigma(i: int, power: int = 1) -> Token:
    return Token("sigma", i, 0, power)


@dataclass(frozen=True)
class WeldedWord:
    """A word in the generators of the braid-permutation group on n strands."""

    n: int
    letters: tuple

    def __post_init__(self):
        for t in self.letters:
            if t.kind == "a":
                if not (1 <= t.i <= self.n and 1 <= t.j <= self.n):
                    raise WordError(f"token {t.text()} out of range for n={self.n}")
            elif not 1 <= t.i < self.n:
                raise WordError(f"token {t.text()} out of range for n={self.n}")

    def __mul__(self, other: "WeldedWord") -> "WeldedWord":
        if self.n != other.n:
            raise WordError(f"strand mismatch: {self.n} vs {other.n}")
        return WeldedWord(self.n, self.letters + other.letters)

    def inverse(self) -> "WeldedWord":
        return WeldedWord(self.n, tuple(t.inverse() for t in reversed(self.letters)))

    def is_braid_word(self) -> bool:
        return all(t.kind == "sigma" for t in self.letters)

    def text(self) -> str:
        return " ".join(t.text() for t in self.letters) if self.letters else ""

    @staticmethod
    def parse(text: str, n: int) -> "WeldedWord":
        return parse_word(text, n)

    def __repr__(self):
        return f"WeldedWord({self.n}, '{self.text()}')"


def word(n: int, *letters) -> WeldedWord:
    return WeldedWord(n, tuple(letters))


_TOKEN_RE = re.compile(r"(a|sig|s)(\d)(\d)?(?:\^(-?\d+))?\Z")


def parse_word(text: str, n: int) -> WeldedWord:
    """Grammar: whitespace-separated ``a12``, ``a12^-1``, ``a12^3``, ``s1``, ``sig1``.

    Powers expand at parse time; ``s`` tokens are involutions, so negative
    powers of them expand to the same letters.
    """
    letters = []
    for tok in text.split():
        m = _TOKEN_RE.match(tok)
        if not m:
            raise WordError(f"bad token {tok!r}")
        kind_txt, i_txt, j_txt, pow_txt = m.groups()
        power = int(pow_txt) if pow_txt is not None else 1
        i = int(i_txt)
        if kind_txt == "a":
            if j_txt is None:
                raise WordError(f"token {tok!r} needs two strand labels")
            base = Token("a", i, int(j_txt), 1)
        elif kind_txt == "s":
            if j_txt is not None:
                raise WordError(f"bad token {tok!r}")
            base = Token("s", i)
        else:
            if j_txt is not None:
                raise WordError(f"bad token {tok!r}")
            base = Token("sigma", i, 0, 1)
        if power == 0:
            continue
        letter = base if power > 0 else base.inverse()
        letters.extend([letter] * abs(power))
    return WeldedWord(n, tuple(letters))


# -- free group automorphisms ------------------------------------------------


def _free_reduce(seq) -> tuple:
    out = []
    for g in seq:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


@dataclass(frozen=True)
class FreeGroupEndo:
    """Images of the free-group generators; letters are +-(1..n), reduced."""

    n: int
    images: tuple

    @staticmethod
    def identity(n: int) -> "FreeGroupEndo":
        return FreeGroupEndo(n, tuple((i,) for i in range(1, n + 1)))

    @staticmethod
    def generator_a(n: int, i: int, j: int, power: int = 1) -> "FreeGroupEndo":
        """a(i,j): x_i -> x_j^-1 x_i x_j, fixing the other generators."""
        images = [(k,) for k in range(1, n + 1)]
        if power == 1:
            images[i - 1] = (-j, i, j)
        else:
            images[i - 1] = (j, i, -j)
        return FreeGroupEndo(n, tuple(images))

    @staticmethod
    def generator_s(n: int, i: int) -> "FreeGroupEndo":
        images = [(k,) for k in range(1, n + 1)]
        images[i - 1], images[i] = (i + 1,), (i,)
        return FreeGroupEndo(n, tuple(images))

    def apply_word(self, letters) -> tuple:
        """Image of a free-group word, freely reduced."""
        out = []
        for g in letters:
            img = self.images[g - 1] if g > 0 else tuple(-h for h in reversed(self.images[-g - 1]))
            out.extend(img)
        return _free_reduce(out)

    def compose(self, other: "FreeGroupEndo") -> "FreeGroupEndo":
        """(self . other)(x) = self(other(x))."""
        if self.n != other.n:
            raise WordError(f"rank mismatch: {self.n} vs {other.n}")
        return FreeGroupEndo(self.n, tuple(self.apply_word(w) for w in other.images))

    def permutation_part(self) -> Permutation:
        """Abelianized strand action; defined for permutation-conjugacy endos."""
        images = []
        for idx, img in enumerate(self.images, start=1):
            counts = {}
            for g in img:
                counts[abs(g)] = counts.get(abs(g), 0) + (1 if g > 0 else -1)
            nonzero = {k: v for k, v in counts.items() if v}
            if len(nonzero) != 1 or set(nonzero.values()) != {1}:
                raise WordError(f"image of x_{idx} is not a conjugate of a generator")
            images.append(next(iter(nonzero)))
        return Permutation(tuple(images))

    def fixes_product_of_generators(self) -> bool:
        """Whether x_1 x_2 ... x_n is fixed (Artin's characterization of braids)."""
        return self.apply_word(range(1, self.n + 1)) == tuple(range(1, self.n + 1))


_TOKEN_ENDOS: dict = {}


def _token_endo(n: int, t: Token) -> FreeGroupEndo:
    key = (n, t)
    endo = _TOKEN_ENDOS.get(key)
    if endo is None:
        if t.kind == "a":
            endo = FreeGroupEndo.generator_a(n, t.i, t.j, t.power)
        elif t.kind == "s":
            endo = FreeGroupEndo.generator_s(n, t.i)
        else:
            # sigma_i = a_{i,i+1} s_i; the inverse reverses and inverts.
            ai = FreeGroupEndo.generator_a(n, t.i, t.i + 1, t.power)
            si = FreeGroupEndo.generator_s(n, t.i)
            endo = ai.compose(si) if t.power == 1 else si.compose(ai)
        _TOKEN_ENDOS[key] = endo
    return endo


def as_automorphism(w: WeldedWord) -> FreeGroupEndo:
    """Evaluate a welded word in Aut(F_n); the group product is composition."""
    endo = FreeGroupEndo.identity(w.n)
    for t in w.letters:
        endo = endo.compose(_token_endo(w.n, t))
    return endo


def words_equal_in_bp(w1: WeldedWord, w2: WeldedWord) -> bool:
    """Exact equality in the braid-permutation group via the faithful action."""
    if w1.n != w2.n:
        raise WordError(f"strand mismatch: {w1.n} vs {w2.n}")
    return as_automorphism(w1) == as_automorphism(w2)


def pure_braid_generator(j: int, i: int, n: int) -> WeldedWord:
    """alpha_{ji} = sigma_{i-1} ... sigma_{j+1} sigma_j^2 sigma_{j+1}^-1 ... sigma_{i-1}^-1."""
    if not 1 <= j < i <= n:
        raise WordError(f"need 1 <= j < i <= n, got j={j}, i={i}, n={n}")
    conj = [sigma(k) for k in range(i - 1, j, -1)]
    body = [sigma(j), sigma(j)]
    return WeldedWord(n, tuple(conj + body + [t.inverse() for t in reversed(conj)]))


# -- defining relations -------------------------------------------------------


def _commutator(u: WeldedWord, v: WeldedWord) -> WeldedWord:
    return u * v * u.inverse() * v.inverse()


def mccool_relations(n: int) -> list:
    """All McCool relators (I), (II), (III), one word per valid index tuple."""
    rels = []
    strands = range(1, n + 1)
    for i in strands:
        for j in strands:
            for k in strands:
                if len({i, j, k}) != 3:
                    continue
                rels.append(
                    (f"(a{i}{k},a{j}{k})", _commutator(word(n, a(i, k)), word(n, a(j, k))))
                )
                rels.append(
                    (
                        f"(a{i}{j},a{i}{k}a{j}{k})",
                        _commutator(word(n, a(i, j)), word(n, a(i, k), a(j, k))),
                    )
                )
    for i in strands:
        for j in strands:
            for k in strands:
                for l in strands:
                    if len({i, j, k, l}) != 4:
                        continue
                    rels.append(
                        (f"(a{i}{j},a{k}{l})", _commutator(word(n, a(i, j)), word(n, a(k, l))))
                    )
    return rels


def braid_relations(n: int) -> list:
    """Artin relators in sigma tokens: far commutation and the braid relation."""
    rels = []
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append(
                (f"(sig{i},sig{j})", _commutator(word(n, sigma(i)), word(n, sigma(j))))
            )
    for i in range(1, n - 1):
        lhs = word(n, sigma(i + 1), sigma(i), sigma(i + 1))
        rhs = word(n, sigma(i), sigma(i + 1), sigma(i))
        rels.append((f"braid({i},{i + 1})", lhs * rhs.inverse()))
    return rels


def equivariance_relations(n: int) -> list:
    """s a(i,j) s^-1 = a(s(i),s(j)) for adjacent transpositions, as relators."""
    rels = []
    for k in range(1, n):
        sk = Permutation.transposition(n, k)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                lhs = word(n, s(k), a(i, j), s(k))
                rhs = word(n, a(sk(i), sk(j)))
                rels.append((f"s{k} a{i}{j} s{k} = a{sk(i)}{sk(j)}", lhs * rhs.inverse()))
    return rels


# -- group ring ----------------------------------------------------------------


class GroupRingElement:
    """Rational combination of welded words, each kept in its given spelling."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict):
        self.n = n
        clean = {}
        for w, c in terms.items():
            if w.n != n:
                raise WordError(f"strand mismatch: {w.n} vs {n}")
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                clean[w] = c
        self.terms = clean

    @staticmethod
    def from_word(w: WeldedWord, coeff=1) -> "GroupRingElement":
        return GroupRingElement(w.n, {w: Fraction(coeff)})

    @staticmethod
    def one(n: int) -> "GroupRingElement":
        return GroupRingElement(n, {WeldedWord(n, ()): Fraction(1)})

    def __add__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        if self.n != other.n:
            raise WordError("strand mismatch")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c
        return GroupRingElement(self.n, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "GroupRingElement":
        c = Fraction(c)
        return GroupRingElement(self.n, {w: cv * c for w, cv in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        if self.n != other.n:
            raise WordError("strand mismatch")
        terms: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                terms[w] = terms.get(w, Fraction(0)) + c1 * c2
        return GroupRingElement(self.n, terms)

    def __pow__(self, k: int):
        if k < 0:
            raise WordError("group-ring powers need k >= 0")
        out = GroupRingElement.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w.letters), w.text())):
            c = self.terms[w]
            body = f"{c if c > 0 else -c}*[{w.text()}]"
            parts.append(("-" if c < 0 else "+", body))
        sign0, body0 = parts[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    @staticmethod
    def parse(text: str, n: int) -> "GroupRingElement":
        """Grammar: ``rational * [word] (+- rational * [word])*``, [] = identity."""
        stripped = text.strip()
        if stripped in ("", "0"):
            return GroupRingElement(n, {})
        pattern = re.compile(
            r"\s*(?P<sign>[+-])?\s*(?P<rat>\d+(?:/\d+)?)\s*\*\s*\[(?P<word>[^\]]*)\]"
        )
        terms: dict = {}
        pos = 0
        first = True
        while pos < len(stripped):
            m = pattern.match(stripped, pos)
            if not m or m.end() == pos:
                raise WordError(f"bad group-ring syntax near {stripped[pos:pos + 20]!r}")
            if m.group("sign") is None and not first:
                raise WordError(f"missing +/- near {stripped[pos:pos + 20]!r}")
            c = Fraction(m.group("rat"))
            if m.group("sign") == "-":
                c = -c
            w = parse_word(m.group("word"), n)
            terms[w] = terms.get(w, Fraction(0)) + c
            pos = m.end()
            first = False
        return GroupRingElement(n, terms)

    def __repr__(self):
        return f"<group-ring {self.text()} | n={self.n}>"
