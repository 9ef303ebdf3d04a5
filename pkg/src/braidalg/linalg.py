"""Sparse exact row echelon over Fraction, keyed by arbitrary column labels.

The one linear-algebra engine behind quotient bases, primitive-slice
membership, kernel computations and the associator extension solver.
Rows are dicts {column: Fraction}; the pivot of a row is its largest
column under the supplied ordering, and the stored table is kept
inter-reduced so that reduction is a single pass.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)


class SparseEchelon:
    """Incrementally echelonized span of sparse rational vectors."""

    __slots__ = ("key", "rows", "_occ")

    def __init__(self, key=None):
        self.key = key if key is not None else _identity
        # pivot column -> full row, normalized to pivot coefficient 1
        self.rows: dict = {}
        # column -> set of pivots whose rows contain it off-pivot
        self._occ: dict = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self):
        return self.rows.keys()

    def reduce(self, vec: dict) -> dict:
        """Canonical representative of vec modulo the stored span.

        Single pass suffices: stored rows never contain other pivots off-pivot.
        """
        out = {}
        for col, c in vec.items():
            if not c:
                continue
            row = self.rows.get(col)
            if row is None:
                c2 = out.get(col, ZERO) + c
                if c2:
                    out[col] = c2
                else:
                    del out[col]
            else:
                for col2, c2 in row.items():
                    if col2 == col:
                        continue
                    cv = out.get(col2, ZERO) - c * c2
                    if cv:
                        out[col2] = cv
                    else:
                        del out[col2]
        return out

    def add(self, vec: dict):
        """Adjoin a vector to the span; returns the new pivot or None if dependent."""
        rem = self.reduce(vec)
        if not rem:
            return None
        pivot = max(rem, key=self.key)
        cp = rem[pivot]
        row = {col: c / cp for col, c in rem.items()}
        # Back-substitute so existing rows stay free of the new pivot.
        for q in list(self._occ.get(pivot, ())):
            qrow = self.rows[q]
            cq = qrow.pop(pivot)
            self._occ[pivot].discard(q)
            for col, c in row.items():
                if col == pivot:
                    continue
                cv = qrow.get(col, ZERO) - cq * c
                if cv:
                    if col not in qrow:
                        self._occ.setdefault(col, set()).add(q)
                    qrow[col] = cv
                else:
                    del qrow[col]
                    self._occ[col].discard(q)
        self.rows[pivot] = row
        for col in row:
            if col != pivot:
                self._occ.setdefault(col, set()).add(pivot)
        return pivot

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def replacement(self, pivot) -> dict:
        """Reduced form of a pivot column: pivot = sum of strictly smaller terms."""
        row = self.rows[pivot]
        return {col: -c for col, c in row.items() if col != pivot}


def _identity(col):
    return col


class _Aux:
    """Bookkeeping column tracking the coefficient of one input vector."""

    __slots__ = ("index",)

    def __init__(self, index):
        self.index = index

    def __eq__(self, other):
        return isinstance(other, _Aux) and self.index == other.index

    def __hash__(self):
        return hash(("aux", self.index))

    def __repr__(self):
        return f"_Aux({self.index})"


def affine_solve(columns, rhs=None, key=None):
    """Solve  sum_i x_i * columns[i] = rhs  exactly over the rationals.

    ``columns`` is a list of sparse dicts over comparable labels (pass ``key``
    when labels are not directly comparable).  Returns ``(particular, kernel)``:
    ``particular`` is a coefficient list, or None when rhs is unreachable or
    was not given; ``kernel`` is a list of coefficient lists spanning the
    nullspace of the column map.
    """
    base_key = key if key is not None else _identity

    def mixed_key(col):
        # Aux columns sort below all real columns, so pivots prefer real
        # columns and a pure-aux pivot row is exactly a kernel relation.
        if isinstance(col, _Aux):
            return (0, col.index)
        return (1, base_key(col))

    ech = SparseEchelon(key=mixed_key)
    nvars = len(columns)
    kernel = []
    for i, colvec in enumerate(columns):
        vec = {col: c for col, c in colvec.items() if c}
        vec[_Aux(i)] = Fraction(1)
        pivot = ech.add(vec)
        if isinstance(pivot, _Aux):
            # Pivot is aux, so every column of the row is aux: a kernel vector.
            coeffs = [ZERO] * nvars
            for col, c in ech.rows[pivot].items():
                coeffs[col.index] = c
            kernel.append(coeffs)
    if rhs is None:
        return None, kernel
    rem = ech.reduce({col: c for col, c in rhs.items() if c})
    if any(not isinstance(col, _Aux) for col in rem):
        return None, kernel
    particular = [ZERO] * nvars
    for col, c in rem.items():
        particular[col.index] = -c
    return particular, kernel
