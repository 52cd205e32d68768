"""Exact rational and integer linear algebra.

Everything here is arbitrary precision: matrices hold ``fractions.Fraction``
or Python ``int`` entries, stored row-major in immutable tuples.  Determinants
and ranks go through fraction-free (Bareiss) elimination on integer-scaled
rows, which keeps intermediate entries at minor-determinant size.

Serialization: rationals as ``"p/q"`` strings (``"p"`` when q = 1), integers
as decimal strings, matrices as JSON arrays-of-arrays of such strings.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, lcm

from .errors import PreconditionError

__all__ = [
    "Rational",
    "RationalMatrix",
    "IntMatrix",
    "rat_from_str",
    "rat_to_str",
    "rank_kernel",
    "determinant",
    "smith_normal_form",
    "matrix_power",
    "exterior_power",
]

Rational = Fraction  # canonical form (positive denominator, reduced) is built in


def rat_to_str(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s.strip())


class _Matrix:
    """Shared immutable row-major matrix container."""

    __slots__ = ("rows", "cols", "entries")

    _coerce = staticmethod(lambda x: x)

    def __init__(self, entries):
        rows = tuple(tuple(self._coerce(e) for e in row) for row in entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise PreconditionError("matrix rows must all have the same length")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]) if rows else 0)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    # -- construction -----------------------------------------------------
    @classmethod
    def identity(cls, n: int):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls([[0] * cols for _ in range(rows)])

    # -- basic queries -----------------------------------------------------
    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return type(self) is type(other) and self.entries == other.entries

    def __hash__(self):
        return hash((type(self).__name__, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries)
        return f"{type(self).__name__}([{body}])"

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        self._check_same_shape(other)
        return type(self)(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other):
        self._check_same_shape(other)
        return type(self)(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self):
        return type(self)([[-a for a in r] for r in self.entries])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise PreconditionError("matrix product requires cols(A) = rows(B)")
        bt = list(zip(*other.entries)) if other.entries else []
        return type(self)(
            [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.entries]
        )

    def scaled(self, c):
        return type(self)([[c * a for a in r] for r in self.entries])

    def transpose(self):
        return type(self)(list(zip(*self.entries)) if self.entries else [])

    def trace(self):
        if not self.is_square:
            raise PreconditionError("trace requires a square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), self._coerce(0))

    def _check_same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise PreconditionError("matrix shapes do not match")

    # -- serialization -----------------------------------------------------
    def to_json_obj(self):
        return [[rat_to_str(e) for e in row] for row in self.entries]

    @classmethod
    def from_json_obj(cls, obj):
        return cls([[rat_from_str(str(e)) for e in row] for row in obj])


class RationalMatrix(_Matrix):
    """Matrix over the rationals, entries are ``Fraction``."""

    _coerce = staticmethod(Fraction)


class IntMatrix(_Matrix):
    """Matrix over the integers, arbitrary precision."""

    @staticmethod
    def _coerce(x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise PreconditionError("IntMatrix entries must be integers")
            return x.numerator
        return int(x)

    def to_rational(self) -> RationalMatrix:
        return RationalMatrix(self.entries)


def _int_rows(m: _Matrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; return rows and the product of scalings."""
    rows, scale = [], Fraction(1)
    for row in m.entries:
        mult = lcm(*(Fraction(e).denominator for e in row)) if row else 1
        scale *= mult
        rows.append([int(Fraction(e) * mult) for e in row])
    return rows, scale


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free row echelon reduction (in place).

    Returns (echelon rows, pivot column indices, sign of row swaps).  All
    divisions are exact by the Bareiss identity.
    """
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    pivots: list[int] = []
    sign = 1
    prev = 1
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        pr = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
            sign = -sign
        piv = rows[r][c]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                rows[i][j] = (piv * rows[i][j] - rows[i][c] * rows[r][j]) // prev
            rows[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots, sign


def determinant(m: RationalMatrix | IntMatrix):
    """Exact determinant by fraction-free (Bareiss) elimination.

    Returns ``int`` for an IntMatrix, ``Fraction`` for a RationalMatrix.
    """
    if not m.is_square:
        raise PreconditionError("determinant requires a square matrix")
    n = m.rows
    if n == 0:
        return 1 if isinstance(m, IntMatrix) else Fraction(1)
    rows, scale = _int_rows(m)
    rows, pivots, sign = _bareiss_echelon(rows)
    if len(pivots) < n:
        det = Fraction(0)
    else:
        det = Fraction(sign * rows[n - 1][n - 1], 1) / scale
    if isinstance(m, IntMatrix):
        return int(det)
    return det


def rank_kernel(m: RationalMatrix | IntMatrix) -> tuple[int, list[tuple[Fraction, ...]]]:
    """Rank and an exact basis of the right kernel.

    Kernel vectors are normalized with each free variable set to 1, so
    rank + len(basis) = cols.  Elimination is fraction-free; only the final
    back substitution uses rational division.
    """
    rows, _ = _int_rows(m)
    rows, pivots, _ = _bareiss_echelon(rows)
    rank = len(pivots)
    nc = m.cols
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for r in range(rank - 1, -1, -1):
            c = pivots[r]
            s = sum(Fraction(rows[r][j]) * v[j] for j in range(c + 1, nc))
            v[c] = -s / rows[r][c]
        basis.append(tuple(v))
    return rank, basis


def smith_normal_form(m: IntMatrix) -> tuple[int, ...]:
    """Diagonal invariants d1 | d2 | ... | dr of an integer matrix.

    Only the invariants are computed, no transform matrices.  Zero invariants
    are dropped, so the chain length equals the rank.
    """
    if not isinstance(m, IntMatrix):
        raise PreconditionError("smith_normal_form requires an IntMatrix")
    a = [list(row) for row in m.entries]
    nr, nc = m.rows, m.cols
    invariants: list[int] = []
    t = 0
    while t < min(nr, nc):
        # locate the nonzero entry of least magnitude in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        for row in a:
            row[t], row[bj] = row[bj], row[t]
        piv = a[t][t]
        dirty = False
        for i in range(t + 1, nr):
            q = a[i][t] // piv
            if q:
                for j in range(t, nc):
                    a[i][j] -= q * a[t][j]
            if a[i][t]:
                dirty = True
        for j in range(t + 1, nc):
            q = a[t][j] // piv
            if q:
                for i in range(t, nr):
                    a[i][j] -= q * a[i][t]
            if a[t][j]:
                dirty = True
        if dirty:
            continue
        # pivot must divide the whole trailing block for the chain to hold
        offender = next(
            (i for i in range(t + 1, nr) if any(a[i][j] % piv for j in range(t + 1, nc))),
            None,
        )
        if offender is not None:
            for j in range(t, nc):
                a[t][j] += a[offender][j]
            continue
        invariants.append(abs(piv))
        t += 1
    for d, e in zip(invariants, invariants[1:]):
        if e % d:
            raise AssertionError("SNF divisibility chain broken")
    return tuple(invariants)


def _inverse(m: _Matrix) -> RationalMatrix:
    n = m.rows
    aug = [[Fraction(e) for e in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m.entries)]
    for c in range(n):
        pr = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pr is None:
            raise PreconditionError("matrix is singular, cannot invert")
        aug[c], aug[pr] = aug[pr], aug[c]
        piv = aug[c][c]
        aug[c] = [e / piv for e in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [e - f * p for e, p in zip(aug[i], aug[c])]
    return RationalMatrix([row[n:] for row in aug])


def matrix_power(m: RationalMatrix | IntMatrix, k: int):
    """Exact k-th power; k = 0 gives the identity, k < 0 inverts first.

    An IntMatrix result is returned as IntMatrix whenever the entries stay
    integral (always the case for k >= 0 and for unimodular matrices).
    """
    if not m.is_square:
        raise PreconditionError("matrix_power requires a square matrix")
    cls = type(m)
    if k < 0:
        base = _inverse(m)
        k = -k
    else:
        base = m if isinstance(m, RationalMatrix) else m.to_rational()
    result = RationalMatrix.identity(m.rows)
    while k:
        if k & 1:
            result = result @ base
        base = base @ base
        k >>= 1
    if cls is IntMatrix and all(e.denominator == 1 for r in result.entries for e in r):
        return IntMatrix(result.entries)
    return result


def exterior_power(m: RationalMatrix | IntMatrix, i: int):
    """Induced matrix on the i-th exterior power, C(n,i) x C(n,i).

    Basis: i-element subsets of row/column indices in lexicographic order;
    entry (I, J) is the minor det m[I, J].
    """
    if not m.is_square:
        raise PreconditionError("exterior_power requires a square matrix")
    n = m.rows
    if not 0 <= i <= n:
        raise PreconditionError(f"exterior power degree {i} out of range 0..{n}")
    subsets = list(itertools.combinations(range(n), i))
    cls = type(m)
    out = []
    for rows_idx in subsets:
        out_row = []
        for cols_idx in subsets:
            sub = cls([[m.entries[r][c] for c in cols_idx] for r in rows_idx])
            out_row.append(determinant(sub))
        out.append(out_row)
    assert len(subsets) == comb(n, i)
    return cls(out)
