"""Lefschetz numbers of toral automorphisms and their fixed-point data.

Three independent routes to the same integer are kept alive here: the
alternating trace over induced maps on cohomology, the determinant
det(I - A^k), and the signed count of fixed points on the torus.  The first
two are cross-checked inside :func:`toral_lefschetz` on every call; the
third is exposed by :func:`fixed_points_toral` / :func:`verify_classical_lefschetz`.

Sign conventions: the classical fixed-point index is sign det(I - J); the
epsilon convention used for foliation distributions is sign det(J - I).
They differ by (-1)^p in leaf dimension p, so both are always reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EnumerationLimitError, InconsistencyError, NotSimpleError, PreconditionError
from .linalg import (
    IntMatrix,
    RationalMatrix,
    determinant,
    exterior_power,
    matrix_power,
    rat_to_str,
)

__all__ = [
    "ToralAutomorphism",
    "GradedMap",
    "FixedPointReport",
    "ClassicalCheck",
    "lefschetz_number_graded",
    "toral_lefschetz",
    "fixed_points_toral",
    "fixed_point_index",
    "verify_classical_lefschetz",
    "ENUMERATION_CAP",
]

ENUMERATION_CAP = 10**6


@dataclass(frozen=True)
class ToralAutomorphism:
    """Integer matrix A in GL(n, Z) acting on the torus R^n / Z^n."""

    matrix: IntMatrix

    def __post_init__(self):
        if not self.matrix.is_square:
            raise PreconditionError("toral automorphism matrix must be square")
        if abs(determinant(self.matrix)) != 1:
            raise PreconditionError("toral automorphism must have determinant +-1")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def power(self, k: int) -> IntMatrix:
        m = matrix_power(self.matrix, k)
        assert isinstance(m, IntMatrix)
        return m


@dataclass(frozen=True)
class GradedMap:
    """Induced maps M_i on H^i(X), one square rational matrix per degree."""

    maps: tuple[RationalMatrix, ...]

    def __post_init__(self):
        for m in self.maps:
            if not m.is_square:
                raise PreconditionError("graded map matrices must be square")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(m.rows for m in self.maps)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))

    def power(self, k: int) -> "GradedMap":
        return GradedMap(tuple(matrix_power(m, k) for m in self.maps))

    @classmethod
    def identity(cls, dims) -> "GradedMap":
        return cls(tuple(RationalMatrix.identity(d) for d in dims))

    @classmethod
    def from_toral(cls, t: ToralAutomorphism, k: int = 1) -> "GradedMap":
        """Action of A^k on H^i(T^n) = Lambda^i(R^n)."""
        ak = t.power(k)
        return cls(tuple(exterior_power(ak, i).to_rational() for i in range(t.dim + 1)))


def lefschetz_number_graded(g: GradedMap) -> Fraction:
    """Alternating trace sum over all degrees, including degree 0."""
    return sum(((-1) ** i * m.trace() for i, m in enumerate(g.maps)), Fraction(0))


def toral_lefschetz(t: ToralAutomorphism, k: int) -> int:
    """L(F^k) = det(I - A^k), cross-checked against the exterior-trace sum."""
    if k == 0:
        raise PreconditionError("k must be nonzero")
    ak = t.power(k)
    n = t.dim
    via_det = determinant(IntMatrix.identity(n) - ak)
    via_traces = sum((-1) ** i * exterior_power(ak, i).trace() for i in range(n + 1))
    if via_det != via_traces:
        raise InconsistencyError(
            f"determinant path gave {via_det}, exterior-trace path gave {via_traces}"
        )
    return via_det


def fixed_point_index(j: RationalMatrix, convention: str = "paper") -> int:
    """Sign at a simple fixed point with linearization J.

    "paper" gives sign det(J - I); "classical" gives sign det(I - J).
    """
    if convention not in ("paper", "classical"):
        raise PreconditionError(f"unknown convention {convention!r}")
    d = determinant(j - RationalMatrix.identity(j.rows))
    if d == 0:
        raise NotSimpleError("fixed point is not simple: det(J - I) = 0")
    sign = 1 if d > 0 else -1
    if convention == "paper":
        return sign
    return sign * (-1) ** j.rows


@dataclass(frozen=True)
class FixedPointReport:
    """Fixed points of A^k on the torus; count is None when infinite."""

    count: int | None
    points: tuple[tuple[Fraction, ...], ...]
    indices: tuple[int, ...]  # classical convention, sign det(I - A^k)
    epsilons: tuple[int, ...]  # paper convention, sign det(A^k - I)

    @property
    def infinite(self) -> bool:
        return self.count is None

    def to_json_obj(self) -> dict:
        return {
            "count": "infinite" if self.count is None else str(self.count),
            "points": [[rat_to_str(x) for x in p] for p in self.points],
            "indices": list(self.indices),
            "epsilons": list(self.epsilons),
        }


def _smith_with_colops(rows: list[list[int]]) -> tuple[list[int], list[list[int]]]:
    """Diagonalize by unimodular row/column ops, tracking only column ops.

    Returns (diagonal entries, C) with D = R . A . C for some unimodular R,
    so x = C y maps solutions of D y in Z^n to solutions of A x in Z^n.
    """
    n = len(rows)
    a = [row[:] for row in rows]
    c = [[int(i == j) for j in range(n)] for i in range(n)]
    t = 0
    while t < n:
        best = None
        for i in range(t, n):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        if bj != t:
            for row in a:
                row[t], row[bj] = row[bj], row[t]
            for row in c:
                row[t], row[bj] = row[bj], row[t]
        piv = a[t][t]
        dirty = False
        for i in range(t + 1, n):
            q = a[i][t] // piv
            if q:
                for j in range(t, n):
                    a[i][j] -= q * a[t][j]
            if a[i][t]:
                dirty = True
        for j in range(t + 1, n):
            q = a[t][j] // piv
            if q:
                for i in range(t, n):
                    a[i][j] -= q * a[i][t]
                for i in range(n):
                    c[i][j] -= q * c[i][t]
            if a[t][j]:
                dirty = True
        if not dirty:
            t += 1
    return [a[i][i] for i in range(n)], c


def fixed_points_toral(t: ToralAutomorphism, k: int) -> FixedPointReport:
    """All solutions of A^k x = x on the torus, with both index conventions.

    When det(A^k - I) = 0 the fixed-point set is infinite and the report is
    the explicit degenerate variant (no enumeration is attempted).
    """
    if k == 0:
        raise PreconditionError("k must be nonzero")
    n = t.dim
    b = t.power(k) - IntMatrix.identity(n)
    det_b = determinant(b)
    if det_b == 0:
        return FixedPointReport(None, (), (), ())
    total = abs(det_b)
    if total > ENUMERATION_CAP:
        raise EnumerationLimitError(
            f"{total} fixed points exceed the enumeration cap {ENUMERATION_CAP}"
        )
    diag, c = _smith_with_colops([list(r) for r in b.entries])
    assert all(diag) and abs(_prod(diag)) == total
    points = []
    counters = [0] * n
    while True:
        y = [Fraction(counters[i], abs(diag[i])) for i in range(n)]
        x = tuple(
            sum(Fraction(c[i][j]) * y[j] for j in range(n)) % 1 for i in range(n)
        )
        points.append(x)
        for i in range(n - 1, -1, -1):
            counters[i] += 1
            if counters[i] < abs(diag[i]):
                break
            counters[i] = 0
        else:
            break
    points.sort()
    assert len(points) == len(set(points)) == total
    classical = 1 if determinant(IntMatrix.identity(n) - t.power(k)) > 0 else -1
    epsilon = classical * (-1) ** n
    return FixedPointReport(
        total, tuple(points), (classical,) * total, (epsilon,) * total
    )


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


@dataclass(frozen=True)
class ClassicalCheck:
    """Both sides of the classical Lefschetz identity for one (A, k)."""

    sum_of_indices: int
    lefschetz_number: int
    count: int

    @property
    def equal(self) -> bool:
        return self.sum_of_indices == self.lefschetz_number


def verify_classical_lefschetz(t: ToralAutomorphism, k: int) -> ClassicalCheck:
    """Assert sum of classical indices equals L(F^k); returns both sides."""
    report = fixed_points_toral(t, k)
    if report.infinite:
        raise NotSimpleError(f"A^{k} has non-simple fixed points: det(A^k - I) = 0")
    lhs = sum(report.indices)
    rhs = toral_lefschetz(t, k)
    if lhs != rhs:
        raise InconsistencyError(
            f"index sum {lhs} disagrees with Lefschetz number {rhs}"
        )
    return ClassicalCheck(lhs, rhs, report.count)
