"""Lefschetz-distribution constructors for the closed-form example families.

Each constructor instantiates the distribution of one family on a finite
window supplied by the caller (the full object is an infinite atomic series;
any pairing against a compactly supported test function only sees a window).

Families: mapping tori of toral automorphisms or graded cohomology maps,
codimension-one flows with prescribed closed orbits, suspensions over compact
groups, the genus-g hyperbolic surface suspension with its degreewise traces,
nilpotent homogeneous foliations, and the Selberg-type report for bundles
over homogeneous spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .distributions import (
    IDENTITY,
    AtomicDistribution,
    LatticePoint,
    OrbitTerm,
    RealPoint,
    make,
)
from .errors import InconsistencyError, NotSimpleError, PreconditionError
from .lefschetz import GradedMap, ToralAutomorphism, lefschetz_number_graded, toral_lefschetz
from .lie_cohomology import GradedDims, LieAlgebra, cohomology_dims, is_nilpotent
from .linalg import RationalMatrix, determinant, matrix_power

__all__ = [
    "ClosedOrbitSpec",
    "SuspensionSpec",
    "ConjugacyClassData",
    "HomogeneousSpec",
    "SurfaceSuspension",
    "NilFoliationReport",
    "CorollaryReport",
    "mapping_torus",
    "flow_distribution",
    "suspension",
    "surface_suspension_traces",
    "nil_foliation",
    "selberg_report",
    "corollary_checks",
]

Number = Fraction | float


def _coerce(x) -> Number:
    return x if isinstance(x, float) else Fraction(x)


# -- mapping tori ------------------------------------------------------------


def mapping_torus(source: ToralAutomorphism | GradedMap, window: int) -> AtomicDistribution:
    """chi(X) . delta_0 + sum_{0 < |k| <= window} L(F^k) . delta_k on Z.

    For a toral automorphism the coefficients come from
    :func:`toral_lefschetz` (which cross-checks its two internal paths and
    stays evaluable even when fixed points degenerate); chi(T^n) = 0.  For a
    graded cohomology map, L(F^k) is the alternating trace of the k-th powers
    and chi is the alternating dimension sum.
    """
    if window < 0:
        raise PreconditionError("window must be >= 0")
    if isinstance(source, ToralAutomorphism):
        chi = 0
        coeff = lambda k: Fraction(toral_lefschetz(source, k))
    elif isinstance(source, GradedMap):
        chi = source.euler_characteristic
        coeff = lambda k: lefschetz_number_graded(source.power(k))
    else:
        raise PreconditionError("source must be a ToralAutomorphism or a GradedMap")
    atoms = [(LatticePoint(0), Fraction(chi))]
    for k in range(1, window + 1):
        atoms.append((LatticePoint(k), coeff(k)))
        atoms.append((LatticePoint(-k), coeff(-k)))
    return make(atoms, group="Z")


# -- codimension-one flows ----------------------------------------------------


@dataclass(frozen=True)
class ClosedOrbitSpec:
    """Primitive closed orbit: period plus linearized leafwise return map.

    Give either ``return_map`` (signs are derived from det(P^k - I), so the
    simplicity assumption is checked) or a raw ``signs`` map k -> +-1, which
    is accepted unchecked.
    """

    length: Number
    return_map: RationalMatrix | None = None
    signs: dict[int, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "length", _coerce(self.length))
        if self.length <= 0:
            raise PreconditionError("orbit length must be positive")
        if (self.return_map is None) == (self.signs is None):
            raise PreconditionError("give exactly one of return_map or signs")
        if self.return_map is not None and not self.return_map.is_square:
            raise PreconditionError("return map must be square")

    @property
    def unchecked(self) -> bool:
        return self.signs is not None

    def sign(self, k: int, orbit_name: str = "orbit") -> int:
        """epsilon at the k-th multiple: sign det(P^k - I)."""
        if k == 0:
            raise PreconditionError("k must be nonzero")
        if self.signs is not None:
            try:
                s = self.signs[k]
            except KeyError:
                raise PreconditionError(
                    f"{orbit_name}: no sign supplied for multiple k={k}"
                ) from None
            if s not in (-1, 1):
                raise PreconditionError(f"{orbit_name}: sign for k={k} must be +-1")
            return s
        p = self.return_map
        if determinant(p) == 0:
            raise PreconditionError(f"{orbit_name}: return map is singular")
        pk = matrix_power(p, k)
        d = determinant(pk - RationalMatrix.identity(p.rows))
        if d == 0:
            raise NotSimpleError(
                f"{orbit_name} is not simple at multiple k={k}: det(P^k - I) = 0"
            )
        return 1 if d > 0 else -1


def flow_distribution(
    orbits, window, tolerance: float | None = None
) -> AtomicDistribution:
    """sum_c l(c) sum_{k != 0} epsilon_{k l(c)}(c) . delta_{k l(c)}, |k l(c)| <= window.

    Coincident multiples of commensurable orbits merge additively; exact and
    inexact lengths only merge under an explicit tolerance.
    """
    window = _coerce(window)
    if window <= 0:
        raise PreconditionError("window must be positive")
    w = Fraction(window)
    atoms = []
    for idx, orbit in enumerate(orbits):
        name = f"orbit {idx} (length {orbit.length})"
        ell = orbit.length
        k = 1
        while Fraction(ell) * k <= w:
            for kk in (k, -k):
                s = orbit.sign(kk, name)
                atoms.append((RealPoint(ell * kk), ell * s))
            k += 1
    return make(atoms, group="R", tolerance=tolerance)


# -- suspensions --------------------------------------------------------------


@dataclass(frozen=True)
class SuspensionSpec:
    """Suspension data: vol(G), chi(X), optionally the Betti numbers of X."""

    vol_g: Number
    chi_x: int
    betti: GradedDims | None = None

    def __post_init__(self):
        object.__setattr__(self, "vol_g", _coerce(self.vol_g))
        if self.vol_g <= 0:
            raise PreconditionError("vol(G) must be positive")
        if self.betti is not None and self.betti.euler_characteristic != self.chi_x:
            raise PreconditionError(
                "chi_x does not match the alternating sum of the supplied Betti numbers"
            )


def suspension(s: SuspensionSpec) -> AtomicDistribution:
    """vol(G) . chi(X) . delta_e, valid on the whole group."""
    return make([(IDENTITY, s.vol_g * s.chi_x)], group="abstract")


@dataclass(frozen=True)
class SurfaceSuspension:
    """Degreewise traces of the genus-g hyperbolic surface suspension."""

    genus: int
    traces: tuple[AtomicDistribution, AtomicDistribution, AtomicDistribution]
    lefschetz: AtomicDistribution
    betti_lambda: tuple[Number, Number, Number]
    chi_lambda: Number


def surface_suspension_traces(genus: int, vol_g: Number = Fraction(1)) -> SurfaceSuspension:
    """Tr^0 = Tr^2 = 1, Tr^1 = (2g-2) vol(G) . delta_e + 2, L = (2-2g) vol(G) . delta_e.

    The smooth constants are densities relative to the unit-volume reference
    form.  The alternating sum of the emitted traces is recomputed and checked
    against the direct suspension formula rather than assumed.
    """
    vol_g = _coerce(vol_g)
    if genus < 2:
        raise PreconditionError("genus must be >= 2 (hyperbolic leaf metric required)")
    if vol_g <= 0:
        raise PreconditionError("vol(G) must be positive")
    tr0 = make([], smooth_const=1, group="abstract")
    tr1 = make([(IDENTITY, (2 * genus - 2) * vol_g)], smooth_const=2, group="abstract")
    tr2 = make([], smooth_const=1, group="abstract")
    lefschetz = tr0 - tr1 + tr2
    direct = suspension(SuspensionSpec(vol_g, 2 - 2 * genus))
    if lefschetz != direct:
        raise InconsistencyError(
            "alternating trace sum disagrees with the suspension formula"
        )
    return SurfaceSuspension(
        genus=genus,
        traces=(tr0, tr1, tr2),
        lefschetz=lefschetz,
        betti_lambda=(Fraction(0), (2 * genus - 2) * vol_g, Fraction(0)),
        chi_lambda=(2 - 2 * genus) * vol_g,
    )


# -- nilpotent homogeneous foliations -----------------------------------------


@dataclass(frozen=True)
class CorollaryReport:
    """Outcome of the purely-smooth vanishing check (positive codimension)."""

    applicable: bool
    passed: bool
    detail: str


def corollary_checks(d: AtomicDistribution, codim: int) -> CorollaryReport:
    """A purely smooth Lefschetz distribution in positive codimension must vanish.

    Distributions with atoms or orbital terms are outside the criterion's
    hypothesis and pass vacuously.
    """
    if codim < 1:
        raise PreconditionError("codim must be a positive integer")
    if not d.purely_smooth:
        return CorollaryReport(
            applicable=False,
            passed=True,
            detail="distribution has atomic or orbital support; vanishing criterion not applicable",
        )
    if d.smooth_const is None:
        return CorollaryReport(
            applicable=True, passed=True, detail="purely smooth and identically zero"
        )
    return CorollaryReport(
        applicable=True,
        passed=False,
        detail=(
            f"purely smooth with nonzero constant density {d.smooth_const}; "
            "a smooth Lefschetz distribution in positive codimension must be zero"
        ),
    )


@dataclass(frozen=True)
class NilFoliationReport:
    dims: GradedDims
    traces: tuple[AtomicDistribution, ...]
    lefschetz: AtomicDistribution
    corollary: CorollaryReport


def nil_foliation(a: LieAlgebra) -> NilFoliationReport:
    """Tr^i = dim H^i(k) as constant densities; L = alternating sum = 0.

    Requires a nilpotent algebra (the example family lives on a nilmanifold
    with simply connected nilpotent structural group); the vanishing of L is
    recomputed from the emitted traces and asserted.
    """
    if not is_nilpotent(a).nilpotent:
        raise PreconditionError(
            "nil_foliation requires a nilpotent Lie algebra "
            "(nilpotent structural group hypothesis)"
        )
    dims = cohomology_dims(a)
    traces = tuple(make([], smooth_const=b, group="abstract") for b in dims)
    lefschetz = make([], group="abstract")
    for i, t in enumerate(traces):
        lefschetz = lefschetz + t.scale((-1) ** i)
    if not lefschetz.is_zero:
        raise InconsistencyError("alternating sum of nilfoliation traces is not zero")
    report = corollary_checks(lefschetz, codim=1)
    if not report.passed:
        raise InconsistencyError("nilfoliation output violates the vanishing corollary")
    return NilFoliationReport(dims, traces, lefschetz, report)


# -- bundles over homogeneous spaces ------------------------------------------


@dataclass(frozen=True)
class ConjugacyClassData:
    """One conjugacy class gamma: its Lefschetz number and centralizer volume."""

    label: str
    lefschetz: Number | GradedMap | None
    vol_centralizer: Number = Fraction(1)
    is_identity: bool = False

    def __post_init__(self):
        if not isinstance(self.lefschetz, (GradedMap, type(None))):
            object.__setattr__(self, "lefschetz", _coerce(self.lefschetz))
        object.__setattr__(self, "vol_centralizer", _coerce(self.vol_centralizer))
        if self.vol_centralizer <= 0:
            raise PreconditionError("centralizer volume must be positive")

    def lefschetz_value(self) -> Number:
        if self.lefschetz is None:
            raise PreconditionError(
                f"class {self.label!r}: a Lefschetz number or graded map is required"
            )
        if isinstance(self.lefschetz, GradedMap):
            return lefschetz_number_graded(self.lefschetz)
        return self.lefschetz


@dataclass(frozen=True)
class HomogeneousSpec:
    """Bundle over a homogeneous space: volumes, chi(X) and conjugacy data."""

    vol_quotient: Number
    chi_x: int
    classes: tuple[ConjugacyClassData, ...] = ()
    group_kind: str = "abstract"

    def __post_init__(self):
        object.__setattr__(self, "vol_quotient", _coerce(self.vol_quotient))
        object.__setattr__(self, "classes", tuple(self.classes))
        if self.vol_quotient <= 0:
            raise PreconditionError("vol(Gamma\\G) must be positive")
        if self.group_kind not in ("abstract", "R"):
            raise PreconditionError("group_kind must be 'abstract' or 'R'")
        if sum(1 for c in self.classes if c.is_identity) != 1:
            raise PreconditionError("exactly one conjugacy class must be the identity")


def selberg_report(h: HomogeneousSpec) -> AtomicDistribution:
    """vol(Gamma\\G) chi(X) . delta_e plus one orbital term per nontrivial class.

    With ``group_kind = "R"`` (Gamma = Z acting by powers of a single map)
    every orbit is a point: class labels parse as integers k and the terms
    collapse to atoms L(F^k) vol(centralizer) . delta_k, reproducing the
    mapping-torus series.
    """
    nontrivial = [c for c in h.classes if not c.is_identity]
    identity_coeff = h.vol_quotient * h.chi_x
    if h.group_kind == "R":
        atoms = [(LatticePoint(0), identity_coeff)]
        for c in nontrivial:
            try:
                k = int(c.label)
            except ValueError:
                raise PreconditionError(
                    f"class label {c.label!r} must parse as an integer when group_kind is 'R'"
                ) from None
            if k == 0:
                raise PreconditionError("nontrivial class label 0 clashes with the identity")
            atoms.append((LatticePoint(k), c.lefschetz_value() * c.vol_centralizer))
        return make(atoms, group="Z")
    atoms = [(IDENTITY, identity_coeff)]
    terms = tuple(
        OrbitTerm(c.label, c.lefschetz_value(), c.vol_centralizer) for c in nontrivial
    )
    return make(atoms, orbit_terms=terms, group="abstract")
