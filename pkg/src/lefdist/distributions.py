"""Atomic distributions on the structural group.

A distribution here is a finite sum of weighted Dirac atoms, plus an optional
constant smooth density (relative to the fixed volume form, normalized so the
group has volume one), plus symbolic orbital-integral terms that can be
carried around but never paired numerically.

Exactness is sticky: atom locations and coefficients are ``Fraction`` when
exact and ``float`` when not, and the two never merge implicitly.  Inexact
locations within ``DEFAULT_TOLERANCE`` of each other are considered the same
atom.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import PreconditionError
from .linalg import rat_from_str, rat_to_str

__all__ = [
    "DEFAULT_TOLERANCE",
    "LatticePoint",
    "RealPoint",
    "ConjClass",
    "GroupPoint",
    "IDENTITY",
    "OrbitTerm",
    "AtomicDistribution",
    "make",
    "add",
    "scale",
    "lattice",
    "real",
    "conj",
    "num_to_str",
    "num_from_str",
]

DEFAULT_TOLERANCE = 1e-9

Number = Fraction | float


def _coerce_number(x) -> Number:
    if isinstance(x, float):
        return x
    return Fraction(x)


def _is_exact(x) -> bool:
    return isinstance(x, Fraction)


def num_to_str(x: Number) -> str:
    if isinstance(x, float):
        return f"~{x!r}"
    return rat_to_str(x)


def num_from_str(s: str) -> Number:
    s = s.strip()
    if s.startswith("~"):
        return float(s[1:])
    return rat_from_str(s)


@dataclass(frozen=True)
class LatticePoint:
    """Element k of the integer lattice Z inside G = R (mapping-torus case)."""

    k: int

    @property
    def value(self):
        return self.k

    def __str__(self):
        return str(self.k)


@dataclass(frozen=True)
class RealPoint:
    """Point of G = R; exact when held as a Fraction, inexact as a float."""

    x: Number

    def __post_init__(self):
        object.__setattr__(self, "x", _coerce_number(self.x))

    @property
    def exact(self) -> bool:
        return _is_exact(self.x)

    @property
    def value(self):
        return self.x

    def __str__(self):
        return num_to_str(self.x)


@dataclass(frozen=True)
class ConjClass:
    """Conjugacy-class label in an abstract group; "e" is the identity."""

    label: str

    @property
    def value(self):
        return self.label

    def __str__(self):
        return self.label


GroupPoint = LatticePoint | RealPoint | ConjClass

IDENTITY = ConjClass("e")


def lattice(k: int) -> LatticePoint:
    return LatticePoint(int(k))


def real(x) -> RealPoint:
    return RealPoint(x)


def conj(label: str) -> ConjClass:
    return ConjClass(str(label))


_GROUP_OF_VARIANT = {LatticePoint: "Z", RealPoint: "R", ConjClass: "abstract"}


def _sort_key(p: GroupPoint):
    if isinstance(p, LatticePoint):
        return (p.k,)
    if isinstance(p, RealPoint):
        return (float(p.x), not p.exact)
    return (p.label,)


@dataclass(frozen=True)
class OrbitTerm:
    """Symbolic Selberg summand L(alpha(gamma)) * vol(centralizer) * (orbital integral).

    The coefficient is kept factored; the orbital integral itself stays
    symbolic, so terms can be compared and serialized but not paired.
    """

    class_label: str
    lefschetz: Number
    vol_centralizer: Number
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "lefschetz", _coerce_number(self.lefschetz))
        object.__setattr__(self, "vol_centralizer", _coerce_number(self.vol_centralizer))

    @property
    def coefficient(self) -> Number:
        return self.lefschetz * self.vol_centralizer

    def to_json_obj(self) -> dict:
        obj = {
            "class": self.class_label,
            "coeff_factors": {
                "lefschetz": num_to_str(self.lefschetz),
                "vol_centralizer": num_to_str(self.vol_centralizer),
            },
        }
        if self.note:
            obj["note"] = self.note
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "OrbitTerm":
        f = obj["coeff_factors"]
        return cls(
            obj["class"],
            num_from_str(f["lefschetz"]),
            num_from_str(f["vol_centralizer"]),
            obj.get("note", ""),
        )


@dataclass(frozen=True)
class AtomicDistribution:
    """Canonical-form distribution: merged atoms, no zero coefficients."""

    atoms: tuple[tuple[GroupPoint, Number], ...] = ()
    smooth_const: Number | None = None
    orbit_terms: tuple[OrbitTerm, ...] = ()
    group: str = "abstract"

    @property
    def is_zero(self) -> bool:
        return not self.atoms and not self.orbit_terms and self.smooth_const is None

    @property
    def purely_smooth(self) -> bool:
        return not self.atoms and not self.orbit_terms

    def coefficient_at(self, point: GroupPoint) -> Number:
        for p, c in self.atoms:
            if p == point:
                return c
        return Fraction(0)

    # -- linear structure ---------------------------------------------------
    def add(self, other: "AtomicDistribution", tolerance: float | None = None) -> "AtomicDistribution":
        if self.group != other.group:
            raise PreconditionError(
                f"cannot add distributions on different groups ({self.group} vs {other.group})"
            )
        sc = _add_opt(self.smooth_const, other.smooth_const)
        return make(
            self.atoms + other.atoms,
            sc,
            self.orbit_terms + other.orbit_terms,
            group=self.group,
            tolerance=tolerance,
        )

    def scale(self, c) -> "AtomicDistribution":
        c = _coerce_number(c)
        if self.orbit_terms:
            raise PreconditionError("cannot scale a distribution with symbolic orbit terms")
        sc = None if self.smooth_const is None else c * self.smooth_const
        return make(
            [(p, c * v) for p, v in self.atoms], sc, (), group=self.group
        )

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.add(other.scale(-1))

    def __rmul__(self, c):
        return self.scale(c)

    # -- pairing --------------------------------------------------------
    def pair(self, f: Callable, integral_of_f=None):
        """<d, f> = sum coeff * f(point value) + smooth_const * integral(f).

        ``integral_of_f`` is the integral of f against the reference volume
        form; it is required iff a smooth part is present.  Distributions with
        symbolic orbit terms refuse to pair.
        """
        if self.orbit_terms:
            raise PreconditionError(
                "pairing refused: distribution carries symbolic orbit terms"
            )
        if self.smooth_const is not None and integral_of_f is None:
            raise PreconditionError(
                "pairing requires integral_of_f when a smooth part is present"
            )
        total = Fraction(0)
        for p, c in self.atoms:
            total = total + c * f(p.value)
        if self.smooth_const is not None:
            total = total + self.smooth_const * integral_of_f
        return total

    # -- serialization ----------------------------------------------------
    def to_json_obj(self) -> dict:
        obj: dict = {"group": self.group}
        obj["atoms"] = [
            {"at": str(p), "coeff": num_to_str(c)} for p, c in self.atoms
        ]
        if self.smooth_const is not None:
            obj["smooth_const"] = num_to_str(self.smooth_const)
        if self.orbit_terms:
            obj["orbit_terms"] = [t.to_json_obj() for t in self.orbit_terms]
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "AtomicDistribution":
        group = obj.get("group", "abstract")
        atoms = []
        for a in obj.get("atoms", []):
            atoms.append((_parse_point(a["at"], group), num_from_str(a["coeff"])))
        smooth = obj.get("smooth_const")
        terms = tuple(OrbitTerm.from_json_obj(t) for t in obj.get("orbit_terms", []))
        return make(
            atoms,
            None if smooth is None else num_from_str(smooth),
            terms,
            group=group,
        )


def _parse_point(s: str, group: str) -> GroupPoint:
    if group == "Z":
        return LatticePoint(int(s))
    if group == "R":
        return RealPoint(num_from_str(s))
    return ConjClass(s)


def _add_opt(a: Number | None, b: Number | None) -> Number | None:
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def make(
    atoms=(),
    smooth_const=None,
    orbit_terms=(),
    group: str | None = None,
    tolerance: float | None = None,
) -> AtomicDistribution:
    """Canonicalize: merge provably-equal points, drop zeros, sort.

    Exact atom locations merge on equality; inexact ones merge within the
    tolerance (default ``DEFAULT_TOLERANCE``).  An exact and an inexact
    location that look equal raise unless ``tolerance`` is passed explicitly,
    in which case they merge to an inexact atom.
    """
    explicit_tol = tolerance is not None
    tol = Fraction(tolerance if explicit_tol else DEFAULT_TOLERANCE)
    norm: list[tuple[GroupPoint, Number]] = []
    variants = set()
    for p, c in atoms:
        if not isinstance(p, (LatticePoint, RealPoint, ConjClass)):
            raise PreconditionError(f"atom location {p!r} is not a group point")
        variants.add(type(p))
        norm.append((p, _coerce_number(c)))
    if len(variants) > 1:
        names = sorted(v.__name__ for v in variants)
        raise PreconditionError(f"cannot mix group-point variants in one distribution: {names}")
    inferred = _GROUP_OF_VARIANT[variants.pop()] if variants else None
    if group is None:
        group = inferred if inferred is not None else "abstract"
    elif inferred is not None and group != inferred:
        raise PreconditionError(
            f"declared group {group!r} does not match atom variant ({inferred!r})"
        )

    if norm and isinstance(norm[0][0], RealPoint):
        merged = _merge_real_atoms(norm, tol, explicit_tol)
    else:
        acc: dict = {}
        order: list = []
        for p, c in norm:
            if p in acc:
                acc[p] = acc[p] + c
            else:
                acc[p] = c
                order.append(p)
        merged = [(p, acc[p]) for p in order]

    merged = [(p, c) for p, c in merged if c != 0]
    merged.sort(key=lambda pc: _sort_key(pc[0]))

    if smooth_const is not None:
        smooth_const = _coerce_number(smooth_const)
        if smooth_const == 0:
            smooth_const = None

    terms = tuple(
        sorted(orbit_terms, key=lambda t: (t.class_label, str(t.lefschetz), t.note))
    )
    return AtomicDistribution(tuple(merged), smooth_const, terms, group)


def _merge_real_atoms(norm, tol: Fraction, explicit_tol: bool):
    items = sorted(norm, key=lambda pc: _sort_key(pc[0]))
    clusters: list[list] = []  # [representative point, coeff, all_exact]
    for p, c in items:
        if clusters:
            rep, acc, all_exact = clusters[-1]
            close = abs(Fraction(p.x) - Fraction(rep.x)) <= tol
            if p.exact and all_exact:
                if Fraction(p.x) == Fraction(rep.x):
                    clusters[-1][1] = acc + c
                    continue
            elif not p.exact and not all_exact:
                if close:
                    clusters[-1][1] = acc + c
                    continue
            elif close:  # one side exact, the other not
                if not explicit_tol:
                    raise PreconditionError(
                        f"exact point {rep} and inexact point {p} are within the "
                        "default tolerance; pass an explicit tolerance to merge them"
                    )
                clusters[-1][0] = RealPoint(float(rep.x))
                clusters[-1][1] = acc + c
                clusters[-1][2] = False
                continue
        clusters.append([p, c, p.exact])
    return [(rep, acc) for rep, acc, _ in clusters]


def add(d: AtomicDistribution, e: AtomicDistribution, tolerance: float | None = None) -> AtomicDistribution:
    return d.add(e, tolerance=tolerance)


def scale(d: AtomicDistribution, c) -> AtomicDistribution:
    return d.scale(c)
