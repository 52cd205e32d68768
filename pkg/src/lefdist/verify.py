"""Cross-oracle battery: independent brute-force recomputations.

Each check pits a library computation path against a deliberately separate
implementation (different basis conventions, raw enumeration, numerical
quadrature against known answers).  The CLI ``verify`` subcommand and the
test suite both run these.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .lie_cohomology import LieAlgebra, nilpotent_battery
from .linalg import IntMatrix, RationalMatrix, determinant, exterior_power, rank_kernel, smith_normal_form

DEFAULT_SEED = 1785


def battery_seed() -> int:
    """Seed for randomized batteries; LEFSCHETZ_SEED overrides."""
    return int(os.environ.get("LEFSCHETZ_SEED", DEFAULT_SEED))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


# -- independent Chevalley-Eilenberg route ----------------------------------


def ce_dims_reversed_basis(a: LieAlgebra) -> tuple[int, ...]:
    """Betti numbers via a second CE materialization, reversed basis order.

    Exterior monomials are indexed by DECREASING index tuples and the
    differential is evaluated from its defining alternating sum without any
    subset bookkeeping shared with the main implementation.
    """
    n = a.dim
    if n == 0:
        return (1,)

    def basis(degree):
        return [t for t in itertools.combinations(range(n - 1, -1, -1), degree)]

    def eval_form(coords, idx, args):
        # value of the form with given coordinates on basis vectors args
        total = Fraction(0)
        for pos, mono in enumerate(idx):
            if coords[pos] == 0:
                continue
            # det of the evaluation matrix mono x args via permutation sum
            if sorted(mono, reverse=True) != list(mono):
                raise AssertionError("monomial not in decreasing order")
            if set(args) != set(mono) or len(set(args)) != len(args):
                continue
            perm = [mono.index(x) for x in args]
            sign = _perm_sign(perm)
            total += coords[pos] * sign
        return total

    def differential(degree):
        dom = basis(degree)
        cod = basis(degree + 1)
        cols = []
        for mono in dom:
            coords = [Fraction(int(b == mono)) for b in dom]
            col = []
            for T in cod:
                val = Fraction(0)
                for pj, pk in itertools.combinations(range(degree + 1), 2):
                    rest = tuple(x for p, x in enumerate(T) if p not in (pj, pk))
                    br = a.bracket(_unit(n, T[pj]), _unit(n, T[pk]))
                    for m_idx, coeff in enumerate(br):
                        if coeff == 0 or m_idx in rest:
                            continue
                        val += (
                            (-1) ** (pj + pk)
                            * coeff
                            * eval_form(coords, dom, (m_idx,) + rest)
                        )
                col.append(val)
            cols.append(col)
        rows = [[cols[c][r] for c in range(len(dom))] for r in range(len(cod))]
        return rows, len(dom), len(cod)

    ranks = []
    for i in range(n + 1):
        rows, ncols, nrows = differential(i)
        if nrows == 0 or ncols == 0:
            ranks.append(0)
        else:
            ranks.append(rank_kernel(RationalMatrix(rows))[0])
    dims = []
    for i in range(n + 1):
        below = ranks[i - 1] if i > 0 else 0
        dims.append(comb(n, i) - ranks[i] - below)
    return tuple(dims)


def _unit(n, i):
    return tuple(Fraction(int(j == i)) for j in range(n))


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


# -- brute-force fixed-point count -------------------------------------------


def brute_force_fixed_point_count(t, k: int) -> int:
    """Count solutions of (A^k - I) x in Z^n by scanning the 1/d lattice.

    Every solution on the torus has coordinates in (1/d) Z with
    d = |det(A^k - I)|, so an integer residue scan is exhaustive.  Exponential
    in n; meant for the n = 2 battery.
    """
    b = t.power(k) - IntMatrix.identity(t.dim)
    d = abs(determinant(b))
    if d == 0:
        raise ValueError("degenerate: infinitely many fixed points")
    n = t.dim
    count = 0
    for combo in itertools.product(range(d), repeat=n):
        if all(
            sum(b[i, j] * combo[j] for j in range(n)) % d == 0 for i in range(n)
        ):
            count += 1
    return count


# -- suites -------------------------------------------------------------------


def _gl2_battery(bound: int = 3):
    from .lefschetz import ToralAutomorphism

    rng = range(-bound, bound + 1)
    for a, b, c, d in itertools.product(rng, repeat=4):
        if abs(a * d - b * c) == 1:
            yield ToralAutomorphism(IntMatrix([[a, b], [c, d]]))


def run_linalg_suite(seed: int | None = None) -> list[Check]:
    import random

    rng = random.Random(battery_seed() if seed is None else seed)
    checks = []
    ok_det_snf = ok_charpoly = ok_rank = ok_chain = True
    for _ in range(60):
        n = rng.randint(1, 4)
        m = IntMatrix([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
        det = determinant(m)
        invs = smith_normal_form(m)
        ok_chain &= all(b % a == 0 for a, b in zip(invs, invs[1:]))
        if det != 0:
            prod = 1
            for x in invs:
                prod *= x
            ok_det_snf &= prod == abs(det)
        lhs = determinant(IntMatrix.identity(n) - m)
        rhs = sum((-1) ** i * exterior_power(m, i).trace() for i in range(n + 1))
        ok_charpoly &= lhs == rhs
        rank, kernel = rank_kernel(m)
        ok_rank &= rank + len(kernel) == n
    checks.append(Check("determinant equals product of SNF invariants", ok_det_snf))
    checks.append(Check("det(I - m) equals alternating exterior traces", ok_charpoly))
    checks.append(Check("rank + kernel dimension = cols", ok_rank))
    checks.append(Check("SNF divisibility chain", ok_chain))
    return checks


def run_lefschetz_suite(seed: int | None = None) -> list[Check]:
    from .lefschetz import ToralAutomorphism, fixed_points_toral, toral_lefschetz

    checks = []
    cat = ToralAutomorphism(IntMatrix([[2, 1], [1, 1]]))
    expected = [-1, -5, -16, -45, -121]
    got_det = [toral_lefschetz(cat, k) for k in range(1, 6)]
    got_enum = [sum(fixed_points_toral(cat, k).indices) for k in range(1, 6)]
    checks.append(
        Check(
            "cat map L(F^k), k=1..5, three ways",
            got_det == expected == got_enum,
            f"det/traces: {got_det}, index sums: {got_enum}",
        )
    )
    ok_count = ok_sum = ok_eps = True
    cases = 0
    for t in _gl2_battery(3):
        for k in (1, 2, 3):
            if determinant(t.power(k) - IntMatrix.identity(2)) == 0:
                continue
            cases += 1
            report = fixed_points_toral(t, k)
            ok_count &= report.count == brute_force_fixed_point_count(t, k)
            ok_sum &= sum(report.indices) == toral_lefschetz(t, k)
            ok_eps &= all(e == i for e, i in zip(report.epsilons, report.indices))
    checks.append(
        Check(
            "GL(2,Z) battery: SNF count equals brute-force enumeration",
            ok_count,
            f"{cases} cases",
        )
    )
    checks.append(Check("GL(2,Z) battery: index sum equals Lefschetz number", ok_sum))
    checks.append(Check("epsilon = (-1)^n * classical index (n = 2)", ok_eps))
    return checks


def run_cohomology_suite(seed: int | None = None) -> list[Check]:
    from .lie_cohomology import ce_differential, cohomology_dims

    checks = []
    battery = nilpotent_battery()
    ok_dd = ok_chi = ok_pd = True
    for _, a in battery:
        for i in range(a.dim - 1):
            prod = ce_differential(a, i + 1) @ ce_differential(a, i)
            ok_dd &= all(e == 0 for row in prod.entries for e in row)
        dims = cohomology_dims(a)
        if a.dim >= 1:
            ok_chi &= dims.euler_characteristic == 0
        ok_pd &= dims.dims == dims.dims[::-1]
    checks.append(Check("d.d = 0 on the nilpotent battery", ok_dd))
    checks.append(Check("alternating Betti sum vanishes", ok_chi))
    checks.append(Check("Poincare duality on nilpotent algebras", ok_pd))
    heis = dict(battery)["heisenberg3"]
    checks.append(
        Check(
            "Heisenberg Betti numbers (1,2,2,1)",
            cohomology_dims(heis).dims == (1, 2, 2, 1),
        )
    )
    ok_oracle = True
    for name, a in battery:
        if a.dim <= 4:
            ok_oracle &= cohomology_dims(a).dims == ce_dims_reversed_basis(a)
    checks.append(Check("reversed-basis CE oracle agrees (dim <= 4)", ok_oracle))
    return checks


def run_models_suite(seed: int | None = None) -> list[Check]:
    from fractions import Fraction as F

    from .distributions import make
    from .lefschetz import GradedMap, ToralAutomorphism
    from .models import (
        ClosedOrbitSpec,
        ConjugacyClassData,
        HomogeneousSpec,
        SuspensionSpec,
        corollary_checks,
        flow_distribution,
        mapping_torus,
        nil_foliation,
        selberg_report,
        surface_suspension_traces,
        suspension,
    )

    checks = []
    cat = ToralAutomorphism(IntMatrix([[2, 1], [1, 1]]))
    window = 3
    classes = [ConjugacyClassData("0", None, is_identity=True)]
    for k in range(1, window + 1):
        for kk in (k, -k):
            classes.append(ConjugacyClassData(str(kk), GradedMap.from_toral(cat, kk)))
    selberg = selberg_report(HomogeneousSpec(1, 0, tuple(classes), group_kind="R"))
    checks.append(
        Check(
            "Selberg G=R specialization equals mapping torus",
            selberg == mapping_torus(cat, window),
        )
    )
    ok_surface = True
    for g in range(2, 11):
        s = surface_suspension_traces(g)
        resummed = s.traces[0] - s.traces[1] + s.traces[2]
        ok_surface &= resummed == s.lefschetz == suspension(SuspensionSpec(1, 2 - 2 * g))
    checks.append(Check("surface suspension traces resum to L (g = 2..10)", ok_surface))
    ok_nil = True
    for _, a in nilpotent_battery():
        r = nil_foliation(a)
        ok_nil &= r.lefschetz.is_zero and r.corollary.passed
    checks.append(Check("nilfoliation L vanishes and passes the smooth check", ok_nil))
    corrupted = corollary_checks(make([], smooth_const=3), 1)
    checks.append(
        Check("corrupted constant density is flagged", corrupted.applicable and not corrupted.passed)
    )
    p = RationalMatrix([[2, 0], [0, F(1, 2)]])
    orbit = ClosedOrbitSpec(1, return_map=p)
    d = flow_distribution([orbit], 3)
    atoms_ok = {float(pt.x): c for pt, c in d.atoms} == {
        x: -1 for x in (-3.0, -2.0, -1.0, 1.0, 2.0, 3.0)
    }
    o2 = ClosedOrbitSpec(F(3, 2), return_map=RationalMatrix([[3]]))
    union = flow_distribution([orbit, o2], 3)
    summed = flow_distribution([orbit], 3) + flow_distribution([o2], 3)
    checks.append(Check("flow signs from diag(2,1/2) return map", atoms_ok))
    checks.append(Check("flow distribution is linear in the orbit list", union == summed))
    return checks


def run_curvature_suite(seed: int | None = None) -> list[Check]:
    import random

    from .curvature import (
        const_curvature_chi,
        flat_torus_grid,
        integrate_curvature,
        random_torus_metric,
        sphere_grid,
    )

    rng = random.Random(battery_seed() if seed is None else seed)
    checks = []
    checks.append(Check("flat torus integrates to exactly 0", integrate_curvature(flat_torus_grid(64)) == 0.0))
    sphere_err = abs(integrate_curvature(sphere_grid(256)) - 2.0)
    checks.append(Check("unit sphere integrates to 2 +- 1e-3", sphere_err <= 1e-3, f"error {sphere_err:.2e}"))
    worst = 0.0
    for i in range(20):
        m = random_torus_metric(rng, 256, conformal=(i % 2 == 0))
        worst = max(worst, abs(integrate_curvature(m)))
    checks.append(
        Check("20 random doubly periodic metrics integrate to 0 +- 1e-3", worst <= 1e-3, f"worst {worst:.2e}")
    )
    import math

    ok_const = all(
        const_curvature_chi(-1.0, 4 * math.pi * (g - 1)) == float(2 - 2 * g)
        for g in range(2, 6)
    )
    checks.append(Check("constant-curvature chi exact for g = 2..5", ok_const))
    return checks


SUITES = {
    "linalg": run_linalg_suite,
    "lefschetz": run_lefschetz_suite,
    "cohomology": run_cohomology_suite,
    "models": run_models_suite,
    "curvature": run_curvature_suite,
}


def run_suite(name: str, seed: int | None = None) -> list[Check]:
    """Run one named suite, or all of them in a fixed order."""
    if name == "all":
        out = []
        for key in ("linalg", "lefschetz", "cohomology", "models", "curvature"):
            out.extend(run_suite(key, seed))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name](seed)
