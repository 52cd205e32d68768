import math
from fractions import Fraction

import pytest

from lefdist.distributions import IDENTITY, LatticePoint, RealPoint, make
from lefdist.errors import NotSimpleError, PreconditionError
from lefdist.lefschetz import GradedMap, ToralAutomorphism, toral_lefschetz
from lefdist.lie_cohomology import abelian, heisenberg, nilpotent_battery, sl2
from lefdist.linalg import IntMatrix, RationalMatrix
from lefdist.models import (
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

CAT = ToralAutomorphism(IntMatrix([[2, 1], [1, 1]]))
MINUS_I = ToralAutomorphism(IntMatrix([[-1, 0], [0, -1]]))
DIAG_2_HALF = RationalMatrix([[2, 0], [0, Fraction(1, 2)]])


class TestMappingTorus:
    def test_cat_map_window2(self):
        d = mapping_torus(CAT, 2)
        assert d.group == "Z"
        assert d.atoms == (
            (LatticePoint(-2), Fraction(-5)),
            (LatticePoint(-1), Fraction(-1)),
            (LatticePoint(1), Fraction(-1)),
            (LatticePoint(2), Fraction(-5)),
        )
        assert d.coefficient_at(LatticePoint(0)) == 0  # chi(T^2) = 0

    def test_minus_identity_window3(self):
        d = mapping_torus(MINUS_I, 3)
        assert {p.k: c for p, c in d.atoms} == {-3: 4, -1: 4, 1: 4, 3: 4}

    def test_window_zero(self):
        assert mapping_torus(CAT, 0).is_zero
        gm = GradedMap.identity((1, 4, 1))
        d = mapping_torus(gm, 0)
        assert d.atoms == ((LatticePoint(0), Fraction(-2)),)

    def test_graded_map_source_matches_toral(self):
        gm = GradedMap.from_toral(CAT)
        assert mapping_torus(gm, 3) == mapping_torus(CAT, 3)

    def test_negative_window_rejected(self):
        with pytest.raises(PreconditionError):
            mapping_torus(CAT, -1)

    def test_atoms_match_classical_identity(self):
        from lefdist.lefschetz import verify_classical_lefschetz

        d = mapping_torus(CAT, 5)
        for k in list(range(1, 6)) + [-1, -3]:
            chk = verify_classical_lefschetz(CAT, k)
            assert d.coefficient_at(LatticePoint(k)) == chk.sum_of_indices == chk.lefschetz_number


class TestFlow:
    def test_empty(self):
        assert flow_distribution([], 5).is_zero

    def test_single_hyperbolic_orbit(self):
        orbit = ClosedOrbitSpec(1, return_map=DIAG_2_HALF)
        d = flow_distribution([orbit], 3)
        assert {float(p.x): c for p, c in d.atoms} == {
            -3.0: -1, -2.0: -1, -1.0: -1, 1.0: -1, 2.0: -1, 3.0: -1,
        }
        assert all(p.exact for p, _ in d.atoms)

    def test_incommensurable_lengths_stay_distinct(self):
        orbits = [
            ClosedOrbitSpec(1, return_map=DIAG_2_HALF),
            ClosedOrbitSpec(math.sqrt(2), return_map=DIAG_2_HALF),
        ]
        d = flow_distribution(orbits, 2)
        # multiples: +-1, +-2 from the first orbit, +-sqrt(2) from the second
        assert len(d.atoms) == 6

    def test_commensurable_merge(self):
        orbits = [
            ClosedOrbitSpec(1, return_map=DIAG_2_HALF),
            ClosedOrbitSpec(2, return_map=DIAG_2_HALF),
        ]
        d = flow_distribution(orbits, 2)
        # at +-2 both orbits contribute: 1*(-1) + 2*(-1) = -3
        assert d.coefficient_at(RealPoint(Fraction(2))) == -3
        assert d.coefficient_at(RealPoint(Fraction(1))) == -1

    def test_linearity_in_orbit_list(self):
        o1 = ClosedOrbitSpec(1, return_map=DIAG_2_HALF)
        o2 = ClosedOrbitSpec(Fraction(3, 2), return_map=RationalMatrix([[3]]))
        union = flow_distribution([o1, o2], 3)
        summed = flow_distribution([o1], 3) + flow_distribution([o2], 3)
        assert union == summed

    def test_non_simple_orbit_named(self):
        orbit = ClosedOrbitSpec(1, return_map=RationalMatrix.identity(2))
        with pytest.raises(NotSimpleError, match="orbit 0.*k=1"):
            flow_distribution([orbit], 1)

    def test_unchecked_signs(self):
        orbit = ClosedOrbitSpec(1, signs={1: -1, -1: -1, 2: 1, -2: 1})
        d = flow_distribution([orbit], 2)
        assert orbit.unchecked
        assert d.coefficient_at(RealPoint(Fraction(1))) == -1
        assert d.coefficient_at(RealPoint(Fraction(2))) == 1

    def test_unchecked_signs_missing_multiple(self):
        orbit = ClosedOrbitSpec(1, signs={1: -1, -1: -1})
        with pytest.raises(PreconditionError, match="k=2"):
            flow_distribution([orbit], 2)

    def test_orbit_spec_validation(self):
        with pytest.raises(PreconditionError):
            ClosedOrbitSpec(0, return_map=DIAG_2_HALF)
        with pytest.raises(PreconditionError):
            ClosedOrbitSpec(1)
        with pytest.raises(PreconditionError):
            ClosedOrbitSpec(1, return_map=DIAG_2_HALF, signs={1: 1})


class TestSuspension:
    def test_genus2_surface(self):
        d = suspension(SuspensionSpec(1, -2))
        assert d.atoms == ((IDENTITY, Fraction(-2)),)

    def test_chi_zero_empty(self):
        assert suspension(SuspensionSpec(1, 0)).is_zero

    def test_volume_scaling(self):
        d = suspension(SuspensionSpec(2, 2))
        assert d.atoms == ((IDENTITY, Fraction(4)),)

    def test_betti_consistency_enforced(self):
        from lefdist.lie_cohomology import GradedDims

        SuspensionSpec(1, -2, GradedDims((1, 4, 1)))
        with pytest.raises(PreconditionError):
            SuspensionSpec(1, 5, GradedDims((1, 4, 1)))


class TestSurfaceSuspension:
    def test_genus2_reference_values(self):
        s = surface_suspension_traces(2)
        tr0, tr1, tr2 = s.traces
        assert tr0.smooth_const == 1 and tr0.atoms == ()
        assert tr2.smooth_const == 1
        assert tr1.atoms == ((IDENTITY, Fraction(2)),)
        assert tr1.smooth_const == 2
        assert s.lefschetz.atoms == ((IDENTITY, Fraction(-2)),)
        assert s.lefschetz.smooth_const is None
        assert s.betti_lambda == (0, 2, 0)
        assert s.chi_lambda == -2

    def test_genus3(self):
        s = surface_suspension_traces(3)
        assert s.lefschetz.atoms == ((IDENTITY, Fraction(-4)),)

    def test_alternating_sum_recomputed_for_genus_range(self):
        for g in range(2, 11):
            s = surface_suspension_traces(g)
            resummed = s.traces[0] - s.traces[1] + s.traces[2]
            assert resummed == s.lefschetz
            assert s.lefschetz == suspension(SuspensionSpec(1, 2 - 2 * g))

    def test_genus_below_two_rejected(self):
        with pytest.raises(PreconditionError):
            surface_suspension_traces(1)


class TestNilFoliation:
    def test_heisenberg(self):
        r = nil_foliation(heisenberg())
        assert r.dims.dims == (1, 2, 2, 1)
        assert [t.smooth_const for t in r.traces] == [1, 2, 2, 1]
        assert r.lefschetz.is_zero
        assert r.corollary.applicable and r.corollary.passed

    def test_abelian_line(self):
        r = nil_foliation(abelian(1))
        assert [t.smooth_const for t in r.traces] == [1, 1]
        assert r.lefschetz.is_zero

    def test_non_nilpotent_rejected(self):
        with pytest.raises(PreconditionError, match="nilpotent"):
            nil_foliation(sl2())

    def test_battery_all_vanish(self):
        for name, a in nilpotent_battery():
            r = nil_foliation(a)
            assert r.lefschetz.is_zero, name
            assert r.corollary.passed, name


class TestCorollary:
    def test_nilfoliation_output_passes(self):
        r = nil_foliation(heisenberg())
        report = corollary_checks(r.lefschetz, 1)
        assert report.applicable and report.passed

    def test_nonzero_smooth_flagged(self):
        bad = make([], smooth_const=3)
        report = corollary_checks(bad, 1)
        assert report.applicable and not report.passed

    def test_atomic_not_applicable(self):
        d = make([(IDENTITY, -2)])
        report = corollary_checks(d, 1)
        assert not report.applicable and report.passed

    def test_codim_validated(self):
        with pytest.raises(PreconditionError):
            corollary_checks(make([]), 0)


class TestSelberg:
    def test_identity_only(self):
        h = HomogeneousSpec(2, 3, (ConjugacyClassData("e", None, is_identity=True),))
        d = selberg_report(h)
        assert d.atoms == ((IDENTITY, Fraction(6)),)
        assert d.orbit_terms == ()

    def test_abstract_orbit_terms_factored(self):
        h = HomogeneousSpec(
            1,
            0,
            (
                ConjugacyClassData("e", None, is_identity=True),
                ConjugacyClassData("a", -1, 3),
                ConjugacyClassData("b", 2, Fraction(1, 2)),
            ),
        )
        d = selberg_report(h)
        assert d.atoms == ()  # chi = 0 kills the identity atom
        factors = {(t.class_label, t.lefschetz, t.vol_centralizer) for t in d.orbit_terms}
        assert factors == {("a", -1, 3), ("b", 2, Fraction(1, 2))}

    def test_real_specialization_matches_mapping_torus(self):
        window = 2
        classes = [ConjugacyClassData("0", None, is_identity=True)]
        for k in range(1, window + 1):
            for kk in (k, -k):
                classes.append(
                    ConjugacyClassData(str(kk), GradedMap.from_toral(CAT, kk))
                )
        h = HomogeneousSpec(1, 0, tuple(classes), group_kind="R")
        assert selberg_report(h) == mapping_torus(CAT, window)

    def test_real_kind_rejects_non_integer_labels(self):
        h = HomogeneousSpec(
            1,
            0,
            (
                ConjugacyClassData("e", None, is_identity=True),
                ConjugacyClassData("gamma", -1),
            ),
            group_kind="R",
        )
        with pytest.raises(PreconditionError, match="integer"):
            selberg_report(h)

    def test_exactly_one_identity_enforced(self):
        with pytest.raises(PreconditionError):
            HomogeneousSpec(1, 0, (ConjugacyClassData("a", 1),))
        with pytest.raises(PreconditionError):
            HomogeneousSpec(
                1,
                0,
                (
                    ConjugacyClassData("e", None, is_identity=True),
                    ConjugacyClassData("e2", None, is_identity=True),
                ),
            )

    def test_graded_map_lefschetz_agrees_with_toral(self):
        c = ConjugacyClassData("3", GradedMap.from_toral(CAT, 3))
        assert c.lefschetz_value() == toral_lefschetz(CAT, 3)
