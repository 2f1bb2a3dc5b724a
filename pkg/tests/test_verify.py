import pytest

from pfaffian_nets.correspondence import pfaffian_hypersurface, y_points
from pfaffian_nets.fields import GF, QQ
from pfaffian_nets.ideals import HomogeneousIdeal
from pfaffian_nets.matrices import ExactMatrix
from pfaffian_nets.multipoly import MultiPoly
from pfaffian_nets.verify import (
    SamplePlan,
    count_points,
    jw1_section_check,
    jw_pointwise,
    w_membership,
)


class TestSamplePlan:
    def test_auto_mode(self):
        assert SamplePlan(GF(2)).mode == "enumerate"
        assert SamplePlan(GF(3)).mode == "enumerate"
        assert SamplePlan(GF(7)).mode == "random"

    def test_explicit_modes(self):
        assert SamplePlan(GF(7), mode="enumerate").mode == "enumerate"
        assert SamplePlan(GF(2), mode="random").mode == "random"

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            SamplePlan(GF(3), mode="exhaustive")
        with pytest.raises(ValueError):
            SamplePlan(QQ)
        with pytest.raises(ValueError):
            SamplePlan(GF(7), count=0, mode="random")

    def test_describe(self):
        d = SamplePlan(GF(3), count=10, seed=4).describe()
        assert d == {"field": "GF(3)", "mode": "enumerate",
                     "count": 10, "seed": 4}


@pytest.fixture(scope="module", params=[2, 3])
def report(pinned_net, request):
    return jw_pointwise(pinned_net, SamplePlan(GF(request.param)))


class TestJwEnumerated:
    def test_passes_with_both_strata(self, report):
        assert report.passed
        assert report.on_w > 0
        assert report.off_w > 0
        assert report.checked == report.on_w + report.off_w

    def test_covers_the_full_grid(self, pinned_net, report):
        from pfaffian_nets.correspondence import x_points
        field = GF(2) if report.plan["field"] == "GF(2)" else GF(3)
        ys = y_points(pinned_net, field)
        xs = x_points(pinned_net, field)
        assert report.checked == len(ys) * len(xs)

    def test_frozen_counts(self, pinned_net):
        report = jw_pointwise(pinned_net, SamplePlan(GF(2)))
        assert (report.checked, report.on_w) == (361, 87)


class TestJwRandom:
    def test_gf7_sample_passes(self, pinned_net):
        report = jw_pointwise(pinned_net, SamplePlan(GF(7), count=150,
                                                     seed=11))
        assert report.passed
        assert report.checked == 150

    def test_deterministic_given_seed(self, pinned_net):
        plan = lambda: SamplePlan(GF(7), count=40, seed=3)
        a = jw_pointwise(pinned_net, plan()).as_dict()
        b = jw_pointwise(pinned_net, plan()).as_dict()
        assert a == b

    def test_budget_exhaustion_reported(self, pinned_net, monkeypatch):
        import pfaffian_nets.verify as verify
        monkeypatch.setattr(verify, "_TRY_FACTOR", 0)
        with pytest.raises(ValueError, match="budget"):
            jw_pointwise(pinned_net, SamplePlan(GF(7), count=5, seed=0))


class TestJw1:
    def test_enumerated_gf3(self, pinned_net):
        plan = SamplePlan(GF(3))
        pair_report = jw_pointwise(pinned_net, plan)
        report = jw1_section_check(pinned_net, plan)
        assert report.passed
        # q + 1 kernel-line probes per pair
        assert report.checked == pair_report.checked * 4
        assert report.on_w == pair_report.on_w

    def test_random_gf7(self, pinned_net):
        report = jw1_section_check(pinned_net, SamplePlan(GF(7), count=150,
                                                          seed=11))
        assert report.passed

    def test_report_shape(self, pinned_net):
        d = jw1_section_check(pinned_net, SamplePlan(GF(2))).as_dict()
        assert d["name"] == "jw1_section_check"
        assert d["failures"] == []
        assert d["passed"] is True


class TestSingularNetDetection:
    def test_degenerate_pair_fails_hard(self, degenerate_fixture):
        report = jw_pointwise(degenerate_fixture, SamplePlan(GF(2)))
        assert not report.passed
        reasons = {f["reason"] for f in report.failures}
        assert any("singular point of X" in r for r in reasons)

    def test_w_membership_flags_the_kernel_plane(self, degenerate_fixture):
        field = GF(3)
        reduced = degenerate_fixture.map_field(field)
        a = (1, 0, 0, 0, 0)
        u_basis = ExactMatrix(field, [[1, 0, 0, 0, 0, 0],
                                      [0, 1, 0, 0, 0, 0]])
        m = w_membership(reduced, a, u_basis)
        assert m.intersection_dim == 2
        assert m.on_w

    def test_off_w_membership(self, pinned_net):
        from pfaffian_nets.correspondence import x_points
        from pfaffian_nets.grassmann import plane_from_plucker
        field = GF(3)
        reduced = pinned_net.map_field(field)
        seen = set()
        for a in y_points(pinned_net, field)[:5]:
            for pt in x_points(pinned_net, field)[:5]:
                m = w_membership(reduced, a, plane_from_plucker(pt))
                seen.add(m.intersection_dim)
        assert 0 in seen
        assert 2 not in seen


class TestCountPoints:
    def test_hyperplane_in_p5(self):
        ideal = HomogeneousIdeal(QQ, 6, [MultiPoly.linear_form(
            QQ, [1, 0, 0, 0, 0, 0])])
        assert count_points(ideal, GF(2)) == 31

    def test_empty_ideal_counts_everything(self):
        ideal = HomogeneousIdeal(QQ, 6, [])
        assert count_points(ideal, GF(2)) == 63

    def test_limit_guard(self):
        ideal = HomogeneousIdeal(QQ, 6, [])
        with pytest.raises(ValueError, match="limit"):
            count_points(ideal, GF(46337), limit=1000)

    def test_rational_field_rejected(self):
        ideal = HomogeneousIdeal(QQ, 3, [])
        with pytest.raises(ValueError):
            count_points(ideal, QQ)

    def test_cubic_count_matches_enumeration(self, pinned_net):
        cubic = pfaffian_hypersurface(pinned_net)
        ideal = HomogeneousIdeal(QQ, 5, [cubic])
        ys = y_points(pinned_net, GF(2))
        assert count_points(ideal, GF(2)) == len(ys)
        reduced = pinned_net.map_field(GF(2))
        for a in ys:
            assert reduced.f_at(a).rank() == 4
