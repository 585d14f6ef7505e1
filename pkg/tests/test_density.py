"""Tests for disk densities, verdicts and the vanishing construction."""

import math

import numpy as np
import pytest

from density.models import Verdict
from density.seip import (
    density_verdict,
    profile_csv,
    seip_density,
    vanishing_at_origin,
    vanishing_report,
    verdict_from_density,
)
from errors import PreconditionError, SingularSystemError
from quadrature.models import QuadratureSpec
from seqlab.models import PointSeq
from seqlab.nets import generate_net, geometric_disk_net, probe_grid, union
from solver.models import SolveMethod
from solver.stability import interpolation_constant_probe
from spaces.models import SpaceParams


def brute_density(points: np.ndarray, grid: np.ndarray, r: float) -> float:
    best = 0.0
    for z in grid[:, 0]:
        total = 0.0
        for a in points[:, 0]:
            d = abs(z - a) / abs(1 - z * np.conj(a))
            if 0.5 < d < r:
                total += math.log(1.0 / d)
        best = max(best, total)
    return best / math.log(1.0 / (1.0 - r))


class TestVerdicts:
    @pytest.mark.parametrize(
        "density,expected",
        [(0.49, Verdict.INCONCLUSIVE), (0.2, Verdict.INTERPOLATING), (0.8, Verdict.NOT_INTERPOLATING)],
    )
    def test_band(self, density, expected):
        assert verdict_from_density(density, 0.5) is expected

    def test_single_point_interpolates(self):
        seq = PointSeq.from_points([[0.5]])
        assert density_verdict(seq, 2.0, 0.0) is Verdict.INTERPOLATING


class TestDensity:
    """Truncated upper uniform density on a probe grid."""

    def test_matches_direct_sum(self):
        seq = geometric_disk_net(5)
        r = 1.0 - 2.0**-10
        grid = probe_grid(1, levels=6, count=16, extra=seq.points)
        report = seip_density(seq, [r], grid)
        np.testing.assert_allclose(report.density, brute_density(seq.points, grid, r), rtol=1e-6)
        assert report.r_profile[0][0] == r

    @pytest.mark.slow
    def test_matches_direct_sum_on_deep_net(self):
        seq = geometric_disk_net(8)
        r = 1.0 - 2.0**-10
        grid = probe_grid(1, levels=6, count=16, extra=seq.points)
        report = seip_density(seq, [r], grid)
        np.testing.assert_allclose(report.density, brute_density(seq.points, grid, r), rtol=0.05)

    def test_adding_points_never_lowers_profile(self):
        base = geometric_disk_net(4)
        more = union(base, generate_net(1, 0.5, 2, seed=3))
        grid = probe_grid(1, levels=5, count=16, extra=more.points)
        radii = [0.9, 0.99, 0.999]
        low = [v for _, v in seip_density(base, radii, grid).r_profile]
        high = [v for _, v in seip_density(more, radii, grid).r_profile]
        assert all(h >= l_ for h, l_ in zip(high, low))

    def test_empty_sequence(self):
        report = seip_density(PointSeq(n=1, points=[]), [0.9, 0.99])
        assert report.density == 0.0
        assert report.z_argmax is None

    def test_needs_disk(self):
        with pytest.raises(PreconditionError):
            seip_density(PointSeq.from_points([[0.1, 0.2]]))

    @pytest.mark.parametrize("radii", [[0.9, 0.5], [], [0.5, 1.0]])
    def test_radii_must_increase_inside_disk(self, radii):
        with pytest.raises(PreconditionError):
            seip_density(PointSeq.from_points([[0.5]]), radii)

    def test_profile_csv(self):
        report = seip_density(PointSeq.from_points([[0.5]]), [0.75, 0.875])
        lines = profile_csv(report).splitlines()
        assert lines[0] == "r,sup_value"
        assert lines[1].startswith("0.75,")
        assert len(lines) == 3


def spiral_sequence(levels: int) -> PointSeq:
    """1 − 2^{−k} turned by a third of a circle at each step."""
    k = np.arange(1, levels + 1)
    return PointSeq.from_points(((1.0 - 2.0**-k) * np.exp(2j * np.pi * k / 3))[:, None])


def constant_or_inf(seq: PointSeq, params: SpaceParams, spec: QuadratureSpec) -> float:
    try:
        return interpolation_constant_probe(seq, params, spec=spec)
    except SingularSystemError:
        return math.inf


@pytest.mark.slow
class TestVerdictAgainstSolver:
    """The density verdict and the growth of interpolation constants under truncation agree."""

    params = SpaceParams(n=1, p=2, alpha=0.25)
    radii = [0.995, 0.998, 0.999]

    def test_sparse_sequence(self):
        deep = spiral_sequence(10)
        grid = probe_grid(1, levels=8, count=16, extra=deep.points)
        assert density_verdict(deep, self.params.p, self.params.alpha, self.radii, grid) is Verdict.INTERPOLATING
        spec = QuadratureSpec(samples=2**15)
        shallow, deeper = (constant_or_inf(spiral_sequence(k), self.params, spec) for k in (3, 5))
        assert 0.0 < deeper < 2.0 * shallow

    def test_dense_net(self):
        deep = geometric_disk_net(6, base=3)
        grid = probe_grid(1, levels=8, count=16, extra=deep.points)
        verdict = density_verdict(deep, self.params.p, self.params.alpha, self.radii, grid)
        assert verdict is Verdict.NOT_INTERPOLATING
        spec = QuadratureSpec(samples=2**15)
        constants = [constant_or_inf(geometric_disk_net(k, base=3), self.params, spec) for k in (2, 4)]
        assert constants[1] > 1.5 * constants[0] > 0.0


class TestVanishing:
    def test_single_point(self):
        f = vanishing_at_origin(PointSeq.from_points([[0.5]]), SpaceParams(n=1, p=2, alpha=0.0))
        assert abs(f([0.5])) < 1e-12
        assert f([0.0]) == pytest.approx(1.0)

    def test_empty_sequence_gives_one(self):
        f = vanishing_at_origin(PointSeq(n=1, points=[]), SpaceParams())
        assert f([0.3j]) == 1.0

    def test_point_at_origin_rejected(self):
        with pytest.raises(PreconditionError):
            vanishing_at_origin(PointSeq.from_points([[0.0], [0.5]]), SpaceParams())

    def test_gap_to_origin(self):
        with pytest.raises(PreconditionError):
            vanishing_at_origin(PointSeq.from_points([[0.05]]), SpaceParams(), delta0=0.1)

    def test_disk_net(self):
        seq = geometric_disk_net(3)
        f = vanishing_at_origin(seq, SpaceParams(n=1, p=2, alpha=0.0), method=SolveMethod.DIRECT)
        assert np.max(np.abs(f.evaluate(seq.points))) < 1e-9
        assert f([0.0]) == pytest.approx(1.0)

    def test_report(self):
        seq = PointSeq.from_points([[0.5], [-0.5j]])
        report = vanishing_report(seq, SpaceParams(n=1, p=2, alpha=0.0), spec=QuadratureSpec(samples=2**14), trials=2)
        assert report.node_residual < 1e-12
        assert report.value_at_origin == pytest.approx(1.0)
        assert report.reciprocal_norm > 0.0
        assert report.bound == pytest.approx(1.0 + report.constant_estimate * report.reciprocal_norm)
        assert 0.0 < report.norm_estimate.value < math.inf
