"""Tests for point sequences, K-functionals, Carleson tests and splitting."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from errors import PreconditionError
from geometry.ball import norm_sq, paired_distances
from geometry.models import Automorphism
from seqlab.diagnostics import (
    automorphic_k_value,
    carleson_beta_test,
    carleson_profile,
    carleson_ratio,
    default_windows,
    k_matrix,
    k_value,
    separation,
    sequence_measure,
    sup_z_k_value,
)
from seqlab.models import KReport, PointMeasure, PointSeq
from seqlab.nets import (
    apply_automorphism_to_seq,
    generate_net,
    geometric_disk_net,
    layer_slope,
    perturb,
    probe_grid,
    union,
)
from seqlab.partition import mills_partition, split_until_interpolating
from solver.extension import make_extension
from solver.interpolate import interpolate
from solver.models import SolveMethod
from solver.stability import random_values
from spaces.models import SpaceParams


def seq_of(*zs) -> PointSeq:
    return PointSeq.from_points(np.array(zs, dtype=complex).reshape(len(zs), -1))


class TestPointSeq:
    def test_json_layout(self, two_point_seq):
        assert two_point_seq.n == 1
        np.testing.assert_array_equal(two_point_seq.points[:, 0], [0.3, -0.2 + 0.4j])
        restored = PointSeq.model_validate_json(two_point_seq.model_dump_json())
        np.testing.assert_array_equal(restored.points, two_point_seq.points)

    def test_empty(self):
        empty = PointSeq(n=2, points=[])
        assert len(empty) == 0
        assert empty.points.shape == (0, 2)

    @pytest.mark.parametrize("points", [[[1.0, 0.0]], [[0.3, 0.0], [0.3, 0.0]], [[float("nan"), 0.0]]])
    def test_rejects_bad_points(self, points):
        with pytest.raises(ValidationError):
            PointSeq(n=1, points=points)

    def test_points_are_read_only(self, two_point_seq):
        with pytest.raises(ValueError):
            two_point_seq.points[0, 0] = 0.1

    def test_subset_records_indices(self, two_point_seq):
        part = two_point_seq.subset([1], label="tail")
        assert len(part) == 1
        assert part.meta["indices"] == [1]
        assert part.meta["label"] == "tail"


class TestSeparationAndK:
    """Separation constants and K(a, p, q)."""

    def test_separation(self):
        assert separation(seq_of(0.5, -0.5)) == pytest.approx(0.8)
        assert separation(seq_of(0.5)) == math.inf

    def test_two_point_k(self):
        report = k_value(seq_of(0.5, -0.5), 1.0, 1.0)
        assert report.value == pytest.approx(0.36, rel=1e-14)
        assert report.per_k == pytest.approx([0.36, 0.36])

    def test_single_point_and_empty(self):
        assert k_value(seq_of(0.5), 2.0, 2.0).value == 0.0
        empty = k_value(PointSeq(n=1, points=[]), 2.0, 2.0)
        assert empty.value == 0.0 and empty.argmax_k is None

    def test_report_value_must_be_row_max(self):
        with pytest.raises(ValidationError):
            KReport(value=1.0, argmax_k=0, per_k=[0.5])

    def test_exponents_must_be_positive(self):
        with pytest.raises(PreconditionError):
            k_value(seq_of(0.5, 0.1), 0.0, 1.0)

    def test_matrix_diagonal_and_symmetry(self, net_seq):
        w = k_matrix(net_seq.points, 2.0, 2.0)
        assert np.all(np.diag(w) == 0.0)
        np.testing.assert_allclose(w, w.T, rtol=1e-13)

    def test_invariant_under_automorphisms(self, net_seq):
        moved = apply_automorphism_to_seq(net_seq, Automorphism.involution([0.3 - 0.4j]))
        np.testing.assert_allclose(k_value(moved, 3.0, 3.0).value, k_value(net_seq, 3.0, 3.0).value, rtol=1e-10)

    def test_removing_points_does_not_increase_k(self, net_seq):
        full = k_value(net_seq, 2.5, 2.5).value
        part = k_value(net_seq.subset(range(len(net_seq) - 1)), 2.5, 2.5).value
        assert part <= full

    def test_sup_over_z_dominates_rows(self, net_seq):
        p, q = 2.0, 2.5
        grid = probe_grid(1, levels=6, count=32, extra=net_seq.points)
        value = sup_z_k_value(net_seq, p, q, grid)
        assert value >= k_value(net_seq, p, q).value + 1.0 - 1e-12
        assert sup_z_k_value(PointSeq(n=1, points=[]), p, q, grid) == 0.0

    def test_automorphic_k_never_exceeds_plain(self, net_seq):
        best, index = automorphic_k_value(net_seq, 1.0, 3.0, [[0.2], [-0.5j]])
        assert best <= k_value(net_seq, 1.0, 3.0).value
        assert index in (None, 0, 1)

    def test_crowding_raises_k(self):
        sparse = k_value(seq_of(0.3, -0.3), 2.0, 2.0).value
        crowded = k_value(seq_of(0.3, -0.3, 0.31), 2.0, 2.0).value
        assert crowded > 0.9 > sparse


class TestCarleson:
    def test_single_point_ratio_is_bounded(self):
        q = 1.5
        measure = sequence_measure(seq_of(0.5), q)
        ratio = carleson_ratio(measure, q, default_windows(measure.points, 1))
        assert 0.0 < ratio <= 2.0**q

    def test_empty_measure(self):
        measure = PointMeasure(n=1, points=[], masses=[])
        assert carleson_ratio(measure, 1.0, default_windows(measure.points, 1)) == 0.0
        assert carleson_beta_test(measure, 1.0) == 0.0

    def test_beta_test_unit_mass_at_origin(self):
        measure = PointMeasure(n=1, points=np.zeros((1, 1), dtype=complex), masses=[1.0])
        assert carleson_beta_test(measure, 1.0) == pytest.approx(1.0)

    def test_beta_must_exceed_half_dimension(self):
        measure = PointMeasure(n=2, points=np.zeros((1, 2), dtype=complex), masses=[1.0])
        with pytest.raises(PreconditionError):
            carleson_beta_test(measure, 1.0)

    def test_profile_increases_with_level(self, net_seq):
        measure = sequence_measure(net_seq, 1.0)
        windows = default_windows(net_seq.points, 1)
        profile = carleson_profile(measure, 1.0, windows, [2, 6, 12])
        assert profile == sorted(profile)
        assert profile[-1] == pytest.approx(carleson_ratio(measure, 1.0, windows))

    def test_measure_validation(self):
        with pytest.raises(ValidationError):
            PointMeasure(n=1, points=np.array([[0.1j]]), masses=[-1.0])
        with pytest.raises(ValidationError):
            PointMeasure(n=1, points=np.array([[0.1j]]), masses=[1.0, 2.0])


class TestStatisticsAgree:
    """Separation, K and the Carleson tests stay finite together or grow together."""

    @staticmethod
    def statistics(seq: PointSeq, grid: np.ndarray, windows) -> list:
        q = seq.n + 1
        measure = sequence_measure(seq, q)
        return [
            1.0 / separation(seq),
            k_value(seq, 1.0, q).value,
            sup_z_k_value(seq, 1.0, q, grid),
            carleson_ratio(measure, q, windows),
            carleson_beta_test(measure, float(seq.n), grid),
        ]

    @pytest.mark.slow
    @pytest.mark.parametrize("n,layers", [(1, 3), (2, 2)])
    def test_nets_are_finite_and_stable(self, n, layers):
        coarse = generate_net(n, 0.5, layers, seed=1)
        fine = generate_net(n, 0.5, layers + 1, seed=1)
        grid = probe_grid(n, levels=8, count=32, extra=fine.points)
        windows = default_windows(fine.points, n)
        low = self.statistics(coarse, grid, windows)
        high = self.statistics(fine, grid, windows)
        assert all(0.0 < v < math.inf for v in low + high)
        for a, b in zip(low, high):
            assert b < 3.0 * a
        measure = sequence_measure(fine, n + 1)
        shallow = carleson_ratio(measure, n + 1, default_windows(fine.points, n, levels=8))
        assert shallow <= carleson_ratio(measure, n + 1, windows) < 3.0 * shallow

    def test_crowded_copies_raise_everything(self, net_seq):
        grid = probe_grid(1, levels=6, count=32, extra=net_seq.points)
        windows = default_windows(net_seq.points, 1)
        seq = net_seq
        rows = [self.statistics(seq, grid, windows)]
        for copy in range(1, 8):
            seq = union(seq, perturb(net_seq, 0.01, seed=copy))
            if copy in (1, 3, 7):
                rows.append(self.statistics(seq, grid, windows))
        for before, after in zip(rows, rows[1:]):
            assert all(b >= a for a, b in zip(before, after))
            assert after[1] > before[1] and after[2] > before[2]
        assert all(last > 4.0 * first for first, last in zip(rows[0][1:], rows[-1][1:]))
        assert rows[1][0] > 100.0

    def test_beta_test_tracks_window_ratio(self):
        quotients = []
        for seed in range(5):
            seq = generate_net(1, 0.5, 3, seed=seed)
            measure = sequence_measure(seq, 2.0)
            ratio = carleson_ratio(measure, 1.0, default_windows(seq.points, 1))
            beta = carleson_beta_test(measure, 1.0)
            assert 0.0 < ratio < math.inf
            assert 0.0 < beta < math.inf
            quotients.append(beta / ratio)
        assert max(quotients) < 4.0 * min(quotients)


class TestNets:
    def test_net_is_separated(self, net_seq):
        assert len(net_seq) >= 2
        assert separation(net_seq) >= 0.5 * (1 - 1e-12)
        assert sum(net_seq.meta["layer_counts"]) == len(net_seq)

    def test_net_points_lie_on_layers(self, net_seq):
        radii = np.sqrt(norm_sq(net_seq.points))
        layers = 1.0 - 0.5 ** np.arange(1, 4)
        assert np.all(np.min(np.abs(radii[:, None] - layers[None, :]), axis=1) < 1e-12)

    def test_net_is_reproducible(self, net_seq):
        np.testing.assert_array_equal(generate_net(1, 0.5, 3, seed=0).points, net_seq.points)

    def test_layer_growth(self):
        net = generate_net(1, 0.5, 5, seed=1)
        slope = layer_slope(net.meta["layer_counts"], first=2)
        assert abs(slope - math.log(2.0)) < 0.4 * math.log(2.0)

    def test_two_dimensional_net(self):
        net = generate_net(2, 0.6, 2, seed=0)
        assert separation(net) >= 0.6 * (1 - 1e-12)

    @pytest.mark.parametrize("args", [(0, 0.5, 2), (1, 1.0, 2), (1, 0.5, 0)])
    def test_net_preconditions(self, args):
        with pytest.raises(PreconditionError):
            generate_net(*args)

    def test_geometric_disk_net(self):
        net = geometric_disk_net(3)
        assert len(net) == 2 + 4 + 8
        np.testing.assert_allclose(np.sort(np.unique(np.round(np.abs(net.points[:, 0]), 12))), [0.5, 0.75, 0.875])

    def test_perturbation_stays_close(self, net_seq):
        moved = perturb(net_seq, 0.05, seed=2)
        assert np.all(paired_distances(net_seq.points, moved.points) < 0.05)
        assert moved.meta["perturbed"] == {"delta": 0.05, "seed": 2}

    def test_union(self, net_seq):
        merged = union(net_seq, perturb(net_seq, 0.05))
        assert len(merged) == 2 * len(net_seq)
        with pytest.raises(PreconditionError):
            union(net_seq, PointSeq(n=2, points=[]))

    def test_layer_slope_needs_two_layers(self):
        assert math.isnan(layer_slope([5]))


class TestPartition:
    """Mills-type bipartition and recursive splitting."""

    def test_pair(self):
        part = mills_partition([[0.0, 1.5], [1.5, 0.0]])
        assert sorted([part.first, part.second]) == [[0], [1]]
        assert part.within == [0.0, 0.0]
        assert part.bound == 1.5

    def test_zero_matrix(self):
        part = mills_partition(np.zeros((4, 4)))
        assert part.within == [0.0] * 4

    def test_half_bound_on_random_matrix(self, rng):
        A = rng.random((50, 50))
        A = A + A.T
        np.fill_diagonal(A, 0.0)
        part = mills_partition(A)
        first = set(part.first)
        bound = max(math.fsum(row) for row in A)
        for k in range(50):
            own = [j for j in range(50) if (j in first) == (k in first)]
            assert math.fsum(A[k, own]) <= bound / 2
        assert sorted(part.first + part.second) == list(range(50))

    @pytest.mark.parametrize(
        "matrix",
        [
            [[0.0, 1.0], [2.0, 0.0]],
            [[0.0, -1.0], [-1.0, 0.0]],
            [[1.0, 1.0], [1.0, 0.0]],
            [[0.0, 1.0, 0.0]],
        ],
    )
    def test_rejects_invalid_matrices(self, matrix):
        with pytest.raises(PreconditionError):
            mills_partition(matrix)

    def test_split_separates_close_pair(self):
        parts = split_until_interpolating(seq_of(0.3, 0.31), 0.0, 0.5)
        assert sorted(p.meta["indices"] for p in parts) == [[0], [1]]

    def test_split_keeps_sparse_sequence_whole(self):
        parts = split_until_interpolating(seq_of(0.5, -0.5), 2.0, 0.5)
        assert len(parts) == 1
        assert parts[0].meta["indices"] == [0, 1]

    def test_split_of_interleaved_nets(self, net_seq):
        crowded = union(net_seq, perturb(net_seq, 0.05, seed=3))
        parts = split_until_interpolating(crowded, 0.0, 0.5)
        s = 2.0
        assert all(k_value(part, s, s).value < 0.5 for part in parts)
        covered = sorted(i for part in parts for i in part.meta["indices"])
        assert covered == list(range(len(crowded)))

    def test_every_split_part_interpolates(self, net_seq):
        crowded = union(net_seq, perturb(net_seq, 0.05, seed=3))
        params = SpaceParams(n=1, p=1, alpha=0.0)
        ext = make_extension(params, 2.0)
        for i, part in enumerate(split_until_interpolating(crowded, 0.0, 0.5)):
            v = random_values(part, params, seed=5, trial=i)
            report = interpolate(part, v, params, ext=ext, method=SolveMethod.NEUMANN, compute_norm=False)
            assert report.te_deviation < 0.5
            assert report.residual_max < 1e-10

    def test_split_preconditions(self, net_seq):
        with pytest.raises(PreconditionError):
            split_until_interpolating(net_seq, 0.0, 1.0)
        with pytest.raises(PreconditionError):
            split_until_interpolating(net_seq, -1.0, 0.5)
