"""Tests for the interpolation solvers, criteria, transfer and augmentation."""

import math

import numpy as np
import pytest

from errors import NumericalError, PreconditionError, SingularSystemError
from geometry.models import Automorphism
from quadrature.models import QuadratureSpec
from seqlab.diagnostics import k_value
from seqlab.models import PointSeq
from seqlab.nets import apply_automorphism_to_seq, generate_net, perturb
from solver.criteria import choose_extension, l1_criterion, lp_criterion, separation_alpha, symmetric_lp_criterion
from solver.extension import (
    approx_extension,
    extension_exponent,
    make_extension,
    node_weights,
    te_deviation,
    te_matrix,
    te_norm_estimate,
)
from solver.interpolate import dual_family, interpolate, residual_max, restrict
from solver.models import SolveMethod
from solver.augment import add_points
from solver.stability import interpolation_constant_probe, random_values, stability_iterate
from solver.transfer import kernel_weight_sum_probe, transfer_basis, transfer_targets
from spaces.functions import constant, kernel_fn
from spaces.kernels import apply_Tphi
from spaces.models import SpaceParams
from spaces.norms import norm, sequence_norm


def seq_of(*zs) -> PointSeq:
    return PointSeq.from_points(np.array(zs, dtype=complex).reshape(len(zs), -1))


def weighted_error(f, seq, values, params) -> np.ndarray:
    return np.abs(f.evaluate(seq.points) - values) * node_weights(seq) ** params.beta


@pytest.fixture(scope="module")
def l1_setup(net_seq):
    """B_α^1 parameters on the net for which the l1 criterion holds."""
    alpha, m = separation_alpha(net_seq, 0.5)
    return SpaceParams(n=1, p=1, alpha=alpha), m


@pytest.fixture(scope="module")
def l2_params(net_seq):
    """B_α^2 parameters on the net for which the ℓ² criterion holds."""
    alpha, _ = separation_alpha(net_seq, 0.5)
    return SpaceParams(n=1, p=2, alpha=1.0 + alpha)


class TestExtension:
    @pytest.mark.parametrize(
        "p,alpha,m,expected",
        [(1.0, 0.0, 1.0, 3.0), (1.0, 0.5, 2.0, 4.5), (2.0, 0.5, 1.0, 3.0), (3.0, 0.0, 5.0, 2.0)],
    )
    def test_exponent(self, p, alpha, m, expected):
        assert extension_exponent(SpaceParams(n=1, p=p, alpha=alpha), m) == pytest.approx(expected)

    def test_p_one_needs_positive_m(self):
        with pytest.raises(PreconditionError):
            extension_exponent(SpaceParams(n=1, p=1, alpha=0.0), 0.0)

    @pytest.mark.parametrize("params", [SpaceParams(p=2, alpha=-0.5), SpaceParams(p=math.inf, alpha=1.0),
                                        SpaceParams(p=0.5, alpha=0.0)])
    def test_unsupported_spaces(self, params):
        with pytest.raises(PreconditionError):
            make_extension(params)

    def test_single_point_matrix(self):
        params = SpaceParams(n=1, p=2, alpha=0.0)
        B = te_matrix(seq_of(0.5), params, make_extension(params))
        np.testing.assert_array_equal(B, [[1.0]])

    def test_extension_hits_single_node(self):
        params = SpaceParams(n=1, p=2, alpha=0.3)
        seq = seq_of(0.6j)
        f = approx_extension([2.0 - 1.0j], seq, params, make_extension(params))
        assert f([0.6j]) == pytest.approx(2.0 - 1.0j, rel=1e-12)

    def test_conjugate_symmetry_for_equal_moduli(self):
        params = SpaceParams(n=1, p=2, alpha=0.25)
        B = te_matrix(seq_of(0.5, 0.5j), params, make_extension(params))
        np.testing.assert_allclose(B[1, 0], np.conj(B[0, 1]), rtol=1e-14)

    def test_l1_deviation_is_k_value(self, net_seq, l1_setup):
        params, m = l1_setup
        deviation = te_deviation(net_seq, params, make_extension(params, m))
        np.testing.assert_allclose(deviation, l1_criterion(net_seq, params, m).values["k"], rtol=1e-12)

    def test_boyd_estimate_below_bound(self, net_seq):
        params = SpaceParams(n=1, p=3, alpha=0.5)
        ext = make_extension(params)
        assert te_norm_estimate(net_seq, params, ext) <= te_deviation(net_seq, params, ext) * (1 + 1e-12)

    @pytest.mark.parametrize("p,alpha", [(1.5, 0.5), (2.0, 0.0), (3.0, 1.0)])
    def test_neumann_contraction_within_bound(self, two_point_seq, p, alpha):
        params = SpaceParams(n=1, p=p, alpha=alpha)
        report = interpolate(two_point_seq, [1.0, -2.0j], params, method=SolveMethod.NEUMANN, compute_norm=False)
        assert report.te_deviation < 1.0
        assert report.te_norm_estimate <= report.te_deviation * (1 + 1e-12)
        assert report.contraction <= report.te_deviation + 1e-12
        assert report.residual_max < 1e-10


class TestCriteria:
    def test_separation_alpha_meets_target(self, net_seq):
        alpha, m = separation_alpha(net_seq, 0.5)
        s = 2.0 + alpha
        assert m == pytest.approx(s)
        assert k_value(net_seq, s, s).value <= 0.5

    def test_separation_alpha_zero_when_sparse(self):
        alpha, m = separation_alpha(seq_of(0.5, -0.5), 0.5)
        assert (alpha, m) == (0.0, 2.0)

    def test_l1_criterion_implies_contraction(self, net_seq, l1_setup):
        params, m = l1_setup
        report = l1_criterion(net_seq, params, m)
        assert report.satisfied
        assert te_deviation(net_seq, params, make_extension(params, m)) < 1.0

    def test_l1_criterion_needs_p_one(self, net_seq):
        with pytest.raises(PreconditionError):
            l1_criterion(net_seq, SpaceParams(p=2), 1.0)

    def test_lp_and_symmetric_agree_for_p_two(self, net_seq, l2_params):
        lp = lp_criterion(net_seq, l2_params)
        symmetric = symmetric_lp_criterion(net_seq, l2_params)
        assert lp.satisfied and symmetric.satisfied
        np.testing.assert_allclose(symmetric.values["k"], lp.values["c1c2"], rtol=1e-12)

    def test_symmetric_criterion_c0_range(self, net_seq):
        with pytest.raises(PreconditionError):
            symmetric_lp_criterion(net_seq, SpaceParams(p=2), c0=1.5)

    def test_choose_extension(self, net_seq, l1_setup, l2_params):
        params, _ = l1_setup
        ext, method = choose_extension(net_seq, params)
        passing = [m for m in (1.0, 2.0, 4.0, 8.0) if l1_criterion(net_seq, params, m).satisfied]
        if passing:
            assert (ext.m, method) == (passing[0], SolveMethod.NEUMANN)
        else:
            assert (ext.m, method) == (2.0, SolveMethod.DIRECT)
        assert choose_extension(net_seq, l2_params)[1] is SolveMethod.NEUMANN

    def test_crowded_pair_falls_back_to_direct(self):
        _, method = choose_extension(seq_of(0.5, 0.5001), SpaceParams(n=1, p=2, alpha=0.0))
        assert method is SolveMethod.DIRECT


class TestInterpolate:
    """Direct and Neumann solves of B c = v."""

    def test_neumann_l1(self, net_seq, l1_setup):
        params, m = l1_setup
        v = random_values(net_seq, params, seed=0, trial=0)
        report = interpolate(net_seq, v, params, ext=make_extension(params, m), method=SolveMethod.NEUMANN,
                             compute_norm=False)
        assert report.residual_max < 1e-10
        assert report.contraction <= report.te_deviation + 1e-12
        assert np.max(weighted_error(report.interpolant, net_seq, v, params)) < 1e-10

    def test_direct_and_neumann_agree(self, net_seq, l2_params):
        v = random_values(net_seq, l2_params, seed=0, trial=1)
        direct = interpolate(net_seq, v, l2_params, method=SolveMethod.DIRECT, compute_norm=False)
        neumann = interpolate(net_seq, v, l2_params, method=SolveMethod.NEUMANN, compute_norm=False)
        weights = node_weights(net_seq) ** l2_params.beta
        diff = np.abs(np.array(direct.coefficients) - np.array(neumann.coefficients)) * weights
        assert diff.max() < 1e-9
        assert neumann.iterations > 0 and direct.iterations == 0

    def test_default_choice(self, net_seq, l2_params):
        v = random_values(net_seq, l2_params, seed=0, trial=2)
        report = interpolate(net_seq, v, l2_params, compute_norm=False)
        assert report.method is SolveMethod.NEUMANN
        assert report.residual_max < 1e-10

    def test_two_points_with_norm(self, two_point_seq):
        params = SpaceParams(n=1, p=2, alpha=0.0)
        report = interpolate(two_point_seq, [1.0, -1.0j], params, spec=QuadratureSpec(samples=2**14))
        assert report.residual_max < 1e-10
        assert 0.0 < report.norm_estimate.value < math.inf

    def test_single_point(self):
        params = SpaceParams(n=1, p=2, alpha=0.0)
        report = interpolate(seq_of(0.5), [3.0], params, compute_norm=False)
        assert report.residual_max < 1e-14
        assert report.te_deviation == 0.0

    def test_neumann_refused_when_deviation_large(self):
        params = SpaceParams(n=1, p=1, alpha=0.0)
        crowded = seq_of(0.5, 0.501, 0.5 + 0.002j)
        with pytest.raises(PreconditionError):
            interpolate(crowded, [1.0, 2.0, 3.0], params, ext=make_extension(params, 1.0),
                        method=SolveMethod.NEUMANN, compute_norm=False)

    def test_method_alone_takes_chosen_extension(self, net_seq, l1_setup):
        params, _ = l1_setup
        v = random_values(net_seq, params, seed=2, trial=0)
        report = interpolate(net_seq, v, params, method=SolveMethod.DIRECT, compute_norm=False)
        assert report.extension == choose_extension(net_seq, params)[0]
        assert report.method is SolveMethod.DIRECT

    def test_extension_alone_picks_neumann_when_contractive(self, net_seq, l1_setup):
        params, m = l1_setup
        v = random_values(net_seq, params, seed=2, trial=1)
        report = interpolate(net_seq, v, params, ext=make_extension(params, m), compute_norm=False)
        assert report.method is SolveMethod.NEUMANN
        assert report.extension.m == m
        assert report.residual_max < 1e-10

    def test_extension_alone_falls_back_to_direct(self):
        params = SpaceParams(n=1, p=1, alpha=0.0)
        crowded = seq_of(0.5, 0.501, 0.5 + 0.002j)
        report = interpolate(crowded, [1.0, 2.0, 3.0], params, ext=make_extension(params, 1.0), compute_norm=False)
        assert report.te_deviation >= 1.0
        assert report.method is SolveMethod.DIRECT

    def test_singular_system(self):
        params = SpaceParams(n=1, p=2, alpha=0.0)
        with pytest.raises(SingularSystemError):
            interpolate(seq_of(0.5, 0.5 + 1e-14), [1.0, 0.0], params, method=SolveMethod.DIRECT,
                        compute_norm=False)

    def test_value_count_must_match(self, two_point_seq):
        with pytest.raises(PreconditionError):
            interpolate(two_point_seq, [1.0], SpaceParams(), compute_norm=False)

    def test_hardy_rejected(self, two_point_seq):
        with pytest.raises(PreconditionError):
            interpolate(two_point_seq, [1.0, 2.0], SpaceParams(p=2, alpha=-0.5), compute_norm=False)

    def test_restrict_constant(self, net_seq):
        params = SpaceParams(n=1, p=1, alpha=0.5)
        restricted = restrict(constant(1.0), net_seq, params)
        expected = float(np.sum(node_weights(net_seq) ** params.beta))
        assert restricted.norm == pytest.approx(expected, rel=1e-12)

    def test_equivariance(self, net_seq):
        params = SpaceParams(n=1, p=2, alpha=0.5)
        c = np.array([0.3 - 0.2j])
        phi = Automorphism.involution(c)
        moved = apply_automorphism_to_seq(net_seq, phi)
        v = random_values(net_seq, params, seed=1, trial=0)
        beta = params.beta
        factor = (1.0 - abs(c[0]) ** 2) ** beta * kernel_fn(2.0 * beta, c).evaluate(net_seq.points)
        g = interpolate(moved, v / factor, params, method=SolveMethod.DIRECT, compute_norm=False).interpolant
        f = apply_Tphi(g, phi, params)
        assert np.max(weighted_error(f, net_seq, v, params)) < 1e-8


class TestDuals:
    def test_biorthogonal(self, net_seq, l2_params):
        family = dual_family(net_seq, l2_params)
        values = np.array([f.evaluate(net_seq.points) for f in family.functions])
        scaled = values * node_weights(net_seq)[:, None] ** l2_params.beta
        np.testing.assert_allclose(scaled, np.eye(len(net_seq)), atol=1e-9)

    def test_single_point_dual(self):
        params = SpaceParams(n=1, p=1, alpha=0.0)
        family = dual_family(seq_of(0.4j), params, compute_norms=True, spec=QuadratureSpec(samples=2**14))
        f = family.functions[0]
        assert f([0.4j]) * (1 - 0.16) ** params.beta == pytest.approx(1.0, rel=1e-12)
        assert family.constant == family.norms[0] > 0


@pytest.mark.slow
class TestNetInterpolation:
    """Random data on generated nets, solved in B_α^1 and B_α^2."""

    @pytest.fixture(scope="class", params=[(1, 0.9, 3), (2, 0.9, 2), (1, 0.5, 3)], ids=lambda a: "n%d-r%g-m%d" % a)
    def net(self, request):
        n, r, layers = request.param
        return generate_net(n, r, layers, seed=0)

    def test_l1_neumann_with_stable_constant(self, net):
        alpha, m = separation_alpha(net, 0.5)
        params = SpaceParams(n=net.n, p=1, alpha=alpha)
        assert l1_criterion(net, params, m).satisfied
        ext = make_extension(params, m)
        spec = QuadratureSpec(samples=2**14)
        ratios = []
        for trial in range(10):
            v = random_values(net, params, seed=11, trial=trial)
            report = interpolate(net, v, params, ext=ext, method=SolveMethod.NEUMANN, spec=spec)
            assert report.te_deviation < 1.0
            assert report.contraction <= report.te_deviation + 1e-12
            assert report.residual_max < 1e-10
            ratios.append(report.norm_estimate.value / report.value_norm)
        assert min(ratios) > 0.0
        assert max(ratios) < 2.0 * min(ratios)

    def test_l2_solvers_and_duals(self, net):
        alpha, _ = separation_alpha(net, 0.5)
        params = SpaceParams(n=net.n, p=2, alpha=(net.n + 1) / 2 + alpha)
        assert lp_criterion(net, params).satisfied
        v = random_values(net, params, seed=12, trial=0)
        direct = interpolate(net, v, params, method=SolveMethod.DIRECT, compute_norm=False)
        neumann = interpolate(net, v, params, method=SolveMethod.NEUMANN, compute_norm=False)
        weights = node_weights(net) ** params.beta
        diff = np.abs(np.array(direct.coefficients) - np.array(neumann.coefficients)) * weights
        assert diff.max() < 1e-9
        assert max(direct.residual_max, neumann.residual_max) < 1e-10
        family = dual_family(net, params)
        values = np.array([f.evaluate(net.points) for f in family.functions])
        scaled = values * node_weights(net)[:, None] ** params.beta
        np.testing.assert_allclose(scaled, np.eye(len(net)), atol=1e-9)


class TestTransfer:
    """Interpolating sequences moved between weighted spaces."""

    @pytest.mark.parametrize("target", [SpaceParams(n=1, p=2, alpha=2.5), SpaceParams(n=1, p=0.5, alpha=2.6)])
    def test_node_values(self, net_seq, target):
        params = SpaceParams(n=1, p=1, alpha=1.0)
        ext, _ = choose_extension(net_seq, params)
        duals = dual_family(net_seq, params, ext)
        lam = np.random.default_rng(7).standard_normal(len(net_seq)) + 0.5j
        G = transfer_basis(net_seq, duals, params, target, lam)
        np.testing.assert_allclose(transfer_targets(net_seq, G, target), lam, atol=1e-9)

    @pytest.mark.slow
    @pytest.mark.parametrize("target", [SpaceParams(n=1, p=2, alpha=2.5), SpaceParams(n=1, p=0.5, alpha=2.6)])
    def test_norm_ratio_spread(self, net_seq, target):
        params = SpaceParams(n=1, p=1, alpha=1.0)
        ext, _ = choose_extension(net_seq, params)
        duals = dual_family(net_seq, params, ext)
        spec = QuadratureSpec(samples=2**14)
        rng = np.random.default_rng(3)
        ratios = []
        for _ in range(10):
            lam = rng.standard_normal(len(net_seq)) + 1j * rng.standard_normal(len(net_seq))
            G = transfer_basis(net_seq, duals, params, target, lam)
            restricted = sequence_norm(G.evaluate(net_seq.points), net_seq.points, target)
            ratios.append(norm(G, target, spec).value / restricted)
        assert min(ratios) > 0.0
        assert max(ratios) < 3.0 * min(ratios)

    def test_invalid_pair(self, two_point_seq):
        params = SpaceParams(n=1, p=1, alpha=1.0)
        duals = dual_family(two_point_seq, params)
        with pytest.raises(PreconditionError):
            transfer_basis(two_point_seq, duals, params, SpaceParams(n=1, p=2, alpha=0.75), [1.0, 1.0])

    def test_zero_coefficients(self, two_point_seq):
        params = SpaceParams(n=1, p=1, alpha=1.0)
        target = SpaceParams(n=1, p=2, alpha=2.5)
        G = transfer_basis(two_point_seq, dual_family(two_point_seq, params), params, target, [0.0, 0.0])
        assert G == constant(0.0)

    def test_kernel_weight_sum_probe(self, net_seq):
        params = SpaceParams(n=1, p=1, alpha=1.0)
        target = SpaceParams(n=1, p=2, alpha=2.5)
        value = kernel_weight_sum_probe(net_seq, params, target, 2.0, 1.0)
        assert 0.0 < value < math.inf
        assert kernel_weight_sum_probe(PointSeq(n=1, points=[]), params, target, 2.0, 1.0) == 0.0
        with pytest.raises(PreconditionError):
            kernel_weight_sum_probe(net_seq, params, target, 0.1, 0.1)


class TestAddPoints:
    def test_one_point_and_origin(self):
        params = SpaceParams(n=1, p=2, alpha=0.0)
        report = add_points(seq_of(0.5), [1.0], [([0.0], 2.0)], params, compute_norm=False)
        union = seq_of(0.5, 0.0)
        assert residual_max(report.interpolant, union, np.array([1.0, 2.0]), params) < 1e-12
        assert report.residual_max < 1e-12
        assert len(report.steps) == 1

    def test_consistent_value_changes_nothing(self, two_point_seq):
        params = SpaceParams(n=1, p=2, alpha=0.0)
        base = interpolate(two_point_seq, [1.0, 2.0], params, compute_norm=False).interpolant
        b = np.array([0.1 + 0.1j])
        report = add_points(two_point_seq, [1.0, 2.0], [(b, base(b))], params, compute_norm=False)
        assert report.steps[0].correction == 0
        assert report.interpolant == base

    def test_net_with_three_extra_points(self, net_seq):
        params = SpaceParams(n=1, p=2, alpha=0.0)
        v = random_values(net_seq, params, seed=4, trial=0)
        extra = [([0.1 + 0.2j], 1.0), ([-0.3 + 0.05j], -2.0j), ([0.05 - 0.4j], 0.5)]
        report = add_points(net_seq, v, extra, params, method=SolveMethod.DIRECT, compute_norm=False)
        assert report.residual_max < 1e-9
        assert [step.min_node_modulus > 0 for step in report.steps] == [True] * 3

    def test_coinciding_point(self, two_point_seq):
        with pytest.raises(PreconditionError):
            add_points(two_point_seq, [1.0, 2.0], [([0.3], 5.0)], SpaceParams(), compute_norm=False)

    def test_nearly_coinciding_point(self, two_point_seq):
        with pytest.raises(NumericalError):
            add_points(two_point_seq, [1.0, 2.0], [([0.3 + 1e-8], 5.0)], SpaceParams(), compute_norm=False)


class TestStability:
    """Interpolation on perturbed sequences with the unperturbed solver."""

    def test_no_perturbation(self, net_seq):
        params = SpaceParams(n=1, p=2, alpha=0.0)
        v = random_values(net_seq, params, seed=0, trial=0)
        report = stability_iterate(net_seq, net_seq, v, params)
        assert report.iterations == 1
        assert report.residual_max < 1e-12

    def test_small_perturbation_contracts(self, net_seq):
        params = SpaceParams(n=1, p=2, alpha=0.0)
        moved = perturb(net_seq, 0.01, seed=0)
        v = random_values(moved, params, seed=0, trial=0)
        report = stability_iterate(net_seq, moved, v, params)
        assert report.contraction < 1.0
        assert report.residual_max < 1e-8

    def test_contraction_grows_with_perturbation(self, net_seq):
        params = SpaceParams(n=1, p=2, alpha=0.0)
        gammas = []
        for delta in (0.005, 0.02):
            moved = perturb(net_seq, delta, seed=5)
            v = random_values(moved, params, seed=0, trial=0)
            gammas.append(stability_iterate(net_seq, moved, v, params, max_iter=5).contraction)
        assert gammas[0] < gammas[1]

    def test_solver_choice_follows_original_sequence(self, net_seq):
        params = SpaceParams(n=1, p=2, alpha=0.0)
        moved = perturb(net_seq, 0.01, seed=1)
        v = random_values(moved, params, seed=0, trial=3)
        ext, method = choose_extension(net_seq, params)
        report = stability_iterate(net_seq, moved, v, params)
        assert (report.extension, report.method) == (ext, method)
        direct = stability_iterate(net_seq, moved, v, params, method=SolveMethod.DIRECT)
        assert direct.method is SolveMethod.DIRECT
        assert report.residual_max < 1e-8 and direct.residual_max < 1e-8

    def test_length_mismatch(self, net_seq):
        with pytest.raises(PreconditionError):
            stability_iterate(net_seq, net_seq.subset([0]), [1.0], SpaceParams())

    def test_interpolation_constant_grows_when_points_crowd(self):
        params = SpaceParams(n=1, p=2, alpha=0.0)
        spec = QuadratureSpec(samples=2**14)
        sparse = interpolation_constant_probe(seq_of(0.3, -0.3), params, spec=spec)
        crowded = interpolation_constant_probe(seq_of(0.3, 0.32), params, spec=spec)
        assert crowded > sparse > 0.0

    def test_random_values_have_unit_norm(self, net_seq):
        params = SpaceParams(n=1, p=3, alpha=0.2)
        v = random_values(net_seq, params, seed=3, trial=1)
        weights = node_weights(net_seq) ** params.beta
        assert np.sum((weights * np.abs(v)) ** 3) == pytest.approx(1.0, rel=1e-12)
