import math

import numpy as np
import pytest

from lpow import (
    DensityMatrix,
    QubitObservable,
    bloch_vector,
    cg_lambda,
    correlation_matrix,
    horodecki,
    make_state,
    observable,
    optimized_chsh,
)
from lpow.states import (
    cg,
    classical,
    ghz,
    ket,
    maximally_mixed,
    projector,
    pure_product,
    sigma_state,
    singlet,
    transition,
    werner,
)
from util import ginibre_state


class TestDensityMatrixValidation:
    def test_rejects_non_hermitian(self):
        m = np.eye(4) / 4.0 + 0j
        m[0, 1] = 0.1
        with pytest.raises(ValueError, match="Hermitian"):
            DensityMatrix(m)

    def test_rejects_wrong_trace(self):
        with pytest.raises(ValueError, match="trace"):
            DensityMatrix(np.eye(4) / 2.0)

    def test_rejects_negative_eigenvalue(self):
        m = np.diag([0.6, 0.5, 0.0, -0.1]).astype(complex)
        with pytest.raises(ValueError, match="negative"):
            DensityMatrix(m)

    def test_rejects_shape_dims_mismatch(self):
        with pytest.raises(ValueError, match="does not match dims"):
            DensityMatrix(np.eye(4) / 4.0, dims=(2, 2, 2))

    def test_accepts_tiny_negative_float_noise(self):
        eps = 5e-11
        m = np.diag([0.5, 0.5 + eps, 0.0, -eps]).astype(complex)
        DensityMatrix(m)

    def test_marginal_of_product_recovers_factor(self, rng):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        w = rng.normal(size=2) + 1j * rng.normal(size=2)
        w /= np.linalg.norm(w)
        rho = pure_product([v, w])
        assert np.allclose(rho.marginal(0).matrix, projector(v))
        assert np.allclose(rho.marginal(1).matrix, projector(w))
        assert rho.n_parties == 2


class TestObservables:
    def test_direction_must_be_unit(self):
        with pytest.raises(ValueError, match="unit"):
            QubitObservable(np.array([1.0, 1.0, 0.0]))

    def test_observable_normalizes(self):
        o = observable([0.0, 0.0, 2.5])
        assert np.allclose(o.direction, [0.0, 0.0, 1.0])
        assert np.allclose(o.matrix, np.diag([1.0, -1.0]))

    def test_observable_rejects_zero(self):
        with pytest.raises(ValueError, match="zero"):
            observable([0.0, 0.0, 0.0])

    def test_matrix_has_plus_minus_one_spectrum(self, rng):
        v = rng.normal(size=3)
        o = observable(v)
        eig = np.sort(np.linalg.eigvalsh(o.matrix))
        assert np.allclose(eig, [-1.0, 1.0])


class TestFamilies:
    def test_singlet_correlation_matrix_is_minus_identity(self):
        assert np.allclose(correlation_matrix(singlet()), -np.eye(3), atol=1e-14)

    def test_werner_interpolates_between_noise_and_singlet(self):
        assert np.allclose(werner(1.0).matrix, singlet().matrix)
        assert np.allclose(werner(0.0).matrix, np.eye(4) / 4.0)

    def test_werner_is_locally_maximally_mixed(self):
        for p in (0.0, 0.3, 0.7, 1.0):
            rho = werner(p)
            assert np.allclose(rho.marginal(0).matrix, np.eye(2) / 2.0, atol=1e-14)
            assert np.allclose(bloch_vector(rho.marginal(1)), 0.0, atol=1e-14)

    def test_werner_correlation_matrix_scales_with_p(self):
        assert np.allclose(correlation_matrix(werner(0.4)), -0.4 * np.eye(3), atol=1e-14)

    def test_werner_rejects_out_of_range(self):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            werner(1.2)

    def test_sigma_state_marginals(self):
        rho = sigma_state()
        assert np.allclose(bloch_vector(rho.marginal(0)), [0.0, 0.0, 0.66], atol=1e-12)
        assert np.allclose(bloch_vector(rho.marginal(1)), [0.0, 0.0, 0.36], atol=1e-12)

    def test_transition_endpoints(self):
        triplet = (ket(0, 1) + ket(1, 0)) / math.sqrt(2)
        assert np.allclose(transition(0.0).matrix, projector(triplet))
        assert np.allclose(transition(1.0).matrix, projector(ket(0, 0)))

    def test_transition_marginal_bloch_grows_linearly(self):
        # Both marginals sit at (0, 0, p); in particular p = 0.5 is *not*
        # locally maximally mixed.
        for p in (0.1, 0.5, 0.9):
            rho = transition(p)
            assert np.allclose(bloch_vector(rho.marginal(0)), [0.0, 0.0, p], atol=1e-12)
            assert np.allclose(bloch_vector(rho.marginal(1)), [0.0, 0.0, p], atol=1e-12)

    def test_classical_is_pure_product(self):
        rho = classical(0.3, 1.1)
        a = math.cos(0.3) * ket(0) + np.exp(1.1j) * math.sin(0.3) * ket(1)
        assert np.allclose(rho.matrix, pure_product([a, ket(0)]).matrix)

    def test_ghz_marginals_are_maximally_mixed(self):
        rho = ghz()
        assert rho.dims == (2, 2, 2)
        for k in range(3):
            assert np.allclose(rho.marginal(k).matrix, np.eye(2) / 2.0, atol=1e-14)

    def test_maximally_mixed(self):
        assert np.allclose(maximally_mixed(2).matrix, np.eye(4) / 4.0)
        assert maximally_mixed(3).dims == (2, 2, 2)

    def test_pure_product_validation(self):
        with pytest.raises(ValueError, match="normalized"):
            pure_product([np.array([1.0, 1.0])])
        with pytest.raises(ValueError, match="single-qubit"):
            pure_product([np.ones(3) / math.sqrt(3)])
        with pytest.raises(ValueError, match="at least one"):
            pure_product([])


class TestMakeState:
    def test_unknown_family(self):
        with pytest.raises(ValueError, match="unknown state family"):
            make_state("bogus")

    def test_missing_and_extra_params(self):
        with pytest.raises(ValueError, match="missing parameter"):
            make_state("werner")
        with pytest.raises(ValueError, match="unknown parameter"):
            make_state("werner", p=0.5, q=1.0)

    def test_cg_solves_lambda_when_omitted(self):
        theta = 0.3
        rho = make_state("cg", theta=theta)
        assert np.allclose(rho.matrix, cg(theta, cg_lambda(theta)).matrix)

    def test_pure_product_from_angles(self):
        rho = make_state("pure_product", theta_a=0.0, theta_b=0.0)
        assert np.allclose(rho.matrix, projector(ket(0, 0)))
        rho3 = make_state("pure_product", theta_a=0.0, theta_b=0.0, theta_c=0.0)
        assert rho3.dims == (2, 2, 2)

    def test_pure_product_from_kets(self):
        rho = make_state("pure_product", kets=[ket(1), ket(0)])
        assert np.allclose(rho.matrix, projector(ket(1, 0)))

    def test_pure_product_rejects_mixed_param_styles(self):
        with pytest.raises(ValueError, match="unknown parameter"):
            make_state("pure_product", kets=[ket(0), ket(0)], theta_a=0.1)
        with pytest.raises(ValueError, match="needs kets or theta"):
            make_state("pure_product")


class TestBlochLevel:
    def test_bloch_vector_requires_single_qubit(self):
        with pytest.raises(ValueError, match="single-qubit"):
            bloch_vector(np.eye(4) / 4.0)

    def test_pure_qubit_has_unit_bloch_norm(self, rng):
        for _ in range(20):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            v /= np.linalg.norm(v)
            assert abs(np.linalg.norm(bloch_vector(projector(v))) - 1.0) < 1e-12

    def test_correlation_matrix_requires_two_qubits(self):
        with pytest.raises(ValueError, match="two-qubit"):
            correlation_matrix(ghz())

    def test_correlation_entries_bounded(self, rng):
        for _ in range(20):
            t = correlation_matrix(ginibre_state(rng))
            assert np.abs(t).max() <= 1.0 + 1e-12


class TestHorodecki:
    def test_singlet_maximally_violates(self):
        h = horodecki(singlet())
        assert abs(h.s1 - 1.0) < 1e-12 and abs(h.s2 - 1.0) < 1e-12
        assert abs(h.m_value - math.sqrt(2.0)) < 1e-12
        assert not h.admits_lhv
        assert abs(optimized_chsh(singlet()) - 2.0 * math.sqrt(2.0)) < 1e-12

    def test_werner_m_value_scales_with_p(self):
        for p in (0.2, 0.5, 1.0 / math.sqrt(2.0), 0.9):
            h = horodecki(werner(p))
            assert abs(h.m_value - p * math.sqrt(2.0)) < 1e-12
        assert horodecki(werner(0.70)).admits_lhv
        assert not horodecki(werner(0.72)).admits_lhv

    def test_product_states_admit_lhv(self, rng):
        for _ in range(10):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            v /= np.linalg.norm(v)
            w = rng.normal(size=2) + 1j * rng.normal(size=2)
            w /= np.linalg.norm(w)
            h = horodecki(pure_product([v, w]))
            assert h.m_value <= 1.0 + 1e-10
            assert h.admits_lhv


class TestCgLambda:
    def test_quarter_pi_closed_form(self):
        # At theta = pi/4 the correlation matrix is diag(l, -l, 2l - 1), so
        # s1 = s2 = l and the unit-m condition solves to l = 1/sqrt(2).
        assert abs(cg_lambda(math.pi / 4.0) - 1.0 / math.sqrt(2.0)) < 1e-9

    def test_solved_weight_pins_chsh_to_classical_bound(self):
        for theta in (0.15, 0.3, 0.7, 1.2):
            lam = cg_lambda(theta)
            assert 0.0 < lam <= 1.0
            assert abs(optimized_chsh(cg(theta, lam)) - 2.0) < 1e-8

    def test_domain_validation(self):
        with pytest.raises(ValueError, match="theta"):
            cg_lambda(0.0)
        with pytest.raises(ValueError, match="theta"):
            cg_lambda(math.pi / 2.0)
