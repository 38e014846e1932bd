import cmath
import math
import random

import numpy as np
import pytest

from zetadet import (
    ConnectionFamily,
    Lattice,
    NonAcyclicError,
    arg_class,
    arg_derivative_check,
    build_from_monodromy,
    build_rank1,
    eta_invariant,
    eta_variation_check,
    holomorphy_scan,
    monodromy,
    ray_singer_torsion,
    refined_torsion,
    trs_comparison,
)

from helpers import random_invertible

PI = math.pi


def closed_form(a: complex) -> complex:
    return 1 - cmath.exp(2j * PI * a)


class TestBuild:
    def test_rank1(self):
        model = build_rank1(0.5)
        assert model.spectrum() == Lattice(0.5)

    def test_rank1_complex(self):
        model = build_rank1(0.25 + 0.1j)
        assert model.log_params == ((0.25 + 0.1j, 1),)

    def test_rank1_integer_rejected(self):
        with pytest.raises(NonAcyclicError):
            build_rank1(1.0)
        with pytest.raises(NonAcyclicError):
            build_rank1(2 + 1e-10j)

    def test_monodromy_scalar(self):
        model = build_from_monodromy([[-1.0]])
        (a, m), = model.log_params
        assert a == pytest.approx(0.5)

    def test_monodromy_diag(self):
        model = build_from_monodromy(np.diag([-1.0, 1j]))
        params = sorted(p[0].real for p in model.log_params)
        assert params == pytest.approx([0.25, 0.5])

    def test_monodromy_rotation(self):
        model = build_from_monodromy([[0, -1], [1, 0]])
        params = sorted(p[0].real for p in model.log_params)
        assert params == pytest.approx([0.25, 0.75])

    def test_monodromy_with_one_rejected(self):
        with pytest.raises(NonAcyclicError):
            build_from_monodromy(np.diag([1.0, -1.0]))

    def test_repeated_eigenvalues_merge(self):
        model = build_from_monodromy(np.diag([-1.0, -1.0]))
        (a, m), = model.log_params
        assert m == 2 and a == pytest.approx(0.5)


class TestRefinedTorsion:
    def test_half_parameter(self):
        assert refined_torsion(build_rank1(0.5)).torsion == pytest.approx(2, abs=1e-8)

    def test_quarter_parameter(self):
        r = refined_torsion(build_rank1(0.25))
        assert r.torsion == pytest.approx(1 - 1j, abs=1e-8)
        # phase/modulus factorization 2 sin(pi a) exp(i pi (2a-1)/2)
        assert r.torsion == pytest.approx(
            2 * math.sin(PI / 4) * cmath.exp(1j * PI / 2 * (2 * 0.25 - 1)), abs=1e-8
        )

    def test_identity_residual_small(self):
        for a in (0.1, 0.5, 0.9, 0.3 + 0.3j, 0.7 - 0.2j):
            r = refined_torsion(build_rank1(a))
            assert r.identity_residual < 1e-9
            assert r.torsion == pytest.approx(cmath.exp(r.graded_ldet))

    def test_matrix_model_product(self):
        mus = [cmath.exp(2j * PI * 0.3), cmath.exp(2j * PI * (0.6 + 0.1j))]
        model = build_from_monodromy(np.diag(mus))
        r = refined_torsion(model)
        expected = (1 - mus[0]) * (1 - mus[1])
        assert r.torsion == pytest.approx(expected, rel=1e-8)

    def test_multiplicative_over_direct_sum(self):
        rng = random.Random(31)
        for _ in range(10):
            m1 = random_invertible(rng, 2)
            m2 = random_invertible(rng, 2)
            try:
                t1 = refined_torsion(build_from_monodromy(m1)).torsion
                t2 = refined_torsion(build_from_monodromy(m2)).torsion
                block = np.block(
                    [[m1, np.zeros((2, 2))], [np.zeros((2, 2)), m2]]
                )
                t12 = refined_torsion(build_from_monodromy(block)).torsion
            except NonAcyclicError:
                continue
            assert t12 == pytest.approx(t1 * t2, rel=1e-9)

    def test_conjugation_invariance(self):
        rng = random.Random(17)
        for _ in range(10):
            m = random_invertible(rng, 3)
            g = random_invertible(rng, 3)
            try:
                t = refined_torsion(build_from_monodromy(m)).torsion
                tc = refined_torsion(
                    build_from_monodromy(g @ m @ np.linalg.inv(g))
                ).torsion
            except NonAcyclicError:
                continue
            assert tc == pytest.approx(t, rel=1e-8)

    def test_eta_additivity(self):
        model = build_from_monodromy(
            np.diag([cmath.exp(2j * PI * 0.3), cmath.exp(2j * PI * (0.7 + 0.2j))])
        )
        total = refined_torsion(model).eta
        parts = sum(
            eta_invariant(Lattice(a, m)) for a, m in model.log_params
        )
        assert total == pytest.approx(parts)


class TestRaySinger:
    def test_half(self):
        assert ray_singer_torsion(build_rank1(0.5)) == pytest.approx(2, abs=1e-8)

    def test_quarter(self):
        assert ray_singer_torsion(build_rank1(0.25)) == pytest.approx(
            math.sqrt(2), abs=1e-8
        )

    def test_unitary_equals_abs_torsion(self):
        for a in (0.1, 0.35, 0.62, 0.9):
            model = build_rank1(a)
            assert ray_singer_torsion(model) == pytest.approx(
                abs(refined_torsion(model).torsion), abs=1e-6
            )

    def test_nonunitary_relation(self):
        for a in (0.25 + 0.1j, 0.75 - 0.2j, 0.5 + 0.3j):
            rep = trs_comparison(build_rank1(a))
            assert rep.residual_log_ratio < 1e-6
            assert rep.residual_modulus < 1e-6 * (1 + abs(rep.torsion))
            assert rep.residual_arg_pairing < 1e-6


class TestMonodromy:
    def test_zero_connection(self):
        fam = ConnectionFamily.constant(np.zeros((2, 2)))
        assert np.allclose(monodromy(fam, 64), np.eye(2))

    def test_constant_scalar(self):
        a = 0.3 - 0.2j
        fam = ConnectionFamily.constant(np.array([[1j * a]]))
        phi = monodromy(fam, 512)
        assert phi[0, 0] == pytest.approx(cmath.exp(-2j * PI * a), abs=1e-10)

    def test_gauge_transformation_preserves_det(self):
        # A' = A + (g'/g) I with periodic scalar g leaves Phi(2 pi) unchanged
        a = 0.4 + 0.1j

        def g(x):
            return 2.0 + math.cos(x)

        def gp(x):
            return -math.sin(x)

        base = ConnectionFamily.constant(np.array([[1j * a]]))
        gauged = ConnectionFamily(
            lambda x, t: np.array([[1j * a + gp(x) / g(x)]], dtype=complex), 1
        )
        d1 = np.linalg.det(monodromy(base, 2048))
        d2 = np.linalg.det(monodromy(gauged, 2048))
        assert d2 == pytest.approx(d1, abs=1e-9)

    def test_step_minimum(self):
        fam = ConnectionFamily.constant(np.zeros((1, 1)))
        with pytest.raises(ValueError):
            monodromy(fam, 32)

    def test_grid_minimum(self):
        with pytest.raises(ValueError):
            ConnectionFamily.constant(np.zeros((1, 1))).__class__(
                lambda x, t: np.zeros((1, 1)), 1, n_grid=16
            )


class TestArgClass:
    def test_unit_phase(self):
        assert arg_class([[cmath.exp(2j * PI * 0.3)]]) == pytest.approx(0.3)

    def test_det_multiplies(self):
        m = np.diag([cmath.exp(2j * PI * 0.3), cmath.exp(2j * PI * 0.4)])
        assert arg_class(m) == pytest.approx(0.7)

    def test_imaginary_part_from_modulus(self):
        m = [[math.exp(-2 * PI)]]
        val = arg_class(m)
        assert val.real == pytest.approx(0.0, abs=1e-12)
        assert val.imag == pytest.approx(1.0)


class TestVariationChecks:
    def test_affine_path(self):
        assert eta_variation_check(lambda t: 0.25 + t, 1e-4) < 1e-6

    def test_constant_path(self):
        assert eta_variation_check(lambda t: 0.37, 1e-4) < 1e-12

    def test_sine_path(self):
        assert eta_variation_check(lambda t: 0.25 + 0.1 * math.sin(t), 1e-4, t=0.5) < 1e-6

    def test_arg_rank1(self):
        fam = ConnectionFamily.rank1_path(0.25)
        assert arg_derivative_check(fam, 1e-4, t=0.05) < 1e-6

    def test_arg_zero_derivative(self):
        fam = ConnectionFamily.diagonal_path([0.3], [0.0])
        assert arg_derivative_check(fam, 1e-4) < 1e-9

    def test_arg_rank2_diagonal(self):
        fam = ConnectionFamily.diagonal_path([0.25, 0.55 + 0.1j], [1.0, -0.5j])
        assert arg_derivative_check(fam, 1e-4, t=0.1) < 1e-6

    def test_psi_required(self):
        fam = ConnectionFamily.constant(np.zeros((1, 1)))
        with pytest.raises(ValueError):
            arg_derivative_check(fam, 1e-4)


class TestHolomorphy:
    def test_torsion_is_holomorphic(self):
        rep = holomorphy_scan((0.2, 0.8), (-0.2, 0.2), 5, 1e-4)
        assert rep.max_cr_residual < 1e-5 * rep.max_abs_torsion

    def test_single_point_grid(self):
        rep = holomorphy_scan((0.5, 0.5), (0.1, 0.1), 1, 1e-4)
        assert rep.grid_shape == (1, 1)
        assert rep.max_cr_residual < 1e-5 * rep.max_abs_torsion

    def test_unitary_modulus_profile(self):
        # along the real line |T| = 2 |sin(pi a)|
        for a in (0.3, 0.45, 0.52, 0.7):
            t = refined_torsion(build_rank1(a)).torsion
            assert abs(t) == pytest.approx(2 * abs(math.sin(PI * a)), abs=1e-8)

    def test_eta_phase_is_holomorphic(self):
        # the map a -> exp(-2 pi i eta(a)) on the acyclic strip
        def fn(a: complex) -> complex:
            return cmath.exp(-2j * PI * eta_invariant(Lattice(a)))

        rep = holomorphy_scan((0.2, 0.8), (-0.2, 0.2), 5, 1e-4, fn=fn)
        assert rep.max_cr_residual < 1e-5 * rep.max_abs_torsion

    def test_grid_near_integer_rejected(self):
        with pytest.raises(NonAcyclicError):
            holomorphy_scan((0.99, 1.01), (0.0, 0.0), 3, 1e-4)

    def test_step_ceiling(self):
        with pytest.raises(ValueError):
            holomorphy_scan((0.2, 0.8), (0.0, 0.0), 3, 1e-3)
