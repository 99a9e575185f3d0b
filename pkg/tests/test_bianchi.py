import math
from fractions import Fraction

import numpy as np
import pytest

from oplax.bianchi import (BianchiLabel, BianchiType, StructureConstants,
                           UnsupportedLabelError, classical_jacobiator,
                           deformation_closed_form, dynamical_deformation,
                           label_params, structure_constants)
from oplax.lax import _exact_sqrt, build_mu, solve_C
from oplax.oscillator import HOParams, PhasePoint

DEFORMABLE = [
    BianchiLabel(BianchiType.VIIA, 0.7),
    BianchiLabel(BianchiType.VIIA, 2.0),
    BianchiLabel(BianchiType.IIIA1),
    BianchiLabel(BianchiType.VIA, 0.5),
    BianchiLabel(BianchiType.VIA, 3.0),
]


class TestLabel:
    def test_parameter_required(self):
        with pytest.raises(ValueError):
            BianchiLabel(BianchiType.VIIA)
        with pytest.raises(ValueError):
            BianchiLabel(BianchiType.VIA)

    def test_parameter_domain(self):
        with pytest.raises(ValueError):
            BianchiLabel(BianchiType.VIIA, -1.0)
        with pytest.raises(ValueError):
            BianchiLabel(BianchiType.VIA, 1.0)

    def test_parameter_forbidden(self):
        with pytest.raises(ValueError):
            BianchiLabel(BianchiType.IIIA1, 2.0)
        with pytest.raises(ValueError):
            BianchiLabel(BianchiType.II, 1.0)

    def test_a_value(self):
        assert BianchiLabel(BianchiType.IIIA1).a_value == 1
        assert BianchiLabel(BianchiType.VIA, 2.5).a_value == 2.5


class TestStructureConstants:
    def test_shape_guard(self):
        with pytest.raises(ValueError):
            StructureConstants(np.zeros((3, 3)))

    def test_component_is_one_based(self):
        sc = structure_constants(BianchiLabel(BianchiType.II))
        # Heisenberg: [e2, e3] = e1 only
        assert sc.component(1, 2, 3) == 1
        assert sc.component(1, 3, 2) == -1
        assert np.count_nonzero(sc.array) == 2

    @pytest.mark.parametrize("label", DEFORMABLE)
    def test_antisymmetry(self, label):
        arr = structure_constants(label).array
        assert np.array_equal(arr, -np.swapaxes(arr, 1, 2))

    def test_viia_rows(self):
        sc = structure_constants(BianchiLabel(BianchiType.VIIA, 0.7))
        # [e1,e2] = -a e2 + e3, [e2,e3] = 0, [e3,e1] = e2 + a e3
        assert sc.component(2, 1, 2) == -0.7
        assert sc.component(3, 1, 2) == 1
        assert sc.component(1, 2, 3) == 0
        assert sc.component(2, 3, 1) == 1
        assert sc.component(3, 3, 1) == 0.7

    def test_via_vs_iiia1(self):
        # III_{a=1} is VI_a continued to a = 1
        via = structure_constants(BianchiLabel(BianchiType.VIA, 2.0)).array
        iii = structure_constants(BianchiLabel(BianchiType.IIIA1)).array
        via_at_1 = np.where(np.abs(via) == 2.0, np.sign(via), via)
        assert np.array_equal(via_at_1, iii)


class TestDeformations:
    def test_type_ii_not_deformable(self):
        params = HOParams(omega=1.0, p0=1.0)
        label = BianchiLabel(BianchiType.II)
        with pytest.raises(UnsupportedLabelError):
            label_params(label, 1.0)
        with pytest.raises(UnsupportedLabelError):
            deformation_closed_form(label, params, 0.0)

    @pytest.mark.parametrize("label", DEFORMABLE)
    def test_initial_value(self, label):
        params = HOParams(omega=1.3, p0=0.9)
        sc0 = structure_constants(label).array.astype(float)
        gen = dynamical_deformation(label, params, 0.0).array
        closed = deformation_closed_form(label, params, 0.0).array
        assert np.allclose(gen, sc0, atol=1e-12)
        assert np.allclose(closed, sc0, atol=1e-12)

    @pytest.mark.parametrize("label", DEFORMABLE)
    def test_generated_matches_closed_form(self, label):
        for w, p0 in ((1.3, 0.9), (0.5, 2.0)):
            params = HOParams(omega=w, p0=p0)
            for t in np.linspace(0.0, 4 * math.pi / w, 50):
                gen = dynamical_deformation(label, params, float(t)).array
                closed = deformation_closed_form(label, params,
                                                 float(t)).array
                assert np.max(np.abs(gen - closed)) <= 1e-12

    @pytest.mark.parametrize("label", DEFORMABLE)
    def test_periodicity(self, label):
        params = HOParams(omega=1.3, p0=0.9)
        period = 4 * math.pi / params.omega  # Q, P have half the q,p frequency
        for t in (0.0, 0.7, 2.1):
            d0 = dynamical_deformation(label, params, t).array
            d1 = dynamical_deformation(label, params, t + period).array
            assert np.allclose(d0, d1, atol=1e-9)

    @pytest.mark.parametrize("p0", [Fraction(1, 2), Fraction(2),
                                    Fraction(8), Fraction(9, 2)])
    def test_exact_roundtrip_bianchi_rows(self, p0):
        r = _exact_sqrt(2 * p0)
        ho = HOParams(omega=Fraction(1), p0=p0)
        pt = PhasePoint(t=Fraction(0), q=Fraction(0), p=p0,
                        Q=Fraction(0), P=r, H=p0 * p0 / 2)
        for label in (BianchiLabel(BianchiType.VIIA, Fraction(3, 4)),
                      BianchiLabel(BianchiType.IIIA1),
                      BianchiLabel(BianchiType.VIA, Fraction(5, 2))):
            sc = structure_constants(label).array.tolist()
            C = solve_C(sc, p0)
            assert build_mu(C, ho, pt) == sc


class TestClassicalJacobiator:
    def test_lie_algebra_rows_satisfy_jacobi(self):
        rng = np.random.default_rng(21)
        labels = DEFORMABLE + [BianchiLabel(BianchiType.II)]
        for label in labels:
            sc = structure_constants(label)
            for _ in range(20):
                x, y, z = rng.uniform(-2, 2, size=(3, 3))
                assert np.max(np.abs(classical_jacobiator(sc, x, y, z))) \
                    <= 1e-12

    @pytest.mark.parametrize("label", DEFORMABLE)
    def test_jacobi_preserved_along_flow(self, label):
        rng = np.random.default_rng(22)
        params = HOParams(omega=1.3, p0=0.9)
        for t in np.linspace(0.0, 9.0, 12):
            sc = dynamical_deformation(label, params, float(t))
            for _ in range(5):
                x, y, z = rng.uniform(-2, 2, size=(3, 3))
                norms = (np.linalg.norm(x) * np.linalg.norm(y)
                         * np.linalg.norm(z))
                res = np.max(np.abs(classical_jacobiator(sc, x, y, z)))
                assert res <= 1e-10 * max(1.0, norms)

    def test_alternating(self):
        sc = structure_constants(BianchiLabel(BianchiType.VIIA, 1.5))
        rng = np.random.default_rng(23)
        x, y = rng.uniform(-1, 1, size=(2, 3))
        assert np.allclose(classical_jacobiator(sc, x, x, y), 0.0,
                           atol=1e-13)

    def test_trilinear(self):
        sc = structure_constants(BianchiLabel(BianchiType.VIA, 2.0))
        rng = np.random.default_rng(24)
        x, y, z, x2 = rng.uniform(-1, 1, size=(4, 3))
        lhs = classical_jacobiator(sc, 2.0 * x + x2, y, z)
        rhs = (2.0 * classical_jacobiator(sc, x, y, z)
               + classical_jacobiator(sc, x2, y, z))
        assert np.allclose(lhs, rhs, atol=1e-12)
