import math
from fractions import Fraction

import numpy as np
import pytest

from oplax.lax import (InvalidParametersError, NotRepresentableError,
                       OperadicParams, _exact_sqrt, build_L, build_M,
                       build_mu, mu_multiop, mu_time_derivative, solve_C,
                       verify_matrix_lax, verify_operadic_lax)
from oplax.operad import MultiOp, gerstenhaber
from oplax.oscillator import HOParams, PhasePoint, trajectory


def random_params(rng) -> OperadicParams:
    while True:
        C = OperadicParams.from_sequence(rng.uniform(-2, 2, size=9))
        if C.admissible:
            return C


class TestOperadicParams:
    def test_from_sequence_roundtrip(self):
        vals = tuple(float(i) for i in range(1, 10))
        assert OperadicParams.from_sequence(vals).as_tuple() == vals

    def test_from_sequence_length(self):
        with pytest.raises(ValueError):
            OperadicParams.from_sequence(range(8))

    def test_admissibility(self):
        only_c9 = OperadicParams(0, 0, 0, 0, 0, 0, 0, 0, 1.0)
        assert not only_c9.admissible
        assert OperadicParams(0, 1, 0, 0, 0, 0, 0, 0, 0).admissible


class TestMatrixLax:
    def test_L_symmetric_traceless_block(self):
        params = HOParams(omega=1.1, p0=0.7)
        L = build_L(params, trajectory(params, 0.4))
        assert np.allclose(L, L.T)
        assert L[0, 0] + L[1, 1] == pytest.approx(0.0, abs=1e-15)
        assert L[2, 2] == 1.0

    def test_M_antisymmetric(self):
        M = build_M(2.0)
        assert np.allclose(M, -M.T)
        assert M[1, 0] == 1.0

    def test_lax_equation_grid(self):
        for w in (0.5, 1.0, 2.0):
            for E in (0.5, 1.0, 2.0):
                params = HOParams.from_energy(omega=w, energy=E)
                for t in np.linspace(0.0, 4 * math.pi / w, 25):
                    rep = verify_matrix_lax(params, float(t))
                    assert rep.passed, rep

    def test_isospectrality(self):
        params = HOParams(omega=1.7, p0=1.3)
        ref = np.sort(np.linalg.eigvalsh(build_L(params,
                                                 trajectory(params, 0.0))))
        for t in np.linspace(0.0, 10.0, 21):
            ev = np.sort(np.linalg.eigvalsh(
                build_L(params, trajectory(params, float(t)))))
            assert np.allclose(ev, ref, atol=1e-12)

    def test_dt_domain(self):
        with pytest.raises(ValueError):
            verify_matrix_lax(HOParams(omega=1, p0=1), 0.0, dt=0.0)


class TestBuildMu:
    def test_antisymmetry(self):
        rng = np.random.default_rng(3)
        params = HOParams(omega=1.2, p0=0.8)
        C = random_params(rng)
        mu = build_mu(C, params, trajectory(params, 0.7))
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    assert mu[i][j][k] == -mu[i][k][j]

    def test_constant_c9_component(self):
        params = HOParams(omega=1.2, p0=0.8)
        C = OperadicParams(0, 0, 0, 0, 0, 0, 0, 0, 4.5)
        for t in (0.0, 0.3, 2.1):
            mu = build_mu(C, params, trajectory(params, t))
            assert mu[2][0][1] == 4.5

    def test_admissibility_guard(self):
        params = HOParams(omega=1.0, p0=1.0)
        C = OperadicParams(1, 0, 0, 1, 0, 0, 0, 0, 1)
        point = trajectory(params, 0.0)
        build_mu(C, params, point)  # default: allowed
        with pytest.raises(InvalidParametersError):
            build_mu(C, params, point, require_admissible=True)


class TestSolveC:
    def test_roundtrip_float(self):
        rng = np.random.default_rng(5)
        params = HOParams(omega=1.4, p0=1.1)
        point = trajectory(params, 0.0)
        for _ in range(50):
            C = random_params(rng)
            mu0 = build_mu(C, params, point)
            C2 = solve_C(mu0, params.p0)
            assert np.allclose(C.as_tuple(), C2.as_tuple(), atol=1e-12)

    def test_roundtrip_exact_fractions(self):
        # p0 with perfect-square 2 p0 makes the whole loop exact
        p0 = Fraction(9, 2)
        r = _exact_sqrt(2 * p0)
        assert r == 3
        params = HOParams(omega=Fraction(1), p0=p0)
        point = PhasePoint(t=Fraction(0), q=Fraction(0), p=p0, Q=Fraction(0),
                           P=r, H=p0 * p0 / 2)
        C = OperadicParams(*[Fraction(k, 7) for k in range(1, 10)])
        mu0 = build_mu(C, params, point)
        C2 = solve_C(mu0, p0)
        assert C2.as_tuple() == C.as_tuple()
        mu1 = build_mu(C2, params, point)
        assert mu1 == mu0

    def test_rejects_non_antisymmetric(self):
        mu = [[[0] * 3 for _ in range(3)] for _ in range(3)]
        mu[0][0][0] = 1
        with pytest.raises(NotRepresentableError):
            solve_C(mu, 1.0)

    def test_rejects_bad_p0(self):
        mu = [[[0] * 3 for _ in range(3)] for _ in range(3)]
        with pytest.raises(ValueError):
            solve_C(mu, 0.0)

    def test_exact_sqrt_rejects_non_square(self):
        with pytest.raises(ValueError):
            _exact_sqrt(Fraction(3))


class TestOperadicLax:
    def test_analytic_matches_fd(self):
        rng = np.random.default_rng(7)
        params = HOParams(omega=0.9, p0=1.6)
        C = random_params(rng)
        for t in np.linspace(0.0, 6.0, 7):
            d_an = np.asarray(mu_time_derivative(C, params,
                                                 trajectory(params, float(t))),
                              dtype=float)
            dt = 1e-6
            mp = np.asarray(build_mu(C, params,
                                     trajectory(params, float(t) + dt)),
                            dtype=float)
            mm = np.asarray(build_mu(C, params,
                                     trajectory(params, float(t) - dt)),
                            dtype=float)
            assert np.max(np.abs(d_an - (mp - mm) / (2 * dt))) < 1e-6

    def test_lax_equation_analytic(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            params = HOParams(omega=float(rng.uniform(0.5, 2.0)),
                              p0=float(rng.uniform(0.5, 2.0)))
            C = random_params(rng)
            for t in rng.uniform(0.0, 10.0, size=5):
                rep = verify_operadic_lax(C, params, float(t))
                assert rep.passed and rep.tol == 1e-12, rep

    def test_lax_equation_fd(self):
        params = HOParams(omega=1.3, p0=0.8)
        C = OperadicParams(0.2, -1.0, 0.5, 0.1, 0.7, -0.3, 0.9, 0.4, -0.6)
        for t in np.linspace(0.0, 8.0, 9):
            rep = verify_operadic_lax(C, params, float(t), mode="fd")
            assert rep.passed and rep.tol == 1e-6, rep

    def test_bracket_matches_direct_contraction(self):
        # [M, mu]^i_jk = M^i_s mu^s_jk - mu^i_sk M^s_j - mu^i_js M^s_k
        rng = np.random.default_rng(11)
        params = HOParams(omega=1.1, p0=1.0)
        C = random_params(rng)
        mu = np.asarray(build_mu(C, params, trajectory(params, 1.3)),
                        dtype=float)
        M = build_M(params.omega)
        direct = (np.einsum("is,sjk->ijk", M, mu)
                  - np.einsum("isk,sj->ijk", mu, M)
                  - np.einsum("ijs,sk->ijk", mu, M))
        bracket = gerstenhaber(MultiOp(1, 3, M), MultiOp(2, 3, mu)).coeffs
        assert np.allclose(direct, bracket, atol=1e-14)

    def test_mode_domain(self):
        params = HOParams(omega=1.0, p0=1.0)
        C = OperadicParams(0, 1, 0, 0, 0, 0, 0, 0, 0)
        with pytest.raises(ValueError):
            verify_operadic_lax(C, params, 0.0, mode="exact")
        with pytest.raises(ValueError):
            verify_operadic_lax(C, params, 0.0, mode="fd", dt=-1.0)

    def test_multiop_shape(self):
        params = HOParams(omega=1.0, p0=1.0)
        C = OperadicParams(0, 1, 0, 0, 0, 0, 0, 0, 0)
        op = mu_multiop(build_mu(C, params, trajectory(params, 0.0)))
        assert op.degree == 2 and op.dim == 3
        assert op.coeffs.shape == (3, 3, 3)
