import math
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, strategies as st

from laguerre_mp.errors import DomainError
from laguerre_mp.lattice_paths import catalan, narayana
from laguerre_mp.marchenko_pastur import (
    density,
    f_c_minus,
    fixed_point_residual,
    g_p_minus,
    g_p_residual,
    generating_fn,
    generating_fn_radius,
    moment,
    moment_tilde,
    mp_law,
    quadrature_moment,
    scaling_relation_check,
    tilde_mp_law,
    tilde_quadrature_moment,
    zeta_threshold,
)

C_SET = [F(-1, 2), F(0), F(1), F(3)]


class TestLaw:
    def test_supports(self):
        law = mp_law(0)
        assert (law.x_minus, law.x_plus, law.atom) == (0.0, 4.0, 0.0)
        law = mp_law(3)
        assert (law.x_minus, law.x_plus, law.atom) == (1.0, 9.0, 0.0)
        law = mp_law(F(-1, 2))
        s = math.sqrt(0.5)
        assert law.atom == 0.5
        assert law.x_minus == pytest.approx((s - 1) ** 2) and law.x_plus == pytest.approx((s + 1) ** 2)

    def test_domain(self):
        with pytest.raises(DomainError):
            mp_law(-1)

    def test_density(self):
        assert density(0, 2) == pytest.approx(1 / (2 * math.pi))
        assert density(3, 10) == 0.0
        assert density(1, mp_law(1).x_minus) == 0.0

    def test_tilde_atom(self):
        assert tilde_mp_law(F(1, 2)).atom_weight == 0.0
        assert tilde_mp_law(2).atom_weight == 0.5


class TestMoments:
    def test_examples(self):
        for c in C_SET:
            assert moment(c, 1) == c + 1
        assert moment(0, 3) == 5
        assert moment(1, 2) == 6
        assert moment_tilde(F(7, 3), 1) == 1
        assert moment_tilde(2, 2) == 3
        for k in range(1, 9):
            assert moment_tilde(1, k) == catalan(k)

    def test_exact_type(self):
        assert isinstance(moment(F(1, 3), 4), F)
        assert isinstance(moment(0.5, 4), float)

    @given(st.fractions(min_value=F(-9, 10), max_value=10, max_denominator=50), st.integers(0, 8))
    def test_scaling_relation(self, c, k):
        assert scaling_relation_check(c, k) == 0

    def test_scaling_examples(self):
        assert scaling_relation_check(0, 5) == 0
        assert scaling_relation_check(1, 3) == 0
        assert scaling_relation_check(3, 2) == 0

    @pytest.mark.parametrize("c", C_SET)
    def test_narayana_form(self, c):
        for k in range(1, 9):
            assert moment(c, k) == sum(narayana(k, j) * (c + 1) ** (k - j + 1) for j in range(1, k + 1))


class TestQuadrature:
    def test_examples(self):
        assert abs(quadrature_moment(1, 0) - 1) <= 1e-8
        assert abs(quadrature_moment(0, 3) - 5) <= 1e-8
        assert abs(quadrature_moment(F(-1, 2), 0) - 1) <= 1e-8

    def test_continuous_mass_is_one_plus_c(self):
        # the continuous part alone carries mass 1 + c for negative c
        for c in [F(-1, 2), F(-1, 4), F(-9, 10)]:
            total = quadrature_moment(c, 0)
            assert abs((total - mp_law(c).atom) - float(1 + c)) <= 1e-10

    def test_independent_integration(self):
        # plain mpmath.quad on the density with endpoint splitting
        c, k = 1, 3
        law = mp_law(c)
        with mpmath.workdps(30):
            val = mpmath.quad(lambda x: x**k * mpmath.sqrt((law.x_plus - x) * (x - law.x_minus))
                              / (2 * mpmath.pi * x), [law.x_minus, 3, law.x_plus])
        assert abs(float(val) - quadrature_moment(c, k)) <= 1e-8

    @pytest.mark.parametrize("c", C_SET)
    def test_matches_closed_form(self, c):
        for k in range(0, 9):
            assert abs(float(moment(c, k)) - quadrature_moment(c, k)) <= 1e-8

    def test_tilde(self):
        for a in [F(1, 2), F(2)]:
            for k in range(0, 6):
                assert abs(float(moment_tilde(a, k)) - tilde_quadrature_moment(a, k)) <= 1e-8


class TestGeneratingFunction:
    def test_examples(self):
        assert generating_fn(1, 0) == 1.0
        z = 0.2
        assert generating_fn(0, z) == pytest.approx((1 - math.sqrt(1 - 4 * z)) / (2 * z), rel=1e-14)

    @pytest.mark.parametrize("c", [0, 1])
    def test_truncated_series(self, c):
        zmax = 0.5 / (math.sqrt(c + 1) + 1) ** 2
        moms = [float(moment(c, k)) for k in range(41)]
        for i in range(101):
            z = zmax * i / 100
            series = math.fsum(m * z**k for k, m in enumerate(moms))
            assert abs(generating_fn(c, z) - series) <= 1e-10

    def test_domain(self):
        with pytest.raises(DomainError):
            generating_fn(0, generating_fn_radius(0))

    @pytest.mark.parametrize("c", [F(-1, 2), 0, 1, 3])
    def test_fixed_point(self, c):
        r = generating_fn_radius(c)
        for i in range(100):
            z = 0.99 * r * i / 100
            xi = f_c_minus(c, z)
            assert abs(fixed_point_residual(c, z, xi)) <= 1e-12
            assert abs(generating_fn(c, z) - ((float(c) + 1) * z * xi + 1)) <= 1e-12

    def test_fixed_point_examples(self):
        assert f_c_minus(2, 0) == 1.0
        assert fixed_point_residual(3, 0, 1) == 0
        assert fixed_point_residual(1, 0.05, 0) == -1
        assert abs(fixed_point_residual(0, 0.1, f_c_minus(0, 0.1))) <= 1e-12

    def test_small_z_stable(self):
        # no cancellation near zero: f(z) = 1 + (c+2) z + O(z^2)
        z = 1e-12
        assert f_c_minus(1, z) == pytest.approx(1 + 3 * z, rel=1e-15)


class TestThreshold:
    def test_examples(self):
        for a in [0, 1, F(5, 2)]:
            assert zeta_threshold(1, a) == pytest.approx(1 / (float(a) + 1))
        assert zeta_threshold(2, 0) == pytest.approx(0.4)

    def test_converges_to_limit(self):
        limit = 1 / (math.sqrt(2) + 1) ** 2
        gaps = [abs(zeta_threshold(p, p) - limit) for p in (10, 100, 1000, 10000)]
        assert gaps == sorted(gaps, reverse=True)
        assert gaps[-1] < 1e-4

    def test_g_examples(self):
        for a in [0, 2]:
            for z in [0.0, 0.1, 0.2]:
                assert g_p_minus(1, a, z) == pytest.approx(1 / (1 - z * (a + 1)), rel=1e-12)
        assert g_p_minus(7, 3, 0) == 1.0
        assert abs(g_p_residual(5, 5, 0.02, g_p_minus(5, 5, 0.02))) <= 1e-12

    def test_g_monotone_in_p(self):
        for alpha in [0, 3]:
            for p in [2, 5, 20, 100, 200]:
                zeta = zeta_threshold(p, alpha)
                for i in range(20):
                    z = 0.9 * zeta * i / 20
                    assert g_p_minus(p - 1, alpha, z * (p - 1) / p) <= g_p_minus(p, alpha, z) + 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            g_p_minus(2, 0, 0.4)
        with pytest.raises(DomainError):
            zeta_threshold(3, -1)
