from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from apollonia.errors import ArithmeticDomainError, ValidationError
from apollonia.formal import NLMBox
from apollonia.lattice import Quadruple, bilinear, nlm_to_root
from apollonia.modular import (delta5_coeff, discriminant, fourier_coefficient, g_table,
                               g_table_eta_theta, is_antidominant, m_alpha, nlm_reflect,
                               theta_eval, verify_theorem_delta, z3_formal)

odd = st.integers(-7, 7).map(lambda k: 2 * k + 1)


@pytest.mark.parametrize("variant,index,factor", [("00", 3, 1), ("01", 4, 1), ("11", 1, 1j)])
@pytest.mark.parametrize("z,t", [(0, 1.0), (0.3 + 0.1j, 0.8), (-0.45, 0.35), (0.1j, 2.5)])
def test_theta_against_mpmath(variant, index, factor, z, t):
    q = mpmath.exp(-mpmath.pi * t)
    ref = complex(factor * mpmath.jtheta(index, mpmath.pi * z, q))
    got = complex(theta_eval(variant, z, t, 50).value)
    assert abs(got - ref) < 1e-13


def test_theta_special_values():
    assert theta_eval("00", 0, 1.0).value == pytest.approx(math.pi ** 0.25 / math.gamma(0.75), abs=1e-15)
    assert abs(theta_eval("11", 0, 1.0).value) < 1e-15


@given(st.floats(-0.5, 0.5), st.floats(-0.3, 0.3), st.floats(0.2, 3), st.integers(2, 6))
def test_theta_tail_bound_holds(x, y, t, terms):
    z = complex(x, y)
    for v in ("00", "01", "11"):
        short = theta_eval(v, z, t, terms)
        long = theta_eval(v, z, t, 60)
        assert abs(complex(short.value) - complex(long.value)) <= short.tail * (1 + 1e-9) + 1e-14


def test_theta_errors():
    with pytest.raises(ValidationError):
        theta_eval("10", 0, 1)
    with pytest.raises(ValidationError):
        theta_eval("00", 0, -1)


@pytest.mark.parametrize("K", [5, 21, 49, 81])
def test_g_table_two_routes(K):
    assert g_table(K).values == g_table_eta_theta(K).values


def test_g_table_domain():
    t = g_table(21)
    assert t(1, 1) == 1
    with pytest.raises(ArithmeticDomainError):
        t(23, 1)


@pytest.mark.parametrize("nlm,value", [((1, 1, 1), 1), ((3, 1, 3), -90), ((3, -1, 3), 90),
                                       ((3, 1, 5), -99), ((5, 1, 3), -99)])
def test_known_coefficients(nlm, value):
    assert delta5_coeff(*nlm) == value


@pytest.mark.parametrize("nlm", [(2, 1, 1), (1, 2, 1), (-1, 1, 1), (1, 1, -1), (1, 3, 1), (1, 5, 1)])
def test_coefficient_domain(nlm):
    with pytest.raises(ArithmeticDomainError):
        delta5_coeff(*nlm)


def test_coefficient_table_bound():
    with pytest.raises(ArithmeticDomainError):
        delta5_coeff(7, 1, 7, table=g_table(21))


TABLE = g_table(225)


@given(st.integers(0, 6).map(lambda k: 2 * k + 1), odd, st.integers(0, 6).map(lambda k: 2 * k + 1))
def test_symmetry_and_alternation(n, l, m):
    f = fourier_coefficient(n, l, m, TABLE)
    assert fourier_coefficient(m, l, n, TABLE) == f
    for i in (2, 3, 4):
        y = nlm_reflect(i, (n, l, m))
        assert discriminant(y) == discriminant((n, l, m))
        if y[0] > 0 and y[2] > 0 and y[0] * y[2] <= TABLE.K:
            assert fourier_coefficient(*y, table=TABLE) == -f


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.sampled_from([2, 3, 4]))
def test_nlm_reflection_is_the_root_reflection(n, l, m, i):
    # the triple action is sigma_i on the corresponding rank-3 root vector
    from apollonia.lattice import pairing_nlm, reflect_root
    x = (n, l, m)
    assert nlm_reflect(i, nlm_reflect(i, x)) == x
    assert pairing_nlm(reflect_root(i, nlm_to_root(x))) == nlm_reflect(i, x)


def test_z3_orbit_signs():
    box = NLMBox(15, 15, 50)
    s = z3_formal("-", Quadruple.of(0, 0, 0, 0), box)
    assert s[(1, 1, 1)] == 1 and s[(3, 3, 1)] == -1 and s[(1, -1, 1)] == -1
    plus = z3_formal("+", Quadruple.of(0, 0, 0, 0), box)
    assert set(plus.terms()) == set(s.terms()) and set(plus.terms().values()) == {1}
    with pytest.raises(ValidationError):
        z3_formal("-", Quadruple.of(0, 1, 0, 0), box)  # rho + alpha_2 is not antidominant


def test_m_alpha():
    assert m_alpha(Quadruple.of(0, 0, 0, 0)) == 0
    # rho + alpha pairs to (3, 1, 3) for alpha = (0, 1, 1, 2)
    assert nlm_to_root((3, 1, 3)) == Quadruple.of(0, Fraction(3, 2), Fraction(3, 2), Fraction(5, 2))
    assert m_alpha(Quadruple.of(0, 1, 1, 2)) == 90
    assert m_alpha(Quadruple.of(0, 1, 1, 1)) == -fourier_coefficient(3, 3, 3)
    assert is_antidominant((3, 1, 3)) and not is_antidominant((3, 3, 1))


def test_imaginary_root_norm():
    # isotropic exponents carry coefficient -9 in the quotient series
    assert bilinear(Quadruple.of(0, 0, 1, 1), Quadruple.of(0, 0, 1, 1)) == 0


def test_verify_small_box():
    r = verify_theorem_delta(box_b=20, box_nm=7, quotient_degree=6)
    assert r["passed"]
    assert r["alternation"]["checked"] > 0 and r["identity"]["checked"] > 0
    assert r["conventions"]["m_of_zero"] == 0
    norms = {tuple(t["beta"]): t for t in r["quotient"]["terms"]}
    assert norms[(0, 1, 1)]["coeff"] == -9 and norms[(0, 1, 1)]["norm"] == 0
    with pytest.raises(ValidationError):
        verify_theorem_delta(box_b=2, box_nm=5)
