from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from apollonia.errors import DivergenceError, ValidationError
from apollonia.lattice import D2_BASE, D3_BASE, Quadruple, apply_word, bilinear, WeightPoint
from apollonia.packing import curvature_census, detect_symmetry, orbit_bfs
from apollonia.series import (DELTA, _w2_exponent, l_partial, theta_expansion_residual, w2_orbit, w2_word,
                              z1_of_t, z2_sum, z2_theta, z_partial)

from strategies import BASES, descartes_quadruples

GENERIC = Quadruple.of(-6, 11, 14, 15)


def _z_oracle(base, s, H):
    # BFS over the orbit; heights strictly grow outward, so stop once a layer exceeds H
    total, depth = 0.0, 0
    while True:
        recs = [r for r in orbit_bfs(base, depth=depth)]
        layer = [r for r in recs if r.depth == depth]
        if all(sum(r.quadruple) > H for r in layer):
            break
        depth += 1
    for r in recs:
        if sum(r.quadruple) <= H:
            total += math.exp(-float(bilinear(r.quadruple, WeightPoint(s))))
    return detect_symmetry(base).multiplicity * total


@pytest.mark.parametrize("base", BASES + [D3_BASE])
def test_z_partial_matches_bfs(base):
    s = (0.4, 0.5, 0.6, 0.7)
    H = 6 * float(sum(base)) + 40
    assert z_partial(base, s, H).value == pytest.approx(_z_oracle(base, s, H), rel=1e-12)


def test_z_partial_base_term_dominates():
    est = z_partial(D2_BASE, (5, 5, 5, 5), 400)
    assert est.value / (2 * math.exp(-30)) == pytest.approx(1, abs=1e-6)
    assert est.tail < 1e-12


def test_z_partial_errors():
    with pytest.raises(DivergenceError):
        z_partial(D2_BASE, (-1, 1, 1, 1), 100)
    with pytest.raises(DivergenceError):
        z_partial(D2_BASE, (0, 0, 1, 1), 100)
    with pytest.raises(ValidationError):
        z_partial(D2_BASE, (1, 1, 1, 1), 3)
    with pytest.raises(ValidationError):
        z_partial(Quadruple.of(1, 1, 1, 1), (1, 1, 1, 1), 100)


@given(descartes_quadruples(), st.integers(-20, 20))
def test_w2_closed_form(c, n):
    assert w2_orbit(c, n) == apply_word(w2_word(n), c)


points = st.tuples(*[st.floats(0.3, 2.0)] * 4)


@given(descartes_quadruples(), points, st.sampled_from("+-"))
def test_theta_expression(c, s, sign):
    if float(c[0] + c[1]) <= 0:
        return
    direct = z2_sum(c, sign, s, 50)
    closed = z2_theta(c, sign, s, 50)
    # double precision bound: the parity projection cancels against the largest
    # term of the full theta series, including integers outside the parity class
    Y, even, odd = _w2_exponent(c, s)
    largest = max(math.exp(Y * n * n + X * n + k) for X, k in (even, odd) for n in range(-60, 61))
    assert abs(direct.value - closed.value) <= 1e-12 * largest + direct.tail + closed.tail


def test_theta_residual_small():
    assert theta_expansion_residual(D2_BASE, (1, 1, 1, 1)) < 1e-15
    assert theta_expansion_residual(GENERIC, (0.5, 0.7, 1.1, 0.9), sign="-") < 1e-15


def test_w2_divergence():
    with pytest.raises(DivergenceError):
        z2_sum(Quadruple.of(-2, 1, 1, 1), "+", (1, 1, 1, 1))
    with pytest.raises(ValidationError):
        z2_sum(D2_BASE, "*", (1, 1, 1, 1))


def test_z1_against_census_sum():
    cen = curvature_census(D2_BASE, 400)
    est = z1_of_t(D2_BASE, 0.5, 100)
    ref = sum(math.exp(-0.5 * float(c)) for c in cen) - sum(math.exp(-0.5 * c) for c in D2_BASE)
    assert abs(est.value - ref) <= est.tail
    assert z1_of_t(D2_BASE, 0.5, 100, census=cen).value == est.value
    with pytest.raises(ValidationError):
        z1_of_t(D2_BASE, 0, 10)


def test_l_partial():
    cen = curvature_census(D2_BASE, 2000)
    a = l_partial(D2_BASE, 2.0, 500, cen)
    b = l_partial(D2_BASE, 2.0, 2000, cen)
    assert a.value < b.value
    assert b.value - a.value <= a.tail  # the power-law tail bounds the remaining mass here
    assert math.isinf(l_partial(D2_BASE, DELTA, 100, cen).tail)
    with pytest.raises(ValidationError):
        l_partial(D2_BASE, 2.0, 5000, cen)
    with pytest.raises(ValidationError):
        l_partial(D2_BASE, -1, 100)
