from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from apollonia import _backend, _fallback
from apollonia.cone import (LABELS, Label, apex_orbit, base_circles, classify, classify_many,
                            edge_tangency_check, in_bounded_cone, in_unbounded_cone,
                            lightcone_value, sample_section, section_point,
                            union_intersection_check)
from apollonia.errors import ValidationError
from apollonia.lattice import OMEGA, WeightPoint, apply_word, bilinear, reflect_weight

from strategies import int_weights, words


@pytest.mark.parametrize("s,label,word", [
    ((1, 1, 1, 1), Label.INTERIOR, ()),
    ((0, 1, 1, 1), Label.FACET, ()),
    ((0, 0, 1, 1), Label.TWO_SKELETON, ()),
    ((-1, -1, 5, 5), Label.DIVERGENT, ()),
    ((-1, 1, 1, 1), Label.DIVERGENT, (1,)),
    ((-1, 3, 3, 3), Label.INTERIOR, (1,)),
    ((1, 1, 1, -5), Label.DIVERGENT, ()),
])
def test_classify_examples(s, label, word):
    r = classify(s)
    assert r.label is label and r.word == word and r.iterations == len(word)


def test_classify_errors_and_budget():
    with pytest.raises(ValidationError):
        classify((0, 0, 0, 0))
    assert classify((-1, 3, 3, 3), max_iters=0).label is Label.UNDETERMINED


@given(int_weights(), words)
def test_label_is_w_invariant(s, w):
    assert classify(apply_word(w, s), 400).label is classify(s, 400).label


@given(int_weights())
def test_word_replays_to_final_point(s):
    r = classify(s, 400)
    assert r.label is not Label.UNDETERMINED  # exact integer heights drop by 4 per step
    assert apply_word(r.word, s) == r.point


@given(st.lists(st.floats(-2, 3, allow_nan=False), min_size=4, max_size=4))
def test_float_agrees_with_exact(v):
    exact_pt = WeightPoint([Fraction(x) for x in v])
    if sum(exact_pt) <= 0 or any(x == 0 for x in v):
        return
    a, b = classify(exact_pt, 200), classify(tuple(v), 200)
    if a.label in (Label.INTERIOR, Label.DIVERGENT) and a.iterations < 20:
        assert b.label is a.label


def test_reflection_preserves_lightcone_value():
    s = WeightPoint.of(3, -1, 2, 5)
    assert lightcone_value(reflect_weight(2, s)) == lightcone_value(s)


def _int_batch(n=400, seed=3):
    rng = np.random.default_rng(seed)
    pts = rng.integers(-20, 30, size=(3 * n, 4))
    return pts[pts.sum(axis=1) > 0][:n].astype(np.int64)


def test_batch_matches_scalar():
    pts = _int_batch()
    labels, iters, finals = classify_many(pts, 200)
    for row, lab, it, fin in zip(pts, labels, iters, finals):
        r = classify(tuple(int(x) for x in row), 200)
        assert LABELS[lab] is r.label and it == r.iterations
        assert tuple(fin) == tuple(r.point)


def test_backends_agree_on_batches():
    for pts in (_int_batch(), _int_batch().astype(float) + 0.25):
        a = _backend.kernels.classify_batch(pts, 100)
        b = _fallback.classify_batch(pts, 100)
        for x, y in zip(a, b):
            assert np.array_equal(x, y)


def test_thread_count_does_not_change_result(monkeypatch):
    pts = _int_batch(1000)
    one = classify_many(pts, 200)
    monkeypatch.setenv("APOLLONIA_THREADS", "4")
    four = classify_many(pts, 200)
    for x, y in zip(one, four):
        assert np.array_equal(x, y)


def test_batch_errors():
    with pytest.raises(ValidationError):
        classify_many(np.zeros((2, 3)))
    with pytest.raises(ValidationError):
        classify_many(np.zeros((2, 4), dtype=np.int64))


@pytest.mark.parametrize("L,apexes,simplices,edges", [(0, 4, 1, 6), (1, 8, 5, 18),
                                                      (2, 20, 17, 54), (3, 56, 53, 162)])
def test_scene_counts(L, apexes, simplices, edges):
    m = apex_orbit(L)
    assert (len(m.apexes), len(m.simplices), len(m.edges)) == (apexes, simplices, edges)
    assert len(m.circles) == apexes


def test_apexes_are_orbit_of_weights():
    m = apex_orbit(3)
    assert m.apexes[:4] == list(OMEGA)
    assert all(bilinear(p, p) == Fraction(1, 8) for p in m.apexes)
    for word, verts in m.simplices:
        assert [m.apexes[v] for v in verts] == [apply_word(word, w) for w in OMEGA]


def test_all_scene_edges_tangent():
    m = apex_orbit(3)
    for a, b in m.edges:
        t = edge_tangency_check(m.apexes[a], m.apexes[b])
        assert t.tangent and t.discriminant == 0
        x = WeightPoint(t.point)
        assert bilinear(x, x) == 0
        assert bilinear(m.apexes[a], x) == 0 and bilinear(m.apexes[b], x) == 0


def test_base_edge_tangency_point():
    t = edge_tangency_check(OMEGA[2], OMEGA[3])
    assert t.tangent and t.point == (0, 0, Fraction(1, 2), Fraction(1, 2))


def test_nonadjacent_apexes_cross_the_timelike_cone():
    p = OMEGA[0]
    q = reflect_weight(1, p)  # (-1, 2, 2, 2)
    t = edge_tangency_check(p, q)
    assert not t.tangent and t.discriminant == 48
    assert len(t.roots) == 2
    mid = [(1 - 0.5) * a + 0.5 * b for a, b in zip(p, q)]
    assert float(bilinear(WeightPoint(mid), WeightPoint(mid))) < 0


def test_float_tangency_uses_tolerance():
    p = [float(x) for x in OMEGA[2]]
    q = [float(x) for x in OMEGA[3]]
    assert edge_tangency_check(p, q).tangent


def test_base_circles_lie_on_sphere():
    for c in base_circles():
        center, r = c.center_radius()
        assert abs(r - 1 / np.sqrt(6)) < 1e-12
        for s in c.sample(32):
            assert abs(sum(s) - 1) < 1e-12
            assert abs(float(bilinear(WeightPoint(s), WeightPoint(s)))) < 1e-12
            assert abs(c.plane_value(s)) < 1e-12
            assert abs(np.linalg.norm(np.array(s) - 0.25) - 0.5) < 1e-12


def test_section_point():
    assert section_point((1, 1, 1, 1)) == (Fraction(1, 4),) * 4
    with pytest.raises(ValidationError):
        section_point((1, -2, 0, 0))


def test_cones():
    p = OMEGA[0]
    center = (0.25, 0.25, 0.25, 0.25)
    assert in_unbounded_cone(p, center)  # the apex sees the whole sphere through J
    assert not in_bounded_cone(p, center)
    for x in sample_section(200, seed=1):
        if in_bounded_cone(p, x):
            assert in_unbounded_cone(p, x)


def test_union_inside_intersection():
    r = union_intersection_check(sample_section(150, seed=5), L=2)
    assert r["passed"] and r["violations"] == []
    assert r["samples"] == 150 and 0 < r["agreement_rate"] <= 1
    with pytest.raises(ValidationError):
        union_intersection_check(sample_section(3), L=1)
