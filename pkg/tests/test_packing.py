from __future__ import annotations

import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from apollonia import _fallback
from apollonia.errors import UnsupportedPackingError, ValidationError
from apollonia.lattice import D2_BASE, D3_BASE, Quadruple, apply_word, descartes_defect
from apollonia.packing import (CurvatureCensus, Symmetry, curvature_census, detect_symmetry,
                               fit_delta, orbit_bfs)

from strategies import BASES

GENERIC = Quadruple.of(-6, 11, 14, 15)


def test_depth_one_records():
    recs = list(orbit_bfs(D2_BASE, depth=1))
    assert [r.quadruple for r in recs] == [D2_BASE, Quadruple.of(15, 2, 2, 3),
                                           Quadruple.of(-1, 6, 2, 3), Quadruple.of(-1, 2, 6, 3)]
    assert [r.word for r in recs] == [(), (1,), (2,), (3,)]


def test_d2_depth_two_has_thirteen_rows():
    assert len(list(orbit_bfs(D2_BASE, depth=2))) == 13


@pytest.mark.parametrize("depth", range(0, 7))
def test_generic_depth_counts(depth):
    counts = Counter(r.depth for r in orbit_bfs(GENERIC, depth=depth))
    assert counts[0] == 1
    for l in range(1, depth + 1):
        assert counts[l] == 4 * 3 ** (l - 1)


def test_records_replay_their_words():
    for r in orbit_bfs(GENERIC, depth=4):
        assert apply_word(r.word, GENERIC) == r.quadruple
        assert len(r.word) == r.depth
        assert descartes_defect(r.quadruple) == 0


def _bfs_unpruned(base, X):
    # oracle: plain depth-bounded BFS filtered by the three smallest entries.  The
    # third-smallest entry never decreases along outward moves, so once a whole
    # layer sits at or above X nothing deeper can qualify.
    depth = 1
    while True:
        recs = list(orbit_bfs(base, depth=depth))
        if all(sorted(r.quadruple)[2] >= X for r in recs if r.depth == depth):
            return {r.quadruple for r in recs if sorted(r.quadruple)[2] < X}
        depth += 1


@pytest.mark.parametrize("base", BASES)
def test_curvature_pruning_matches_unpruned(base):
    X = 30
    got = {r.quadruple for r in orbit_bfs(base, max_curv=X)}
    assert got == _bfs_unpruned(base, X)


def test_orbit_bfs_argument_errors():
    with pytest.raises(ValidationError):
        list(orbit_bfs(D2_BASE))
    with pytest.raises(ValidationError):
        list(orbit_bfs(D2_BASE, depth=1, max_curv=10))
    with pytest.raises(ValidationError, match="defect"):
        list(orbit_bfs(Quadruple.of(1, 1, 1, 1), depth=1))
    with pytest.raises(ValidationError, match="reduce_to_base"):
        list(orbit_bfs(Quadruple.of(-3, 5, 8, 12), depth=1))


def test_symmetry_detection():
    assert detect_symmetry(D2_BASE).symmetry is Symmetry.D2
    assert detect_symmetry(Quadruple.of(3, 2, -1, 2)).multiplicity == 2
    assert detect_symmetry(D3_BASE).symmetry is Symmetry.D3
    assert detect_symmetry(GENERIC).symmetry is Symmetry.GENERIC


def test_census_small_examples():
    assert list(curvature_census(D2_BASE, 7)) == [-1, 2, 2, 3, 3, 6, 6, 6, 6]
    assert list(curvature_census(D2_BASE, 7, "quadruples")) == [-1, 2, 2, 3, 6, 6]
    assert list(curvature_census(D2_BASE, 3)) == [-1, 2, 2]
    assert curvature_census(D2_BASE, 7).histogram() == [(-1, 1), (2, 2), (3, 2), (6, 4)]


def _census_oracle(base, X, mult):
    vals = list(base) + ([max(base)] if mult == 2 else [])
    for r in orbit_bfs(base, max_curv=X):
        if r.depth and max(r.quadruple) < X:
            vals += [max(r.quadruple)] * mult
    return sorted(v for v in vals if v < X)


@pytest.mark.parametrize("base", BASES)
def test_census_matches_bfs_oracle(base):
    mult = detect_symmetry(base).multiplicity
    assert list(curvature_census(base, 500)) == _census_oracle(base, 500, mult)


def test_census_reduces_nonbase_input():
    a = curvature_census(Quadruple.of(-3, 5, 8, 12), 200)
    b = curvature_census(Quadruple.of(-3, 5, 8, 8), 200)
    assert list(a) == list(b)


def test_census_count_is_strict():
    cen = curvature_census(D2_BASE, 100)
    assert cen.count(6) == 5 and cen.count(6.5) == 9
    assert list(cen.restrict(7)) == [-1, 2, 2, 3, 3, 6, 6, 6, 6]


def test_census_errors():
    with pytest.raises(UnsupportedPackingError):
        curvature_census(Quadruple.of(0, 0, 1, 1), 10)
    with pytest.raises(ValidationError):
        curvature_census(D2_BASE, 10, "circles")


def test_irrational_base_census_is_exact():
    cen = curvature_census(D3_BASE, 20)
    assert all(descartes_defect(r.quadruple) == 0 for r in orbit_bfs(D3_BASE, max_curv=20))
    assert list(cen) == _census_oracle(D3_BASE, 20, 1)
    assert len(cen) > 20


@given(st.sampled_from(BASES), st.integers(5, 3000))
def test_kernel_backends_agree(base, X):
    from apollonia import _backend
    got = np.sort(_backend.kernels.census_maxima(tuple(base), X))
    ref = np.sort(_fallback.census_maxima(tuple(base), X))
    assert np.array_equal(got, ref)


def test_fit_delta():
    cen = curvature_census(D2_BASE, 10 ** 4)
    slope, table = fit_delta(cen, 10 ** 2, 10 ** 4, 9)
    assert 1.2 < slope < 1.4
    assert len(table) == 9 and table[0][1] == cen.count(100)
    with pytest.raises(ValidationError):
        fit_delta(cen, 100, 5000)
    with pytest.raises(ValidationError):
        fit_delta(cen, 100, 10 ** 5)


def test_from_values():
    c = CurvatureCensus.from_values([5, 1, 3], bound=4)
    assert list(c) == [1, 3] and c.count(2) == 1
    assert math.isinf(CurvatureCensus.from_values([1]).bound)
