"""Packings as Weyl orbits: enumeration, curvature census, growth exponent.

A bounded packing is the orbit of its base quadruple under sigma_1..sigma_4.
Away from the base every quadruple has exactly one entry larger than the
sum of the other three; reflecting that entry is the unique move back
towards the base, so the orbit (as a set of ordered vectors) is a tree
rooted at the base.  A reflection away from the base replaces c_j by
2*(sum of others) - c_j, which exceeds every entry of the parent.  This
monotonicity justifies all the frontier pruning below.
"""
from __future__ import annotations

import bisect
import math
from collections import deque
from enum import Enum
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from . import _backend
from .errors import UnsupportedPackingError, ValidationError
from .exact import sign
from .lattice import (D2_BASE, D3_BASE, Quadruple, Word, descartes_defect,
                      is_reduced, reduce_to_base, reflect_root)


class OrbitRecord(NamedTuple):
    quadruple: Quadruple
    word: Word
    depth: int


class Symmetry(str, Enum):
    GENERIC = "Generic"
    D2 = "D2"
    D3 = "D3"


class PackingModel(NamedTuple):
    base: Quadruple
    symmetry: Symmetry
    multiplicity: int


def _proportional(u: Sequence, v: Sequence) -> bool:
    """u = lambda * v for some lambda > 0 (exact)."""
    for i in range(4):
        for j in range(i + 1, 4):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return sign(sum(a * b for a, b in zip(u, v))) > 0


def detect_symmetry(base: Quadruple) -> PackingModel:
    """Classify the base by its symmetry; entry order is irrelevant.

    >>> detect_symmetry(Quadruple.of(-2, 4, 4, 6)).symmetry.value
    'D2'
    """
    ordered = sorted(base)
    if _proportional(ordered, sorted(D2_BASE)):
        return PackingModel(base, Symmetry.D2, 2)
    if _proportional(ordered, sorted(D3_BASE)):
        return PackingModel(base, Symmetry.D3, 1)
    return PackingModel(base, Symmetry.GENERIC, 1)


def _check_base(base: Quadruple) -> None:
    d = descartes_defect(base)
    if d != 0:
        raise ValidationError(f"base {base} has Descartes defect {d}, expected 0")
    if not is_reduced(base):
        raise ValidationError(
            f"base {base} is not height-minimal; call reduce_to_base first")


def orbit_bfs(base: Quadruple, depth: int | None = None,
              max_curv=None) -> Iterator[OrbitRecord]:
    """Breadth-first walk of the orbit, each distinct vector exactly once.

    Give either a depth bound or a curvature bound X.  With X, exactly the
    quadruples whose three smallest entries are < X are emitted: a child
    keeps three entries of its parent and gains a new strict maximum, so a
    quadruple is worth expanding only when its own maximum is < X.
    Children are generated in the order sigma_1..sigma_4 from a FIFO queue.
    """
    if (depth is None) == (max_curv is None):
        raise ValidationError("give exactly one of depth or max_curv")
    if depth is not None and depth < 0:
        raise ValidationError(f"depth must be nonnegative, got {depth}")
    base = Quadruple(base)
    _check_base(base)
    seen = {base}
    queue: deque[OrbitRecord] = deque([OrbitRecord(base, (), 0)])
    if max_curv is not None and sorted(base)[2] >= max_curv:
        return
    while queue:
        rec = queue.popleft()
        yield rec
        if depth is not None and rec.depth >= depth:
            continue
        if max_curv is not None and max(rec.quadruple) >= max_curv:
            continue
        last = rec.word[-1] if rec.word else None
        for i in (1, 2, 3, 4):
            if i == last:
                continue
            child = reflect_root(i, rec.quadruple)
            # only the first move back is height-reducing, so everything else
            # here is a new outward vector or a fixed point caught by `seen`
            if child in seen:
                continue
            seen.add(child)
            queue.append(OrbitRecord(child, rec.word + (i,), rec.depth + 1))


def _maxima_exact(base: Quadruple, bound) -> list:
    """Generic-scalar twin of the integer census kernel."""
    out = []
    stack = [(tuple(base), -1)]
    while stack:
        q, last = stack.pop()
        t = sum(q)
        for j in range(4):
            if j == last or q[j] >= t - q[j]:
                continue
            v = 2 * (t - q[j]) - q[j]
            if v < bound:
                out.append(v)
                child = list(q)
                child[j] = v
                stack.append((tuple(child), j))
    return out


class CurvatureCensus:
    """Sorted multiset of circle curvatures below a bound, with N(X).

    ``convention="geometric"`` counts every circle of the packing once.  In
    a D2 packing each ordered non-base quadruple occurs for two mirror-image
    circle configurations, and the base has a second copy of its largest
    circle.  ``convention="quadruples"`` instead takes one maximum per
    distinct ordered vector plus the four base curvatures.
    """

    def __init__(self, curvatures: Sequence, bound, convention: str = "geometric",
                 model: PackingModel | None = None) -> None:
        self.curvatures = curvatures
        self.bound = bound
        self.convention = convention
        self.model = model

    @classmethod
    def from_values(cls, values: Sequence, bound=None) -> CurvatureCensus:
        vals = sorted(values)
        if bound is None:
            bound = float("inf")
        return cls([v for v in vals if v < bound], bound, "explicit")

    def count(self, x) -> int:
        """N(x) = number of curvatures strictly below x."""
        if isinstance(self.curvatures, np.ndarray):
            return int(np.searchsorted(self.curvatures, x, side="left"))
        return bisect.bisect_left(self.curvatures, x)

    def restrict(self, x) -> CurvatureCensus:
        k = self.count(x)
        return CurvatureCensus(self.curvatures[:k], x, self.convention, self.model)

    def __len__(self) -> int:
        return len(self.curvatures)

    def __iter__(self):
        return iter(self.curvatures)

    def histogram(self) -> list[tuple]:
        """(curvature, count) pairs in increasing order."""
        if isinstance(self.curvatures, np.ndarray):
            vals, counts = np.unique(self.curvatures, return_counts=True)
            return list(zip(vals.tolist(), counts.tolist()))
        out: list[list] = []
        for c in self.curvatures:
            if out and out[-1][0] == c:
                out[-1][1] += 1
            else:
                out.append([c.item() if isinstance(c, np.generic) else c, 1])
        return [tuple(p) for p in out]


def curvature_census(base: Quadruple, X, convention: str = "geometric") -> CurvatureCensus:
    """All circle curvatures c < X of the packing generated by ``base``.

    Non-reduced bases are reduced first.
    """
    if convention not in ("geometric", "quadruples"):
        raise ValidationError(f"unknown census convention {convention!r}")
    base = Quadruple(base)
    if sum(1 for c in base if c == 0) >= 2:
        raise UnsupportedPackingError(f"{base} generates an unbounded (strip) packing")
    base, _ = reduce_to_base(base)
    model = detect_symmetry(base)
    mult = model.multiplicity if convention == "geometric" else 1
    base_circles = list(base)
    if mult == 2:
        base_circles.append(max(base))
    if base.is_integral:
        # integers below X are exactly the integers below ceil(X)
        maxima = _backend.census_maxima(tuple(base), math.ceil(X))
        if mult == 2:
            maxima = np.repeat(maxima, 2)
        extra = np.array([c for c in base_circles if c < X], dtype=np.int64)
        values = np.sort(np.concatenate([maxima, extra]), kind="stable")
        return CurvatureCensus(values, X, convention, model)
    maxima = _maxima_exact(base, X)
    values = [c for c in base_circles if c < X] + maxima * mult
    return CurvatureCensus(sorted(values), X, convention, model)


def fit_delta(census: CurvatureCensus, xmin, xmax, points: int = 25) -> tuple[float, list]:
    """Least-squares slope of log N(X) against log X on log-spaced samples.

    Returns the slope and the (X, N(X)) sample table.
    """
    if not 0 < xmin < xmax:
        raise ValidationError(f"need 0 < xmin < xmax, got {xmin}, {xmax}")
    if xmax / xmin < 100:
        raise ValidationError("fit window must span at least a factor of 100")
    if xmax > census.bound:
        raise ValidationError(f"census only complete below {census.bound}, asked for {xmax}")
    xs = np.geomspace(xmin, xmax, points)
    ns = np.array([census.count(x) for x in xs], dtype=float)
    if ns[0] <= 0:
        raise ValidationError("empty census window")
    slope, _ = np.polyfit(np.log(xs), np.log(ns), 1)
    return float(slope), [(float(x), int(n)) for x, n in zip(xs, ns)]
