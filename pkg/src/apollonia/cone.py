"""Tits-cone membership and light-cone geometry in weight coordinates.

Points s live in weight coordinates and are read projectively through the
affine section s1 + s2 + s3 + s4 = 1.  There the light cone N is the round
sphere of radius 1/2 about (1/4, 1/4, 1/4, 1/4), J is its interior, and the
fundamental weights omega_i are apexes of the cones tangent to N along the
four base circles.
"""
from __future__ import annotations

import math
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from . import _backend
from .errors import ValidationError
from .exact import exact, is_exact, sign
from .lattice import OMEGA, WeightPoint, Word, apply_word, bilinear

SECTION_CENTER = (0.25, 0.25, 0.25, 0.25)
SPHERE_RADIUS = 0.5
TOL = 1e-9


class Label(str, Enum):
    INTERIOR = "Interior"
    FACET = "Facet"
    TWO_SKELETON = "TwoSkeleton"
    DIVERGENT = "Divergent"
    UNDETERMINED = "BoundaryUndetermined"


# kernel label codes, in this order
LABELS = (Label.INTERIOR, Label.FACET, Label.TWO_SKELETON, Label.DIVERGENT, Label.UNDETERMINED)


class ConeClassification(NamedTuple):
    label: Label
    word: Word
    iterations: int
    point: WeightPoint


def lightcone_value(s: Sequence):
    """(s, s) = (2 sum s_i^2 - (sum s_i)^2) / 8: negative in J, zero on N.

    >>> lightcone_value((1, 1, 1, 1))
    -1
    """
    return bilinear(_as_weight(s), _as_weight(s))


def _as_weight(s) -> WeightPoint:
    return s if isinstance(s, WeightPoint) else WeightPoint(s)


def _normalize(s: WeightPoint) -> WeightPoint:
    # projective scaling only for floats; exact inputs keep exact coordinates
    if s.is_exact:
        return s
    h = sum(s)
    return WeightPoint(tuple(float(x) / h for x in s)) if h > 0 else s


def classify(s: Sequence, max_iters: int = 64) -> ConeClassification:
    """Locate s relative to the Apollonian cone by height-decreasing reflections.

    A point with exactly one negative coordinate has a unique reflection that
    lowers its height (by 4|s_i|), and membership is W-invariant, so we
    reflect until the sign pattern decides.  Reaching ``max_iters`` means
    the point is (numerically) on the boundary set where this never stops.
    """
    s = _as_weight(s)
    if all(x == 0 for x in s):
        raise ValidationError("the zero vector has no cone classification")
    if max_iters < 0:
        raise ValidationError("max_iters must be nonnegative")
    p = _normalize(s)
    word: list[int] = []
    for it in range(max_iters + 1):
        if sign(sum(p)) < 0:
            return ConeClassification(Label.DIVERGENT, tuple(word), it, p)
        signs = [sign(x) for x in p]
        neg = signs.count(-1)
        zero = signs.count(0)
        if neg >= 2 or (neg == 1 and zero >= 1):
            return ConeClassification(Label.DIVERGENT, tuple(word), it, p)
        if neg == 0:
            label = Label.TWO_SKELETON if zero >= 2 else Label.FACET if zero == 1 else Label.INTERIOR
            return ConeClassification(label, tuple(word), it, p)
        if it == max_iters:
            break
        k = signs.index(-1) + 1
        p = apply_word((k,), p)
        word.append(k)
    return ConeClassification(Label.UNDETERMINED, tuple(word), max_iters, p)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("APOLLONIA_THREADS", "1")))
    except ValueError:
        return 1


def classify_many(points, max_iters: int = 64):
    """Batch classification of an (n, 4) array; labels, iterations, final points.

    Integer arrays are classified exactly; float rows are used as given.
    ``APOLLONIA_THREADS`` splits the batch into contiguous chunks, so the
    result never depends on scheduling.
    """
    pts = np.asarray(points)
    if pts.ndim != 2 or pts.shape[1] != 4:
        raise ValidationError("points must have shape (n, 4)")
    if pts.dtype.kind not in "iu":
        pts = pts.astype(np.float64)
    else:
        pts = pts.astype(np.int64)
    if np.any(np.all(pts == 0, axis=1)):
        raise ValidationError("the zero vector has no cone classification")
    n_threads = _threads()
    if n_threads == 1 or len(pts) < 2 * n_threads:
        return _backend.classify_batch(pts, max_iters)
    chunks = np.array_split(pts, n_threads)
    with ThreadPoolExecutor(n_threads) as pool:
        parts = list(pool.map(lambda c: _backend.classify_batch(c, max_iters), chunks))
    return tuple(np.concatenate([p[i] for p in parts]) for i in range(3))


# -- circles, apexes and the simplex orbit ------------------------------------


def helmert_coordinates(s: Sequence[float]) -> tuple[float, float, float]:
    """Orthonormal 3-D coordinates of a section point, centered at the sphere center."""
    x = [float(v) - 0.25 for v in s]
    return ((x[0] - x[1]) / math.sqrt(2),
            (x[0] + x[1] - 2 * x[2]) / math.sqrt(6),
            (x[0] + x[1] + x[2] - 3 * x[3]) / math.sqrt(12))


def section_point(s: Sequence):
    """Scale to height 1, exactly when possible."""
    h = sum(s)
    if sign(h) <= 0:
        raise ValidationError(f"{tuple(s)} has nonpositive height; not in the affine section")
    if all(is_exact(x) for x in s):
        return tuple(exact(Fraction(x, h) if isinstance(x, int) and isinstance(h, int) else x / h)
                     for x in s)
    return tuple(float(x) / float(h) for x in s)


class Circle(NamedTuple):
    """A circle of the packing on N, stored by its apex (polar plane (apex, s) = 0)."""

    apex: WeightPoint

    def plane_value(self, s: Sequence):
        """(apex, s); zero exactly on the plane of the circle."""
        return bilinear(self.apex, _as_weight(s))

    def center_radius(self) -> tuple[tuple[float, ...], float]:
        """Center (in the 4-D section) and Euclidean radius."""
        p = [float(v) for v in self.apex]
        mean = sum(p) / 4
        nvec = [v - mean for v in p]
        nn = sum(v * v for v in nvec)
        center = tuple(0.25 + mean / nn * v for v in nvec)
        r2 = 0.25 - mean * mean / nn
        return center, math.sqrt(max(r2, 0.0))

    def normal(self) -> tuple[float, ...]:
        p = [float(v) for v in self.apex]
        mean = sum(p) / 4
        nvec = [v - mean for v in p]
        norm = math.sqrt(sum(v * v for v in nvec))
        return tuple(v / norm for v in nvec)

    def sample(self, k: int) -> list[tuple[float, ...]]:
        """k evenly spaced points on the circle."""
        center, r = self.center_radius()
        u, v = _plane_frame(self.normal())
        return [tuple(c + r * (math.cos(th) * a + math.sin(th) * b)
                      for c, a, b in zip(center, u, v))
                for th in (2 * math.pi * j / k for j in range(k))]


def _plane_frame(normal: Sequence[float]):
    """Orthonormal u, v spanning the directions orthogonal to (1,1,1,1) and ``normal``."""
    basis = [np.array(normal, dtype=float), np.full(4, 0.5)]
    out = []
    for e in np.eye(4):
        v = e.copy()
        for b in basis + out:
            v -= np.dot(v, b) * b
        if np.linalg.norm(v) > 1e-8:
            out.append(v / np.linalg.norm(v))
        if len(out) == 2:
            break
    return tuple(out[0]), tuple(out[1])


def base_circles() -> list[Circle]:
    """The four mutually tangent circles N ∩ {sum s_j - 2 s_i = 0}."""
    return [Circle(w) for w in OMEGA]


class SceneModel(NamedTuple):
    depth: int
    apexes: list            # exact WeightPoints in BFS order of discovery
    apex_depth: list
    simplices: list         # (word, 4 apex indices), BFS order
    edges: list             # sorted index pairs in discovery order

    @property
    def circles(self) -> list[Circle]:
        return [Circle(p) for p in self.apexes]


def apex_orbit(L: int) -> SceneModel:
    """Simplices w(C-bar) for reduced words of length <= L and their apexes.

    The neighbour of w(C-bar) across the face opposite w(omega_j) is
    w sigma_j(C-bar), whose new vertex is w(sigma_j omega_j); in application
    order sigma_j is applied first, so the child word is (j,) + word.
    """
    if L < 0:
        raise ValidationError("depth must be nonnegative")
    apexes: list = []
    apex_depth: list[int] = []
    index: dict = {}

    def vertex(p, d):
        key = tuple(p)
        if key not in index:
            index[key] = len(apexes)
            apexes.append(p)
            apex_depth.append(d)
        return index[key]

    simplices = []
    edges: list[tuple[int, int]] = []
    edge_set: set = set()
    queue = deque([((), 0)])
    while queue:
        word, d = queue.popleft()
        verts = tuple(vertex(apply_word(word, w), d) for w in OMEGA)
        simplices.append((word, verts))
        for a in range(4):
            for b in range(a + 1, 4):
                e = tuple(sorted((verts[a], verts[b])))
                if e not in edge_set:
                    edge_set.add(e)
                    edges.append(e)
        if d < L:
            first = word[0] if word else None
            for j in (1, 2, 3, 4):
                if j != first:
                    queue.append(((j,) + word, d + 1))
    return SceneModel(L, apexes, apex_depth, simplices, edges)


# -- tangency and the cone-union check ----------------------------------------


class Tangency(NamedTuple):
    tangent: bool
    discriminant: object    # normalized: ((p,q)^2 - (p,p)(q,q)) / ((p,p)(q,q))
    point: tuple | None     # point of tangency in the affine section
    roots: tuple            # parameters t in [0, 1] where the segment meets N


def edge_tangency_check(p: Sequence, q: Sequence, tol: float = TOL) -> Tangency:
    """Intersect the segment (1 - t) p + t q with N.

    (s(t), s(t)) = A t^2 + B t + C with discriminant B^2 - 4AC =
    4((p,q)^2 - (p,p)(q,q)).  Zero means the segment touches N once
    (tangent edge between adjacent apexes); positive means it crosses J.
    Exact on rational input.
    """
    p, q = _as_weight(p), _as_weight(q)
    pp, qq, pq = bilinear(p, p), bilinear(q, q), bilinear(p, q)
    A = pp + qq - 2 * pq
    B = 2 * pq - 2 * pp
    scale = pp * qq
    if scale == 0:
        raise ValidationError("endpoints on N have no tangency test")
    disc = (pq * pq - pp * qq) / scale
    exact = is_exact(disc)
    tangent = disc == 0 if exact else abs(disc) < tol
    if tangent:
        if A == 0:
            return Tangency(False, disc, None, ())
        t = -B / (2 * A)
        s = tuple((1 - t) * a + t * b for a, b in zip(p, q))
        return Tangency(True, disc, section_point(s), (t,))
    roots = ()
    if disc > 0 and A != 0:
        r = math.sqrt(float(disc * scale * 4))
        roots = tuple(sorted(t for t in ((-float(B) - r) / (2 * float(A)),
                                         (-float(B) + r) / (2 * float(A))) if 0 <= t <= 1))
    return Tangency(False, disc, None, roots)


def in_unbounded_cone(p: Sequence, x: Sequence) -> bool:
    """x lies on a half-line from apex p that enters J (the cone C'_S).

    Along s(t) = p + t (x - p) (both at height 1), (s, s) = a t^2 + b t + c
    with c = (p, p) > 0; the half-line t > 0 meets J iff the roots are real
    and positive.
    """
    p = np.asarray([float(v) for v in section_point(p)])
    x = np.asarray(x, dtype=float)
    d = x - p
    a = _form(d, d)
    b = 2 * _form(p, d)
    c = _form(p, p)
    if b * b - 4 * a * c <= 0:
        return False
    # roots share the sign of -b/a when c/a > 0; if a < 0 one root is positive
    return a < 0 or -b / a > 0


def in_bounded_cone(p: Sequence, x: Sequence) -> bool:
    """x lies between apex p and its cap (the cone C_S, closed at N)."""
    xv = np.asarray(x, dtype=float)
    pv = np.asarray([float(v) for v in section_point(p)])
    return in_unbounded_cone(p, x) and _form(xv, xv) >= 0 and _form(pv, xv) > 0


def _form(u, v) -> float:
    return 0.25 * float(np.dot(u, v)) - 0.125 * float(np.sum(u)) * float(np.sum(v))


def sample_section(n: int, seed: int = 0, spread: float = 0.75) -> np.ndarray:
    """Random points of the affine section within ``spread`` of the sphere center."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        v = rng.uniform(-spread, spread, size=4)
        v -= v.mean()
        if np.linalg.norm(v) <= spread:
            out.append(v + 0.25)
    return np.array(out)


def union_intersection_check(samples, L: int = 2) -> dict:
    """Compare the intersection of the unbounded cones with J ∪ the bounded cones.

    With finitely many circles the intersection can only shrink and the union
    only grow as L increases, so the truncated union must be contained in the
    truncated intersection; points in the intersection but not the union are
    reported as unresolved (interstices and deeper caps).
    """
    if L < 2:
        raise ValidationError("union_intersection_check needs L >= 2")
    pts = np.asarray(samples, dtype=float)
    apexes = apex_orbit(L).apexes
    violations, unresolved, in_union = [], 0, 0
    for x in pts:
        lhs = all(in_unbounded_cone(p, x) for p in apexes)
        rhs = _form(x, x) < 0 or any(in_bounded_cone(p, x) for p in apexes)
        in_union += rhs
        if rhs and not lhs:
            violations.append([float(v) for v in x])
        elif lhs and not rhs:
            unresolved += 1
    n = len(pts)
    return {
        "statement": "intersection over circles S of C'_S equals J ∪ F ∪ union of C_S; "
                     "tested with circles of depth <= L only",
        "depth": L,
        "apexes": len(apexes),
        "samples": n,
        "in_union": in_union,
        "unresolved": unresolved,
        "violations": violations,
        "agreement_rate": (n - len(violations) - unresolved) / n if n else 1.0,
        "passed": not violations,
    }
