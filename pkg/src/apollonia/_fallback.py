"""Pure-Python implementations of the hot loops.

Must stay signature- and result-identical to ``_kernels.pyx``.

The orbit walks rely on the tree structure of a bounded packing: every
non-base quadruple has a unique height-reducing generator (its parent
edge), so walking children j != parent with c_j < sum(others) visits each
distinct quadruple vector exactly once.  A child replaces c_j by
2*sum(others) - c_j, which is then the strict maximum of the child and
exceeds the parent's maximum; curvature and height bounds therefore prune
whole subtrees.
"""
from __future__ import annotations

import math

import numpy as np

INTERIOR, FACET, TWO_SKELETON, DIVERGENT, UNDETERMINED = range(5)

BACKEND = "python"


def census_maxima(base, bound):
    """Maxima of all distinct non-base quadruples with maximum < bound."""
    out = []
    push = out.append
    stack = [(int(base[0]), int(base[1]), int(base[2]), int(base[3]), -1)]
    while stack:
        c0, c1, c2, c3, last = stack.pop()
        t = c0 + c1 + c2 + c3
        q = (c0, c1, c2, c3)
        for j in range(4):
            if j == last:
                continue
            cj = q[j]
            s = t - cj
            if cj >= s:
                continue
            v = 2 * s - cj
            if v < bound:
                push(v)
                if j == 0:
                    stack.append((v, c1, c2, c3, 0))
                elif j == 1:
                    stack.append((c0, v, c2, c3, 1))
                elif j == 2:
                    stack.append((c0, c1, v, c3, 2))
                else:
                    stack.append((c0, c1, c2, v, 3))
    return np.array(out, dtype=np.int64)


def orbit_exp_sum(base, s, max_height):
    """Sum of exp(-(c, s)) over distinct quadruples of height <= max_height.

    Returns (total, count); the base itself is included.
    """
    s0, s1, s2, s3 = (float(x) for x in s)
    b = tuple(int(x) for x in base)
    if sum(b) > max_height:
        return 0.0, 0
    total = math.exp(-(b[0] * s0 + b[1] * s1 + b[2] * s2 + b[3] * s3))
    count = 1
    stack = [(b, -1)]
    while stack:
        q, last = stack.pop()
        t = q[0] + q[1] + q[2] + q[3]
        for j in range(4):
            if j == last:
                continue
            cj = q[j]
            sj = t - cj
            if cj >= sj:
                continue
            ht = t + 2 * (sj - cj)
            if ht > max_height:
                continue
            child = list(q)
            child[j] = 2 * sj - cj
            total += math.exp(-(child[0] * s0 + child[1] * s1 + child[2] * s2 + child[3] * s3))
            count += 1
            stack.append((tuple(child), j))
    return total, count


def _classify_one(p, max_iters):
    p = list(p)
    for it in range(max_iters + 1):
        if p[0] + p[1] + p[2] + p[3] < 0:
            return DIVERGENT, it, p
        neg = zero = 0
        k = -1
        for j in range(4):
            if p[j] < 0:
                neg += 1
                k = j
            elif p[j] == 0:
                zero += 1
        if neg >= 2 or (neg == 1 and zero >= 1):
            return DIVERGENT, it, p
        if neg == 0:
            if zero >= 2:
                return TWO_SKELETON, it, p
            return (FACET if zero == 1 else INTERIOR), it, p
        if it == max_iters:
            break
        sk = p[k]
        for j in range(4):
            p[j] = -sk if j == k else p[j] + 2 * sk
    return UNDETERMINED, max_iters, p


def classify_batch(points, max_iters):
    """Classify rows of an (n, 4) int64 or float64 array.

    Returns (labels int8, iterations int32, final points same dtype).
    """
    pts = np.asarray(points)
    n = pts.shape[0]
    labels = np.empty(n, dtype=np.int8)
    iters = np.empty(n, dtype=np.int32)
    final = np.empty_like(pts)
    as_int = pts.dtype.kind == "i"
    for r in range(n):
        row = [int(x) for x in pts[r]] if as_int else [float(x) for x in pts[r]]
        lab, it, p = _classify_one(row, max_iters)
        labels[r] = lab
        iters[r] = it
        final[r] = p
    return labels, iters, final
