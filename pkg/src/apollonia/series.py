"""Numeric sums over a packing: Z(s), the W_2 sums Z_2^{+-}, Z_1(t) and L(u).

All sums are double precision; every value comes with a tail estimate.
"""
from __future__ import annotations

import math
from typing import Sequence

from . import _backend
from .cone import Label, classify
from .errors import DivergenceError, ValidationError
from .lattice import Quadruple, WeightPoint, reduce_to_base
from .modular import Estimate, theta_eval
from .packing import CurvatureCensus, _check_base, curvature_census, detect_symmetry

DELTA = 1.30568  # Hausdorff dimension of the residual set, for tail extrapolation


def _floats(s: Sequence) -> tuple[float, float, float, float]:
    vals = tuple(float(x) for x in s)
    if len(vals) != 4:
        raise ValidationError("s needs four coordinates")
    return vals


def _exp_sum_exact(base: Quadruple, s, H) -> float:
    """Same walk as the integer kernel, for quadratic-ring bases."""
    total = math.exp(-sum(float(c) * x for c, x in zip(base, s)))
    stack = [(tuple(base), -1)]
    while stack:
        q, last = stack.pop()
        t = sum(q)
        for j in range(4):
            if j == last or q[j] >= t - q[j]:
                continue
            child = list(q)
            child[j] = 2 * (t - q[j]) - q[j]
            if sum(child) > H:
                continue
            total += math.exp(-sum(float(c) * x for c, x in zip(child, s)))
            stack.append((tuple(child), j))
    return total


def _orbit_sum(base: Quadruple, s, H) -> float:
    if base.is_integral:
        return _backend.orbit_exp_sum(tuple(base), s, math.floor(H))[0]
    return _exp_sum_exact(base, s, H)


def z_partial(base: Quadruple, s: Sequence, height_bound, max_iters: int = 64) -> Estimate:
    """Sum over the W orbit of e^{-(w c, s)} for quadruples of height <= H.

    Each distinct quadruple is weighted by the size of its stabilizer in W
    (2 for D2 packings).  The tail estimate assumes the height shells
    (H/4, H/2] and (H/2, H] continue to shrink geometrically.
    """
    base = Quadruple(base)
    _check_base(base)
    c = classify(WeightPoint(s), max_iters)
    if c.label in (Label.DIVERGENT, Label.TWO_SKELETON):
        raise DivergenceError(f"Z diverges at s = {tuple(s)} ({c.label.value}, word {c.word})")
    if c.label is Label.UNDETERMINED:
        raise DivergenceError(f"s = {tuple(s)} is not resolved within {max_iters} reflections")
    if height_bound < sum(base):
        raise ValidationError(f"height bound {height_bound} excludes the base (height {sum(base)})")
    sf = _floats(s)
    mult = detect_symmetry(base).multiplicity
    full = _orbit_sum(base, sf, height_bound)
    half = _orbit_sum(base, sf, height_bound / 2)
    quarter = _orbit_sum(base, sf, height_bound / 4)
    outer, inner = full - half, half - quarter
    if outer == 0:
        tail = 0.0
    elif 0 < outer < inner:
        r = outer / inner
        tail = outer * r / (1 - r)
    else:
        tail = math.inf
    return Estimate(mult * full, mult * tail)


# -- the W_2 = <sigma_3, sigma_4> orbit -------------------------------------


def w2_orbit(c: Quadruple, n: int) -> Quadruple:
    """Closed form for the quadruple reached by the alternating word of length |n|.

    n > 0 starts with sigma_3, n < 0 with sigma_4.

    >>> w2_orbit(Quadruple.of(-1, 2, 2, 3), 2)
    Quadruple(-1, 2, 6, 11)
    """
    c = Quadruple(c)
    c1, c2, c3, c4 = c
    if n % 2 == 0:
        d3 = n * ((n - 1) * (c1 + c2) - c3 + c4)
        d4 = n * ((n + 1) * (c1 + c2) - c3 + c4)
    else:
        k = n * (c1 + c2) - c3 + c4
        d3 = (n + 1) * k
        d4 = (n - 1) * k
    return Quadruple((c1, c2, c3 + d3, c4 + d4))


def w2_word(n: int) -> tuple[int, ...]:
    """The reflections (application order) realizing w2_orbit(c, n)."""
    first, second = (3, 4) if n > 0 else (4, 3)
    return tuple(first if j % 2 == 0 else second for j in range(abs(n)))


def _w2_exponent(c, s):
    """Coefficients of the quadratic n -> -(w_n c, s) on each parity class.

    Returns (Y, X, const) per parity so that (w_n c, s) = -(Y n^2 + X n + const).
    """
    c1, c2, c3, c4 = (float(x) for x in c)
    s1, s2, s3, s4 = s
    base = -(c1 * s1 + c2 * s2 + c3 * s3 + c4 * s4)
    Y = -(c1 + c2) * (s3 + s4)
    X_even = (c1 + c2 + c3 - c4) * s3 - (c1 + c2 - c3 + c4) * s4
    X_odd = -(c1 + c2 - c3 + c4) * s3 + (c1 + c2 + c3 - c4) * s4
    odd_const = base + (c3 - c4) * (s3 - s4)
    return Y, (X_even, base), (X_odd, odd_const)


def _check_w2_convergent(c, s) -> None:
    c1, c2 = float(c[0]), float(c[1])
    if not (c1 + c2) * (s[2] + s[3]) > 0:
        raise DivergenceError("the W_2 sum diverges unless (c1 + c2)(s3 + s4) > 0")


def z2_sum(c: Quadruple, sign, s: Sequence, terms: int = 50) -> Estimate:
    """sum over w in W_2 of (+-1)^{l(w)} e^{-(w c, s)}, |n| <= terms."""
    sgn = _sign(sign)
    c = Quadruple(c)
    sf = _floats(s)
    _check_w2_convergent(c, sf)
    total = 0.0
    for n in range(-terms, terms + 1):
        e = -sum(float(a) * b for a, b in zip(w2_orbit(c, n), sf))
        total += (sgn if n % 2 else 1) * math.exp(e)
    Y, even, odd = _w2_exponent(c, sf)
    tail = 0.0
    for X, k in (even, odd):
        for side in (1, -1):
            n0 = side * (terms + 1)
            first = Y * n0 * n0 + X * n0 + k
            step = Y * (2 * abs(n0) + 1) + abs(X)
            tail += math.exp(first) / (1 - math.exp(step)) if step < 0 else math.inf
    return Estimate(total, tail)


def _sign(sign) -> int:
    if sign in ("+", 1):
        return 1
    if sign in ("-", -1):
        return -1
    raise ValidationError(f"sign must be + or -, got {sign!r}")


def z2_theta(c: Quadruple, sign, s: Sequence, terms: int = 50) -> Estimate:
    """Right-hand side: even and odd parts of theta_00 and theta_01 at scaled arguments.

    The parity projection (theta_00 +- theta_01) / 2 cancels in floating point,
    so the absolute error is about 1e-16 times the largest term of the full
    theta series, i.e. of e^{Y n^2 + X n + const} over all integers n, which
    can exceed every term of the parity class being extracted.
    """
    sgn = _sign(sign)
    c = Quadruple(c)
    sf = _floats(s)
    _check_w2_convergent(c, sf)
    Y, (X_even, k_even), (X_odd, k_odd) = _w2_exponent(c, sf)
    t = -Y / math.pi
    total, tail = 0.0, 0.0
    for X, k, parity in ((X_even, k_even, 1), (X_odd, k_odd, -1)):
        # z = X / (2 pi i) is purely imaginary and can sit far outside the strip
        # |Im z| <= t/2; shift by j*tau with theta(z + j tau) = e^{pi j^2 t - 2 pi i j z} theta(z)
        # and keep the factor in the exponent so neither side overflows
        y = -X / (2 * math.pi)
        j = round(y / t)
        y0 = y - j * t
        log_factor = math.pi * j * j * t + 2 * math.pi * j * y0
        a = theta_eval("00", 1j * y0, t, terms)
        b = theta_eval("01", 1j * y0, t, terms)
        b_sign = -1 if j % 2 else 1
        part = (complex(a.value) + parity * b_sign * complex(b.value)) / 2
        scale = math.exp(k + log_factor)
        total += (1 if parity == 1 else sgn) * scale * part.real
        tail += scale * (a.tail + b.tail) / 2
    return Estimate(total, tail)


def theta_expansion_residual(c: Quadruple, s: Sequence, terms: int = 50, sign="+") -> float:
    """|Z_2^{+-} summed directly - its theta-function expression|."""
    return abs(z2_sum(c, sign, s, terms).value - z2_theta(c, sign, s, terms).value)


# -- curvature sums ---------------------------------------------------------


def _census(base, X, census: CurvatureCensus | None) -> CurvatureCensus:
    if census is not None:
        if census.bound < X:
            raise ValidationError(f"census only complete below {census.bound}, need {X}")
        return census.restrict(X)
    return curvature_census(base, X)


def z1_of_t(base: Quadruple, t: float, X, census: CurvatureCensus | None = None) -> Estimate:
    """sum over circles c < X of e^{-ct}, minus the four base terms e^{-c_i t}.

    The tail estimate is e^{-Xt} N(2X), i.e. every circle in [X, 2X) at the
    largest possible weight; beyond 2X the terms are smaller by e^{-Xt}.
    """
    if not t > 0:
        raise ValidationError(f"t must be positive, got {t}")
    base = Quadruple(base)
    reduced, _ = reduce_to_base(base)
    if census is not None and census.bound >= 2 * X:
        big = census.restrict(2 * X)
    else:
        big = curvature_census(reduced, 2 * X)
    value = sum(math.exp(-float(c) * t) for c in big.restrict(X)) \
        - sum(math.exp(-float(c) * t) for c in reduced)
    tail = math.exp(-float(X) * t) * big.count(2 * X)
    return Estimate(value, tail)


def l_partial(base: Quadruple, u: float, X, census: CurvatureCensus | None = None) -> Estimate:
    """sum of c^{-u} over circle curvatures 0 < c < X.

    Tail estimate from N(c) ~ r c^delta: N(X) delta / (u - delta) X^{-u};
    infinite when u <= delta (partial sums keep growing).
    """
    if not u > 0:
        raise ValidationError(f"u must be positive, got {u}")
    cen = _census(base, X, census)
    pos = [float(c) for c in cen if c > 0]
    value = math.fsum(c ** -u for c in pos)
    n = len(pos)
    tail = n * DELTA / (u - DELTA) * float(X) ** (-u) if u > DELTA else math.inf
    return Estimate(value, tail)
