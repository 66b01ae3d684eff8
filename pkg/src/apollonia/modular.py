"""Theta functions, the g(k, l) table, Fourier coefficients of Delta_5 and
an exact coefficient-level check of the Delta_5 identity for W_3 orbit sums.

Exponents of two-variable series are (k, l) meaning e^{pi i (k z1 + l z2)};
three-variable exponents (n, l, m) mean e^{n z1 + l z2 + m z3} in the
coordinates of :func:`apollonia.lattice.to_beta`, which pair with
e^{pi i (...)} exponents of Delta_5 one for one.
"""
from __future__ import annotations

import cmath
import math
from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .errors import ArithmeticDomainError, ValidationError
from .formal import DEFAULT_NLM_BOX, DegreeBox, FormalSeries, NLMBox, RectBox
from .lattice import RHO, Quadruple, pairing_nlm


class Estimate(NamedTuple):
    """A truncated sum together with a bound on the omitted tail."""

    value: object
    tail: float


# -- theta functions ---------------------------------------------------------

_VARIANTS = {"00": (0.0, False), "01": (0.0, True), "11": (0.5, True)}


def theta_eval(variant: str, z: complex, t: float, terms: int = 50) -> Estimate:
    """theta_{variant}(z, i t) summed over |n| <= terms (n + 1/2 for 11).

    theta_00 = sum e^{2 pi i n z + pi i n^2 tau}, theta_01 inserts (-1)^n,
    theta_11 = sum (-1)^n e^{pi i (2n+1) z + pi i (n+1/2)^2 tau}.
    The tail bound is rigorous for complex z.
    """
    if variant not in _VARIANTS:
        raise ValidationError(f"unknown theta variant {variant!r}; use 00, 01 or 11")
    if not t > 0:
        raise ValidationError(f"theta needs Im(tau) = t > 0, got {t}")
    if terms < 1:
        raise ValidationError("terms must be >= 1")
    h, alternating = _VARIANTS[variant]
    z = complex(z)
    lo, hi = (-terms, terms) if h == 0 else (-terms, terms - 1)
    total = 0j
    for n in range(lo, hi + 1):
        x = n + h
        term = cmath.exp(-math.pi * x * x * t + 2j * math.pi * x * z)
        total += -term if alternating and n % 2 else term
    # omitted |n + h| >= terms + 1 - 2h; each side is a log-concave sequence
    y = abs(z.imag)
    x0 = terms + 1 - 2 * h + h
    first = math.exp(-math.pi * x0 * x0 * t + 2 * math.pi * x0 * y)
    ratio = math.exp(-math.pi * (2 * x0 + 1) * t + 2 * math.pi * y)
    tail = 2 * first / (1 - ratio) if ratio < 1 else math.inf
    value = total.real if z.imag == 0 and h == 0 else total
    return Estimate(value, tail)


# -- the g(k, l) table ---------------------------------------------------------


class GTable:
    """Exact coefficients g(k, l) for odd k <= K (zero elsewhere in range)."""

    def __init__(self, K: int, values: dict) -> None:
        self.K = K
        self.values = {e: v for e, v in values.items() if v and e[0] <= K}

    def __call__(self, k: int, l: int) -> int:
        if k > self.K:
            raise ArithmeticDomainError(f"g({k}, {l}) is beyond the table bound K={self.K}")
        return self.values.get((k, l), 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, GTable) and self.K == other.K and self.values == other.values

    def items(self):
        return sorted(self.values.items())

    def restrict(self, K: int) -> GTable:
        return GTable(min(K, self.K), self.values)


def _wide_box(K) -> RectBox:
    # l is bounded by the z1-cost of the factors, so no truncation in l is needed
    return RectBox((0, -4 * K - 8), (K, 4 * K + 8))


def g_table(K: int = 49) -> GTable:
    """g(k, l) from the product -X^{(1,-1)} prod (1 - X^{(2n-2, 2)})(1 - X^{(2n, -2)})(1 - X^{(2n, 0)})^10."""
    if K < 1:
        raise ValidationError("g_table needs K >= 1")
    return _g_table_product(int(K))


def _times_one_minus(terms: dict, e: tuple, kmax: int) -> dict:
    """Multiply a (k, l) series by the binomial 1 - X^e, dropping k > kmax."""
    out = dict(terms)
    for (k, l), c in terms.items():
        g = (k + e[0], l + e[1])
        if g[0] <= kmax:
            out[g] = out.get(g, 0) - c
    return {f: c for f, c in out.items() if c}


@lru_cache(maxsize=8)
def _g_table_product(K: int) -> GTable:
    box = _wide_box(K - 1)  # the prefactor adds 1 to k
    # the exponent-10 factor is one-dimensional: multiply binomials in place
    top = (K - 1) // 2
    coeffs = [1] + [0] * top
    for n in range(1, top + 1):
        for _ in range(10):
            for j in range(top, n - 1, -1):
                coeffs[j] -= coeffs[j - n]
    power = FormalSeries({(2 * j, 0): c for j, c in enumerate(coeffs)}, box)
    theta = {(0, 0): 1}
    for n in range(1, (K - 1) // 2 + 2):
        theta = _times_one_minus(theta, (2 * n - 2, 2), K - 1)
        theta = _times_one_minus(theta, (2 * n, -2), K - 1)
    prod = FormalSeries(theta, box) * power
    return GTable(K, {(k + 1, l - 1): -c for (k, l), c in prod.terms().items()})


def g_table_eta_theta(K: int = 49) -> GTable:
    """Independent route: eta(z1)^9 from the pentagonal series times theta_11(z2, z1)."""
    if K < 1:
        raise ValidationError("g_table needs K >= 1")
    q_max = K // 2
    box = RectBox((0, -4 * K - 8), (Fraction(K), 4 * K + 8))
    pent = {}
    j = 0
    while True:
        hit = False
        for e in (j * (3 * j - 1) // 2, j * (3 * j + 1) // 2):
            if e <= q_max:
                pent[(2 * e, 0)] = (-1) ** j
                hit = True
        if not hit:
            break
        j += 1
    eta9 = (FormalSeries(pent, box) ** 9).shift((Fraction(3, 4), 0))
    theta = {}
    for n in range(-math.isqrt(K) - 2, math.isqrt(K) + 2):
        k = (n + Fraction(1, 2)) ** 2
        if k <= K:
            theta[(k, 2 * n + 1)] = (-1) ** (n % 2)
    prod = eta9 * FormalSeries(theta, box)
    out = {}
    for (k, l), c in prod.terms().items():
        if Fraction(k).denominator != 1:
            raise ArithmeticError(f"non-integral exponent {k} in eta^9 theta_11")
        out[(int(k), l)] = c
    return GTable(K, out)


@lru_cache(maxsize=4)
def _table_for(K: int) -> GTable:
    return g_table(max(K, 49))


# -- Delta_5 coefficients --------------------------------------------------


def _divisor_sum(n: int, l: int, m: int, table: GTable) -> int:
    g = math.gcd(math.gcd(abs(l), m), n)
    total = 0
    for d in range(1, g + 1):
        if g % d == 0:
            total += d ** 4 * table(m * n // (d * d), l // d)
    return total


def fourier_coefficient(n: int, l: int, m: int, table: GTable | None = None) -> int:
    """Coefficient of e^{pi i (n z1 + l z2 + m z3)} in Delta_5 / 64, zero off the support."""
    if n % 2 == 0 or l % 2 == 0 or m % 2 == 0 or n <= 0 or m <= 0 or 4 * m * n - l * l <= 0:
        return 0
    if table is None or table.K < m * n:
        table = _table_for(m * n)
    return _divisor_sum(n, l, m, table)


def delta5_coeff(n: int, l: int, m: int, table: GTable | None = None) -> int:
    """Fourier coefficient of Delta_5 / 64 on its support; domain errors off it.

    >>> delta5_coeff(1, 1, 1)
    1
    """
    if n % 2 == 0 or l % 2 == 0 or m % 2 == 0:
        raise ArithmeticDomainError(f"({n}, {l}, {m}): n, l, m must all be odd")
    if n <= 0 or m <= 0:
        raise ArithmeticDomainError(f"({n}, {l}, {m}): n and m must be positive")
    if 4 * m * n - l * l <= 0:
        raise ArithmeticDomainError(f"({n}, {l}, {m}): 4mn - l^2 must be positive")
    if table is not None and table.K < m * n:
        raise ArithmeticDomainError(f"mn = {m * n} exceeds the table bound {table.K}")
    return fourier_coefficient(n, l, m, table)


# -- W_3 action on exponent triples -----------------------------------------


def nlm_reflect(i: int, x: tuple) -> tuple[int, int, int]:
    """Action of sigma_2, sigma_3, sigma_4 on exponent triples (n, l, m).

    >>> nlm_reflect(2, (1, 1, 1))
    (3, 3, 1)
    """
    n, l, m = x
    if i == 2:
        return (n - 2 * l + 4 * m, 4 * m - l, m)
    if i == 3:
        return (n, 4 * n - l, m - 2 * l + 4 * n)
    if i == 4:
        return (n, -l, m)
    raise ValidationError(f"W_3 generators are 2, 3, 4; got {i}")


def discriminant(x: tuple) -> int:
    n, l, m = x
    return 4 * m * n - l * l


def is_antidominant(x: tuple) -> bool:
    """(v, alpha_i) < 0 for i = 2, 3, 4, with (v, alpha_2) = l - 2m,
    (v, alpha_3) = l - 2n and (v, alpha_4) = -l."""
    n, l, m = x
    return 0 < l < 2 * m and l < 2 * n


def _orbit_in_box(start: tuple, box) -> dict[tuple, int]:
    """Signed W_3 orbit of an antidominant triple, restricted to ``box``.

    Moving away from an antidominant element never decreases n, m or |l|
    (D = 4mn - l^2 is invariant), so a shortest word to an in-box element
    only passes through in-box elements and the pruned search is complete.
    The sign is (-1)^length, which any path computes correctly.
    """
    signs = {start: 1}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for i in (2, 3, 4):
            y = nlm_reflect(i, x)
            if y not in signs and box.contains(y):
                signs[y] = -signs[x]
                queue.append(y)
    return signs


def _sign_value(sign) -> int:
    if sign in ("+", 1, "plus"):
        return 1
    if sign in ("-", -1, "minus"):
        return -1
    raise ValidationError(f"sign must be + or -, got {sign!r}")


def z3_formal(sign, alpha: Quadruple, box=DEFAULT_NLM_BOX, correction: bool = True) -> FormalSeries:
    """sum_{w in W_3} (+-1)^{l(w)} X^{-(w(rho + alpha), s)} truncated to ``box``.

    Exponents are (n, l, m) triples; the identity word contributes
    pairing_nlm(rho + alpha) = (1, 1, 1) + pairing_nlm(alpha).
    """
    sgn = _sign_value(sign)
    alpha = Quadruple(alpha)
    if alpha[0] != 0 or any(c < 0 for c in alpha):
        raise ValidationError("alpha must be a nonnegative combination of alpha_2, alpha_3, alpha_4")
    start = pairing_nlm(RHO + alpha)
    if correction and not is_antidominant(start):
        raise ValidationError(f"rho + {alpha} is not antidominant")
    if not box.contains(start):
        return FormalSeries({}, box)
    orbit = _orbit_in_box(start, box)
    return FormalSeries({x: (s if sgn < 0 else 1) for x, s in orbit.items()}, box)


def m_alpha(alpha: Quadruple, table: GTable | None = None) -> int:
    """Correction multiplicity for the orbit of rho + alpha; m(0) = 0 by convention."""
    alpha = Quadruple(alpha)
    v = pairing_nlm(RHO + alpha)
    if not is_antidominant(v):
        raise ValidationError(f"rho + {alpha} is not antidominant")
    if all(c == 0 for c in alpha):
        return 0
    return -fourier_coefficient(*v, table=table)


def _root_form(a: int, b: int, c: int) -> int:
    """(beta, beta) for beta = a alpha_2 + b alpha_3 + c alpha_4."""
    return 2 * (a * a + b * b + c * c) - 4 * (a * b + b * c + c * a)


def weyl_denominator(max_degree: int) -> FormalSeries:
    """sum (-1)^{l(w)} Y^{w rho - rho} over W_3, as a power series in (a, b, c)."""
    box = DegreeBox(3, max_degree)
    terms = {}
    for (n, l, m), s in _orbit_in_box((1, 1, 1), _DegreeAsNLM(max_degree)).items():
        terms[_nlm_to_abc((n, l, m))] = s
    return FormalSeries(terms, box)


def _nlm_to_abc(x: tuple) -> tuple[int, int, int]:
    n, l, m = x
    return ((n - 1) // 2, (m - 1) // 2, (n + m - l - 1) // 2)


class _DegreeAsNLM:
    """The DegreeBox a + b + c <= D seen in (n, l, m) coordinates."""

    def __init__(self, D: int) -> None:
        self.D = D

    def contains(self, x: tuple) -> bool:
        a, b, c = _nlm_to_abc(x)
        return a >= 0 and b >= 0 and c >= 0 and a + b + c <= self.D


def verify_theorem_delta(box_b: int = 50, box_nm: int = 15, quotient_degree: int = 12,
                         l_max: int = 60) -> dict:
    """Exact check of the Delta_5 identity for W_3 orbit sums.

    (a) Fourier coefficients alternate under sigma_2, sigma_3, sigma_4;
    (b) the corrected signed orbit sums reproduce the Fourier series in the box;
    (c) the Fourier series divided by the Weyl denominator only has exponents
        beta with (beta, beta) <= 0 up to height ``quotient_degree``.
    """
    if box_b < 3 or box_nm < 1:
        raise ValidationError("box too small to contain any complete orbit (need 4mn-l^2 >= 3)")
    box = NLMBox(box_nm, box_nm, box_b, l_max)
    K = max(box_nm * box_nm, (quotient_degree + 1) ** 2, 49)
    table = g_table(K)

    triples = [(n, l, m) for n in range(1, box_nm + 1, 2) for m in range(1, box_nm + 1, 2)
               for l in range(-l_max + (l_max + 1) % 2, l_max + 1, 2) if box.contains((n, l, m))]
    coeff = {x: fourier_coefficient(*x, table=table) for x in triples}

    # (a) alternation
    alt_checked, alt_fail = 0, []
    for x in triples:
        for i in (2, 3, 4):
            y = nlm_reflect(i, x)
            if y in coeff:
                alt_checked += 1
                if coeff[y] != -coeff[x]:
                    alt_fail.append({"x": list(x), "sigma": i, "f(x)": coeff[x], "f(sx)": coeff[y]})

    # (b) corrected orbit sums, one per antidominant element meeting the box
    lhs: dict[tuple, int] = {}
    orbits = []
    for x in triples:
        if not is_antidominant(x):
            continue
        a, b, c = _nlm_to_abc(x)
        alpha = Quadruple.of(0, a, b, c)
        weight = 1 if x == (1, 1, 1) else -m_alpha(alpha, table)
        orbit = z3_formal("-", alpha, box)
        orbits.append({"antidominant": list(x), "alpha": [a, b, c],
                       "m_alpha": m_alpha(alpha, table), "orbit_size_in_box": len(orbit)})
        for e, s in orbit.items():
            lhs[e] = lhs.get(e, 0) + weight * s
    id_fail = []
    for x in triples:
        if lhs.get(x, 0) != coeff[x]:
            id_fail.append({"x": list(x), "lhs": lhs.get(x, 0), "rhs": coeff[x]})
    stray = [list(e) for e in lhs if e not in coeff and lhs[e]]

    # (c) quotient support
    qbox = DegreeBox(3, quotient_degree)
    num_terms = {}
    for a in range(quotient_degree + 1):
        for b in range(quotient_degree + 1 - a):
            for c in range(quotient_degree + 1 - a - b):
                v = fourier_coefficient(1 + 2 * a, 1 + 2 * a + 2 * b - 2 * c, 1 + 2 * b, table)
                if v:
                    num_terms[(a, b, c)] = v
    quotient = FormalSeries(num_terms, qbox) / weyl_denominator(quotient_degree)
    q_items = quotient.items()
    q_viol = [{"beta": list(e), "coeff": c, "norm": _root_form(*e)}
              for e, c in q_items if _root_form(*e) > 0]

    report = {
        "box": {"disc_max": box_b, "n_max": box_nm, "m_max": box_nm, "l_max": l_max,
                "quotient_degree": quotient_degree, "g_table_K": K},
        "conventions": {
            "m_of_zero": 0,
            "note": "the identity orbit (alpha = 0) enters with coefficient 1 and m(0) = 0; "
                    "reading m(alpha) = -f(rho + alpha) literally at alpha = 0 would give -1",
        },
        "alternation": {"checked": alt_checked, "failures": alt_fail, "passed": not alt_fail},
        "identity": {"checked": len(triples), "orbits": orbits, "failures": id_fail,
                     "outside_box_terms": stray, "passed": not id_fail and not stray},
        "quotient": {"nonzero_terms": len(q_items), "violations": q_viol,
                     "terms": [{"beta": list(e), "coeff": c, "norm": _root_form(*e)}
                               for e, c in q_items],
                     "passed": not q_viol},
        "coefficients": [{"n": n, "l": l, "m": m, "value": coeff[(n, l, m)]}
                         for (n, l, m) in triples],
    }
    report["passed"] = all(report[k]["passed"] for k in ("alternation", "identity", "quotient"))
    return report
