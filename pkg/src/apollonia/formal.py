"""Sparse multivariate exponential series with exact integer coefficients.

A :class:`FormalSeries` maps exponent tuples to nonzero coefficients and
carries a truncation box; every product is cut back to the box, so
arithmetic between series in the same box is closed and consistent.
"""
from __future__ import annotations

from typing import Iterable, Mapping


class RectBox:
    """Exponents with ``lo[i] <= e[i] <= hi[i]`` in every coordinate."""

    def __init__(self, lo: Iterable, hi: Iterable) -> None:
        self.lo = tuple(lo)
        self.hi = tuple(hi)
        if len(self.lo) != len(self.hi):
            raise ValueError("box bounds differ in dimension")

    def contains(self, e: tuple) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, e, self.hi))

    def __eq__(self, other) -> bool:
        return isinstance(other, RectBox) and (self.lo, self.hi) == (other.lo, other.hi)

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"RectBox({self.lo}, {self.hi})"


class DegreeBox:
    """Nonnegative exponents of total degree at most ``max_degree``.

    The box for power series; unit series are invertible inside it.
    """

    def __init__(self, dim: int, max_degree: int) -> None:
        self.dim = dim
        self.max_degree = max_degree

    def contains(self, e: tuple) -> bool:
        return all(x >= 0 for x in e) and sum(e) <= self.max_degree

    def __eq__(self, other) -> bool:
        return isinstance(other, DegreeBox) and (self.dim, self.max_degree) == (
            other.dim, other.max_degree)

    def __hash__(self) -> int:
        return hash((self.dim, self.max_degree))

    def __repr__(self) -> str:
        return f"DegreeBox({self.dim}, {self.max_degree})"


class NLMBox:
    """Triples (n, l, m) with 1 <= n <= n_max, 1 <= m <= m_max, |l| <= l_max
    and 4mn - l^2 <= disc_max."""

    def __init__(self, n_max: int, m_max: int, disc_max: int, l_max: int = 60) -> None:
        self.n_max, self.m_max, self.disc_max, self.l_max = n_max, m_max, disc_max, l_max

    def contains(self, e: tuple) -> bool:
        n, l, m = e
        return (1 <= n <= self.n_max and 1 <= m <= self.m_max and -self.l_max <= l <= self.l_max
                and 4 * m * n - l * l <= self.disc_max)

    def __eq__(self, other) -> bool:
        return isinstance(other, NLMBox) and vars(self) == vars(other)

    def __hash__(self) -> int:
        return hash((self.n_max, self.m_max, self.disc_max, self.l_max))

    def __repr__(self) -> str:
        return f"NLMBox({self.n_max}, {self.m_max}, {self.disc_max}, {self.l_max})"


DEFAULT_NLM_BOX = RectBox((-25, -60, -25), (25, 60, 25))


def _add(e: tuple, f: tuple) -> tuple:
    return tuple(a + b for a, b in zip(e, f))


class FormalSeries:
    """Immutable finitely supported series sum c_e X^e, truncated to a box."""

    __slots__ = ("_terms", "box")

    def __init__(self, terms: Mapping[tuple, int] | None = None, box=DEFAULT_NLM_BOX) -> None:
        self.box = box
        self._terms = {e: c for e, c in (terms or {}).items() if c and box.contains(e)}

    @classmethod
    def monomial(cls, e: tuple, coeff: int = 1, box=DEFAULT_NLM_BOX) -> FormalSeries:
        return cls({tuple(e): coeff}, box)

    @classmethod
    def one(cls, dim: int, box) -> FormalSeries:
        return cls({(0,) * dim: 1}, box)

    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __getitem__(self, e: tuple) -> int:
        return self._terms.get(tuple(e), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms))

    def __eq__(self, other) -> bool:
        if isinstance(other, FormalSeries):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        shown = ", ".join(f"{e}: {c}" for e, c in self.items()[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"FormalSeries({{{shown}{more}}}, {self.box!r})"

    def _same_box(self, other: FormalSeries) -> None:
        if self.box != other.box:
            raise ValueError(f"series live in different boxes: {self.box} vs {other.box}")

    def __add__(self, other: FormalSeries) -> FormalSeries:
        self._same_box(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return FormalSeries(out, self.box)

    def __neg__(self) -> FormalSeries:
        return FormalSeries({e: -c for e, c in self._terms.items()}, self.box)

    def __sub__(self, other: FormalSeries) -> FormalSeries:
        return self + (-other)

    def scale(self, k: int) -> FormalSeries:
        return FormalSeries({e: k * c for e, c in self._terms.items()}, self.box)

    def shift(self, e: tuple) -> FormalSeries:
        """Multiply by the monomial X^e."""
        return FormalSeries({_add(f, e): c for f, c in self._terms.items()}, self.box)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._same_box(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        contains = self.box.contains
        if isinstance(self.box, DegreeBox):
            # terms sorted by degree let us stop early
            D = self.box.max_degree
            bs = sorted(((sum(f), f, d) for f, d in b.items()))
            for e, c in a.items():
                budget = D - sum(e)
                for deg, f, d in bs:
                    if deg > budget:
                        break
                    g = _add(e, f)
                    out[g] = out.get(g, 0) + c * d
        else:
            for e, c in a.items():
                for f, d in b.items():
                    g = _add(e, f)
                    if contains(g):
                        out[g] = out.get(g, 0) + c * d
        return FormalSeries(out, self.box)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> FormalSeries:
        if k < 0:
            return self.inverse() ** (-k)
        dim = len(next(iter(self._terms))) if self._terms else 1
        result = FormalSeries.one(dim, self.box)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> FormalSeries:
        """Two-sided inverse of a unit power series (constant term +-1)."""
        if not isinstance(self.box, DegreeBox):
            raise ValueError("inversion needs a DegreeBox (power-series truncation)")
        zero = (0,) * self.box.dim
        c0 = self._terms.get(zero, 0)
        if c0 not in (1, -1):
            raise ValueError(f"constant term {c0} is not a unit")
        # coefficients of the inverse, degree by degree
        inv = {zero: c0}
        by_degree: dict[int, list[tuple]] = {}
        for e, c in self._terms.items():
            if e != zero:
                by_degree.setdefault(sum(e), []).append((e, c))
        rest = [(e, c) for d in sorted(by_degree) for e, c in by_degree[d]]
        for deg in range(1, self.box.max_degree + 1):
            for g in _exponents_of_degree(self.box.dim, deg):
                acc = 0
                for e, c in rest:
                    if sum(e) > deg:
                        break
                    h = tuple(x - y for x, y in zip(g, e))
                    v = inv.get(h)
                    if v:
                        acc += c * v
                if acc:
                    inv[g] = -c0 * acc
        return FormalSeries(inv, self.box)

    def __truediv__(self, other: FormalSeries) -> FormalSeries:
        return self * other.inverse()


def _exponents_of_degree(dim: int, deg: int):
    if dim == 1:
        yield (deg,)
        return
    for first in range(deg, -1, -1):
        for tail in _exponents_of_degree(dim - 1, deg - first):
            yield (first,) + tail
