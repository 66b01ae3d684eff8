"""Root and weight lattice of the rank-4 Apollonian Cartan matrix.

Root coordinates (curvatures) live in :class:`Quadruple`, weight
coordinates (the argument of Z) in :class:`WeightPoint`.  Generators are
numbered 1..4 and a *word* is a tuple of generator indices listed in the
order they are applied, so ``(4, 3)`` means apply sigma_4 and then sigma_3.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import ReductionError, ValidationError
from .exact import Exact, QuadraticScalar, exact, is_exact, parse_scalar, radicand, sign

CARTAN = ((2, -2, -2, -2), (-2, 2, -2, -2), (-2, -2, 2, -2), (-2, -2, -2, 2))
CARTAN_INVERSE = tuple(
    tuple(Fraction(1, 8) if i == j else Fraction(-1, 8) for j in range(4)) for i in range(4))

Word = tuple[int, ...]


def _coerce(x):
    if isinstance(x, float):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return exact(x)


def _half(x):
    return Fraction(x, 2) if isinstance(x, int) else x / 2


class Quadruple(tuple):
    """A vector c1*alpha_1 + ... + c4*alpha_4 in root coordinates.

    Curvature quadruples are the main use, but any root-lattice vector
    (simple roots, rho, imaginary roots) is represented the same way.
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable) -> Quadruple:
        vals = tuple(_coerce(c) for c in coords)
        if len(vals) != 4:
            raise ValidationError(f"a quadruple has 4 entries, got {len(vals)}")
        if any(isinstance(v, float) for v in vals):
            raise ValidationError("quadruple entries must be exact")
        ds = {radicand(v) for v in vals} - {1}
        if len(ds) > 1:
            raise ValidationError(f"entries mix radicands {sorted(ds)}")
        return tuple.__new__(cls, vals)

    @classmethod
    def of(cls, c1, c2, c3, c4) -> Quadruple:
        return cls((c1, c2, c3, c4))

    @classmethod
    def _raw(cls, vals: tuple) -> Quadruple:
        # trusted constructor for already-normalized entries
        return tuple.__new__(cls, vals)

    c1 = property(lambda self: self[0])
    c2 = property(lambda self: self[1])
    c3 = property(lambda self: self[2])
    c4 = property(lambda self: self[3])

    @property
    def height(self) -> Exact:
        return sum(self)

    @property
    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self)

    @property
    def radicand(self) -> int:
        return max(radicand(v) for v in self)

    def __add__(self, other):
        if isinstance(other, Quadruple):
            return Quadruple(exact(a + b) for a, b in zip(self, other))
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Quadruple):
            return Quadruple(exact(a - b) for a, b in zip(self, other))
        return NotImplemented

    def scale(self, k) -> Quadruple:
        return Quadruple(exact(k * v) for v in self)

    def __repr__(self) -> str:
        return f"Quadruple({', '.join(str(v) for v in self)})"

    def __str__(self) -> str:
        return ",".join(str(v) for v in self)


class WeightPoint(tuple):
    """A point s1*omega_1 + ... + s4*omega_4 in weight coordinates.

    Coordinates are exact scalars or floats; only real parts are modelled.
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable) -> WeightPoint:
        vals = tuple(_coerce(c) for c in coords)
        if len(vals) != 4:
            raise ValidationError(f"a weight point has 4 coordinates, got {len(vals)}")
        return tuple.__new__(cls, vals)

    @classmethod
    def of(cls, s1, s2, s3, s4) -> WeightPoint:
        return cls((s1, s2, s3, s4))

    @property
    def height(self):
        return sum(self)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(v) for v in self)

    def to_float(self) -> WeightPoint:
        return tuple.__new__(WeightPoint, tuple(float(v) for v in self))

    def __repr__(self) -> str:
        return f"WeightPoint({', '.join(str(v) for v in self)})"

    def __str__(self) -> str:
        return ",".join(str(v) for v in self)


class BetaCoordinates(NamedTuple):
    """Coordinates of s in the basis omega_1, beta_1, beta_2, beta_3.

    beta_1 = (alpha_3 + alpha_4)/2, beta_2 = alpha_4, beta_3 = (alpha_2 + alpha_4)/2.
    """

    z0: object
    z1: object
    z2: object
    z3: object


def simple_root(i: int) -> Quadruple:
    return Quadruple._raw(tuple(1 if j == i - 1 else 0 for j in range(4)))


def fundamental_weight(i: int) -> WeightPoint:
    return tuple.__new__(WeightPoint, tuple(1 if j == i - 1 else 0 for j in range(4)))


ALPHA = tuple(simple_root(i) for i in range(1, 5))
OMEGA = tuple(fundamental_weight(i) for i in range(1, 5))
# Weyl vector of the rank-3 subsystem spanned by alpha_2, alpha_3, alpha_4
RHO = Quadruple.of(0, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
# base quadruple of the D3-symmetric packing normalized by c2 = c3 = c4 and 2c1 + 2c2 = 1
D3_BASE = Quadruple((QuadraticScalar(0, -1, 4, 3),) + (QuadraticScalar(2, 1, 4, 3),) * 3)
D2_BASE = Quadruple.of(-1, 2, 2, 3)


def parse_quadruple(text: str) -> Quadruple:
    parts = [p for p in text.split(",")]
    if len(parts) != 4 or any(not p.strip() for p in parts):
        raise ValidationError(f"expected 4 comma-separated scalars, got {text!r}")
    return Quadruple(parse_scalar(p) for p in parts)


def parse_weight(text: str) -> WeightPoint:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValidationError(f"expected 4 comma-separated coordinates, got {text!r}")
    vals = []
    for p in parts:
        try:
            vals.append(parse_scalar(p))
        except ValidationError:
            try:
                vals.append(float(p))
            except ValueError:
                raise ValidationError(f"malformed coordinate {p!r}") from None
    return WeightPoint(vals)


def _simplify(x):
    return exact(x) if is_exact(x) else x


def bilinear(u: Quadruple | WeightPoint, v: Quadruple | WeightPoint):
    """The invariant form: Cartan matrix on roots, inverse Cartan on weights.

    >>> bilinear(ALPHA[0], ALPHA[0]), bilinear(OMEGA[0], OMEGA[1])
    (2, Fraction(-1, 8))
    """
    dot = sum(a * b for a, b in zip(u, v))
    if isinstance(u, Quadruple) and isinstance(v, Quadruple):
        return _simplify(4 * dot - 2 * sum(u) * sum(v))
    if isinstance(u, WeightPoint) and isinstance(v, WeightPoint):
        return _simplify(Fraction(1, 4) * dot - Fraction(1, 8) * sum(u) * sum(v))
    if isinstance(u, (Quadruple, WeightPoint)) and isinstance(v, (Quadruple, WeightPoint)):
        return _simplify(dot)
    raise TypeError("bilinear expects Quadruple or WeightPoint arguments")


def descartes_defect(q: Sequence) -> Exact:
    """2*sum(c_i^2) - (sum c_i)^2; zero exactly for Descartes quadruples."""
    return _simplify(2 * sum(c * c for c in q) - sum(q) ** 2)


def _check_index(i: int) -> int:
    if i not in (1, 2, 3, 4):
        raise ValidationError(f"generator index must be 1..4, got {i}")
    return i - 1


def reflect_root(i: int, q: Quadruple) -> Quadruple:
    """sigma_i on root coordinates: c_i -> 2*(sum of the other three) - c_i."""
    k = _check_index(i)
    vals = list(q)
    vals[k] = exact(2 * (sum(q) - q[k]) - q[k])
    return Quadruple._raw(tuple(vals))


def reflect_weight(i: int, s: WeightPoint) -> WeightPoint:
    """sigma_i on weight coordinates: s_i -> -s_i, s_j -> s_j + 2 s_i."""
    k = _check_index(i)
    si = s[k]
    vals = tuple(-si if j == k else _simplify(s[j] + 2 * si) for j in range(4))
    return tuple.__new__(WeightPoint, vals)


def apply_word(word: Iterable[int], v):
    """Apply generators in order to a Quadruple or a WeightPoint."""
    reflect = reflect_root if isinstance(v, Quadruple) else reflect_weight
    for i in word:
        v = reflect(i, v)
    return v


def to_beta(s: WeightPoint) -> BetaCoordinates:
    s1, s2, s3, s4 = s
    return BetaCoordinates(_simplify(s1 - s2 - s3 - s4), _simplify(-_half(s2 + s4)),
                           _simplify(_half(s4)), _simplify(-_half(s3 + s4)))


def from_beta(z: Sequence) -> WeightPoint:
    z0, z1, z2, z3 = z
    return WeightPoint((z0 - 2 * z1 - 2 * z2 - 2 * z3, -2 * z1 - 2 * z2,
                        -2 * z2 - 2 * z3, 2 * z2))


def pairing_nlm(beta: Quadruple) -> tuple[int, int, int]:
    """Coefficients (n, l, m) of z1, z2, z3 in -(beta, s).

    ``beta`` must lie in the span of alpha_2, alpha_3, alpha_4.

    >>> pairing_nlm(RHO)
    (1, 1, 1)
    """
    if beta[0] != 0:
        raise ValidationError("pairing_nlm needs a vector with zero alpha_1 coefficient")
    _, a, b, c = beta
    out = (exact(2 * a), exact(2 * a + 2 * b - 2 * c), exact(2 * b))
    if not all(isinstance(x, int) for x in out):
        raise ValidationError(f"{beta!r} does not pair to integer exponents")
    return out


def nlm_to_root(nlm: Sequence[int]) -> Quadruple:
    """Inverse of :func:`pairing_nlm`."""
    n, l, m = nlm
    return Quadruple((0, Fraction(n, 2), Fraction(m, 2), Fraction(n + m - l, 2)))


def reducing_index(q: Sequence) -> int | None:
    """The generator (1..4) that strictly lowers the height, if any."""
    t = sum(q)
    for k in range(4):
        if sign(2 * q[k] - t) > 0:
            return k + 1
    return None


def reduce_to_base(q: Quadruple, max_steps: int = 10**6) -> tuple[Quadruple, Word]:
    """Greedy height reduction to the base quadruple of the packing.

    Returns the base and the word (in application order) that maps ``q`` to
    it.  Ties cannot occur for defect-zero bounded quadruples; the lowest
    index is taken if they do.

    >>> reduce_to_base(Quadruple.of(-1, 2, 6, 11))
    (Quadruple(-1, 2, 2, 3), (4, 3))
    """
    if descartes_defect(q) != 0:
        raise ValidationError(f"{q} is not a Descartes quadruple (defect {descartes_defect(q)})")
    word: list[int] = []
    for _ in range(max_steps):
        if sign(sum(q)) <= 0:
            raise ReductionError(f"{q} has nonpositive height; not in a bounded packing")
        i = reducing_index(q)
        if i is None:
            return q, tuple(word)
        q = reflect_root(i, q)
        word.append(i)
    raise ReductionError(f"no base quadruple reached within {max_steps} steps")


def is_reduced(q: Sequence) -> bool:
    return reducing_index(q) is None
