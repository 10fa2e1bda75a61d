"""SL(2, K) arithmetic for K = R or C.

Scalars are plain Python numbers: ``float`` over the reals, ``complex`` over
the complex numbers.  A :class:`Mat2` is over the complex field as soon as one
of its entries is a ``complex`` instance (even with zero imaginary part), so
the field never changes silently under products.

Points of P^1(R) are stored as normalized homogeneous coordinates, which lets
``inf = [1:0]`` go through Moebius maps and cross ratios without special cases.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    CoincidentPoints,
    Degenerate,
    DegenerateTriple,
    DependentPair,
    DetDrift,
    FieldMismatch,
    InfiniteCoordinate,
    NearZeroParameter,
    ZeroVector,
)

DET_TOL = 1e-9
RECON_TOL = 1e-10
NONZERO_MARGIN = 1e-8
INDEP_MARGIN = 1e-6
DISTINCT_MARGIN = 1e-6
ORIENTATION_MARGIN = 1e-6
# points with |second homogeneous coordinate| below this are pushed into the
# affine chart by a rotation before chart formulas are applied
CHART_MARGIN = 1e-3
CHART_ANGLES = (0.37, 1.13, 2.21, 2.83)


class Field(str, Enum):
    REAL = "real"
    COMPLEX = "complex"

    def scalar(self, z) -> float | complex:
        """Coerce ``z`` into this field, rejecting non-finite values."""
        if self is Field.REAL:
            if isinstance(z, complex):
                if z.imag != 0.0:
                    raise FieldMismatch(f"{z!r} is not real")
                z = z.real
            z = float(z)
            if not math.isfinite(z):
                raise ValueError(f"non-finite scalar {z!r}")
            return z
        z = complex(z)
        if not cmath.isfinite(z):
            raise ValueError(f"non-finite scalar {z!r}")
        return z


def field_of(*values) -> Field:
    if any(isinstance(v, complex) for v in values):
        return Field.COMPLEX
    return Field.REAL


def _coerce(values):
    types = {type(v) for v in values}
    if types == {float} or types == {complex}:
        total = sum(values)
        # inf and nan are the only values with total - total != 0
        if total - total == 0:
            return (Field.REAL if float in types else Field.COMPLEX), values
    field = field_of(*values)
    return field, tuple(field.scalar(v) for v in values)


def conj(z):
    return z.conjugate() if isinstance(z, complex) else z


def hermitian(u: Vec2, v: Vec2):
    """<u, v> = u1 conj(v1) + u2 conj(v2), linear in the first slot."""
    return u.v1 * conj(v.v1) + u.v2 * conj(v.v2)


class Mat2:
    """Immutable 2x2 matrix of determinant one."""

    __slots__ = ("a11", "a12", "a21", "a22", "field")

    def __init__(self, a11, a12, a21, a22, *, det_tol: float = DET_TOL):
        t = type(a11)
        if (t is float or t is complex) and type(a12) is t and type(a21) is t and type(a22) is t:
            total = a11 + a12 + a21 + a22
            if total - total != 0:
                raise ValueError("non-finite matrix entry")
            field = Field.REAL if t is float else Field.COMPLEX
        else:
            field, (a11, a12, a21, a22) = _coerce((a11, a12, a21, a22))
        det = a11 * a22 - a12 * a21
        if abs(det - 1.0) > det_tol:
            raise DetDrift(f"|det - 1| = {abs(det - 1.0):.3e} exceeds {det_tol:.1e}")
        object.__setattr__(self, "a11", a11)
        object.__setattr__(self, "a12", a12)
        object.__setattr__(self, "a21", a21)
        object.__setattr__(self, "a22", a22)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Mat2 is immutable")

    @classmethod
    def identity(cls, field: Field = Field.REAL) -> Mat2:
        one, zero = field.scalar(1), field.scalar(0)
        return cls(one, zero, zero, one)

    @classmethod
    def from_rows(cls, rows) -> Mat2:
        (a11, a12), (a21, a22) = rows
        return cls(a11, a12, a21, a22)

    @property
    def entries(self) -> tuple:
        return (self.a11, self.a12, self.a21, self.a22)

    def det(self):
        return self.a11 * self.a22 - self.a12 * self.a21

    def __matmul__(self, other: Mat2) -> Mat2:
        if not isinstance(other, Mat2):
            return NotImplemented
        return mul(self, other)

    def inverse(self) -> Mat2:
        # adjugate; exact inverse for det 1 up to the checked drift
        return Mat2(self.a22, -self.a12, -self.a21, self.a11)

    def adjoint(self) -> Mat2:
        return Mat2(conj(self.a11), conj(self.a21), conj(self.a12), conj(self.a22))

    def apply(self, v: Vec2) -> Vec2:
        return Vec2(self.a11 * v.v1 + self.a12 * v.v2, self.a21 * v.v1 + self.a22 * v.v2)

    def frobenius(self) -> float:
        return math.sqrt(sum(abs(e) ** 2 for e in self.entries))

    def distance(self, other: Mat2) -> float:
        """Frobenius norm of the difference."""
        return math.sqrt(sum(abs(x - y) ** 2 for x, y in zip(self.entries, other.entries)))

    def to_numpy(self) -> np.ndarray:
        dtype = complex if self.field is Field.COMPLEX else float
        return np.array([[self.a11, self.a12], [self.a21, self.a22]], dtype=dtype)

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Mat2([[{self.a11!r}, {self.a12!r}], [{self.a21!r}, {self.a22!r}]])"


class Vec2:
    """Nonzero vector of K^2, i.e. a point of G/N."""

    __slots__ = ("v1", "v2", "field")

    def __init__(self, v1, v2, *, nonzero_margin: float = NONZERO_MARGIN):
        t = type(v1)
        if (t is float or t is complex) and type(v2) is t and (v1 + v2) - (v1 + v2) == 0:
            field = Field.REAL if t is float else Field.COMPLEX
        else:
            field, (v1, v2) = _coerce((v1, v2))
        if abs(v1) ** 2 + abs(v2) ** 2 < nonzero_margin:
            raise ZeroVector(f"|v|^2 below {nonzero_margin:.1e}", margin="nonzero_margin")
        object.__setattr__(self, "v1", v1)
        object.__setattr__(self, "v2", v2)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Vec2 is immutable")

    @classmethod
    def e1(cls, field: Field = Field.REAL) -> Vec2:
        return cls(field.scalar(1), field.scalar(0))

    @classmethod
    def e2(cls, field: Field = Field.REAL) -> Vec2:
        return cls(field.scalar(0), field.scalar(1))

    def norm_sq(self) -> float:
        return abs(self.v1) ** 2 + abs(self.v2) ** 2

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def scale(self, z) -> Vec2:
        return Vec2(z * self.v1, z * self.v2)

    def distance(self, other: Vec2) -> float:
        return math.hypot(abs(self.v1 - other.v1), abs(self.v2 - other.v2))

    def __iter__(self):
        return iter((self.v1, self.v2))

    def __eq__(self, other):
        return isinstance(other, Vec2) and (self.v1, self.v2) == (other.v1, other.v2)

    def __hash__(self):
        return hash((self.v1, self.v2))

    def __repr__(self):
        return f"Vec2({self.v1!r}, {self.v2!r})"


class ProjPoint:
    """Point [a:b] of P^1(R), normalized to a^2 + b^2 = 1, first nonzero entry > 0."""

    __slots__ = ("a", "b")

    def __init__(self, a: float, b: float):
        a, b = float(a), float(b)
        r = math.hypot(a, b)
        if not math.isfinite(r):
            raise ValueError("non-finite homogeneous coordinates")
        if r == 0.0:
            raise ZeroVector("[0:0] is not a point of P^1", margin="nonzero_margin")
        a, b = a / r, b / r
        if a < 0.0 or (a == 0.0 and b < 0.0):
            a, b = -a, -b
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @classmethod
    def at(cls, x: float) -> ProjPoint:
        """The point x of R, or infinity for ``math.inf``."""
        if math.isinf(x):
            return cls(1.0, 0.0)
        return cls(x, 1.0)

    @classmethod
    def infinity(cls) -> ProjPoint:
        return cls(1.0, 0.0)

    @property
    def affine(self) -> float:
        return math.inf if self.b == 0.0 else self.a / self.b

    def in_chart(self, chart_margin: float = CHART_MARGIN) -> bool:
        return abs(self.b) >= chart_margin

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and (self.a, self.b) == (other.a, other.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        x = self.affine
        return "ProjPoint(inf)" if math.isinf(x) else f"ProjPoint({x!r})"


def hdet(p: ProjPoint, q: ProjPoint) -> float:
    """Signed determinant of the homogeneous coordinate pairs of p and q."""
    return p.a * q.b - p.b * q.a


def proj_distance(p: ProjPoint, q: ProjPoint) -> float:
    return abs(hdet(p, q))


class PairGA:
    """Ordered pair of distinct points of P^1(R): a point of G/A."""

    __slots__ = ("p", "q")

    def __init__(self, p: ProjPoint, q: ProjPoint, *, distinct_margin: float = DISTINCT_MARGIN):
        if abs(p.a * q.b - p.b * q.a) < distinct_margin:
            raise CoincidentPoints(f"{p!r} and {q!r} closer than {distinct_margin:.1e}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("PairGA is immutable")

    @classmethod
    def at(cls, x: float, y: float) -> PairGA:
        return cls(ProjPoint.at(x), ProjPoint.at(y))

    @classmethod
    def basepoint(cls) -> PairGA:
        return cls(ProjPoint.infinity(), ProjPoint.at(0.0))

    def __iter__(self):
        return iter((self.p, self.q))

    def __eq__(self, other):
        return isinstance(other, PairGA) and (self.p, self.q) == (other.p, other.q)

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"PairGA({self.p!r}, {self.q!r})"


@dataclass(frozen=True)
class IwasawaNAK:
    n: float | complex
    log_lambda: float
    k: Mat2

    def reconstruct(self) -> Mat2:
        return unipotent(self.n) @ torus(self.log_lambda, self.k.field) @ self.k


def mul(g: Mat2, h: Mat2) -> Mat2:
    return Mat2(
        g.a11 * h.a11 + g.a12 * h.a21,
        g.a11 * h.a12 + g.a12 * h.a22,
        g.a21 * h.a11 + g.a22 * h.a21,
        g.a21 * h.a12 + g.a22 * h.a22,
    )


def unipotent(x) -> Mat2:
    """[[1, x], [0, 1]] in N."""
    field = field_of(x)
    return Mat2(field.scalar(1), x, field.scalar(0), field.scalar(1))


def torus(log_lambda: float, field: Field = Field.REAL) -> Mat2:
    """diag(lambda, 1/lambda) in A with lambda = exp(log_lambda)."""
    lam = math.exp(log_lambda)
    zero = field.scalar(0)
    return Mat2(field.scalar(lam), zero, zero, field.scalar(1.0 / lam))


def rotation(theta: float) -> Mat2:
    c, s = math.cos(theta), math.sin(theta)
    return Mat2(c, -s, s, c)


def iwasawa(g: Mat2, *, nonzero_margin: float = NONZERO_MARGIN) -> IwasawaNAK:
    """Factor g = n a k through a LAPACK QR decomposition.

    This deliberately avoids the closed-form projections so it can serve as
    their oracle.  Writing J for the antidiagonal swap, QR of (J g)^* gives
    g = (J R^* J)(J Q^*) with J R^* J upper triangular; the diagonal phases are
    then moved from the triangular factor into the unitary one.
    """
    if abs(g.a21) ** 2 + abs(g.a22) ** 2 < nonzero_margin:
        raise Degenerate("second row of g is numerically zero")
    A = g.to_numpy()
    J = np.array([[0.0, 1.0], [1.0, 0.0]])
    Q, R = np.linalg.qr((J @ A).conj().T)
    U = J @ R.conj().T @ J
    W = J @ Q.conj().T
    phases = np.diag(U) / np.abs(np.diag(U))
    U = U / phases[np.newaxis, :]
    W = W * phases[:, np.newaxis]
    lam, inv_lam = U[0, 0].real, U[1, 1].real
    n = U[0, 1] / inv_lam
    if g.field is Field.REAL:
        n = float(n.real)
        W = W.real
    else:
        n = complex(n)
    k = Mat2(*(complex(e) if g.field is Field.COMPLEX else float(e) for e in W.ravel()))
    return IwasawaNAK(n=n, log_lambda=0.5 * (math.log(lam) - math.log(inv_lam)), k=k)


def project_N(g: Mat2):
    """Closed-form N-projection: <row1, row2> / |row2|^2."""
    return (g.a11 * conj(g.a21) + g.a12 * conj(g.a22)) / (abs(g.a21) ** 2 + abs(g.a22) ** 2)


def project_A(g: Mat2) -> float:
    """log of lambda = 1/|row2| for the A-projection diag(lambda, 1/lambda)."""
    if g.field is not Field.REAL:
        raise FieldMismatch("the A-projection formula is only stated over R")
    return -0.5 * math.log(g.a21 * g.a21 + g.a22 * g.a22)


def delta(lam, *, nonzero_margin: float = NONZERO_MARGIN) -> Mat2:
    """[[0, -1/lam], [lam, 0]], which sends e1 to lam * e2."""
    if abs(lam) < nonzero_margin:
        raise NearZeroParameter(f"|lambda| = {abs(lam):.3e} too small", margin="nonzero_margin")
    zero = field_of(lam).scalar(0)
    return Mat2(zero, -1 / lam, lam, zero)


def det_pair(u: Vec2, v: Vec2):
    """Determinant of the matrix with columns (u | v)."""
    return u.v1 * v.v2 - u.v2 * v.v1


def transporter_vectors(u: Vec2, v: Vec2, *, indep_margin: float = INDEP_MARGIN) -> Mat2:
    """The unique g_{u,v} with g_{u,v}(e1, d e2) = (u, v), d = det(u|v)."""
    d = det_pair(u, v)
    if abs(d) < indep_margin:
        raise DependentPair(f"|det(u|v)| = {abs(d):.3e} below {indep_margin:.1e}")
    return Mat2(u.v1, v.v1 / d, u.v2, v.v2 / d)


def mobius(g: Mat2, p: ProjPoint) -> ProjPoint:
    if g.field is not Field.REAL:
        raise FieldMismatch("the boundary action is on P^1(R)")
    return ProjPoint(g.a11 * p.a + g.a12 * p.b, g.a21 * p.a + g.a22 * p.b)


def _chart_rotation(points, chart_margin: float = CHART_MARGIN) -> Mat2 | None:
    """A fixed rotation moving every point into the affine chart, or None if
    they already are."""
    if all(p.in_chart(chart_margin) for p in points):
        return None
    for theta in CHART_ANGLES:
        r = rotation(theta)
        if all(mobius(r, p).in_chart(chart_margin) for p in points):
            return r
    raise InfiniteCoordinate("no chart rotation brings all points into the affine chart")


def _pair_in_chart(x: float, y: float) -> Mat2:
    return Mat2(x, -y / (y - x), 1.0, -1.0 / (y - x))


def transporter_pair(
    x: ProjPoint, y: ProjPoint, *, distinct_margin: float = DISTINCT_MARGIN
) -> Mat2:
    """An element g_{x,y} with g_{x,y}(inf, 0) = (x, y), defined up to right A."""
    if proj_distance(x, y) < distinct_margin:
        raise CoincidentPoints(f"{x!r} and {y!r} coincide")
    r = _chart_rotation((x, y))
    if r is None:
        return _pair_in_chart(x.affine, y.affine)
    xr, yr = mobius(r, x), mobius(r, y)
    return r.inverse() @ _pair_in_chart(xr.affine, yr.affine)


def _orientation_value(x1: ProjPoint, x2: ProjPoint, y1: ProjPoint) -> float:
    # (y1 - x2) / ((x2 - x1)(y1 - x1)) written projectively; each point enters
    # an even number of times, so the sign is chart independent
    return hdet(y1, x2) / (hdet(x2, x1) * hdet(y1, x1))


def _check_distinct(points, distinct_margin: float, error=CoincidentPoints):
    n = len(points)
    for i in range(n):
        pa, pb = points[i].a, points[i].b
        for j in range(i + 1, n):
            q = points[j]
            if abs(pa * q.b - pb * q.a) < distinct_margin:
                raise error(f"points {i} and {j} closer than {distinct_margin:.1e}",
                            margin="distinct_margin")


def orientation(
    x1: ProjPoint,
    x2: ProjPoint,
    y1: ProjPoint,
    *,
    distinct_margin: float = DISTINCT_MARGIN,
    orientation_margin: float = ORIENTATION_MARGIN,
) -> int:
    """+1 when (x1, x2, y1) is carried to (inf, 0, 1), -1 when to (inf, 0, -1)."""
    _check_distinct((x1, x2, y1), distinct_margin)
    c2 = _orientation_value(x1, x2, y1)
    if abs(c2) < orientation_margin:
        raise DegenerateTriple(f"|c^2| = {abs(c2):.3e} below {orientation_margin:.1e}")
    return 1 if c2 > 0 else -1


def transporter_triple(
    x1: ProjPoint,
    x2: ProjPoint,
    y1: ProjPoint,
    *,
    distinct_margin: float = DISTINCT_MARGIN,
    orientation_margin: float = ORIENTATION_MARGIN,
    chart_margin: float = CHART_MARGIN,
) -> tuple[Mat2, int]:
    """g with g(inf, 0, +-1) = (x1, x2, y1), together with the sign used.

    Only defined in the affine chart; callers rotate first if needed.
    """
    for p in (x1, x2, y1):
        if not p.in_chart(chart_margin):
            raise InfiniteCoordinate(f"{p!r} is outside the affine chart")
    _check_distinct((x1, x2, y1), distinct_margin)
    a, b, c = x1.affine, x2.affine, y1.affine
    c2 = (c - b) / ((b - a) * (c - a))
    if abs(c2) < orientation_margin:
        raise DegenerateTriple(f"|c^2| = {abs(c2):.3e} below {orientation_margin:.1e}")
    if c2 > 0:
        sign = 1
    else:
        c2 = (b - c) / ((a - b) * (a - c))
        sign = -1
    s = math.sqrt(c2)
    g = Mat2(s * a, -b / (s * (b - a)), s, -1.0 / (s * (b - a)))
    return g, sign


def cross_ratio(
    a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint,
    *, distinct_margin: float = DISTINCT_MARGIN,
) -> float:
    """Cross ratio normalized so that [inf, 0, 1, t] = t."""
    _check_distinct((a, b, c, d), distinct_margin)
    return (hdet(a, c) * hdet(b, d)) / (hdet(b, c) * hdet(a, d))
