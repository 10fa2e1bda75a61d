"""Explicit cocycles in the kernel of the evaluation map for SL(2, K).

Two families are implemented, each both as the diagram chase
alpha_G -> beta -> omega = d_right(beta) and in closed form:

* L = N over K = R or C, on triples of vectors of K^2 minus 0;
* L = A over R, on triples of ordered pairs of boundary points.

The closed forms are only defined on generic configurations; degenerate ones
raise a :class:`~sl2cocycles.errors.GenericityError` subclass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .cochains import Cochain, Space, d_right
from .core import (
    Field,
    Mat2,
    PairGA,
    ProjPoint,
    Vec2,
    _chart_rotation,
    cross_ratio,
    delta,
    det_pair,
    hermitian,
    mobius,
    project_A,
    project_N,
    proj_distance,
    transporter_pair,
    transporter_triple,
    transporter_vectors,
)
from .errors import DegenerateConfiguration, DependentPair, GenericityError
from .spaces import DEFAULT_GENERICITY, GenericityConfig, generic_pair_of_pairs, generic_vec_pair

LOG_FLOOR = 1e-12


@dataclass(frozen=True)
class NFunctional:
    """R-linear form on n = K: z -> c_re Re z + c_im Im z."""

    c_re: float
    c_im: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.c_re) and math.isfinite(self.c_im)):
            raise ValueError("functional coefficients must be finite")

    def __call__(self, z) -> float:
        if isinstance(z, complex):
            return self.c_re * z.real + self.c_im * z.imag
        return self.c_re * z

    def __add__(self, other: NFunctional) -> NFunctional:
        return NFunctional(self.c_re + other.c_re, self.c_im + other.c_im)

    def __rmul__(self, t: float) -> NFunctional:
        return NFunctional(t * self.c_re, t * self.c_im)


@dataclass(frozen=True)
class AFunctional:
    """Linear form on a = R, evaluated on log(lambda)."""

    c: float

    def __post_init__(self):
        if not math.isfinite(self.c):
            raise ValueError("functional coefficient must be finite")

    def __call__(self, log_lambda: float) -> float:
        return self.c * log_lambda

    def __add__(self, other: AFunctional) -> AFunctional:
        return AFunctional(self.c + other.c)

    def __rmul__(self, t: float) -> AFunctional:
        return AFunctional(t * self.c)


def _safe_log(x: float) -> float:
    if not x > LOG_FLOOR:
        raise DegenerateConfiguration(f"log argument {x:.3e} below {LOG_FLOOR:.0e}")
    return math.log(x)


# ---------------------------------------------------------------------------
# L = N


def alpha_G_N(phi: NFunctional, g0: Mat2, g1: Mat2) -> float:
    """phi(pi_N(g1)) - phi(pi_N(g0)); left-N-invariant."""
    return phi(project_N(g1)) - phi(project_N(g0))


def beta_N_chase(phi: NFunctional, g: Mat2, lam, *, delta_rep: Mat2 | None = None) -> float:
    """beta(g)(lam) = alpha_G(delta_{-lam}, delta_{-lam} g) - alpha_G(e, g).

    ``delta_rep`` may be any element sending e1 to lam e2 (a right-N coset
    representative of delta_lam); its inverse plays the role of delta_{-lam}.
    """
    d = delta(lam) if delta_rep is None else delta_rep
    m = d.inverse()
    e = Mat2.identity(g.field)
    return alpha_G_N(phi, m, m @ g) - alpha_G_N(phi, e, g)


def beta_N_closed(
    phi: NFunctional, u: Vec2, v: Vec2, cfg: GenericityConfig = DEFAULT_GENERICITY
) -> float:
    """beta(e)(u, v) = phi(<u/d, v/|v|^2>) + phi(<v/d, u/|u|^2>), d = det(u|v)."""
    if not generic_vec_pair(u, v, cfg):
        raise DependentPair(f"{u!r} and {v!r} are numerically dependent")
    d = det_pair(u, v)
    return phi(hermitian(u, v) / (d * v.norm_sq())) + phi(hermitian(v, u) / (d * u.norm_sq()))


def beta_N_cochain(phi: NFunctional) -> Cochain:
    """beta as an element of C^{0,2}, induced through the transporters g_{u,v}."""

    def ev(gs, xs):
        u, v = xs
        h = transporter_vectors(u, v, indep_margin=0.0)
        return beta_N_chase(phi, h.inverse() @ gs[0], det_pair(u, v))

    return Cochain(0, 2, Space.GN, ev)


def omega_N(
    phi: NFunctional, v0: Vec2, v1: Vec2, v2: Vec2, cfg: GenericityConfig = DEFAULT_GENERICITY
) -> float:
    """The N-cocycle on triples of vectors:

        sum_{i<j} (-1)^{i+j} [phi(<v_i/d_ij, v_j/|v_j|^2>) + phi(<v_j/d_ij, v_i/|v_i|^2>)]
    """
    vs = (v0, v1, v2)
    total = 0.0
    for i, j in combinations(range(3), 2):
        vi, vj = vs[i], vs[j]
        if not generic_vec_pair(vi, vj, cfg):
            raise DependentPair(f"face ({i}, {j}) is numerically dependent")
        d = det_pair(vi, vj)
        term = phi(hermitian(vi, vj) / (d * vj.norm_sq())) + phi(hermitian(vj, vi) / (d * vi.norm_sq()))
        total += (-1) ** (i + j) * term
    return total


def omega_N_chase(
    phi: NFunctional, v0: Vec2, v1: Vec2, v2: Vec2, g: Mat2 | None = None
) -> float:
    """d_right(beta) evaluated at (g; v0, v1, v2); g defaults to the identity."""
    if g is None:
        g = Mat2.identity(v0.field)
    return d_right(beta_N_cochain(phi))((g,), (v0, v1, v2))


# ---------------------------------------------------------------------------
# L = A


def alpha_G_A(phi: AFunctional, g0: Mat2, g1: Mat2) -> float:
    """phi(log lambda(g1)) - phi(log lambda(g0)); left-A-invariant."""
    return phi(project_A(g1)) - phi(project_A(g0))


def _check_orbit_parameter(sign: int, b: float, margin: float) -> None:
    if sign not in (1, -1):
        raise ValueError("orientation sign must be +1 or -1")
    if not math.isfinite(b):
        raise DegenerateConfiguration(f"b = {b!r} is not finite")
    # projective distances of [b:1] to inf, 0 and sign
    r = math.hypot(b, 1.0)
    if min(1.0, abs(b), abs(b - sign) / math.sqrt(2.0)) < margin * r:
        raise DegenerateConfiguration(f"b = {b!r} collides with inf, 0 or {sign}")


def beta_A_chase(
    phi: AFunctional,
    g: Mat2,
    sign: int,
    b: float,
    *,
    transporter: Mat2 | None = None,
    distinct_margin: float = DEFAULT_GENERICITY.distinct_margin,
) -> float:
    """beta(g)(+-1, b) = alpha_G(t^{-1}, t^{-1} g) - alpha_G(e, g) with t = g_{+-1,b}.

    ``transporter`` may replace g_{+-1,b} by any element of its right-A coset.
    """
    _check_orbit_parameter(sign, b, distinct_margin)
    t = transporter_pair(ProjPoint.at(float(sign)), ProjPoint.at(b)) if transporter is None else transporter
    tinv = t.inverse()
    e = Mat2.identity(Field.REAL)
    return alpha_G_A(phi, tinv, tinv @ g) - alpha_G_A(phi, e, g)


def triple_transporter(x1: ProjPoint, x2: ProjPoint, y1: ProjPoint, *extra: ProjPoint):
    """g_{x1,x2,y1} after moving every given point into the affine chart.

    Returns (g, sign) with g(inf, 0, sign) = (x1, x2, y1).  The rotation is
    undone on the left, so the result is a transporter for the original points.
    """
    r = _chart_rotation((x1, x2, y1) + extra)
    if r is None:
        return transporter_triple(x1, x2, y1)
    g, sign = transporter_triple(mobius(r, x1), mobius(r, x2), mobius(r, y1))
    return r.inverse() @ g, sign


def orbit_representative_GA(x: PairGA, y: PairGA) -> tuple[Mat2, int, float]:
    """(t, sign, b) with t((inf, 0), (sign, b)) = (x, y)."""
    t, sign = triple_transporter(x.p, x.q, y.p, y.q)
    b = mobius(t.inverse(), y.q).affine
    return t, sign, b


def beta_A_cochain(phi: AFunctional) -> Cochain:
    """beta as an element of C^{0,2} on G/A, induced through g_{x1,x2,y1}."""

    def ev(gs, xs):
        x, y = xs
        t, sign, b = orbit_representative_GA(x, y)
        return beta_A_chase(phi, t.inverse() @ gs[0], sign, b, distinct_margin=0.0)

    return Cochain(0, 2, Space.GA, ev)


def beta_A_closed(
    phi: AFunctional,
    x: PairGA,
    y: PairGA,
    cfg: GenericityConfig = DEFAULT_GENERICITY,
    *,
    log_scale: float = 0.5,
) -> float:
    """(1/2) phi(log(2 (x1^2+1)(x2-y1)^2 / ((y1^2+1)(x1-x2)^2))); y2 does not enter.

    The formula lives in the affine chart.  Points near infinity are rotated
    into it first, which changes nothing because beta(e) is SO(2)-invariant.
    ``log_scale`` replaces the factor 1/2 and exists for mutation testing only.
    """
    if not generic_pair_of_pairs(x, y, cfg):
        raise DegenerateConfiguration("the four points are not pairwise distinct")
    pts = (x.p, x.q, y.p, y.q)
    r = _chart_rotation(pts)
    if r is not None:
        pts = tuple(mobius(r, p) for p in pts)
    x1, x2, y1 = (p.affine for p in pts[:3])
    arg = 2.0 * (x1 * x1 + 1.0) * (x2 - y1) ** 2 / ((y1 * y1 + 1.0) * (x1 - x2) ** 2)
    return log_scale * phi(_safe_log(arg))


def _six_points(x: PairGA, y: PairGA, z: PairGA, margin: float):
    pts = (x.p, x.q, y.p, y.q, z.p, z.q)
    for i, j in combinations(range(6), 2):
        if proj_distance(pts[i], pts[j]) < margin:
            raise DegenerateConfiguration(f"boundary points {i} and {j} coincide")
    return pts


def omega_A(
    phi: AFunctional,
    x: PairGA,
    y: PairGA,
    z: PairGA,
    cfg: GenericityConfig = DEFAULT_GENERICITY,
    *,
    convention: str = "derivation",
) -> float:
    """-(1/2) phi(log|[x2, y1, y2, z1] - 1|).

    ``convention="theorem"`` gives the +(1/2) normalization, which differs by
    a global sign only.
    """
    _six_points(x, y, z, cfg.distinct_margin)
    cr = cross_ratio(x.q, y.p, y.q, z.p, distinct_margin=cfg.distinct_margin)
    value = 0.5 * phi(_safe_log(abs(cr - 1.0)))
    if convention == "derivation":
        return -value
    if convention == "theorem":
        return value
    raise ValueError(f"unknown convention {convention!r}")


def omega_A_beta_sum(
    phi: AFunctional, x: PairGA, y: PairGA, z: PairGA, cfg: GenericityConfig = DEFAULT_GENERICITY
) -> float:
    """-beta(e)(y, z) + beta(e)(x, z) - beta(e)(x, y) from the closed beta.

    This is d_right(beta)(e) exactly.  It equals 2 * omega_A - (phi(log 2))/2,
    i.e. twice the derivation-convention omega_A shifted by a constant; both
    are G-invariant cocycles.
    """
    _six_points(x, y, z, cfg.distinct_margin)
    return (
        -beta_A_closed(phi, y, z, cfg)
        + beta_A_closed(phi, x, z, cfg)
        - beta_A_closed(phi, x, y, cfg)
    )


def omega_A_chase(phi: AFunctional, x: PairGA, y: PairGA, z: PairGA, g: Mat2 | None = None) -> float:
    """d_right(beta) evaluated at (g; x, y, z) through the chase."""
    if g is None:
        g = Mat2.identity(Field.REAL)
    return d_right(beta_A_cochain(phi))((g,), (x, y, z))


__all__ = [
    "AFunctional",
    "GenericityError",
    "NFunctional",
    "alpha_G_A",
    "alpha_G_N",
    "beta_A_chase",
    "beta_A_closed",
    "beta_A_cochain",
    "beta_N_chase",
    "beta_N_closed",
    "beta_N_cochain",
    "omega_A",
    "omega_A_beta_sum",
    "omega_A_chase",
    "omega_N",
    "omega_N_chase",
    "orbit_representative_GA",
    "triple_transporter",
]
