"""The homogeneous spaces G/N = K^2 minus 0 and G/A = distinct pairs in P^1(R).

Genericity is a margin predicate: the closed-form cocycles are only defined
almost everywhere, and the margins keep inputs away from the singular sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import (
    DISTINCT_MARGIN,
    INDEP_MARGIN,
    ORIENTATION_MARGIN,
    Mat2,
    PairGA,
    Vec2,
    conj,
    cross_ratio,
    det_pair,
    orientation,
    proj_distance,
)
from .errors import DegenerateConfiguration, DependentPair, ZeroVector


@dataclass(frozen=True)
class GenericityConfig:
    indep_margin: float = INDEP_MARGIN
    distinct_margin: float = DISTINCT_MARGIN
    orientation_margin: float = ORIENTATION_MARGIN

    def __post_init__(self):
        for name in ("indep_margin", "distinct_margin", "orientation_margin"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


DEFAULT_GENERICITY = GenericityConfig()


@dataclass(frozen=True)
class OrbitInvariantGA:
    """Orbit of a generic pair of pairs: it contains exactly one
    ((inf, 0), (sign, b))."""

    sign: int
    b: float


def generic_vec_pair(u: Vec2, v: Vec2, cfg: GenericityConfig = DEFAULT_GENERICITY) -> bool:
    """Relative linear independence: |det(u|v)| >= margin * |u| * |v|."""
    return abs(det_pair(u, v)) >= cfg.indep_margin * u.norm() * v.norm()


def orbit_parameter_N(u: Vec2, v: Vec2, cfg: GenericityConfig = DEFAULT_GENERICITY):
    """The d with (u, v) in the orbit of (e1, d e2); G-invariant since det g = 1."""
    if not generic_vec_pair(u, v, cfg):
        raise DependentPair(f"{u!r} and {v!r} are numerically dependent")
    return det_pair(u, v)


def generic_pair_of_pairs(x: PairGA, y: PairGA, cfg: GenericityConfig = DEFAULT_GENERICITY) -> bool:
    points = (x.p, x.q, y.p, y.q)
    return all(proj_distance(p, q) >= cfg.distinct_margin for p, q in combinations(points, 2))


def orbit_invariant_GA(
    x: PairGA, y: PairGA, cfg: GenericityConfig = DEFAULT_GENERICITY
) -> OrbitInvariantGA:
    """Orientation of (x1, x2, y1) and the position b of y2 in the normalized
    representative (inf, 0, sign, b).

    With the cross ratio normalized by [inf, 0, 1, t] = t this gives
    b = sign * [x1, x2, y1, y2].
    """
    if not generic_pair_of_pairs(x, y, cfg):
        raise DegenerateConfiguration("the four points are not pairwise distinct")
    sign = orientation(
        x.p, x.q, y.p,
        distinct_margin=cfg.distinct_margin,
        orientation_margin=cfg.orientation_margin,
    )
    b = cross_ratio(x.p, x.q, y.p, y.q, distinct_margin=cfg.distinct_margin)
    return OrbitInvariantGA(sign=sign, b=sign * b)


def transporter_to_GN_point(v: Vec2) -> Mat2:
    """h_v with h_v e1 = v; unique up to right multiplication by N."""
    r = v.norm_sq()
    if r == 0.0:
        raise ZeroVector("cannot transport e1 to the zero vector")
    return Mat2(v.v1, -conj(v.v2) / r, v.v2, conj(v.v1) / r)
