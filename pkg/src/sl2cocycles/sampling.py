"""Seeded samplers for group elements and generic configurations.

Group elements are drawn through Iwasawa coordinates g = n(x) a(lambda) k, which
keeps condition numbers bounded and the determinant exactly one up to rounding.
Configurations are rejection-sampled against the genericity margins; every
rejection is tallied in an optional :class:`collections.Counter`.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .core import Field, Mat2, PairGA, ProjPoint, Vec2, torus, unipotent
from .errors import SamplingExhausted
from .spaces import GenericityConfig, generic_vec_pair

MAX_ATTEMPTS = 10**6


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 42
    trials: int = 10_000
    r_n: float = 2.0
    r_a: float = 1.0
    margins: GenericityConfig = field(default_factory=GenericityConfig)
    # sampled boundary points keep |second homogeneous coordinate| above this
    infinity_margin: float = 1e-2
    field: Field = Field.REAL
    tol: float | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.r_n < 0 or self.r_a < 0 or not self.infinity_margin > 0:
            raise ValueError("sampling bounds must be non-negative")
        object.__setattr__(self, "field", Field(self.field))


class TrialStream:
    """Scalar draws served from blocks of a seeded numpy generator.

    Trials make a few dozen scalar draws, and a numpy call per draw costs far
    more than the draw itself.  Supports the subset of the Generator API the
    samplers use.
    """

    BLOCK = 64
    __slots__ = ("_gen", "_buf", "_pos")

    def __init__(self, gen: np.random.Generator):
        self._gen = gen
        self._buf = gen.random(self.BLOCK).tolist()
        self._pos = 0

    def random(self) -> float:
        if self._pos == len(self._buf):
            self._buf = self._gen.random(self.BLOCK).tolist()
            self._pos = 0
        u = self._buf[self._pos]
        self._pos += 1
        return u

    def uniform(self, low: float = 0.0, high: float = 1.0, size: int | None = None):
        if size is None:
            return low + (high - low) * self.random()
        return [low + (high - low) * self.random() for _ in range(size)]

    def standard_normal(self, size: int | None = None):
        if size is None:
            # Box-Muller; 1 - u keeps the log argument in (0, 1]
            r = math.sqrt(-2.0 * math.log(1.0 - self.random()))
            return r * math.cos(2.0 * math.pi * self.random())
        return [self.standard_normal() for _ in range(size)]


# samplers accept either a numpy Generator or a TrialStream
Rng = "np.random.Generator | TrialStream"


def trial_rng(seed: int, index: int) -> TrialStream:
    """Independent stream for one trial, fixed by (seed, trial index) alone."""
    return TrialStream(np.random.default_rng([seed, index]))


def _tally(rejections: Counter | None, reason: str) -> None:
    if rejections is not None:
        rejections[reason] += 1


def sample_scalar(rng: Rng, bound: float, fld: Field):
    """Uniform in [-bound, bound], or in the square of that side over C."""
    if fld is Field.REAL:
        return float(rng.uniform(-bound, bound))
    re, im = rng.uniform(-bound, bound, size=2)
    return complex(re, im)


def sample_unit_scalar(rng: Rng, log_bound: float, fld: Field):
    """exp(t) * phase with t uniform in [-log_bound, log_bound]; never near 0."""
    r = math.exp(rng.uniform(-log_bound, log_bound))
    if fld is Field.REAL:
        return r if rng.random() < 0.5 else -r
    phase = rng.uniform(0.0, 2 * math.pi)
    return complex(r * math.cos(phase), r * math.sin(phase))


def sample_compact(rng: Rng, fld: Field) -> Mat2:
    """Haar-distributed element of SO(2), or of SU(2) via Hopf coordinates."""
    if fld is Field.REAL:
        theta = rng.uniform(0.0, 2 * math.pi)
        c, s = math.cos(theta), math.sin(theta)
        return Mat2(c, -s, s, c)
    eta = math.asin(math.sqrt(rng.random()))
    xi1, xi2 = rng.uniform(0.0, 2 * math.pi, size=2)
    a = math.cos(eta) * complex(math.cos(xi1), math.sin(xi1))
    b = math.sin(eta) * complex(math.cos(xi2), math.sin(xi2))
    return Mat2(a, -b.conjugate(), b, a.conjugate())


def sample_group_params(rng: Rng, cfg: SamplerConfig):
    """Return (g, x, log_lambda, k) with g = n(x) a(lambda) k."""
    x = sample_scalar(rng, cfg.r_n, cfg.field)
    t = float(rng.uniform(-cfg.r_a, cfg.r_a))
    k = sample_compact(rng, cfg.field)
    g = unipotent(x) @ torus(t, cfg.field) @ k
    return g, x, t, k


def sample_group(rng: Rng, cfg: SamplerConfig) -> Mat2:
    return sample_group_params(rng, cfg)[0]


def sample_vector(rng: Rng, fld: Field) -> Vec2:
    if fld is Field.REAL:
        v1, v2 = rng.standard_normal(2)
        return Vec2(float(v1), float(v2))
    re = rng.standard_normal(2)
    im = rng.standard_normal(2)
    return Vec2(complex(re[0], im[0]), complex(re[1], im[1]))


def sample_generic_vectors(
    rng: Rng,
    cfg: SamplerConfig,
    count: int,
    rejections: Counter | None = None,
) -> list[Vec2]:
    """``count`` vectors, pairwise generic in the relative-determinant sense."""
    out: list[Vec2] = []
    for _ in range(MAX_ATTEMPTS):
        if len(out) == count:
            return out
        v = sample_vector(rng, cfg.field)
        if all(generic_vec_pair(u, v, cfg.margins) for u in out):
            out.append(v)
        else:
            _tally(rejections, "indep_margin")
    if len(out) == count:
        return out
    raise SamplingExhausted(f"no generic set of {count} vectors after {MAX_ATTEMPTS} draws")


def sample_point(rng: Rng, cfg: SamplerConfig, rejections: Counter | None = None) -> ProjPoint:
    """Point of P^1(R) with uniform angle, kept away from infinity by margin."""
    for _ in range(MAX_ATTEMPTS):
        theta = rng.uniform(0.0, math.pi)
        p = ProjPoint(math.cos(theta), math.sin(theta))
        if abs(p.b) >= cfg.infinity_margin:
            return p
        _tally(rejections, "infinity_margin")
    raise SamplingExhausted("could not sample a finite point")


def sample_generic_points(
    rng: Rng,
    cfg: SamplerConfig,
    count: int,
    rejections: Counter | None = None,
) -> list[ProjPoint]:
    """``count`` pairwise distinct finite points of P^1(R)."""
    out: list[ProjPoint] = []
    for _ in range(MAX_ATTEMPTS):
        if len(out) == count:
            return out
        p = sample_point(rng, cfg, rejections)
        m = cfg.margins.distinct_margin
        if all(abs(p.a * q.b - p.b * q.a) >= m for q in out):
            out.append(p)
        else:
            _tally(rejections, "distinct_margin")
    if len(out) == count:
        return out
    raise SamplingExhausted(f"no distinct set of {count} points after {MAX_ATTEMPTS} draws")


def sample_generic_pairsGA(
    rng: Rng,
    cfg: SamplerConfig,
    count: int,
    rejections: Counter | None = None,
) -> list[PairGA]:
    """``count`` points of G/A whose 2 * count boundary points are all distinct."""
    pts = sample_generic_points(rng, cfg, 2 * count, rejections)
    return [PairGA(pts[2 * i], pts[2 * i + 1], distinct_margin=cfg.margins.distinct_margin)
            for i in range(count)]
