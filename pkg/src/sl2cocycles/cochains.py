"""Numerical cochains of the bicomplex C^{p,q} and its two differentials.

A cochain of bidegree (p, q) is an evaluator taking p + 1 group elements and q
points of the homogeneous space.  Identities between cochains are checked
pointwise on sampled generic inputs; nothing is tabulated.

The horizontal differential carries the weight (-1)^{p+1}.  With it the two
differentials anticommute, so their sum squares to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Sequence

import numpy as np

from .core import Field, Mat2, PairGA, ProjPoint, Vec2, mobius, torus, transporter_pair, unipotent
from .errors import NotInvariant
from .sampling import SamplerConfig, sample_group, sample_scalar
from .spaces import transporter_to_GN_point

INVARIANCE_CHECKS = 16
INVARIANCE_TOL = 1e-9


class Space(str, Enum):
    GN = "GN"
    GA = "GA"


@dataclass(frozen=True)
class Cochain:
    p: int
    q: int
    space: Space
    eval: Callable[[tuple, tuple], float]

    def __call__(self, gs: Sequence[Mat2], xs: Sequence[Any] = ()) -> float:
        gs, xs = tuple(gs), tuple(xs)
        if len(gs) != self.p + 1 or len(xs) != self.q:
            raise TypeError(
                f"C^({self.p},{self.q}) cochain takes {self.p + 1} group and {self.q} "
                f"space arguments, got {len(gs)} and {len(xs)}"
            )
        return self.eval(gs, xs)


def _omit(seq: tuple, i: int) -> tuple:
    return seq[:i] + seq[i + 1:]


def coboundary_simplicial(f: Callable[..., float], points: Sequence) -> float:
    """sum_i (-1)^i f(points with the i-th omitted)."""
    points = tuple(points)
    return sum((-1) ** i * f(*_omit(points, i)) for i in range(len(points)))


def d_up(c: Cochain) -> Cochain:
    """Homogeneous differential in the group variables, C^{p,q} -> C^{p+1,q}."""

    def ev(gs, xs):
        return sum((-1) ** i * c.eval(_omit(gs, i), xs) for i in range(len(gs)))

    return Cochain(c.p + 1, c.q, c.space, ev)


def d_right(c: Cochain, *, flip_sign: bool = False) -> Cochain:
    """Differential in the space variables, C^{p,q} -> C^{p,q+1}.

    ``flip_sign`` drops the (-1)^{p+1} weight's sign; it exists only so the
    verification suites can be shown to catch that mistake.
    """
    sign = (-1) ** (c.p + 1)
    if flip_sign:
        sign = -sign

    def ev(gs, xs):
        return sign * sum((-1) ** i * c.eval(gs, _omit(xs, i)) for i in range(len(xs)))

    return Cochain(c.p, c.q + 1, c.space, ev)


def act(g: Mat2, x):
    """Action of g on a point of G/N (a Vec2) or of G/A (a PairGA)."""
    if isinstance(x, Vec2):
        return g.apply(x)
    if isinstance(x, PairGA):
        return PairGA(mobius(g, x.p), mobius(g, x.q), distinct_margin=0.0)
    if isinstance(x, ProjPoint):
        return mobius(g, x)
    raise TypeError(f"no G-action defined on {type(x).__name__}")


def check_left_invariance(
    f: Callable[..., float],
    p: int,
    subgroup: str,
    field: Field = Field.REAL,
    *,
    checks: int = INVARIANCE_CHECKS,
    tol: float = INVARIANCE_TOL,
    seed: int = 0,
) -> None:
    """Randomized test that f(l g_0, ..., l g_p) = f(g_0, ..., g_p) for l in N or A.

    Raises :class:`NotInvariant` with the worst residual otherwise.
    """
    rng = np.random.default_rng(seed)
    cfg = SamplerConfig(field=field)
    for _ in range(checks):
        gs = [sample_group(rng, cfg) for _ in range(p + 1)]
        if subgroup == "N":
            ell = unipotent(sample_scalar(rng, 3.0, field))
        elif subgroup == "A":
            ell = torus(float(rng.uniform(-2.0, 2.0)), field)
        else:
            raise ValueError(f"unknown subgroup {subgroup!r}")
        base = f(*gs)
        moved = f(*(ell @ g for g in gs))
        if abs(moved - base) > tol * (1.0 + abs(base)):
            raise NotInvariant(
                f"function is not left-{subgroup}-invariant: residual {abs(moved - base):.3e}"
            )


def induce_GN(
    f: Callable[..., float],
    p: int,
    *,
    field: Field = Field.REAL,
    check: bool = True,
    transporter: Callable[[Vec2], Mat2] = transporter_to_GN_point,
) -> Cochain:
    """Induction L^0(G^{p+1})^N -> C^{p,1}: (g; h e1) -> f(h^{-1} g_0, ..., h^{-1} g_p)."""
    if check:
        check_left_invariance(f, p, "N", field)

    def ev(gs, xs):
        hinv = transporter(xs[0]).inverse()
        return f(*(hinv @ g for g in gs))

    return Cochain(p, 1, Space.GN, ev)


def induce_GA(
    f: Callable[..., float],
    p: int,
    *,
    check: bool = True,
    transporter: Callable[[ProjPoint, ProjPoint], Mat2] = transporter_pair,
) -> Cochain:
    """Induction L^0(G^{p+1})^A -> C^{p,1}: (g; h(inf, 0)) -> f(h^{-1} g_0, ...)."""
    if check:
        check_left_invariance(f, p, "A", Field.REAL)

    def ev(gs, xs):
        x = xs[0]
        hinv = transporter(x.p, x.q).inverse()
        return f(*(hinv @ g for g in gs))

    return Cochain(p, 1, Space.GA, ev)


def evaluation_map(c: Callable[..., float], basepoint) -> Callable[..., float]:
    """Pull a function on (G/L)^{p+1} back to G^{p+1} through a basepoint orbit."""

    def pulled(*gs: Mat2) -> float:
        return c(*(act(g, basepoint) for g in gs))

    return pulled
