"""Randomized verification suites and their reports.

Each suite checks one family of identities on ``cfg.trials`` accepted samples.
Trial ``i`` draws from its own generator seeded by ``(cfg.seed, i)``, so a
report depends only on (seed, config, suite) and not on execution order.
Samples that hit a genericity margin are redrawn and counted as rejections;
a trial that cannot find an acceptable sample aborts the suite.

Suites look up the operations under test through an :class:`Ops` table.
Mutations swap single entries for deliberately broken variants, which is how
the test suite shows that no suite is vacuous.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Callable

from . import cochains, cocycles, core, spaces
from .cochains import act, coboundary_simplicial, d_up, induce_GA, induce_GN
from .cocycles import AFunctional, NFunctional
from .core import Field, Mat2, ProjPoint, Vec2, hdet, mobius, proj_distance, torus, unipotent
from .errors import FieldMismatch, GenericityError, SamplingExhausted, UnknownSuite
from .sampling import (
    SamplerConfig,
    sample_generic_pairsGA,
    sample_generic_points,
    sample_generic_vectors,
    sample_group,
    sample_group_params,
    sample_scalar,
    sample_unit_scalar,
    trial_rng,
)

MAX_TRIAL_ATTEMPTS = 10_000


@dataclass(frozen=True)
class Ops:
    iwasawa: Callable = core.iwasawa
    project_N: Callable = core.project_N
    project_A: Callable = core.project_A
    delta: Callable = core.delta
    transporter_vectors: Callable = core.transporter_vectors
    transporter_pair: Callable = core.transporter_pair
    transporter_triple: Callable = cocycles.triple_transporter
    cross_ratio: Callable = core.cross_ratio
    d_right: Callable = cochains.d_right
    alpha_G_N: Callable = cocycles.alpha_G_N
    alpha_G_A: Callable = cocycles.alpha_G_A
    beta_N_closed: Callable = cocycles.beta_N_closed
    beta_A_closed: Callable = cocycles.beta_A_closed
    beta_N_cochain: Callable = cocycles.beta_N_cochain
    beta_A_cochain: Callable = cocycles.beta_A_cochain
    omega_N: Callable = cocycles.omega_N
    omega_A: Callable = cocycles.omega_A


# --- mutations -------------------------------------------------------------


def _iwasawa_n_sign(g):
    nak = core.iwasawa(g)
    return core.IwasawaNAK(-nak.n, nak.log_lambda, nak.k)


def _project_N_wrong_denominator(g):
    return (g.a11 * core.conj(g.a21) + g.a12 * core.conj(g.a22)) / (abs(g.a11) ** 2 + abs(g.a12) ** 2)


def _project_A_no_sqrt(g):
    return -math.log(g.a21 ** 2 + g.a22 ** 2)


def _delta_sign(lam):
    return Mat2(0 * lam, 1 / lam, -lam, 0 * lam)


def _cross_ratio_unbalanced(a, b, c, d, **kw):
    return hdet(a, c) * hdet(b, d) / hdet(b, c)


def _alpha_G_N_not_invariant(phi, g0, g1):
    return phi(core.project_N(g1) + g1.a11) - phi(core.project_N(g0) + g0.a11)


def _alpha_G_A_not_invariant(phi, g0, g1):
    return phi(core.project_A(g1) + math.log(abs(g1.a11) + 1)) - phi(core.project_A(g0) + math.log(abs(g0.a11) + 1))


def _beta_N_unnormalized(phi, u, v, cfg=spaces.DEFAULT_GENERICITY):
    d = core.det_pair(u, v)
    return phi(core.hermitian(u, v) / d) + phi(core.hermitian(v, u) / (d * u.norm_sq()))


def _beta_N_nonlinear(phi, u, v, cfg=spaces.DEFAULT_GENERICITY):
    return cocycles.beta_N_closed(phi, u, v, cfg) + 0.1 * phi.c_re ** 2


def _omega_N_sign(phi, v0, v1, v2, cfg=spaces.DEFAULT_GENERICITY):
    # flips the sign of the (0, 1) face term
    return cocycles.omega_N(phi, v0, v1, v2, cfg) + 2 * cocycles.beta_N_closed(phi, v0, v1, cfg)


def _omega_N_not_invariant(phi, v0, v1, v2, cfg=spaces.DEFAULT_GENERICITY):
    return cocycles.omega_N(phi, v0, v1, v2, cfg) + phi(v0.norm_sq())


def _omega_A_wrong_point(phi, x, y, z, cfg=spaces.DEFAULT_GENERICITY, convention="derivation"):
    cr = core.cross_ratio(x.q, y.p, y.q, z.q)
    value = 0.5 * phi(math.log(abs(cr - 1.0)))
    return -value if convention == "derivation" else value


def _omega_A_not_invariant(phi, x, y, z, cfg=spaces.DEFAULT_GENERICITY, convention="derivation"):
    value = -0.5 * phi(math.log(abs(x.q.affine - y.p.affine)))
    return value if convention == "derivation" else -value


def _omega_A_same_sign(phi, x, y, z, cfg=spaces.DEFAULT_GENERICITY, convention="derivation"):
    return cocycles.omega_A(phi, x, y, z, cfg, convention="derivation")


def _beta_N_cochain_ignores_transporter(phi):
    def ev(gs, xs):
        u, v = xs
        return cocycles.beta_N_chase(phi, gs[0], core.det_pair(u, v))
    return cochains.Cochain(0, 2, cochains.Space.GN, ev)


def _beta_A_cochain_ignores_transporter(phi):
    def ev(gs, xs):
        x, y = xs
        _, sign, b = cocycles.orbit_representative_GA(x, y)
        return cocycles.beta_A_chase(phi, gs[0], sign, b, distinct_margin=0.0)
    return cochains.Cochain(0, 2, cochains.Space.GA, ev)


MUTATIONS: dict[str, dict[str, Callable]] = {
    "iwasawa_n_sign": {"iwasawa": _iwasawa_n_sign},
    "project_N_denominator": {"project_N": _project_N_wrong_denominator},
    "project_A_no_sqrt": {"project_A": _project_A_no_sqrt},
    "delta_sign": {"delta": _delta_sign},
    "cross_ratio_unbalanced": {"cross_ratio": _cross_ratio_unbalanced},
    "alpha_not_invariant": {"alpha_G_N": _alpha_G_N_not_invariant, "alpha_G_A": _alpha_G_A_not_invariant},
    "d_right_sign": {"d_right": partial(cochains.d_right, flip_sign=True)},
    "beta_A_half": {"beta_A_closed": partial(cocycles.beta_A_closed, log_scale=1.0)},
    "beta_N_unnormalized": {"beta_N_closed": _beta_N_unnormalized},
    "beta_nonlinear": {"beta_N_closed": _beta_N_nonlinear},
    "omega_N_sign": {"omega_N": _omega_N_sign},
    "omega_A_wrong_point": {"omega_A": _omega_A_wrong_point},
    "omega_N_not_invariant": {"omega_N": _omega_N_not_invariant},
    "omega_A_not_invariant": {"omega_A": _omega_A_not_invariant},
    "omega_A_same_sign": {"omega_A": _omega_A_same_sign},
    "beta_cochain_ignores_transporter": {
        "beta_N_cochain": _beta_N_cochain_ignores_transporter,
        "beta_A_cochain": _beta_A_cochain_ignores_transporter,
    },
}


def ops_for(mutation: str | None = None) -> Ops:
    if mutation is None:
        return Ops()
    try:
        return replace(Ops(), **MUTATIONS[mutation])
    except KeyError:
        raise ValueError(f"unknown mutation {mutation!r}") from None


# --- reports ---------------------------------------------------------------


@dataclass
class VerificationReport:
    suite: str
    field: str
    trials_requested: int
    trials_run: int
    rejected: dict[str, int]
    max_residual: float
    tolerance: float
    failures: list[dict]
    seed: int
    elapsed_ms: float

    @property
    def total_rejected(self) -> int:
        return sum(self.rejected.values())

    @property
    def passed(self) -> bool:
        return not self.failures and self.max_residual <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "field": self.field,
            "trials_requested": self.trials_requested,
            "trials_run": self.trials_run,
            "rejected": dict(sorted(self.rejected.items())),
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "failures": self.failures,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
        }


# --- suites ----------------------------------------------------------------


@dataclass
class Trial:
    rng: object
    cfg: SamplerConfig
    ops: Ops
    rejections: Counter = field(default_factory=Counter)
    # facts a suite wants to assert over the whole run, e.g. both orientations seen
    notes: Counter = field(default_factory=Counter)

    @property
    def fld(self) -> Field:
        return self.cfg.field

    @property
    def real(self) -> bool:
        return self.cfg.field is Field.REAL

    def group(self) -> Mat2:
        return sample_group(self.rng, self.cfg)

    def vectors(self, count: int) -> list[Vec2]:
        return sample_generic_vectors(self.rng, self.cfg, count, self.rejections)

    def pairs(self, count: int):
        return sample_generic_pairsGA(self.rng, self.cfg, count, self.rejections)

    def points(self, count: int) -> list[ProjPoint]:
        return sample_generic_points(self.rng, self.cfg, count, self.rejections)

    def n_functional(self) -> NFunctional:
        re, im = self.rng.uniform(-1.0, 1.0, size=2)
        return NFunctional(float(re), float(im) if not self.real else 0.0)

    def a_functional(self) -> AFunctional:
        return AFunctional(float(self.rng.uniform(-1.0, 1.0)))


@dataclass(frozen=True)
class Suite:
    name: str
    check: Callable[[Trial], tuple[float, dict]]
    tolerance: float
    residual: str  # "absolute" or "relative"
    fields: frozenset
    mutation: str
    doc: str
    finalize: Callable[[Counter], list[str]] | None = None


def _snap(**values) -> dict:
    # kept raw; run_suite renders failing snapshots only
    return values


def _rel(a, b) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _vec_rel(x: Vec2, y: Vec2) -> float:
    return x.distance(y) / max(1.0, y.norm())


def _functionals_for_cocycle(trial: Trial) -> list[NFunctional]:
    if trial.real:
        return [NFunctional(1.0)]
    return [NFunctional(1.0, 0.0), NFunctional(0.0, 1.0)]


def suite_iwasawa_roundtrip(t: Trial):
    g, x, log_lam, _ = sample_group_params(t.rng, t.cfg)
    nak = t.ops.iwasawa(g)
    recon = nak.reconstruct().distance(g) / g.frobenius()
    unitary = (nak.k @ nak.k.adjoint()).distance(Mat2.identity(g.field))
    params = max(abs(nak.n - x), abs(nak.log_lambda - log_lam))
    return max(recon, unitary, params), _snap(g=g)


def suite_projection_match_N(t: Trial):
    g = t.group()
    x = sample_scalar(t.rng, t.cfg.r_n, t.fld)
    pn = t.ops.project_N(g)
    oracle = t.ops.iwasawa(g).n
    shifted = t.ops.project_N(unipotent(x) @ g)
    return max(abs(pn - oracle), abs(shifted - (x + pn))), _snap(g=g, x=x)


def suite_projection_match_A(t: Trial):
    g = t.group()
    return abs(t.ops.project_A(g) - t.ops.iwasawa(g).log_lambda), _snap(g=g)


def _det_res(g: Mat2) -> float:
    return abs(g.det() - 1.0)


def suite_transporters(t: Trial):
    # actions are held to 1e-9 and determinants to 1e-10; the latter is scaled
    # by 10 so that the single suite tolerance enforces both
    u, v = t.vectors(2)
    guv = t.ops.transporter_vectors(u, v)
    d = core.det_pair(u, v)
    e1 = Vec2.e1(t.fld)
    res = max(_vec_rel(guv.apply(e1), u), _vec_rel(guv.apply(Vec2.e2(t.fld).scale(d)), v))
    det_res = _det_res(guv)
    lam = sample_unit_scalar(t.rng, 2.0, t.fld)
    dl = t.ops.delta(lam)
    res = max(res, _vec_rel(dl.apply(e1), Vec2.e2(t.fld).scale(lam)))
    det_res = max(det_res, _det_res(dl))
    snap = _snap(u=u, v=v, lam=lam)
    if t.real:
        inf, zero = ProjPoint.infinity(), ProjPoint.at(0.0)
        x, y, y1 = t.points(3)
        gxy = t.ops.transporter_pair(x, y)
        res = max(res, proj_distance(mobius(gxy, inf), x), proj_distance(mobius(gxy, zero), y))
        gt, sign = t.ops.transporter_triple(x, y, y1)
        t.notes[f"orientation{sign:+d}"] += 1
        res = max(
            res,
            proj_distance(mobius(gt, inf), x),
            proj_distance(mobius(gt, zero), y),
            proj_distance(mobius(gt, ProjPoint.at(float(sign))), y1),
        )
        det_res = max(det_res, _det_res(gxy), _det_res(gt))
        snap.update(_snap(x=x, y=y, y1=y1))
    return max(res, 10.0 * det_res), snap


def suite_cross_ratio_invariance(t: Trial):
    pts = t.points(4)
    g = t.group()
    cr = t.ops.cross_ratio(*pts)
    moved = t.ops.cross_ratio(*(mobius(g, p) for p in pts))
    return abs(moved - cr) / (1.0 + abs(cr)), _snap(points=pts, g=g)


def suite_coset_independence(t: Trial):
    g0, g1 = t.group(), t.group()
    phi = t.n_functional()
    (v,) = t.vectors(1)
    n = unipotent(sample_scalar(t.rng, t.cfg.r_n, t.fld))
    h = spaces.transporter_to_GN_point(v)
    alpha = partial(t.ops.alpha_G_N, phi)
    plain = induce_GN(alpha, 1, field=t.fld, check=False)
    moved = induce_GN(alpha, 1, field=t.fld, check=False, transporter=lambda _v: h @ n)
    res = abs(plain((g0, g1), (v,)) - moved((g0, g1), (v,)))
    lam = sample_unit_scalar(t.rng, 1.0, t.fld)
    b0 = cocycles.beta_N_chase(phi, g1, lam)
    b1 = cocycles.beta_N_chase(phi, g1, lam, delta_rep=t.ops.delta(lam) @ n)
    res = max(res, abs(b0 - b1))
    snap = _snap(g0=g0, g1=g1, v=v, n=n, lam=lam, phi=phi)
    if t.real:
        psi = t.a_functional()
        (x,) = t.pairs(1)
        a = torus(float(t.rng.uniform(-2.0, 2.0)))
        alpha_a = partial(t.ops.alpha_G_A, psi)
        plain = induce_GA(alpha_a, 1, check=False)
        moved = induce_GA(alpha_a, 1, check=False, transporter=lambda p, q: t.ops.transporter_pair(p, q) @ a)
        res = max(res, abs(plain((g0, g1), (x,)) - moved((g0, g1), (x,))))
        sign = 1 if t.rng.random() < 0.5 else -1
        b = float(t.rng.uniform(-3.0, 3.0))
        base = t.ops.transporter_pair(ProjPoint.at(float(sign)), ProjPoint.at(b))
        c0 = cocycles.beta_A_chase(psi, g1, sign, b, transporter=base)
        c1 = cocycles.beta_A_chase(psi, g1, sign, b, transporter=base @ a)
        res = max(res, abs(c0 - c1))
        snap.update(_snap(x=x, a=a, sign=sign, b=b, psi=psi))
    return res, snap


def suite_differential_identity_N(t: Trial):
    g0, g1 = t.group(), t.group()
    u, v = t.vectors(2)
    phi = t.n_functional()
    lhs = d_up(t.ops.beta_N_cochain(phi))((g0, g1), (u, v))
    induced = induce_GN(partial(t.ops.alpha_G_N, phi), 1, field=t.fld, check=False)
    rhs = t.ops.d_right(induced)((g0, g1), (u, v))
    res = _rel(lhs, rhs)
    # the same identity in orbit coordinates (e1, lam e2)
    lam = core.det_pair(u, v)
    m = t.ops.delta(-lam)
    lhs2 = cocycles.beta_N_chase(phi, g1, lam) - cocycles.beta_N_chase(phi, g0, lam)
    rhs2 = t.ops.alpha_G_N(phi, m @ g0, m @ g1) - t.ops.alpha_G_N(phi, g0, g1)
    e1 = Vec2.e1(t.fld)
    rhs3 = t.ops.d_right(induced)((g0, g1), (e1, Vec2.e2(t.fld).scale(lam)))
    res = max(res, _rel(lhs2, rhs2), _rel(lhs2, rhs3))
    return res, _snap(g0=g0, g1=g1, u=u, v=v, phi=phi)


def suite_differential_identity_A(t: Trial):
    g0, g1 = t.group(), t.group()
    x, y = t.pairs(2)
    psi = t.a_functional()
    lhs = d_up(t.ops.beta_A_cochain(psi))((g0, g1), (x, y))
    induced = induce_GA(partial(t.ops.alpha_G_A, psi), 1, check=False)
    rhs = t.ops.d_right(induced)((g0, g1), (x, y))
    res = _rel(lhs, rhs)
    _, sign, b = cocycles.orbit_representative_GA(x, y)
    gsb = t.ops.transporter_pair(ProjPoint.at(float(sign)), ProjPoint.at(b)).inverse()
    lhs2 = cocycles.beta_A_chase(psi, g1, sign, b) - cocycles.beta_A_chase(psi, g0, sign, b)
    rhs2 = t.ops.alpha_G_A(psi, gsb @ g0, gsb @ g1) - t.ops.alpha_G_A(psi, g0, g1)
    base = core.PairGA.basepoint()
    rhs3 = t.ops.d_right(induced)((g0, g1), (base, core.PairGA.at(float(sign), b)))
    res = max(res, _rel(lhs2, rhs2), _rel(lhs2, rhs3))
    return res, _snap(g0=g0, g1=g1, x=x, y=y, psi=psi)


def suite_closed_vs_chase_N(t: Trial):
    u, v = t.vectors(2)
    phi = t.n_functional()
    closed = t.ops.beta_N_closed(phi, u, v, t.cfg.margins)
    guv = t.ops.transporter_vectors(u, v)
    chase = cocycles.beta_N_chase(phi, guv.inverse(), core.det_pair(u, v))
    induced = t.ops.beta_N_cochain(phi)((Mat2.identity(t.fld),), (u, v))
    return max(_rel(closed, chase), _rel(closed, induced)), _snap(u=u, v=v, phi=phi)


def suite_closed_vs_chase_A(t: Trial):
    x, y = t.pairs(2)
    psi = t.a_functional()
    closed = t.ops.beta_A_closed(psi, x, y, t.cfg.margins)
    gt, sign = t.ops.transporter_triple(x.p, x.q, y.p, y.q)
    b = mobius(gt.inverse(), y.q).affine
    chase = cocycles.beta_A_chase(psi, gt.inverse(), sign, b)
    induced = t.ops.beta_A_cochain(psi)((Mat2.identity(),), (x, y))
    t.notes[f"orientation{sign:+d}"] += 1
    return max(_rel(closed, chase), _rel(closed, induced)), _snap(x=x, y=y, psi=psi, sign=sign)


def _both_orientations(notes: Counter) -> list[str]:
    missing = [k for k in ("orientation+1", "orientation-1") if not notes[k]]
    return [f"no sample exercised {k}" for k in missing]


def suite_cocycle_N(t: Trial):
    vs = t.vectors(4)
    res = 0.0
    for phi in _functionals_for_cocycle(t):
        res = max(res, abs(coboundary_simplicial(partial(t.ops.omega_N, phi), vs)))
    return res, _snap(vectors=vs)


def suite_cocycle_A(t: Trial):
    pairs = t.pairs(4)
    psi = AFunctional(1.0)
    return abs(coboundary_simplicial(partial(t.ops.omega_A, psi), pairs)), _snap(pairs=pairs)


def suite_g_invariance_N(t: Trial):
    vs = t.vectors(3)
    g = t.group()
    moved = [g.apply(v) for v in vs]
    res = 0.0
    for phi in _functionals_for_cocycle(t):
        res = max(res, _rel(t.ops.omega_N(phi, *moved), t.ops.omega_N(phi, *vs)))
    d0 = spaces.orbit_parameter_N(vs[0], vs[1])
    d1 = spaces.orbit_parameter_N(moved[0], moved[1])
    res = max(res, abs(d1 - d0) / max(1.0, abs(d0)))
    return res, _snap(vectors=vs, g=g)


def suite_g_invariance_A(t: Trial):
    pairs = t.pairs(3)
    g = t.group()
    moved = [act(g, p) for p in pairs]
    psi = AFunctional(1.0)
    res = abs(t.ops.omega_A(psi, *moved) - t.ops.omega_A(psi, *pairs))
    o0 = spaces.orbit_invariant_GA(pairs[0], pairs[1])
    o1 = spaces.orbit_invariant_GA(moved[0], moved[1])
    if o0.sign != o1.sign:
        res = math.inf
    res = max(res, abs(o1.b - o0.b) / max(1.0, abs(o0.b)))
    return res, _snap(pairs=pairs, g=g)


def suite_omega_constant_in_G(t: Trial):
    vs = t.vectors(3)
    g = t.group()
    phi = t.n_functional()
    omega = cochains.d_right(t.ops.beta_N_cochain(phi))
    at_e = omega((Mat2.identity(t.fld),), vs)
    at_g = omega((g,), vs)
    closed = t.ops.omega_N(phi, *vs)
    res = max(_rel(at_e, at_g), _rel(at_e, closed))
    snap = _snap(vectors=vs, g=g, phi=phi)
    if t.real:
        pairs = t.pairs(3)
        psi = t.a_functional()
        omega_a = cochains.d_right(t.ops.beta_A_cochain(psi))
        res = max(res, _rel(omega_a((Mat2.identity(),), pairs), omega_a((g,), pairs)))
        snap.update(_snap(pairs=pairs, psi=psi))
    return res, snap


def suite_sign_flip_thm15(t: Trial):
    pairs = t.pairs(3)
    psi = t.a_functional()
    derivation = t.ops.omega_A(psi, *pairs, convention="derivation")
    theorem = t.ops.omega_A(psi, *pairs, convention="theorem")
    return abs(derivation + theorem), _snap(pairs=pairs, psi=psi)


def _linearity(f, phi1, phi2, s) -> float:
    v1, v2 = f(phi1), f(phi2)
    scale = 1.0 + abs(v1) + abs(v2)
    add = abs(f(phi1 + phi2) - v1 - v2)
    hom = abs(f(s * phi1) - s * v1)
    return max(add, hom) / scale


def suite_linearity_in_functional(t: Trial):
    g0, g1 = t.group(), t.group()
    v0, v1, v2 = t.vectors(3)
    phi1, phi2 = t.n_functional(), t.n_functional()
    s = float(t.rng.uniform(-3.0, 3.0))
    res = max(
        _linearity(lambda f: t.ops.alpha_G_N(f, g0, g1), phi1, phi2, s),
        _linearity(lambda f: t.ops.beta_N_closed(f, v0, v1), phi1, phi2, s),
        _linearity(lambda f: t.ops.omega_N(f, v0, v1, v2), phi1, phi2, s),
    )
    snap = _snap(g0=g0, g1=g1, vectors=(v0, v1, v2), phi1=phi1, phi2=phi2, s=s)
    if t.real:
        x, y, z = t.pairs(3)
        psi1, psi2 = t.a_functional(), t.a_functional()
        res = max(
            res,
            _linearity(lambda f: t.ops.alpha_G_A(f, g0, g1), psi1, psi2, s),
            _linearity(lambda f: t.ops.beta_A_closed(f, x, y), psi1, psi2, s),
            _linearity(lambda f: t.ops.omega_A(f, x, y, z), psi1, psi2, s),
        )
        snap.update(_snap(pairs=(x, y, z), psi1=psi1, psi2=psi2))
    return res, snap


BOTH = frozenset({Field.REAL, Field.COMPLEX})
REAL = frozenset({Field.REAL})

SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("iwasawa_roundtrip", suite_iwasawa_roundtrip, 1e-10, "relative", BOTH, "iwasawa_n_sign",
              "n a k reconstructs g, k is unitary, sampled Iwasawa parameters are recovered"),
        Suite("projection_match_N", suite_projection_match_N, 1e-10, "absolute", BOTH, "project_N_denominator",
              "closed-form N-projection equals the QR oracle and obeys pi_N(u g) = x + pi_N(g)"),
        Suite("projection_match_A", suite_projection_match_A, 1e-10, "absolute", REAL, "project_A_no_sqrt",
              "closed-form A-projection equals the QR oracle"),
        Suite("transporters", suite_transporters, 1e-9, "relative", BOTH, "delta_sign",
              "g_{u,v}, delta_lam, g_{x,y}, g_{x1,x2,y1} realize their point actions with det 1"),
        Suite("cross_ratio_invariance", suite_cross_ratio_invariance, 1e-9, "relative", REAL,
              "cross_ratio_unbalanced", "cross ratio is invariant under the Moebius action"),
        Suite("coset_independence", suite_coset_independence, 1e-9, "absolute", BOTH, "alpha_not_invariant",
              "induced cochains and beta do not depend on the coset representative of the transporter"),
        Suite("differential_identity_N", suite_differential_identity_N, 1e-9, "relative", BOTH, "d_right_sign",
              "d_up beta = d_right alpha_G for L = N"),
        Suite("differential_identity_A", suite_differential_identity_A, 1e-9, "relative", REAL, "d_right_sign",
              "d_up beta = d_right alpha_G for L = A"),
        Suite("closed_vs_chase_N", suite_closed_vs_chase_N, 1e-9, "relative", BOTH, "beta_N_unnormalized",
              "closed-form beta(e)(u, v) equals the chase value beta(g_{u,v}^{-1})(d_{u,v})"),
        Suite("closed_vs_chase_A", suite_closed_vs_chase_A, 1e-9, "relative", REAL, "beta_A_half",
              "closed-form beta(e)(x, y) equals the chase on both orientation branches",
              finalize=_both_orientations),
        Suite("cocycle_N", suite_cocycle_N, 1e-8, "absolute", BOTH, "omega_N_sign",
              "alternating sum of omega_N over the faces of four vectors vanishes"),
        Suite("cocycle_A", suite_cocycle_A, 1e-8, "absolute", REAL, "omega_A_wrong_point",
              "alternating sum of omega_A over the faces of four pairs vanishes"),
        Suite("g_invariance_N", suite_g_invariance_N, 1e-8, "relative", BOTH, "omega_N_not_invariant",
              "omega_N and the orbit parameter d are invariant under the diagonal action"),
        Suite("g_invariance_A", suite_g_invariance_A, 1e-8, "absolute", REAL, "omega_A_not_invariant",
              "omega_A and the orbit invariant (sign, b) are invariant under the diagonal action"),
        Suite("omega_constant_in_G", suite_omega_constant_in_G, 1e-8, "relative", BOTH,
              "beta_cochain_ignores_transporter",
              "the chased omega does not depend on its group argument and matches the closed omega_N"),
        Suite("sign_flip_thm15", suite_sign_flip_thm15, 1e-12, "absolute", REAL, "omega_A_same_sign",
              "the two normalizations of omega_A differ exactly by a global sign"),
        Suite("linearity_in_functional", suite_linearity_in_functional, 1e-12, "relative", BOTH,
              "beta_nonlinear", "alpha_G, beta and omega are linear in the functional"),
    ]
}


def suites_for(fld: Field | str) -> list[str]:
    fld = Field(fld)
    return [name for name, s in SUITES.items() if fld in s.fields]


def run_suite(name: str, cfg: SamplerConfig = SamplerConfig(), *, mutation: str | None = None) -> VerificationReport:
    try:
        suite = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}") from None
    if cfg.field not in suite.fields:
        raise FieldMismatch(f"suite {name} is not defined over the {cfg.field.value} field")
    ops = ops_for(mutation)
    tol = suite.tolerance if cfg.tol is None else cfg.tol
    rejected: Counter = Counter()
    notes: Counter = Counter()
    failures: list[dict] = []
    max_residual = 0.0
    start = time.perf_counter()
    for i in range(cfg.trials):
        trial = Trial(trial_rng(cfg.seed, i), cfg, ops, rejected, notes)
        for _ in range(MAX_TRIAL_ATTEMPTS):
            try:
                residual, snapshot = suite.check(trial)
                break
            except GenericityError as exc:
                rejected[exc.margin] += 1
        else:
            raise SamplingExhausted(f"{name}: trial {i} found no generic sample")
        if not residual <= tol:  # NaN counts as a failure
            failures.append({"trial": i, "input": {k: repr(v) for k, v in snapshot.items()},
                             "residual": residual})
        if not residual <= max_residual:
            max_residual = residual
    if suite.finalize is not None:
        for message in suite.finalize(notes):
            failures.append({"trial": None, "input": {"note": message}, "residual": None})
    return VerificationReport(
        suite=name,
        field=cfg.field.value,
        trials_requested=cfg.trials,
        trials_run=cfg.trials,
        rejected=dict(rejected),
        max_residual=max_residual,
        tolerance=tol,
        failures=failures,
        seed=cfg.seed,
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )


def run_suites(names, cfg: SamplerConfig = SamplerConfig()) -> list[VerificationReport]:
    return [run_suite(name, cfg) for name in names]
