from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2cocycles.cochains import act
from sl2cocycles.cocycles import (
    AFunctional,
    NFunctional,
    alpha_G_A,
    alpha_G_N,
    beta_A_chase,
    beta_A_closed,
    beta_N_chase,
    beta_N_closed,
    omega_A,
    omega_A_beta_sum,
    omega_A_chase,
    omega_N,
    omega_N_chase,
    orbit_representative_GA,
)
from sl2cocycles.core import (
    Field,
    Mat2,
    PairGA,
    ProjPoint,
    Vec2,
    delta,
    det_pair,
    hdet,
    mobius,
    torus,
    transporter_pair,
    transporter_vectors,
    unipotent,
)
from sl2cocycles.errors import DegenerateConfiguration, DependentPair
from sl2cocycles.sampling import (
    SamplerConfig,
    sample_generic_pairsGA,
    sample_generic_vectors,
    sample_group,
    trial_rng,
)
from sl2cocycles.spaces import GenericityConfig, orbit_invariant_GA

seeds = st.integers(0, 2**32 - 1)
e1, e2 = Vec2(1.0, 0.0), Vec2(0.0, 1.0)
LN3 = math.log(3.0)


def _pairs(seed, count, margin=1e-2):
    cfg = SamplerConfig(margins=GenericityConfig(margin, margin, margin))
    rng = trial_rng(seed, 0)
    return sample_generic_pairsGA(rng, cfg, count), sample_group(rng, cfg)


def _vectors(seed, count, fld=Field.REAL):
    cfg = SamplerConfig(field=fld, margins=GenericityConfig(1e-2, 1e-2, 1e-2))
    rng = trial_rng(seed, 1)
    return sample_generic_vectors(rng, cfg, count), sample_group(rng, cfg)


def test_functionals():
    phi = NFunctional(2.0, -1.0)
    assert phi(1 + 1j) == 1.0
    assert (phi + NFunctional(1.0))(1.0) == 3.0
    assert (2.0 * AFunctional(1.5))(1.0) == 3.0


# N case


def test_beta_N_goldens():
    phi = NFunctional(1.0)
    assert beta_N_closed(phi, e1, Vec2(1.0, 1.0)) == pytest.approx(1.5, abs=1e-12)
    assert beta_N_closed(phi, e2, Vec2(1.0, 1.0)) == pytest.approx(-1.5, abs=1e-12)
    with pytest.raises(DependentPair):
        beta_N_closed(phi, e1, Vec2(2.0, 0.0))


def test_omega_N_golden():
    assert omega_N(NFunctional(1.0), e1, e2, Vec2(1.0, 1.0)) == pytest.approx(3.0, abs=1e-10)
    assert omega_N_chase(NFunctional(1.0), e1, e2, Vec2(1.0, 1.0)) == pytest.approx(3.0, abs=1e-10)


@pytest.mark.parametrize("fld", [Field.REAL, Field.COMPLEX])
@settings(max_examples=50, deadline=None)
@given(seed=seeds)
def test_beta_N_closed_matches_chase(fld, seed):
    (u, v), g = _vectors(seed, 2, fld)
    phi = NFunctional(0.8, 0.3 if fld is Field.COMPLEX else 0.0)
    h = transporter_vectors(u, v)
    chase = beta_N_chase(phi, h.inverse(), det_pair(u, v))
    assert chase == pytest.approx(beta_N_closed(phi, u, v), rel=1e-9, abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(seed=seeds, s=st.floats(-3, 3))
def test_beta_N_chase_independent_of_delta_representative(seed, s):
    (u,), g = _vectors(seed, 1)
    lam = u.v1
    phi = NFunctional(1.0)
    base = beta_N_chase(phi, g, lam)
    assert beta_N_chase(phi, g, lam, delta_rep=delta(lam) @ unipotent(s)) == pytest.approx(base, abs=1e-9)


@pytest.mark.parametrize("fld", [Field.REAL, Field.COMPLEX])
@settings(max_examples=50, deadline=None)
@given(seed=seeds)
def test_omega_N_cocycle_and_invariance(fld, seed):
    vs, g = _vectors(seed, 4, fld)
    phi = NFunctional(1.0, 0.5 if fld is Field.COMPLEX else 0.0)
    faces = [vs[:i] + vs[i + 1:] for i in range(4)]
    total = sum((-1) ** i * omega_N(phi, *f) for i, f in enumerate(faces))
    scale = max(1.0, *(abs(omega_N(phi, *f)) for f in faces))
    assert abs(total) <= 1e-9 * scale
    base = omega_N(phi, *vs[:3])
    moved = omega_N(phi, *(g.apply(v) for v in vs[:3]), GenericityConfig(1e-9))
    assert moved == pytest.approx(base, rel=1e-8, abs=1e-8)
    assert omega_N_chase(phi, *vs[:3], g) == pytest.approx(base, rel=1e-8, abs=1e-8)


def test_alpha_G_N_left_invariant():
    phi = NFunctional(1.0, 2.0)
    g0, g1 = Mat2(1.0, 1.0, 1.0, 2.0), Mat2(2.0, 1.0, 1.0, 1.0)
    n = unipotent(0.4)
    assert alpha_G_N(phi, n @ g0, n @ g1) == pytest.approx(alpha_G_N(phi, g0, g1), abs=1e-12)


# A case


def test_beta_A_golden():
    val = beta_A_closed(AFunctional(1.0), PairGA.at(0.0, 1.0), PairGA.at(2.0, 3.0))
    assert val == pytest.approx(0.5 * math.log(2.0 / 5.0), abs=1e-12)


def test_beta_A_ignores_y2():
    psi = AFunctional(1.0)
    x = PairGA.at(0.0, 1.0)
    vals = [beta_A_closed(psi, x, PairGA.at(2.0, y2)) for y2 in (-4.0, 3.0, 17.0, math.inf)]
    assert vals == pytest.approx([vals[0]] * 4, abs=1e-12)


def test_beta_A_homogeneous_form():
    # same value written with normalized homogeneous determinants, valid at infinity too
    psi = AFunctional(0.7)
    for xs in [(0.0, 1.0, 2.0, 3.0), (math.inf, 0.0, 1.0, 5.0), (-2.0, math.inf, 0.5, 1.5)]:
        x, y = PairGA.at(*xs[:2]), PairGA.at(*xs[2:])
        expected = 0.5 * psi(math.log(2.0 * hdet(x.q, y.p) ** 2 / hdet(x.p, x.q) ** 2))
        assert beta_A_closed(psi, x, y) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("y1, expected_sign", [(2.0, 1), (0.5, -1)])
def test_beta_A_both_branches_match_chase(y1, expected_sign):
    psi = AFunctional(1.0)
    x, y = PairGA.at(0.0, 1.0), PairGA.at(y1, 3.0)
    t, sign, b = orbit_representative_GA(x, y)
    assert sign == expected_sign
    assert orbit_invariant_GA(x, y).b == pytest.approx(b)
    chase = beta_A_chase(psi, t.inverse(), sign, b)
    assert chase == pytest.approx(beta_A_closed(psi, x, y), abs=1e-10)


@settings(max_examples=50, deadline=None)
@given(seed=seeds, s=st.floats(-2, 2))
def test_beta_A_chase_independent_of_torus_representative(seed, s):
    (x, y), g = _pairs(seed, 2)
    psi = AFunctional(1.0)
    _, sign, b = orbit_representative_GA(x, y)
    t = transporter_pair(ProjPoint.at(float(sign)), ProjPoint.at(b))
    base = beta_A_chase(psi, g, sign, b)
    assert beta_A_chase(psi, g, sign, b, transporter=t @ torus(s)) == pytest.approx(base, abs=1e-9)


def test_beta_A_chase_rejects_degenerate_parameter():
    with pytest.raises(DegenerateConfiguration):
        beta_A_chase(AFunctional(1.0), Mat2.identity(), 1, 1.0)
    with pytest.raises(ValueError):
        beta_A_chase(AFunctional(1.0), Mat2.identity(), 0, 2.0)


def test_omega_A_golden_and_conventions():
    psi = AFunctional(1.0)
    x, y, z = PairGA.at(math.inf, 0.0), PairGA.at(1.0, 2.0), PairGA.at(3.0, 4.0)
    assert omega_A(psi, x, y, z) == pytest.approx(0.5 * LN3, abs=1e-10)
    assert omega_A(psi, x, y, z, convention="theorem") == pytest.approx(-0.5 * LN3, abs=1e-10)
    with pytest.raises(ValueError):
        omega_A(psi, x, y, z, convention="other")
    # the chase (= alternating sum of the closed beta) gives 2 omega_A - log(2)/2
    chase = omega_A_chase(psi, x, y, z)
    assert chase == pytest.approx(LN3 - 0.5 * math.log(2.0), abs=1e-10)
    assert omega_A_beta_sum(psi, x, y, z) == pytest.approx(chase, abs=1e-10)


@settings(max_examples=50, deadline=None)
@given(seed=seeds, c=st.floats(-2, 2))
def test_omega_A_relation_to_beta_sum(seed, c):
    (x, y, z), g = _pairs(seed, 3)
    psi = AFunctional(c)
    expected = 2.0 * omega_A(psi, x, y, z) - 0.5 * psi(math.log(2.0))
    assert omega_A_beta_sum(psi, x, y, z) == pytest.approx(expected, abs=1e-9)
    assert omega_A_chase(psi, x, y, z, g) == pytest.approx(expected, abs=1e-8)


@settings(max_examples=50, deadline=None)
@given(seed=seeds)
def test_omega_A_cocycle_invariance_sign(seed):
    pairs, g = _pairs(seed, 4)
    psi = AFunctional(1.0)
    faces = [pairs[:i] + pairs[i + 1:] for i in range(4)]
    total = sum((-1) ** i * omega_A(psi, *f) for i, f in enumerate(faces))
    assert abs(total) <= 1e-8
    base = omega_A(psi, *pairs[:3])
    loose = GenericityConfig(1e-9, 1e-9, 1e-9)
    moved = omega_A(psi, *(act(g, p) for p in pairs[:3]), loose)
    assert moved == pytest.approx(base, abs=1e-8)
    assert omega_A(psi, *pairs[:3], convention="theorem") == -base


def test_alpha_G_A_left_invariant():
    psi = AFunctional(1.3)
    g0, g1 = Mat2(1.0, 1.0, 1.0, 2.0), Mat2(2.0, 1.0, 1.0, 1.0)
    a = torus(0.6)
    assert alpha_G_A(psi, a @ g0, a @ g1) == pytest.approx(alpha_G_A(psi, g0, g1), abs=1e-12)
    assert mobius(a, ProjPoint.infinity()) == ProjPoint.infinity()
