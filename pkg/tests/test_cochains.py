from __future__ import annotations

import math

import pytest

from sl2cocycles.cochains import (
    Cochain,
    Space,
    act,
    check_left_invariance,
    coboundary_simplicial,
    d_right,
    d_up,
    evaluation_map,
    induce_GA,
    induce_GN,
)
from sl2cocycles.cocycles import NFunctional, alpha_G_N, omega_N
from sl2cocycles.core import (
    Field, Mat2, PairGA, ProjPoint, Vec2, mobius, project_A, project_N, torus, transporter_pair, unipotent,
)
from sl2cocycles.errors import NotInvariant
from sl2cocycles.sampling import SamplerConfig, sample_generic_vectors, sample_group, trial_rng


def _rand_cochain(p, q):
    # an arbitrary smooth, non-invariant test function
    def ev(gs, xs):
        s = sum((k + 1) * (g.a11 + 2 * g.a21 - 0.5 * g.a12) for k, g in enumerate(gs))
        s += sum((k + 2) * math.sin(x.v1 - 3 * x.v2) for k, x in enumerate(xs))
        return s * s + s

    return Cochain(p, q, Space.GN, ev)


def _args(seed, p, q):
    rng = trial_rng(seed, 0)
    cfg = SamplerConfig()
    return [sample_group(rng, cfg) for _ in range(p)], sample_generic_vectors(rng, cfg, q)


def test_cochain_arity():
    c = _rand_cochain(0, 1)
    with pytest.raises(TypeError):
        c([Mat2.identity()], [])


def test_simplicial_coboundary_example():
    # d of f(a, b) = b - a vanishes
    assert coboundary_simplicial(lambda a, b: b - a, [1.0, 5.0, 2.0]) == 0.0
    assert coboundary_simplicial(lambda a: a, [1.0, 5.0]) == 5.0 - 1.0


@pytest.mark.parametrize("seed", range(5))
def test_d_squared_zero(seed):
    c = _rand_cochain(0, 0)
    gs, xs = _args(seed, 3, 3)
    assert d_up(d_up(c))(gs, []) == pytest.approx(0.0, abs=1e-9)
    c = _rand_cochain(1, 1)
    gs, xs = _args(seed, 2, 3)
    assert d_right(d_right(c))(gs, xs) == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("seed", range(5))
def test_differentials_anticommute(seed):
    # the (-1)^{p+1} weight turns commuting raw differentials into anticommuting ones,
    # so d_up + d_right squares to zero on the total complex
    c = _rand_cochain(0, 1)
    gs, xs = _args(seed, 2, 2)
    up_right = d_up(d_right(c))(gs, xs)
    assert up_right == pytest.approx(-d_right(d_up(c))(gs, xs), abs=1e-9)
    raw = lambda k: d_right(k, flip_sign=k.p % 2 == 0)  # weight +1 in every degree
    assert d_up(raw(c))(gs, xs) == pytest.approx(raw(d_up(c))(gs, xs), abs=1e-9)


def test_d_right_sign_examples():
    one = Cochain(0, 0, Space.GN, lambda gs, xs: 1.0)
    assert d_right(one)([Mat2.identity()], [Vec2.e1()]) == -1.0
    one = Cochain(1, 0, Space.GN, lambda gs, xs: 1.0)
    assert d_right(one)([Mat2.identity()] * 2, [Vec2.e1()]) == 1.0
    assert d_right(one, flip_sign=True)([Mat2.identity()] * 2, [Vec2.e1()]) == -1.0


def test_act():
    g = Mat2(1.0, 1.0, 0.0, 1.0)
    assert act(g, Vec2(0.0, 1.0)) == Vec2(1.0, 1.0)
    assert act(g, ProjPoint.at(2.0)).affine == pytest.approx(3.0)
    moved = act(g, PairGA.at(math.inf, 0.0))
    assert moved.p == ProjPoint.infinity() and moved.q.affine == pytest.approx(1.0)
    with pytest.raises(TypeError):
        act(g, 3.0)


def test_invariance_precheck():
    phi = NFunctional(1.0)
    check_left_invariance(lambda g0, g1: alpha_G_N(phi, g0, g1), 1, "N")
    check_left_invariance(lambda g0, g1: project_A(g1) - project_A(g0), 1, "A")
    with pytest.raises(NotInvariant):
        check_left_invariance(lambda g0, g1: project_N(g1).real + project_N(g0).real, 1, "N")
    with pytest.raises(NotInvariant):
        induce_GN(lambda g0: g0.a11, 0)
    with pytest.raises(ValueError):
        check_left_invariance(lambda g0: 0.0, 0, "K")


@pytest.mark.parametrize("fld", [Field.REAL, Field.COMPLEX])
def test_induce_GN_independent_of_coset(fld):
    phi = NFunctional(0.7, -0.2)
    f = lambda g0, g1: alpha_G_N(phi, g0, g1)
    base = induce_GN(f, 1, field=fld)
    shifted = induce_GN(
        f, 1, field=fld, check=False,
        transporter=lambda v: Mat2(v.v1, -v.v2.conjugate() / v.norm_sq(),
                                   v.v2, v.v1.conjugate() / v.norm_sq()) @ unipotent(fld.scalar(1.7)),
    )
    rng = trial_rng(3, 0)
    cfg = SamplerConfig(field=fld)
    for _ in range(10):
        gs = [sample_group(rng, cfg) for _ in range(2)]
        xs = sample_generic_vectors(rng, cfg, 1)
        assert shifted(gs, xs) == pytest.approx(base(gs, xs), abs=1e-9)


def test_induce_GA_independent_of_coset():
    f = lambda g0, g1: project_A(g1) - project_A(g0)
    base = induce_GA(f, 1)
    shifted = induce_GA(f, 1, check=False, transporter=lambda p, q: transporter_pair(p, q) @ torus(0.9))
    g0, g1 = Mat2(1.0, 1.0, 1.0, 2.0), Mat2(2.0, 1.0, 1.0, 1.0)
    x = PairGA.at(0.3, -1.2)
    assert shifted([g0, g1], [x]) == pytest.approx(base([g0, g1], [x]), abs=1e-12)


def test_evaluation_map_pulls_back_omega():
    phi = NFunctional(1.0)
    pulled = evaluation_map(lambda a, b, c: omega_N(phi, a, b, c), Vec2.e1())
    g0 = Mat2.identity()
    g1 = Mat2(0.0, -1.0, 1.0, 0.0)
    g2 = Mat2(1.0, -1.0, 1.0, 0.0)
    # orbit of e1: e1, e2, e1 + e2
    assert mobius(g2, ProjPoint.infinity()).affine == pytest.approx(1.0)
    assert pulled(g0, g1, g2) == pytest.approx(3.0, abs=1e-12)
