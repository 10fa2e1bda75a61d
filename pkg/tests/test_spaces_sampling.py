from __future__ import annotations

import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2cocycles import sampling
from sl2cocycles.core import Field, Mat2, PairGA, Vec2, iwasawa, mobius, rotation, torus, unipotent
from sl2cocycles.errors import DegenerateConfiguration, DependentPair, SamplingExhausted
from sl2cocycles.sampling import (
    SamplerConfig,
    sample_generic_pairsGA,
    sample_generic_vectors,
    sample_group,
    sample_group_params,
    trial_rng,
)
from sl2cocycles.spaces import (
    GenericityConfig,
    generic_pair_of_pairs,
    generic_vec_pair,
    orbit_invariant_GA,
    orbit_parameter_N,
    transporter_to_GN_point,
)


def test_genericity_config_validation():
    with pytest.raises(ValueError):
        GenericityConfig(indep_margin=0.0)
    with pytest.raises(ValueError):
        GenericityConfig(distinct_margin=-1.0)


def test_orbit_parameter_N_examples():
    assert orbit_parameter_N(Vec2(1.0, 0.0), Vec2(0.0, 1.0)) == 1.0
    assert orbit_parameter_N(Vec2(2.0, 1.0), Vec2(1.0, 1.0)) == 1.0
    with pytest.raises(DependentPair):
        orbit_parameter_N(Vec2(1.0, 2.0), Vec2(2.0, 4.0))


@settings(max_examples=100, deadline=None)
@given(st.floats(-2, 2), st.floats(-1, 1), st.floats(0, 6.3),
       st.floats(0.5, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(0.5, 2))
def test_orbit_parameter_N_invariant(x, t, theta, a, b, c, d):
    u, v = Vec2(a, b), Vec2(c, d)
    if not generic_vec_pair(u, v, GenericityConfig(1e-3)):
        return
    g = unipotent(x) @ torus(t) @ rotation(theta)
    before = orbit_parameter_N(u, v)
    assert orbit_parameter_N(g.apply(u), g.apply(v)) == pytest.approx(before, rel=1e-10, abs=1e-12)


def test_margin_monotonicity_vectors():
    u, v = Vec2(1.0, 0.0), Vec2(1.0, 1e-4)
    margins = [1e-8, 1e-6, 1e-5, 1e-4, 1e-3]
    verdicts = [generic_vec_pair(u, v, GenericityConfig(indep_margin=m)) for m in margins]
    # once rejected, a larger margin never accepts again
    assert verdicts == sorted(verdicts, reverse=True)
    assert verdicts[0] and not verdicts[-1]


def test_margin_monotonicity_pairs():
    x, y = PairGA.at(0.0, 1.0), PairGA.at(2.0, 1.001)
    verdicts = [generic_pair_of_pairs(x, y, GenericityConfig(distinct_margin=m))
                for m in (1e-6, 1e-4, 1e-3, 1e-2)]
    assert verdicts == [True, True, False, False]


def test_orbit_invariant_GA_examples():
    inv = orbit_invariant_GA(PairGA.at(math.inf, 0.0), PairGA.at(1.0, 2.5))
    assert inv.sign == 1 and inv.b == pytest.approx(2.5)
    inv = orbit_invariant_GA(PairGA.at(math.inf, 0.0), PairGA.at(-1.0, 2.5))
    assert inv.sign == -1 and inv.b == pytest.approx(2.5)
    with pytest.raises(DegenerateConfiguration):
        orbit_invariant_GA(PairGA.at(0.0, 1.0), PairGA.at(1.0, 2.0))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_orbit_invariant_GA_is_invariant(seed):
    rng = np.random.default_rng(seed)
    cfg = SamplerConfig(margins=GenericityConfig(1e-2, 1e-2, 1e-2))
    x, y = sample_generic_pairsGA(rng, cfg, 2)
    g = sample_group(rng, cfg)
    moved = [PairGA(mobius(g, p.p), mobius(g, p.q), distinct_margin=0.0) for p in (x, y)]
    a, b = orbit_invariant_GA(x, y), orbit_invariant_GA(*moved, GenericityConfig(1e-9, 1e-9, 1e-9))
    assert a.sign == b.sign
    assert b.b == pytest.approx(a.b, rel=1e-8, abs=1e-8)


def test_transporter_to_GN_point():
    for v in (Vec2(2.0, -1.0), Vec2(1 + 1j, 0.5j)):
        h = transporter_to_GN_point(v)
        assert h.apply(Vec2.e1(v.field)).distance(v) < 1e-14


def test_sampler_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(trials=0)
    with pytest.raises(ValueError):
        SamplerConfig(seed=-1)
    assert SamplerConfig(field="complex").field is Field.COMPLEX


def test_degenerate_box_gives_rotations():
    cfg = SamplerConfig(r_n=0.0, r_a=0.0)
    g = sample_group(trial_rng(1, 0), cfg)
    assert (g @ g.adjoint()).distance(Mat2.identity()) < 1e-14


@pytest.mark.parametrize("fld", ["real", "complex"])
def test_sampled_parameters_round_trip(fld):
    cfg = SamplerConfig(field=fld)
    for i in range(200):
        g, x, t, _ = sample_group_params(trial_rng(7, i), cfg)
        dec = iwasawa(g)
        assert abs(dec.n - x) < 1e-9
        assert abs(dec.log_lambda - t) < 1e-9
        assert abs(x) <= cfg.r_n * math.sqrt(2) and abs(t) <= cfg.r_a


def test_trial_streams_are_deterministic():
    a = [sample_group(trial_rng(42, i), SamplerConfig()) for i in range(5)]
    b = [sample_group(trial_rng(42, i), SamplerConfig()) for i in reversed(range(5))]
    assert a == b[::-1]
    assert sample_group(trial_rng(43, 0), SamplerConfig()) != a[0]


def test_generic_samples_respect_margins():
    cfg = SamplerConfig(margins=GenericityConfig(0.3, 0.3, 0.3))
    rej = Counter()
    rng = trial_rng(0, 0)
    vs = sample_generic_vectors(rng, cfg, 4, rej)
    assert all(generic_vec_pair(u, v, cfg.margins) for i, u in enumerate(vs) for v in vs[i + 1:])
    pairs = sample_generic_pairsGA(rng, cfg, 3, rej)
    pts = [q for p in pairs for q in p]
    assert all(abs(p.a * q.b - p.b * q.a) >= 0.3 for i, p in enumerate(pts) for q in pts[i + 1:])
    assert all(abs(p.b) >= cfg.infinity_margin for p in pts)
    assert sum(rej.values()) > 0


def test_sampling_exhausted(monkeypatch):
    monkeypatch.setattr(sampling, "MAX_ATTEMPTS", 500)
    cfg = SamplerConfig(margins=GenericityConfig(1e-4, 0.95, 1e-4))
    with pytest.raises(SamplingExhausted):
        sample_generic_pairsGA(trial_rng(0, 0), cfg, 3)
    cfg = SamplerConfig(margins=GenericityConfig(0.99, 1e-4, 1e-4))
    with pytest.raises(SamplingExhausted):
        sample_generic_vectors(trial_rng(0, 0), cfg, 3)


def test_trial_stream_refills_and_has_sane_moments():
    s = trial_rng(1, 2)
    us = [s.random() for _ in range(5 * sampling.TrialStream.BLOCK)]
    assert all(0.0 <= u < 1.0 for u in us) and len(set(us)) == len(us)
    zs = [s.standard_normal() for _ in range(20_000)]
    mean = sum(zs) / len(zs)
    var = sum(z * z for z in zs) / len(zs) - mean ** 2
    assert abs(mean) < 0.05 and abs(var - 1.0) < 0.05
    lo, hi = s.uniform(-2.0, 3.0, size=2)
    assert -2.0 <= lo < 3.0 and -2.0 <= hi < 3.0


def test_transporter_to_GN_point_examples():
    assert transporter_to_GN_point(Vec2(1.0, 0.0)) == Mat2.identity()
    assert transporter_to_GN_point(Vec2(0.0, 1.0)).entries == (0.0, -1.0, 1.0, 0.0)


def test_generic_pair_of_pairs_examples():
    assert generic_pair_of_pairs(PairGA.at(math.inf, 0.0), PairGA.at(1.0, 2.0))
    assert not generic_pair_of_pairs(PairGA.at(math.inf, 0.0), PairGA.at(0.0, 2.0))
    assert not generic_pair_of_pairs(PairGA.at(math.inf, 0.0), PairGA.at(1e9, 2.0))
