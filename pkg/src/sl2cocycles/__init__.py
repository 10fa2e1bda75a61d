"""Explicit cocycles for SL(2, R) and SL(2, C) acting on G/N and G/A.

Closed-form Iwasawa projections, transporter matrices, a small bicomplex
calculus, the kernel cocycles beta/omega, and a seeded harness that checks
their identities numerically.
"""

from __future__ import annotations

from .core import (
    Field,
    IwasawaNAK,
    Mat2,
    PairGA,
    ProjPoint,
    Vec2,
    cross_ratio,
    delta,
    iwasawa,
    mobius,
    orientation,
    project_A,
    project_N,
    transporter_pair,
    transporter_triple,
    transporter_vectors,
)
from .cocycles import (
    AFunctional,
    NFunctional,
    beta_A_chase,
    beta_A_closed,
    beta_N_chase,
    beta_N_closed,
    omega_A,
    omega_N,
)
from .errors import CocycleError, GenericityError
from .harness import VerificationReport, run_suite, run_suites
from .sampling import SamplerConfig
from .spaces import GenericityConfig

__version__ = "0.1.0"
