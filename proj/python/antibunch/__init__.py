"""Two-particle correlations of a thermal fermion or boson beam."""

import json

from ._core import (  # noqa: F401
    AngularRoute,
    BeamSpec,
    CollinearOptions,
    CollinearSetup,
    ConvergenceError,
    CorrResult,
    DetectorSpec,
    DipShape,
    DomainError,
    Method,
    ParameterError,
    QuadSpec,
    SourceSpec,
    Statistics,
    SymmetryError,
    angular_half_width,
    c_analytic,
    c_normalized,
    c_offaxis,
    c_symmetric_pair,
    coherence_lengths,
    dip_shape,
    exchange_sign,
    farfield_amplitude,
    interference,
    momentum_oracle,
    occupation,
    preset_names,
    radial_integral_check,
    rho1,
    run_cli,
    saddle_theta0,
)
from . import _core

__version__ = "0.1.0"


def dip_report(name):
    """Visibility factors of a named experiment preset as a dict."""
    return json.loads(_core.dip_report_json(name))


def dip_report_text(name):
    return _core.dip_report_text(name)


def reference_setup(d=0.0, a=0.0, beta=5.0, z1=160.0, z2=160.0):
    """Collinear setup with k0 = 20, dk = 0.5, w_z = 0.05 and mu at the top of the window."""
    s = CollinearSetup()
    s.src.beta = beta
    s.src.mu = 0.5 * (s.beam.k0 + s.beam.dk_z) ** 2
    s.det = DetectorSpec(a, d)
    s.z1, s.z2 = z1, z2
    return s
