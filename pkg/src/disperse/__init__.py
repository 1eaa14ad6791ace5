"""Causal response of dispersive media to pulsed fields.

Dielectric models, their time-domain kernels, regularized Fourier inversion
and the displacement field driven by a Gaussian pulse.
"""
from .errors import (DisperseError, ExtrapolationDiverged, InvalidModel, NotDecayed, Overflow,
                     PoleEvaluation, QuadratureFailure, SingularAtZero, UnboundedSpectrum,
                     UnsupportedModel)
from .spectral_models import (Drude, LorentzSum, NormalSkin, Oscillator, Plasma, PVSettings,
                              RegularizedDrude, eval_epsilon, kramers_kronig_residual, poles,
                              validate)
from .temporal_kernels import KernelFamily, TemporalKernel, eval_kernel, kernel_for, pathological_kernel
from .transform_engine import (RegularizationLadder, SampledSignal, SampledSpectrum, abel_limit,
                               abel_kernel_recovery, drude_contour_oracle, richardson, signal_of,
                               spectrum_of, theta_regularized_kernel_recovery)
from .response_lab import (GaussianPulse, SpectralSettings, asymptotic_limits, consistency_report,
                           displacement_closed_form, displacement_convolution, displacement_spectral,
                           limit_order_probe, residual_displacement)

__version__ = "0.1.0"
