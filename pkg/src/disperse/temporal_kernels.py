"""Closed-form time-domain response kernels.

The causal response is split as ``eps(tau) = 2 delta(tau) + f(tau)``; with the
half-weight endpoint convention of the delta function this folds into

    D(t) = E(t) + int_0^inf f(tau) E(t - tau) dtau,

so only the regular part ``f`` is represented here.  The delta weight is kept
as an attribute for bookkeeping and is never sampled.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import spectral_models as sm
from .errors import QuadratureFailure, UnsupportedModel


class KernelFamily(str, enum.Enum):
    DRUDE_REGULARIZED_ZERO = "drude_regularized_zero"
    DRUDE_COS_PATHOLOGICAL = "drude_cos_pathological"
    DRUDE_SIN_FORM = "drude_sin_form"
    DRUDE_THETA = "drude_theta"
    PLASMA_LINEAR = "plasma_linear"
    NORMAL_SKIN_CONSTANT = "normal_skin_constant"
    LORENTZ_DAMPED = "lorentz_damped"


_DECAYING = {KernelFamily.DRUDE_COS_PATHOLOGICAL, KernelFamily.DRUDE_THETA, KernelFamily.LORENTZ_DAMPED}

_ALLOWED_MODEL = {
    KernelFamily.DRUDE_REGULARIZED_ZERO: sm.Drude,
    KernelFamily.DRUDE_COS_PATHOLOGICAL: sm.Drude,
    KernelFamily.DRUDE_SIN_FORM: sm.Drude,
    KernelFamily.DRUDE_THETA: sm.RegularizedDrude,
    KernelFamily.PLASMA_LINEAR: sm.Plasma,
    KernelFamily.NORMAL_SKIN_CONSTANT: sm.NormalSkin,
    KernelFamily.LORENTZ_DAMPED: sm.LorentzSum,
}


@dataclass(frozen=True)
class TemporalKernel:
    """Regular part ``f(tau)`` of a response kernel, tagged by family.

    `model` carries the parameters.  ``delta_weight`` is the weight of the
    instantaneous ``delta(tau)`` part, applied analytically as ``E(t)``.
    """

    family: KernelFamily
    model: sm.DielectricModel
    delta_weight: float = 2.0

    def __post_init__(self):
        fam = KernelFamily(self.family)
        object.__setattr__(self, "family", fam)
        if not isinstance(self.model, _ALLOWED_MODEL[fam]):
            raise UnsupportedModel(f"{fam.value} kernel needs a {_ALLOWED_MODEL[fam].__name__} model")
        sm.require_valid(self.model)

    def __call__(self, tau):
        return eval_kernel(self, tau)

    @property
    def decays(self) -> bool:
        return self.family in _DECAYING

    @property
    def decay_rate(self) -> float:
        """Exponential rate of the slowest-decaying component (0 if it does not decay)."""
        m = self.model
        if self.family is KernelFamily.DRUDE_COS_PATHOLOGICAL:
            return m.gamma
        if self.family is KernelFamily.DRUDE_THETA:
            return min(m.theta, m.gamma)
        if self.family is KernelFamily.LORENTZ_DAMPED:
            return min(o.gamma for o in m.oscillators) / 2
        return 0.0

    def envelope(self, tau):
        """An upper bound on ``|f(tau)|`` for ``tau >= 0``."""
        tau = np.maximum(np.asarray(tau, dtype=float), 0.0)
        m = self.model
        fam = self.family
        if fam in (KernelFamily.DRUDE_REGULARIZED_ZERO, KernelFamily.DRUDE_SIN_FORM):
            return np.full_like(tau, m.omega_p ** 2 / m.gamma)
        if fam is KernelFamily.DRUDE_COS_PATHOLOGICAL:
            return m.omega_p ** 2 / m.gamma * np.exp(-m.gamma * tau)
        if fam is KernelFamily.DRUDE_THETA:
            a = min(m.theta, m.gamma)
            b = max(m.theta, m.gamma)
            cap = tau if a == b else np.minimum(tau, 1.0 / (b - a))
            return m.omega_p ** 2 * cap * np.exp(-a * tau)
        if fam is KernelFamily.PLASMA_LINEAR:
            return m.omega_p ** 2 * tau
        if fam is KernelFamily.NORMAL_SKIN_CONSTANT:
            return np.full_like(tau, 4 * math.pi * m.sigma0)
        return sum(o.strength / _lorentz_freq(o) * np.exp(-o.gamma * tau / 2) for o in m.oscillators)

    def to_json(self) -> dict:
        return {"family": self.family.value, "delta_weight": self.delta_weight,
                "model": sm.to_json(self.model)}

    @classmethod
    def from_json(cls, obj: dict) -> "TemporalKernel":
        return cls(KernelFamily(obj["family"]), sm.from_json(obj["model"]),
                   float(obj.get("delta_weight", 2.0)))


def _lorentz_freq(osc) -> float:
    return math.sqrt(osc.omega ** 2 - osc.gamma ** 2 / 4)


def kernel_for(model) -> TemporalKernel:
    """The physically selected kernel of `model` (never a pathological one)."""
    sm.require_valid(model)
    family = {
        sm.Drude: KernelFamily.DRUDE_REGULARIZED_ZERO,
        sm.RegularizedDrude: KernelFamily.DRUDE_THETA,
        sm.Plasma: KernelFamily.PLASMA_LINEAR,
        sm.NormalSkin: KernelFamily.NORMAL_SKIN_CONSTANT,
        sm.LorentzSum: KernelFamily.LORENTZ_DAMPED,
    }[type(model)]
    return TemporalKernel(family, model)


def pathological_kernel(model, which: str) -> TemporalKernel:
    """Drude kernels obtained by inverting only the cosine or only the sine relation.

    ``which='cos'`` gives ``-(wp^2/gamma) exp(-gamma tau)``, which reproduces the
    real part of the Drude permittivity but not the imaginary part.
    ``which='sin'`` gives ``(wp^2/gamma)(1 - exp(-gamma tau))``, identical in
    value to the +i0 kernel.
    """
    if not isinstance(model, sm.Drude):
        raise UnsupportedModel(f"pathological kernels exist only for Drude, got {type(model).__name__}")
    if which == "cos":
        return TemporalKernel(KernelFamily.DRUDE_COS_PATHOLOGICAL, model)
    if which == "sin":
        return TemporalKernel(KernelFamily.DRUDE_SIN_FORM, model)
    raise ValueError(f"which must be 'cos' or 'sin', got {which!r}")


def eval_kernel(kernel: TemporalKernel, tau):
    """Evaluate ``f(tau)``; identically zero for ``tau < 0``.

    All exponentials are formed as ``exp(-rate*tau)`` or ``expm1``, so large
    ``rate*tau`` underflows to zero instead of producing inf/nan.
    """
    tau = np.asarray(tau, dtype=float)
    t = np.maximum(tau, 0.0)
    m = kernel.model
    fam = kernel.family
    if fam in (KernelFamily.DRUDE_REGULARIZED_ZERO, KernelFamily.DRUDE_SIN_FORM):
        val = -(m.omega_p ** 2 / m.gamma) * np.expm1(-m.gamma * t)
    elif fam is KernelFamily.DRUDE_COS_PATHOLOGICAL:
        val = -(m.omega_p ** 2 / m.gamma) * np.exp(-m.gamma * t)
    elif fam is KernelFamily.DRUDE_THETA:
        a = min(m.theta, m.gamma)
        d = abs(m.gamma - m.theta)
        if d == 0.0:
            # removable 0/0 at theta == gamma
            val = m.omega_p ** 2 * t * np.exp(-a * t)
        else:
            val = m.omega_p ** 2 * np.exp(-a * t) * (-np.expm1(-d * t)) / d
    elif fam is KernelFamily.PLASMA_LINEAR:
        val = m.omega_p ** 2 * t
    elif fam is KernelFamily.NORMAL_SKIN_CONSTANT:
        val = np.full_like(t, 4 * math.pi * m.sigma0)
    else:
        val = np.zeros_like(t)
        for o in m.oscillators:
            om = _lorentz_freq(o)
            val = val + o.strength / om * np.exp(-0.5 * o.gamma * t) * np.sin(om * t)
    val = np.where(tau < 0, 0.0, val)
    return val[()] if val.ndim == 0 else val


def gamma_limit_kernel(kernel: TemporalKernel) -> TemporalKernel:
    """The collisionless (gamma -> 0) limit of a Drude kernel: ``wp^2 tau``.

    Convergence is pointwise and first order in gamma, see
    :func:`gamma_limit_deviation`.
    """
    if kernel.family not in (KernelFamily.DRUDE_REGULARIZED_ZERO, KernelFamily.DRUDE_SIN_FORM):
        raise UnsupportedModel(f"gamma limit is defined for the Drude kernel, got {kernel.family.value}")
    return TemporalKernel(KernelFamily.PLASMA_LINEAR, sm.Plasma(kernel.model.omega_p))


def gamma_limit_deviation(omega_p: float, gammas, taus) -> np.ndarray:
    """``max_tau |f_D(tau; gamma) - wp^2 tau|`` for each gamma in `gammas`."""
    taus = np.asarray(taus, dtype=float)
    plasma = TemporalKernel(KernelFamily.PLASMA_LINEAR, sm.Plasma(omega_p))
    ref = eval_kernel(plasma, taus)
    out = []
    for g in gammas:
        k = TemporalKernel(KernelFamily.DRUDE_REGULARIZED_ZERO, sm.Drude(omega_p, g))
        out.append(np.max(np.abs(eval_kernel(k, taus) - ref)))
    return np.array(out)


def truncation_horizon(kernel: TemporalKernel, damping: float = 0.0, rel: float = 1e-15) -> float:
    """Smallest convenient ``T`` with ``envelope(T) exp(-damping T) < rel * peak``.

    Raises
    ------
    QuadratureFailure
        When neither the kernel nor the extra damping decays; the integral
        over the half line does not exist and the caller must choose a horizon.
    """
    rate = kernel.decay_rate + damping
    if rate <= 0:
        raise QuadratureFailure(
            f"{kernel.family.value} kernel is not integrable on [0, inf); supply a horizon or damping")
    T = math.log(1.0 / rel) / rate
    for _ in range(200):
        grid = np.linspace(0.0, T, 512)
        weighted = kernel.envelope(grid) * np.exp(-damping * grid)
        peak = weighted.max()
        if weighted[-1] <= rel * peak:
            return float(T)
        T *= 1.25
    raise QuadratureFailure("could not locate a truncation horizon")
