"""Electric displacement for a Gaussian probe field, by three routes.

* convolution: ``D(t) = E(t) + int_0^inf f(tau) E(t - tau) dtau`` with the kernel
  from :mod:`disperse.temporal_kernels`, by adaptive quadrature;
* spectral: ``D(t) = int eps(w) E(w) exp(-i w t) dw`` on a uniform frequency grid;
* closed form: erf / erfc expressions for the Drude, theta-Drude and Lorentz
  models, evaluated through :func:`~disperse.special_functions.exp_sq_erfc`.

For the bare Drude (and normal-skin) model the spectral route does not give
``D``: the ``1/w`` singularity of ``eps(w) E(w)`` is only summable as a
principal value on a grid symmetric about zero, and the result, labelled
``D_tilde``, is offset from ``D`` by a constant.  That offset is reported, not
hidden.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import spectral_models as sm
from . import special_functions as sf
from ._quad import quad
from .errors import DisperseError, UnboundedSpectrum, UnsupportedModel
from .temporal_kernels import KernelFamily, TemporalKernel, kernel_for
from .transform_engine import SampledSignal, SampledSpectrum, signal_of

# Gaussian tail below 1e-16 of the peak
_GAUSS_LOG_CUT = math.log(1e16)


@dataclass(frozen=True)
class GaussianPulse:
    """``E(t) = amplitude * exp(-beta t^2)``."""

    amplitude: float = 1.0
    beta: float = 0.2

    def __post_init__(self):
        if not math.isfinite(self.amplitude):
            raise ValueError("amplitude must be finite")
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise ValueError("beta must be positive")

    def to_json(self):
        return {"E0": self.amplitude, "beta": self.beta}


def pulse_value(p: GaussianPulse, t):
    t = np.asarray(t, dtype=float)
    return p.amplitude * np.exp(-p.beta * t * t)


def pulse_spectrum(p: GaussianPulse, omega):
    """``(1/2pi) int E(t) exp(i w t) dt = E0 exp(-w^2 / 4 beta) / (2 sqrt(pi beta))``."""
    omega = np.asarray(omega, dtype=float)
    return p.amplitude * np.exp(-omega * omega / (4 * p.beta)) / (2 * math.sqrt(math.pi * p.beta))


# ---------------------------------------------------------------------------
# convolution route

def displacement_convolution(kernel: TemporalKernel, p: GaussianPulse, t, rel_tol: float = 1e-9):
    """``E(t) + int_0^inf f(tau) E(t - tau) dtau`` by adaptive quadrature.

    The integral is restricted to the window where the Gaussian exceeds 1e-16
    of its peak, which makes it finite for every kernel family, including the
    non-integrable ones.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    half = math.sqrt(_GAUSS_LOG_CUT / p.beta)
    probe = np.linspace(0.0, 1.0, 3)
    out = np.empty(t_arr.size)
    for i, ti in enumerate(t_arr):
        lo, hi = max(0.0, ti - half), ti + half
        acc = 0.0
        if hi > 0.0:
            def integrand(tau, ti=ti):
                return float(kernel(tau)) * math.exp(-p.beta * (ti - tau) ** 2)

            scale = float(np.max(kernel.envelope(lo + (hi - lo) * probe))) * math.sqrt(math.pi / p.beta)
            pts = [ti] if lo < ti < hi else None
            acc, _ = quad(integrand, lo, hi, points=pts, epsrel=rel_tol, epsabs=1e-3 * rel_tol * scale)
        out[i] = p.amplitude * (math.exp(-p.beta * ti * ti) + acc)
    return out[0] if np.ndim(t) == 0 else out


# ---------------------------------------------------------------------------
# closed forms

def _gauss_erfc_term(a, p: GaussianPulse, t):
    """``exp(a^2/4beta - a t) erfc(a/(2 sqrt beta) - sqrt(beta) t)``, overflow free."""
    sb = math.sqrt(p.beta)
    B = a / (2 * sb) - sb * t
    return sf.exp_sq_erfc(B, log_scale=-p.beta * t * t)


def displacement_closed_form(model, p: GaussianPulse, t):
    """Analytic displacement for Drude, RegularizedDrude and LorentzSum models.

    Raises
    ------
    UnsupportedModel
        For Plasma and NormalSkin, which have no closed form here; use
        :func:`displacement_convolution`.
    """
    sm.require_valid(model)
    t = np.asarray(t, dtype=float)
    E0, beta = p.amplitude, p.beta
    root = math.sqrt(math.pi / beta)
    field_ = pulse_value(p, t)
    if isinstance(model, sm.Drude):
        c = E0 * model.omega_p ** 2 / (2 * model.gamma) * root
        # 1 + erf(x) written as erfc(-x) to avoid cancellation for t << 0
        bracket = sf.erfc_real(-math.sqrt(beta) * t) - np.real(_gauss_erfc_term(model.gamma, p, t))
        return field_ + c * bracket
    if isinstance(model, sm.RegularizedDrude):
        th, g = model.theta, model.gamma
        if th == g:
            # d/da of exp(B^2) erfc(B) is 2B exp(B^2) erfc(B) - 2/sqrt(pi)
            sb = math.sqrt(beta)
            B = g / (2 * sb) - sb * t
            S = np.real(sf.exp_sq_erfc(B, log_scale=-beta * t * t))
            dG = (2 * B * S - 2 / math.sqrt(math.pi) * np.exp(-beta * t * t)) / (2 * sb)
            return field_ - E0 * model.omega_p ** 2 / 2 * root * dG
        c = E0 * model.omega_p ** 2 / (2 * (g - th)) * root
        return field_ + c * np.real(_gauss_erfc_term(th, p, t) - _gauss_erfc_term(g, p, t))
    if isinstance(model, sm.LorentzSum):
        sb = math.sqrt(beta)
        acc = np.zeros_like(t)
        for o in model.oscillators:
            s = math.sqrt(4 * o.omega ** 2 - o.gamma ** 2)
            B = (o.gamma - 4 * beta * t - 1j * s) / (4 * sb)
            acc = acc + o.strength / s * np.imag(sf.exp_sq_erfc(B, log_scale=-beta * t * t))
        return field_ + E0 * root * acc
    raise UnsupportedModel(f"no closed-form displacement for {type(model).__name__}")


# ---------------------------------------------------------------------------
# spectral route

@dataclass(frozen=True)
class SpectralSettings:
    """Frequency grid for the spectral route; ``None`` picks a default from the scenario."""

    domega: float | None = None
    omega_max: float | None = None
    symmetric_cancellation: bool = True


def _transient_rate(model) -> float | None:
    if isinstance(model, sm.Drude):
        return model.gamma
    if isinstance(model, sm.RegularizedDrude):
        return min(model.theta, model.gamma)
    if isinstance(model, sm.LorentzSum):
        return min(o.gamma for o in model.oscillators) / 2
    return None


def _frequency_grid(model, p, t, settings: SpectralSettings, midpoint: bool):
    omega_max = settings.omega_max or 2 * math.sqrt(p.beta * 46.0)
    domega = settings.domega
    if domega is None:
        rate = _transient_rate(model)
        tail = 40.0 / rate if rate else 10.0 / math.sqrt(p.beta)
        # the grid period 2 pi / domega must exceed twice the support of interest
        domega = min(0.05, 2 * math.pi / (2 * (np.max(np.abs(t)) + tail)))
    n_half = int(math.ceil(omega_max / domega))
    if midpoint:
        omega0 = -(n_half - 0.5) * domega
        n = 2 * n_half
    else:
        omega0 = -n_half * domega
        n = 2 * n_half + 1
    return omega0, domega, n


def displacement_spectral(model, p: GaussianPulse, t, settings: SpectralSettings | None = None) -> SampledSignal:
    """Inverse transform of ``eps(w) E(w)`` on the uniform time grid `t`.

    For models with a simple pole at ``w = 0`` (Drude, normal skin) the grid
    is placed symmetrically about zero without sampling it, which sums the odd
    ``1/w`` part as a principal value.  The output is then ``D_tilde``
    (``metadata['quantity']``), not ``D``.

    Raises
    ------
    UnboundedSpectrum
        For the plasma model (even ``1/w^2`` singularity) and, with
        ``symmetric_cancellation=False``, for any model singular at zero.
    """
    sm.require_valid(model)
    settings = settings or SpectralSettings()
    t = np.asarray(t, dtype=float)
    if t.ndim != 1 or t.size < 2:
        raise ValueError("t must be a uniform grid of at least two points")
    dt = t[1] - t[0]
    if not np.allclose(np.diff(t), dt, rtol=1e-9, atol=0):
        raise ValueError("t grid must be uniform")

    singular = isinstance(model, (sm.Drude, sm.Plasma, sm.NormalSkin))
    if isinstance(model, sm.Plasma):
        raise UnboundedSpectrum("eps(w) E(w) ~ 1/w^2 at w = 0 is not integrable (plasma model)")
    if singular and not settings.symmetric_cancellation:
        raise UnboundedSpectrum("eps(w) E(w) is unbounded in any vicinity of w = 0; "
                                "enable symmetric cancellation to obtain D_tilde")
    omega0, domega, n = _frequency_grid(model, p, t, settings, midpoint=singular)
    omega = omega0 + domega * np.arange(n)
    values = sm.eval_epsilon(model, omega) * pulse_spectrum(p, omega)
    spec = SampledSpectrum(omega0, domega, values)
    sig = signal_of(spec, t0=float(t[0]), dt=float(dt), n=t.size)
    sig.metadata.update(quantity="D_tilde" if singular else "D", domega=domega, n_omega=n)
    return sig


# ---------------------------------------------------------------------------
# limits

@dataclass(frozen=True)
class Asymptotics:
    D_plus: float
    D_minus: float
    D_tilde_plus: float | None = None
    D_tilde_minus: float | None = None


def residual_displacement(model, p: GaussianPulse) -> float:
    """``D(+inf)`` for a conducting model: ``E0 f(inf) sqrt(pi/beta)``."""
    if isinstance(model, sm.Drude):
        return p.amplitude * model.omega_p ** 2 / model.gamma * math.sqrt(math.pi / p.beta)
    if isinstance(model, sm.NormalSkin):
        return p.amplitude * 4 * math.pi * model.sigma0 * math.sqrt(math.pi / p.beta)
    return 0.0


def asymptotic_limits(model, p: GaussianPulse) -> Asymptotics:
    """Exact ``t -> +-inf`` limits of D (and of D_tilde where it differs).

    Raises
    ------
    UnsupportedModel
        For the plasma model, whose displacement grows without bound.
    """
    sm.require_valid(model)
    if isinstance(model, sm.Plasma):
        raise UnsupportedModel("Divergent: plasma-model displacement grows linearly in t")
    if isinstance(model, (sm.Drude, sm.NormalSkin)):
        res = residual_displacement(model, p)
        return Asymptotics(res, 0.0, res / 2, -res / 2)
    return Asymptotics(0.0, 0.0, 0.0, 0.0)


def t_star(model, p: GaussianPulse) -> float:
    """Finite stand-in for ``t = inf``: ``max(30/sqrt(beta), 20/rate)``.

    ``rate`` is the slowest exponential decay of the response transient
    (``gamma_j/2`` for Lorentz oscillators).
    """
    rate = _transient_rate(model)
    T = 30.0 / math.sqrt(p.beta)
    if rate:
        T = max(T, 20.0 / rate)
    return T


@dataclass
class LimitProbe:
    """``D_theta(+-T)`` tabulated over a theta ladder (row 0 is theta = 0) and a T ladder."""

    thetas: list
    Ts: list
    D_plus: np.ndarray
    D_minus: np.ndarray
    residual: float

    @property
    def limit_T_then_theta(self) -> float:
        """lim_{T->inf} lim_{theta->0}: theta = 0 row at the largest T."""
        return float(self.D_plus[0, -1])

    @property
    def limit_theta_then_T(self) -> float:
        """lim_{theta->0} lim_{T->inf}: largest-T column at the smallest positive theta."""
        return float(self.D_plus[-1, -1])

    @property
    def gap(self) -> float:
        return self.limit_T_then_theta - self.limit_theta_then_T

    def evidence(self) -> dict:
        """Monotone trends that back up the two iterated limits (thetas must be decreasing)."""
        pos = self.D_plus[1:]
        return {
            # for fixed T, D_theta(T) increases towards the theta = 0 value as theta shrinks
            "theta_column_monotone": bool(np.all(np.diff(self.D_plus[1:], axis=0) >= -1e-12)
                                          and np.all(self.D_plus[-1] <= self.D_plus[0] + 1e-12)),
            # the theta = 0 row approaches the residual from below
            "theta0_row_monotone": bool(np.all(np.diff(self.D_plus[0]) >= -1e-12)),
            # every fixed theta > 0 decays between the two largest T
            "fixed_theta_decays": bool(np.all(np.abs(pos[:, -1]) <= np.abs(pos[:, -2]) + 1e-15)),
            "minus_side_max": float(np.max(np.abs(self.D_minus))),
        }

    def to_json(self) -> dict:
        return {"thetas": self.thetas, "T": self.Ts, "D_plus": self.D_plus.tolist(),
                "D_minus": self.D_minus.tolist(), "residual": self.residual,
                "limit_T_then_theta": self.limit_T_then_theta,
                "limit_theta_then_T": self.limit_theta_then_T, "gap": self.gap,
                "evidence": self.evidence()}


def limit_order_probe(model, p: GaussianPulse, thetas, Ts) -> LimitProbe:
    """Tabulate the theta-regularized displacement over (theta, T) ladders.

    `model` is a Drude or RegularizedDrude model (only wp and gamma are used).
    `thetas` should be decreasing; a theta = 0 row, evaluated with the bare
    Drude closed form, is prepended.
    """
    if not isinstance(model, (sm.Drude, sm.RegularizedDrude)):
        raise UnsupportedModel("limit probe needs a Drude-family model")
    base = sm.Drude(model.omega_p, model.gamma)
    thetas = [float(x) for x in thetas]
    Ts = np.asarray(Ts, dtype=float)
    rows_p, rows_m = [], []
    for th in [0.0] + thetas:
        m = base if th == 0.0 else sm.RegularizedDrude(model.omega_p, model.gamma, th)
        rows_p.append(displacement_closed_form(m, p, Ts))
        rows_m.append(displacement_closed_form(m, p, -Ts))
    return LimitProbe([0.0] + thetas, Ts.tolist(), np.array(rows_p), np.array(rows_m),
                      residual_displacement(base, p))


# ---------------------------------------------------------------------------
# consistency report

@dataclass
class ConsistencyReport:
    scenario_id: str
    model: dict
    pulse: dict
    t: np.ndarray
    E: np.ndarray
    paths: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    deviations: dict = field(default_factory=dict)
    spectral_quantity: str | None = None
    t_star: float | None = None
    at_t_star: dict = field(default_factory=dict)
    limits: dict | None = None
    offset: dict | None = None

    def max_abs_D(self) -> float:
        vals = [np.max(np.abs(v)) for v in self.paths.values()]
        return float(max(vals)) if vals else 0.0

    def to_json(self) -> dict:
        return {
            "scenario": self.scenario_id,
            "model": self.model,
            "pulse": self.pulse,
            "paths": sorted(self.paths),
            "failures": self.failures,
            "deviations": self.deviations,
            "spectral_quantity": self.spectral_quantity,
            "t_star": self.t_star,
            "at_t_star": self.at_t_star,
            "limits": self.limits,
            "offset": self.offset,
            "max_abs_D": self.max_abs_D(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        """Columns t, E, D_conv, D_spec, D_closed, flags; 17 significant digits."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "E", "D_conv", "D_spec", "D_closed", "flags"])
        flags = []
        if self.spectral_quantity == "D_tilde":
            flags.append("D_spec=D_tilde")
        flags += [f"{k}:failed" for k in sorted(self.failures)]
        flag = ";".join(flags)
        for i, ti in enumerate(self.t):
            row = [_fmt(ti), _fmt(self.E[i])]
            for name in ("conv", "spec", "closed"):
                row.append(_fmt(self.paths[name][i]) if name in self.paths else "")
            row.append(flag)
            w.writerow(row)
        return buf.getvalue()


def _fmt(x) -> str:
    return "%.17g" % float(x)


def consistency_report(model, p: GaussianPulse, t, settings: SpectralSettings | None = None,
                       scenario_id: str = "scenario", rel_tol: float = 1e-9) -> ConsistencyReport:
    """Run every applicable displacement route on the shared grid `t`.

    A route that raises is recorded in ``failures`` and skipped; the report is
    always produced.  Deviations are computed only between routes that
    compute the same quantity; a ``D_tilde`` spectral route is instead
    characterised by its constant offset from the convolution route.
    """
    t = np.asarray(t, dtype=float)
    rep = ConsistencyReport(scenario_id, sm.to_json(model), p.to_json(), t, pulse_value(p, t))
    Ts = t_star(model, p)
    rep.t_star = Ts
    try:
        kernel = kernel_for(model)
        rep.paths["conv"] = displacement_convolution(kernel, p, t, rel_tol=rel_tol)
        rep.at_t_star["conv"] = displacement_convolution(kernel, p, np.array([-Ts, Ts]), rel_tol=rel_tol).tolist()
    except DisperseError as exc:
        rep.failures["conv"] = f"{type(exc).__name__}: {exc}"
    try:
        sig = displacement_spectral(model, p, t, settings)
        rep.paths["spec"] = sig.values
        rep.spectral_quantity = sig.metadata["quantity"]
        rep.at_t_star["spec"] = displacement_spectral(model, p, np.array([-Ts, Ts]), settings).values.tolist()
    except DisperseError as exc:
        rep.failures["spec"] = f"{type(exc).__name__}: {exc}"
    try:
        rep.paths["closed"] = displacement_closed_form(model, p, t)
        rep.at_t_star["closed"] = displacement_closed_form(model, p, np.array([-Ts, Ts])).tolist()
    except DisperseError as exc:
        rep.failures["closed"] = f"{type(exc).__name__}: {exc}"
    try:
        lim = asymptotic_limits(model, p)
        rep.limits = {"D_plus": lim.D_plus, "D_minus": lim.D_minus,
                      "D_tilde_plus": lim.D_tilde_plus, "D_tilde_minus": lim.D_tilde_minus}
    except DisperseError as exc:
        rep.failures["limits"] = f"{type(exc).__name__}: {exc}"
        rep.limits = {"divergent": True}

    same = [k for k in ("conv", "closed", "spec") if k in rep.paths
            and (k != "spec" or rep.spectral_quantity == "D")]
    for i, a in enumerate(same):
        for b in same[i + 1:]:
            rep.deviations[f"{a}-{b}"] = float(np.max(np.abs(rep.paths[a] - rep.paths[b])))
    if rep.spectral_quantity == "D_tilde" and "spec" in rep.paths:
        ref = rep.paths.get("conv", rep.paths.get("closed"))
        if ref is not None:
            diff = rep.paths["spec"] - ref
            rep.offset = {"mean": float(np.mean(diff)), "std": float(np.std(diff)),
                          "expected": -residual_displacement(model, p) / 2}
    return rep
