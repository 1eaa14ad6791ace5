"""Fourier machinery with a single fixed convention.

Convention (tag ``"paper-eq4"``)::

    E(t) = int E(w) exp(-i w t) dw                     (inverse, no prefactor)
    E(w) = 1/(2 pi) int E(t) exp(+i w t) dt            (forward)
    eps(w) - 1 = int_0^inf f(tau) exp(+i w tau) dtau

Discrete transforms are direct trapezoid sums over the sampled grid rather
than an FFT, so the sign and the 2 pi are visible in one place.

Half-line integrals of kernels that do not decay (Drude, plasma, normal
skin) exist only after regularization.  Two independent realizations of the
+i0 rule are provided and are expected to agree:

* Abel damping, ``f(tau) -> f(tau) exp(-eta tau)`` (equivalently ``w -> w + i eta``),
  followed by extrapolation ``eta -> 0``;
* the theta-modified Drude model with its pole moved to ``-i theta``,
  followed by extrapolation ``theta -> 0``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import spectral_models as sm
from ._quad import default_rel_tol, quad
from .errors import ExtrapolationDiverged, NotDecayed, QuadratureFailure, UnsupportedModel
from .temporal_kernels import TemporalKernel, truncation_horizon

LOGGER = logging.getLogger(__name__)

CONVENTION = "paper-eq4"
DECAY_THRESHOLD = 1e-12


@dataclass
class SampledSignal:
    """Real samples ``values[k] = x(t0 + k dt)``."""

    t0: float
    dt: float
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if self.values.ndim != 1 or self.values.size < 2:
            raise ValueError("a signal needs at least two samples")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("signal values must be finite")

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)


@dataclass
class SampledSpectrum:
    """Complex samples ``values[k] = X(omega0 + k domega)``."""

    omega0: float
    domega: float
    values: np.ndarray
    convention: str = CONVENTION
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if not self.domega > 0:
            raise ValueError("domega must be positive")
        if self.convention != CONVENTION:
            raise ValueError(f"unsupported transform convention {self.convention!r}")

    @property
    def omega(self) -> np.ndarray:
        return self.omega0 + self.domega * np.arange(self.values.size)


def uniform_grid(start: float, stop: float, n: int):
    """(start, step) of an n-point grid including both end points."""
    if n < 2 or not stop > start:
        raise ValueError("grid needs n >= 2 and stop > start")
    return start, (stop - start) / (n - 1)


def _check_decay(values, what):
    mag = np.abs(values)
    peak = mag.max()
    if peak == 0.0:
        return
    edge = max(mag[0], mag[-1])
    if edge > DECAY_THRESHOLD * peak:
        raise NotDecayed(f"{what} has not decayed at the grid ends (|edge|/peak = {edge / peak:.3g})")


def _trapezoid_weights(n, h):
    w = np.full(n, h)
    w[0] = w[-1] = h / 2
    return w


def _direct_sum(x, xvals, y, sign, chunk=256):
    """``sum_j xvals_j exp(sign * i * y_k * x_j)`` for every y_k."""
    out = np.empty(y.size, dtype=complex)
    for s in range(0, y.size, chunk):
        yy = y[s:s + chunk, None]
        out[s:s + chunk] = np.exp(sign * 1j * yy * x[None, :]) @ xvals
    return out


def spectrum_of(signal: SampledSignal, omega0: float | None = None, domega: float | None = None,
                n: int | None = None) -> SampledSpectrum:
    """Forward transform ``(1/2pi) int x(t) exp(i w t) dt`` by trapezoid summation.

    The default frequency grid is centred on zero with the same number of
    points as the signal and spacing ``2 pi / (n dt)``.

    Raises
    ------
    NotDecayed
        If the signal does not vanish (below 1e-12 of its peak) at both ends;
        truncating such a signal would silently change its transform.
    """
    _check_decay(signal.values, "signal")
    if n is None:
        n = signal.values.size
    if domega is None:
        domega = 2 * math.pi / (n * signal.dt)
    if omega0 is None:
        omega0 = -domega * (n - 1) / 2
    omega = omega0 + domega * np.arange(n)
    xw = signal.values * _trapezoid_weights(signal.values.size, signal.dt)
    vals = _direct_sum(signal.t, xw.astype(complex), omega, +1) / (2 * math.pi)
    return SampledSpectrum(omega0, domega, vals)


def conjugate_symmetry_error(spectrum: SampledSpectrum) -> float:
    """``max |X(-w) - conj X(w)|`` relative to ``max |X|`` for a grid symmetric about 0."""
    w = spectrum.omega
    if not np.allclose(w, -w[::-1], rtol=0, atol=1e-9 * spectrum.domega):
        raise ValueError("frequency grid is not symmetric about zero")
    v = spectrum.values
    peak = np.abs(v).max()
    if peak == 0:
        return 0.0
    return float(np.abs(v[::-1] - np.conj(v)).max() / peak)


def signal_of(spectrum: SampledSpectrum, t0: float | None = None, dt: float | None = None,
              n: int | None = None) -> SampledSignal:
    """Inverse transform ``int X(w) exp(-i w t) dw`` by trapezoid summation.

    The result is real by construction; the discarded imaginary part is
    reported in ``metadata['max_imag_rel']`` (relative to ``sum |X| dw``) and
    flagged with a warning entry when it exceeds 1e-9.
    """
    _check_decay(spectrum.values, "spectrum")
    if n is None:
        n = spectrum.values.size
    if dt is None:
        dt = 2 * math.pi / (n * spectrum.domega)
    if t0 is None:
        t0 = -dt * (n - 1) / 2
    t = t0 + dt * np.arange(n)
    xw = spectrum.values * _trapezoid_weights(spectrum.values.size, spectrum.domega)
    vals = _direct_sum(spectrum.omega, xw, t, -1)
    # |x(t)| <= sum |X| dw bounds the output; measure the residue against it
    bound = float(np.sum(np.abs(xw)))
    imag_rel = float(np.abs(vals.imag).max() / bound) if bound > 0 else 0.0
    meta = {"max_imag_rel": imag_rel}
    if imag_rel > 1e-9:
        meta["warning"] = f"imaginary residue {imag_rel:.3g}: spectrum is not conjugate symmetric"
        LOGGER.warning(meta["warning"])
    return SampledSignal(t0, dt, vals.real, meta)


# ---------------------------------------------------------------------------
# half-line transforms of kernels

def _halfline(kernel: TemporalKernel, omega: float, eta: float, weight: str,
              horizon: float | None, rel_tol: float | None) -> float:
    if not omega > 0:
        raise ValueError("omega must be positive")
    if eta < 0:
        raise ValueError("eta must be non-negative")
    rel_tol = default_rel_tol() if rel_tol is None else rel_tol
    T = horizon if horizon is not None else truncation_horizon(kernel, eta)

    def g(tau):
        return kernel(tau) * math.exp(-eta * tau)

    # panels of a few dozen periods keep each QAWO call cheap
    panel = 32 * 2 * math.pi / omega
    edges = np.append(np.arange(0.0, T, panel), T)
    probe = np.linspace(0.0, T, 4096)
    scale = np.trapezoid(kernel.envelope(probe) * np.exp(-eta * probe), probe)
    epsabs = 1e-3 * rel_tol * scale / len(edges)
    # the integrated envelope bounds |result|, so this share keeps the sum within rel_tol
    accept = rel_tol * scale / len(edges)

    def panel(a, b, depth=0):
        # a part far smaller than its partner (cos at resonance) cannot reach
        # epsrel on its own; its roundoff-limited estimate is kept once the
        # error is below this panel's share, otherwise the panel is halved
        val, err = quad(g, a, b, weight=weight, wvar=omega, epsrel=rel_tol, epsabs=epsabs,
                        allow_roundoff=True)
        if err <= max(accept, rel_tol * abs(val)) or depth >= 8:
            return val
        m = 0.5 * (a + b)
        return panel(a, m, depth + 1) + panel(m, b, depth + 1)

    return math.fsum(panel(a, b) for a, b in zip(edges[:-1], edges[1:]))


def abel_halfline_cosine(kernel: TemporalKernel, omega: float, eta: float,
                         horizon: float | None = None, rel_tol: float | None = None) -> float:
    """``int_0^inf f(tau) exp(-eta tau) cos(omega tau) dtau``.

    The half line is truncated where the damped kernel envelope falls below
    1e-15 of its peak.  ``eta = 0`` is accepted only for decaying kernels
    (otherwise :class:`QuadratureFailure`), unless `horizon` is given.
    """
    return _halfline(kernel, omega, eta, "cos", horizon, rel_tol)


def abel_halfline_sine(kernel: TemporalKernel, omega: float, eta: float,
                       horizon: float | None = None, rel_tol: float | None = None) -> float:
    """Sine counterpart of :func:`abel_halfline_cosine`."""
    return _halfline(kernel, omega, eta, "sin", horizon, rel_tol)


def halfline_transform(kernel: TemporalKernel, omega: float, eta: float = 0.0) -> complex:
    """``int_0^inf f(tau) exp(-eta tau) exp(i omega tau) dtau``, i.e. ``eps(omega + i eta) - 1``."""
    return complex(abel_halfline_cosine(kernel, omega, eta), abel_halfline_sine(kernel, omega, eta))


# ---------------------------------------------------------------------------
# extrapolation

@dataclass(frozen=True)
class RegularizationLadder:
    """Strictly decreasing positive regularization parameters."""

    values: tuple
    order: int = 2

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if any(v <= 0 for v in vals):
            raise ValueError("ladder values must be positive")
        if any(b >= a for a, b in zip(vals, vals[1:])):
            raise ValueError("ladder values must be strictly decreasing")
        if self.order < 1:
            raise ValueError("extrapolation order must be >= 1")


class Extrapolation(NamedTuple):
    estimate: float
    #: estimate obtained with 1, 2, ... order+1 of the smallest ladder entries
    by_order: list
    #: observed convergence order of the raw ladder values (None if undetermined)
    rate: float | None


def _neville_at_zero(h, y):
    h = list(h)
    p = list(y)
    n = len(h)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = (h[i] * p[i + 1] - h[i + k] * p[i]) / (h[i] - h[i + k])
    return p[0]


def richardson(ladder: Sequence[float], values: Sequence[float], order: int = 2,
               noise: float = 1e-11, scale: float | None = None) -> Extrapolation:
    """Polynomial extrapolation of ``values(h)`` to ``h = 0``.

    Uses the ``order + 1`` smallest entries of `ladder`.  The raw values must
    approach a limit: each successive difference has to be smaller than the
    previous one unless it already sits below ``noise * scale``; `scale`
    defaults to ``max |values|``.

    Raises
    ------
    ExtrapolationDiverged
        On fewer than three ladder entries or non-shrinking differences.
    """
    h = np.asarray(ladder, dtype=float)
    y = np.asarray(values, dtype=float)
    if h.size < 3:
        raise ExtrapolationDiverged(f"need at least 3 ladder entries, got {h.size}")
    order = min(order, h.size - 1)
    ref = scale if scale is not None else max(np.abs(y).max(), 1e-300)
    diffs = np.abs(np.diff(y))
    for d0, d1 in zip(diffs, diffs[1:]):
        if d1 > d0 and d1 > noise * ref:
            raise ExtrapolationDiverged(f"ladder differences grow ({d0:.3g} -> {d1:.3g})")
    hs, ys = h[-(order + 1):], y[-(order + 1):]
    by_order = [_neville_at_zero(hs[-(k + 1):], ys[-(k + 1):]) for k in range(order + 1)]
    rate = None
    if diffs[-2] > noise * ref and diffs[-1] > noise * ref:
        rate = float(math.log(diffs[-2] / diffs[-1]) / math.log(h[-2] / h[-1]))
    return Extrapolation(float(by_order[-1]), [float(v) for v in by_order], rate)


# ---------------------------------------------------------------------------
# kernel recovery by numerical inversion

def invert_to_kernel(eps_minus_one, tau: float, scales: Sequence[float], rel_tol: float = 1e-11) -> float:
    """``(1/2pi) int (eps(w) - 1) exp(-i w tau) dw`` over the full real line.

    `eps_minus_one` must be conjugate symmetric and decay at least like
    ``1/w**2``; the integral is folded to ``[0, inf)`` as
    ``(1/pi) int [Re g cos(w tau) + Im g sin(w tau)] dw``.  `scales` are the
    frequency scales of the integrand (pole distances from the real axis);
    they place quadrature break points.
    """
    def re(w):
        return float(np.real(eps_minus_one(w)))

    def im(w):
        return float(np.imag(eps_minus_one(w)))

    scales = sorted(s for s in scales if s > 0)
    top = max(scales)
    edges = {0.0}
    for s in scales:
        edges.update((s / 4, s, 4 * s))
    W = 50.0 * top
    if tau != 0.0:
        W = max(W, 20 * math.pi / abs(tau))
    edges = sorted(e for e in edges if e < W) + [W]
    a_tau = abs(tau)
    sgn = 1.0 if tau >= 0 else -1.0
    total = 0.0
    kw = dict(epsrel=rel_tol, epsabs=1e-14, limit=500)
    for a, b in zip(edges[:-1], edges[1:]):
        if a_tau == 0.0:
            total += quad(re, a, b, **kw)[0]
        else:
            total += quad(re, a, b, weight="cos", wvar=a_tau, **kw)[0]
            total += sgn * quad(im, a, b, weight="sin", wvar=a_tau, **kw)[0]
    if a_tau == 0.0:
        total += quad(re, W, np.inf, **kw)[0]
    else:
        # Fourier-integral routine on [W, inf) uses only the absolute tolerance
        total += quad(re, W, np.inf, weight="cos", wvar=a_tau, epsabs=1e-14, limit=500)[0]
        total += sgn * quad(im, W, np.inf, weight="sin", wvar=a_tau, epsabs=1e-14, limit=500)[0]
    return total / math.pi


@dataclass
class KernelRecovery:
    """Outcome of a regularized numerical inversion and its extrapolation."""

    tau: np.ndarray
    values: np.ndarray
    ladder: RegularizationLadder
    #: raw inversions, shape (len(ladder), len(tau))
    raw: np.ndarray
    diagnostics: list
    method: str = "theta"

    @property
    def signal(self) -> SampledSignal:
        """The extrapolated kernel as a uniform signal (needs >= 2 uniformly spaced tau)."""
        if self.tau.size > 2 and not np.allclose(np.diff(self.tau), self.tau[1] - self.tau[0], rtol=1e-9):
            raise ValueError("tau points are not uniformly spaced")
        return SampledSignal(float(self.tau[0]), float(self.tau[1] - self.tau[0]), self.values,
                             {"method": self.method})

    def to_rows(self, oracle=None):
        """Rows (tau, f_numeric, f_oracle, abs_err); `oracle` maps tau -> exact value."""
        rows = []
        for tau, val in zip(self.tau, self.values):
            ref = float(oracle(tau)) if oracle is not None else float("nan")
            rows.append((float(tau), float(val), ref, abs(val - ref)))
        return rows


def _recover(model, tau, ladder, make_eps, what):
    if not isinstance(model, sm.Drude):
        raise UnsupportedModel(f"{what} recovery is defined for the Drude model")
    sm.require_valid(model)
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    if len(ladder.values) < 3:
        raise ExtrapolationDiverged(f"need at least 3 ladder entries, got {len(ladder.values)}")
    raw = np.empty((len(ladder.values), tau.size))
    for i, reg in enumerate(ladder.values):
        g, scales = make_eps(reg)
        raw[i] = [invert_to_kernel(g, float(t), scales) for t in tau]
    values = np.empty(tau.size)
    diags = []
    for j, t in enumerate(tau):
        ex = richardson(ladder.values, raw[:, j], ladder.order, scale=model.omega_p ** 2 / model.gamma)
        values[j] = ex.estimate
        diags.append({"tau": float(t), what: list(ladder.values), "value": raw[:, j].tolist(),
                      "richardson_estimate": ex.estimate, "rate": ex.rate})
    return KernelRecovery(tau, values, ladder, raw, diags, what)


def theta_regularized_kernel_recovery(model: sm.Drude, tau, ladder: RegularizationLadder) -> KernelRecovery:
    """Recover the Drude kernel by inverting the theta-modified permittivity.

    For every theta in `ladder`, ``eps_theta(w) - 1 = -wp^2 / ((w + i theta)(w + i gamma))``
    is integrable on the real line and is inverted by quadrature; the results
    are extrapolated to ``theta -> 0``.
    """
    def make(theta):
        reg = sm.RegularizedDrude(model.omega_p, model.gamma, theta)
        return (lambda w: sm.eval_epsilon(reg, w) - 1.0), (theta, model.gamma)

    return _recover(model, tau, ladder, make, "theta")


def abel_kernel_recovery(model: sm.Drude, tau, ladder: RegularizationLadder) -> KernelRecovery:
    """Recover the Drude kernel by inverting ``eps(w + i eta) - 1`` and extrapolating ``eta -> 0``.

    The inverse of the shifted permittivity is ``exp(-eta tau) f(tau)``.
    """
    wp2, gam = model.omega_p ** 2, model.gamma

    def make(eta):
        return (lambda w: -wp2 / ((w + 1j * eta) * (w + 1j * (eta + gam)))), (eta, eta + gam)

    return _recover(model, tau, ladder, make, "eta")


class AbelLimit(NamedTuple):
    value: float
    etas: tuple
    values: list
    extrapolation: Extrapolation


def abel_limit(kernel: TemporalKernel, omega: float, kind: str,
               etas: Sequence[float] = (0.04, 0.02, 0.01, 0.005, 0.0025), order: int = 4) -> AbelLimit:
    """Extrapolate the Abel-damped half-line cosine/sine transform to ``eta -> 0``."""
    fn = {"cos": abel_halfline_cosine, "sin": abel_halfline_sine}[kind]
    ladder = RegularizationLadder(tuple(etas), order)
    vals = [fn(kernel, omega, eta) for eta in ladder.values]
    ex = richardson(ladder.values, vals, ladder.order)
    return AbelLimit(ex.estimate, ladder.values, vals, ex)


# ---------------------------------------------------------------------------
# analytic contour evaluation

class ContourTerms(NamedTuple):
    I1: float
    I2: float
    f: float


def drude_contour_oracle(model: sm.Drude, tau: float) -> ContourTerms:
    """Closed-form contour integrals of the +i0 Drude inversion.

    ``I1`` is the part regular at ``w = 0``; ``I2`` collects the poles at
    ``-i0`` and ``-i gamma`` (closing below, tau > 0) or at ``+i gamma``
    (closing above, tau < 0).  Their sum is the causal kernel.
    """
    if not isinstance(model, sm.Drude):
        raise UnsupportedModel("contour oracle is defined for the Drude model")
    sm.require_valid(model)
    c = model.omega_p ** 2 / (2 * model.gamma)
    g = model.gamma
    tau = float(tau)
    I1 = -c * math.exp(-g * abs(tau))
    if tau >= 0:
        I2 = c * (2 - math.exp(-g * tau))
        # I1 + I2 written without cancellation
        f = -2 * c * math.expm1(-g * tau)
    else:
        I2 = c * math.exp(g * tau)
        f = 0.0
    return ContourTerms(I1, I2, f)
