"""Frequency-domain permittivity models.

Five model families are supported:

=====================  ==================================================
``Drude``              ``1 - wp**2 / (w (w + i gamma))``
``RegularizedDrude``   ``1 - wp**2 / ((w + i theta)(w + i gamma))``
``Plasma``             ``1 - wp**2 / w**2``
``NormalSkin``         ``1 + 4 pi i sigma0 / w``   (Gaussian units)
``LorentzSum``         ``1 + sum g_j / (w_j**2 - w**2 - i gamma_j w)``
=====================  ==================================================

All frequencies share one arbitrary unit.  Models are plain frozen
dataclasses; construction never validates, so that :func:`validate` can
report on broken parameter sets.  Every evaluating function validates first
and raises :class:`~disperse.errors.InvalidModel`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np

from ._quad import quad
from .errors import InvalidModel, PoleEvaluation, SingularAtZero

#: evaluation closer than this to a pole raises PoleEvaluation
POLE_GUARD = 1e-12


@dataclass(frozen=True)
class Drude:
    omega_p: float
    gamma: float


@dataclass(frozen=True)
class RegularizedDrude:
    omega_p: float
    gamma: float
    theta: float


@dataclass(frozen=True)
class Plasma:
    omega_p: float


@dataclass(frozen=True)
class NormalSkin:
    sigma0: float


@dataclass(frozen=True)
class Oscillator:
    strength: float
    omega: float
    gamma: float


@dataclass(frozen=True)
class LorentzSum:
    oscillators: tuple[Oscillator, ...] = field(default_factory=tuple)

    def __post_init__(self):
        # accept lists / dicts from callers, store an immutable tuple
        oscs = tuple(o if isinstance(o, Oscillator) else Oscillator(**o) if isinstance(o, dict)
                     else Oscillator(*o) for o in self.oscillators)
        object.__setattr__(self, "oscillators", oscs)


DielectricModel = Union[Drude, RegularizedDrude, Plasma, NormalSkin, LorentzSum]

_TYPE_NAMES = {
    Drude: "drude",
    RegularizedDrude: "regularized_drude",
    Plasma: "plasma",
    NormalSkin: "normal_skin",
    LorentzSum: "lorentz_sum",
}


# ---------------------------------------------------------------------------
# validation

class Failure(NamedTuple):
    invariant: str
    parameter: str
    value: float


@dataclass
class ValidationReport:
    model: DielectricModel
    failures: list[Failure]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        if self.ok:
            return "pass"
        return "fail: " + "; ".join(f"{f.invariant} ({f.parameter}={f.value!r})" for f in self.failures)


def _positive(failures, name, value):
    if not (isinstance(value, (int, float, np.floating, np.integer)) and math.isfinite(value)):
        failures.append(Failure(f"{name} must be a finite number", name, value))
    elif value <= 0:
        failures.append(Failure(f"{name} <= 0", name, value))


def validate(model) -> ValidationReport:
    """Check the parameter invariants of `model` and list every violation."""
    failures: list[Failure] = []
    if isinstance(model, Drude):
        _positive(failures, "omega_p", model.omega_p)
        _positive(failures, "gamma", model.gamma)
    elif isinstance(model, RegularizedDrude):
        _positive(failures, "omega_p", model.omega_p)
        _positive(failures, "gamma", model.gamma)
        _positive(failures, "theta", model.theta)
    elif isinstance(model, Plasma):
        _positive(failures, "omega_p", model.omega_p)
    elif isinstance(model, NormalSkin):
        _positive(failures, "sigma0", model.sigma0)
    elif isinstance(model, LorentzSum):
        if not model.oscillators:
            failures.append(Failure("at least one oscillator required", "oscillators", 0))
        for j, osc in enumerate(model.oscillators):
            n_before = len(failures)
            _positive(failures, f"oscillators[{j}].strength", osc.strength)
            _positive(failures, f"oscillators[{j}].omega", osc.omega)
            _positive(failures, f"oscillators[{j}].gamma", osc.gamma)
            if len(failures) == n_before and osc.gamma >= 2 * osc.omega:
                failures.append(Failure("overdamped oscillator (gamma >= 2 omega)",
                                        f"oscillators[{j}].gamma", osc.gamma))
    else:
        failures.append(Failure("unknown model type", "type", type(model).__name__))
    return ValidationReport(model, failures)


def require_valid(model):
    report = validate(model)
    if not report.ok:
        raise InvalidModel(f"{type(model).__name__}: {report}")
    return model


# ---------------------------------------------------------------------------
# poles and evaluation

class Pole(NamedTuple):
    value: complex
    multiplicity: int


def poles(model) -> list[Pole]:
    """Poles of ``eps(w) - 1`` viewed as a rational function of w."""
    require_valid(model)
    if isinstance(model, Drude):
        return [Pole(0j, 1), Pole(-1j * model.gamma, 1)]
    if isinstance(model, RegularizedDrude):
        if model.theta == model.gamma:
            return [Pole(-1j * model.gamma, 2)]
        return [Pole(-1j * model.theta, 1), Pole(-1j * model.gamma, 1)]
    if isinstance(model, Plasma):
        return [Pole(0j, 2)]
    if isinstance(model, NormalSkin):
        return [Pole(0j, 1)]
    out = []
    for osc in model.oscillators:
        shift = math.sqrt(osc.omega ** 2 - osc.gamma ** 2 / 4)
        out.append(Pole(complex(shift, -osc.gamma / 2), 1))
        out.append(Pole(complex(-shift, -osc.gamma / 2), 1))
    return out


def eval_epsilon(model, omega, guard: float = POLE_GUARD):
    """Closed-form permittivity at complex frequency `omega`.

    Parameters
    ----------
    model : DielectricModel
    omega : complex or array_like
    guard : float
        Pole guard radius.

    Raises
    ------
    PoleEvaluation
        If any `omega` lies within `guard` of a pole.
    """
    require_valid(model)
    w = np.asarray(omega, dtype=complex)
    for p in poles(model):
        if np.any(np.abs(w - p.value) < guard):
            raise PoleEvaluation(f"omega within {guard:g} of pole {p.value}")

    if isinstance(model, Drude):
        eps = 1.0 - model.omega_p ** 2 / (w * (w + 1j * model.gamma))
    elif isinstance(model, RegularizedDrude):
        eps = 1.0 - model.omega_p ** 2 / ((w + 1j * model.theta) * (w + 1j * model.gamma))
    elif isinstance(model, Plasma):
        eps = 1.0 - model.omega_p ** 2 / (w * w)
    elif isinstance(model, NormalSkin):
        eps = 1.0 + 4j * math.pi * model.sigma0 / w
    else:
        eps = np.ones_like(w)
        for osc in model.oscillators:
            eps = eps + osc.strength / (osc.omega ** 2 - w * w - 1j * osc.gamma * w)
    return eps[()] if eps.ndim == 0 else eps


def max_frequency(model) -> float:
    """Largest characteristic frequency of the model (sets grid and cutoff scales)."""
    if isinstance(model, Drude):
        return max(model.omega_p, model.gamma)
    if isinstance(model, RegularizedDrude):
        return max(model.omega_p, model.gamma, model.theta)
    if isinstance(model, Plasma):
        return model.omega_p
    if isinstance(model, NormalSkin):
        return 4 * math.pi * model.sigma0
    return max(max(o.omega, o.gamma, math.sqrt(o.strength)) for o in model.oscillators)


# ---------------------------------------------------------------------------
# Kramers-Kronig

@dataclass(frozen=True)
class PVSettings:
    cutoff: float | None = None   # default 200 * max model frequency
    rel_tol: float = 1e-8
    limit: int = 400


def _kk_rhs(im_eps, w, cutoff, settings):
    """(2/pi) PV int_0^cutoff x Im eps(x) / (x^2 - w^2) dx.

    The integrand is written as h(x) / (x - w) with h(x) = x Im eps(x) / (x + w);
    on [0, 2w] the singular part is folded onto itself,
    int_0^w [h(w + u) - h(w - u)] / u du, which is regular.
    """
    def h(x):
        return x * im_eps(x) / (x + w)

    def folded(u):
        if u == 0.0:
            return 0.0
        return (h(w + u) - h(w - u)) / u

    pieces = []
    for fn, a, b in ((folded, 0.0, w), (lambda x: h(x) / (x - w), 2 * w, cutoff)):
        if b <= a:
            continue
        val, _ = quad(fn, a, b, epsrel=settings.rel_tol, epsabs=1e-14, limit=settings.limit)
        pieces.append(val)
    return 2.0 / math.pi * sum(pieces)


def kramers_kronig_residual(model, grid, pv_settings: PVSettings | None = None) -> float:
    """Maximum residual of the dispersion relation for Re eps over `grid`.

    The relation checked is

        Re eps(w) - 1 = (2/pi) PV int_0^inf x Im eps(x) / (x^2 - w^2) dx.

    The residual is returned relative to ``max |Re eps - 1|`` over the grid,
    because ``Re eps - 1`` passes through zero for every model supported here.

    Raises
    ------
    SingularAtZero
        For Drude, Plasma and NormalSkin, whose pole at 0 invalidates the
        relation in this form.
    """
    require_valid(model)
    if isinstance(model, (Drude, Plasma, NormalSkin)):
        raise SingularAtZero(f"{type(model).__name__} has a pole at omega = 0")
    settings = pv_settings or PVSettings()
    cutoff = settings.cutoff or 200.0 * max_frequency(model)
    grid = np.asarray(grid, dtype=float)

    def im_eps(x):
        return float(np.imag(eval_epsilon(model, x)))

    lhs = np.real(eval_epsilon(model, grid)) - 1.0
    rhs = np.array([_kk_rhs(im_eps, w, cutoff, settings) for w in grid])
    scale = np.max(np.abs(lhs))
    return float(np.max(np.abs(lhs - rhs)) / scale)


# ---------------------------------------------------------------------------
# JSON form

def to_json(model) -> dict:
    name = _TYPE_NAMES[type(model)]
    if isinstance(model, Drude):
        return {"type": name, "omega_p": model.omega_p, "gamma": model.gamma}
    if isinstance(model, RegularizedDrude):
        return {"type": name, "omega_p": model.omega_p, "gamma": model.gamma, "theta": model.theta}
    if isinstance(model, Plasma):
        return {"type": name, "omega_p": model.omega_p}
    if isinstance(model, NormalSkin):
        return {"type": name, "sigma0": model.sigma0}
    return {"type": name, "oscillators": [
        {"strength": o.strength, "omega": o.omega, "gamma": o.gamma} for o in model.oscillators]}


_FIELDS = {
    "drude": (Drude, ("omega_p", "gamma")),
    "regularized_drude": (RegularizedDrude, ("omega_p", "gamma", "theta")),
    "plasma": (Plasma, ("omega_p",)),
    "normal_skin": (NormalSkin, ("sigma0",)),
}


def from_json(obj: dict, path: str = "model"):
    """Build a model from its JSON object.

    Raises ``KeyError``/``ValueError`` whose message starts with the dotted
    path of the offending field.
    """
    if not isinstance(obj, dict):
        raise ValueError(f"{path}: must be an object")
    kind = obj.get("type")
    if kind is None:
        raise KeyError(f"{path}.type: required")
    if kind == "lorentz_sum":
        oscs = obj.get("oscillators")
        if not isinstance(oscs, list):
            raise KeyError(f"{path}.oscillators: required")
        out = []
        for j, o in enumerate(oscs):
            vals = []
            for name in ("strength", "omega", "gamma"):
                if name not in o:
                    raise KeyError(f"{path}.oscillators[{j}].{name}: required")
                vals.append(_number(o[name], f"{path}.oscillators[{j}].{name}"))
            out.append(Oscillator(*vals))
        return LorentzSum(tuple(out))
    if kind not in _FIELDS:
        raise ValueError(f"{path}.type: unknown model type {kind!r}; expected one of "
                         f"{sorted(list(_FIELDS) + ['lorentz_sum'])}")
    cls, names = _FIELDS[kind]
    args = []
    for name in names:
        if name not in obj:
            raise KeyError(f"{path}.{name}: required")
        args.append(_number(obj[name], f"{path}.{name}"))
    return cls(*args)


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{path}: must be a number")
    return float(value)
