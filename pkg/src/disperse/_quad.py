"""Thin wrapper over scipy.integrate.quad that raises instead of warning."""
import os

from scipy import integrate

from .errors import QuadratureFailure


def default_rel_tol() -> float:
    """Relative tolerance used when a caller passes none; ``DISPERSE_QUAD_RELTOL`` overrides it."""
    return float(os.environ.get("DISPERSE_QUAD_RELTOL", "1e-10"))


def quad(fn, a, b, *, epsrel=None, epsabs=0.0, limit=400, allow_roundoff=False, **kw):
    """Integrate `fn` over [a, b]; return (value, abserr).

    With `allow_roundoff` a roundoff notice (the tolerance is below what
    double precision can certify) returns the best estimate instead of
    raising.  Every other QUADPACK failure raises.
    """
    if epsrel is None:
        epsrel = default_rel_tol()
    res = integrate.quad(fn, a, b, epsrel=epsrel, epsabs=epsabs, limit=limit, full_output=1, **kw)
    if len(res) > 3:
        msg = str(res[3]).strip().splitlines()[0]
        if allow_roundoff and "roundoff" in msg:
            return res[0], res[1]
        raise QuadratureFailure(f"quadrature on [{a:g}, {b:g}] failed: {msg}")
    return res[0], res[1]
