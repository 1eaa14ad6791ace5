"""Error functions of real and complex argument.

The displacement formulas for a Gaussian probe contain products of the form
``exp(B**2) * erfc(B)``.  Formed naively these overflow (``exp``) or underflow
(``erfc``) long before the product itself leaves the floating range, so the
combination is always routed through the Faddeeva function

    w(z) = exp(-z**2) * erfc(-1j*z),   exp(B**2) * erfc(B) = w(1j*B).

The evaluation back ends are :func:`scipy.special.erf`, :func:`scipy.special.erfc`
and :func:`scipy.special.wofz`.  Independent reference implementations
(Maclaurin series, asymptotic series, direct quadrature) live at the bottom of
the module; they are slow and exist only to check the fast path.
"""
import math

import numpy as np
from scipy import integrate, special

from .errors import Overflow

# log(DBL_MAX)
_LOG_MAX = 709.78


def erf_real(x):
    """Error function for real (scalar or array) argument."""
    return special.erf(np.asarray(x, dtype=float))


def erfc_real(x):
    """Complementary error function ``1 - erf(x)``, free of cancellation for large x."""
    return special.erfc(np.asarray(x, dtype=float))


def faddeeva_w(z):
    """Faddeeva function ``w(z) = exp(-z**2) erfc(-iz)``.

    Parameters
    ----------
    z : complex or array_like of complex
        Finite argument.

    Returns
    -------
    complex or ndarray
        Satisfies ``w(-conj(z)) == conj(w(z))``.
    """
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise ValueError("faddeeva_w requires a finite argument")
    return special.wofz(z)


def exp_sq_erfc(B, log_scale=0.0):
    r"""Return ``exp(log_scale) * exp(B**2) * erfc(B)`` without forming ``exp(B**2)``.

    For ``Re B >= 0`` the value is ``w(iB)``, which is bounded.  For
    ``Re B < 0`` the reflection ``erfc(B) = 2 - erfc(-B)`` gives

    .. math:: e^{B^2}\operatorname{erfc}(B) = 2 e^{B^2} - w(-iB),

    and the growing term is combined with `log_scale` inside a single
    exponent.  Callers that multiply by a Gaussian ``exp(-beta t**2)`` should
    pass ``log_scale=-beta*t**2``; the product then stays finite even when the
    bare factor would overflow.

    Parameters
    ----------
    B : complex or array_like
    log_scale : float or array_like, optional
        Logarithm of a real prefactor, broadcast against `B`.

    Raises
    ------
    Overflow
        If ``Re(B**2 + log_scale)`` exceeds the double exponent range.  The
        caller has to switch to an asymptotic expansion in that case.
    """
    B = np.asarray(B, dtype=complex)
    log_scale = np.asarray(log_scale, dtype=float)
    B, log_scale = np.broadcast_arrays(B, log_scale)
    out = np.empty(B.shape, dtype=complex)

    pos = B.real >= 0
    if np.any(pos):
        out[pos] = np.exp(log_scale[pos]) * special.wofz(1j * B[pos])
    neg = ~pos
    if np.any(neg):
        Bn = B[neg]
        expo = Bn * Bn + log_scale[neg]
        if np.any(expo.real > _LOG_MAX):
            raise Overflow(
                "exp(B**2) erfc(B) overflows for Re B = %g; use the asymptotic form"
                % Bn.real[np.argmax(expo.real)]
            )
        out[neg] = 2.0 * np.exp(expo) - np.exp(log_scale[neg]) * special.wofz(-1j * Bn)
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# reference oracles

def erf_series(x, terms=None):
    """Maclaurin series ``2/sqrt(pi) * sum (-1)^n x^(2n+1) / (n! (2n+1))``.

    Accurate for moderate ``|x|`` (below about 3 at double precision).
    """
    x = float(x)
    if terms is None:
        terms = max(30, int(4 * x * x) + 30)
    acc = []
    t = x
    for n in range(terms):
        acc.append(t / (2 * n + 1))
        t *= -x * x / (n + 1)
    return 2.0 / math.sqrt(math.pi) * math.fsum(acc)


def erfc_asymptotic(x, terms=12):
    """Asymptotic series of ``erfc`` for large positive x."""
    x = float(x)
    s = 1.0
    term = 1.0
    for n in range(1, terms):
        term *= -(2 * n - 1) / (2.0 * x * x)
        s += term
    return math.exp(-x * x) / (x * math.sqrt(math.pi)) * s


def faddeeva_by_quadrature(z):
    """Evaluate ``w(z)`` from ``erf(u) = (2u/sqrt(pi)) * int_0^1 exp(-u^2 s^2) ds``.

    Slow; uses adaptive quadrature on a straight path, which is valid for any
    complex u.  Meant as an oracle for moderate ``|z|``.
    """
    z = complex(z)
    u = -1j * z

    def re(s):
        return (np.exp(-(u * s) ** 2)).real

    def im(s):
        return (np.exp(-(u * s) ** 2)).imag

    # |exp(-u^2 s^2)| <= max(1, exp(Re z^2)) on [0, 1]
    bound = max(1.0, math.exp((z * z).real))
    kw = dict(epsabs=1e-16 * bound, epsrel=2e-14, limit=400)
    # asks for more than double precision can certify; roundoff notices are
    # expected and the best estimate is still far inside oracle needs
    r = integrate.quad(re, 0.0, 1.0, full_output=1, **kw)[0]
    i = integrate.quad(im, 0.0, 1.0, full_output=1, **kw)[0]
    erf_u = 2.0 * u / math.sqrt(math.pi) * complex(r, i)
    return np.exp(-z * z) * (1.0 - erf_u)
