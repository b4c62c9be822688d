"""The two integral kernels behind every closed form.

``g_func(alpha, theta)`` is the integral of ``1/(1+u**alpha)`` over
``[0, theta]``, i.e. ``theta * 2F1(1, 1/alpha; 1+1/alpha; -theta**alpha)``.
``h_func(alpha, delta, theta)`` is the integral of
``1/(sqrt(u-delta) * (1+u**(alpha/2)))`` over ``[delta, theta+delta]``.

Both have arctan closed forms at ``alpha == 2``. Otherwise they are computed
by adaptive quadrature; beyond ``THETA_SPLIT`` the slowly decaying tail is
mapped onto a short bounded interval with ``w = u**(1-alpha)``.
"""

from __future__ import annotations

import math


from .quadrature import DEFAULT_QUAD, QuadratureSpec, integrate

THETA_SPLIT = 10.0
ALPHA_EXACT_TOL = 1e-12


def _check_alpha(alpha: float) -> None:
    if not alpha > 1:
        raise ValueError(f"divergent integrand scale: alpha must exceed 1, got {alpha}")


def _is_two(alpha: float) -> bool:
    return abs(alpha - 2.0) <= ALPHA_EXACT_TOL


def g_inf(alpha: float) -> float:
    """Limit of ``g_func(alpha, theta)`` as theta grows: ``pi/alpha / sin(pi/alpha)``."""
    _check_alpha(alpha)
    return math.pi / alpha / math.sin(math.pi / alpha)


def _g_tail(alpha: float, theta: float, quad: QuadratureSpec) -> float:
    # integral of 1/(1+u^a) over [theta, inf) in w = u^(1-a)
    p = alpha / (alpha - 1.0)
    w_hi = theta ** (1.0 - alpha)
    return integrate(lambda w: 1.0 / (1.0 + w ** p), 0.0, w_hi, quad) / (alpha - 1.0)


def g_func(
    alpha: float,
    theta: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
    closed_form: bool = True,
) -> float:
    """Integral of ``1/(1+u**alpha)`` from 0 to ``theta``.

    ``closed_form=False`` forces the quadrature path even at ``alpha == 2``.
    An infinite ``theta`` returns :func:`g_inf`.
    """
    _check_alpha(alpha)
    if not theta >= 0:
        raise ValueError(f"theta must be non-negative, got {theta}")
    if theta == 0:
        return 0.0
    if closed_form and _is_two(alpha):
        return math.atan(theta)
    if math.isinf(theta):
        return g_inf(alpha)
    if theta <= THETA_SPLIT:
        return integrate(lambda u: 1.0 / (1.0 + u ** alpha), 0.0, theta, quad)
    return g_inf(alpha) - _g_tail(alpha, theta, quad)


def _h_integrand(alpha: float, delta: float):
    half = 0.5 * alpha
    return lambda t: 2.0 / (1.0 + (t * t + delta) ** half)


def _h_mapped(alpha: float, delta: float, t_lo: float, t_hi: float,
              quad: QuadratureSpec) -> float:
    # integral of the t-integrand over [t_lo, t_hi] with t = w^(-1/(a-1));
    # the mapped integrand tends to 2/(a-1) as w -> 0, so t_hi may be infinite
    half = 0.5 * alpha
    expo = -1.0 / (alpha - 1.0)

    def f(w):
        t = w ** expo
        return 2.0 / (t ** -alpha + (1.0 + delta / (t * t)) ** half)

    w_lo = 0.0 if math.isinf(t_hi) else t_hi ** (1.0 - alpha)
    w_hi = t_lo ** (1.0 - alpha)
    return integrate(f, w_lo, w_hi, quad) / (alpha - 1.0)


def h_func(
    alpha: float,
    delta: float,
    theta: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
    closed_form: bool = True,
) -> float:
    """Road-y interference kernel, ``∫_δ^{θ+δ} du / (√(u-δ) (1+u^{α/2}))``.

    Evaluated in ``t = sqrt(u - delta)``, which removes the endpoint
    singularity. ``theta`` may be infinite. ``closed_form=False`` skips both
    shortcuts (``alpha == 2`` and ``delta == 0``).
    """
    _check_alpha(alpha)
    if not delta >= 0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    if not theta >= 0:
        raise ValueError(f"theta must be non-negative, got {theta}")
    if theta == 0:
        return 0.0
    if closed_form:
        if _is_two(alpha):
            s = math.sqrt(1.0 + delta)
            if math.isinf(theta):
                return math.pi / s
            return 2.0 * math.atan(math.sqrt(theta / (1.0 + delta))) / s
        if delta == 0:
            return 2.0 * g_func(alpha, math.sqrt(theta), quad)
    t_max = math.sqrt(theta)
    f = _h_integrand(alpha, delta)
    if t_max <= THETA_SPLIT:
        return integrate(f, 0.0, t_max, quad)
    return integrate(f, 0.0, THETA_SPLIT, quad) + _h_mapped(
        alpha, delta, THETA_SPLIT, t_max, quad
    )


def h_inf(alpha: float, delta: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """``h_func`` over the whole half line."""
    return h_func(alpha, delta, math.inf, quad)


def h_plateau(
    alpha: float,
    delta: float,
    rel_tol: float = 1e-10,
    theta0: float = 1.0,
    max_doublings: int = 400,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> float:
    """Approximate ``h_inf`` by doubling a finite ``theta`` until it stops moving.

    Independent of the infinite-interval map in :func:`h_inf`; kept as a
    cross-check for it.
    """
    theta = theta0
    prev = h_func(alpha, delta, theta, quad)
    for _ in range(max_doublings):
        theta *= 2.0
        cur = h_func(alpha, delta, theta, quad)
        if abs(cur - prev) <= rel_tol * abs(cur):
            return cur
        prev = cur
    raise RuntimeError("h_plateau did not converge")
