"""Bosonic entropy function g(x) = (x+1) ln(x+1) - x ln x and its inverse."""

import math

from .errors import NegativeArgument, NoConvergence

MAX_ITER = 200


def g_function(x: float) -> float:
    """Entropy (nats) of a single-mode thermal state with mean photon number ``x``."""
    if x < 0:
        raise NegativeArgument(f"g(x) needs x >= 0, got {x}")
    if x == 0:
        return 0.0
    if x < 1.0:
        # 1/x overflows for subnormal x
        return math.log1p(x) + x * (math.log1p(x) - math.log(x))
    # ln(1+x) + x ln(1 + 1/x) avoids cancelling two large terms
    return math.log1p(x) + x * math.log1p(1.0 / x)


def g_derivative(x: float) -> float:
    if x <= 0:
        return math.inf
    if x < 1.0:
        return math.log1p(x) - math.log(x)
    return math.log1p(1.0 / x)


def g_inverse(y: float) -> float:
    """Mean photon number whose thermal entropy is ``y`` nats.

    Bisection on ``[0, max(1, e^y)]`` until Newton steps become safe, then
    Newton polish. Raises :class:`NoConvergence` after 200 iterations.
    """
    if y < 0:
        raise NegativeArgument(f"g^-1(y) needs y >= 0, got {y}")
    if y == 0:
        return 0.0
    lo, hi = 0.0, max(1.0, math.exp(min(y, 700.0)))
    if g_function(hi) < y:
        raise NoConvergence(f"g^-1 bracket does not contain y={y}")
    x = 0.5 * (lo + hi)
    tol = 1e-14 * max(1.0, y)
    for _ in range(MAX_ITER):
        fx = g_function(x) - y
        if abs(fx) <= tol:
            return x
        if fx < 0:
            lo = x
        else:
            hi = x
        step = fx / g_derivative(x)
        x_new = x - step
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 1e-16 * max(1.0, x):
            return x_new
        x = x_new
    raise NoConvergence(f"g^-1 did not converge for y={y}")
