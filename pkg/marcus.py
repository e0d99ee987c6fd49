"""Marcus canonical extension written as a generator assignment on decorated trees

Letter 0 is the drift, letter 1 the driving noise and letter n >= 2 its n-th
order variation [Z]^(n). The free bracket of n diffusion letters is letter n.
"""

import logging
from fractions import Fraction
from math import factorial

from algebra import AlgebraError, LinComb, SemigroupElement, letter, vertex
from prelie import left_power

log = logging.getLogger(__name__)

DRIFT = letter("0")
DIFFUSION = letter("1")
NOISES = ("wiener", "poisson")


def marcus_letter(n):
    if n < 0:
        raise AlgebraError(f"variation order must be >= 0, got {n}")
    if n == 0:
        return DRIFT
    return SemigroupElement(("1",) * n)


def marcus_label(d):
    """Render a Marcus decoration as its variation order"""
    if d == DRIFT:
        return "0"
    if set(d.letters) == {"1"}:
        return str(d.weight)
    return str(d)


def marcus_modified_field(n_max):
    """{0: •_0, n: (1/n!) L^{n-1}_{b▷}(b)} with b = •_1"""
    if n_max < 1:
        raise AlgebraError(f"n_max must be >= 1, got {n_max}")
    b = vertex(DIFFUSION)
    field = {DRIFT: LinComb.of(vertex(DRIFT))}
    for n in range(1, n_max + 1):
        field[marcus_letter(n)] = Fraction(1, factorial(n)) * left_power(b, b, n - 1)
    log.debug("Marcus field up to variation order %d", n_max)
    return field


def marcus_specialise(field, noise):
    """Collapse the variation letters for a given driving noise.

    wiener: d[W]^(2) = dt and higher variations vanish, so the drift letter
    picks up the order-2 term. poisson: every [N]^(n) = N, so the jump letter
    collects every order.
    """
    if noise not in NOISES:
        raise AlgebraError(f"unknown noise {noise!r}, expected one of {', '.join(NOISES)}")
    drift = field.get(DRIFT, LinComb())
    orders = {k.weight: v for k, v in field.items() if k != DRIFT}
    if noise == "wiener":
        return {DRIFT: drift + orders.get(2, LinComb()), DIFFUSION: orders.get(1, LinComb())}
    return {DRIFT: drift, DIFFUSION: LinComb.sum(orders.values())}
