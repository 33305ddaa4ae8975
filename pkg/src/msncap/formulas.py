"""Closed-form capacity expressions.

Every rational quantity is returned as an exact ``Fraction``.  The two values
involving a square root (``maxabs_limit`` and the three-slope leading term)
come back as ``mpmath.mpf`` computed at 64 significant digits.

Names and parameter ranges:

=================  ======================================================
``min_rcmsn``      least RCMSN capacity, ``n >= 2``
``max_rcmsn``      greatest RCMSN capacity, ``n >= 2``
``cap2``           capacity of every two-slope network, ``n >= 3``
``maxabs2``        best absolute capacity with two slopes, ``n >= 3``
``expabs2``        expected absolute capacity with two slopes, ``n >= 3``
``max3``           best capacity with three slopes, ``n >= 4``
``max4``           best capacity with four slopes, ``n >= 5``
``maxabs_limit``   limit of the best absolute capacity with ``s >= 3`` slopes
``exp_limit``      limit of the expected capacity; ``s`` None (generic) or 2..4
``max_s_leading``  leading terms of the best ``s``-slope capacity, ``s >= 3``
=================  ======================================================
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import mpmath

from msncap.errors import BadParams

PRECISION_DIGITS = 64

NAMES = (
    "min_rcmsn",
    "max_rcmsn",
    "cap2",
    "maxabs2",
    "expabs2",
    "max3",
    "max4",
    "maxabs_limit",
    "exp_limit",
    "max_s_leading",
)


def _need_n(name, n, lo):
    if n is None or int(n) != n or n < lo:
        raise BadParams(f"{name} needs an integer n >= {lo}, got {n!r}")
    return int(n)


def _need_s(name, s, lo):
    if s is None or int(s) != s or s < lo:
        raise BadParams(f"{name} needs an integer s >= {lo}, got {s!r}")
    return int(s)


def min_rcmsn(n: int) -> Fraction:
    n = _need_n("min_rcmsn", n, 2)
    return Fraction(2 * (n + 1), 3 * n)


def max_rcmsn(n: int) -> Fraction:
    n = _need_n("max_rcmsn", n, 2)
    return 1 - Fraction(1, n) + Fraction(2, n * n)


def cap2(n: int) -> Fraction:
    """Capacity of any grid with both classes nonempty: ``1/2 + 1/n``."""
    n = _need_n("cap2", n, 3)
    return Fraction(n + 2, 2 * n)


def maxabs2(n: int) -> Fraction:
    n = _need_n("maxabs2", n, 3)
    if n % 2 == 0:
        return Fraction(n + 2, 4 * n - 4)
    return Fraction((n + 1) * (n + 2), 4 * n * n)


def expabs2(n: int) -> Fraction:
    n = _need_n("expabs2", n, 3)
    return Fraction(n + 2, 4 * n)


def three_slope_value(n: int, a: int, c: int) -> Fraction:
    """Capacity of the best three-slope pattern with class sizes ``a``, ``n-a-c``, ``c``."""
    b = n - a - c
    return Fraction(2 * b + a + c + 2, 2 * n) - Fraction((n - 1) * b, 2 * n * (a * b + b * c + c * a))


def _max3_symmetric(n, p):
    num = (4 * p - 1) * n * n - (10 * p * p - 6 * p - 1) * n + (6 * p**3 - 6 * p * p - 2 * p)
    return Fraction(num, 4 * p * n * n - 6 * p * p * n)


def _max3_skew(n, q):
    num = (4 * q + 1) * n * n - (10 * q * q + 4 * q - 1) * n + (6 * q**3 + 3 * q * q - 3 * q - 2)
    return Fraction(num, (4 * q + 2) * n * n - (6 * q * q + 6 * q + 2) * n)


def max3_candidates(n: int) -> list[tuple[int, int, Fraction]]:
    """``(a, c, value)`` for the displayed candidates that leave ``b >= 1``.

    ``q = floor(sqrt(n)/2)``; candidates are ``a = c = q``, ``a = c = q + 1``
    and ``a = q, c = q + 1``.
    """
    n = _need_n("max3", n, 4)
    q = max(1, isqrt(n) // 2)  # floor(sqrt(n)/2) == isqrt(n) // 2
    out = []
    for p in (q, q + 1):
        if n - 2 * p >= 1:
            out.append((p, p, _max3_symmetric(n, p)))
    if n - 2 * q - 1 >= 1:
        out.append((q, q + 1, _max3_skew(n, q)))
    return out


def max3(n: int) -> Fraction:
    return max(v for _, _, v in max3_candidates(n))


def max3_sizes(n: int) -> tuple[int, int, int]:
    """Class sizes ``(a, b, c)`` of the first candidate attaining ``max3(n)``."""
    best = max3(n)
    for a, c, v in max3_candidates(n):
        if v == best:
            return a, n - a - c, c
    raise AssertionError("unreachable")


def four_slope_value(n: int, a: int, b: int, c: int, d: int) -> Fraction:
    """Capacity of the best same-direction four-slope pattern with sizes ``a, b, c, d``."""
    if a + b + c + d != n:
        raise BadParams("sizes must sum to n")
    m = b + c
    first = Fraction(a + d + 2 * m + 1, 2 * n)
    den = 2 * n * (a * d + b * c + (a + d) * m)
    return first + Fraction(a * d + b * c * (a + d - 1) + m - m * m, den)


def max4(n: int) -> Fraction:
    """Best four-slope capacity; the cubic over ``n(n^2+4n-8)`` belongs to even ``n``."""
    n = _need_n("max4", n, 5)
    if n % 2 == 0:
        return Fraction(n**3 + 2 * n * n - 2 * n - 4, n * (n * n + 4 * n - 8))
    return Fraction(n**3 + 2 * n * n - 3 * n - 4, n * (n * n + 4 * n - 9))


def maxabs_limit(s: int) -> mpmath.mpf:
    s = _need_s("maxabs_limit", s, 3)
    with mpmath.workdps(PRECISION_DIGITS):
        poly = 135 * s**3 - 945 * s**2 + 2232 * s - 1796
        root = mpmath.mpf(9 * s * s - 42 * s + 52) ** mpmath.mpf(1.5)
        return (poly + 4 * root) / (243 * (s - 2) ** 3)


_EXP_LIMITS = {None: Fraction(5, 6), 2: Fraction(1, 2), 3: Fraction(11, 18), 4: Fraction(17, 24)}


def exp_limit(s: int | None = None) -> Fraction:
    """Limit of the expected capacity; ``s=None`` means distinct slopes."""
    if s not in _EXP_LIMITS:
        raise BadParams(f"exp_limit is known for s in 2..4 or s=None, got {s!r}")
    return _EXP_LIMITS[s]


def max_s_leading(n: int, s: int):
    """Leading asymptotic terms of the best ``s``-slope capacity at ``n``."""
    s = _need_s("max_s_leading", s, 3)
    n = _need_n("max_s_leading", n, 2)
    if s == 3:
        with mpmath.workdps(PRECISION_DIGITS):
            return 1 - 1 / mpmath.sqrt(n) + mpmath.mpf(9) / (8 * n)
    return 1 - Fraction(s - 2, (s - 3) * n)


def closed_form(name: str, n: int | None = None, s: int | None = None):
    """Evaluate a named closed form; see the module docstring for ranges."""
    name = name.replace("-", "_")
    if name == "maxabs_limit":
        return maxabs_limit(s)
    if name == "exp_limit":
        return exp_limit(s)
    if name == "max_s_leading":
        return max_s_leading(n, s)
    fn = {
        "min_rcmsn": min_rcmsn,
        "max_rcmsn": max_rcmsn,
        "cap2": cap2,
        "maxabs2": maxabs2,
        "expabs2": expabs2,
        "max3": max3,
        "max4": max4,
    }.get(name)
    if fn is None:
        raise BadParams(f"unknown formula {name!r}")
    return fn(n)
