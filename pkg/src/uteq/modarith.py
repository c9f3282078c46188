"""Small modular-arithmetic helpers used across the package."""

from __future__ import annotations

__all__ = [
    "ext_euclid",
    "mod_inverse",
    "is_prime",
    "p_adic_split",
    "power_exponent",
    "min_power_at_least",
]


def ext_euclid(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x, x0 = 1, 0
    y, y0 = 0, 1
    r, r0 = a, b
    while r0 != 0:
        quo = r // r0
        r, r0 = r0, r - quo * r0
        x, x0 = x0, x - quo * x0
        y, y0 = y0, y - quo * y0
    return r, x, y


def mod_inverse(a: int, modulus: int) -> int:
    g, x, _ = ext_euclid(a % modulus, modulus)
    if g != 1:
        raise ValueError(f"{a} is not invertible modulo {modulus}")
    return x % modulus


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def p_adic_split(value: int, p: int) -> tuple[int, int]:
    """Factor value = unit * p^s with p not dividing unit (value != 0)."""
    if value == 0:
        raise ValueError("cannot split zero")
    s = 0
    while value % p == 0:
        value //= p
        s += 1
    return value, s


def power_exponent(q: int, p: int) -> int | None:
    """The s with q == p^s, or None if q is not a power of p."""
    if q < 1:
        return None
    s = 0
    while q % p == 0:
        q //= p
        s += 1
    return s if q == 1 else None


def min_power_at_least(p: int, bound: int) -> int:
    """Least t with p^t >= bound."""
    t = 0
    power = 1
    while power < bound:
        power *= p
        t += 1
    return t
