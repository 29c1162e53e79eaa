"""Exact Fibonacci arithmetic and the identities the rest of the package rests on.

Indices follow the classical convention a_0 = 0, a_1 = 1, a_n = a_{n-1} + a_{n-2}.
The table is capped at index 186, the largest n whose value fits a 128-bit
unsigned word; everything here is exact Python integer arithmetic up to that
bound.
"""

import math

from .errors import DomainError, FibOverflowError

#: Largest index held in the exact table (a_186 < 2**128 <= a_187).
MAX_INDEX = 186

#: Golden ratio, the positive root of x**2 = x + 1 and the limit of a_{n+1}/a_n.
PHI = (1.0 + math.sqrt(5.0)) / 2.0


def _build_table(max_index: int) -> tuple[int, ...]:
    values = [0, 1]
    for _ in range(2, max_index + 1):
        values.append(values[-1] + values[-2])
    return tuple(values)


_TABLE = _build_table(MAX_INDEX)

assert _TABLE[MAX_INDEX] < 1 << 128


def fib(n: int) -> int:
    """Return a_n exactly.

    Raises FibOverflowError above index 186 and DomainError for negative n.
    """
    if n < 0:
        raise DomainError(f"Fibonacci index must be nonnegative, got {n}")
    if n > MAX_INDEX:
        raise FibOverflowError(
            f"Fibonacci index {n} exceeds the exact 128-bit table bound {MAX_INDEX}"
        )
    return _TABLE[n]


def docagne(m: int, n: int) -> int:
    """d'Ocagne combination a_m*a_{n+1} - a_{m+1}*a_n, exactly.

    Equals (-1)**n * a_{m-n}; the identity is asserted on every call.
    Requires 0 <= n <= m <= 185.
    """
    if not 0 <= n <= m:
        raise DomainError(f"need 0 <= n <= m, got m={m}, n={n}")
    if m > MAX_INDEX - 1:
        raise FibOverflowError(
            f"index {m + 1} exceeds the exact 128-bit table bound {MAX_INDEX}"
        )
    value = fib(m) * fib(n + 1) - fib(m + 1) * fib(n)
    assert value == (-1) ** n * fib(m - n)
    return value


def prefix_sum(n: int) -> int:
    """Sum a_1 + ... + a_n, exactly.

    Equals a_{n+2} - 1; the identity is asserted on every call.
    Requires 1 <= n <= 184.
    """
    if n < 1:
        raise DomainError(f"prefix sum needs n >= 1, got {n}")
    if n > MAX_INDEX - 2:
        raise FibOverflowError(
            f"index {n + 2} exceeds the exact 128-bit table bound {MAX_INDEX}"
        )
    total = sum(_TABLE[1 : n + 1])
    assert total == fib(n + 2) - 1
    return total


def ratio(n: int, alpha: int) -> float:
    """a_{n+alpha} / a_n as a correctly rounded float.

    Converges to PHI**alpha as n grows. Requires a_n > 0, i.e. n >= 1,
    and n + alpha inside the table.
    """
    if n < 1:
        raise DomainError(f"ratio denominator a_{n} is zero or undefined")
    return fib(n + alpha) / fib(n)
