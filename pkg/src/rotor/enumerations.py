"""Closed-form ASM-type enumerations and the conjectured groundstate sums.

Every product is accumulated as an exact :class:`fractions.Fraction`; the
final value is checked to be an integer.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial as _factorial

from .errors import UnsupportedSizeError
from .hamiltonian import BoundaryCondition


@lru_cache(maxsize=None)
def _fact(k: int) -> int:
    return _factorial(k)


def _exact(q: Fraction, what: str) -> int:
    if q.denominator != 1:
        raise ArithmeticError(f"{what} evaluated to non-integer {q}")
    return q.numerator


def _check_m(m: int, lowest: int) -> None:
    if m < lowest:
        raise ValueError(f"m must be >= {lowest}, got {m}")


def count_asm(m: int) -> int:
    """Number of m x m alternating sign matrices."""
    _check_m(m, 0)
    acc = Fraction(1)
    for j in range(m):
        acc *= Fraction(_fact(3 * j + 1), _fact(m + j))
    return _exact(acc, f"A({m})")


def count_vsasm(m: int) -> int:
    """Number of (2m+1) x (2m+1) vertically symmetric ASMs."""
    _check_m(m, 0)
    acc = Fraction(1)
    for j in range(m):
        acc *= Fraction(
            (3 * j + 2) * _fact(2 * j + 1) * _fact(6 * j + 3),
            _fact(4 * j + 2) * _fact(4 * j + 3),
        )
    return _exact(acc, f"A_V({2 * m + 1})")


def count_nccp(m: int) -> int:
    """Cyclically symmetric transpose complement plane partitions, N_8(2m)."""
    _check_m(m, 1)
    acc = Fraction(1)
    for j in range(m):
        acc *= Fraction(
            (3 * j + 1) * _fact(2 * j) * _fact(6 * j),
            _fact(4 * j) * _fact(4 * j + 1),
        )
    return _exact(acc, f"N_8({2 * m})")


def count_htasm(m: int) -> int:
    """Number of 2m x 2m half-turn symmetric ASMs."""
    _check_m(m, 1)
    acc = Fraction(count_asm(m) ** 2)
    for j in range(m):
        acc *= Fraction(3 * j + 2, 3 * j + 1)
    return _exact(acc, f"A_HT({2 * m})")


def count_vsasm3(m: int) -> int:
    """3-enumeration of (2m+1) x (2m+1) vertically symmetric ASMs.

    ``m = 0`` gives 1 (empty product, prefactor 1).
    """
    _check_m(m, 0)
    if m == 0:
        return 1
    # m(m-3) is always even; the exponent is negative for m = 1, 2
    e = m * (m - 3) // 2
    acc = Fraction(3) ** e / 2**m
    for j in range(1, m + 1):
        acc *= Fraction(_fact(j - 1) * _fact(3 * j), j * _fact(2 * j - 1) ** 2)
    return _exact(acc, f"A_V({2 * m + 1};3)")


def theta(m: int) -> int:
    _check_m(m, 1)
    return (m - 1) * (m + 2) // 3


QUANTITIES = {
    "asm": count_asm,
    "vsasm": count_vsasm,
    "nccp": count_nccp,
    "htasm": count_htasm,
    "vsasm3": count_vsasm3,
    "theta": theta,
}


def predicted_sum(bc: BoundaryCondition | str, n: int) -> int:
    """Conjectured sum of the primitive groundstate's entries.

    Periodic odd sizes use ``N = 2m+1 -> 3^(3m) A_V(2m+1;3)^2``, the indexing
    that agrees with the N = 1, 3, 5 data.
    """
    bc = BoundaryCondition.parse(bc)
    bc.validate(n)
    if bc is BoundaryCondition.CLOSED:
        if n % 2:
            m = (n + 1) // 2
            return 3 ** ((m - 1) ** 2) * count_nccp(m)
        m = n // 2
        return 3 ** (2 * theta(m)) * count_vsasm(m)
    if bc is BoundaryCondition.PERIODIC:
        if n % 2:
            m = (n - 1) // 2
            return 3 ** (3 * m) * count_vsasm3(m) ** 2
        m = n // 2
        return 3 ** (m * m) * count_htasm(m)
    m = n // 2
    return 3 ** theta(m) * count_asm(m)


def predicted_sum_literal(n: int) -> int | None:
    """Periodic odd sum under the alternative reading ``N = 2m-1``.

    Kept for reports only; it disagrees with the computed groundstates.
    """
    if n % 2 == 0:
        return None
    m = (n + 1) // 2
    return 3 ** (3 * m) * count_vsasm3(m) ** 2


def predicted_min(bc: BoundaryCondition | str, n: int) -> int | None:
    """Smallest groundstate entry for closed odd ``N = 2m-1``: A_V(2m-1;3).

    ``None`` everywhere else.
    """
    bc = BoundaryCondition.parse(bc)
    if bc is not BoundaryCondition.CLOSED or n % 2 == 0:
        return None
    if n < 1:
        raise UnsupportedSizeError(f"system size must be positive, got {n}")
    m = (n + 1) // 2
    return count_vsasm3(m - 1)
