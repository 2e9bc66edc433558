"""Scalar discrete averages.

Integer midpoints (``av_floor``, ``av_fc``, ``av_cf``) use mathematical
floor and ceiling, so negative arguments behave like ``floor(-1/2) == -1``.
The residue averages (``av_z`` on Z_N, ``av_mu`` on roots of unity kept as
exponents) are asymmetric: the result lies in the half-open cyclic arc
``[a, b)``.
"""

from __future__ import annotations

from . import core
from .core import Residue
from .errors import UsageError


def av_floor(a: int, b: int) -> int:
    return (a + b) // 2


def _ceil_half(x: int) -> int:
    return -((-x) // 2)


def av_fc(a: int, b: int) -> int:
    """Floor of the midpoint when ``a`` is even, ceiling when ``a`` is odd."""
    if a % 2 == 0:
        return (a + b) // 2
    return _ceil_half(a + b)


def av_cf(a: int, b: int) -> int:
    """Ceiling of the midpoint when ``a`` is even, floor when ``a`` is odd."""
    if a % 2 == 0:
        return _ceil_half(a + b)
    return (a + b) // 2


def discrete_sqrt(p: Residue) -> Residue:
    """Halve the exponent, rounding down."""
    return Residue(p.value // 2, p.modulus)


def av_mu(p: Residue, q: Residue) -> Residue:
    """``P * sqrt(P^-1 * Q)`` computed on exponents; lands in the arc ``[P, Q)``."""
    return p + discrete_sqrt(-p + q)


def av_z_int(a: int, b: int, modulus: int) -> int:
    """Z-discrete average of two residues given as plain ints."""
    step = core.add_mod(core.neg_mod(a, modulus), b, modulus)
    return core.add_mod(a, step // 2, modulus)


def av_z(a: Residue, b: Residue) -> Residue:
    if a.modulus != b.modulus:
        raise UsageError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    return Residue(av_z_int(a.value, b.value, a.modulus), a.modulus)
