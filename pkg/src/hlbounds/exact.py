"""Exact rational/big-integer reference arithmetic for coefficient vectors.

This path is slow and only serves as an oracle for ``polynomial_power``:
rational coefficients are brought to a common denominator, convolved as Python
integers and rounded back to float64 once.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .poly import get_family, parse_param


def exact_family_coeffs(family, params: Sequence) -> list:
    """Coefficient vector of a linear family as exact fractions.

    P2 involves a square root; its coefficients are taken as the exact binary
    values of the float64 build instead.
    """
    spec = get_family(family)
    fr = [parse_param(p) for p in params]
    if spec.id == "P2":
        from .poly import build_family

        return [Fraction(c) for c in build_family(spec, [float(v) for v in fr]).coeffs]
    return [Fraction(c) for c in spec.build(fr)]


def to_integers(coeffs: Sequence[Fraction]):
    """Scale fractions to integers; returns (ints, common denominator)."""
    coeffs = [Fraction(c) for c in coeffs]
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in coeffs], den


def int_convolve(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def int_power(a: Sequence[int], k: int) -> list:
    result = None
    base = list(a)
    while k:
        if k & 1:
            result = base if result is None else int_convolve(result, base)
        k >>= 1
        if k:
            base = int_convolve(base, base)
    return result


def exact_power(coeffs: Sequence, k: int) -> list:
    """Exact coefficients of P**k as fractions."""
    ints, den = to_integers([Fraction(c) for c in coeffs])
    scale = den**k
    return [Fraction(v, scale) for v in int_power(ints, k)]


def exact_power_float(coeffs: Sequence, k: int) -> list:
    """Exact P**k correctly rounded to float64."""
    ints, den = to_integers([Fraction(c) for c in coeffs])
    scale = den**k
    # int/int true division is correctly rounded in CPython
    return [v / scale for v in int_power(ints, k)]

