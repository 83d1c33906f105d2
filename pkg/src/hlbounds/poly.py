"""Bivariate homogeneous polynomials and the seven extremal-candidate families.

A degree-m polynomial is stored densely: ``coeffs[j]`` multiplies
``x**(m-j) * y**j``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .eft import comp_horner2, dd_convolve
from .errors import (
    ArityError,
    CoefficientOverflowError,
    DegreeCapError,
    ParameterDomainError,
)

DEFAULT_DEGREE_CAP = 2048


@dataclass(frozen=True)
class HomoPoly2:
    degree: int
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if self.degree < 1:
            raise ValueError(f"degree must be positive, got {self.degree}")
        if len(coeffs) != self.degree + 1:
            raise ValueError(
                f"degree {self.degree} needs {self.degree + 1} coefficients, got {len(coeffs)}"
            )
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[float]) -> "HomoPoly2":
        return cls(len(coeffs) - 1, tuple(coeffs))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def scaled(self, c: float) -> "HomoPoly2":
        return HomoPoly2(self.degree, tuple(c * a for a in self.coeffs))

    def reflected(self) -> "HomoPoly2":
        """The polynomial P(x, -y)."""
        return HomoPoly2(self.degree, tuple(a if j % 2 == 0 else -a for j, a in enumerate(self.coeffs)))

    def swapped(self) -> "HomoPoly2":
        """The polynomial P(y, x)."""
        return HomoPoly2(self.degree, self.coeffs[::-1])


@dataclass(frozen=True)
class FamilySpec:
    id: str
    degree: int
    param_names: tuple
    param_domain: tuple  # per parameter (lo, hi); open ends for P2
    build: Callable[[Sequence[float]], tuple]
    # coefficient vector as a linear map of a homogeneous vector; None for P2
    homogeneous: Callable[[Sequence[float]], tuple] | None = None
    # number of entries of that homogeneous vector (params, plus P10's fixed middle term)
    homogeneous_dim: int = 0

    @property
    def n_params(self) -> int:
        return len(self.param_names)


def _p2(p):
    (a,) = p
    return (a, 2.0 * math.sqrt(a * (1.0 - a)), -a)


def _p3(p):
    a, b = p
    return (a, b, b, a)


def _p5(p):
    a, b, c = p
    return (a, -b, -c, c, b, -a)


def _p6(p):
    a, b = p
    return (0.0, a, 0.0, b, 0.0, a, 0.0)


def _p7(p):
    a, b, c, d = p
    return (-a, b, c, -d, -d, c, b, -a)


def _p8(p):
    a, b = p
    return (0.0, -a, 0.0, b, 0.0, -b, 0.0, a, 0.0)


def _p10h(v):
    a, b, mid = v
    return (0.0, a, 0.0, b, 0.0, mid, 0.0, b, 0.0, a, 0.0)


def _p10(p):
    a, b = p
    return _p10h((a, b, 1.0))


_UNBOUNDED = (-math.inf, math.inf)

FAMILIES = {
    "P2": FamilySpec("P2", 2, ("a",), ((0.0, 1.0),), _p2),
    "P3": FamilySpec("P3", 3, ("a", "b"), (_UNBOUNDED,) * 2, _p3, _p3, 2),
    "P5": FamilySpec("P5", 5, ("a", "b", "c"), (_UNBOUNDED,) * 3, _p5, _p5, 3),
    "P6": FamilySpec("P6", 6, ("a", "b"), (_UNBOUNDED,) * 2, _p6, _p6, 2),
    "P7": FamilySpec("P7", 7, ("a", "b", "c", "d"), (_UNBOUNDED,) * 4, _p7, _p7, 4),
    "P8": FamilySpec("P8", 8, ("a", "b"), (_UNBOUNDED,) * 2, _p8, _p8, 2),
    "P10": FamilySpec("P10", 10, ("a", "b"), (_UNBOUNDED,) * 2, _p10, _p10h, 3),
}


def get_family(family) -> FamilySpec:
    if isinstance(family, FamilySpec):
        return family
    try:
        return FAMILIES[str(family).upper()]
    except KeyError:
        raise ParameterDomainError(
            f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}"
        ) from None


def parse_param(text) -> Fraction:
    """Parse a decimal or rational literal exactly ("-2.2654", "3/35", "1e-3")."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, (int, float)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParameterDomainError(f"cannot parse parameter {text!r}") from None


def parse_params(text) -> tuple:
    """Split a comma-separated parameter list into exact fractions."""
    if isinstance(text, str):
        items = [s for s in text.split(",") if s.strip()]
    else:
        items = list(text)
    return tuple(parse_param(s) for s in items)


def build_family(family, params: Sequence) -> HomoPoly2:
    spec = get_family(family)
    if len(params) != spec.n_params:
        raise ArityError(
            f"{spec.id} takes {spec.n_params} parameter(s) {spec.param_names}, got {len(params)}"
        )
    values = tuple(float(parse_param(p)) if isinstance(p, str) else float(p) for p in params)
    if not all(math.isfinite(v) for v in values):
        raise ParameterDomainError("parameters must be finite")
    if spec.id == "P2" and not 0.0 < values[0] < 1.0:
        raise ParameterDomainError(f"P2 needs 0 < a < 1 so that sqrt(a(1-a)) is real, got a={values[0]}")
    return HomoPoly2(spec.degree, spec.build(values))


def evaluate(P: HomoPoly2, x, y):
    """P(x, y), accurate to about twice working precision (arrays broadcast)."""
    return comp_horner2(P.coeffs, x, y)


def horner2(coeffs, x, y):
    """Plain homogeneous Horner; the fast path used inside the optimizers."""
    coeffs = np.asarray(coeffs, dtype=float)
    r = np.full(np.shape(x), coeffs[0])
    ypow = np.ones(np.shape(y))
    for c in coeffs[1:]:
        ypow = ypow * y
        r = r * x + c * ypow
    return r


def coefficient_norm(P, q: float) -> float:
    """The l_q norm of the coefficient vector, q in [1, inf]."""
    coeffs = np.abs(P.array if isinstance(P, HomoPoly2) else np.asarray(P, dtype=float))
    q = float(q)
    if math.isnan(q) or q < 1.0:
        raise ParameterDomainError(f"coefficient norm needs q >= 1, got {q}")
    scale = coeffs.max()
    if scale == 0.0:
        return 0.0
    if math.isinf(q):
        return float(scale)
    r = coeffs / scale
    if q == 1.0:
        return float(scale * r.sum())
    if q == 2.0:
        return float(scale * math.sqrt(math.fsum(r * r)))
    return float(scale * math.fsum(r**q) ** (1.0 / q))


def polynomial_power(P: HomoPoly2, k: int, cap: int = DEFAULT_DEGREE_CAP) -> HomoPoly2:
    """P**k by repeated squaring of the coefficient vector.

    Intermediate powers are carried as double-double vectors and rounded to
    float64 only once at the end.
    """
    hi, _ = power_dd(P, k, cap)
    return HomoPoly2(P.degree * k, tuple(hi))


def power_dd(P: HomoPoly2, k: int, cap: int = DEFAULT_DEGREE_CAP):
    if int(k) != k or k < 1:
        raise ValueError(f"power must be a positive integer, got {k}")
    k = int(k)
    if P.degree * k > cap:
        raise DegreeCapError(f"degree {P.degree}*{k} = {P.degree * k} exceeds cap {cap}")
    base = (P.array, np.zeros(P.degree + 1))
    base_k = 1
    result = None
    result_k = 0
    remaining = k
    while True:
        if remaining & 1:
            if result is None:
                result = base
            else:
                with np.errstate(over="ignore", invalid="ignore"):
                    result = dd_convolve(*result, *base)
            result_k += base_k
            _check_finite(result[0], result_k, k)
        remaining >>= 1
        if not remaining:
            break
        with np.errstate(over="ignore", invalid="ignore"):
            base = dd_convolve(*base, *base)
        base_k *= 2
        _check_finite(base[0], base_k, k)
    return result


def _check_finite(hi, reached, k):
    if not np.all(np.isfinite(hi)):
        raise CoefficientOverflowError(
            f"coefficients overflow float64 while forming power {reached} of requested k={k}", k=k
        )
