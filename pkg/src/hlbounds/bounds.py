"""Hardy-Littlewood exponents, lower-bound quotients and the parameter searches.

Any nonzero m-homogeneous polynomial P on l_p^2 gives the lower bound

    C_{R,m,p} >= |P|_q / ||P||,   q = hl_exponent(m, p),

where |P|_q is the l_q norm of the coefficients and ||P|| the sup-norm over
the unit ball. The quotient is invariant under P -> cP, which the parameter
search exploits by normalizing the largest homogeneous parameter to 1.
"""
from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import ParameterDomainError
from .norm import OptConfig, parse_p, sup_norm
from .poly import (
    DEFAULT_DEGREE_CAP,
    FamilySpec,
    HomoPoly2,
    build_family,
    coefficient_norm,
    get_family,
    power_dd,
)


def hl_exponent(m: int, p) -> float:
    """Optimal coefficient exponent of the polynomial Hardy-Littlewood inequality."""
    p = parse_p(p)
    if m < 1:
        raise ParameterDomainError(f"degree must be >= 1, got {m}")
    if p <= m:
        raise ParameterDomainError(f"no Hardy-Littlewood regime for p={p} <= m={m}")
    if math.isinf(p):
        return 2.0 * m / (m + 1)
    if p >= 2 * m:
        return 2.0 * m * p / (m * p + p - 2.0 * m)
    return p / (p - m)


@dataclass(frozen=True)
class BoundReport:
    family: str
    params: tuple
    m: int
    p: float
    q: float
    coeff_norm: float
    sup_norm: float
    lower_bound: float
    per_degree_root: float
    argmax: tuple = ()


@dataclass(frozen=True)
class HyperReport:
    base_family: str
    base_params: tuple
    k: int
    M: int
    p: float
    coeff_norm: float
    base_sup_norm: float
    lower_bound: float
    h_estimate: float
    # the h value is a finite-degree estimate of a lim sup, never the limit itself
    label: str = "finite-m estimate"


def lower_bound(P: HomoPoly2, p, cfg: OptConfig | None = None, family: str = "", params=()) -> BoundReport:
    p = parse_p(p)
    if P.is_zero():
        raise ParameterDomainError("the zero polynomial gives no bound")
    q = hl_exponent(P.degree, p)
    cn = coefficient_norm(P, q)
    nr = sup_norm(P, p, cfg)
    lb = cn / nr.value
    return BoundReport(
        family=family,
        params=tuple(float(v) for v in params),
        m=P.degree,
        p=p,
        q=q,
        coeff_norm=cn,
        sup_norm=nr.value,
        lower_bound=lb,
        per_degree_root=lb ** (1.0 / P.degree),
        argmax=nr.argmax,
    )


def family_bound(family, params, p=None, cfg: OptConfig | None = None) -> BoundReport:
    """lower_bound of a family member; p defaults to 2m."""
    spec = get_family(family)
    P = build_family(spec, params)
    return lower_bound(P, 2 * spec.degree if p is None else p, cfg, spec.id, _floats(params))


def _floats(params):
    return tuple(float(v) for v in params)


# -- parameter search ------------------------------------------------------


@dataclass
class ParameterFit:
    params: tuple  # the family's natural normalization
    report: BoundReport
    mode: str
    normalized: tuple  # homogeneous vector with largest entry 1 (P2: just a)
    evaluations: int
    reference_scale: tuple = field(default=())


def _threads() -> int:
    raw = os.environ.get("HLB_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def _natural_params(spec: FamilySpec, v) -> tuple | None:
    """Homogeneous vector -> the family's parameters (None if not representable)."""
    v = [float(x) for x in v]
    if spec.id == "P2":
        return (v[0],)
    if spec.id == "P10":
        if v[2] == 0.0:
            return None
        return (v[0] / v[2], v[1] / v[2])
    if spec.id in ("P3", "P6"):
        if v[0] == 0.0:
            return None
        return (1.0, v[1] / v[0])
    return tuple(v)


EXPLORE_MAX_DEGREE = 3


def generic_family(m: int) -> FamilySpec:
    """Every degree-m polynomial, parametrized by its full coefficient vector."""
    if not 1 <= m <= EXPLORE_MAX_DEGREE:
        raise ParameterDomainError(f"exploration supports degrees 1..{EXPLORE_MAX_DEGREE}, got {m}")
    names = tuple(f"c{j}" for j in range(m + 1))
    ident = lambda v: tuple(float(x) for x in v)  # noqa: E731
    return FamilySpec(f"G{m}", m, names, ((-math.inf, math.inf),) * (m + 1), ident, ident, m + 1)


class _Objective:
    """Quotient as a function of the free coordinates of one normalized box."""

    def __init__(self, spec: FamilySpec, p: float, cfg: OptConfig, fixed: int | None):
        self.spec = spec
        self.p = p
        self.cfg = cfg
        self.fixed = fixed
        self.q = hl_exponent(spec.degree, p)
        self.evaluations = 0

    def vector(self, z) -> tuple:
        if self.fixed is None:
            return (float(z[0]),)
        z = list(map(float, z))
        return tuple(z[: self.fixed] + [1.0] + z[self.fixed:])

    def coeffs(self, z):
        v = self.vector(z)
        if self.spec.id == "P2":
            return self.spec.build(v)
        return self.spec.homogeneous(v)

    def __call__(self, z) -> float:
        self.evaluations += 1
        P = HomoPoly2(self.spec.degree, self.coeffs(z))
        if P.is_zero():
            return 0.0
        return coefficient_norm(P, self.q) / sup_norm(P, self.p, self.cfg).value


def _boxes(spec: FamilySpec, cfg: OptConfig):
    """(fixed index, per-coordinate grid) for every normalized box of the family."""
    if spec.id == "P2":
        eps = 1.0 / (4 * cfg.param_grid)
        return [(None, [np.linspace(eps, 1.0 - eps, 4 * cfg.param_grid)], [(1e-12, 1.0 - 1e-12)])]
    dim = spec.homogeneous_dim
    out = []
    axis = np.linspace(-1.0, 1.0, cfg.param_grid)
    for fixed in range(dim):
        out.append((fixed, [axis] * (dim - 1), [(-1.0, 1.0)] * (dim - 1)))
    return out


def _map(fn, items):
    n = _threads()
    if n <= 1 or len(items) < 64:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def optimize_parameters(family, p=None, cfg: OptConfig | None = None, reference=None) -> ParameterFit:
    """Maximize the lower-bound quotient over a family's parameters.

    Every nonzero homogeneous parameter vector is a positive or negative
    multiple of one whose largest entry is exactly 1, so the search runs over
    one box [-1, 1]^(d-1) per choice of that entry (P2 keeps its single a in
    (0, 1)). A coarse grid over all boxes seeds ``multistart_count`` local
    refinements: Nelder-Mead in the default "simplex" mode, or a cyclic
    one-coordinate-at-a-time sweep in "sweep" mode.
    """
    cfg = cfg or OptConfig()
    spec = get_family(family)
    return _search(spec, p, cfg, reference)


def explore_degree(m: int, p=None, cfg: OptConfig | None = None) -> ParameterFit:
    """Search all degree-m coefficient vectors (small m); no optimality claim is made."""
    return _search(generic_family(m), p, cfg or OptConfig(), None)


def _search(spec: FamilySpec, p, cfg: OptConfig, reference) -> ParameterFit:
    p = float(2 * spec.degree) if p is None else parse_p(p)
    if p <= spec.degree:
        raise ParameterDomainError(f"p={p} must exceed the degree {spec.degree}")
    boxes = _boxes(spec, cfg)
    if not boxes:
        raise ParameterDomainError(f"{spec.id} has an empty parameter box")

    cells = []  # (value, box index, point)
    objectives = []
    for bi, (fixed, axes, _) in enumerate(boxes):
        obj = _Objective(spec, p, cfg, fixed)
        objectives.append(obj)
        points = [tuple(map(float, z)) for z in itertools.product(*axes)]
        values = _map(obj, points)
        cells.extend((v, bi, z) for v, z in zip(values, points))
    if not cells:
        raise ParameterDomainError(f"{spec.id} has an empty parameter box")

    # best cells first; ties broken lexicographically for determinism
    cells.sort(key=lambda c: (-c[0], c[1], c[2]))
    rng = np.random.default_rng(cfg.rng_seed)
    n_grid_starts = max(1, (3 * cfg.multistart_count + 3) // 4)
    starts = [(bi, z) for _, bi, z in cells[:n_grid_starts]]
    while len(starts) < cfg.multistart_count:
        bi = int(rng.integers(len(boxes)))
        lows = [lo for lo, _ in boxes[bi][2]]
        highs = [hi for _, hi in boxes[bi][2]]
        starts.append((bi, tuple(map(float, rng.uniform(lows, highs)))))

    best = (cells[0][0], cells[0][1], cells[0][2])
    for bi, z0 in starts:
        obj = objectives[bi]
        bounds = boxes[bi][2]
        if cfg.search_mode == "sweep":
            z, val = _coordinate_sweep(obj, z0, bounds, cfg)
        else:
            z, val = _simplex(obj, z0, bounds)
        if val > best[0] or (val == best[0] and (bi, z) < (best[1], best[2])):
            best = (val, bi, z)

    _, bi, z = best
    obj = objectives[bi]
    vector = obj.vector(z)
    natural = _natural_params(spec, vector)
    if natural is None:
        raise ParameterDomainError(
            f"optimum of {spec.id} lies outside the family's natural normalization: {vector}"
        )
    P = HomoPoly2(spec.degree, spec.build(natural))
    report = lower_bound(P, p, cfg, spec.id, natural)
    return ParameterFit(
        params=natural,
        report=report,
        mode=cfg.search_mode,
        normalized=vector,
        evaluations=sum(o.evaluations for o in objectives),
        reference_scale=_reference_scale(natural, reference),
    )


def _reference_scale(params, reference):
    """Rescale so the reference's largest-magnitude entry is matched."""
    if not reference:
        return tuple(params)
    ref = [float(r) for r in reference]
    i = int(np.argmax(np.abs(ref)))
    if params[i] == 0.0:
        return tuple(params)
    s = ref[i] / params[i]
    return tuple(s * v for v in params)


def _simplex(obj, z0, bounds):
    res = minimize(
        lambda z: -obj(z),
        np.array(z0, dtype=float),
        method="Nelder-Mead",
        bounds=bounds,
        options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 400 * len(z0) + 400},
    )
    return tuple(map(float, res.x)), float(-res.fun)


def _coordinate_sweep(obj, z0, bounds, cfg, min_step=1e-10):
    """Fix all coordinates but one, scan that one, move to the best; shrink the step."""
    z = list(map(float, z0))
    val = obj(z)
    step = 2.0 / (cfg.param_grid - 1)
    span = 4
    while step > min_step:
        improved = False
        for i, (lo, hi) in enumerate(bounds):
            trial = [min(hi, max(lo, z[i] + k * step)) for k in range(-span, span + 1)]
            for t in trial:
                if t == z[i]:
                    continue
                cand = z[:i] + [t] + z[i + 1:]
                v = obj(cand)
                if v > val:
                    val, z, improved = v, cand, True
        if not improved:
            step /= 4.0
    return tuple(z), val


# -- figure data -----------------------------------------------------------

SWEEP_FAMILIES = ("P3", "P6", "P8", "P10")


def parameter_sweep(family, p, ratio_range, cfg: OptConfig | None = None, a: float = 1.0):
    """Quotient along lambda = b/a with a held fixed.

    For P3, P6 and P8 the quotient depends on b/a only. P10 has a fixed middle
    coefficient, so there ``a`` is held at the given value and b = lambda * a.
    """
    spec = get_family(family)
    if spec.id not in SWEEP_FAMILIES:
        raise ParameterDomainError(f"sweeps need a two-parameter family {SWEEP_FAMILIES}, got {spec.id}")
    lo, hi, step = (float(v) for v in ratio_range)
    if not (step > 0 and math.isfinite(lo) and math.isfinite(hi) and hi >= lo):
        raise ParameterDomainError(f"invalid sweep range {ratio_range}")
    if a == 0.0:
        raise ParameterDomainError("a must be nonzero for a ratio sweep")
    p = parse_p(p)
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    out = []
    for i in range(n):
        lam = lo + i * step
        r = lower_bound(build_family(spec, (a, lam * a)), p, cfg, spec.id)
        out.append((lam, r.lower_bound))
    return out


# -- degree-M estimates ----------------------------------------------------


def hyper_estimate(base, base_params, k: int, cfg: OptConfig | None = None, cap: int = DEFAULT_DEGREE_CAP) -> HyperReport:
    """Finite-degree estimate of the hypercontractivity constant from P**k.

    With M = deg(P) * k and p = 2M the exponent is 2, so the numerator is the
    Euclidean norm of the coefficients of P**k; the denominator uses
    ||P**k|| = ||P||**k, which holds pointwise.
    """
    spec = get_family(base)
    P = build_family(spec, base_params)
    M = spec.degree * k
    p = float(2 * M)
    hi, _ = power_dd(P, k, cap)
    log_cn = _log_coefficient_norm(hi)
    base_sup = sup_norm(P, p, cfg).value
    log_lb = log_cn - k * math.log(base_sup)
    cn = math.exp(log_cn) if log_cn < 709.0 else math.inf
    lb = math.exp(log_lb) if log_lb < 709.0 else math.inf
    return HyperReport(
        base_family=spec.id,
        base_params=_floats(base_params),
        k=k,
        M=M,
        p=p,
        coeff_norm=cn,
        base_sup_norm=base_sup,
        lower_bound=lb,
        h_estimate=math.exp(log_lb / M),
    )



def _log_coefficient_norm(coeffs):
    """log of the Euclidean coefficient norm, safe when the norm itself overflows."""
    coeffs = np.asarray(coeffs, dtype=float)
    s = float(np.max(np.abs(coeffs)))
    if not (math.isfinite(s) and s > 0.0):
        raise OverflowError("powered coefficients are zero or not finite")
    return math.log(s) + math.log(coefficient_norm(coeffs / s, 2.0))
