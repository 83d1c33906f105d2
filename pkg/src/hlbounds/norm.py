"""Sup-norm of a bivariate homogeneous polynomial over the unit ball of l_p^2.

A homogeneous polynomial attains its maximum modulus over the ball on the
sphere, and the l_p sphere is one-dimensional, so the search is a 1-D global
maximization: a dense grid on the chart parameter, followed by a vectorized
golden-section refinement of every local maximum of the sampled sequence.

Four charts are searched, ``(t, +phi(t))``, ``(t, -phi(t))``, ``(phi(t), t)``
and ``(-phi(t), t)`` with ``phi(t) = (1 - |t|**p)**(1/p)``. The first two are
the two sign branches; the swapped pair keeps the search well conditioned near
the corners of the sphere, where ``phi`` becomes extremely steep for large p.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from functools import lru_cache

import numba
import numpy as np

from .errors import ConvergenceError, ParameterDomainError
from .poly import HomoPoly2, evaluate, horner2

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_BASIS_MAX_DEGREE = 64
_MAX_CANDIDATES = 512


@dataclass(frozen=True)
class OptConfig:
    coarse_grid: int = 20001
    local_tol: float = 1e-13
    max_refine_iters: int = 200
    multistart_count: int = 32
    rng_seed: int = 0
    # grid points per free dimension in the parameter search
    param_grid: int = 9
    search_mode: str = "simplex"

    def __post_init__(self):
        if self.coarse_grid < 3 or self.coarse_grid % 2 == 0:
            raise ValueError(f"coarse_grid must be odd and >= 3, got {self.coarse_grid}")
        if not self.local_tol > 0:
            raise ValueError("local_tol must be positive")
        if self.max_refine_iters < 1 or self.multistart_count < 1 or self.param_grid < 2:
            raise ValueError("iteration caps and grid sizes must be positive")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must fit in 64 unsigned bits")
        if self.search_mode not in ("simplex", "sweep"):
            raise ValueError(f"search_mode must be 'simplex' or 'sweep', got {self.search_mode!r}")

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_mapping(cls, values: dict) -> "OptConfig":
        """Build from string-valued key/value pairs (config files, CLI flags)."""
        kinds = {f.name: f.type for f in fields(cls)}
        kwargs = {}
        for key, raw in values.items():
            if key not in kinds:
                raise ValueError(f"unknown config key {key!r}")
            kind = kinds[key]
            if kind in ("int", int):
                kwargs[key] = int(float(raw)) if isinstance(raw, str) and "e" in raw.lower() else int(raw)
            elif kind in ("float", float):
                kwargs[key] = float(raw)
            else:
                kwargs[key] = str(raw)
        return cls(**kwargs)


@dataclass(frozen=True)
class NormResult:
    value: float
    argmax: tuple
    p: float
    grid_size: int
    refinement_iters: int
    est_error: float


def parse_p(p) -> float:
    if isinstance(p, str):
        text = p.strip().lower()
        p = math.inf if text in ("inf", "infinity", "oo") else float(text)
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ParameterDomainError(f"p must lie in [1, inf], got {p}")
    return p


def _phi(t, p):
    """(1 - |t|**p)**(1/p), evaluated in the log domain."""
    t = np.abs(np.asarray(t, dtype=float))
    if math.isinf(p):
        return np.ones_like(t)
    with np.errstate(divide="ignore"):
        u = np.exp(p * np.log(t))  # |t|**p, exact 0 at t = 0
        return np.exp(np.log1p(-u) / p)


def sphere_point(t: float, sign: int, p) -> tuple:
    """The point (t, sign * phi(t)) of the unit sphere of l_p^2."""
    p = parse_p(p)
    if abs(t) > 1.0:
        raise ParameterDomainError(f"|t| must be <= 1, got {t}")
    y = float(_phi(t, p))
    return float(t), (1.0 if sign >= 0 else -1.0) * y


def _chart_xy(t, chart, p):
    ph = _phi(t, p)
    x = np.where(chart < 2, t, np.where(chart == 2, ph, -ph))
    y = np.where(chart < 2, np.where(chart == 0, ph, -ph), t)
    return x, y


@lru_cache(maxsize=64)
def _grid_basis(degree: int, p: float, n: int):
    t = np.linspace(-1.0, 1.0, n)
    ph = _phi(t, p)
    j = np.arange(degree + 1)
    basis = t[:, None] ** (degree - j)[None, :] * ph[:, None] ** j[None, :]
    basis.setflags(write=False)
    return t, basis


def _chart_coeffs(coeffs):
    """Coefficient rows whose value at (t, phi(t)) is P on each chart."""
    signs = np.where(np.arange(len(coeffs)) % 2 == 0, 1.0, -1.0)
    rev = coeffs[::-1]
    return np.ascontiguousarray(np.stack([coeffs, coeffs * signs, rev, rev * signs]))


def _grid_values(charts, degree, p, n):
    if degree <= _BASIS_MAX_DEGREE:
        t, basis = _grid_basis(degree, p, n)
        return t, np.abs(charts @ basis.T)
    t = np.linspace(-1.0, 1.0, n)
    ph = _phi(t, p)
    return t, np.abs(np.stack([horner2(c, t, ph) for c in charts]))


@numba.njit(cache=True)
def _local_maxima(f):
    """Row/column indices of the local maxima of each row (plateaus count once)."""
    rows = np.empty(f.size, dtype=np.int64)
    cols = np.empty(f.size, dtype=np.int64)
    k = 0
    n = f.shape[1]
    for r in range(f.shape[0]):
        for i in range(n):
            if i > 0 and not f[r, i] > f[r, i - 1]:
                continue
            if i < n - 1 and not f[r, i] >= f[r, i + 1]:
                continue
            rows[k] = r
            cols[k] = i
            k += 1
    return rows[:k], cols[:k]


@numba.njit(cache=True)
def _chart_abs(row, t, p):
    if p == np.inf:
        ph = 1.0
    else:
        at = abs(t)
        u = 0.0 if at == 0.0 else math.exp(p * math.log(at))
        ph = math.exp(math.log1p(-u) / p)
    r = row[0]
    ypow = 1.0
    for j in range(1, row.shape[0]):
        ypow *= ph
        r = r * t + row[j] * ypow
    return abs(r)


@numba.njit(cache=True)
def _golden_refine(charts, lo, hi, chart, p, tol, max_iters):
    """Golden-section maximization of |P| on every bracket.

    Returns best abscissa, its value, the value spread over the final bracket,
    and the largest iteration count used (-1 if some bracket failed to converge).
    """
    n = lo.shape[0]
    t_best = np.empty(n)
    f_best = np.empty(n)
    err = np.empty(n)
    iters_used = 0
    eps = 2.220446049250313e-16
    for k in range(n):
        row = charts[chart[k]]
        a = lo[k]
        b = hi[k]
        c = b - _INVPHI * (b - a)
        d = a + _INVPHI * (b - a)
        fc = _chart_abs(row, c, p)
        fd = _chart_abs(row, d, p)
        it = 0
        while b - a > tol + 4.0 * eps * max(abs(a), abs(b)):
            if it >= max_iters:
                return t_best, f_best, err, -1
            it += 1
            if fc > fd:
                b = d
                d = c
                fd = fc
                c = b - _INVPHI * (b - a)
                fc = _chart_abs(row, c, p)
            else:
                a = c
                c = d
                fc = fd
                d = a + _INVPHI * (b - a)
                fd = _chart_abs(row, d, p)
        fa = _chart_abs(row, a, p)
        fb = _chart_abs(row, b, p)
        tb, fbest = c, fc
        if fd > fbest:
            tb, fbest = d, fd
        if fa > fbest:
            tb, fbest = a, fa
        if fb > fbest:
            tb, fbest = b, fb
        t_best[k] = tb
        f_best[k] = fbest
        err[k] = max(abs(fbest - fa), abs(fbest - fb))
        if it > iters_used:
            iters_used = it
    return t_best, f_best, err, iters_used


def sup_norm(P: HomoPoly2, p, cfg: OptConfig | None = None) -> NormResult:
    """Maximum of |P| over the unit ball of l_p^2 (p may be inf)."""
    cfg = cfg or OptConfig()
    p = parse_p(p)
    if P.is_zero():
        raise ParameterDomainError("sup-norm of the zero polynomial is not a bound denominator")
    charts = _chart_coeffs(P.array)
    n = cfg.coarse_grid
    t, chart_vals = _grid_values(charts, P.degree, p, n)
    h = t[1] - t[0]

    chart, idx = _local_maxima(chart_vals)
    seed = chart_vals[chart, idx]
    if len(idx) > _MAX_CANDIDATES:
        keep = np.sort(np.argsort(-seed, kind="stable")[:_MAX_CANDIDATES])
        chart, idx, seed = chart[keep], idx[keep], seed[keep]
    chart = chart.astype(np.int64)
    lo = np.maximum(t[idx] - h, -1.0)
    hi = np.minimum(t[idx] + h, 1.0)
    t_best, f_best, bracket_err, iters = _golden_refine(
        charts, lo, hi, chart, p, cfg.local_tol, cfg.max_refine_iters
    )
    if iters < 0:
        raise ConvergenceError(
            f"golden-section refinement did not reach tolerance {cfg.local_tol} "
            f"in {cfg.max_refine_iters} iterations",
            best_value=float(seed.max()),
        )

    # only near-top candidates need the accurate evaluation
    close = np.flatnonzero(f_best >= f_best.max() * (1.0 - 1e-9))
    t_best, chart, bracket_err, f_best = t_best[close], chart[close], bracket_err[close], f_best[close]
    x, y = _chart_xy(t_best, chart, p)
    exact_vals = np.abs(evaluate(P, x, y))
    top = exact_vals.max()
    # ties: smallest |t|, then chart order
    near = np.flatnonzero(exact_vals >= top * (1.0 - 4.0 * np.finfo(float).eps))
    order = np.lexsort((chart[near], np.abs(t_best[near])))
    win = near[order[0]]

    est_error = float(bracket_err[win])
    others = np.delete(exact_vals, win)
    if len(others):
        spread = top - others.max()
        if 0.0 < spread < 1e-10:
            est_error = max(est_error, float(spread))
    return NormResult(
        value=float(exact_vals[win]),
        argmax=(float(x[win]), float(y[win])),
        p=p,
        grid_size=n,
        refinement_iters=int(iters),
        est_error=est_error,
    )


def sup_norm_oracle(P: HomoPoly2, p, n_samples: int = 10**6, seed: int = 0) -> float:
    """Plain random search over the sphere, used to cross-check ``sup_norm``.

    Half of the samples draw the first coordinate uniformly and solve for the
    second; the other half draw the second coordinate and solve for the first.
    Both sign branches are evaluated at every sample.
    """
    p = parse_p(p)
    if n_samples < 1000:
        raise ValueError("the oracle needs at least 1000 samples")
    rng = np.random.default_rng(seed)
    coeffs = P.array
    best = 0.0
    remaining = n_samples
    chunk = 1 << 17
    stratum = 0
    while remaining > 0:
        m = min(chunk, remaining)
        remaining -= m
        u = rng.uniform(-1.0, 1.0, m)
        ph = _phi(u, p)
        for s in (1.0, -1.0):
            if stratum % 2 == 0:
                v = horner2(coeffs, u, s * ph)
            else:
                v = horner2(coeffs, s * ph, u)
            best = max(best, float(np.max(np.abs(v))))
        stratum += 1
    return best
