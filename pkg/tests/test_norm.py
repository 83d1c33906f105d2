import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hlbounds.errors import ConvergenceError, ParameterDomainError
from hlbounds.norm import OptConfig, parse_p, sphere_point, sup_norm, sup_norm_oracle
from hlbounds.poly import FAMILIES, HomoPoly2, build_family, evaluate, polynomial_power

P3_LIT = build_family("P3", (1, -1.6692))
P6_LIT = build_family("P6", (1, -2.2654))
FAST = OptConfig(coarse_grid=2001)


def test_sphere_point_examples():
    x, y = sphere_point(0.0, 1, 2)
    assert x == 0.0 and y == 1.0
    x, y = sphere_point(2**-0.5, -1, 2)
    assert y == pytest.approx(-(2**-0.5), abs=1e-15)
    assert sphere_point(0.3, 1, "inf") == (0.3, 1.0)
    with pytest.raises(ParameterDomainError):
        sphere_point(1.5, 1, 4)


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 6.0, 20.0, 120.0, 1000.0, 1200.0])
def test_sphere_residual(p):
    # rounding y to a double perturbs y**p by about p*u, hence the p-proportional term
    for t in np.linspace(-1, 1, 2001):
        x, y = sphere_point(float(t), 1, p)
        assert abs(abs(x) ** p + abs(y) ** p - 1.0) <= 1e-14 + 1e-16 * p


def test_parse_p():
    assert parse_p("inf") == math.inf
    assert parse_p("6") == 6.0
    for bad in ("0.5", "nan", -1):
        with pytest.raises(ParameterDomainError):
            parse_p(bad)


def test_config_validation():
    with pytest.raises(ValueError):
        OptConfig(coarse_grid=100)
    with pytest.raises(ValueError):
        OptConfig(search_mode="annealing")
    with pytest.raises(ValueError):
        OptConfig.from_mapping({"nope": "1"})
    assert OptConfig.from_mapping({"coarse_grid": "1001", "local_tol": "1e-10"}).coarse_grid == 1001


def test_sup_norm_examples():
    assert sup_norm(HomoPoly2(1, (1, 1)), 2).value == pytest.approx(math.sqrt(2), abs=1e-12)
    assert sup_norm(HomoPoly2(3, (1, 0, 0, 1)), 6).value == pytest.approx(math.sqrt(2), abs=1e-12)
    assert sup_norm(P6_LIT, 12).value == pytest.approx(0.265449175431079, abs=1e-6)
    # linear forms on the l_1 ball peak at a vertex
    assert sup_norm(HomoPoly2(1, (0.3, -0.7)), 1).value == pytest.approx(0.7, abs=1e-15)


def test_sup_norm_at_p_infinity_matches_edge_scan():
    # derived: the sup over the square of 0.5x^2 + xy - 0.5y^2 is 1 (at (1, 1) and (-1, 1))
    P = build_family("P2", (0.5,))
    r = sup_norm(P, "inf")
    assert r.value == pytest.approx(1.0, abs=1e-12)
    s = np.linspace(-1, 1, 200001)
    edges = [(s, np.ones_like(s)), (s, -np.ones_like(s)), (np.ones_like(s), s), (-np.ones_like(s), s)]
    brute = max(np.max(np.abs(evaluate(P, x, y))) for x, y in edges)
    assert brute == pytest.approx(r.value, abs=1e-12)


def test_zero_polynomial_rejected():
    with pytest.raises(ParameterDomainError):
        sup_norm(HomoPoly2(2, (0, 0, 0)), 4)


def test_convergence_error_carries_best_value():
    with pytest.raises(ConvergenceError) as info:
        sup_norm(P3_LIT, 6, OptConfig(max_refine_iters=3))
    assert info.value.best_value == pytest.approx(1.3367, abs=1e-3)


def test_result_invariants():
    r = sup_norm(P3_LIT, 6)
    x, y = r.argmax
    assert abs(abs(x) ** 6 + abs(y) ** 6 - 1.0) <= 1e-12
    assert abs(evaluate(P3_LIT, x, y)) == pytest.approx(r.value, rel=1e-15)
    assert 0 <= r.est_error < 1e-9
    assert r.grid_size == 20001 and r.refinement_iters > 0


def test_deterministic():
    a = sup_norm(P6_LIT, 12)
    b = sup_norm(P6_LIT, 12)
    assert a == b


def test_oracle_examples():
    assert sup_norm_oracle(P6_LIT, 12) <= 0.265449175431079 + 1e-9
    P5 = build_family("P5", (0.104245, 0.333366, 0.541712))
    oracle = sup_norm_oracle(P5, 10)
    assert oracle <= sup_norm(P5, 10).value
    assert oracle == pytest.approx(0.147219, abs=1e-5)
    assert sup_norm(P5, 10).value - oracle <= 1e-6


@pytest.mark.parametrize("fid", sorted(FAMILIES))
def test_ball_monotonicity_families(fid):
    spec = FAMILIES[fid]
    P = build_family(fid, [0.3 + 0.1 * i for i in range(spec.n_params)])
    m = spec.degree
    values = [sup_norm(P, p).value for p in (2 * m, 4 * m, math.inf)]
    assert values[0] <= values[1] * (1 + 1e-12) and values[1] <= values[2] * (1 + 1e-12)


def test_oracle_never_exceeds():
    for fid in sorted(FAMILIES):
        spec = FAMILIES[fid]
        P = build_family(fid, [0.5] * spec.n_params)
        p = 2 * spec.degree
        assert sup_norm(P, p).value >= sup_norm_oracle(P, p, n_samples=200_000) - 1e-12


@settings(max_examples=60, deadline=None)
@given(
    coeffs=st.lists(st.floats(-5, 5), min_size=3, max_size=9).filter(lambda c: max(map(abs, c)) > 1e-3),
    p1=st.floats(1, 30),
    p2=st.floats(1, 30),
)
def test_ball_monotonicity(coeffs, p1, p2):
    p1, p2 = sorted((p1, p2))
    P = HomoPoly2.from_coeffs(coeffs)
    assert sup_norm(P, p1, FAST).value <= sup_norm(P, p2, FAST).value * (1 + 1e-12)


@settings(max_examples=60, deadline=None)
@given(
    coeffs=st.lists(st.floats(-5, 5), min_size=3, max_size=9).filter(lambda c: max(map(abs, c)) > 1e-3),
    p=st.floats(1, 30),
    c=st.floats(-10, 10).filter(lambda v: abs(v) > 1e-3),
)
def test_absolute_homogeneity_and_reflection(coeffs, p, c):
    P = HomoPoly2.from_coeffs(coeffs)
    base = sup_norm(P, p, FAST).value
    assert sup_norm(P.scaled(c), p, FAST).value == pytest.approx(abs(c) * base, rel=1e-12)
    assert sup_norm(P.reflected(), p, FAST).value == pytest.approx(base, rel=1e-12)
    assert sup_norm(P.swapped(), p, FAST).value == pytest.approx(base, rel=1e-12)


def test_interior_points_bounded():
    rng = np.random.default_rng(2)
    for fid in ("P3", "P5", "P7", "P10"):
        spec = FAMILIES[fid]
        P = build_family(fid, rng.uniform(-1, 1, spec.n_params))
        p = float(rng.uniform(1, 25))
        top = sup_norm(P, p).value
        n = 10**5
        t = rng.uniform(-1, 1, n)
        r = rng.uniform(0, 1, n)
        sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)
        pts = np.array([sphere_point(float(ti), int(si), p) for ti, si in zip(t, sign)])
        vals = np.abs(evaluate(P, r * pts[:, 0], r * pts[:, 1]))
        assert vals.max() <= top + 1e-12


@pytest.mark.parametrize("k", [2, 3, 5])
def test_power_identity(k):
    for P, p in ((P3_LIT, 6.0), (P6_LIT, 12.0)):
        Q = polynomial_power(P, k)
        assert sup_norm(Q, p).value == pytest.approx(sup_norm(P, p).value ** k, rel=1e-9)
