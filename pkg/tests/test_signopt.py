import itertools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smallgon import signopt
from smallgon.errors import CapacityError, ParameterError
from smallgon.signopt import SignVector


def brute_force(n):
    """itertools enumeration with math.fsum; shares nothing with the engines."""
    w = [math.sin((2 * k + 1) * math.pi / n) for k in range(n // 4)]
    vals = {}
    for tail in itertools.product((1, -1), repeat=n // 4 - 1):
        b = (1,) + tail
        vals[b] = abs(math.fsum(bk * wk for bk, wk in zip(b, w)))
    return vals


def test_objective_examples():
    assert signopt.objective(4, [1]) == pytest.approx(0.707106781186548, abs=1e-15)
    assert signopt.objective(8, [-1, 1]) == pytest.approx(2 * math.sin(math.pi / 4) * math.sin(math.pi / 8), abs=1e-15)
    assert signopt.objective(8, [-1, 1]) == pytest.approx(0.541196100146197, abs=1e-15)
    direct = math.fsum(math.sin((2 * k + 1) * math.pi / 16) for k in range(4))
    assert direct == pytest.approx(2.562915447741505, abs=1e-15)
    assert signopt.objective(16, [1, 1, 1, 1]) == pytest.approx(direct, abs=1e-15)


def test_objective_length_mismatch():
    with pytest.raises(ParameterError):
        signopt.objective(16, [1, 1])


def test_sign_vector_validation():
    with pytest.raises(ParameterError):
        SignVector(16, (1, 0, 1, 1))
    with pytest.raises(ParameterError):
        SignVector(12, (1, 1, 1))
    v = SignVector(16, (-1, 1, 1, -1))
    assert not v.is_canonical and v.canonical().b == (1, -1, -1, 1)


@pytest.mark.parametrize("n", [16, 32, 64])
def test_global_sign_invariance(n):
    rng = np.random.default_rng(n)
    for _ in range(20):
        b = tuple(int(x) for x in rng.choice([1, -1], size=n // 4))
        assert signopt.objective(n, b) == signopt.objective(n, tuple(-x for x in b))


def test_exhaustive_n16_enumerates_all_eight():
    vals = brute_force(16)
    assert len(vals) == 8
    best = min(vals.values())
    res = signopt.search_exhaustive(16)
    assert res.optimal and res.engine == "exhaustive"
    assert res.m_value == pytest.approx(best, abs=1e-15)
    assert vals[res.best.b] == pytest.approx(best, abs=1e-15)


def test_exhaustive_small_cases():
    r8 = signopt.search_exhaustive(8)
    assert r8.best.b == (1, -1)
    assert r8.m_value == pytest.approx(2 * math.sin(math.pi / 4) * math.sin(math.pi / 8), abs=1e-15)
    r4 = signopt.search_exhaustive(4)
    assert r4.best.b == (1,) and r4.m_value == pytest.approx(math.sin(math.pi / 4), abs=1e-15)


@pytest.mark.parametrize("n", [16, 32, 64])
def test_engines_match_brute_force(n):
    vals = brute_force(n)
    best = min(vals.values())
    ex, mm = signopt.search_exhaustive(n), signopt.search_mitm(n)
    assert ex.m_value == mm.m_value
    assert ex.best == mm.best
    assert abs(ex.m_value - best) <= 1e-15
    assert ex.best.is_canonical


def test_result_invariants():
    for n in (16, 32, 64, 128):
        r = signopt.search(n)
        assert r.m_value == signopt.objective(n, r.best)
        assert r.sigma == pytest.approx(2 * math.sin(math.pi / n) * r.m_value, abs=1e-15)
        assert r.m_value >= 0


def test_capacity_and_parameter_errors():
    with pytest.raises(CapacityError):
        signopt.search_exhaustive(256)
    with pytest.raises(ParameterError):
        signopt.search_exhaustive(24)
    with pytest.raises(CapacityError):
        signopt.search_mitm(128, budget_mb=0.01)
    with pytest.raises(CapacityError):
        signopt.search_mitm(512)
    with pytest.raises(ParameterError):
        signopt.search(16, engine="nope")


def test_auto_engine_selection():
    assert signopt.search(64).engine == "exhaustive"
    assert signopt.search(128).engine == "meet_in_middle"
    big = signopt.search(1024)
    assert big.engine == "block_pattern" and not big.optimal


def test_mitm_budget_env(monkeypatch):
    monkeypatch.setenv("SMALLGON_MITM_BUDGET_MB", "0.01")
    with pytest.raises(CapacityError):
        signopt.search_mitm(128)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=1, max_size=12))
def test_engines_agree_on_arbitrary_weights(weights):
    ex_signs, ex_val = signopt.closest_to_zero_exhaustive(weights)
    mm_signs, mm_val = signopt.closest_to_zero_mitm(weights)
    assert ex_signs == mm_signs and ex_val == mm_val
    oracle = min(
        abs(math.fsum(s * w for s, w in zip((1,) + t, weights)))
        for t in itertools.product((1, -1), repeat=len(weights) - 1)
    )
    assert ex_val <= oracle + 1e-12


def test_tie_break_prefers_plus_first():
    # all four canonical vectors of (1, 1, 1) with one -1 tie at 1.0
    signs, val = signopt.closest_to_zero_exhaustive([1.0, 1.0, 1.0])
    assert val == 1.0 and signs == (1, 1, -1)
    assert signopt.closest_to_zero_mitm([1.0, 1.0, 1.0]) == (signs, val)


def test_block_pattern_examples():
    v = signopt.derive_block_pattern(4, SignVector(4, (1,)))
    assert v.n == 16 and v.b == (-1, 1, 1, -1)
    bound = math.sin(math.pi / 4) * 4 * math.sin(math.pi / 16) * math.sin(math.pi / 8)
    assert signopt.objective(16, v) <= bound + 1e-15
    assert v.canonical() == signopt.derive_block_pattern(4, (1,)).canonical()

    w = signopt.derive_block_pattern(8, (-1, 1))
    assert w.n == 32 and len(w.b) == 8
    rhs = signopt.objective(8, (-1, 1)) * 4 * math.sin(math.pi / 32) * math.sin(math.pi / 16)
    assert signopt.objective(32, w) <= rhs + 1e-15


@pytest.mark.parametrize("n", [4, 8, 16, 32])
def test_block_recursion_inequality(n):
    base = signopt.search(n)
    lifted = signopt.objective(4 * n, signopt.derive_block_pattern(n, base.best))
    assert lifted <= base.m_value * 4 * math.sin(math.pi / (4 * n)) * math.sin(math.pi / (2 * n)) + 1e-15


def test_block_recursion_vector_matches_exact_at_16_and_32():
    assert signopt.block_recursion_vector(16).canonical() == signopt.search_exhaustive(16).best
    assert signopt.block_recursion_vector(32).canonical() == signopt.search_exhaustive(32).best


def test_m_upper_bound_examples():
    assert signopt.m_upper_bound(2) == pytest.approx(math.sin(math.pi / 4), abs=1e-15)
    assert signopt.m_upper_bound(3) == pytest.approx(signopt.search_exhaustive(8).m_value, abs=1e-15)
    # tight at s = 5: equality up to rounding
    assert signopt.m_upper_bound(5) >= signopt.search_mitm(32).m_value - 1e-15
    for s in range(3, 12):
        assert signopt.m_upper_bound(s) <= signopt.m_upper_bound_closed(s) + 1e-15
    with pytest.raises(ParameterError):
        signopt.m_upper_bound(1)


@pytest.mark.parametrize("n", [16, 32, 64, 128])
def test_bound_chain(n):
    s = int(math.log2(n))
    assert signopt.search(n).m_value <= signopt.m_upper_bound(s) + 1e-15


@pytest.mark.parametrize("n", [16, 32, 64, 128, 256])
def test_cosine_denominator_identity(n):
    total = math.fsum(math.cos((2 * k + 1) * math.pi / n) for k in range(n // 4))
    assert total == pytest.approx(1 / (2 * math.sin(math.pi / n)), abs=1e-13)


def mp_delta(n, sigma):
    """50-digit root of sigma (cos x - cos(pi/n)) = sin x, bracketed in [0, pi/n]."""
    with mpmath.workdps(50):
        s = mpmath.mpf(sigma)
        h = mpmath.pi / n
        f = lambda x: s * (mpmath.cos(x) - mpmath.cos(h)) - mpmath.sin(x)
        return float(mpmath.findroot(f, (mpmath.mpf(0), h), solver="anderson"))


def test_solve_delta_zero_sigma():
    sol = signopt.solve_delta(64, 0.0)
    assert sol.delta == 0.0 and sol.residual == 0.0


def test_solve_delta_n16():
    r = signopt.search_exhaustive(16)
    sol = signopt.solve_delta(16, r.sigma)
    assert sol.residual <= 1e-14
    assert sol.delta <= (1 - math.cos(math.pi / 16)) * r.sigma
    assert sol.delta == pytest.approx(mp_delta(16, r.sigma), rel=1e-13)


@pytest.mark.parametrize("sigma", [1e-12, 1e-9, 1e-6, 1e-3, 0.1, 1.0, 10.0])
@pytest.mark.parametrize("n", [16, 128])
def test_solve_delta_against_mpmath(n, sigma):
    sol = signopt.solve_delta(n, sigma)
    assert 0 <= sol.delta < math.pi / n
    assert sol.residual <= 1e-14
    assert sol.delta == pytest.approx(mp_delta(n, sigma), rel=1e-12, abs=1e-300)


def test_solve_delta_n32_table_value():
    sol = signopt.solve_delta(32, signopt.search_mitm(32).sigma)
    assert 64 * math.sin(math.pi / 64) * math.cos(sol.delta / 2) == pytest.approx(3.140331156355381, abs=1e-12)


@pytest.mark.parametrize("n", [16, 64, 256])
def test_delta_monotone_in_sigma(n):
    deltas = [signopt.solve_delta(n, s).delta for s in np.linspace(0, 1, 100)]
    assert all(a <= b for a, b in zip(deltas, deltas[1:]))


def test_solve_delta_rejects_bad_input():
    with pytest.raises(ParameterError):
        signopt.solve_delta(16, -1.0)
    with pytest.raises(ParameterError):
        signopt.solve_delta(2, 0.1)


@pytest.mark.parametrize("m", [17, 20])
def test_chunked_exhaustive_matches_mitm(m):
    # more than 16 terms exercises the high-bit loop of the exhaustive scan
    w = list(np.random.default_rng(m).uniform(0.1, 1.0, size=m))
    assert signopt.closest_to_zero_exhaustive(w) == signopt.closest_to_zero_mitm(w)
