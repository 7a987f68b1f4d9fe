import numpy as np
import pytest

from qcap import GuardError, ValidationError, catalog, depolarizing
from qcap.gf import index_to_digits
from qcap.simconcat import (
    SimConfig,
    _OuterContext,
    _decode_ctx,
    decode_min_conditional_entropy,
    fidelity_bound_brute,
    fidelity_bound_exact,
    sample_error,
    sample_self_orthogonal_outer,
    simulate,
)
from qcap.spectra import probability_array


TRIV = catalog("trivial1", 2)
REP3 = catalog("rep3", 2)


def test_sample_error_noiseless_is_zero():
    arr = probability_array(REP3, depolarizing(2, 0.0))
    z, v = sample_error(arr, 10, np.random.default_rng(0))
    assert not z.any() and not v.any()


def test_sample_error_total_variation():
    arr = probability_array(REP3, depolarizing(2, 0.1))
    rng = np.random.default_rng(123)
    z, v = sample_error(arr, 100_000, rng)
    counts = np.zeros((arr.rows, arr.cols))
    np.add.at(counts, (z, v), 1.0)
    counts /= counts.sum()
    tv = 0.5 * np.abs(counts - arr.table).sum()
    assert tv < 0.02


def test_sample_error_syndrome_marginal():
    arr = probability_array(REP3, depolarizing(2, 0.15))
    z, _ = sample_error(arr, 60_000, np.random.default_rng(5))
    emp = np.bincount(z, minlength=arr.rows) / 60_000
    assert np.abs(emp - arr.syndrome_marginal()).max() < 0.01


def test_decoder_zero_syndrome_zero_error():
    outer = sample_self_orthogonal_outer(2, 1, 6, 1, 3)
    z = np.zeros(6, dtype=np.int64)
    sigma = np.zeros(outer.dim, dtype=np.int64)
    v_hat = decode_min_conditional_entropy(TRIV, outer, z, sigma)
    assert not v_hat.any()


def test_decoder_output_satisfies_syndrome():
    rng = np.random.default_rng(8)
    arr = probability_array(REP3, depolarizing(2, 0.12))
    outer = sample_self_orthogonal_outer(2, 1, 6, 2, 9)
    ctx = _OuterContext(outer, 2, 1, 6)
    col_digits = index_to_digits(np.arange(arr.cols), 2, 2)
    for _ in range(200):
        z, v = sample_error(arr, 6, rng)
        sigma = ctx.syndrome(col_digits[v].ravel())
        v_hat = _decode_ctx(REP3, ctx, z, sigma)
        assert (ctx.syndrome(col_digits[v_hat].ravel()) == sigma).all()


def test_decoder_success_indicator_cross_validated():
    # recompute the success flag through exhaustive membership in C_out
    rng = np.random.default_rng(31)
    inner = TRIV
    N, K = 6, 1
    arr = probability_array(inner, depolarizing(2, 0.1))
    outer = sample_self_orthogonal_outer(2, 1, N, K, 77)
    ctx = _OuterContext(outer, 2, 1, N)
    col_digits = index_to_digits(np.arange(arr.cols), 2, 2)
    members = {tuple((c @ outer.basis) % 2)
               for c in index_to_digits(np.arange(2**outer.dim), 2, outer.dim)}
    agree = 0
    for _ in range(1000):
        z, v = sample_error(arr, N, rng)
        vd = col_digits[v].ravel()
        sigma = ctx.syndrome(vd)
        v_hat = _decode_ctx(inner, ctx, z, sigma)
        diff = (col_digits[v_hat].ravel() - vd) % 2
        assert ctx.contains(diff) == (tuple(diff) in members)
        agree += 1
    assert agree == 1000


def test_syndrome_invariant_under_code_shifts():
    outer = sample_self_orthogonal_outer(2, 1, 8, 2, 13)
    ctx = _OuterContext(outer, 2, 1, 8)
    rng = np.random.default_rng(2)
    for _ in range(100):
        v = rng.integers(0, 2, 16)
        c = (rng.integers(0, 2, outer.dim) @ outer.basis) % 2
        assert (ctx.syndrome(v) == ctx.syndrome((v + c) % 2)).all()
        # failure indicator of a shifted truth is unchanged
        diff = rng.integers(0, 2, 16)
        assert ctx.contains(diff) == ctx.contains((diff + c) % 2)


def test_simulate_noiseless_never_fails():
    cfg = SimConfig(inner=REP3, outer=None, N=4, K=1, channel=depolarizing(2, 0.0),
                    trials=50, seed=0, resample_outer=True)
    rep = simulate(cfg)
    assert rep.failures == 0
    assert rep.wilson_low == 0.0


def test_simulate_bit_for_bit_deterministic():
    cfg = SimConfig(inner=TRIV, outer=None, N=6, K=1, channel=depolarizing(2, 0.1),
                    trials=300, seed=21, resample_outer=True)
    assert simulate(cfg) == simulate(cfg)
    fixed = SimConfig(inner=TRIV, outer=None, N=6, K=1, channel=depolarizing(2, 0.1),
                      trials=300, seed=21)
    assert simulate(fixed) == simulate(fixed)


def test_simulate_trace():
    cfg = SimConfig(inner=TRIV, outer=None, N=4, K=1, channel=depolarizing(2, 0.1),
                    trials=5, seed=2, record_trace=True)
    rep = simulate(cfg)
    assert rep.trace is not None and len(rep.trace) == 5
    assert {"trial", "failure", "z", "v", "v_hat"} <= set(rep.trace[0])


def test_simconfig_validation():
    with pytest.raises(ValidationError):
        SimConfig(inner=TRIV, outer=None, N=4, K=5, channel=depolarizing(2, 0.1),
                  trials=10, seed=0)
    with pytest.raises(ValidationError):
        SimConfig(inner=TRIV, outer=None, N=0, K=0, channel=depolarizing(2, 0.1),
                  trials=10, seed=0)
    with pytest.raises(ValidationError):
        SimConfig(inner=TRIV, outer=sample_self_orthogonal_outer(2, 1, 5, 1, 0),
                  N=6, K=1, channel=depolarizing(2, 0.1), trials=10, seed=0)
    with pytest.raises(ValidationError):
        SimConfig(inner=catalog("trivial1", 3), outer=None, N=4, K=1,
                  channel=depolarizing(2, 0.1), trials=10, seed=0)


def test_search_guard():
    cfg = SimConfig(inner=TRIV, outer=None, N=30, K=5, channel=depolarizing(2, 0.1),
                    trials=1, seed=0, resample_outer=True)
    with pytest.raises(GuardError):
        simulate(cfg)


def test_fidelity_bound_noiseless_value():
    # only constant candidate sequences tie at zero conditional entropy
    for N, K in ((6, 1), (5, 2)):
        b = fidelity_bound_exact(TRIV, N, K, depolarizing(2, 0.0))
        assert b == pytest.approx(min(4 * 2.0 ** (K - N), 1.0), abs=1e-15)


def test_fidelity_bound_range_and_monotonicity_in_gap():
    ch = depolarizing(2, 0.1)
    prev = None
    for K in (5, 4, 3, 2, 1, 0):  # widening kN - K never increases the bound
        b = fidelity_bound_exact(TRIV, 6, K, ch)
        assert 0.0 <= b <= 1.0
        if prev is not None:
            assert b <= prev + 1e-15
        prev = b


def test_fidelity_bound_matches_brute_force_trivial_inner():
    for p in (0.05, 0.1, 0.25):
        ch = depolarizing(2, p)
        assert fidelity_bound_exact(TRIV, 6, 1, ch) == pytest.approx(
            fidelity_bound_brute(TRIV, 6, 1, ch), abs=1e-12)


def test_fidelity_bound_matches_brute_force_rep3_inner():
    ch = depolarizing(2, 0.15)
    assert fidelity_bound_exact(REP3, 3, 1, ch) == pytest.approx(
        fidelity_bound_brute(REP3, 3, 1, ch), abs=1e-12)


def test_fidelity_bound_guard():
    with pytest.raises(GuardError):
        fidelity_bound_exact(REP3, 10, 2, depolarizing(2, 0.1), max_types=1000)


def test_empirical_failure_below_bound():
    p = 0.08
    cfg = SimConfig(inner=TRIV, outer=None, N=6, K=1, channel=depolarizing(2, p),
                    trials=4000, seed=5, resample_outer=True)
    rep = simulate(cfg)
    bound = fidelity_bound_exact(TRIV, 6, 1, depolarizing(2, p))
    sigma = np.sqrt(bound * (1 - bound) / cfg.trials)
    assert rep.failure_rate <= bound + 3 * sigma


def test_unencoded_inner_scores_ignore_syndromes():
    # with n = k the syndrome alphabet is a single symbol, so conditional
    # and plain type entropy agree; the decoder is plain minimum-entropy
    arr = probability_array(TRIV, depolarizing(2, 0.1))
    assert arr.rows == 1
    outer = sample_self_orthogonal_outer(2, 1, 5, 1, 1)
    ctx = _OuterContext(outer, 2, 1, 5)
    z = np.zeros(5, dtype=np.int64)
    rng = np.random.default_rng(0)
    for _ in range(50):
        sigma = rng.integers(0, 2, outer.dim)
        v_hat = _decode_ctx(TRIV, ctx, z, sigma)
        assert (ctx.syndrome(index_to_digits(v_hat, 2, 2).ravel()) == sigma).all()
