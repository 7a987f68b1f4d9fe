import math

import numpy as np
import pytest

from qcap import (
    FieldVector,
    GuardError,
    catalog,
    coherent_bound,
    depolarizing,
    direct_sum,
    probability_array,
    product_prob,
    symplectic_form,
)
from qcap.gf import enumerate_vectors
from qcap.spectra import CosetBinner, bound_from_array, bound_sweep
from qcap.symplectic import hyperbolic_complete


def brute_force_array(code, channel):
    """Independent oracle: bin every error vector by direct pairings."""
    d, n, k = code.d, code.n, code.k
    nk = n - k
    g = code.completion.g
    h = code.completion.h
    table = np.zeros((d**nk, d ** (2 * k)))
    for x in enumerate_vectors(d, 2 * n):
        s_digits = []
        for i in range(nk):
            gv = FieldVector(d, tuple(int(c) for c in g[i]))
            s_digits.append(int(symplectic_form(gv, x)))
        col_digits = []
        for m in range(nk, n):
            hv = FieldVector(d, tuple(int(c) for c in h[m]))
            gv = FieldVector(d, tuple(int(c) for c in g[m]))
            w = int(symplectic_form(x, hv))
            z = int(symplectic_form(gv, x))
            col_digits += [w, z]
        row = sum(s * d**i for i, s in enumerate(s_digits))
        col = sum(c * d**i for i, c in enumerate(col_digits))
        table[row, col] += product_prob(channel, x)
    return table


def test_rep2_array_matches_hand_enumeration():
    code = catalog("rep2", 2)
    ch = depolarizing(2, 0.13)
    arr = probability_array(code, ch)
    oracle = brute_force_array(code, ch)
    assert arr.table.shape == (2, 4)
    assert np.abs(arr.table - oracle).max() < 1e-15


def test_rep2_ternary_array_matches_hand_enumeration():
    code = catalog("rep2", 3)
    ch = depolarizing(3, 0.21)
    arr = probability_array(code, ch)
    oracle = brute_force_array(code, ch)
    assert np.abs(arr.table - oracle).max() < 1e-15


def test_unencoded_array_is_channel_itself():
    # with no stabilizer the single row holds the letter distribution,
    # relabeled by the completion's coordinate change
    ch = depolarizing(2, 0.3)
    arr = probability_array(catalog("trivial1", 2), ch)
    assert arr.table.shape == (1, 4)
    assert sorted(arr.table[0]) == sorted(ch.flat())
    assert arr.entropy(2) == pytest.approx(ch.entropy(2), abs=1e-14)


def test_noiseless_array_is_point_mass():
    arr = probability_array(catalog("rep3", 2), depolarizing(2, 0.0))
    expect = np.zeros((4, 4))
    expect[0, 0] = 1.0
    assert (arr.table == expect).all()


def test_normalization():
    for name, d, p in (("rep3", 2, 0.1), ("rep2", 3, 0.3), ("five_qubit", 2, 0.05), ("trivial3", 2, 0.4)):
        arr = probability_array(catalog(name, d), depolarizing(d, p))
        assert abs(arr.total() - 1.0) < 1e-12


def test_syndrome_marginal_matches_direct_binning():
    code = catalog("rep3", 2)
    ch = depolarizing(2, 0.17)
    arr = probability_array(code, ch)
    direct = np.zeros(4)
    for x in enumerate_vectors(2, 6):
        s = code.completion.syndrome(x.as_array(), 2)
        direct[s[0] + 2 * s[1]] += product_prob(ch, x)
    assert np.abs(arr.syndrome_marginal() - direct).max() < 1e-14


def test_completion_invariance_of_conditional_entropy():
    for name, d, p in (("rep3", 2, 0.11), ("rep2", 3, 0.23)):
        base_code = catalog(name, d)
        ch = depolarizing(d, p)
        values = []
        for seed in range(10):
            completion = hyperbolic_complete(base_code.subspace, seed)
            code = type(base_code)(base_code.subspace, completion)
            values.append(probability_array(code, ch).conditional_entropy(d))
        assert max(values) - min(values) < 1e-12


def test_bound_report_identity_and_fields():
    code = catalog("rep3", 2)
    rep = coherent_bound(code, depolarizing(2, 0.08))
    assert rep.c_n == pytest.approx(code.k - rep.H_cond, abs=1e-12)
    assert rep.per_symbol == pytest.approx(rep.c_n / code.n, abs=1e-15)
    assert rep.H_cond >= 0
    assert rep.H_syndrome <= code.n - code.k + 1e-12


def test_hashing_formula_binary():
    for p in (0.0, 0.05, 0.189, 0.5, 1.0):
        rep = coherent_bound(catalog("trivial1", 2), depolarizing(2, p), base=2)
        h = 0.0 if p in (0.0, 1.0) else -p * math.log2(p) - (1 - p) * math.log2(1 - p)
        assert rep.c_n == pytest.approx(1 - h - p * math.log2(3), abs=1e-12)


def test_noiseless_bound_is_k():
    for name, d in (("rep3", 2), ("rep2", 3), ("trivial2", 3)):
        code = catalog(name, d)
        rep = coherent_bound(code, depolarizing(d, 0.0))
        assert rep.c_n == pytest.approx(code.k, abs=1e-12)


def test_base_conversion():
    code = catalog("rep2", 3)
    ch = depolarizing(3, 0.2)
    b3 = coherent_bound(code, ch, base=3)
    b2 = coherent_bound(code, ch, base=2)
    assert b2.c_n == pytest.approx(b3.c_n * math.log2(3), rel=1e-13)


def test_bound_sweep_order_and_monotone_scan():
    code = catalog("rep3", 2)
    ps = np.linspace(0.0, 0.75, 16)
    reports = bound_sweep(code, (depolarizing(2, p) for p in ps), base=2)
    assert len(reports) == 16
    vals = [r.c_n for r in reports]
    # numerical regression: nonincreasing on [0, (d^2-1)/d^2] for this family
    assert all(vals[i + 1] <= vals[i] + 1e-12 for i in range(15))


def test_direct_sum_array_is_product():
    a = catalog("rep2", 2)
    ch = depolarizing(2, 0.19)
    s = direct_sum(a, a)
    arr_a = probability_array(a, ch)
    arr_s = probability_array(s, ch)
    Ra, Ca = arr_a.rows, arr_a.cols
    for ra in range(Ra):
        for rb in range(Ra):
            for ca in range(Ca):
                for cb in range(Ca):
                    got = arr_s.table[ra + Ra * rb, ca + Ca * cb]
                    want = arr_a.table[ra, ca] * arr_a.table[rb, cb]
                    assert got == pytest.approx(want, abs=1e-14)


def test_threads_do_not_change_results():
    code = catalog("rep2", 3)
    ch = depolarizing(3, 0.31)
    binner = CosetBinner(code)
    one = binner.array(ch, threads=1).table
    two = binner.array(ch, threads=2).table
    assert (one == two).all()


def test_enumeration_guard():
    code = catalog("trivial2", 2)
    with pytest.raises(GuardError):
        probability_array(code, depolarizing(2, 0.1), max_cells=4)


def test_bound_from_array_base_default_is_d():
    arr = probability_array(catalog("rep2", 3), depolarizing(3, 0.2))
    rep = bound_from_array(arr)
    assert rep.base == 3.0
