import numpy as np
import pytest

from qcap import (
    FieldVector,
    StabilizerCode,
    ValidationError,
    bar_map,
    catalog,
    concatenate,
    direct_sum,
    is_self_orthogonal,
    read_code_file,
    sample_self_orthogonal,
    symplectic_form,
    write_code_file,
)
from qcap.codes import gram_conditions_exact, vector_from_digit_string, vector_to_digit_string


def test_catalog_rep7_matches_digit_strings():
    code = catalog("rep(7)", 3)
    assert (code.n, code.k) == (7, 1)
    assert code.generators.shape == (6, 14)
    first = FieldVector(3, tuple(int(c) for c in code.generators[0]))
    assert vector_to_digit_string(first) == "1100000"
    strings = ["1100000", "1010000", "1001000", "1000100", "1000010", "1000001"]
    for row, s in zip(code.generators, strings):
        assert (row == vector_from_digit_string(3, s).as_array()).all()


def test_catalog_trivial():
    code = catalog("trivial(1)", 2)
    assert (code.n, code.k) == (1, 1)
    assert code.subspace.dim == 0


def test_catalog_rep3_self_orthogonal():
    code = catalog("rep3", 2)
    assert code.subspace.dim == 2
    assert is_self_orthogonal(code.subspace)
    assert gram_conditions_exact(code)


def test_catalog_five_qubit_and_unknown():
    code = catalog("five_qubit", 2)
    assert (code.n, code.k) == (5, 1)
    assert is_self_orthogonal(code.subspace)
    with pytest.raises(ValidationError):
        catalog("five_qubit", 3)
    with pytest.raises(ValidationError):
        catalog("hexacode", 2)


def test_catalog_completion_deterministic():
    a = catalog("rep4", 2)
    b = catalog("rep4", 2)
    assert (a.completion.g == b.completion.g).all()
    assert (a.completion.h == b.completion.h).all()


def test_digit_string_round_trip():
    v = vector_from_digit_string(3, "102")
    assert v.coords == (1, 0, 0, 0, 2, 0)
    assert vector_to_digit_string(v) == "102"
    with pytest.raises(ValidationError):
        vector_from_digit_string(2, "5")


def test_code_file_round_trip(tmp_path):
    code = catalog("rep3", 2)
    path = tmp_path / "rep3.code"
    write_code_file(code, path)
    back = read_code_file(path)
    assert back.subspace == code.subspace
    assert (back.d, back.n, back.k) == (2, 3, 1)


def test_code_file_digit_string_form(tmp_path):
    path = tmp_path / "rep7.code"
    path.write_text("3 7 1\n1100000\n1010000\n1001000\n1000100\n1000010\n1000001\n")
    code = read_code_file(path)
    assert code.subspace == catalog("rep7", 3).subspace


def test_code_file_header_errors(tmp_path):
    path = tmp_path / "bad.code"
    path.write_text("2 3\n")
    with pytest.raises(ValidationError):
        read_code_file(path)
    path.write_text("2 3 1\n1 0 1 0 0 0\n")  # one generator missing
    with pytest.raises(ValidationError):
        read_code_file(path)


def test_bar_map_zero_and_embedding():
    inner = catalog("rep3", 2)
    zero = FieldVector(2, (0,) * 4)
    assert bar_map(inner, zero).is_zero()
    # first logical g of block 1, embedded in F_2^12 (two blocks)
    e1 = FieldVector(2, (1, 0, 0, 0))
    image = bar_map(inner, e1).as_array()
    g_log = inner.logical_pairs()[0][0]
    assert (image[:6] == g_log).all()
    assert not image[6:].any()


def test_bar_map_is_symplectic_isometry():
    rng = np.random.default_rng(17)
    inner = catalog("rep3", 2)
    for _ in range(2000):
        N = int(rng.integers(1, 4))
        x = FieldVector(2, tuple(rng.integers(0, 2, 2 * N)))
        y = FieldVector(2, tuple(rng.integers(0, 2, 2 * N)))
        assert int(symplectic_form(bar_map(inner, x), bar_map(inner, y))) == int(symplectic_form(x, y))


def test_bar_map_injective_exhaustive():
    inner = catalog("rep2", 3)
    seen = set()
    for idx in range(3**4):
        coords = tuple((idx // 3**j) % 3 for j in range(4))
        seen.add(bar_map(inner, FieldVector(3, coords)).coords)
    assert len(seen) == 3**4


def test_concatenate_trivial_inner_relabels():
    inner = catalog("trivial2", 2)  # n = k = 2
    outer = StabilizerCode(sample_self_orthogonal(2, 8, 2, 4))  # N = 2, K = 2
    cc = concatenate(inner, outer)
    assert cc.N == 2 and cc.K == 2
    assert cc.result.n == 4 and cc.result.k == 2
    assert is_self_orthogonal(cc.result.subspace)


def test_concatenate_rep5_rep5():
    inner = catalog("rep5", 2)
    outer = catalog("rep5", 2)  # ambient 10 = 2 * k * N with k=1, N=5
    cc = concatenate(inner, outer)
    assert cc.result.n == 25 and cc.result.subspace.dim == 24 and cc.result.k == 1
    assert is_self_orthogonal(cc.result.subspace)
    assert gram_conditions_exact(cc.result)


def test_concatenate_rep3_random_outer():
    inner = catalog("rep3", 2)
    outer = StabilizerCode(sample_self_orthogonal(2, 8, 2, 11))  # N=4, K=2
    cc = concatenate(inner, outer)
    assert cc.result.n == 12 and cc.result.subspace.dim == 10
    assert is_self_orthogonal(cc.result.subspace)


def test_concatenate_dimension_mismatch():
    inner = catalog("rep3", 2)
    outer = StabilizerCode(sample_self_orthogonal(2, 6, 1, 0))  # ambient 6 is not 2kN... N=3 works
    # ambient 6 = 2*1*3 so this is fine; force a failure with modulus mismatch
    concatenate(inner, outer)
    with pytest.raises(ValidationError):
        concatenate(inner, catalog("rep2", 3))


def test_direct_sum_of_trivials_is_trivial():
    s = direct_sum(catalog("trivial1", 2), catalog("trivial1", 2))
    assert s.subspace == catalog("trivial2", 2).subspace
    assert (s.n, s.k) == (2, 2)


def test_direct_sum_dims_add():
    s = direct_sum(catalog("rep3", 2), catalog("rep3", 2))
    assert (s.n, s.k) == (6, 2)
    assert is_self_orthogonal(s.subspace)
    assert gram_conditions_exact(s)
    with pytest.raises(ValidationError):
        direct_sum(catalog("rep2", 2), catalog("rep2", 3))


def test_completion_prefix_is_code_basis():
    for name, d in (("rep3", 2), ("rep2", 3), ("five_qubit", 2)):
        code = catalog(name, d)
        nk = code.n - code.k
        assert (code.completion.g[:nk] == code.generators).all()
