from itertools import combinations
from math import comb

import pytest

from forbconf.constructions import (
    A_k,
    MIN5_TAGS,
    MIN6_TAGS,
    NAMED,
    ConstructionSpec,
    block_sizes,
    boundary_family,
    boundary_min_k,
    code_lower_bound,
    f,
    f_closed,
    gs_code,
    identity_times_ones,
    low_weight_columns,
    low_weight_plus_code,
    named,
    product_power_identity,
    thmF1_extremal,
    triangular_pair,
)
from forbconf.containment import (
    balanced_pairs,
    contains_configuration,
    covers_all_pairs_certificate,
    is_configuration,
    missing_complementary_pairs,
)
from forbconf.matrix import BinaryMatrix, complement, complete, popcount, restrict_rows, transitions
from oracles import columns_by_transitions

# frozen from a brute-force count of m-bit columns with <= k-2 transitions
F_VALUES = {(4, 4): 14, (10, 4): 92, (6, 4): 32, (8, 5): 128, (10, 5): 260, (12, 6): 1124}


@pytest.mark.parametrize("mk,value", F_VALUES.items())
def test_f_frozen_values(mk, value):
    assert f(*mk) == value
    assert set(f_closed(*mk)) == {value}


@pytest.mark.parametrize("mk", F_VALUES)
def test_frozen_values_match_brute_force(mk):
    m, k = mk
    assert len(columns_by_transitions(m, k - 2)) == F_VALUES[mk]


def test_f_base_and_linear_cases():
    for m in range(2, 40):
        assert f(m, 2) == 2
        assert f(m, 3) == 2 * m
    assert f_closed(7, 2) == (2, 2, 2)


def test_f_large_m_no_recursion_error():
    assert f(400, 8) == f_closed(400, 8)[0]


def test_f_domain():
    with pytest.raises(ValueError):
        f(1, 3)
    with pytest.raises(ValueError):
        f(5, 1)


def test_f_small_m_is_everything():
    # fewer rows than k: every column avoids a k-rowed F
    for k in range(3, 8):
        for m in range(2, k):
            assert f(m, k) == 2**m


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_A_k_equals_filtered_universe(k):
    for m in range(2, 12):
        a = A_k(m, k)
        assert a.is_simple()
        assert sorted(a.columns) == columns_by_transitions(m, k - 2)
        assert a.num_cols == f(m, k)
        assert a.same_columns(complement(a))
        assert all(transitions(c, m) <= k - 2 for c in a.columns)


def test_A_k_examples():
    assert sorted(A_k(6, 2).columns) == [0, 63]
    assert A_k(9, 3).num_cols == 18
    assert A_k(8, 5).num_cols == 128


@pytest.mark.parametrize("k", [3, 4, 5])
def test_A_k_misses_one_pair_per_k_set(k):
    full = (1 << k) - 1
    balanced = {c for p in balanced_pairs(k) for c in p}
    for m in range(k, 9):
        a = A_k(m, k)
        for rows in combinations(range(m), k):
            missing = set(range(1 << k)) - set(restrict_rows(a, rows).columns)
            assert len(missing) == 2
            x, y = missing
            assert x ^ y == full and missing <= balanced


def test_boundary_shapes():
    expected = {
        (1, 3): (3, 4), (1, 4): (4, 8), (2, 4): (4, 6), (2, 5): (5, 12), (3, 4): (4, 8),
        (3, 5): (5, 16), (4, 5): (5, 15), (5, 5): (5, 15), (6, 6): (6, 27), (3, 8): (8, 128),
    }
    for (i, k), shape in expected.items():
        assert boundary_family(i, k).shape == shape


def test_boundary_literal_blocks():
    assert boundary_family(1, 3).rows() == [[1, 1, 1, 0], [1, 0, 0, 1], [0, 1, 0, 0]]
    assert boundary_family(1, 3) == named("F_1")
    assert boundary_family(3, 4).rows() == [
        [0, 0, 0, 0, 1, 0, 0, 1],
        [0, 0, 0, 1, 0, 1, 1, 0],
        [0, 1, 1, 0, 0, 1, 1, 1],
        [1, 0, 1, 1, 1, 0, 1, 1],
    ]
    assert [sum(r) for r in boundary_family(5, 5).rows()] == [9, 12, 6, 5, 5]


@pytest.mark.parametrize("i", range(1, 7))
def test_boundary_simple_and_contain_probe(i):
    k0 = boundary_min_k(i)
    for k in range(k0, 9):
        assert boundary_family(i, k).is_simple()
    for k in (k0, k0 + 1):
        assert is_configuration(identity_times_ones(k), boundary_family(i, k))
    with pytest.raises(ValueError):
        boundary_family(i, k0 - 1)


def test_named_shapes_and_weights():
    assert named("F_3").rows() == [[1, 1], [1, 0], [0, 1]]
    assert named("F_5_4row").column_weights() == [2, 2, 2]
    assert named("F_6_4row").column_weights() == [2, 2, 2]
    for tag in MIN5_TAGS:
        assert named(tag).shape == (5, 10) and named(tag).is_simple()
        assert sorted(set(named(tag).column_weights())) == [2, 3]
    for tag in MIN6_TAGS:
        assert named(tag).shape == (6, 10) and named(tag).is_simple()
        assert set(named(tag).column_weights()) == {3}
    with pytest.raises(ValueError):
        named("F_99")


def test_small_matrix_chains():
    F3, F4, F5 = named("F_3"), named("F_4"), named("F_5_3row")
    F13 = boundary_family(1, 3)
    assert is_configuration(F3, F4) and is_configuration(F4, F13)
    assert is_configuration(complement(F3), F5) and is_configuration(F5, F13)
    for small in ("F_5_4row", "F_6_4row"):
        for big in (boundary_family(1, 4), boundary_family(3, 4)):
            assert is_configuration(named(small), big)


def test_min6_b_repair_is_unique():
    printed = named("min6_b_as_printed")
    host = boundary_family(3, 6)
    assert len(missing_complementary_pairs(printed).missing) == 1
    repairs = []
    for j in range(printed.num_cols):
        for r in range(printed.num_rows):
            cols = list(printed.columns)
            cols[j] ^= 1 << r
            cand = BinaryMatrix(6, tuple(cols))
            if cand.is_simple() and covers_all_pairs_certificate(cand) and is_configuration(cand, host):
                repairs.append((r, j))
    assert repairs == [(1, 9)]
    assert named("min6_b").columns[9] == printed.columns[9] | 0b10


def test_block_sizes():
    assert block_sizes(7, 2) == [4, 3]
    assert block_sizes(6, 2) == [3, 3]
    assert block_sizes(5, 3) == [2, 2, 1]


def test_product_power_identity():
    assert product_power_identity(6, 4).num_cols == 9
    assert product_power_identity(7, 3).same_columns(BinaryMatrix(7, tuple(1 << i for i in range(7))))
    a = product_power_identity(7, 4)
    assert a.num_cols == 12 and a.is_simple()
    assert set(a.column_weights()) == {2}
    for i in (1, 2, 3):
        k0 = boundary_min_k(i)
        assert contains_configuration(product_power_identity(7, k0), boundary_family(i, k0)) is None
    with pytest.raises(ValueError):
        product_power_identity(1, 4)


def test_triangular_pair():
    assert sorted(triangular_pair(2).columns) == [0, 1, 2, 3]
    assert triangular_pair(5).num_cols == 10 and triangular_pair(5).is_simple()
    assert contains_configuration(triangular_pair(5), boundary_family(1, 3)) is None
    assert triangular_pair(6).same_columns(A_k(6, 3))


def test_thmF1_extremal():
    for m in range(2, 9):
        a = thmF1_extremal(m)
        assert a.num_cols == 2 * m and a.is_simple()
        assert contains_configuration(a, named("F_3")) is None
    assert thmF1_extremal(3).num_cols == 6


def test_gs_code_examples():
    c = gs_code(7, 3)
    assert c.num_cols >= comb(7, 3) / 7
    assert gs_code(5, 5).columns == (31,)
    for m, w in [(7, 3), (8, 3), (9, 4), (10, 3), (12, 4), (11, 5)]:
        code = gs_code(m, w)
        assert set(code.column_weights()) == {w}
        assert code.num_cols >= comb(m, w) / m
        assert all(popcount(x ^ y) >= 4 for x, y in combinations(code.columns, 2))


def test_gs_code_picks_largest_class_smallest_residue():
    m, w = 8, 3
    sizes = [0] * m
    for idx in combinations(range(1, m + 1), w):
        sizes[sum(idx) % m] += 1
    best = max(sizes)
    residue = sizes.index(best)
    code = gs_code(m, w)
    assert code.num_cols == best
    assert all(sum(i + 1 for i in range(m) if c >> i & 1) % m == residue for c in code.columns)


def test_low_weight_plus_code():
    a = low_weight_plus_code(8, 4)
    assert a.is_simple()
    assert contains_configuration(a, identity_times_ones(4)) is None
    assert a.num_cols >= 44 == code_lower_bound(8, 4)
    assert low_weight_columns(8, 2).num_cols == 1 + 8 + 28


def test_construction_spec():
    assert ConstructionSpec.parse("A_k:m=6,k=4").build().shape == (6, 32)
    assert ConstructionSpec.parse("named:tag=F_3").build().shape == (3, 2)
    assert ConstructionSpec.parse("boundary:i=3,k=4").build().shape == (4, 8)
    assert ConstructionSpec.parse("standard:kind=K,k=3").build() == complete(3)
    assert ConstructionSpec.parse("standard:kind=Ks,k=4,s=2").build().shape == (4, 6)
    assert ConstructionSpec.parse("f:m=10,k=4").evaluate() == 92
    with pytest.raises(ValueError):
        ConstructionSpec.parse("nope:m=1")
    with pytest.raises(ValueError):
        ConstructionSpec.parse("A_k:m=6").build()
    with pytest.raises(ValueError):
        ConstructionSpec.parse("A_k:m6")


def test_named_registry_all_binary():
    for tag, mat in NAMED.items():
        assert all(v in (0, 1) for row in mat.rows() for v in row), tag
