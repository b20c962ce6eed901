import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qminfind.table import (
    Table,
    ThresholdOracle,
    generate_table,
    rank_of,
    read_table,
    write_table,
)


def test_distinct_generation_is_a_permutation():
    table = generate_table(16, "distinct", random.Random(0))
    assert sorted(table.values.tolist()) == list(range(16))
    assert table.distinct


def test_duplicate_generation_respects_value_range():
    table = generate_table(50, "dup", random.Random(0), k=4)
    assert set(table.values.tolist()) <= set(range(4))
    assert not table.distinct


def test_generate_rejects_bad_arguments():
    rng = random.Random(0)
    with pytest.raises(ValueError):
        generate_table(0, "distinct", rng)
    with pytest.raises(ValueError):
        generate_table(8, "dup", rng, k=0)
    with pytest.raises(ValueError):
        generate_table(8, "dup", rng, k=9)
    with pytest.raises(ValueError):
        generate_table(8, "nope", rng)


def test_distinct_flag_is_validated():
    with pytest.raises(ValueError, match="duplicate"):
        Table(np.array([3, 3, 1]), distinct=True)


def test_values_are_read_only():
    table = generate_table(4, "distinct", random.Random(1))
    with pytest.raises(ValueError):
        table.values[0] = 99


def test_table_does_not_capture_caller_array():
    source = np.array([5, 2, 7], dtype=np.int64)
    table = Table(source, distinct=True)
    source[0] = -1
    assert table.values.tolist() == [5, 2, 7]


@given(seed=st.integers(0, 10**6), n=st.integers(1, 64))
def test_ranks_sort_consistently(seed, n):
    table = generate_table(n, "distinct", random.Random(seed))
    # order lists indices by ascending value; ranks inverts that listing
    assert table.ranks[table.order].tolist() == list(range(1, n + 1))
    assert rank_of(table, int(table.order[0])) == 1
    assert table.is_minimum(int(table.order[0]))


@given(seed=st.integers(0, 10**6), n=st.integers(2, 40), k=st.integers(1, 6))
def test_equal_values_share_the_lowest_rank(seed, n, k):
    table = generate_table(n, "dup", random.Random(seed), k=min(k, n))
    for i in range(n):
        smaller = int(np.sum(table.values < table.values[i]))
        assert int(table.ranks[i]) == smaller + 1


def test_minimum_with_duplicates():
    table = Table(np.array([4, 1, 1, 9]), distinct=False)
    assert table.minimum() == 1
    assert table.is_minimum(1) and table.is_minimum(2)
    assert not table.is_minimum(0)


@given(seed=st.integers(0, 10**6), n=st.integers(1, 48))
def test_threshold_marks_strictly_smaller_entries(seed, n):
    rng = random.Random(seed)
    table = generate_table(n, "dup", rng, k=max(1, n // 2))
    y = rng.randrange(n)
    oracle = ThresholdOracle(table, y)
    mask = oracle.is_marked(np.arange(n))
    assert mask.tolist() == (table.values < table.values[y]).tolist()
    assert oracle.marked_count == int(np.sum(mask))
    # the threshold index itself is never marked (strict inequality)
    assert not mask[y]


def test_threshold_rejects_out_of_range_index():
    table = generate_table(4, "distinct", random.Random(0))
    with pytest.raises(IndexError):
        ThresholdOracle(table, 4)


def test_sampling_stays_inside_each_class():
    rng = random.Random(3)
    table = generate_table(20, "distinct", rng)
    y = int(table.order[10])  # rank 11, so 10 marked
    oracle = ThresholdOracle(table, y)
    for _ in range(100):
        assert table.values[oracle.sample_marked(rng)] < table.values[y]
        assert table.values[oracle.sample_unmarked(rng)] >= table.values[y]


def test_sampling_errors_on_empty_class():
    table = generate_table(5, "distinct", random.Random(4))
    at_min = ThresholdOracle(table, int(table.order[0]))
    with pytest.raises(ValueError):
        at_min.sample_marked(random.Random(0))


def test_marked_sampling_is_uniform():
    rng = random.Random(8)
    table = generate_table(8, "distinct", rng)
    y = int(table.order[4])
    oracle = ThresholdOracle(table, y)
    counts = {}
    draws = 8000
    for _ in range(draws):
        idx = oracle.sample_marked(rng)
        counts[idx] = counts.get(idx, 0) + 1
    assert len(counts) == 4
    for c in counts.values():
        # 4 sigma around the uniform expectation draws/4
        assert abs(c - draws / 4) < 4 * (draws * 0.25 * 0.75) ** 0.5


def test_io_round_trip(tmp_path):
    table = generate_table(12, "dup", random.Random(9), k=3)
    path = tmp_path / "table.txt"
    write_table(table, path)
    loaded = read_table(path)
    assert loaded.values.tolist() == table.values.tolist()
    assert loaded.distinct == table.distinct


def test_read_table_detects_distinct(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("5\n-2\n9\n")
    assert read_table(path).distinct


def test_read_table_rejects_junk(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1\ntwo\n")
    with pytest.raises(ValueError, match="not a decimal integer"):
        read_table(path)


def test_read_table_rejects_empty(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("\n\n")
    with pytest.raises(ValueError, match="no values"):
        read_table(path)
