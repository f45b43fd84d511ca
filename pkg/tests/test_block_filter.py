"""Block filter: marking semantics, soundness (never drops a valid
candidate), exactness at block size 1."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vlgidx.block_filter import BlockFilter, choose_block_size


def brute_partners(a, b, delta, Delta):
    return sorted({j for j in b for i in a if i + delta <= j <= i + Delta})


class TestMarking:
    def test_forward_example(self):
        f = BlockFilter(16, 4)
        f.mark_forward([0], 2, 5)
        assert [f.test(p) for p in (0, 4, 8, 12)] == [True, True, False, False]

    def test_forward_clamp(self):
        f = BlockFilter(16, 4)
        f.mark_forward([12], 2, 9)
        assert [f.test(p) for p in (0, 4, 8, 12)] == [False, False, False, True]

    def test_backward_example(self):
        f = BlockFilter(16, 4)
        f.mark_backward([10], 2, 5)
        assert [f.test(p) for p in (0, 4, 8, 12)] == [False, True, True, False]

    def test_backward_all_negative(self):
        f = BlockFilter(16, 4)
        f.mark_backward([1], 2, 5)
        assert not any(f.test(p) for p in range(0, 16, 4))

    def test_empty_positions(self):
        f = BlockFilter(16, 4)
        f.mark_forward([], 0, 5)
        assert f.prune([3, 7]).tolist() == []

    def test_marks_accumulate(self):
        f = BlockFilter(64, 4)
        f.mark_forward([0], 0, 0)
        f.mark_forward([32], 0, 0)
        assert f.test(0) and f.test(32)


class TestPrune:
    def test_example(self):
        f = BlockFilter(16, 4)
        f.mark_forward([0], 2, 5)
        # 6 survives only through block granularity (false positive is fine)
        assert f.prune([6, 9]).tolist() == [6]

    def test_all_set_identity(self):
        f = BlockFilter(32, 1)
        f.mark_forward(list(range(32)), 0, 0)
        cands = [9, 3, 31, 0]
        assert f.prune(cands).tolist() == cands

    def test_none_set(self):
        f = BlockFilter(32, 4)
        assert f.prune([1, 2, 3]).tolist() == []


class TestClear:
    def test_mark_clear_prune(self):
        f = BlockFilter(64, 2)
        f.mark_forward([10], 0, 10)
        f.clear()
        assert f.prune([12]).tolist() == []

    def test_clear_fresh_noop(self):
        f = BlockFilter(64, 2)
        f.clear()
        assert f.prune([0]).tolist() == []

    def test_remark_after_clear(self):
        f = BlockFilter(64, 2)
        f.mark_forward([0], 0, 1)
        f.clear()
        f.mark_forward([40], 0, 1)
        assert not f.test(0) and f.test(40)

    def test_clear_reuses_allocation(self):
        f = BlockFilter(1 << 16, 8)
        words = f.words
        f.mark_forward([17], 0, 100)
        f.clear()
        assert f.words is words


class TestValidation:
    @pytest.mark.parametrize("bad", [0, 3, 6, 12, -4])
    def test_block_size_must_be_power_of_two(self, bad):
        with pytest.raises(ValueError):
            BlockFilter(100, bad)


@st.composite
def filter_instances(draw):
    n = draw(st.integers(1, 500))
    b = draw(st.sampled_from([1, 2, 4, 8, 16, 64, 256, 1024, 4096]))
    a = draw(st.lists(st.integers(0, n - 1), max_size=30, unique=True))
    cands = draw(st.lists(st.integers(0, n - 1), max_size=30, unique=True))
    delta = draw(st.integers(0, n))
    Delta = delta + draw(st.integers(0, n))
    return n, b, sorted(a), sorted(cands), delta, Delta


class TestSoundness:
    @given(filter_instances())
    @settings(max_examples=400, deadline=None)
    def test_forward_never_drops_valid_candidate(self, inst):
        n, b, a, cands, delta, Delta = inst
        f = BlockFilter(n, b)
        f.mark_forward(a, delta, Delta)
        kept = set(f.prune(cands).tolist())
        assert set(brute_partners(a, cands, delta, Delta)) <= kept

    @given(filter_instances())
    @settings(max_examples=400, deadline=None)
    def test_backward_never_drops_valid_predecessor(self, inst):
        n, b, later, cands, delta, Delta = inst
        f = BlockFilter(n, b)
        f.mark_backward(later, delta, Delta)
        kept = set(f.prune(cands).tolist())
        valid = {i for i in cands
                 for j in later if i + delta <= j <= i + Delta}
        assert valid <= kept

    @given(filter_instances())
    @settings(max_examples=400, deadline=None)
    def test_block_one_forward_is_exact(self, inst):
        n, _, a, cands, delta, Delta = inst
        f = BlockFilter(n, 1)
        f.mark_forward(a, delta, Delta)
        kept = f.prune(cands).tolist()
        assert kept == [j for j in cands
                        if any(i + delta <= j <= i + Delta for i in a)]


class TestChooseBlockSize:
    def test_small_gap_prefers_small_blocks(self):
        assert choose_block_size(1 << 26, 100, 110) == 4

    def test_large_gap_prefers_large_blocks(self):
        assert choose_block_size(1 << 26, 10000, 11000) == 256

    def test_budget_forces_growth(self):
        # 1 GiB of text against a 1 KiB budget needs huge blocks
        b = choose_block_size(1 << 30, 0, 0, budget_bytes=1024)
        assert (1 << 30) / b <= 1024 * 8
        assert b & (b - 1) == 0

    def test_power_of_two(self):
        for n in (1, 100, 12345, 1 << 20):
            b = choose_block_size(n, 3, 1000)
            assert b & (b - 1) == 0
