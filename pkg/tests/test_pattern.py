"""Pattern parsing, rendering, frequent-substring pools, generation."""

import collections

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vlgidx.pattern import (GapConstraint, PatternSyntaxError, VlgPattern,
                            generate_patterns, parse_pattern,
                            patterns_from_pool, render_pattern,
                            top_frequent_substrings)


class TestParse:
    def test_motif_example(self):
        p = parse_pattern("MT[115,136]MTNTAYGG[121,151]GTNGAYGAY")
        assert p.k == 3
        assert p.subpatterns == (b"MT", b"MTNTAYGG", b"GTNGAYGAY")
        assert p.gaps == (GapConstraint(115, 136), GapConstraint(121, 151))

    def test_end_mode_converts_to_start_to_start(self):
        p = parse_pattern("ab[2,2]ra", gap_mode="end")
        assert p.gaps == (GapConstraint(4, 4),)

    def test_gap_bounds_reversed(self):
        with pytest.raises(PatternSyntaxError) as exc:
            parse_pattern("ab[5,3]cd")
        assert "δ > Δ" in str(exc.value)
        assert exc.value.offset == 2

    def test_whitespace_inside_gap(self):
        p = parse_pattern("a[ 1 , 2 ]b")
        assert p.gaps == (GapConstraint(1, 2),)

    @pytest.mark.parametrize("bad,offset", [
        ("", 0),
        ("[1,2]ab", 0),
        ("ab[1,2]", 7),
        ("ab[1,2][3,4]cd", 7),
        ("ab\\", 2),
        ("ab\\q", 2),
        ("ab[1;2]cd", 2),
        ("ab[1,2", 2),
        ("ab]cd", 2),
        ("ab[1,2]cd\\x1", 9),
    ])
    def test_errors_carry_offsets(self, bad, offset):
        with pytest.raises(PatternSyntaxError) as exc:
            parse_pattern(bad)
        assert exc.value.offset == offset

    def test_escapes(self):
        p = parse_pattern(r"a\[b\]c\\d[0,1]x\x00y")
        assert p.subpatterns == (b"a[b]c\\d", b"x\x00y")

    def test_k1_plain_substring(self):
        p = parse_pattern("hello")
        assert p.k == 1 and p.gaps == ()


class TestRender:
    @given(st.lists(st.binary(min_size=1, max_size=6), min_size=1, max_size=5),
           st.lists(st.tuples(st.integers(0, 500), st.integers(0, 500)),
                    min_size=0, max_size=4),
           )
    @settings(max_examples=200, deadline=None)
    def test_round_trip(self, subs, raw_gaps):
        gaps = tuple(GapConstraint(min(a, b), max(a, b))
                     for a, b in raw_gaps[:len(subs) - 1])
        subs = subs[:len(gaps) + 1]
        pattern = VlgPattern(tuple(subs), gaps)
        assert parse_pattern(render_pattern(pattern)) == pattern


class TestValidation:
    def test_gap_constraint_invariants(self):
        with pytest.raises(ValueError):
            GapConstraint(5, 3)
        with pytest.raises(ValueError):
            GapConstraint(-1, 3)

    def test_pattern_invariants(self):
        with pytest.raises(ValueError):
            VlgPattern((), ())
        with pytest.raises(ValueError):
            VlgPattern((b"a", b""), (GapConstraint(0, 1),))
        with pytest.raises(ValueError):
            VlgPattern((b"a", b"b"), ())


class TestTopFrequent:
    def test_abab(self):
        assert top_frequent_substrings(b"abab", 2, 2) == [b"ab", b"ba"]

    def test_single_distinct(self):
        assert top_frequent_substrings(b"aaaa", 3, 5) == [b"aaa"]

    def test_banana_tie_break(self):
        assert top_frequent_substrings(b"banana", 2, 3) == [b"an", b"na", b"ba"]

    def test_m_larger_than_text(self):
        with pytest.raises(ValueError):
            top_frequent_substrings(b"ab", 3, 1)

    def test_agrees_with_sliding_window_counter(self, rng):
        for _ in range(25):
            n = rng.randrange(5, 2000)
            text = bytes(rng.randrange(4) for _ in range(n))
            m = rng.randrange(1, 5)
            if m > n:
                continue
            counter = collections.Counter(
                text[i:i + m] for i in range(n - m + 1))
            want = sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))
            got = top_frequent_substrings(text, m, 10)
            assert got == [sub for sub, _ in want[:10]]
            for sub in got:
                assert counter[sub] > 0

    def test_long_m_falls_back_to_counter(self):
        text = b"abcabcabcabc"
        got = top_frequent_substrings(text, 9, 2)
        assert got[0] == b"abcabcabc"


class TestGeneration:
    def test_structure_and_gap(self):
        text = b"abracadabra" * 40
        gap = GapConstraint(100, 110)
        pats = generate_patterns(text, k=2, m=3, gap=gap, how_many=20, seed=1)
        assert len(pats) == 20
        for p in pats:
            assert p.k == 2
            assert p.gaps == (gap,)

    def test_k4_has_three_gaps(self):
        pats = generate_patterns(b"abcd" * 100, k=4, m=2,
                                 gap=GapConstraint(1, 5), how_many=3, seed=0)
        assert all(len(p.gaps) == 3 for p in pats)

    def test_deterministic_across_runs(self):
        text = b"mississippi river basin " * 30
        a = generate_patterns(text, 3, 3, GapConstraint(2, 9), 20, seed=7)
        b = generate_patterns(text, 3, 3, GapConstraint(2, 9), 20, seed=7)
        assert a == b
        c = generate_patterns(text, 3, 3, GapConstraint(2, 9), 20, seed=8)
        assert a != c

    def test_subpatterns_from_pool(self):
        text = bytes(range(256)) * 8
        pool = set(top_frequent_substrings(text, 2, 200))
        pats = generate_patterns(text, 5, 2, GapConstraint(0, 3), 50, seed=3)
        for p in pats:
            assert all(sub in pool for sub in p.subpatterns)

    def test_empty_pool_rejected(self):
        with pytest.raises(ValueError):
            patterns_from_pool([], 2, GapConstraint(0, 1), 5, seed=0)
