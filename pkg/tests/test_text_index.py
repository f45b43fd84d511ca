"""Suffix-array index: construction invariants, interval search, persistence."""

import io

import numpy as np
import pytest

from vlgidx.text_index import (CapacityError, IndexChecksumError,
                               IndexFormatError, IndexTruncatedError,
                               SaInterval, build_index, extract_positions,
                               find_interval, load_index, save_index)
from conftest import random_text


def naive_suffix_array(text):
    return sorted(range(len(text)), key=lambda i: text[i:])


def naive_interval(text, sa, sub):
    ranks = [r for r, p in enumerate(sa) if text[p:p + len(sub)] == sub]
    if not ranks:
        return SaInterval(0, -1)
    assert ranks == list(range(ranks[0], ranks[-1] + 1)), "interval not contiguous"
    return SaInterval(ranks[0], ranks[-1])


class TestBuild:
    def test_empty_text(self):
        assert build_index(b"").sa.tolist() == []

    def test_banana(self):
        assert build_index(b"banana").sa.tolist() == [5, 3, 1, 0, 4, 2]

    def test_shorter_prefix_first(self):
        assert build_index(b"aaaa").sa.tolist() == [3, 2, 1, 0]

    @pytest.mark.parametrize("sigma", [2, 4, 20, 64, 256])
    def test_permutation_and_order(self, sigma, rng):
        for n in (1, 2, 37, 1000):
            text = random_text(rng, n, sigma)
            sa = build_index(text).sa
            assert np.array_equal(np.sort(sa), np.arange(n, dtype=sa.dtype))
            for j in range(n - 1):
                assert text[sa[j]:] < text[sa[j + 1]:]

    def test_permutation_at_scale(self, rng):
        n = 100_000
        text = random_text(rng, n, 4)
        sa = build_index(text).sa
        assert np.array_equal(np.sort(sa), np.arange(n, dtype=sa.dtype))
        # spot-check adjacent order on a sample of ranks
        for j in range(0, n - 1, 997):
            assert text[sa[j]:] < text[sa[j + 1]:]


class TestFindInterval:
    def test_examples(self):
        idx = build_index(b"banana")
        iv = idx.interval(b"ana")
        assert (iv.start, iv.end) == (1, 2)
        assert sorted(idx.positions(iv).tolist()) == [1, 3]
        assert idx.interval(b"x").is_empty
        iv = idx.interval(b"banana")
        assert (iv.start, iv.end) == (3, 3)
        assert idx.positions(iv).tolist() == [0]

    def test_empty_subpattern_rejected(self):
        idx = build_index(b"banana")
        with pytest.raises(ValueError):
            idx.interval(b"")

    def test_positions_in_sa_order(self):
        idx = build_index(b"banana")
        assert extract_positions(idx, idx.interval(b"na")).tolist() == [4, 2]
        assert extract_positions(idx, SaInterval(0, -1)).tolist() == []

    @pytest.mark.parametrize("sigma", [2, 4, 20, 64, 256])
    def test_agrees_with_naive_oracle(self, sigma, rng):
        for _ in range(30):
            n = rng.randrange(1, 400)
            text = random_text(rng, n, sigma)
            idx = build_index(text)
            sa = idx.sa.tolist()
            assert sa == naive_suffix_array(text)
            for _ in range(8):
                m = rng.randrange(1, 6)
                if rng.random() < 0.5 and n >= m:
                    start = rng.randrange(0, n - m + 1)
                    sub = text[start:start + m]
                else:
                    sub = random_text(rng, m, sigma)
                got = find_interval(idx, sub)
                want = naive_interval(text, sa, sub)
                assert (got.start, got.end, got.is_empty) == \
                    (want.start, want.end, want.is_empty)
                occ = sum(1 for i in range(n) if text[i:i + len(sub)] == sub)
                assert got.width == occ


class TestPersistence:
    def test_round_trip(self, tmp_path):
        idx = build_index(b"banana")
        path = tmp_path / "banana.idx"
        save_index(idx, path)
        loaded = load_index(path)
        assert loaded.text == b"banana"
        assert loaded.sa.tolist() == [5, 3, 1, 0, 4, 2]

    @pytest.mark.parametrize("width", [5, 8])
    def test_width_variants(self, width, tmp_path):
        idx = build_index(b"mississippi")
        path = tmp_path / "w.idx"
        save_index(idx, path, width=width)
        raw = path.read_bytes()
        assert raw[8] == width
        assert load_index(path).sa.tolist() == idx.sa.tolist()

    def test_wrong_magic(self):
        buf = io.BytesIO()
        save_index(build_index(b"abc"), buf)
        data = bytearray(buf.getvalue())
        data[:8] = b"NOTMAGIC"
        with pytest.raises(IndexFormatError):
            load_index(io.BytesIO(bytes(data)))

    def test_truncation(self):
        buf = io.BytesIO()
        save_index(build_index(b"abcabc"), buf)
        data = buf.getvalue()
        with pytest.raises(IndexTruncatedError):
            load_index(io.BytesIO(data[:-3]))

    def test_checksum(self):
        buf = io.BytesIO()
        save_index(build_index(b"abcabc"), buf)
        data = bytearray(buf.getvalue())
        data[30] ^= 0xFF  # flip a text byte
        with pytest.raises(IndexChecksumError):
            load_index(io.BytesIO(bytes(data)))

    def test_trailing_garbage(self):
        buf = io.BytesIO()
        save_index(build_index(b"abc"), buf)
        with pytest.raises(IndexFormatError):
            load_index(io.BytesIO(buf.getvalue() + b"x"))

    def test_capacity_guard(self, monkeypatch):
        import vlgidx.text_index as ti
        monkeypatch.setattr(ti, "POSITION_LIMIT", 4)
        with pytest.raises(CapacityError):
            ti.build_index(b"abcde")
