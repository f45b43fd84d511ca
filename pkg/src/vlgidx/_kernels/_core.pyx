# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
# distutils: language = c++
"""Compiled kernels for the hot inner loops.

The pure-numpy twin lives in ``pure.py``; both modules expose the same
function set and must produce identical results (tested in
tests/test_kernels.py).  Position arrays are int32 or int64 numpy arrays;
text is a uint8 array.
"""

import numpy as np

cimport numpy as cnp
from libc.string cimport memcpy
from libcpp.algorithm cimport sort as _cpp_sort

cnp.import_array()

NAME = "compiled"

ctypedef fused pos_t:
    cnp.int32_t
    cnp.int64_t


# ---------------------------------------------------------------------------
# Suffix array construction (SA-IS, induced sorting)
#
# Works on an int32 symbol array whose last element is the unique smallest
# symbol.  The public entry point appends a virtual 0 sentinel below all
# byte values, which also yields the shorter-suffix-sorts-first rule.
# ---------------------------------------------------------------------------

cdef void _bucket_starts(cnp.int32_t[::1] counts, cnp.int32_t[::1] bkt,
                         cnp.int32_t K) noexcept:
    cdef cnp.int32_t c, s = 0
    for c in range(K):
        bkt[c] = s
        s += counts[c]


cdef void _bucket_ends(cnp.int32_t[::1] counts, cnp.int32_t[::1] bkt,
                       cnp.int32_t K) noexcept:
    cdef cnp.int32_t c, s = 0
    for c in range(K):
        s += counts[c]
        bkt[c] = s


cdef void _induce_l(cnp.int32_t[::1] T, cnp.int32_t[::1] SA,
                    cnp.uint8_t[::1] t, cnp.int32_t[::1] counts,
                    cnp.int32_t[::1] bkt, cnp.int32_t n,
                    cnp.int32_t K) noexcept:
    cdef cnp.int32_t i, j
    _bucket_starts(counts, bkt, K)
    for i in range(n):
        j = SA[i]
        if j > 0 and not t[j - 1]:
            SA[bkt[T[j - 1]]] = j - 1
            bkt[T[j - 1]] += 1


cdef void _induce_s(cnp.int32_t[::1] T, cnp.int32_t[::1] SA,
                    cnp.uint8_t[::1] t, cnp.int32_t[::1] counts,
                    cnp.int32_t[::1] bkt, cnp.int32_t n,
                    cnp.int32_t K) noexcept:
    cdef cnp.int32_t i, j
    _bucket_ends(counts, bkt, K)
    for i in range(n - 1, -1, -1):
        j = SA[i]
        if j > 0 and t[j - 1]:
            bkt[T[j - 1]] -= 1
            SA[bkt[T[j - 1]]] = j - 1


cdef bint _lms_substrings_equal(cnp.int32_t[::1] T, cnp.uint8_t[::1] t,
                                cnp.int32_t n, cnp.int32_t a,
                                cnp.int32_t b) noexcept:
    # Equality of chars over the full inclusive span implies equal types.
    cdef cnp.int32_t i = 1
    cdef bint a_lms, b_lms
    if T[a] != T[b]:
        return False
    while True:
        if a + i >= n or b + i >= n:
            return False
        if T[a + i] != T[b + i]:
            return False
        a_lms = t[a + i] and not t[a + i - 1]
        b_lms = t[b + i] and not t[b + i - 1]
        if a_lms != b_lms:
            return False
        if a_lms:
            return True
        i += 1


cdef void _sais(cnp.int32_t[::1] T, cnp.int32_t[::1] SA, cnp.int32_t n,
                cnp.int32_t K):
    cdef cnp.int32_t i, j, p, m, name, prev, nsub
    if n == 1:
        SA[0] = 0
        return

    types_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] t = types_arr  # 1 = S-type
    t[n - 1] = 1
    for i in range(n - 2, -1, -1):
        if T[i] < T[i + 1] or (T[i] == T[i + 1] and t[i + 1]):
            t[i] = 1

    counts_arr = np.zeros(K, dtype=np.int32)
    bkt_arr = np.zeros(K, dtype=np.int32)
    cdef cnp.int32_t[::1] counts = counts_arr
    cdef cnp.int32_t[::1] bkt = bkt_arr
    for i in range(n):
        counts[T[i]] += 1

    # Stage 1: approximately sort LMS suffixes to sort the LMS substrings.
    for i in range(n):
        SA[i] = -1
    _bucket_ends(counts, bkt, K)
    for i in range(1, n):
        if t[i] and not t[i - 1]:
            bkt[T[i]] -= 1
            SA[bkt[T[i]]] = i
    _induce_l(T, SA, t, counts, bkt, n, K)
    _induce_s(T, SA, t, counts, bkt, n, K)

    # Compact the LMS positions, now in LMS-substring order, into SA[:m].
    m = 0
    for i in range(n):
        p = SA[i]
        if p > 0 and t[p] and not t[p - 1]:
            SA[m] = p
            m += 1

    # Name LMS substrings; names parked at SA[m + p/2] (LMS starts are
    # at least 2 apart, so the slots are distinct and fit in SA[m:]).
    for i in range(m, n):
        SA[i] = -1
    name = 0
    prev = -1
    for i in range(m):
        p = SA[i]
        if prev < 0 or not _lms_substrings_equal(T, t, n, p, prev):
            name += 1
            prev = p
        SA[m + (p >> 1)] = name - 1

    # Gather the reduced string (LMS names in text order) into SA[n-m:].
    # Scan descending so writes trail reads within the shared SA tail.
    nsub = n - 1
    for i in range(n - 1, m - 1, -1):
        if SA[i] >= 0:
            SA[nsub] = SA[i]
            nsub -= 1

    if name < m:
        _sais(SA[n - m:n], SA[:m], m, name)
    else:
        for i in range(m):
            SA[SA[n - m + i]] = i

    # Map reduced ranks back to LMS text positions.
    nsub = 0
    for i in range(1, n):
        if t[i] and not t[i - 1]:
            SA[n - m + nsub] = i
            nsub += 1
    for i in range(m):
        SA[i] = SA[n - m + SA[i]]

    # Stage 2: induce the full order from the sorted LMS suffixes.
    for i in range(m, n):
        SA[i] = -1
    _bucket_ends(counts, bkt, K)
    for i in range(m - 1, -1, -1):
        j = SA[i]
        SA[i] = -1
        bkt[T[j]] -= 1
        SA[bkt[T[j]]] = j
    _induce_l(T, SA, t, counts, bkt, n, K)
    _induce_s(T, SA, t, counts, bkt, n, K)


def suffix_array_bytes(data):
    """Suffix array of a byte string as an int32 array.

    Ordering is plain byte-wise lexicographic with a shorter suffix that
    is a prefix of a longer one sorting first (no sentinel is stored).
    """
    cdef Py_ssize_t n = len(data)
    if n == 0:
        return np.empty(0, dtype=np.int32)
    if n >= 0x7FFFFFFF:
        raise ValueError("compiled suffix-array builder is limited to 2**31-2 bytes")
    raw = np.frombuffer(data, dtype=np.uint8)
    padded = np.empty(n + 1, dtype=np.int32)
    padded[:n] = raw
    padded[:n] += 1          # shift so 0 is free for the sentinel
    padded[n] = 0
    sa = np.empty(n + 1, dtype=np.int32)
    _sais(padded, sa, n + 1, 257)
    return sa[1:].copy()     # drop the sentinel entry


# ---------------------------------------------------------------------------
# Sorting
# ---------------------------------------------------------------------------

cdef void _radix_pass_u32(cnp.uint32_t* src, cnp.uint32_t* dst,
                          Py_ssize_t n, Py_ssize_t* offs, int shift) noexcept:
    cdef Py_ssize_t i, o
    cdef cnp.uint32_t v
    for i in range(n):
        v = src[i]
        o = offs[(v >> shift) & 0xFF]
        offs[(v >> shift) & 0xFF] = o + 1
        dst[o] = v


cdef void _radix_pass_u64(cnp.uint64_t* src, cnp.uint64_t* dst,
                          Py_ssize_t n, Py_ssize_t* offs, int shift) noexcept:
    cdef Py_ssize_t i, o
    cdef cnp.uint64_t v
    for i in range(n):
        v = src[i]
        o = offs[(v >> shift) & 0xFF]
        offs[(v >> shift) & 0xFF] = o + 1
        dst[o] = v


cdef void _radix_u32(cnp.uint32_t[::1] v) except *:
    cdef Py_ssize_t n = v.shape[0]
    cdef cnp.uint32_t mx = 0
    cdef Py_ssize_t i, c, total
    cdef int p, nbytes, base
    cdef Py_ssize_t[1024] hist
    if n <= 1:
        return
    for i in range(n):
        if v[i] > mx:
            mx = v[i]
    nbytes = 1
    while nbytes < 4 and (mx >> (8 * nbytes)) != 0:
        nbytes += 1
    scratch_arr = np.empty(n, dtype=np.uint32)
    cdef cnp.uint32_t[::1] scratch = scratch_arr
    for i in range(256 * nbytes):
        hist[i] = 0
    for i in range(n):
        hist[v[i] & 0xFF] += 1
        if nbytes > 1:
            hist[256 + ((v[i] >> 8) & 0xFF)] += 1
        if nbytes > 2:
            hist[512 + ((v[i] >> 16) & 0xFF)] += 1
        if nbytes > 3:
            hist[768 + ((v[i] >> 24) & 0xFF)] += 1
    cdef cnp.uint32_t* src = &v[0]
    cdef cnp.uint32_t* dst = &scratch[0]
    cdef cnp.uint32_t* tmp
    for p in range(nbytes):
        base = 256 * p
        # a pass whose byte is constant permutes nothing: skip it
        total = 0
        for i in range(256):
            if hist[base + i] == n:
                total = 1
                break
        if total:
            continue
        total = 0
        for i in range(256):
            c = hist[base + i]
            hist[base + i] = total
            total += c
        _radix_pass_u32(src, dst, n, &hist[base], 8 * p)
        tmp = src
        src = dst
        dst = tmp
    if src != &v[0]:
        memcpy(&v[0], src, n * sizeof(cnp.uint32_t))


cdef void _radix_u64(cnp.uint64_t[::1] v) except *:
    cdef Py_ssize_t n = v.shape[0]
    cdef cnp.uint64_t mx = 0
    cdef Py_ssize_t i, c, total
    cdef int p, nbytes, base
    cdef Py_ssize_t[2048] hist
    if n <= 1:
        return
    for i in range(n):
        if v[i] > mx:
            mx = v[i]
    nbytes = 1
    while nbytes < 8 and (mx >> (8 * nbytes)) != 0:
        nbytes += 1
    scratch_arr = np.empty(n, dtype=np.uint64)
    cdef cnp.uint64_t[::1] scratch = scratch_arr
    for i in range(256 * nbytes):
        hist[i] = 0
    for i in range(n):
        for p in range(nbytes):
            hist[256 * p + ((v[i] >> (8 * p)) & 0xFF)] += 1
    cdef cnp.uint64_t* src = &v[0]
    cdef cnp.uint64_t* dst = &scratch[0]
    cdef cnp.uint64_t* tmp
    for p in range(nbytes):
        base = 256 * p
        total = 0
        for i in range(256):
            if hist[base + i] == n:
                total = 1
                break
        if total:
            continue
        total = 0
        for i in range(256):
            c = hist[base + i]
            hist[base + i] = total
            total += c
        _radix_pass_u64(src, dst, n, &hist[base], 8 * p)
        tmp = src
        src = dst
        dst = tmp
    if src != &v[0]:
        memcpy(&v[0], src, n * sizeof(cnp.uint64_t))


def radix_sort(a):
    """Ascending stable LSD radix sort (radix 256) of non-negative positions.

    Returns a sorted copy.  Byte passes above the most significant byte of
    the maximum element are skipped, as are passes whose byte is constant.
    """
    arr = np.ascontiguousarray(a)
    cdef Py_ssize_t n = arr.shape[0]
    if n == 0:
        return arr.copy()
    if arr.dtype == np.int32:
        out = arr.copy()
        _radix_u32(out.view(np.uint32))
        return out
    if arr.dtype != np.int64:
        raise TypeError("radix_sort expects int32 or int64 positions")
    if n and int(arr.max()) < (1 << 32):
        small = arr.astype(np.uint32)
        _radix_u32(small)
        return small.astype(np.int64)
    out = arr.copy()
    _radix_u64(out.view(np.uint64))
    return out


def baseline_sort(a):
    """Library comparison sort (C++ std::sort) of positions; sorted copy."""
    arr = np.ascontiguousarray(a)
    out = arr.copy()
    cdef cnp.int32_t[::1] v32
    cdef cnp.int64_t[::1] v64
    if out.shape[0] <= 1:
        return out
    if out.dtype == np.int32:
        v32 = out
        _cpp_sort(&v32[0], &v32[0] + v32.shape[0])
    elif out.dtype == np.int64:
        v64 = out
        _cpp_sort(&v64[0], &v64[0] + v64.shape[0])
    else:
        raise TypeError("baseline_sort expects int32 or int64 positions")
    return out


# ---------------------------------------------------------------------------
# Gap-constrained intersection (single forward merge pass)
# ---------------------------------------------------------------------------

def intersect_gapped(const pos_t[::1] a, const pos_t[::1] b,
                     long long delta, long long Delta):
    """Ascending b-elements j with some i in a satisfying i+delta <= j <= i+Delta.

    Both inputs must be ascending; each b element is reported at most once.
    """
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    out_arr = np.empty(nb, dtype=np.asarray(b).dtype)
    cdef pos_t[::1] out = out_arr
    cdef Py_ssize_t i = 0, j, cnt = 0
    cdef long long v
    for j in range(nb):
        v = b[j]
        while i < na and a[i] + Delta < v:
            i += 1
        if i < na and a[i] + delta <= v:
            out[cnt] = b[j]
            cnt += 1
    return out_arr[:cnt].copy()


def filter_predecessors(const pos_t[::1] a, const pos_t[::1] b,
                        long long delta, long long Delta):
    """Ascending a-elements i with some j in b satisfying i+delta <= j <= i+Delta."""
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    out_arr = np.empty(na, dtype=np.asarray(a).dtype)
    cdef pos_t[::1] out = out_arr
    cdef Py_ssize_t i, j = 0, cnt = 0
    cdef long long v
    for i in range(na):
        v = a[i]
        while j < nb and b[j] < v + delta:
            j += 1
        if j < nb and b[j] <= v + Delta:
            out[cnt] = a[i]
            cnt += 1
    return out_arr[:cnt].copy()


# ---------------------------------------------------------------------------
# Block filter bit kernels (words: uint64 bitvector, one bit per block)
# ---------------------------------------------------------------------------

def mark_forward(cnp.uint64_t[::1] words, long long nblocks, int shift,
                 const pos_t[::1] positions, long long delta, long long Delta):
    cdef Py_ssize_t idx
    cdef long long p, lo, hi, blk
    for idx in range(positions.shape[0]):
        p = positions[idx]
        lo = (p + delta) >> shift
        if lo >= nblocks:
            continue
        hi = (p + Delta) >> shift
        if hi >= nblocks:
            hi = nblocks - 1
        blk = lo
        while blk <= hi:
            words[blk >> 6] |= (<cnp.uint64_t>1) << (blk & 63)
            blk += 1


def mark_backward(cnp.uint64_t[::1] words, long long nblocks, int shift,
                  const pos_t[::1] positions, long long delta, long long Delta):
    cdef Py_ssize_t idx
    cdef long long p, lo, hi, blk
    for idx in range(positions.shape[0]):
        p = positions[idx]
        hi = p - delta
        if hi < 0:
            continue
        lo = p - Delta
        if lo < 0:
            lo = 0
        lo = lo >> shift
        hi = hi >> shift
        if hi >= nblocks:
            hi = nblocks - 1
        blk = lo
        while blk <= hi:
            words[blk >> 6] |= (<cnp.uint64_t>1) << (blk & 63)
            blk += 1


def prune(const cnp.uint64_t[::1] words, int shift, const pos_t[::1] candidates):
    """Candidates whose block bit is set, in input order."""
    cdef Py_ssize_t n = candidates.shape[0]
    out_arr = np.empty(n, dtype=np.asarray(candidates).dtype)
    cdef pos_t[::1] out = out_arr
    cdef Py_ssize_t i, cnt = 0
    cdef long long blk
    for i in range(n):
        blk = candidates[i] >> shift
        if (words[blk >> 6] >> (blk & 63)) & 1:
            out[cnt] = candidates[i]
            cnt += 1
    return out_arr[:cnt].copy()


# ---------------------------------------------------------------------------
# KMP search and windowed text checking
# ---------------------------------------------------------------------------

cdef void _kmp_failure(const cnp.uint8_t[::1] needle, cnp.int64_t[::1] fail) noexcept:
    cdef Py_ssize_t m = needle.shape[0], i
    cdef cnp.int64_t k = 0
    fail[0] = 0
    for i in range(1, m):
        while k > 0 and needle[i] != needle[k]:
            k = fail[k - 1]
        if needle[i] == needle[k]:
            k += 1
        fail[i] = k


def kmp_search(const cnp.uint8_t[::1] hay, const cnp.uint8_t[::1] needle):
    """All start offsets of needle in hay, ascending, overlaps included."""
    cdef Py_ssize_t n = hay.shape[0], m = needle.shape[0]
    if m == 0:
        raise ValueError("empty needle")
    fail_arr = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[::1] fail = fail_arr
    _kmp_failure(needle, fail)
    out_arr = np.empty(16, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef Py_ssize_t cnt = 0, i
    cdef cnp.int64_t k = 0
    for i in range(n):
        while k > 0 and hay[i] != needle[k]:
            k = fail[k - 1]
        if hay[i] == needle[k]:
            k += 1
        if k == m:
            if cnt == out.shape[0]:
                out_arr = np.resize(out_arr, 2 * cnt)
                out = out_arr
            out[cnt] = i - m + 1
            cnt += 1
            k = fail[k - 1]
    return out_arr[:cnt].copy()


def text_check_forward(const cnp.uint8_t[::1] text, const pos_t[::1] anchors,
                       const cnp.uint8_t[::1] needle, long long delta,
                       long long Delta):
    """Occurrences of needle licensed by a window after some anchor.

    For each anchor i (ascending) the window text[i+delta : i+Delta+m] is
    scanned with KMP; the return value is the deduplicated ascending union
    of absolute match positions.  Overlapping windows are scanned once.
    """
    cdef Py_ssize_t n = text.shape[0], m = needle.shape[0]
    cdef Py_ssize_t na = anchors.shape[0]
    if m == 0:
        raise ValueError("empty subpattern")
    fail_arr = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[::1] fail = fail_arr
    _kmp_failure(needle, fail)
    out_arr = np.empty(max(16, na), dtype=np.asarray(anchors).dtype)
    cdef pos_t[::1] out = out_arr
    cdef Py_ssize_t cnt = 0, idx
    cdef long long a, s, e, start, i, pos, last = -1, scanned = 0
    cdef cnp.int64_t k
    cdef cnp.uint8_t c
    for idx in range(na):
        a = anchors[idx]
        s = a + delta
        if s >= n:
            continue
        e = a + Delta + m
        if e > n:
            e = n
        if e - s < m:
            continue
        start = s
        if scanned - m + 1 > start:
            start = scanned - m + 1   # earlier starts were covered already
        if start >= e:
            continue
        k = 0
        i = start
        while i < e:
            c = text[i]
            while k > 0 and c != needle[k]:
                k = fail[k - 1]
            if c == needle[k]:
                k += 1
            if k == m:
                pos = i - m + 1
                if pos > last:
                    if cnt == out.shape[0]:
                        out_arr = np.resize(out_arr, 2 * cnt)
                        out = out_arr
                    out[cnt] = <pos_t>pos
                    cnt += 1
                    last = pos
                k = fail[k - 1]
            i += 1
        if e > scanned:
            scanned = e
    return out_arr[:cnt].copy()


def text_check_backward(const cnp.uint8_t[::1] text, const pos_t[::1] anchors,
                        const cnp.uint8_t[::1] needle, long long delta,
                        long long Delta, allowed=None):
    """Anchors (occurrences of the later subpattern) with a valid predecessor.

    For each anchor j the window text[max(0, j-Delta) : j-delta+m] is
    scanned for needle; j survives if a hit i satisfies i+delta <= j <=
    i+Delta and, when ``allowed`` is given, i is a member of that sorted
    position set.
    """
    cdef Py_ssize_t n = text.shape[0], m = needle.shape[0]
    cdef Py_ssize_t na = anchors.shape[0]
    if m == 0:
        raise ValueError("empty subpattern")
    fail_arr = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[::1] fail = fail_arr
    _kmp_failure(needle, fail)
    cdef bint use_allowed = allowed is not None
    cdef const pos_t[::1] allow = allowed if use_allowed else np.empty(
        0, dtype=np.asarray(anchors).dtype)
    out_arr = np.empty(na, dtype=np.asarray(anchors).dtype)
    cdef pos_t[::1] out = out_arr
    cdef Py_ssize_t cnt = 0, idx, lo_ix, hi_ix, mid
    cdef long long a, lo, e, i, pos
    cdef cnp.int64_t k
    cdef cnp.uint8_t c
    cdef bint hit
    for idx in range(na):
        a = anchors[idx]
        if a - delta < 0:
            continue
        lo = a - Delta
        if lo < 0:
            lo = 0
        e = a - delta + m
        if e > n:
            e = n
        if e - lo < m:
            continue
        hit = False
        k = 0
        i = lo
        while i < e and not hit:
            c = text[i]
            while k > 0 and c != needle[k]:
                k = fail[k - 1]
            if c == needle[k]:
                k += 1
            if k == m:
                pos = i - m + 1
                if not use_allowed:
                    hit = True
                else:
                    lo_ix = 0
                    hi_ix = allow.shape[0]
                    while lo_ix < hi_ix:
                        mid = (lo_ix + hi_ix) >> 1
                        if allow[mid] < pos:
                            lo_ix = mid + 1
                        else:
                            hi_ix = mid
                    if lo_ix < allow.shape[0] and allow[lo_ix] == pos:
                        hit = True
                k = fail[k - 1]
            i += 1
        if hit:
            out[cnt] = anchors[idx]
            cnt += 1
    return out_arr[:cnt].copy()


# ---------------------------------------------------------------------------
# CRC-64 (ECMA-182 polynomial, reflected; the CRC-64/XZ variant)
# ---------------------------------------------------------------------------

cdef cnp.uint64_t[8][256] _CRC_TABLE
cdef bint _CRC_READY = False

cdef void _crc_init() noexcept:
    cdef cnp.uint64_t poly = <cnp.uint64_t>0xC96C5795D7870F42
    cdef cnp.uint64_t crc
    cdef int i, j, k
    for i in range(256):
        crc = i
        for j in range(8):
            if crc & 1:
                crc = (crc >> 1) ^ poly
            else:
                crc >>= 1
        _CRC_TABLE[0][i] = crc
    for k in range(1, 8):
        for i in range(256):
            crc = _CRC_TABLE[k - 1][i]
            _CRC_TABLE[k][i] = _CRC_TABLE[0][crc & 0xFF] ^ (crc >> 8)


def crc64(const cnp.uint8_t[::1] data, crc=0):
    """Running CRC-64/XZ; chain calls by passing the previous value."""
    global _CRC_READY
    if not _CRC_READY:
        _crc_init()
        _CRC_READY = True
    cdef cnp.uint64_t c = <cnp.uint64_t>crc
    cdef Py_ssize_t n = data.shape[0], i = 0
    cdef cnp.uint64_t block
    c = ~c
    while i + 8 <= n:
        block = (c ^ (<cnp.uint64_t>data[i]
                      | (<cnp.uint64_t>data[i + 1] << 8)
                      | (<cnp.uint64_t>data[i + 2] << 16)
                      | (<cnp.uint64_t>data[i + 3] << 24)
                      | (<cnp.uint64_t>data[i + 4] << 32)
                      | (<cnp.uint64_t>data[i + 5] << 40)
                      | (<cnp.uint64_t>data[i + 6] << 48)
                      | (<cnp.uint64_t>data[i + 7] << 56)))
        c = (_CRC_TABLE[7][block & 0xFF]
             ^ _CRC_TABLE[6][(block >> 8) & 0xFF]
             ^ _CRC_TABLE[5][(block >> 16) & 0xFF]
             ^ _CRC_TABLE[4][(block >> 24) & 0xFF]
             ^ _CRC_TABLE[3][(block >> 32) & 0xFF]
             ^ _CRC_TABLE[2][(block >> 40) & 0xFF]
             ^ _CRC_TABLE[1][(block >> 48) & 0xFF]
             ^ _CRC_TABLE[0][(block >> 56) & 0xFF])
        i += 8
    while i < n:
        c = _CRC_TABLE[0][(c ^ data[i]) & 0xFF] ^ (c >> 8)
        i += 1
    return int(~c & 0xFFFFFFFFFFFFFFFF)
