# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot-loop kernels.

Mirror of ``_pykernels.py``: identical draw order and identical
floating-point operation order, so both engines return bit-identical
results for the same inputs and generator state.  Keep the two files in
sync.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.math cimport log, pow, sqrt, NAN
from libc.stdint cimport int32_t, int64_t, uint64_t

import numpy as np

COMPILED = True


# ---------------------------------------------------------------------------
# xoshiro256++ (Blackman & Vigna); same stream as rngstream.Xoshiro256
# ---------------------------------------------------------------------------

cdef struct Rng:
    uint64_t s0
    uint64_t s1
    uint64_t s2
    uint64_t s3


cdef inline uint64_t _rotl(uint64_t x, int k) noexcept nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t _next_u64(Rng *r) noexcept nogil:
    cdef uint64_t result = _rotl(r.s0 + r.s3, 23) + r.s0
    cdef uint64_t t = r.s1 << 17
    r.s2 ^= r.s0
    r.s3 ^= r.s1
    r.s1 ^= r.s2
    r.s0 ^= r.s3
    r.s2 ^= t
    r.s3 = _rotl(r.s3, 45)
    return result


cdef inline double _next_double(Rng *r) noexcept nogil:
    return <double>(_next_u64(r) >> 11) * (1.0 / 9007199254740992.0)


cdef inline void _seed_rng(Rng *r, state) except *:
    r.s0 = <uint64_t>(state[0])
    r.s1 = <uint64_t>(state[1])
    r.s2 = <uint64_t>(state[2])
    r.s3 = <uint64_t>(state[3])
    if not (r.s0 | r.s1 | r.s2 | r.s3):
        r.s0 = 1


def rng_doubles(state, Py_ssize_t count):
    """Raw uniform doubles for a given xoshiro state (testing hook)."""
    cdef Rng rng
    _seed_rng(&rng, state)
    out = []
    cdef Py_ssize_t i
    for i in range(count):
        out.append(_next_double(&rng))
    return out


cdef inline int64_t _bisect(const int32_t[::1] flat, int64_t lo, int64_t hi,
                            int32_t value) noexcept nogil:
    """Leftmost insertion point of value in flat[lo:hi)."""
    cdef int64_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if flat[mid] < value:
            lo = mid + 1
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# Expected reach: exhaustive enumeration plus Monte Carlo oracle
# ---------------------------------------------------------------------------

cdef class ReachEngine:
    """Cluster enumeration and its Monte Carlo oracle for one graph."""

    cdef const int64_t[::1] indptr
    cdef const int32_t[::1] indices
    cdef int n
    cdef unsigned char[::1] in_cluster
    cdef int32_t[::1] cnt
    cdef int32_t[::1] frontier
    cdef int fsize
    cdef int32_t[::1] members
    cdef int msize
    cdef int x
    cdef double sum_process
    cdef double sum_sequence
    cdef int64_t leaves
    cdef int64_t truncated
    cdef double distinct_sum
    cdef set seen
    cdef bint track
    cdef int32_t[64] key_buf

    def __init__(self, indptr, indices):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.n = len(indptr) - 1
        self.in_cluster = np.zeros(self.n, dtype=np.uint8)
        self.cnt = np.zeros(self.n, dtype=np.int32)
        self.frontier = np.zeros(max(self.n, 1), dtype=np.int32)
        self.members = np.zeros(64, dtype=np.int32)

    def enumerate(self, int seed, int x, bint track_distinct=True):
        """Depth-first expansion over all infection orders from ``seed``;
        see the pure twin for the return tuple."""
        cdef int64_t j
        cdef int32_t nb
        self.x = x
        self.sum_process = 0.0
        self.sum_sequence = 0.0
        self.leaves = 0
        self.truncated = 0
        self.distinct_sum = 0.0
        self.track = track_distinct
        self.seen = set() if track_distinct else None

        self.in_cluster[seed] = 1
        self.members[0] = seed
        self.msize = 1
        self.fsize = 0
        for j in range(self.indptr[seed], self.indptr[seed + 1]):
            nb = self.indices[j]
            self.cnt[nb] = 1
            self.frontier[self.fsize] = nb
            self.fsize += 1
        self._expand(0, self.indptr[seed + 1] - self.indptr[seed], 1.0)
        for j in range(self.indptr[seed], self.indptr[seed + 1]):
            self.cnt[self.indices[j]] = 0
        self.fsize = 0
        self.in_cluster[seed] = 0
        cdef int64_t distinct = len(self.seen) if self.track else 0
        return (self.sum_process, self.sum_sequence, self.leaves,
                self.truncated, distinct, self.distinct_sum)

    cdef void _record_terminal(self, int depth, int64_t cdeg, double weight):
        cdef int i, j
        cdef int32_t tmp
        self.sum_process += weight * cdeg
        self.sum_sequence += cdeg
        self.leaves += 1
        if depth < self.x:
            self.truncated += 1
        if self.track:
            for i in range(self.msize):
                self.key_buf[i] = self.members[i]
            # insertion sort; member sets are tiny
            for i in range(1, self.msize):
                tmp = self.key_buf[i]
                j = i - 1
                while j >= 0 and self.key_buf[j] > tmp:
                    self.key_buf[j + 1] = self.key_buf[j]
                    j -= 1
                self.key_buf[j + 1] = tmp
            key = PyBytes_FromStringAndSize(<char *>&self.key_buf[0],
                                            self.msize * sizeof(int32_t))
            if key not in self.seen:
                self.seen.add(key)
                self.distinct_sum += cdeg

    cdef void _expand(self, int depth, int64_t cdeg, double weight):
        cdef int i, size0
        cdef int32_t v, nb, moved
        cdef int64_t ev, j, new_cdeg, deg_v
        cdef double child_weight
        if depth == self.x or self.fsize == 0:
            self._record_terminal(depth, cdeg, weight)
            return
        size0 = self.fsize
        for i in range(size0):
            v = self.frontier[i]
            ev = self.cnt[v]
            child_weight = weight * ev / cdeg
            deg_v = self.indptr[v + 1] - self.indptr[v]
            new_cdeg = cdeg + deg_v - 2 * ev
            # remove v from the frontier (swap with last), infect it
            self.frontier[i] = self.frontier[self.fsize - 1]
            self.fsize -= 1
            self.in_cluster[v] = 1
            self.members[self.msize] = v
            self.msize += 1
            for j in range(self.indptr[v], self.indptr[v + 1]):
                nb = self.indices[j]
                if not self.in_cluster[nb]:
                    if self.cnt[nb] == 0:
                        self.frontier[self.fsize] = nb
                        self.fsize += 1
                    self.cnt[nb] += 1
            self._expand(depth + 1, new_cdeg, child_weight)
            # undo in reverse order, restoring frontier positions exactly
            for j in range(self.indptr[v + 1] - 1, self.indptr[v] - 1, -1):
                nb = self.indices[j]
                if not self.in_cluster[nb]:
                    self.cnt[nb] -= 1
                    if self.cnt[nb] == 0:
                        self.fsize -= 1
            self.msize -= 1
            self.in_cluster[v] = 0
            self.frontier[self.fsize] = self.frontier[i]
            self.fsize += 1
            self.frontier[i] = v

    def monte_carlo(self, int seed, int x, int64_t runs, state):
        """Sample ``runs`` infection chains of ``x`` events; returns
        (mean, standard error) of the terminal cluster degree."""
        cdef Rng rng
        _seed_rng(&rng, state)
        cdef double mean = 0.0, m2 = 0.0, value, delta
        cdef int64_t k, step, r, idx, j, row_lo, row_hi, ev, cdeg
        cdef int32_t chosen, nb, u
        cdef int mi, msize, i2
        cdef int32_t[64] members
        cdef bint found, is_member
        for k in range(1, runs + 1):
            members[0] = seed
            msize = 1
            cdeg = self.indptr[seed + 1] - self.indptr[seed]
            for step in range(x):
                if cdeg == 0:
                    break
                r = <int64_t>(_next_double(&rng) * cdeg)
                if r == cdeg:
                    r = cdeg - 1
                chosen = -1
                idx = 0
                found = False
                for mi in range(msize):
                    u = members[mi]
                    for j in range(self.indptr[u], self.indptr[u + 1]):
                        nb = self.indices[j]
                        is_member = False
                        for i2 in range(msize):
                            if members[i2] == nb:
                                is_member = True
                                break
                        if not is_member:
                            if idx == r:
                                chosen = nb
                                found = True
                                break
                            idx += 1
                    if found:
                        break
                row_lo = self.indptr[chosen]
                row_hi = self.indptr[chosen + 1]
                ev = 0
                for mi in range(msize):
                    u = members[mi]
                    j = _bisect(self.indices, row_lo, row_hi, u)
                    if j < row_hi and self.indices[j] == u:
                        ev += 1
                cdeg += (row_hi - row_lo) - 2 * ev
                members[msize] = chosen
                msize += 1
            value = <double>cdeg
            delta = value - mean
            mean += delta / k
            m2 += delta * (value - mean)
        cdef double stderr = sqrt(m2 / (runs - 1) / runs) if runs > 1 else 0.0
        return mean, stderr


# ---------------------------------------------------------------------------
# Continuous-time SI to a coverage threshold
# ---------------------------------------------------------------------------

cdef class SiEngine:
    """Event-driven susceptible-infected process in continuous time."""

    cdef const int64_t[::1] indptr
    cdef const int32_t[::1] indices
    cdef int n
    cdef unsigned char[::1] infected
    cdef int64_t[::1] pos
    cdef int32_t[::1] e_from
    cdef int64_t[::1] e_slot

    def __init__(self, indptr, indices):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.n = len(indptr) - 1
        cdef int64_t m2 = len(indices)
        self.infected = np.zeros(self.n, dtype=np.uint8)
        self.pos = np.zeros(max(m2, 1), dtype=np.int64)
        self.e_from = np.zeros(max(m2, 1), dtype=np.int32)
        self.e_slot = np.zeros(max(m2, 1), dtype=np.int64)

    def run(self, int seed, double beta, int64_t threshold_count, state):
        """Returns (time to threshold or nan, final infected, events)."""
        cdef Rng rng
        cdef int64_t ne = 0, count, events, li, li2, s, j, last
        cdef int32_t v, nb
        cdef double t = 0.0
        cdef int i
        if threshold_count <= 1:
            return 0.0, 1, 0
        _seed_rng(&rng, state)
        for i in range(self.n):
            self.infected[i] = 0
        self.infected[seed] = 1
        for j in range(self.indptr[seed], self.indptr[seed + 1]):
            self.pos[j] = ne
            self.e_from[ne] = seed
            self.e_slot[ne] = j
            ne += 1
        count = 1
        events = 0
        while True:
            if ne == 0:
                return NAN, count, events
            t += -log(1.0 - _next_double(&rng)) / (beta * ne)
            li = <int64_t>(_next_double(&rng) * ne)
            if li == ne:
                li = ne - 1
            v = self.indices[self.e_slot[li]]
            self.infected[v] = 1
            count += 1
            events += 1
            for j in range(self.indptr[v], self.indptr[v + 1]):
                nb = self.indices[j]
                if self.infected[nb]:
                    s = _bisect(self.indices, self.indptr[nb],
                                self.indptr[nb + 1], v)
                    li2 = self.pos[s]
                    last = ne - 1
                    if li2 != last:
                        self.e_from[li2] = self.e_from[last]
                        self.e_slot[li2] = self.e_slot[last]
                        self.pos[self.e_slot[li2]] = li2
                    ne -= 1
                else:
                    self.pos[j] = ne
                    self.e_from[ne] = v
                    self.e_slot[ne] = j
                    ne += 1
            if count >= threshold_count:
                return t, count, events


# ---------------------------------------------------------------------------
# Discrete-time SIS with unit recovery
# ---------------------------------------------------------------------------

cdef class SisEngine:
    """Synchronous discrete-time susceptible-infected-susceptible process
    with unit recovery."""

    cdef const int64_t[::1] indptr
    cdef const int32_t[::1] indices
    cdef int n
    cdef unsigned char[::1] infected
    cdef int32_t[::1] kcnt
    cdef int32_t[::1] cur
    cdef int32_t[::1] cand
    cdef int32_t[::1] nxt

    def __init__(self, indptr, indices):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.n = len(indptr) - 1
        self.infected = np.zeros(self.n, dtype=np.uint8)
        self.kcnt = np.zeros(self.n, dtype=np.int32)
        self.cur = np.zeros(self.n, dtype=np.int32)
        self.cand = np.zeros(self.n, dtype=np.int32)
        self.nxt = np.zeros(self.n, dtype=np.int32)

    def run(self, int seed, double beta, int horizon, state):
        """Returns (persisted, extinction iteration or -1, max prevalence)."""
        cdef Rng rng
        _seed_rng(&rng, state)
        cdef int i, t, ncur, ncand, nnew, gap
        cdef int64_t j
        cdef int32_t u, nb, w, tmp
        cdef double p, one_minus = 1.0 - beta
        cdef int max_prev = 1
        for i in range(self.n):
            self.infected[i] = 0
        self.infected[seed] = 1
        self.cur[0] = seed
        ncur = 1
        for t in range(1, horizon + 1):
            ncand = 0
            for i in range(ncur):
                u = self.cur[i]
                for j in range(self.indptr[u], self.indptr[u + 1]):
                    nb = self.indices[j]
                    if not self.infected[nb]:
                        if self.kcnt[nb] == 0:
                            self.cand[ncand] = nb
                            ncand += 1
                        self.kcnt[nb] += 1
            # shell sort keeps the draw order canonical (ascending ids)
            gap = ncand >> 1
            while gap > 0:
                for i in range(gap, ncand):
                    tmp = self.cand[i]
                    j = i
                    while j >= gap and self.cand[j - gap] > tmp:
                        self.cand[j] = self.cand[j - gap]
                        j -= gap
                    self.cand[j] = tmp
                gap >>= 1
            nnew = 0
            for i in range(ncand):
                w = self.cand[i]
                p = 1.0 - pow(one_minus, <double>self.kcnt[w])
                if _next_double(&rng) < p:
                    self.nxt[nnew] = w
                    nnew += 1
            for i in range(ncur):
                self.infected[self.cur[i]] = 0
            for i in range(ncand):
                self.kcnt[self.cand[i]] = 0
            for i in range(nnew):
                self.infected[self.nxt[i]] = 1
                self.cur[i] = self.nxt[i]
            ncur = nnew
            if ncur == 0:
                return False, t, max_prev
            if ncur > max_prev:
                max_prev = ncur
        return True, -1, max_prev


# ---------------------------------------------------------------------------
# Continuous-time competitive two-strain spreading
# ---------------------------------------------------------------------------

cdef enum:
    _S = 0
    _Z = 1
    _H = 2
    _R = 3


cdef class CompetitiveEngine:
    """Two hostile contagions recruiting susceptibles; contact between them
    removes both endpoints."""

    cdef const int64_t[::1] indptr
    cdef const int32_t[::1] indices
    cdef int n
    cdef unsigned char[::1] node_state
    cdef int64_t[::1] pos
    cdef int32_t[::1] cf0
    cdef int32_t[::1] cf1
    cdef int32_t[::1] cf2
    cdef int64_t[::1] cs0
    cdef int64_t[::1] cs1
    cdef int64_t[::1] cs2
    cdef int64_t[3] sizes
    cdef int64_t[4] counts

    def __init__(self, indptr, indices):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.n = len(indptr) - 1
        cdef int64_t m = max(len(indices) // 2, 1)
        self.node_state = np.zeros(self.n, dtype=np.uint8)
        self.pos = np.zeros(max(len(indices), 1), dtype=np.int64)
        self.cf0 = np.zeros(m, dtype=np.int32)
        self.cf1 = np.zeros(m, dtype=np.int32)
        self.cf2 = np.zeros(m, dtype=np.int32)
        self.cs0 = np.zeros(m, dtype=np.int64)
        self.cs1 = np.zeros(m, dtype=np.int64)
        self.cs2 = np.zeros(m, dtype=np.int64)

    cdef inline int _channel(self, int sa, int sb, bint *first_owns) noexcept:
        if sa == _Z and sb == _S:
            first_owns[0] = True
            return 0
        if sa == _S and sb == _Z:
            first_owns[0] = False
            return 0
        if sa == _H and sb == _S:
            first_owns[0] = True
            return 1
        if sa == _S and sb == _H:
            first_owns[0] = False
            return 1
        if sa == _Z and sb == _H:
            first_owns[0] = True
            return 2
        if sa == _H and sb == _Z:
            first_owns[0] = False
            return 2
        return -1

    cdef inline int32_t *_cf(self, int ch) noexcept:
        if ch == 0:
            return &self.cf0[0]
        if ch == 1:
            return &self.cf1[0]
        return &self.cf2[0]

    cdef inline int64_t *_cs(self, int ch) noexcept:
        if ch == 0:
            return &self.cs0[0]
        if ch == 1:
            return &self.cs1[0]
        return &self.cs2[0]

    cdef void _change_state(self, int32_t x, int new_state):
        cdef int sx = self.node_state[x]
        cdef int64_t j, s, li, last
        cdef int32_t w
        cdef int sw, och, nch
        cdef bint x_owns
        cdef int32_t *cf
        cdef int64_t *cs
        for j in range(self.indptr[x], self.indptr[x + 1]):
            w = self.indices[j]
            sw = self.node_state[w]
            och = self._channel(sx, sw, &x_owns)
            if och >= 0:
                if x_owns:
                    s = j
                else:
                    s = _bisect(self.indices, self.indptr[w],
                                self.indptr[w + 1], x)
                cf = self._cf(och)
                cs = self._cs(och)
                li = self.pos[s]
                last = self.sizes[och] - 1
                if li != last:
                    cf[li] = cf[last]
                    cs[li] = cs[last]
                    self.pos[cs[li]] = li
                self.sizes[och] = last
            nch = self._channel(new_state, sw, &x_owns)
            if nch >= 0:
                if x_owns:
                    s = j
                else:
                    s = _bisect(self.indices, self.indptr[w],
                                self.indptr[w + 1], x)
                cf = self._cf(nch)
                cs = self._cs(nch)
                self.pos[s] = self.sizes[nch]
                cf[self.sizes[nch]] = x if x_owns else w
                cs[self.sizes[nch]] = s
                self.sizes[nch] += 1
        self.counts[sx] -= 1
        self.counts[new_state] += 1
        self.node_state[x] = new_state

    def run(self, int zombie_seed, int hunter_seed, double rate_z,
            double rate_h, double rate_clash, state):
        """Returns final (zombies, hunters, susceptible, removed, elapsed)."""
        cdef Rng rng
        _seed_rng(&rng, state)
        cdef int i, ch
        cdef int64_t li, size
        cdef int32_t owner, other
        cdef double t = 0.0, rzs, rhs, rzh, total, r
        cdef int32_t *cf
        cdef int64_t *cs
        for i in range(self.n):
            self.node_state[i] = _S
        self.counts[0] = self.n
        self.counts[1] = 0
        self.counts[2] = 0
        self.counts[3] = 0
        self.sizes[0] = 0
        self.sizes[1] = 0
        self.sizes[2] = 0
        self._change_state(zombie_seed, _Z)
        self._change_state(hunter_seed, _H)
        while True:
            rzs = rate_z * self.sizes[0]
            rhs = rate_h * self.sizes[1]
            rzh = rate_clash * self.sizes[2]
            total = rzs + rhs + rzh
            if total <= 0.0:
                break
            t += -log(1.0 - _next_double(&rng)) / total
            r = _next_double(&rng) * total
            if r < rzs:
                ch = 0
            elif r < rzs + rhs:
                ch = 1
            else:
                ch = 2
            size = self.sizes[ch]
            li = <int64_t>(_next_double(&rng) * size)
            if li == size:
                li = size - 1
            cf = self._cf(ch)
            cs = self._cs(ch)
            owner = cf[li]
            other = self.indices[cs[li]]
            if ch == 0:
                self._change_state(other, _Z)
            elif ch == 1:
                self._change_state(other, _H)
            else:
                self._change_state(owner, _R)
                self._change_state(other, _R)
        return (self.counts[_Z], self.counts[_H], self.counts[_S],
                self.counts[_R], t)
