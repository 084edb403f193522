"""Pure-Python hot-loop kernels.

This module is the fallback twin of the compiled ``_kernels`` extension.
The two implementations consume random doubles in the same order and apply
the same floating-point operations in the same order, so for a given graph
and generator state they return bit-identical results.  Any change here must
be mirrored in ``_kernels.pyx``.
"""

from __future__ import annotations

import math
from bisect import bisect_left

from .rngstream import Xoshiro256

COMPILED = False


def rng_doubles(state, count):
    """Raw uniform doubles for a given xoshiro state (testing hook)."""
    gen = Xoshiro256(*state)
    return [gen.next_double() for _ in range(count)]


def _adjacency(indptr, indices):
    n = len(indptr) - 1
    ptr = [int(p) for p in indptr]
    flat = [int(x) for x in indices]
    adj = [flat[ptr[i]:ptr[i + 1]] for i in range(n)]
    return n, ptr, flat, adj


class ReachEngine:
    """Cluster enumeration and its Monte Carlo oracle for one graph."""

    def __init__(self, indptr, indices):
        self.n, self.ptr, self.flat, self.adj = _adjacency(indptr, indices)
        self.in_cluster = bytearray(self.n)
        self.cnt = [0] * self.n

    def enumerate(self, seed, x, track_distinct=True):
        """Depth-first expansion over all infection orders from ``seed``.

        Returns (process_value, sequence_sum, leaves, truncated,
        distinct_count, distinct_sum) where process_value is the
        branch-probability-weighted mean terminal cluster degree,
        sequence_sum the unweighted sum over leaves, and distinct_* cover
        unique terminal member sets.
        """
        adj = self.adj
        self._x = x
        self._sum_process = 0.0
        self._sum_sequence = 0.0
        self._leaves = 0
        self._truncated = 0
        self._distinct_sum = 0.0
        self._seen = set() if track_distinct else None

        in_cluster, cnt = self.in_cluster, self.cnt
        in_cluster[seed] = 1
        self._members = [seed]
        frontier = self._frontier = []
        for nb in adj[seed]:
            cnt[nb] = 1
            frontier.append(nb)
        self._expand(0, len(adj[seed]), 1.0)
        for nb in adj[seed]:
            cnt[nb] = 0
        frontier.clear()
        in_cluster[seed] = 0
        distinct = len(self._seen) if self._seen is not None else 0
        return (self._sum_process, self._sum_sequence, self._leaves,
                self._truncated, distinct, self._distinct_sum)

    def _expand(self, depth, cdeg, weight):
        frontier = self._frontier
        if depth == self._x or not frontier:
            self._sum_process += weight * cdeg
            self._sum_sequence += cdeg
            self._leaves += 1
            if depth < self._x:
                self._truncated += 1
            if self._seen is not None:
                key = tuple(sorted(self._members))
                if key not in self._seen:
                    self._seen.add(key)
                    self._distinct_sum += cdeg
            return
        adj, cnt, in_cluster = self.adj, self.cnt, self.in_cluster
        members = self._members
        size0 = len(frontier)
        for i in range(size0):
            v = frontier[i]
            ev = cnt[v]
            child_weight = weight * ev / cdeg
            new_cdeg = cdeg + len(adj[v]) - 2 * ev
            # remove v from the frontier (swap with last), infect it
            frontier[i] = frontier[-1]
            frontier.pop()
            in_cluster[v] = 1
            members.append(v)
            for nb in adj[v]:
                if not in_cluster[nb]:
                    if cnt[nb] == 0:
                        frontier.append(nb)
                    cnt[nb] += 1
            self._expand(depth + 1, new_cdeg, child_weight)
            # undo in reverse order, restoring frontier positions exactly
            for nb in reversed(adj[v]):
                if not in_cluster[nb]:
                    cnt[nb] -= 1
                    if cnt[nb] == 0:
                        frontier.pop()
            members.pop()
            in_cluster[v] = 0
            if i == len(frontier):
                frontier.append(v)
            else:
                frontier.append(frontier[i])
                frontier[i] = v

    def monte_carlo(self, seed, x, runs, state):
        """Sample ``runs`` infection chains of ``x`` events; returns
        (mean, standard error) of the terminal cluster degree."""
        gen = Xoshiro256(*state)
        adj = self.adj
        mean = 0.0
        m2 = 0.0
        for k in range(1, runs + 1):
            members = [seed]
            cdeg = len(adj[seed])
            for _ in range(x):
                if cdeg == 0:
                    break
                r = int(gen.next_double() * cdeg)
                if r == cdeg:
                    r = cdeg - 1
                chosen = -1
                idx = 0
                for u in members:
                    for nb in adj[u]:
                        if nb not in members:
                            if idx == r:
                                chosen = nb
                                break
                            idx += 1
                    if chosen >= 0:
                        break
                row = adj[chosen]
                ev = 0
                for u in members:
                    j = bisect_left(row, u)
                    if j < len(row) and row[j] == u:
                        ev += 1
                cdeg += len(row) - 2 * ev
                members.append(chosen)
            value = float(cdeg)
            delta = value - mean
            mean += delta / k
            m2 += delta * (value - mean)
        stderr = math.sqrt(m2 / (runs - 1) / runs) if runs > 1 else 0.0
        return mean, stderr


class SiEngine:
    """Event-driven susceptible-infected process in continuous time."""

    def __init__(self, indptr, indices):
        self.n, self.ptr, self.flat, self.adj = _adjacency(indptr, indices)
        self.pos = [0] * len(self.flat)

    def run(self, seed, beta, threshold_count, state):
        """Returns (time to threshold or nan, final infected, events)."""
        n, ptr, flat, adj = self.n, self.ptr, self.flat, self.adj
        pos = self.pos
        if threshold_count <= 1:
            return 0.0, 1, 0
        gen = Xoshiro256(*state)
        infected = bytearray(n)
        infected[seed] = 1
        e_from = []
        e_slot = []
        base = ptr[seed]
        for j in range(len(adj[seed])):
            pos[base + j] = j
            e_from.append(seed)
            e_slot.append(base + j)
        count = 1
        events = 0
        t = 0.0
        while True:
            ne = len(e_from)
            if ne == 0:
                return math.nan, count, events
            t += -math.log(1.0 - gen.next_double()) / (beta * ne)
            li = int(gen.next_double() * ne)
            if li == ne:
                li = ne - 1
            v = flat[e_slot[li]]
            infected[v] = 1
            count += 1
            events += 1
            base = ptr[v]
            row = adj[v]
            for j in range(len(row)):
                nb = row[j]
                if infected[nb]:
                    # drop the infected->v entry (covers the firing edge)
                    nrow = adj[nb]
                    s = ptr[nb] + bisect_left(nrow, v)
                    li2 = pos[s]
                    last = len(e_from) - 1
                    if li2 != last:
                        e_from[li2] = e_from[last]
                        e_slot[li2] = e_slot[last]
                        pos[e_slot[li2]] = li2
                    e_from.pop()
                    e_slot.pop()
                else:
                    s = base + j
                    pos[s] = len(e_from)
                    e_from.append(v)
                    e_slot.append(s)
            if count >= threshold_count:
                return t, count, events


class SisEngine:
    """Synchronous discrete-time susceptible-infected-susceptible process
    with unit recovery."""

    def __init__(self, indptr, indices):
        self.n, self.ptr, self.flat, self.adj = _adjacency(indptr, indices)
        self.kcnt = [0] * self.n  # self-cleaning scratch

    def run(self, seed, beta, horizon, state):
        """Returns (persisted, extinction iteration or -1, max prevalence)."""
        adj, kcnt = self.adj, self.kcnt
        gen = Xoshiro256(*state)
        infected = bytearray(self.n)
        infected[seed] = 1
        cur = [seed]
        max_prev = 1
        one_minus = 1.0 - beta
        for t in range(1, horizon + 1):
            cand = []
            for u in cur:
                for nb in adj[u]:
                    if not infected[nb]:
                        if kcnt[nb] == 0:
                            cand.append(nb)
                        kcnt[nb] += 1
            cand.sort()
            new = []
            for w in cand:
                p = 1.0 - one_minus ** kcnt[w]
                if gen.next_double() < p:
                    new.append(w)
            for u in cur:
                infected[u] = 0
            for w in cand:
                kcnt[w] = 0
            for w in new:
                infected[w] = 1
            cur = new
            if not cur:
                return False, t, max_prev
            if len(cur) > max_prev:
                max_prev = len(cur)
        return True, -1, max_prev


_S, _Z, _H, _R = 0, 1, 2, 3


class CompetitiveEngine:
    """Two hostile contagions recruiting susceptibles; contact between them
    removes both endpoints."""

    def __init__(self, indptr, indices):
        self.n, self.ptr, self.flat, self.adj = _adjacency(indptr, indices)
        self.pos = [0] * len(self.flat)

    @staticmethod
    def _channel(sa, sb):
        """Channel id and whether the first endpoint owns the edge entry."""
        if sa == _Z and sb == _S:
            return 0, True
        if sa == _S and sb == _Z:
            return 0, False
        if sa == _H and sb == _S:
            return 1, True
        if sa == _S and sb == _H:
            return 1, False
        if sa == _Z and sb == _H:
            return 2, True
        if sa == _H and sb == _Z:
            return 2, False
        return -1, False

    def run(self, zombie_seed, hunter_seed, rate_z, rate_h, rate_clash, state):
        """Returns final (zombies, hunters, susceptible, removed, elapsed)."""
        n, ptr, flat, adj = self.n, self.ptr, self.flat, self.adj
        pos = self.pos
        gen = Xoshiro256(*state)
        node_state = bytearray(n)
        counts = [n, 0, 0, 0]
        ch_from = ([], [], [])
        ch_slot = ([], [], [])

        def change_state(x, new_state):
            sx = node_state[x]
            base = ptr[x]
            row = adj[x]
            for j in range(len(row)):
                w = row[j]
                sw = node_state[w]
                och, x_owns = self._channel(sx, sw)
                if och >= 0:
                    if x_owns:
                        s = base + j
                    else:
                        wrow = adj[w]
                        s = ptr[w] + bisect_left(wrow, x)
                    cf, cs = ch_from[och], ch_slot[och]
                    li = pos[s]
                    last = len(cf) - 1
                    if li != last:
                        cf[li] = cf[last]
                        cs[li] = cs[last]
                        pos[cs[li]] = li
                    cf.pop()
                    cs.pop()
                nch, x_owns = self._channel(new_state, sw)
                if nch >= 0:
                    if x_owns:
                        s = base + j
                    else:
                        wrow = adj[w]
                        s = ptr[w] + bisect_left(wrow, x)
                    cf, cs = ch_from[nch], ch_slot[nch]
                    pos[s] = len(cf)
                    cf.append(x if x_owns else w)
                    cs.append(s)
            counts[sx] -= 1
            counts[new_state] += 1
            node_state[x] = new_state

        change_state(zombie_seed, _Z)
        change_state(hunter_seed, _H)
        t = 0.0
        while True:
            nzs, nhs, nzh = len(ch_from[0]), len(ch_from[1]), len(ch_from[2])
            rzs = rate_z * nzs
            rhs = rate_h * nhs
            rzh = rate_clash * nzh
            total = rzs + rhs + rzh
            if total <= 0.0:
                break
            t += -math.log(1.0 - gen.next_double()) / total
            r = gen.next_double() * total
            if r < rzs:
                ch = 0
            elif r < rzs + rhs:
                ch = 1
            else:
                ch = 2
            size = len(ch_from[ch])
            li = int(gen.next_double() * size)
            if li == size:
                li = size - 1
            owner = ch_from[ch][li]
            other = flat[ch_slot[ch][li]]
            if ch == 0:
                change_state(other, _Z)
            elif ch == 1:
                change_state(other, _H)
            else:
                change_state(owner, _R)
                change_state(other, _R)
        return counts[_Z], counts[_H], counts[_S], counts[_R], t
