"""numba kernels for the hot search loops.

Positions are ``uint64`` bitboards, so these kernels serve boards with at
most 58 holes (Triangle(10) and smaller).  Every kernel is a plain loop over
an explicit stack; the Python layer in :mod:`trisolve.search` packs board
tables and unpacks results.
"""

from __future__ import annotations

import numpy as np
from numba import njit

U64 = np.uint64
ONE = np.uint64(1)
EMPTY_KEY = np.uint64(0)
HASH_MUL = np.uint64(0x9E3779B97F4A7C15)
LAST_SHIFT = np.uint64(58)

FOUND = 1
EXHAUSTED = 0
OUT_OF_BUDGET = -1


@njit(cache=True, nogil=True)
def popcount(x):
    c = 0
    while x:
        x &= x - ONE
        c += 1
    return c


@njit(cache=True, nogil=True)
def map_bits(pos, symtab, s):
    out = np.uint64(0)
    b = 0
    while pos:
        out |= symtab[s, b, np.int64(pos & np.uint64(0xFF))]
        pos >>= np.uint64(8)
        b += 1
    return out


@njit(cache=True, nogil=True)
def state_key(pos, last, symtab, symperm, syms):
    """Least (image, moved-peg) key over the symmetry subgroup ``syms``."""
    best = np.uint64(0xFFFFFFFFFFFFFFFF)
    for k in range(syms.shape[0]):
        s = syms[k]
        img = map_bits(pos, symtab, s) if s != 0 else pos
        tag = np.uint64(0) if last < 0 else np.uint64(symperm[s, last] + 1)
        key = img | (tag << LAST_SHIFT)
        if key < best:
            best = key
    return best


@njit(cache=True, nogil=True)
def tt_slot(keys, key):
    mask = np.uint64(keys.shape[0] - 1)
    return np.int64(((key * HASH_MUL) >> np.uint64(20)) & mask)


@njit(cache=True, nogil=True)
def tt_get(keys, vals, key):
    i = tt_slot(keys, key)
    mask = keys.shape[0] - 1
    for _ in range(8):
        k = keys[i]
        if k == key:
            return np.int64(vals[i])
        if k == EMPTY_KEY:
            return np.int64(-1)
        i = (i + 1) & mask
    return np.int64(-1)


@njit(cache=True, nogil=True)
def tt_put(keys, vals, key, val):
    """Lossy store: when the probe window is full the home slot is overwritten."""
    home = tt_slot(keys, key)
    i = home
    mask = keys.shape[0] - 1
    for _ in range(8):
        k = keys[i]
        if k == key:
            if val > vals[i]:
                vals[i] = val
            return
        if k == EMPTY_KEY:
            keys[i] = key
            vals[i] = val
            return
        i = (i + 1) & mask
    keys[home] = key
    vals[home] = val


@njit(cache=True, nogil=True)
def region_bound(pos, last, target, regions):
    """Admissible count of further moves forced by full Merson regions.

    While two or more pegs remain, a full region needs a move that starts
    inside it: its pegs cannot all survive, since the survivor is the peg
    that moves last.  The region holding the peg that is still moving is
    skipped because that peg may keep jumping for free.  For a target with
    several pegs, regions full in the target may stay untouched.
    """
    if pos == target:
        return 0
    single = (target & (target - ONE)) == 0
    c = 0
    for r in range(regions.shape[0]):
        m = regions[r]
        if (pos & m) == m and (single or (target & m) != m):
            if last < 0 or ((m >> np.uint64(last)) & ONE) == 0:
                c += 1
    if c == 0 and last < 0 and pos != target:
        c = 1
    return c


@njit(cache=True, nogil=True)
def move_search(start, start_last, start_used, target, limit, jo, jm, jd, jmask,
                regions, use_bound, symtab, symperm, syms, tt_keys, tt_vals, use_tt,
                node_limit, out_path):
    """Depth-first search for a jump sequence from ``start`` to ``target``
    using at most ``limit`` moves, where a jump costs a move unless the
    jumping peg is the one that landed last.

    Returns ``(status, nodes, path_len)``; the jump indices of a solution are
    written to ``out_path``.  Failed states are stored in the transposition
    table with the remaining budget they were refuted at.
    """
    target_pegs = popcount(target)
    depth_max = popcount(start) - target_pegs + 1
    if depth_max < 1:
        depth_max = 1
    st_pos = np.empty(depth_max + 1, np.uint64)
    st_last = np.empty(depth_max + 1, np.int64)
    st_used = np.empty(depth_max + 1, np.int64)
    st_iter = np.empty(depth_max + 1, np.int64)
    st_jump = np.empty(depth_max + 1, np.int64)
    st_key = np.empty(depth_max + 1, np.uint64)
    st_pegs = np.empty(depth_max + 1, np.int64)
    nj = jo.shape[0]
    sp = 0
    st_pos[0] = start
    st_last[0] = start_last
    st_used[0] = start_used
    st_iter[0] = -1
    st_pegs[0] = popcount(start)
    nodes = 0
    while sp >= 0:
        pos = st_pos[sp]
        used = st_used[sp]
        last = st_last[sp]
        if st_iter[sp] == -1:
            nodes += 1
            if nodes > node_limit:
                return OUT_OF_BUDGET, nodes, 0
            if pos == target:
                for k in range(1, sp + 1):
                    out_path[k - 1] = st_jump[k]
                return FOUND, nodes, sp
            if st_pegs[sp] <= target_pegs:
                sp -= 1
                continue
            if use_bound and used + region_bound(pos, last, target, regions) > limit:
                sp -= 1
                continue
            if use_tt:
                key = state_key(pos, last, symtab, symperm, syms)
                if tt_get(tt_keys, tt_vals, key) >= limit - used:
                    sp -= 1
                    continue
                st_key[sp] = key
            st_iter[sp] = 0
        j = st_iter[sp]
        nxt = -1
        while j < nj:
            if (pos & jmask[j]) == (jmask[j] ^ (ONE << np.uint64(jd[j]))):
                cost = 0 if jo[j] == last else 1
                if used + cost <= limit:
                    nxt = j
                    break
            j += 1
        if nxt >= 0:
            st_iter[sp] = nxt + 1
            cost = 0 if jo[nxt] == last else 1
            sp += 1
            st_pos[sp] = pos ^ jmask[nxt]
            st_last[sp] = jd[nxt]
            st_used[sp] = used + cost
            st_iter[sp] = -1
            st_jump[sp] = nxt
            st_pegs[sp] = st_pegs[sp - 1] - 1
        else:
            if use_tt:
                tt_put(tt_keys, tt_vals, st_key[sp], np.int8(limit - used))
            sp -= 1
    return EXHAUSTED, nodes, 0


@njit(cache=True, nogil=True)
def collect_jump_sets(start, target, limit, jo, jm, jd, jmask, regions, symtab, symperm,
                      syms, tt_keys, tt_vals, node_limit, set_lo, set_hi, max_sets):
    """Enumerate every solution with at most ``limit`` moves and record the
    distinct unordered jump sets (as 128-bit masks over jump indices).

    Returns ``(status, nodes, n_sets, n_solutions)``; ``status`` is
    ``OUT_OF_BUDGET`` when the node budget or the set buffer runs out.
    """
    depth_max = popcount(start) - popcount(target) + 1
    st_pos = np.empty(depth_max + 1, np.uint64)
    st_last = np.empty(depth_max + 1, np.int64)
    st_used = np.empty(depth_max + 1, np.int64)
    st_iter = np.empty(depth_max + 1, np.int64)
    st_key = np.empty(depth_max + 1, np.uint64)
    st_hit = np.zeros(depth_max + 1, np.bool_)
    st_lo = np.zeros(depth_max + 1, np.uint64)
    st_hi = np.zeros(depth_max + 1, np.uint64)
    nj = jo.shape[0]
    sp = 0
    st_pos[0] = start
    st_last[0] = -1
    st_used[0] = 0
    st_iter[0] = -1
    nodes = 0
    n_sets = 0
    n_solutions = 0
    while sp >= 0:
        pos = st_pos[sp]
        used = st_used[sp]
        last = st_last[sp]
        if st_iter[sp] == -1:
            nodes += 1
            if nodes > node_limit:
                return OUT_OF_BUDGET, nodes, n_sets, n_solutions
            st_hit[sp] = False
            if pos == target:
                n_solutions += 1
                lo = st_lo[sp]
                hi = st_hi[sp]
                seen = False
                for k in range(n_sets):
                    if set_lo[k] == lo and set_hi[k] == hi:
                        seen = True
                        break
                if not seen:
                    if n_sets >= max_sets:
                        return OUT_OF_BUDGET, nodes, n_sets, n_solutions
                    set_lo[n_sets] = lo
                    set_hi[n_sets] = hi
                    n_sets += 1
                for k in range(sp):
                    st_hit[k] = True
                sp -= 1
                continue
            if used + region_bound(pos, last, target, regions) > limit:
                sp -= 1
                continue
            key = state_key(pos, last, symtab, symperm, syms)
            if tt_get(tt_keys, tt_vals, key) >= limit - used:
                sp -= 1
                continue
            st_key[sp] = key
            st_iter[sp] = 0
        j = st_iter[sp]
        nxt = -1
        while j < nj:
            if (pos & jmask[j]) == (jmask[j] ^ (ONE << np.uint64(jd[j]))):
                cost = 0 if jo[j] == last else 1
                if used + cost <= limit:
                    nxt = j
                    break
            j += 1
        if nxt >= 0:
            st_iter[sp] = nxt + 1
            cost = 0 if jo[nxt] == last else 1
            sp += 1
            st_pos[sp] = pos ^ jmask[nxt]
            st_last[sp] = jd[nxt]
            st_used[sp] = used + cost
            st_iter[sp] = -1
            if nxt < 64:
                st_lo[sp] = st_lo[sp - 1] | (ONE << np.uint64(nxt))
                st_hi[sp] = st_hi[sp - 1]
            else:
                st_lo[sp] = st_lo[sp - 1]
                st_hi[sp] = st_hi[sp - 1] | (ONE << np.uint64(nxt - 64))
        else:
            # only refuted states are cached; a state on some solution path
            # must be re-entered to collect the prefixes that reach it
            if not st_hit[sp]:
                tt_put(tt_keys, tt_vals, st_key[sp], np.int8(limit - used))
            sp -= 1
    return EXHAUSTED, nodes, n_sets, n_solutions


@njit(cache=True, nogil=True)
def reduce_search(start, target_hole, jo, jm, jd, jmask, symtab, syms, tt_keys, tt_vals,
                  node_limit, out_path):
    """Jump-by-jump search for a reduction of ``start`` to one peg (at
    ``target_hole`` unless it is negative).  Dead positions are memoised."""
    depth_max = popcount(start)
    st_pos = np.empty(depth_max + 1, np.uint64)
    st_iter = np.empty(depth_max + 1, np.int64)
    st_jump = np.empty(depth_max + 1, np.int64)
    st_key = np.empty(depth_max + 1, np.uint64)
    st_pegs = np.empty(depth_max + 1, np.int64)
    nj = jo.shape[0]
    sp = 0
    st_pos[0] = start
    st_iter[0] = -1
    st_pegs[0] = depth_max
    nodes = 0
    while sp >= 0:
        pos = st_pos[sp]
        if st_iter[sp] == -1:
            nodes += 1
            if nodes > node_limit:
                return OUT_OF_BUDGET, nodes, 0
            if st_pegs[sp] == 1:
                if target_hole < 0 or pos == (ONE << np.uint64(target_hole)):
                    for k in range(1, sp + 1):
                        out_path[k - 1] = st_jump[k]
                    return FOUND, nodes, sp
                sp -= 1
                continue
            key = np.uint64(0xFFFFFFFFFFFFFFFF)
            for k in range(syms.shape[0]):
                s = syms[k]
                img = map_bits(pos, symtab, s) if s != 0 else pos
                if img < key:
                    key = img
            if tt_get(tt_keys, tt_vals, key) >= 0:
                sp -= 1
                continue
            st_key[sp] = key
            st_iter[sp] = 0
        j = st_iter[sp]
        nxt = -1
        while j < nj:
            if (pos & jmask[j]) == (jmask[j] ^ (ONE << np.uint64(jd[j]))):
                nxt = j
                break
            j += 1
        if nxt >= 0:
            st_iter[sp] = nxt + 1
            sp += 1
            st_pos[sp] = pos ^ jmask[nxt]
            st_iter[sp] = -1
            st_jump[sp] = nxt
            st_pegs[sp] = st_pegs[sp - 1] - 1
        else:
            tt_put(tt_keys, tt_vals, st_key[sp], np.int8(1))
            sp -= 1
    return EXHAUSTED, nodes, 0


# ---------------------------------------------------------------------------
# layered minimal-move sweep over all positions reachable from one start
#
# A level table is one uint64 array of (key, value) slot pairs so a probe
# touches a single cache line; value = tails | (moves << 58).

DIST_SHIFT = np.uint64(58)
TAIL_MASK = (ONE << DIST_SHIFT) - ONE


@njit(cache=True, nogil=True)
def _map_insert(table, count, pos, d, tail):
    """Insert or relax ``pos``; returns the new element count."""
    mask = (table.shape[0] >> 1) - 1
    i = np.int64(((pos * HASH_MUL) >> np.uint64(17)) & np.uint64(mask))
    while True:
        k = table[2 * i]
        if k == EMPTY_KEY:
            table[2 * i] = pos
            table[2 * i + 1] = tail | (d << DIST_SHIFT)
            return count + 1
        if k == pos:
            v = table[2 * i + 1]
            od = v >> DIST_SHIFT
            if d < od:
                table[2 * i + 1] = tail | (d << DIST_SHIFT)
            elif d == od:
                table[2 * i + 1] = v | tail
            return count
        i = (i + 1) & mask


@njit(cache=True, nogil=True)
def _grow(table):
    new = np.zeros(table.shape[0] * 2, np.uint64)
    count = 0
    for i in range(table.shape[0] >> 1):
        k = table[2 * i]
        if k != EMPTY_KEY:
            v = table[2 * i + 1]
            count = _map_insert(new, count, k, v >> DIST_SHIFT, v & TAIL_MASK)
    return new


@njit(cache=True, nogil=True)
def layered_min_moves(start, n_holes, jo, jd, jmask, regions, prune_above, level_sizes):
    """Minimal move counts from ``start`` to every single-peg position.

    Positions are processed by peg count.  Each stored position keeps its
    minimal move count ``D`` and the set of holes where the last-moved peg
    can sit at the end of some ``D``-move line, since only those allow a
    free continuation.  When ``prune_above`` is non-negative, positions whose
    ``D`` plus the full-region bound exceeds it are dropped; finishes beyond
    that horizon then read as unreachable.  Returns an ``int16`` array over
    holes (-1: not reached).  ``level_sizes[k]`` receives the number of
    ``k``-peg positions kept.
    """
    table = np.zeros(2 * 1024, np.uint64)
    count = _map_insert(table, 0, start, np.uint64(0), np.uint64(0))
    pegs = popcount(start)
    level_sizes[pegs] = 1
    nj = jo.shape[0]
    while pegs > 1:
        ncap = 1024
        while ncap < count * 4:
            ncap *= 2
        nxt = np.zeros(2 * ncap, np.uint64)
        ncount = 0
        for i in range(table.shape[0] >> 1):
            pos = table[2 * i]
            if pos == EMPTY_KEY:
                continue
            v = table[2 * i + 1]
            d = v >> DIST_SHIFT
            t = v & TAIL_MASK
            for j in range(nj):
                if (pos & jmask[j]) == (jmask[j] ^ (ONE << np.uint64(jd[j]))):
                    nd = d if (t >> np.uint64(jo[j])) & ONE else d + ONE
                    npos = pos ^ jmask[j]
                    if prune_above >= 0:
                        if np.int64(nd) + _any_bound(npos, jd[j], regions) > prune_above:
                            continue
                    if 2 * (ncount + 1) > (nxt.shape[0] >> 1):
                        nxt = _grow(nxt)
                    ncount = _map_insert(nxt, ncount, npos, nd, ONE << np.uint64(jd[j]))
        table, count = nxt, ncount
        pegs -= 1
        level_sizes[pegs] = count
    out = np.full(n_holes, -1, np.int16)
    for i in range(table.shape[0] >> 1):
        pos = table[2 * i]
        if pos != EMPTY_KEY and popcount(pos) == 1:
            h = 0
            while (pos >> np.uint64(h)) & ONE == 0:
                h += 1
            out[h] = np.int16(table[2 * i + 1] >> DIST_SHIFT)
    return out


@njit(cache=True, nogil=True)
def _any_bound(pos, last, regions):
    """Full-region bound with the finish unknown."""
    if popcount(pos) <= 1:
        return 0
    c = 0
    for r in range(regions.shape[0]):
        m = regions[r]
        if (pos & m) == m and ((m >> np.uint64(last)) & ONE) == 0:
            c += 1
    return c
