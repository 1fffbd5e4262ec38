# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.stdint cimport int32_t, uint8_t, uint64_t

cnp.import_array()

cdef enum:
    DEFEATER = 2

IMPOSSIBLE = 1 << 63


cdef inline bint _beaten(int s, int l, const int32_t[:] heads, const int32_t[:] beat_ptr,
                         const int32_t[:] beat_idx, int* missing) nogil:
    cdef int k, t
    for k in range(beat_ptr[s], beat_ptr[s + 1]):
        t = beat_idx[k]
        if heads[t] == l and missing[t] == 0:
            return True
    return False


cdef inline bint _unbeatable(int s, int l, const int32_t[:] heads, const int32_t[:] beat_ptr,
                             const int32_t[:] beat_idx, uint8_t* discarded) nogil:
    cdef int k, t
    for k in range(beat_ptr[s], beat_ptr[s + 1]):
        t = beat_idx[k]
        if heads[t] == l and not discarded[t]:
            return False
    return True


cdef inline int _push(int h, int* queue, uint8_t* queued, uint8_t[:] plus, uint8_t[:] minus,
                      int q_head, int q_len, int n_lits) nogil:
    if not queued[h] and not plus[h] and not minus[h]:
        queued[h] = 1
        queue[(q_head + q_len) % n_lits] = h
        return q_len + 1
    return q_len


def defeasible_fixpoint(int n_lits, plus_delta, heads, kinds, ant_ptr, ant_idx, beat_ptr, beat_idx):
    cdef const uint8_t[:] pd = np.ascontiguousarray(plus_delta, dtype=np.uint8)
    cdef const int32_t[:] hd = np.ascontiguousarray(heads, dtype=np.int32)
    cdef const int32_t[:] kd = np.ascontiguousarray(kinds, dtype=np.int32)
    cdef const int32_t[:] ap = np.ascontiguousarray(ant_ptr, dtype=np.int32)
    cdef const int32_t[:] ai = np.ascontiguousarray(ant_idx, dtype=np.int32)
    cdef const int32_t[:] bp = np.ascontiguousarray(beat_ptr, dtype=np.int32)
    cdef const int32_t[:] bi = np.ascontiguousarray(beat_idx, dtype=np.int32)
    cdef int n_rules = hd.shape[0]
    cdef int n_ants = ai.shape[0]

    plus_arr = np.zeros(n_lits, dtype=np.uint8)
    minus_arr = np.zeros(n_lits, dtype=np.uint8)
    if n_lits == 0:
        return plus_arr, minus_arr
    cdef uint8_t[:] plus = plus_arr
    cdef uint8_t[:] minus = minus_arr

    cdef int* head_ptr = <int*> malloc((n_lits + 1) * sizeof(int))
    cdef int* head_idx = <int*> malloc((n_rules + 1) * sizeof(int))
    cdef int* use_ptr = <int*> malloc((n_lits + 1) * sizeof(int))
    cdef int* use_idx = <int*> malloc((n_ants + 1) * sizeof(int))
    cdef int* fill = <int*> malloc((n_lits + 1) * sizeof(int))
    cdef int* missing = <int*> malloc((n_rules + 1) * sizeof(int))
    cdef uint8_t* discarded = <uint8_t*> malloc((n_rules + 1) * sizeof(uint8_t))
    cdef int* queue = <int*> malloc((n_lits + 1) * sizeof(int))
    cdef uint8_t* queued = <uint8_t*> malloc((n_lits + 1) * sizeof(uint8_t))
    cdef int i, r, k, l, s, q_head = 0, q_len = 0
    cdef bint ok, found
    try:
        for i in range(n_lits + 1):
            head_ptr[i] = 0
            use_ptr[i] = 0
        for r in range(n_rules):
            head_ptr[hd[r] + 1] += 1
            for k in range(ap[r], ap[r + 1]):
                use_ptr[ai[k] + 1] += 1
        for i in range(n_lits):
            head_ptr[i + 1] += head_ptr[i]
            use_ptr[i + 1] += use_ptr[i]
        for i in range(n_lits):
            fill[i] = head_ptr[i]
        for r in range(n_rules):
            head_idx[fill[hd[r]]] = r
            fill[hd[r]] += 1
        for i in range(n_lits):
            fill[i] = use_ptr[i]
        for r in range(n_rules):
            missing[r] = ap[r + 1] - ap[r]
            discarded[r] = 0
            for k in range(ap[r], ap[r + 1]):
                use_idx[fill[ai[k]]] = r
                fill[ai[k]] += 1

        # circular queue; each literal is queued at most once at a time
        for i in range(n_lits):
            queue[i] = i
            queued[i] = 1
        q_len = n_lits
        q_head = 0
        while q_len > 0:
            l = queue[q_head]
            q_head = (q_head + 1) % n_lits
            q_len -= 1
            queued[l] = 0
            if plus[l] or minus[l]:
                continue

            # +∂
            ok = False
            if pd[l]:
                ok = True
            elif not pd[l ^ 1]:
                found = False
                for k in range(head_ptr[l], head_ptr[l + 1]):
                    r = head_idx[k]
                    if kd[r] != DEFEATER and missing[r] == 0:
                        found = True
                        break
                if found:
                    ok = True
                    for k in range(head_ptr[l ^ 1], head_ptr[(l ^ 1) + 1]):
                        s = head_idx[k]
                        if not discarded[s] and not _beaten(s, l, hd, bp, bi, missing):
                            ok = False
                            break
            if ok:
                plus[l] = 1
                for k in range(use_ptr[l], use_ptr[l + 1]):
                    r = use_idx[k]
                    missing[r] -= 1
                    if missing[r] == 0:
                        q_len = _push(hd[r], queue, queued, plus, minus, q_head, q_len, n_lits)
                        q_len = _push(hd[r] ^ 1, queue, queued, plus, minus, q_head, q_len, n_lits)
                continue

            # −∂
            ok = False
            if pd[l]:
                ok = False
            elif pd[l ^ 1]:
                ok = True
            else:
                ok = True
                for k in range(head_ptr[l], head_ptr[l + 1]):
                    r = head_idx[k]
                    if kd[r] != DEFEATER and not discarded[r]:
                        ok = False
                        break
                if not ok:
                    for k in range(head_ptr[l ^ 1], head_ptr[(l ^ 1) + 1]):
                        s = head_idx[k]
                        if missing[s] == 0 and _unbeatable(s, l, hd, bp, bi, discarded):
                            ok = True
                            break
            if ok:
                minus[l] = 1
                for k in range(use_ptr[l], use_ptr[l + 1]):
                    r = use_idx[k]
                    if not discarded[r]:
                        discarded[r] = 1
                        q_len = _push(hd[r], queue, queued, plus, minus, q_head, q_len, n_lits)
                        q_len = _push(hd[r] ^ 1, queue, queued, plus, minus, q_head, q_len, n_lits)
    finally:
        free(head_ptr)
        free(head_idx)
        free(use_ptr)
        free(use_idx)
        free(fill)
        free(missing)
        free(discarded)
        free(queue)
        free(queued)
    return plus_arr, minus_arr


def neighborhood_classes(int n_bits, cls_bit, sup_ptr, sup_mask, opp_ptr, opp_mask, beat_ptr, beat_mask):
    cdef const int32_t[:] cb = np.ascontiguousarray(cls_bit, dtype=np.int32)
    cdef const int32_t[:] sp = np.ascontiguousarray(sup_ptr, dtype=np.int32)
    cdef const uint64_t[:] sm = np.ascontiguousarray(sup_mask, dtype=np.uint64)
    cdef const int32_t[:] op = np.ascontiguousarray(opp_ptr, dtype=np.int32)
    cdef const uint64_t[:] om = np.ascontiguousarray(opp_mask, dtype=np.uint64)
    cdef const int32_t[:] bp = np.ascontiguousarray(beat_ptr, dtype=np.int32)
    cdef const uint64_t[:] bm = np.ascontiguousarray(beat_mask, dtype=np.uint64)
    cdef uint64_t n_worlds = (<uint64_t> 1) << n_bits
    out_arr = np.zeros(n_worlds, dtype=np.uint64)
    cdef uint64_t[:] out = out_arr
    cdef int n_cls = cb.shape[0]
    cdef uint64_t x, notx, fired
    cdef int c, k, e
    cdef bint ok, beaten
    with nogil:
        for x in range(1, n_worlds):
            notx = ~x
            fired = 0
            for c in range(n_cls):
                ok = False
                for k in range(sp[c], sp[c + 1]):
                    if sm[k] & notx == 0:
                        ok = True
                        break
                if not ok:
                    continue
                for e in range(op[c], op[c + 1]):
                    if om[e] & notx != 0:
                        continue
                    beaten = False
                    for k in range(bp[e], bp[e + 1]):
                        if bm[k] & notx == 0:
                            beaten = True
                            break
                    if not beaten:
                        ok = False
                        break
                if ok:
                    fired |= (<uint64_t> 1) << cb[c]
            out[x] = fired
    return out_arr
