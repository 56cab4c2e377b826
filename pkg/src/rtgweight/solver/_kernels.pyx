# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled solver kernels for numeric (int64) weight programs.

Mirrors ``_reference`` step for step: same evaluation order, same heap
discipline and tie-breaking, same saturation at ``MAX_WEIGHT``. ``INF`` is
encoded as ``INT64_MAX``.
"""

from libc.stdint cimport int64_t, INT64_MAX
from libc.stdlib cimport malloc, calloc, free

from array import array

cdef int64_t INF = INT64_MAX
cdef int64_t MAXW = INT64_MAX - 1

cdef struct Prog:
    int64_t nt
    int64_t al
    const int64_t* owner
    const int64_t* start
    const int64_t* args
    const int64_t* mode
    const int64_t* const_
    const int64_t* coef
    const int64_t* occ_start
    const int64_t* occ
    const int64_t* rule_start
    const int64_t* rule


cdef inline int64_t evaluate(const Prog* p, int64_t a, const int64_t* x) noexcept nogil:
    cdef int64_t s, v, c, total, m
    total = p.const_[a]
    if p.mode[a] == 0:
        for s in range(p.start[a], p.start[a + 1]):
            v = x[p.args[s]]
            if v == INF:
                return INF
            c = p.coef[s]
            if v > (MAXW - total) // c:
                return INF
            total += v * c
        return total
    m = 0
    for s in range(p.start[a], p.start[a + 1]):
        v = x[p.args[s]]
        if v == INF:
            return INF
        if v > m:
            m = v
    if m > MAXW - total:
        return INF
    return total + m


cdef class _Arrays:
    # keeps the buffers alive while the raw pointers are in use
    cdef object keep
    cdef Prog p

    def __init__(self, dict flat, int64_t nt):
        cdef const int64_t[::1] owner = flat["owner"]
        cdef const int64_t[::1] start = flat["start"]
        cdef const int64_t[::1] args = _nonempty(flat["args"])
        cdef const int64_t[::1] mode = _nonempty(flat["mode"])
        cdef const int64_t[::1] const_ = _nonempty(flat["const"])
        cdef const int64_t[::1] coef = _nonempty(flat["coef"])
        cdef const int64_t[::1] occ_start = flat["occ_start"]
        cdef const int64_t[::1] occ = _nonempty(flat["occ"])
        cdef const int64_t[::1] rule_start = flat["rule_start"]
        cdef const int64_t[::1] rule = _nonempty(flat["rule"])
        self.keep = (owner, start, args, mode, const_, coef, occ_start, occ, rule_start, rule)
        self.p.nt = nt
        self.p.al = start.shape[0] - 1
        self.p.owner = &owner[0] if owner.shape[0] else NULL
        self.p.start = &start[0]
        self.p.args = &args[0]
        self.p.mode = &mode[0]
        self.p.const_ = &const_[0]
        self.p.coef = &coef[0]
        self.p.occ_start = &occ_start[0]
        self.p.occ = &occ[0]
        self.p.rule_start = &rule_start[0]
        self.p.rule = &rule[0]


def _nonempty(arr):
    if len(arr) == 0:
        return array("q", [0])
    return arr


cdef list _to_list(int64_t* x, int64_t n):
    return [x[i] for i in range(n)]


def naive(dict flat, int64_t nt, bint early_stop, bint record):
    cdef _Arrays arrs = _Arrays(flat, nt)
    cdef Prog* p = &arrs.p
    cdef int64_t* x = <int64_t*>malloc(max(nt, 1) * sizeof(int64_t))
    cdef int64_t* nx = <int64_t*>malloc(max(nt, 1) * sizeof(int64_t))
    cdef int64_t* changes = <int64_t*>calloc(max(nt, 1), sizeof(int64_t))
    cdef int64_t* tmp
    cdef int64_t n, r, a, v, best, cycles = 0, evaluations = 0, nchanged
    cdef list deltas = [] if record else None
    cdef list delta
    try:
        for n in range(nt):
            x[n] = INF
        while early_stop or cycles < nt:
            cycles += 1
            nchanged = 0
            with nogil:
                for n in range(nt):
                    best = INF
                    for r in range(p.rule_start[n], p.rule_start[n + 1]):
                        v = evaluate(p, p.rule[r], x)
                        if v < best:
                            best = v
                    evaluations += p.rule_start[n + 1] - p.rule_start[n]
                    nx[n] = best
                    if best != x[n]:
                        changes[n] += 1
                        nchanged += 1
            if record:
                delta = []
                if nchanged:
                    for n in range(nt):
                        if nx[n] != x[n]:
                            delta.append((n, nx[n]))
                deltas.append(delta)
            tmp = x
            x = nx
            nx = tmp
            if early_stop and nchanged == 0:
                break
        return _to_list(x, nt), cycles, evaluations, _to_list(changes, nt), deltas
    finally:
        free(x)
        free(nx)
        free(changes)


def liquid(dict flat, int64_t nt, bint record):
    cdef _Arrays arrs = _Arrays(flat, nt)
    cdef Prog* p = &arrs.p
    cdef int64_t al = p.al
    cdef int64_t m = max(nt, 1)
    cdef int64_t* y = <int64_t*>malloc(m * sizeof(int64_t))
    cdef int64_t* pend = <int64_t*>malloc(m * sizeof(int64_t))
    cdef int64_t* changes = <int64_t*>calloc(m, sizeof(int64_t))
    cdef int64_t* front = <int64_t*>malloc(m * sizeof(int64_t))
    cdef int64_t* touched = <int64_t*>malloc(m * sizeof(int64_t))
    cdef int64_t* stamp = <int64_t*>calloc(max(al, 1), sizeof(int64_t))
    cdef int64_t* cand = <int64_t*>malloc(max(al, 1) * sizeof(int64_t))
    cdef int64_t nfront = 0, ntouched, ncand, i, j, n, a, o, v
    cdef int64_t cycles = 1, evaluations = 0
    cdef list deltas = [] if record else None
    try:
        for n in range(nt):
            y[n] = INF
            pend[n] = INF
        # cycle 1: all constants
        ncand = 0
        for a in range(al):
            if p.start[a] == p.start[a + 1]:
                cand[ncand] = a
                ncand += 1
        while True:
            evaluations += ncand
            ntouched = 0
            with nogil:
                for i in range(ncand):
                    a = cand[i]
                    o = p.owner[a]
                    v = evaluate(p, a, y)
                    if v < pend[o] and v < y[o]:
                        if pend[o] == INF:
                            touched[ntouched] = o
                            ntouched += 1
                        pend[o] = v
                nfront = 0
                for i in range(ntouched):
                    o = touched[i]
                    y[o] = pend[o]
                    pend[o] = INF
                    changes[o] += 1
                    front[nfront] = o
                    nfront += 1
            if record:
                deltas.append(sorted([(front[i], y[front[i]]) for i in range(nfront)]))
            if nfront == 0:
                break
            cycles += 1
            ncand = 0
            with nogil:
                for i in range(nfront):
                    n = front[i]
                    for j in range(p.occ_start[n], p.occ_start[n + 1]):
                        a = p.occ[j]
                        if stamp[a] != cycles:
                            stamp[a] = cycles
                            cand[ncand] = a
                            ncand += 1
        return _to_list(y, nt), cycles, evaluations, _to_list(changes, nt), deltas
    finally:
        free(y)
        free(pend)
        free(changes)
        free(front)
        free(touched)
        free(stamp)
        free(cand)


cdef inline bint before(const int64_t* key, int64_t i, int64_t j) noexcept nogil:
    if key[i] != key[j]:
        return key[i] < key[j]
    return i < j


cdef inline void sift_up(int64_t* heap, int64_t* pos, const int64_t* key, int64_t q) noexcept nogil:
    cdef int64_t item = heap[q], parent
    while q > 0:
        parent = (q - 1) >> 1
        if not before(key, item, heap[parent]):
            break
        heap[q] = heap[parent]
        pos[heap[q]] = q
        q = parent
    heap[q] = item
    pos[item] = q


cdef inline int64_t heap_pop(int64_t* heap, int64_t* pos, const int64_t* key, int64_t* size) noexcept nogil:
    cdef int64_t top = heap[0], last, q = 0, c, item, n
    size[0] -= 1
    n = size[0]
    pos[top] = -1
    if n == 0:
        return top
    last = heap[n]
    item = last
    while True:
        c = 2 * q + 1
        if c >= n:
            break
        if c + 1 < n and before(key, heap[c + 1], heap[c]):
            c += 1
        if not before(key, heap[c], item):
            break
        heap[q] = heap[c]
        pos[heap[q]] = q
        q = c
    heap[q] = item
    pos[item] = q
    return top


def lazy(dict flat, int64_t nt, bint record):
    cdef _Arrays arrs = _Arrays(flat, nt)
    cdef Prog* p = &arrs.p
    cdef int64_t al = p.al
    cdef int64_t m = max(nt, 1)
    cdef int64_t* y = <int64_t*>malloc(m * sizeof(int64_t))
    cdef int64_t* changes = <int64_t*>calloc(m, sizeof(int64_t))
    cdef int64_t* done_cycle = <int64_t*>calloc(m, sizeof(int64_t))
    cdef int64_t* heap = <int64_t*>malloc(m * sizeof(int64_t))
    cdef int64_t* pos = <int64_t*>malloc(m * sizeof(int64_t))
    cdef int64_t* mins = <int64_t*>malloc(m * sizeof(int64_t))
    cdef int64_t* touched = <int64_t*>malloc(m * sizeof(int64_t))
    cdef char* mark = <char*>calloc(m, 1)
    cdef int64_t* counter = <int64_t*>calloc(max(al, 1), sizeof(int64_t))
    cdef int64_t size = 0, nmins = 0, ntouched = 0, i, j, n, a, o, v, key0
    cdef int64_t cycle = 1, evaluations = 0, heap_ops = 0
    cdef list deltas = [] if record else None
    cdef list minimals_log = [] if record else None
    try:
        for n in range(nt):
            y[n] = INF
            pos[n] = -1
        # cycle 1: constants
        for a in range(al):
            if p.start[a] == p.start[a + 1]:
                evaluations += 1
                o = p.owner[a]
                v = evaluate(p, a, y)
                if done_cycle[o] == 0 and v < y[o]:
                    y[o] = v
                    if pos[o] >= 0:
                        sift_up(heap, pos, y, pos[o])
                    else:
                        heap[size] = o
                        size += 1
                        sift_up(heap, pos, y, size - 1)
                    heap_ops += 1
                    if not mark[o]:
                        mark[o] = 1
                        touched[ntouched] = o
                        ntouched += 1
        while True:
            for i in range(ntouched):
                o = touched[i]
                changes[o] += 1
                mark[o] = 0
            if record:
                deltas.append(sorted([(touched[i], y[touched[i]]) for i in range(ntouched)]))
            ntouched = 0
            if size == 0:
                if record:
                    minimals_log.append([])
                break
            key0 = y[heap[0]]
            nmins = 0
            with nogil:
                while size > 0 and y[heap[0]] == key0:
                    mins[nmins] = heap_pop(heap, pos, y, &size)
                    heap_ops += 1
                    nmins += 1
                for i in range(nmins):
                    done_cycle[mins[i]] = cycle
            if record:
                minimals_log.append([mins[i] for i in range(nmins)])
            cycle += 1
            with nogil:
                for i in range(nmins):
                    n = mins[i]
                    for j in range(p.occ_start[n], p.occ_start[n + 1]):
                        a = p.occ[j]
                        counter[a] += 1
                        if counter[a] != p.start[a + 1] - p.start[a]:
                            continue
                        evaluations += 1
                        o = p.owner[a]
                        v = evaluate(p, a, y)
                        if done_cycle[o] != 0 or v >= y[o]:
                            continue
                        y[o] = v
                        if pos[o] >= 0:
                            sift_up(heap, pos, y, pos[o])
                        else:
                            heap[size] = o
                            size += 1
                            sift_up(heap, pos, y, size - 1)
                        heap_ops += 1
                        if not mark[o]:
                            mark[o] = 1
                            touched[ntouched] = o
                            ntouched += 1
        done = [done_cycle[n] if done_cycle[n] else None for n in range(nt)]
        return (_to_list(y, nt), cycle, evaluations, _to_list(changes, nt), deltas,
                minimals_log, done, heap_ops)
    finally:
        free(y)
        free(changes)
        free(done_cycle)
        free(heap)
        free(pos)
        free(mins)
        free(touched)
        free(mark)
        free(counter)
