# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the search kernels in ``_pykernels``.

Points are limited to 64 so that point sets fit in one machine word.
"""
from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

BACKEND = "cython"

cdef int UNBOUNDED = 1 << 30


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popcount64(u64 x) nogil:
    return __builtin_popcountll(x)


def first_separating(pts, masks):
    cdef Py_ssize_t np_ = len(pts), nm = len(masks)
    cdef Py_ssize_t mi, pi, pj
    cdef u64 m, key
    cdef int cnt
    if np_ > 0 and max(pts).bit_length() > 64:
        raise ValueError("points must fit in 64 bits")
    cdef u64 *p = <u64 *> malloc(max(np_, 1) * sizeof(u64))
    try:
        for pi in range(np_):
            p[pi] = pts[pi]
        for mi in range(nm):
            m = masks[mi]
            for pi in range(np_):
                key = p[pi] & m
                cnt = 0
                for pj in range(np_):
                    if (p[pj] & m) == key:
                        cnt += 1
                        if cnt > 1:
                            break
                if cnt == 1:
                    return mi, pi
        return -1, -1
    finally:
        free(p)


cdef struct Search:
    int npts
    int nflats
    u64 *flats
    int *need
    int *cap
    char *banned
    int *chosen
    int nchosen


cdef bint rec(Search *s, int budget) nogil:
    cdef int q, fi, total = 0, maxneed = 0, maxcov = 0, cov, best = -1
    cdef u64 needy = 0, full = 0, f
    cdef int counts[64]
    cdef int ncand = 0, i, j, done = 0
    cdef int *cand
    cdef int *cov_of
    cdef bint found = False
    for q in range(s.npts):
        counts[q] = 0
        if s.need[q] > 0:
            needy |= (<u64> 1) << q
            total += s.need[q]
            if s.need[q] > maxneed:
                maxneed = s.need[q]
        if s.cap[q] == 0:
            full |= (<u64> 1) << q
    if needy == 0:
        return True
    if budget == 0 or maxneed > budget:
        return False
    cand = <int *> malloc(s.nflats * sizeof(int))
    cov_of = <int *> malloc(s.nflats * sizeof(int))
    for fi in range(s.nflats):
        f = s.flats[fi]
        cov_of[fi] = 0
        if s.banned[fi] or (f & full):
            continue
        cov = popcount64(f & needy)
        if cov == 0:
            continue
        cov_of[fi] = cov
        if cov > maxcov:
            maxcov = cov
        for q in range(s.npts):
            if (f >> q) & 1:
                counts[q] += 1
    if maxcov == 0 or total > maxcov * budget:
        free(cand)
        free(cov_of)
        return False
    for q in range(s.npts):
        if (needy >> q) & 1 and (best < 0 or counts[q] < counts[best]):
            best = q
    if counts[best] == 0:
        free(cand)
        free(cov_of)
        return False
    for fi in range(s.nflats):
        if cov_of[fi] > 0 and (s.flats[fi] >> best) & 1:
            # insertion sort by (-coverage, index)
            j = ncand
            while j > 0 and cov_of[cand[j - 1]] < cov_of[fi]:
                cand[j] = cand[j - 1]
                j -= 1
            cand[j] = fi
            ncand += 1
    for i in range(ncand):
        fi = cand[i]
        f = s.flats[fi]
        for q in range(s.npts):
            if (f >> q) & 1:
                s.need[q] -= 1
                s.cap[q] -= 1
        s.chosen[s.nchosen] = fi
        s.nchosen += 1
        if rec(s, budget - 1):
            found = True
        else:
            s.nchosen -= 1
        for q in range(s.npts):
            if (f >> q) & 1:
                s.need[q] += 1
                s.cap[q] += 1
        if found:
            break
        s.banned[fi] = 1
        done += 1
    for i in range(done):
        s.banned[cand[i]] = 0
    free(cand)
    free(cov_of)
    return found


def multicover_search(flats, need, cap, budget):
    cdef Search s
    cdef int i
    cdef int b = budget
    cdef bint ok
    s.npts = len(need)
    s.nflats = len(flats)
    if s.npts > 64:
        raise ValueError("at most 64 points are supported")
    s.flats = <u64 *> malloc(max(s.nflats, 1) * sizeof(u64))
    s.need = <int *> malloc(max(s.npts, 1) * sizeof(int))
    s.cap = <int *> malloc(max(s.npts, 1) * sizeof(int))
    s.banned = <char *> malloc(max(s.nflats, 1))
    s.chosen = <int *> malloc((budget + 1) * sizeof(int))
    s.nchosen = 0
    try:
        for i in range(s.nflats):
            s.flats[i] = flats[i]
            s.banned[i] = 0
        for i in range(s.npts):
            s.need[i] = need[i]
            s.cap[i] = UNBOUNDED if cap[i] < 0 else cap[i]
        with nogil:
            ok = rec(&s, b)
        if not ok:
            return None
        return sorted(s.chosen[i] for i in range(s.nchosen))
    finally:
        free(s.flats)
        free(s.need)
        free(s.cap)
        free(s.banned)
        free(s.chosen)
